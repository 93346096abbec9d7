#ifndef MMTCP_CORE_CSV_HPP
#define MMTCP_CORE_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmtcp::core {

// Locale-independent fixed-precision formatting so re-runs produce
// byte-identical files.
inline std::string format_double(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    CsvWriter& cell(const std::string& v) { put(v); return *this; }
    CsvWriter& cell(const char* v) { put(v); return *this; }
    CsvWriter& cell(std::int64_t v) { put(std::to_string(v)); return *this; }
    CsvWriter& cell(std::uint64_t v) { put(std::to_string(v)); return *this; }
    CsvWriter& cell(int v) { put(std::to_string(v)); return *this; }
    CsvWriter& cell(double v, int precision = 6) { put(format_double(v, precision)); return *this; }
    void end_row() {
        out_ << '\n';
        col_ = 0;
    }

private:
    void put(const std::string& v) {
        if (col_++) out_ << ',';
        out_ << v;
    }
    std::ofstream out_;
    int col_ = 0;
};

// Minimal reader for comma-separated files with '#' comments; enough for
// channel-trace ingestion and tests.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in, bool skip_header) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && skip_header) {
            first = false;
            continue;
        }
        first = false;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace mmtcp::core

#endif
