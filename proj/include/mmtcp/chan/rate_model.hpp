#ifndef MMTCP_CHAN_RATE_MODEL_HPP
#define MMTCP_CHAN_RATE_MODEL_HPP

#include <algorithm>
#include <cmath>

namespace mmtcp::chan {

// Truncated-Shannon SINR -> rate mapping. `capacity_scale` shrinks the
// whole rate axis for desk-scale runs; BDP-derived buffer presets follow
// automatically because they are computed from the scaled rate_max.
struct RateModel {
    double bandwidth_hz = 1e9;
    double efficiency = 0.55;      // fraction of Shannon capacity achieved
    double rate_max_bps = 3e9;
    double sinr_floor_db = -5.0;   // outage below this
    double sinr_cap_db = 30.0;
    double capacity_scale = 1.0;

    RateModel scaled(double f) const {
        RateModel m = *this;
        m.capacity_scale *= f;
        return m;
    }

    double max_rate() const { return rate_max_bps * capacity_scale; }
};

inline double capacity_bps(double sinr_db, const RateModel& m) {
    if (sinr_db < m.sinr_floor_db) return 0.0;
    const double s = std::min(sinr_db, m.sinr_cap_db);
    const double sinr_lin = std::pow(10.0, s / 10.0);
    const double shannon = m.efficiency * m.bandwidth_hz * std::log2(1.0 + sinr_lin);
    return m.capacity_scale * std::min(m.rate_max_bps, shannon);
}

}  // namespace mmtcp::chan

#endif
