#ifndef MMTCP_CORE_TIME_HPP
#define MMTCP_CORE_TIME_HPP

#include <cstdint>
#include <compare>

namespace mmtcp::core {

// Simulation time as integer nanoseconds since run start. Integer maths
// keeps long runs free of float drift; helpers convert at the edges.
struct SimTime {
    std::int64_t ns = 0;

    static constexpr SimTime zero() { return SimTime{0}; }
    static constexpr SimTime from_ns(std::int64_t v) { return SimTime{v}; }
    static constexpr SimTime from_us(std::int64_t v) { return SimTime{v * 1'000}; }
    static constexpr SimTime from_ms(std::int64_t v) { return SimTime{v * 1'000'000}; }
    static constexpr SimTime from_sec(std::int64_t v) { return SimTime{v * 1'000'000'000}; }
    static constexpr SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(s * 1e9 + (s >= 0 ? 0.5 : -0.5))};
    }

    constexpr double seconds() const { return static_cast<double>(ns) * 1e-9; }
    constexpr double millis() const { return static_cast<double>(ns) * 1e-6; }

    constexpr auto operator<=>(const SimTime&) const = default;
    constexpr SimTime operator+(SimTime o) const { return SimTime{ns + o.ns}; }
    constexpr SimTime operator-(SimTime o) const { return SimTime{ns - o.ns}; }
    constexpr SimTime& operator+=(SimTime o) { ns += o.ns; return *this; }
    constexpr SimTime& operator-=(SimTime o) { ns -= o.ns; return *this; }
};

// Duration of `bytes` serialized at `rate_bps`, rounded to whole ns.
constexpr SimTime serialization_time(std::int64_t bytes, double rate_bps) {
    if (rate_bps <= 0.0) return SimTime::from_sec(1'000'000);  // effectively never
    return SimTime::from_seconds(static_cast<double>(bytes) * 8.0 / rate_bps);
}

}  // namespace mmtcp::core

#endif
