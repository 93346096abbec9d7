#ifndef MMTCP_CORE_RNG_HPP
#define MMTCP_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace mmtcp::core {

namespace detail {
// FNV-1a, used to fold stream labels into the seed.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Named pseudo-random stream: identical (seed, label) pairs replay the
// same sequence, and distinct labels are decorrelated, so enabling or
// disabling one stochastic process never perturbs the draws of another.
// Distributions are hand-rolled on top of mt19937_64 so output does not
// depend on the standard library's <random> implementation.
class RngStream {
public:
    RngStream() : RngStream(0, "default") {}
    RngStream(std::uint64_t seed, std::string_view label) : label_(label) {
        std::uint64_t s = seed ^ detail::fnv1a(label);
        // Warm the seed through splitmix so nearby seeds diverge.
        std::uint64_t a = detail::splitmix64(s);
        std::uint64_t b = detail::splitmix64(s);
        engine_.seed(a ^ (b << 1));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    double exponential(double mean) {
        return -mean * std::log1p(-uniform01());
    }

    // Box-Muller with a cached spare.
    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

    const std::string& label() const { return label_; }

private:
    std::mt19937_64 engine_;
    std::string label_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mmtcp::core

#endif
