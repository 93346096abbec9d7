#ifndef MMTCP_CHAN_PROPAGATION_HPP
#define MMTCP_CHAN_PROPAGATION_HPP

#include <algorithm>
#include <cmath>

#include "mmtcp/chan/geometry.hpp"
#include "mmtcp/core/rng.hpp"
#include "mmtcp/core/time.hpp"

namespace mmtcp::chan {

// Distance pathloss, close-in reference at 1 m. Exponent 2.0 (LOS) or
// 3.2 (NLOS); the indoor class rides on the NLOS exponent and adds a
// fixed penetration loss on top.
struct PathlossModel {
    double ref_loss_db = 61.34;    // 32.4 + 20 log10(f_GHz) at 28 GHz
    double exp_los = 2.0;
    double exp_nlos = 3.2;
    double indoor_penetration_db = 20.0;

    double loss_db(double dist_m, LosClass cls) const {
        const double d = std::max(dist_m, 1.0);
        const double n = (cls == LosClass::Los) ? exp_los : exp_nlos;
        double pl = ref_loss_db + 10.0 * n * std::log10(d);
        if (cls == LosClass::Indoor) pl += indoor_penetration_db;
        return pl;
    }
};

// AR(1) process with unit-stationary parameterization: the stationary
// distribution is N(0, stddev^2) regardless of the correlation step.
class Ar1Process {
public:
    Ar1Process() = default;
    Ar1Process(double stddev, core::RngStream rng)
        : stddev_(stddev), rng_(std::move(rng)) {
        value_ = rng_.normal(0.0, stddev_);
    }

    // rho in [0,1]: correlation between successive samples.
    double step(double rho) {
        const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));
        value_ = rho * value_ + innov * rng_.normal(0.0, stddev_);
        return value_;
    }

    double value() const { return value_; }

private:
    double stddev_ = 0.0;
    core::RngStream rng_;
    double value_ = 0.0;
};

struct BlockerParams {
    double arrival_rate_hz = 0.0;   // blocker arrivals per second per link
    double loss_db = 25.0;
    double mean_dwell_s = 0.5;      // exponential dwell
};

// Two-state blockage process per link: clear until a blocker arrives,
// then attenuated for an exponential dwell. Arrivals are only counted
// while the link's affected-region predicate holds.
class BlockerProcess {
public:
    BlockerProcess() = default;
    BlockerProcess(BlockerParams params, core::RngStream rng)
        : params_(params), rng_(std::move(rng)) {}

    // Advance by dt; `in_region` gates new arrivals.
    void step(core::SimTime now, core::SimTime dt, bool in_region) {
        if (blocked_ && now >= clear_at_) blocked_ = false;
        if (!blocked_ && in_region && params_.arrival_rate_hz > 0.0) {
            const double p_arrival = params_.arrival_rate_hz * dt.seconds();
            if (rng_.bernoulli(p_arrival)) {
                blocked_ = true;
                clear_at_ = now + core::SimTime::from_seconds(
                                      rng_.exponential(params_.mean_dwell_s));
            }
        }
    }

    bool blocked() const { return blocked_; }
    double loss_db() const { return blocked_ ? params_.loss_db : 0.0; }

private:
    BlockerParams params_;
    core::RngStream rng_;
    bool blocked_ = false;
    core::SimTime clear_at_{0};
};

}  // namespace mmtcp::chan

#endif
