#ifndef MMTCP_CHAN_CHANNEL_MODEL_HPP
#define MMTCP_CHAN_CHANNEL_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmtcp/chan/geometry.hpp"
#include "mmtcp/chan/propagation.hpp"
#include "mmtcp/chan/rate_model.hpp"
#include "mmtcp/core/csv.hpp"
#include "mmtcp/core/rng.hpp"
#include "mmtcp/core/time.hpp"

namespace mmtcp::chan {

struct HandoverParams {
    bool enabled = true;
    double hysteresis_db = 3.0;
    core::SimTime time_to_trigger = core::SimTime::from_ms(16);
    core::SimTime switch_delay = core::SimTime::from_ms(10);
};

struct ShadowingParams {
    double stddev_los_db = 4.0;
    double stddev_nlos_db = 7.8;
    double corr_distance_m = 25.0;
};

struct FadingParams {
    double stddev_db = 3.0;
    double coherence_us = 1000.0;  // decorrelation time constant
};

struct ChannelParams {
    double link_budget_db = 119.0;  // tx power + antenna gains - noise floor
    PathlossModel pathloss;
    ShadowingParams shadowing;
    FadingParams fading;
    BlockerParams blockers;
    // Gates blocker arrivals per link; defaults to "never".
    std::function<bool(const Vec3& ue_pos, std::size_t gnb)> blocker_region;
    RateModel rate;
    HandoverParams handover;
    core::SimTime grid = core::SimTime::from_ms(1);
};

// Per UE-gNB link snapshot, refreshed on the sampling grid.
struct LinkState {
    LosClass los_class = LosClass::Los;  // effective: blockage reports NLOS
    double sinr_db = -100.0;
    double capacity_bps = 0.0;
    bool serving = false;
};

// One externally supplied SINR sample.
struct TraceSample {
    double time_s;
    std::size_t ue;
    std::size_t gnb;
    double sinr_db;
};

// Time-varying SINR and capacity for every UE-gNB pair. The synthetic
// process is pathloss + distance-correlated shadowing + AR(1) fast
// fading + on/off blockage; alternatively an ingested trace drives the
// SINR directly and the same handover logic runs on top of it.
class ChannelModel {
public:
    ChannelModel(ScenarioGeometry geometry, ChannelParams params, std::uint64_t seed)
        : geo_(std::move(geometry)), params_(std::move(params)) {
        const std::size_t n_ue = geo_.num_ues();
        const std::size_t n_gnb = geo_.num_gnbs();
        if (n_ue == 0 || n_gnb == 0)
            throw std::invalid_argument("channel model needs at least one UE and gNB");
        links_.resize(n_ue * n_gnb);
        shadow_.reserve(links_.size());
        fading_.reserve(links_.size());
        blockers_.reserve(links_.size());
        prev_pos_.resize(n_ue);
        for (std::size_t u = 0; u < n_ue; ++u) {
            prev_pos_[u] = geo_.ue_position(core::SimTime::zero(), u);
            for (std::size_t g = 0; g < n_gnb; ++g) {
                const std::string tag = "u" + std::to_string(u) + "g" + std::to_string(g);
                const double sh_std = geo_.ues[u].los_class == LosClass::Los
                                          ? params_.shadowing.stddev_los_db
                                          : params_.shadowing.stddev_nlos_db;
                shadow_.emplace_back(sh_std, core::RngStream(seed, "channel/shadow/" + tag));
                fading_.emplace_back(params_.fading.stddev_db,
                                     core::RngStream(seed, "channel/fading/" + tag));
                blockers_.emplace_back(params_.blockers,
                                       core::RngStream(seed, "blockage/" + tag));
            }
        }
        ho_.resize(n_ue);
        for (std::size_t u = 0; u < n_ue; ++u) ho_[u].serving = nearest_gnb(core::SimTime::zero(), u);
        refresh_links(core::SimTime::zero(), core::SimTime::zero());
    }

    // Replaces the synthetic SINR process with externally generated
    // samples (piecewise-constant between rows).
    void ingest_trace(std::vector<TraceSample> samples) {
        std::stable_sort(samples.begin(), samples.end(),
                         [](const TraceSample& a, const TraceSample& b) {
                             return a.time_s < b.time_s;
                         });
        trace_ = std::move(samples);
        trace_pos_ = 0;
        trace_sinr_.assign(links_.size(),
                           -std::numeric_limits<double>::infinity());
        use_trace_ = true;
    }

    static std::vector<TraceSample> parse_trace(std::istream& in) {
        std::vector<TraceSample> out;
        for (const auto& row : core::read_csv(in, /*skip_header=*/true)) {
            if (row.size() != 4)
                throw std::runtime_error("channel trace rows need: time_s,ue_id,gnb_id,sinr_db");
            out.push_back(TraceSample{std::stod(row[0]),
                                      static_cast<std::size_t>(std::stoul(row[1])),
                                      static_cast<std::size_t>(std::stoul(row[2])),
                                      std::stod(row[3])});
        }
        return out;
    }

    // Advance all link processes to `now`; meant to be called once per
    // grid tick from the event loop.
    void update(core::SimTime now) {
        const core::SimTime dt = now - last_update_;
        refresh_links(now, dt);
        update_handover(now, dt);
        last_update_ = now;
    }

    const LinkState& link(std::size_t ue, std::size_t gnb) const {
        return links_[ue * geo_.num_gnbs() + gnb];
    }

    std::size_t serving_gnb(std::size_t ue) const { return ho_[ue].serving; }
    bool in_handover(std::size_t ue) const { return ho_[ue].switching; }
    std::uint64_t handover_count(std::size_t ue) const { return ho_[ue].count; }

    // Capacity of the serving link; zero while the switch is in flight.
    double serving_capacity(std::size_t ue) const {
        if (ho_[ue].switching) return 0.0;
        return link(ue, ho_[ue].serving).capacity_bps;
    }

    double serving_sinr(std::size_t ue) const {
        return link(ue, ho_[ue].serving).sinr_db;
    }

    LosClass serving_class(std::size_t ue) const {
        return link(ue, ho_[ue].serving).los_class;
    }

    const ScenarioGeometry& geometry() const { return geo_; }
    const ChannelParams& params() const { return params_; }

    // True iff some gNB is above the outage floor for this UE.
    bool any_gnb_usable(std::size_t ue) const {
        for (std::size_t g = 0; g < geo_.num_gnbs(); ++g)
            if (link(ue, g).sinr_db >= params_.rate.sinr_floor_db) return true;
        return false;
    }

private:
    struct HoState {
        std::size_t serving = 0;
        std::size_t candidate = 0;
        core::SimTime above_since{-1};  // -1: hysteresis condition not met
        bool switching = false;
        core::SimTime switch_done{0};
        std::uint64_t count = 0;
    };

    std::size_t nearest_gnb(core::SimTime t, std::size_t ue) const {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::max();
        for (std::size_t g = 0; g < geo_.num_gnbs(); ++g) {
            const double d = geo_.link_distance(t, ue, g);
            if (d < best_d) {
                best_d = d;
                best = g;
            }
        }
        return best;
    }

    void refresh_links(core::SimTime now, core::SimTime dt) {
        if (use_trace_) {
            const double t_s = now.seconds();
            while (trace_pos_ < trace_.size() && trace_[trace_pos_].time_s <= t_s + 1e-12) {
                const TraceSample& s = trace_[trace_pos_++];
                if (s.ue < geo_.num_ues() && s.gnb < geo_.num_gnbs())
                    trace_sinr_[s.ue * geo_.num_gnbs() + s.gnb] = s.sinr_db;
            }
        }
        const std::size_t n_gnb = geo_.num_gnbs();
        for (std::size_t u = 0; u < geo_.num_ues(); ++u) {
            const Vec3 pos = geo_.ue_position(now, u);
            const double moved = distance(pos, prev_pos_[u]);
            prev_pos_[u] = pos;
            const double shadow_rho =
                dt.ns == 0 ? 1.0
                           : std::exp(-moved / params_.shadowing.corr_distance_m);
            const double fading_rho =
                dt.ns == 0
                    ? 1.0
                    : std::exp(-(dt.seconds() * 1e6) / params_.fading.coherence_us);
            for (std::size_t g = 0; g < n_gnb; ++g) {
                const std::size_t idx = u * n_gnb + g;
                LinkState& ls = links_[idx];
                BlockerProcess& bp = blockers_[idx];
                bp.step(now, dt, params_.blocker_region && params_.blocker_region(pos, g));
                double sinr;
                if (use_trace_) {
                    sinr = trace_sinr_[idx] - bp.loss_db();
                } else {
                    const LosClass base = geo_.ues[u].los_class;
                    const double pl = params_.pathloss.loss_db(distance(pos, geo_.gnb_positions[g]), base);
                    double shadow = shadow_[idx].value();
                    double fade = fading_[idx].value();
                    if (dt.ns > 0) {
                        shadow = shadow_[idx].step(shadow_rho);
                        fade = fading_[idx].step(fading_rho);
                    }
                    sinr = params_.link_budget_db - pl - bp.loss_db() + shadow + fade;
                }
                ls.sinr_db = sinr;
                ls.capacity_bps = capacity_bps(sinr, params_.rate);
                ls.los_class = bp.blocked() ? LosClass::Nlos : geo_.ues[u].los_class;
                ls.serving = (ho_[u].serving == g);
            }
        }
    }

    void update_handover(core::SimTime now, core::SimTime dt) {
        if (!params_.handover.enabled || geo_.num_gnbs() < 2) return;
        const std::size_t n_gnb = geo_.num_gnbs();
        for (std::size_t u = 0; u < geo_.num_ues(); ++u) {
            HoState& h = ho_[u];
            if (h.switching) {
                if (now >= h.switch_done) {
                    h.switching = false;
                    h.serving = h.candidate;
                    h.above_since = core::SimTime{-1};
                    ++h.count;
                    for (std::size_t g = 0; g < n_gnb; ++g)
                        links_[u * n_gnb + g].serving = (g == h.serving);
                }
                continue;
            }
            std::size_t best = h.serving;
            double best_sinr = link(u, h.serving).sinr_db;
            for (std::size_t g = 0; g < n_gnb; ++g) {
                if (g == h.serving) continue;
                if (link(u, g).sinr_db > best_sinr) {
                    best = g;
                    best_sinr = link(u, g).sinr_db;
                }
            }
            const double serving_sinr_db = link(u, h.serving).sinr_db;
            if (best != h.serving &&
                best_sinr > serving_sinr_db + params_.handover.hysteresis_db) {
                if (h.above_since.ns < 0 || best != h.candidate) {
                    h.candidate = best;
                    h.above_since = now;
                }
                if (now - h.above_since >= params_.handover.time_to_trigger &&
                    dt.ns > 0) {
                    h.switching = true;
                    h.switch_done = now + params_.handover.switch_delay;
                }
            } else {
                h.above_since = core::SimTime{-1};
            }
        }
    }

    ScenarioGeometry geo_;
    ChannelParams params_;
    std::vector<LinkState> links_;
    std::vector<Ar1Process> shadow_;
    std::vector<Ar1Process> fading_;
    std::vector<BlockerProcess> blockers_;
    std::vector<Vec3> prev_pos_;
    std::vector<HoState> ho_;
    core::SimTime last_update_{0};

    bool use_trace_ = false;
    std::vector<TraceSample> trace_;
    std::size_t trace_pos_ = 0;
    std::vector<double> trace_sinr_;
};

}  // namespace mmtcp::chan

#endif
