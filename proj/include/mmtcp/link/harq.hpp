#ifndef MMTCP_LINK_HARQ_HPP
#define MMTCP_LINK_HARQ_HPP

#include <cmath>
#include <cstdint>
#include <optional>

#include "mmtcp/core/rng.hpp"
#include "mmtcp/core/time.hpp"

namespace mmtcp::link {

// Logistic first-attempt error probability centered on `center_db`
// (the outage floor): p_e = 1/2 there, ~10% around nominal SINR, and
// monotone nonincreasing in SINR.
struct ErrorCurve {
    double center_db = -5.0;
    double slope_per_db = 0.11;

    double operator()(double sinr_db) const {
        return 1.0 / (1.0 + std::exp(slope_per_db * (sinr_db - center_db)));
    }
};

struct HarqConfig {
    ErrorCurve error_prob;
    std::uint32_t max_harq_retx = 3;          // retransmissions after the first try
    core::SimTime harq_rtt = core::SimTime::from_ms(8);
    bool rlc_am_enabled = true;
    core::SimTime rlc_retx_timer = core::SimTime::from_ms(20);
};

struct TransmitOutcome {
    bool lost = false;                 // possible only with RLC-AM off
    core::SimTime extra_delay{0};      // beyond serialization
    std::uint32_t harq_retx = 0;
    std::uint32_t rlc_retx = 0;
};

// Samples the retransmission ladder for one PDU sent at the given SINR.
// Each failed attempt adds harq_rtt; when the HARQ budget is exhausted,
// RLC-AM retries after rlc_retx_timer until delivery, otherwise the PDU
// is lost. SINR is frozen at first-transmission time.
inline TransmitOutcome transmit_pdu(double sinr_db, const HarqConfig& cfg,
                                    core::RngStream& rng) {
    TransmitOutcome out;
    const double p_e = cfg.error_prob(sinr_db);
    // ~2^-64 per full ladder at p_e = 1/2; the cap only guards degenerate curves.
    for (int rounds = 0; rounds < 1000; ++rounds) {
        for (std::uint32_t attempt = 0; attempt <= cfg.max_harq_retx; ++attempt) {
            if (!rng.bernoulli(p_e)) return out;
            out.extra_delay += cfg.harq_rtt;
            if (attempt < cfg.max_harq_retx) ++out.harq_retx;
        }
        if (!cfg.rlc_am_enabled) {
            out.lost = true;
            return out;
        }
        out.extra_delay += cfg.rlc_retx_timer;
        ++out.rlc_retx;
    }
    return out;
}

}  // namespace mmtcp::link

#endif
