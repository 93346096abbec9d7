#ifndef MMTCP_LINK_CELL_HPP
#define MMTCP_LINK_CELL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mmtcp/chan/channel_model.hpp"
#include "mmtcp/core/event_queue.hpp"
#include "mmtcp/core/rng.hpp"
#include "mmtcp/core/time.hpp"
#include "mmtcp/link/codel.hpp"
#include "mmtcp/link/harq.hpp"
#include "mmtcp/link/rlc_buffer.hpp"

namespace mmtcp::link {

struct CellConfig {
    core::SimTime tti = core::SimTime::from_ms(1);
    std::uint64_t buffer_bytes = 15'000'000;  // per-UE RLC buffer B
    bool codel_enabled = false;
    CodelParams codel;
    HarqConfig harq;
};

struct UeLinkStats {
    std::uint64_t enqueued_pdus = 0;
    std::uint64_t served_bytes = 0;       // bytes taken off the RLC buffer
    std::uint64_t delivered_pdus = 0;
    std::uint64_t droptail_drops = 0;
    std::uint64_t codel_drops = 0;
    std::uint64_t channel_lost_pdus = 0;  // HARQ/RLC gave up (RLC-AM off)
    std::uint64_t harq_retx = 0;
    std::uint64_t rlc_retx = 0;
};

// Round-robin split of one TTI across backlogged users, with the unused
// remainder of early-drained users redistributed. Returns per-UE shares
// in ns; entries with no backlog or no capacity get zero.
inline std::vector<std::int64_t> rr_shares(
    std::int64_t tti_ns, const std::vector<std::int64_t>& queued_bits,
    const std::vector<double>& capacity_bps) {
    const std::size_t n = queued_bits.size();
    std::vector<std::int64_t> share(n, 0);
    std::vector<std::int64_t> useful_ns(n, 0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
        if (queued_bits[i] > 0 && capacity_bps[i] > 0.0) {
            // ceil(bits / rate) in ns
            const double ns = static_cast<double>(queued_bits[i]) * 1e9 / capacity_bps[i];
            useful_ns[i] = static_cast<std::int64_t>(ns) + 1;
            active.push_back(i);
        }
    }
    std::int64_t left = tti_ns;
    while (left > 0 && !active.empty()) {
        const std::int64_t chunk = left / static_cast<std::int64_t>(active.size());
        std::int64_t rem = left % static_cast<std::int64_t>(active.size());
        if (chunk == 0 && rem == 0) break;
        left = 0;
        std::vector<std::size_t> still;
        for (std::size_t i : active) {
            std::int64_t give = chunk + (rem > 0 ? 1 : 0);
            if (rem > 0) --rem;
            const std::int64_t want = useful_ns[i] - share[i];
            const std::int64_t used = std::min(give, want);
            share[i] += used;
            left += give - used;
            if (share[i] < useful_ns[i]) still.push_back(i);
        }
        if (still.size() == active.size() && left > 0) break;  // nobody drained
        active = std::move(still);
    }
    return share;
}

// The cellular bottleneck: one RLC buffer per UE, drop-tail or CoDel,
// TTI-grained round-robin service, HARQ plus optional RLC-AM
// retransmission, and in-order delivery to the TCP receiver side.
class Cell {
public:
    // Called when a PDU's payload reaches the UE (after reordering).
    using DeliverFn =
        std::function<void(std::size_t ue, const tcp::Segment& seg)>;

    Cell(core::EventQueue& q, chan::ChannelModel& channel, CellConfig cfg,
         std::uint64_t seed, DeliverFn deliver)
        : q_(q),
          channel_(channel),
          cfg_(cfg),
          deliver_(std::move(deliver)),
          harq_rng_(seed, "loss/harq") {
        const std::size_t n = channel_.geometry().num_ues();
        for (std::size_t u = 0; u < n; ++u) {
            ues_.push_back(std::make_unique<UeState>(cfg_.buffer_bytes));
            if (cfg_.codel_enabled)
                ues_.back()->codel =
                    std::make_unique<CodelQueue>(ues_.back()->buffer, cfg_.codel);
        }
    }

    void start() { schedule_tick(core::SimTime::zero()); }

    EnqueueResult enqueue(std::size_t ue, const tcp::Segment& seg,
                          std::uint64_t bytes) {
        UeState& s = *ues_.at(ue);
        const EnqueueResult r = s.buffer.enqueue(seg, bytes, q_.now());
        if (r == EnqueueResult::Accepted) {
            ++s.stats.enqueued_pdus;
        } else {
            ++s.stats.droptail_drops;
            if (queue_trace_) queue_trace_(q_.now(), ue, s.buffer.occupancy_bytes(), 0.0, 1);
        }
        return r;
    }

    const UeLinkStats& stats(std::size_t ue) const { return ues_.at(ue)->stats; }
    std::uint64_t buffer_occupancy(std::size_t ue) const {
        return ues_.at(ue)->buffer.occupancy_bytes();
    }

    // (now, buffer_id, occupancy_bytes, sojourn_ms, drop_flag)
    using QueueTraceFn =
        std::function<void(core::SimTime, std::size_t, std::uint64_t, double, int)>;
    void set_queue_trace(QueueTraceFn fn) { queue_trace_ = std::move(fn); }

private:
    struct InService {
        Pdu pdu;
        std::int64_t bits_left = 0;
    };

    struct UeState {
        explicit UeState(std::uint64_t cap) : buffer(cap) {}
        RlcBuffer buffer;
        std::unique_ptr<CodelQueue> codel;
        std::optional<InService> in_service;
        std::int64_t budget_carry = 0;  // sub-bit remainder, bps*ns units
        std::uint64_t next_sn = 0;      // assigned at service start
        std::uint64_t reorder_next = 0; // next sn to release upward
        std::map<std::uint64_t, tcp::Segment> reorder;
        UeLinkStats stats;
    };

    void schedule_tick(core::SimTime t) {
        q_.schedule(t, [this] { on_tick(); }, core::EventKind::SchedulerTick);
    }

    void on_tick() {
        const core::SimTime now = q_.now();
        channel_.update(now);
        serve(now);
        schedule_tick(now + cfg_.tti);
    }

    std::int64_t queued_bits(const UeState& s) const {
        std::int64_t bits = s.in_service ? s.in_service->bits_left : 0;
        bits += static_cast<std::int64_t>(s.buffer.occupancy_bytes()) * 8;
        return bits;
    }

    void serve(core::SimTime tick_start) {
        const std::size_t n = ues_.size();
        std::vector<std::int64_t> bits(n, 0);
        std::vector<double> cap(n, 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            bits[u] = queued_bits(*ues_[u]);
            cap[u] = channel_.serving_capacity(u);
        }
        const std::vector<std::int64_t> share = rr_shares(cfg_.tti.ns, bits, cap);
        for (std::size_t u = 0; u < n; ++u) {
            if (share[u] <= 0) continue;
            serve_ue(u, tick_start, share[u], cap[u]);
        }
        if (queue_trace_) {
            for (std::size_t u = 0; u < n; ++u) {
                const UeState& s = *ues_[u];
                double sojourn_ms = 0.0;
                if (!s.buffer.empty())
                    sojourn_ms = (tick_start - s.buffer.front().enqueue_time).millis();
                queue_trace_(tick_start, u, s.buffer.occupancy_bytes(), sojourn_ms, 0);
            }
        }
    }

    void serve_ue(std::size_t u, core::SimTime tick_start, std::int64_t share_ns,
                  double capacity) {
        UeState& s = *ues_[u];
        const std::int64_t cap_bps = static_cast<std::int64_t>(capacity);
        std::int64_t numer = cap_bps * share_ns + s.budget_carry;
        std::int64_t budget_bits = numer / 1'000'000'000;
        s.budget_carry = numer % 1'000'000'000;
        if (budget_bits <= 0) return;
        const std::int64_t total_budget = budget_bits;
        std::int64_t consumed = 0;
        auto time_at = [&](std::int64_t bits_done) {
            return tick_start + core::SimTime::from_ns(cfg_.tti.ns * bits_done /
                                                       total_budget);
        };
        while (budget_bits > 0) {
            if (!s.in_service) {
                const core::SimTime cursor = time_at(consumed);
                std::optional<Pdu> next = take_next_pdu(s, u, cursor);
                if (!next) break;
                next->rlc_sn = s.next_sn++;
                s.in_service = InService{*next,
                                         static_cast<std::int64_t>(next->bytes) * 8};
            }
            const std::int64_t take = std::min(budget_bits, s.in_service->bits_left);
            s.in_service->bits_left -= take;
            budget_bits -= take;
            consumed += take;
            if (s.in_service->bits_left == 0) {
                complete_pdu(u, s, time_at(consumed));
                s.in_service.reset();
            }
        }
    }

    std::optional<Pdu> take_next_pdu(UeState& s, std::size_t u, core::SimTime now) {
        if (s.codel) {
            CodelQueue::DequeueOutcome out = s.codel->dequeue(now);
            if (out.dropped > 0) {
                s.stats.codel_drops += out.dropped;
                if (queue_trace_)
                    queue_trace_(now, u, s.buffer.occupancy_bytes(), 0.0,
                                 static_cast<int>(out.dropped));
            }
            return std::move(out.pdu);
        }
        if (s.buffer.empty()) return std::nullopt;
        return s.buffer.pop_front();
    }

    void complete_pdu(std::size_t u, UeState& s, core::SimTime serialized_at) {
        s.stats.served_bytes += s.in_service->pdu.bytes;
        const double sinr = channel_.serving_sinr(u);
        const TransmitOutcome tx = transmit_pdu(sinr, cfg_.harq, harq_rng_);
        s.stats.harq_retx += tx.harq_retx;
        s.stats.rlc_retx += tx.rlc_retx;
        if (tx.lost) {
            ++s.stats.channel_lost_pdus;
            if (cfg_.harq.rlc_am_enabled) {
                // Unreachable: AM retries until success.
            } else if (!cfg_.harq.rlc_am_enabled) {
                // With RLC-UM later PDUs are not held back by the loss.
                return;
            }
        }
        const core::SimTime arrival = serialized_at + tx.extra_delay;
        const Pdu pdu = s.in_service->pdu;
        q_.schedule(arrival, [this, u, pdu] { on_pdu_arrival(u, pdu); },
                    core::EventKind::PacketArrival);
    }

    void on_pdu_arrival(std::size_t u, const Pdu& pdu) {
        UeState& s = *ues_[u];
        if (!cfg_.harq.rlc_am_enabled) {
            ++s.stats.delivered_pdus;
            deliver_(u, pdu.segment);
            return;
        }
        // RLC-AM: in-order release; head-of-line wait is part of the
        // measured one-way delay.
        s.reorder.emplace(pdu.rlc_sn, pdu.segment);
        while (!s.reorder.empty() &&
               s.reorder.begin()->first == s.reorder_next) {
            ++s.stats.delivered_pdus;
            deliver_(u, s.reorder.begin()->second);
            s.reorder.erase(s.reorder.begin());
            ++s.reorder_next;
        }
    }

    core::EventQueue& q_;
    chan::ChannelModel& channel_;
    CellConfig cfg_;
    DeliverFn deliver_;
    core::RngStream harq_rng_;
    std::vector<std::unique_ptr<UeState>> ues_;
    QueueTraceFn queue_trace_;
};

}  // namespace mmtcp::link

#endif
