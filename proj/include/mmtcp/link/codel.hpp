#ifndef MMTCP_LINK_CODEL_HPP
#define MMTCP_LINK_CODEL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>

#include "mmtcp/core/time.hpp"
#include "mmtcp/link/rlc_buffer.hpp"

namespace mmtcp::link {

struct CodelParams {
    core::SimTime target = core::SimTime::from_ms(5);
    core::SimTime interval = core::SimTime::from_ms(100);
    std::uint64_t mtu_bytes = 14000;  // never drop down to a sub-MTU queue
};

// CoDel control-law state. Dropping starts once the sojourn time has
// stayed above target for a full interval; drop k+1 then follows drop k
// after interval/sqrt(count). Re-entering the drop state shortly after
// leaving it resumes from the previous drop rate (count - lastcount).
struct CoDelState {
    core::SimTime first_above_time{0};  // 0 means "not above target"
    core::SimTime drop_next{0};
    std::uint32_t count = 0;
    std::uint32_t lastcount = 0;
    bool dropping = false;
};

// Wraps an RlcBuffer with the CoDel dequeue law.
class CodelQueue {
public:
    CodelQueue(RlcBuffer& buffer, CodelParams params)
        : buf_(buffer), params_(params) {}

    struct DequeueOutcome {
        std::optional<Pdu> pdu;
        std::uint32_t dropped = 0;
    };

    // Dequeue honoring the control law; drops are consumed internally and
    // reported in the outcome.
    DequeueOutcome dequeue(core::SimTime now) {
        DequeueOutcome out;
        DoDequeue r = dodequeue(now);
        if (st_.dropping) {
            if (!r.ok_to_drop) {
                st_.dropping = false;
            }
            while (st_.dropping && r.pdu && now >= st_.drop_next) {
                ++out.dropped;
                ++drops_;
                ++st_.count;
                r = dodequeue(now);
                if (!r.ok_to_drop) {
                    st_.dropping = false;
                } else {
                    st_.drop_next = control_law(st_.drop_next, st_.count);
                }
            }
        } else if (r.ok_to_drop && r.pdu) {
            ++out.dropped;
            ++drops_;
            r = dodequeue(now);
            st_.dropping = true;
            const std::uint32_t delta = st_.count - st_.lastcount;
            st_.count = (delta > 1 && (now - st_.drop_next).ns <
                                          16 * params_.interval.ns)
                            ? delta
                            : 1;
            ++st_.count;  // spacing law indexes the upcoming drop
            st_.lastcount = st_.count;
            st_.drop_next = control_law(now, st_.count);
        }
        out.pdu = std::move(r.pdu);
        return out;
    }

    const CoDelState& state() const { return st_; }
    std::uint64_t drops() const { return drops_; }

private:
    struct DoDequeue {
        std::optional<Pdu> pdu;
        bool ok_to_drop = false;
    };

    DoDequeue dodequeue(core::SimTime now) {
        DoDequeue r;
        if (buf_.empty()) {
            st_.first_above_time = core::SimTime{0};
            return r;
        }
        r.pdu = buf_.pop_front();
        const core::SimTime sojourn = now - r.pdu->enqueue_time;
        if (sojourn < params_.target || buf_.occupancy_bytes() <= params_.mtu_bytes) {
            st_.first_above_time = core::SimTime{0};
            return r;
        }
        if (st_.first_above_time.ns == 0) {
            st_.first_above_time = now + params_.interval;
        } else if (now >= st_.first_above_time) {
            r.ok_to_drop = true;
        }
        return r;
    }

    core::SimTime control_law(core::SimTime t, std::uint32_t count) const {
        return t + core::SimTime::from_ns(static_cast<std::int64_t>(
                       static_cast<double>(params_.interval.ns) /
                       std::sqrt(static_cast<double>(count))));
    }

    RlcBuffer& buf_;
    CodelParams params_;
    CoDelState st_;
    std::uint64_t drops_ = 0;
};

}  // namespace mmtcp::link

#endif
