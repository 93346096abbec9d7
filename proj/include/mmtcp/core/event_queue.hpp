#ifndef MMTCP_CORE_EVENT_QUEUE_HPP
#define MMTCP_CORE_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mmtcp/core/time.hpp"

namespace mmtcp::core {

// Payload tag carried by events; only used for traces and debugging.
enum class EventKind : std::uint8_t {
    Generic,
    PacketArrival,
    TimerExpiry,
    ChannelUpdate,
    SchedulerTick,
    Handover,
};

struct EventHandle {
    std::uint64_t seq = 0;
    bool valid() const { return seq != 0; }
};

// Single-threaded discrete-event queue. Events fire in (fire_at, seq)
// order; seq is the insertion counter, so same-time events are FIFO.
// Cancellation is lazy: cancelled entries are skipped at pop time.
class EventQueue {
public:
    EventHandle schedule(SimTime t, std::function<void()> fn,
                         EventKind kind = EventKind::Generic) {
        if (t < now_)
            throw std::logic_error("EventQueue::schedule: event in the past");
        const std::uint64_t seq = ++next_seq_;
        heap_.push(Entry{t, seq});
        pending_.emplace(seq, Payload{std::move(fn), kind});
        return EventHandle{seq};
    }

    // True iff the event existed and had not fired; idempotent.
    bool cancel(EventHandle h) {
        return pending_.erase(h.seq) > 0;
    }

    // Process every pending event with fire_at <= t_end, including ones
    // scheduled while running. Returns the number of events fired.
    std::uint64_t run_until(SimTime t_end) {
        std::uint64_t fired = 0;
        while (!heap_.empty()) {
            const Entry top = heap_.top();
            if (top.fire_at > t_end) break;
            heap_.pop();
            auto it = pending_.find(top.seq);
            if (it == pending_.end()) continue;  // cancelled
            Payload payload = std::move(it->second);
            pending_.erase(it);
            now_ = top.fire_at;
            ++fired;
            payload.fn();
        }
        if (t_end > now_) now_ = t_end;
        return fired;
    }

    SimTime now() const { return now_; }
    bool empty() const { return pending_.empty(); }
    std::size_t pending_events() const { return pending_.size(); }

private:
    struct Entry {
        SimTime fire_at;
        std::uint64_t seq;
        bool operator>(const Entry& o) const {
            if (fire_at != o.fire_at) return fire_at > o.fire_at;
            return seq > o.seq;
        }
    };
    struct Payload {
        std::function<void()> fn;
        EventKind kind;
    };

    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
    std::unordered_map<std::uint64_t, Payload> pending_;
    std::uint64_t next_seq_ = 0;
    SimTime now_{0};
};

}  // namespace mmtcp::core

#endif
