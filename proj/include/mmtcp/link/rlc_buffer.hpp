#ifndef MMTCP_LINK_RLC_BUFFER_HPP
#define MMTCP_LINK_RLC_BUFFER_HPP

#include <cassert>
#include <cstdint>
#include <deque>
#include <functional>

#include "mmtcp/core/time.hpp"
#include "mmtcp/tcp/segment.hpp"

namespace mmtcp::link {

// One RLC PDU; one TCP segment maps to exactly one PDU.
struct Pdu {
    tcp::Segment segment;
    std::uint64_t bytes = 0;
    core::SimTime enqueue_time{0};
    std::uint64_t rlc_sn = 0;  // assigned at dequeue, in service order
};

enum class EnqueueResult : std::uint8_t { Accepted, Dropped };

// Drop-tail FIFO bounded by `capacity_bytes` (the paper's B). CoDel, when
// enabled, acts at dequeue time through CodelQueue.
class RlcBuffer {
public:
    explicit RlcBuffer(std::uint64_t capacity_bytes)
        : capacity_(capacity_bytes) {}

    EnqueueResult enqueue(tcp::Segment seg, std::uint64_t bytes, core::SimTime now) {
        assert(bytes > 0);
        if (occupancy_ + bytes > capacity_) {
            ++droptail_drops_;
            return EnqueueResult::Dropped;
        }
        fifo_.push_back(Pdu{seg, bytes, now, 0});
        occupancy_ += bytes;
        assert(occupancy_ <= capacity_);
        return EnqueueResult::Accepted;
    }

    bool empty() const { return fifo_.empty(); }
    std::size_t size() const { return fifo_.size(); }
    std::uint64_t occupancy_bytes() const { return occupancy_; }
    std::uint64_t capacity_bytes() const { return capacity_; }
    std::uint64_t droptail_drops() const { return droptail_drops_; }

    const Pdu& front() const { return fifo_.front(); }

    Pdu pop_front() {
        Pdu p = fifo_.front();
        fifo_.pop_front();
        occupancy_ -= p.bytes;
        return p;
    }

private:
    std::uint64_t capacity_;
    std::uint64_t occupancy_ = 0;
    std::uint64_t droptail_drops_ = 0;
    std::deque<Pdu> fifo_;
};

}  // namespace mmtcp::link

#endif
