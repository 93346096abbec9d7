#ifndef MMTCP_TCP_SEGMENT_HPP
#define MMTCP_TCP_SEGMENT_HPP

#include <array>
#include <cstdint>

#include "mmtcp/core/time.hpp"

namespace mmtcp::tcp {

struct SackBlock {
    std::uint64_t start = 0;  // inclusive byte offset
    std::uint64_t end = 0;    // exclusive
    bool empty() const { return end <= start; }
};

enum class SegmentFlags : std::uint8_t { Data, Ack };

// Abstract TCP segment: byte-offset sequence space, no header bytes.
struct Segment {
    SegmentFlags flags = SegmentFlags::Data;
    std::uint32_t flow_id = 0;
    std::uint64_t seq = 0;      // first byte carried (DATA)
    std::uint32_t len = 0;      // payload bytes, <= MSS
    std::uint64_t ack_no = 0;   // cumulative ack (ACK)
    std::array<SackBlock, 3> sack_blocks{};
    std::uint8_t n_sack = 0;
    core::SimTime send_time{0};
    bool retransmit = false;
};

}  // namespace mmtcp::tcp

#endif
