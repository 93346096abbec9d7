#ifndef MMTCP_CHAN_GEOMETRY_HPP
#define MMTCP_CHAN_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmtcp/core/time.hpp"

namespace mmtcp::chan {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

enum class LosClass : std::uint8_t { Los, Nlos, Indoor };

inline const char* to_string(LosClass c) {
    switch (c) {
        case LosClass::Los: return "los";
        case LosClass::Nlos: return "nlos";
        case LosClass::Indoor: return "indoor";
    }
    return "?";
}

struct UeSpec {
    Vec3 start;          // position at t = 0
    Vec3 velocity;       // m/s; zero for static users
    LosClass los_class = LosClass::Los;
};

// Deployment geometry for one scenario: gNB sites plus per-UE motion.
// The high-speed preset is a straight track swept at constant speed; the
// urban preset is one site with static users in mixed conditions.
struct ScenarioGeometry {
    std::vector<Vec3> gnb_positions;
    std::vector<UeSpec> ues;

    std::size_t num_gnbs() const { return gnb_positions.size(); }
    std::size_t num_ues() const { return ues.size(); }

    Vec3 ue_position(core::SimTime t, std::size_t ue) const {
        if (ue >= ues.size()) throw std::out_of_range("unknown UE id");
        const UeSpec& u = ues[ue];
        const double s = t.seconds();
        return Vec3{u.start.x + u.velocity.x * s,
                    u.start.y + u.velocity.y * s,
                    u.start.z + u.velocity.z * s};
    }

    double link_distance(core::SimTime t, std::size_t ue, std::size_t gnb) const {
        return distance(ue_position(t, ue), gnb_positions.at(gnb));
    }
};

}  // namespace mmtcp::chan

#endif
