// Stabilization and the R1/R2/R3 rewrite battery.  All surgeries run on the
// segment graph and rebuild the arc structure afterwards, so the returned
// diagrams are fresh values.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlinv/diagram.hpp"

namespace hlinv {

class MoveError : public std::runtime_error {
public:
    explicit MoveError(const std::string& msg) : std::runtime_error(msg) {}
};

// attach an edge and a circle to the given arc; genus of its component grows
// by one and no crossings are created
Diagram stabilize(const Diagram& d, uint32_t arc, uint32_t seg = 0, bool left_side = true);

enum class MoveType { r1_plus, r1_minus, r2_plus, r2_minus, r3 };

// a place on the diagram: segment `seg` of `arc` (ignored for bare circles)
struct StrandRef {
    uint32_t arc = 0;
    uint32_t seg = 0;
};

struct MoveSite {
    MoveType type = MoveType::r1_plus;
    StrandRef a, b;            // r1+: a; r2+: a pokes across b
    bool side_a = true;        // true = left of the strand orientation
    bool side_b = true;
    bool over_first = false;   // r1+ kink shape
    bool a_over = true;        // r2+: which strand ends on top
    uint32_t c1 = 0, c2 = 0, c3 = 0;  // crossings for r1-/r2-/r3
    uint32_t variant = 0;      // disambiguates several faces on the same corners
};

Diagram apply_move(const Diagram& d, const MoveSite& site);  // throws MoveError

// every applicable site of one move type, in deterministic order
std::vector<MoveSite> enumerate_sites(const Diagram& d, MoveType type);

}  // namespace hlinv
