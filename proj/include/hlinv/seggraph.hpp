// Low-level mutable form of a diagram: nodes with slot-attached oriented
// segments, plus bare circles.  Moves and canonicalization do surgery here
// and rebuild the arc structure afterwards.

#pragma once

#include <cstdint>
#include <vector>

#include "hlinv/diagram.hpp"

namespace hlinv {

struct SegGraph {
    struct Node {
        bool is_crossing = true;
        uint8_t degree() const { return is_crossing ? 4 : 3; }
    };
    struct Seg {
        EndRef from, to;  // oriented along the strand
    };

    std::vector<Node> nodes;
    std::vector<Seg> segs;
    uint32_t free_circles = 0;

    uint32_t crossing_count() const {
        uint32_t c = 0;
        for (auto& n : nodes) c += n.is_crossing;
        return c;
    }
};

// topology.segments order is preserved, so segment indices computed on the
// diagram remain valid in the graph
SegGraph to_seggraph(const Diagram& d, const Topology& t);

// re-derive arcs; throws std::invalid_argument on inconsistent wiring
Diagram from_seggraph(const SegGraph& g, Ambient ambient);

}  // namespace hlinv
