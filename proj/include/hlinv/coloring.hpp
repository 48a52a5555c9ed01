// Enumeration of X-colorings and X_Y-colorings and cocycle weight sums.
//
// The enumerator orders arcs so crossing and vertex relations become forward
// derivations wherever possible; remaining relations prune partial
// assignments.  Counts are exact big integers.  Region colorings are
// propagated from a single seed region along a spanning tree of the region
// adjacency graph and verified on the non-tree edges.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hlinv/algebra.hpp"
#include "hlinv/bigint.hpp"
#include "hlinv/diagram.hpp"

namespace hlinv {

struct Coloring {
    std::vector<uint32_t> arc_q;     // per arc, encoded x*|G| + g
    std::vector<uint32_t> region_y;  // per region; empty when not a shadow coloring
};

BigUint count_colorings(const Diagram& d, const GFamily& fam, unsigned workers = 1);

// streams every X-coloring (no region part); deterministic order for workers == 1
void for_each_coloring(const Diagram& d, const GFamily& fam,
                       const std::function<void(const std::vector<uint32_t>&)>& fn);

BigUint count_shadow_colorings(const Diagram& d, const GFamily& fam, const XSet& s,
                               unsigned workers = 1);

void for_each_shadow_coloring(const Diagram& d, const GFamily& fam, const XSet& s,
                              const std::function<void(const Coloring&)>& fn);

// nonempty iff the given coloring satisfies every rule of the diagram
Report validate_coloring(const Diagram& d, const GFamily& fam, const XSet* s,
                         const Coloring& c);

struct PerCrossingWeight {
    uint32_t crossing = 0;
    int sign = 0;
    uint32_t y = 0, q1 = 0, q3 = 0;
};

struct WeightSum {
    int64_t value = 0;
    std::vector<PerCrossingWeight> per_crossing;
};

// weight of one valid shadow coloring; throws std::invalid_argument if the
// coloring does not satisfy the rules
WeightSum weight_sum(const Diagram& d, const GFamily& fam, const XSet& s, const Cochain2& theta,
                     const Coloring& c);

// multiset of weight sums over all shadow colorings, keyed by coefficient value
std::map<int64_t, BigUint> phi_theta(const Diagram& d, const GFamily& fam, const XSet& s,
                                     const Cochain2& theta, unsigned workers = 1);

}  // namespace hlinv
