// Surface invariants assembled from coloring counts: the stabilization-
// normalized rational pair, the single link rational, the normalized cocycle
// multiset, and the linking number.  All arithmetic is exact.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlinv/bigint.hpp"
#include "hlinv/coloring.hpp"
#include "hlinv/diagram.hpp"

namespace hlinv {

struct RationalPair {
    URational first, second;  // stored sorted; equality is as unordered pairs

    bool operator==(const RationalPair& o) const {
        return first == o.first && second == o.second;
    }
    std::string to_string() const {
        return "pair " + first.to_string() + " " + second.to_string();
    }
};

struct NormalizedMultiset {
    std::vector<std::pair<int64_t, URational>> entries;  // sorted by element

    bool operator==(const NormalizedMultiset& o) const { return entries == o.entries; }
    std::string to_string() const;
};

// each diagram encodes one handlebody-knot: count / |G|^genus per side
RationalPair surface_pair_invariant(const Diagram& dv, const Diagram& dw, const GFamily& fam,
                                    unsigned workers = 1);

// one diagram with exactly two components: count / |G|^(g1+g2)
URational link_invariant(const Diagram& d, const GFamily& fam, unsigned workers = 1);

NormalizedMultiset cocycle_surface_invariant(const Diagram& d, const GFamily& fam, const XSet& s,
                                             const Cochain2& theta, unsigned workers = 1);

// half the signed count of crossings between the two components
int64_t linking_number(const Diagram& d);

}  // namespace hlinv
