#include "hlinv/invariant.hpp"

#include <stdexcept>

namespace hlinv {

std::string NormalizedMultiset::to_string() const {
    std::string out = "multiset {";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += "(" + std::to_string(entries[i].first) + ", " + entries[i].second.to_string() + ")";
    }
    return out + "}";
}

namespace {

URational normalized_count(const Diagram& d, const GFamily& fam, unsigned workers) {
    ComponentStructure cs = split_components(d);
    if (cs.count != 1)
        throw std::invalid_argument("diagram must encode a single handlebody-knot");
    BigUint count = count_colorings(d, fam, workers);
    BigUint denom = BigUint::pow(BigUint(fam.group.order), cs.genus[0]);
    return URational(count, denom);
}

uint32_t two_component_genus_sum(const Diagram& d) {
    ComponentStructure cs = split_components(d);
    if (cs.count != 2)
        throw std::invalid_argument("diagram must have exactly 2 components");
    return cs.genus[0] + cs.genus[1];
}

}  // namespace

RationalPair surface_pair_invariant(const Diagram& dv, const Diagram& dw, const GFamily& fam,
                                    unsigned workers) {
    URational a = normalized_count(dv, fam, workers);
    URational b = normalized_count(dw, fam, workers);
    if (URational::cmp(b, a) < 0) std::swap(a, b);
    return {a, b};
}

URational link_invariant(const Diagram& d, const GFamily& fam, unsigned workers) {
    uint32_t gsum = two_component_genus_sum(d);
    BigUint count = count_colorings(d, fam, workers);
    return URational(count, BigUint::pow(BigUint(fam.group.order), gsum));
}

NormalizedMultiset cocycle_surface_invariant(const Diagram& d, const GFamily& fam, const XSet& s,
                                             const Cochain2& theta, unsigned workers) {
    uint32_t gsum = two_component_genus_sum(d);
    BigUint denom = BigUint::pow(BigUint(fam.group.order), gsum);
    NormalizedMultiset out;
    for (auto& [elem, mult] : phi_theta(d, fam, s, theta, workers))
        out.entries.push_back({elem, URational(mult, denom)});
    return out;
}

int64_t linking_number(const Diagram& d) {
    Topology t = analyze(d);
    if (t.components.count != 2)
        throw std::invalid_argument("linking number needs exactly 2 components");
    int64_t sum = 0;
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        auto [co, cu] = t.components.crossing_components[i];
        if (co != cu) sum += d.crossings[i].sign();
    }
    if (sum % 2 != 0) throw std::logic_error("odd signed inter-component crossing sum");
    return sum / 2;
}

}  // namespace hlinv
