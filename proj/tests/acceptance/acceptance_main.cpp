// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failed criteria.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "hlinv/coloring.hpp"
#include "hlinv/invariant.hpp"
#include "hlinv/moves.hpp"
#include "support/builders.hpp"
#include "support/cocycle.hpp"
#include "support/oracle.hpp"

#ifndef HLINV_DATA
#define HLINV_DATA "data"
#endif

using namespace hlinv;
using builders::parse;

namespace {

int failures = 0;
std::vector<std::string> notes;

void criterion(int id, const std::string& what, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " [" << ms
              << " ms]";
    if (!error.empty()) std::cout << " (exception: " << error << ")";
    std::cout << "\n";
    for (auto& n : notes) std::cout << "       " << n << "\n";
    notes.clear();
    if (!ok) ++failures;
}

GFamily paper_family() { return make_dihedral_family(3); }

GFamily trivial_family_g3() {
    GFamily f;
    f.group = FiniteGroup::cyclic(3);
    f.carrier = 3;
    f.op.resize(27);
    for (uint32_t g = 0; g < 3; ++g)
        for (uint32_t x = 0; x < 3; ++x)
            for (uint32_t y = 0; y < 3; ++y) f.op[(g * 3 + x) * 3 + y] = x;
    return f;
}

Cochain2 frozen_cochain(const GFamily& f, const XSet& s) {
    std::ifstream in(std::string(HLINV_DATA) + "/nontrivial3.coc");
    if (!in) throw std::runtime_error("missing nontrivial3.coc");
    return load_cochain(in, f, s);
}

std::vector<Diagram> base_fixtures() {
    return {parse(fixtures::circle),  parse(fixtures::two_circles), parse(fixtures::theta),
            parse(fixtures::handcuff), parse(fixtures::trefoil),    parse(fixtures::hopf),
            builders::figure_eight(),  builders::braid_closure(3, {1, 2, 1})};
}

uint32_t segment_count(const Diagram& d, uint32_t arc) {
    if (d.arcs[arc].closed && d.arcs[arc].passages.empty()) return 1;  // bare circle site
    return uint32_t(d.arcs[arc].passages.size()) + (d.arcs[arc].closed ? 0 : 1);
}

bool check(bool cond, const std::string& msg) {
    if (!cond) notes.push_back("failed: " + msg);
    return cond;
}

}  // namespace

// 1. axiom verification of the order-3 dihedral family plus full mutation sweep
static bool criterion1() {
    GFamily base = paper_family();
    bool ok = check(verify_gfamily(base).empty(), "base family must verify");
    for (size_t i = 0; i < base.op.size() && ok; ++i)
        for (uint32_t v = 0; v < 3; ++v) {
            if (base.op[i] == v) continue;
            GFamily mut = base;
            mut.op[i] = v;
            ok = ok && check(!verify_gfamily(mut).empty(),
                             "family table mutation at index " + std::to_string(i));
        }
    for (size_t i = 0; i < base.group.mul.size() && ok; ++i)
        for (uint32_t v = 0; v < 2; ++v) {
            if (base.group.mul[i] == v) continue;
            FiniteGroup mut = base.group;
            mut.mul[i] = v;
            ok = ok && check(!verify_group(mut).empty(),
                             "group table mutation at index " + std::to_string(i));
        }
    return ok;
}

// 2. stabilization multiplies the count by exactly |G|, across a randomized corpus
static bool criterion2() {
    std::mt19937 rng(73);
    std::vector<Diagram> corpus = base_fixtures();
    while (corpus.size() < 50) corpus.push_back(builders::random_diagram(rng, 8, 3, 3));
    GFamily fams[2] = {paper_family(), trivial_family_g3()};
    bool ok = true;
    size_t checked = 0;
    for (auto& d : corpus) {
        for (auto& f : fams) {
            BigUint base = count_colorings(d, f);
            BigUint expect = base * BigUint(f.group.order);
            for (uint32_t arc = 0; arc < d.arcs.size() && ok; ++arc)
                for (uint32_t seg = 0; seg < segment_count(d, arc); ++seg)
                    for (bool side : {true, false}) {
                        Diagram s = stabilize(d, arc, seg, side);
                        ++checked;
                        ok = ok && check(count_colorings(s, f) == expect,
                                         "scaling failed on a corpus diagram");
                        if (!ok) return false;
                    }
        }
    }
    notes.push_back("diagrams=" + std::to_string(corpus.size()) +
                    " stabilizations checked=" + std::to_string(checked));
    return ok;
}

// 3. pruned enumerator equals plain brute force on every small-arc diagram
static bool criterion3() {
    std::mt19937 rng(99);
    std::vector<Diagram> corpus = base_fixtures();
    corpus.push_back(builders::braid_closure(2, {1}));
    corpus.push_back(builders::braid_closure(2, {1, -1}));
    corpus.push_back(builders::braid_closure(2, {1, 1}));
    corpus.push_back(stabilize(parse(fixtures::circle), 0));
    for (int i = 0; i < 10; ++i) corpus.push_back(builders::random_diagram(rng, 3, 3, 2));
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    bool ok = true;
    size_t used = 0;
    for (auto& d : corpus) {
        if (d.arcs.size() > 4) continue;
        ++used;
        ok = ok && check(count_colorings(d, f) == oracle::brute_count_colorings(d, f),
                         "count mismatch vs brute force");
        ok = ok && check(count_shadow_colorings(d, f, self) == oracle::brute_count_shadow(d, f, self),
                         "shadow count mismatch vs brute force");
        if (!ok) return false;
    }
    notes.push_back("small diagrams compared=" + std::to_string(used));
    return ok && check(used >= 8, "corpus too small");
}

// 4. desk-scale fixed values
static bool criterion4() {
    GFamily f = paper_family();
    bool ok = true;
    ok &= check(count_colorings(parse(fixtures::circle), f) == BigUint(6), "circle count 6");
    ok &= check(count_colorings(parse(fixtures::trefoil), f) == BigUint(12), "trefoil count 12");
    ok &= check(count_colorings(parse(fixtures::theta), f) == BigUint(12), "theta count 12");
    ok &= check(count_colorings(stabilize(parse(fixtures::trefoil), 0), f) == BigUint(24),
                "stabilized trefoil count 24");
    ok &= check(link_invariant(parse(fixtures::two_circles), f) == URational(9),
                "two split circles link invariant 9");
    ok &= check(linking_number(parse(fixtures::hopf)) == 1, "hopf linking number 1");
    return ok;
}

// 5. move invariance of all outputs at every applicable site
static bool criterion5() {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 theta = frozen_cochain(f, self);
    Cochain2 zero = Cochain2::zero(theta.coeffs, theta.ysize, theta.qsize);
    Diagram circle = parse(fixtures::circle);

    std::mt19937 rng(7);
    std::vector<Diagram> corpus = base_fixtures();
    corpus.push_back(stabilize(parse(fixtures::trefoil), 0));
    corpus.push_back(stabilize(parse(fixtures::hopf), 0));
    while (corpus.size() < 20) corpus.push_back(builders::random_diagram(rng, 4, 2, 2));

    bool ok = true;
    size_t sites_checked = 0;
    for (auto& d : corpus) {
        BigUint count = count_colorings(d, f);
        BigUint shadow = count_shadow_colorings(d, f, self);
        auto phi = phi_theta(d, f, self, theta);
        auto phi0 = phi_theta(d, f, self, zero);
        uint32_t ncomp = split_components(d).count;
        URational link(0);
        int64_t lk = 0;
        NormalizedMultiset coc;
        RationalPair pair;
        if (ncomp == 2) {
            link = link_invariant(d, f);
            lk = linking_number(d);
            coc = cocycle_surface_invariant(d, f, self, theta);
        } else if (ncomp == 1) {
            pair = surface_pair_invariant(d, circle, f);
        }

        for (MoveType t : {MoveType::r1_plus, MoveType::r1_minus, MoveType::r2_plus,
                           MoveType::r2_minus, MoveType::r3}) {
            for (auto& site : enumerate_sites(d, t)) {
                Diagram m = apply_move(d, site);
                ++sites_checked;
                ok = ok && check(count_colorings(m, f) == count, "count changed under a move");
                ok = ok && check(count_shadow_colorings(m, f, self) == shadow,
                                 "shadow count changed under a move");
                ok = ok && check(phi_theta(m, f, self, theta) == phi, "phi changed under a move");
                ok = ok && check(phi_theta(m, f, self, zero) == phi0,
                                 "trivial phi changed under a move");
                if (ncomp == 2) {
                    ok = ok && check(link_invariant(m, f) == link, "link invariant changed");
                    ok = ok && check(linking_number(m) == lk, "linking number changed");
                    ok = ok && check(cocycle_surface_invariant(m, f, self, theta) == coc,
                                     "cocycle invariant changed");
                } else if (ncomp == 1) {
                    ok = ok && check(surface_pair_invariant(m, circle, f) == pair,
                                     "pair invariant changed");
                }
                if (!ok) return false;
            }
        }
    }
    notes.push_back("diagrams=" + std::to_string(corpus.size()) +
                    " rewrites checked=" + std::to_string(sites_checked));
    return ok;
}

// 6. normalized invariants are stable under iterated stabilization
static bool criterion6() {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 theta = frozen_cochain(f, self);
    bool ok = true;

    std::vector<Diagram> connected = {parse(fixtures::circle), parse(fixtures::theta),
                                      parse(fixtures::handcuff), parse(fixtures::trefoil),
                                      builders::figure_eight()};
    for (auto& dv : connected)
        for (auto& dw : connected) {
            RationalPair base = surface_pair_invariant(dv, dw, f);
            Diagram sv = dv, sw = dw;
            for (int k = 1; k <= 3; ++k) {
                sv = stabilize(sv, k % sv.arcs.size());
                Diagram sw2 = dw;
                for (int j = 1; j <= 3; ++j) {
                    sw2 = stabilize(sw2, j % sw2.arcs.size(), 0, j % 2 == 0);
                    ok = ok && check(surface_pair_invariant(sv, sw2, f) == base,
                                     "pair changed under stabilization");
                    if (!ok) return false;
                }
            }
        }

    std::vector<Diagram> two_comp = {parse(fixtures::two_circles), parse(fixtures::hopf),
                                     builders::braid_closure(2, {1, 1})};
    for (auto& d : two_comp) {
        URational link = link_invariant(d, f);
        NormalizedMultiset coc = cocycle_surface_invariant(d, f, self, theta);
        Diagram s = d;
        for (int k = 1; k <= 3; ++k) {
            s = stabilize(s, (k * 2) % s.arcs.size(), 0, k % 2 == 0);
            ok = ok && check(link_invariant(s, f) == link, "link changed under stabilization");
            ok = ok && check(cocycle_surface_invariant(s, f, self, theta) == coc,
                             "cocycle multiset changed under stabilization");
            if (!ok) return false;
        }
    }
    return ok;
}

// 7. the zero cochain always yields {(0, count/N)}
static bool criterion7() {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 zero = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    bool ok = true;
    std::vector<Diagram> two_comp = {parse(fixtures::two_circles), parse(fixtures::hopf),
                                     stabilize(parse(fixtures::hopf), 0),
                                     builders::braid_closure(2, {1, 1})};
    for (auto& d : two_comp) {
        ComponentStructure cs = split_components(d);
        BigUint denom = BigUint::pow(BigUint(f.group.order), cs.genus[0] + cs.genus[1]);
        NormalizedMultiset m = cocycle_surface_invariant(d, f, self, zero);
        BigUint shadows = count_shadow_colorings(d, f, self);
        ok = ok && check(m.entries.size() == 1 && m.entries[0].first == 0,
                         "multiset not concentrated at zero");
        ok = ok && check(m.entries[0].second == URational(shadows, denom),
                         "multiplicity is not count/N");
        if (!ok) return false;
    }
    return ok;
}

// 8. the published headline figures are placeholders, so the sanctioned
// replacement applies: build the two tunnel constructions and show the pair
// invariants differ; the knotted-side counts land on the published 48 and 24
static bool criterion8() {
    GFamily f = paper_family();
    Diagram dv = stabilize(parse(fixtures::handcuff), 0);
    Diagram dw_trefoil = stabilize(stabilize(parse(fixtures::trefoil), 0), 0);
    Diagram dw_fig8 = stabilize(stabilize(builders::figure_eight(), 0), 0);

    bool ok = true;
    ok = ok && check(dw_trefoil.crossings.size() <= 12 && dw_fig8.crossings.size() <= 12,
                     "crossing budget");
    ok = ok && check(genus(dv, 0) == 3, "V-side genus 3");
    ok = ok && check(genus(dw_trefoil, 0) == 3, "trefoil W-side genus 3");
    ok = ok && check(genus(dw_fig8, 0) == 3, "figure-eight W-side genus 3");
    ok = ok && check(count_colorings(dw_trefoil, f) == BigUint(48),
                     "trefoil W-side count 48");
    ok = ok && check(count_colorings(dw_fig8, f) == BigUint(24), "figure-eight W-side count 24");

    RationalPair p1 = surface_pair_invariant(dv, dw_trefoil, f);
    RationalPair p2 = surface_pair_invariant(dv, dw_fig8, f);
    ok = ok && check(!(p1 == p2), "pair invariants must differ");
    notes.push_back("trefoil-tunnel " + p1.to_string() + " ; figure-eight-tunnel " +
                    p2.to_string());
    return ok;
}

int main() {
    criterion(1, "family axioms and exhaustive single-entry mutations", criterion1);
    criterion(2, "stabilization scales counts by |G| across a randomized corpus", criterion2);
    criterion(3, "pruned enumerator equals brute force on small diagrams", criterion3);
    criterion(4, "desk-scale fixed values", criterion4);
    criterion(5, "move invariance of every output at every applicable site", criterion5);
    criterion(6, "normalized invariants stable under iterated stabilization", criterion6);
    criterion(7, "trivial cochain gives the concentrated multiset", criterion7);
    criterion(8, "tunnel constructions distinguish the two surfaces", criterion8);
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
    return failures;
}
