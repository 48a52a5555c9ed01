#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hlinv/coloring.hpp"
#include "hlinv/moves.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

using namespace hlinv;
using builders::parse;

namespace {

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

}  // namespace

TEST_CASE("desk-scale coloring counts") {
    GFamily f = paper_family();
    CHECK(count_colorings(parse(fixtures::circle), f) == BigUint(6));
    CHECK(count_colorings(parse(fixtures::trefoil), f) == BigUint(12));
    CHECK(count_colorings(parse(fixtures::theta), f) == BigUint(12));
    CHECK(count_colorings(parse(fixtures::handcuff), f) == BigUint(12));
    CHECK(count_colorings(parse(fixtures::two_circles), f) == BigUint(36));
    CHECK(count_colorings(builders::figure_eight(), f) == BigUint(6));
}

TEST_CASE("trefoil colorings split into constant and dihedral families") {
    GFamily f = paper_family();
    int constant = 0, dihedral = 0, total = 0;
    for_each_coloring(parse(fixtures::trefoil), f, [&](const std::vector<uint32_t>& q) {
        ++total;
        bool all_g0 = true, all_g1 = true;
        for (uint32_t v : q) {
            (v % 2 == 0 ? all_g1 : all_g0) = false;
        }
        if (all_g0) ++constant;
        if (all_g1) ++dihedral;
    });
    CHECK(total == 12);
    CHECK(constant == 3);
    CHECK(dihedral == 9);
}

TEST_CASE("enumerator equals brute force on every small fixture") {
    std::vector<Diagram> pool = {
        parse(fixtures::circle),  parse(fixtures::two_circles), parse(fixtures::theta),
        parse(fixtures::handcuff), parse(fixtures::trefoil),    parse(fixtures::hopf),
        builders::braid_closure(2, {1}), builders::braid_closure(2, {1, -1}),
        builders::braid_closure(2, {1, 1}),
    };
    GFamily f = paper_family();
    GFamily t3 = trivial_family_g3();
    for (auto& d : pool) {
        if (d.arcs.size() > 4) continue;
        CHECK(count_colorings(d, f) == oracle::brute_count_colorings(d, f));
        CHECK(count_colorings(d, t3) == oracle::brute_count_colorings(d, t3));
    }
}

TEST_CASE("worker split does not change the count") {
    GFamily f = paper_family();
    Diagram d = parse(fixtures::trefoil);
    BigUint one = count_colorings(d, f, 1);
    CHECK(count_colorings(d, f, 2) == one);
    CHECK(count_colorings(d, f, 5) == one);
}

TEST_CASE("crossing-free connected trivalent diagrams count |X|*|G|^genus") {
    GFamily f = paper_family();
    for (const char* text : {fixtures::circle, fixtures::theta, fixtures::handcuff}) {
        Diagram d = parse(text);
        uint32_t g = genus(d, 0);
        BigUint expect = BigUint(f.carrier) * BigUint::pow(BigUint(f.group.order), g);
        CHECK(count_colorings(d, f) == expect);
    }
}

TEST_CASE("vertex rule is invariant under cyclic rotation of the ends") {
    // rotate the stored rotation of each vertex and recount
    GFamily f = paper_family();
    for (const char* text : {fixtures::theta, fixtures::handcuff}) {
        Diagram d = parse(text);
        BigUint base = count_colorings(d, f);
        for (int shift = 1; shift < 3; ++shift) {
            Diagram rot = d;
            for (auto& v : rot.vertices) {
                Vertex nv = v;
                for (int k = 0; k < 3; ++k) nv.ends[k] = v.ends[(k + shift) % 3];
                v = nv;
            }
            CHECK(validate_diagram(rot).empty());
            CHECK(count_colorings(rot, f) == base);
        }
    }
}

TEST_CASE("shadow counts: circle with both x-sets") {
    GFamily f = paper_family();
    Diagram circle = parse(fixtures::circle);
    CHECK(count_shadow_colorings(circle, f, make_singleton_xset(f)) == BigUint(6));
    CHECK(count_shadow_colorings(circle, f, make_self_xset(f)) == BigUint(18));
}

TEST_CASE("shadow counts match brute force") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    XSet pt = make_singleton_xset(f);
    std::vector<Diagram> pool = {
        parse(fixtures::circle), parse(fixtures::two_circles), parse(fixtures::theta),
        parse(fixtures::handcuff), parse(fixtures::trefoil), parse(fixtures::hopf),
    };
    for (auto& d : pool) {
        if (d.arcs.size() > 4) continue;
        CHECK(count_shadow_colorings(d, f, self) == oracle::brute_count_shadow(d, f, self));
        CHECK(count_shadow_colorings(d, f, pt) == oracle::brute_count_shadow(d, f, pt));
    }
}

TEST_CASE("shadow multiplicity equals |Y| per coloring on tree-like regions") {
    // every region assignment extends uniquely from the seed on the trefoil
    GFamily f = paper_family();
    Diagram tref = parse(fixtures::trefoil);
    BigUint colorings = count_colorings(tref, f);
    BigUint shadows = count_shadow_colorings(tref, f, make_self_xset(f));
    CHECK(shadows == colorings * BigUint(3));
}

TEST_CASE("zero cochain gives zero weights") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 zero = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    Diagram tref = parse(fixtures::trefoil);
    auto phi = phi_theta(tref, f, self, zero);
    REQUIRE(phi.size() == 1);
    CHECK(phi.begin()->first == 0);
    CHECK(phi.begin()->second == count_shadow_colorings(tref, f, self));
}

TEST_CASE("weight sum on a crossing-free diagram is empty") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 zero = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    Diagram theta = parse(fixtures::theta);
    Coloring c;
    bool got = false;
    for_each_shadow_coloring(theta, f, self, [&](const Coloring& col) {
        if (!got) {
            c = col;
            got = true;
        }
    });
    REQUIRE(got);
    WeightSum w = weight_sum(theta, f, self, zero, c);
    CHECK(w.value == 0);
    CHECK(w.per_crossing.empty());
}

TEST_CASE("weight_sum rejects invalid colorings") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 zero = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    Diagram tref = parse(fixtures::trefoil);
    Coloring bad;
    bad.arc_q = {0, 0, 1};
    bad.region_y = {0, 0, 0, 0, 0};
    CHECK_THROWS_AS(weight_sum(tref, f, self, zero, bad), std::invalid_argument);
}

TEST_CASE("phi against brute force with an arbitrary total cochain") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    // arbitrary fixed table; phi need not be invariant, both paths must agree
    Cochain2 c = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    uint32_t k = 0;
    for (uint32_t y = 0; y < 3; ++y)
        for (uint32_t q1 = 0; q1 < 6; ++q1)
            for (uint32_t q2 = 0; q2 < 6; ++q2) c.set(y, q1, q2, (k++ * 7 + y) % 3);
    for (const char* text : {fixtures::trefoil, fixtures::hopf}) {
        Diagram d = parse(text);
        auto a = phi_theta(d, f, self, c);
        auto b = oracle::brute_phi(d, f, self, c);
        CHECK(a == b);
    }
}

TEST_CASE("shadow counts scale by |G| under stabilization") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    std::mt19937 rng(4242);
    std::vector<Diagram> pool = {
        parse(fixtures::circle), parse(fixtures::trefoil), parse(fixtures::hopf),
        parse(fixtures::handcuff),
        builders::random_diagram(rng, 4, 2, 2), builders::random_diagram(rng, 4, 2, 2),
    };
    for (auto& d : pool) {
        BigUint base = count_shadow_colorings(d, f, self);
        BigUint expect = base * BigUint(f.group.order);
        for (uint32_t arc = 0; arc < d.arcs.size(); ++arc)
            for (bool side : {true, false})
                CHECK(count_shadow_colorings(stabilize(d, arc, 0, side), f, self) == expect);
    }
}

TEST_CASE("phi total multiplicity equals the shadow count") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 c = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    uint32_t k = 1;
    for (uint32_t y = 0; y < 3; ++y)
        for (uint32_t q1 = 0; q1 < 6; ++q1)
            for (uint32_t q2 = 0; q2 < 6; ++q2) c.set(y, q1, q2, (k += y + q1) % 3);
    for (const char* text : {fixtures::trefoil, fixtures::hopf, fixtures::theta}) {
        Diagram d = parse(text);
        BigUint total;
        for (auto& [elem, mult] : phi_theta(d, f, self, c)) total += mult;
        CHECK(total == count_shadow_colorings(d, f, self));
    }
}

TEST_CASE("integer coefficients work end to end") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    std::istringstream in("cochain2 coeff Z\n0 3 5 2\n0 5 3 -2\n1 1 3 7\n");
    Cochain2 c = load_cochain(in, f, self);
    CHECK(c.coeffs.is_cyclic == false);
    CHECK(c.value(0, 5, 3) == -2);
    Diagram tref = parse(fixtures::trefoil);
    auto phi = phi_theta(tref, f, self, c);
    BigUint total;
    for (auto& [elem, mult] : phi) total += mult;
    CHECK(total == count_shadow_colorings(tref, f, self));
    CHECK(phi == oracle::brute_phi(tref, f, self, c));
}

TEST_CASE("plane and sphere ambient agree on every count") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    for (const char* text : {fixtures::circle, fixtures::trefoil, fixtures::hopf}) {
        Diagram sph = parse(text);
        Diagram pln = sph;
        pln.ambient = Ambient::plane;
        CHECK(analyze(pln).region_count == analyze(sph).region_count);
        CHECK(count_colorings(pln, f) == count_colorings(sph, f));
        CHECK(count_shadow_colorings(pln, f, self) == count_shadow_colorings(sph, f, self));
    }
}

TEST_CASE("crossing-free diagrams give the all-zero multiset for any cochain") {
    GFamily f = paper_family();
    XSet self = make_self_xset(f);
    Cochain2 c = Cochain2::zero(AbelianCoefficients::cyclic(3), self.size, 6);
    for (uint32_t y = 0; y < 3; ++y)
        for (uint32_t q1 = 0; q1 < 6; ++q1)
            for (uint32_t q2 = 0; q2 < 6; ++q2) c.set(y, q1, q2, (y * 5 + q1 + 2 * q2) % 3);
    for (const char* text : {fixtures::circle, fixtures::theta, fixtures::handcuff,
                             fixtures::two_circles}) {
        Diagram d = parse(text);
        auto phi = phi_theta(d, f, self, c);
        REQUIRE(phi.size() == 1);
        CHECK(phi.begin()->first == 0);
        CHECK(phi.begin()->second == count_shadow_colorings(d, f, self));
    }
}
