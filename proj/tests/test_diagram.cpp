#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hlinv/diagram.hpp"
#include "support/builders.hpp"

using namespace hlinv;
using builders::parse;

TEST_CASE("circle: one component, genus 1, two regions") {
    Diagram d = parse(fixtures::circle);
    CHECK(validate_diagram(d).empty());
    Topology t = analyze(d);
    CHECK(t.region_count == 2);
    ComponentStructure cs = split_components(d);
    CHECK(cs.count == 1);
    CHECK(cs.genus[0] == 1);
}

TEST_CASE("two circles: three regions on the sphere") {
    Diagram d = parse(fixtures::two_circles);
    CHECK(validate_diagram(d).empty());
    Topology t = analyze(d);
    CHECK(t.region_count == 3);
    ComponentStructure cs = split_components(d);
    CHECK(cs.count == 2);
    CHECK(cs.genus == std::vector<uint32_t>{1, 1});
}

TEST_CASE("theta graph: genus 2, Euler check") {
    Diagram d = parse(fixtures::theta);
    CHECK(validate_diagram(d).empty());
    Topology t = analyze(d);
    CHECK(t.faces.size() == 3);  // V-E+F = 2-3+3 = 2
    CHECK(t.region_count == 3);
    CHECK(genus(d, 0) == 2);
}

TEST_CASE("handcuff graph: genus 2") {
    Diagram d = parse(fixtures::handcuff);
    CHECK(validate_diagram(d).empty());
    CHECK(split_components(d).count == 1);
    CHECK(genus(d, 0) == 2);
}

TEST_CASE("trefoil: Euler and five regions") {
    Diagram d = parse(fixtures::trefoil);
    CHECK(validate_diagram(d).empty());
    Topology t = analyze(d);
    CHECK(t.segments.size() == 6);
    CHECK(t.faces.size() == 5);
    CHECK(t.region_count == 5);
    CHECK(split_components(d).count == 1);
    CHECK(genus(d, 0) == 1);
    for (auto& c : d.crossings) CHECK(c.sign() == 1);
}

TEST_CASE("trefoil next to theta: components and genera") {
    std::string text =
        "diagram 6\n"
        "arc 0 via=2\n"
        "arc 1 via=1\n"
        "arc 2 via=0\n"
        "arc 3\narc 4\narc 5\n"
        "x 0 over=2 under_in=0 under_out=1 rot=2.h 0.h 2.t 1.t\n"
        "x 1 over=1 under_in=2 under_out=0 rot=1.h 2.h 1.t 0.t\n"
        "x 2 over=0 under_in=1 under_out=2 rot=0.h 1.h 0.t 2.t\n"
        "v 0 ends=3.t 4.t 5.t\n"
        "v 1 ends=3.h 5.h 4.h\n";
    Diagram d = parse(text);
    CHECK(validate_diagram(d).empty());
    ComponentStructure cs = split_components(d);
    CHECK(cs.count == 2);
    std::vector<uint32_t> gs = cs.genus;
    std::sort(gs.begin(), gs.end());
    CHECK(gs == std::vector<uint32_t>{1, 2});
}

TEST_CASE("hopf link: regions and signs") {
    Diagram d = parse(fixtures::hopf);
    CHECK(validate_diagram(d).empty());
    Topology t = analyze(d);
    CHECK(t.faces.size() == 4);
    CHECK(split_components(d).count == 2);
    CHECK(d.crossings[0].sign() == 1);
    CHECK(d.crossings[1].sign() == 1);
}

TEST_CASE("braid closures validate") {
    Diagram unknot = builders::braid_closure(2, {1});
    CHECK(validate_diagram(unknot).empty());
    CHECK(split_components(unknot).count == 1);

    Diagram tref = builders::braid_closure(2, {1, 1, 1});
    CHECK(validate_diagram(tref).empty());
    CHECK(split_components(tref).count == 1);
    CHECK(analyze(tref).faces.size() == 5);

    Diagram fig8 = builders::figure_eight();
    CHECK(validate_diagram(fig8).empty());
    CHECK(split_components(fig8).count == 1);
    CHECK(fig8.crossings.size() == 4);
    int wr = 0;
    for (auto& c : fig8.crossings) wr += c.sign();
    CHECK(wr == 0);

    Diagram hopf = builders::braid_closure(2, {1, 1});
    CHECK(validate_diagram(hopf).empty());
    CHECK(split_components(hopf).count == 2);
}

TEST_CASE("rejected diagrams") {
    // dangling arc end
    CHECK(!validate_diagram(parse("diagram 1\narc 0\n")).empty());
    // non-planar rotation: theta with one vertex order flipped
    std::string twisted =
        "diagram 3\n"
        "arc 0\narc 1\narc 2\n"
        "v 0 ends=0.t 1.t 2.t\n"
        "v 1 ends=0.h 1.h 2.h\n";
    Report rep = validate_diagram(parse(twisted));
    REQUIRE(!rep.empty());
    bool planarity = false;
    for (auto& v : rep) planarity |= v.rule == "planarity";
    CHECK(planarity);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("arc 0\n"), ParseError);
    CHECK_THROWS_AS(parse("diagram 1\narc 0 closed closed2\n"), ParseError);
    CHECK_THROWS_AS(parse("diagram 2\narc 0 closed\n"), ParseError);  // arc 1 missing
    // rot must start with the over entry token
    CHECK_THROWS_AS(parse("diagram 2\narc 0 via=0\narc 1\n"
                          "x 0 over=0 under_in=1 under_out=1 rot=1.h 0.h 0.t 1.t\n"),
                    ParseError);
    // two passages need via
    std::string two_pass =
        "diagram 2\n"
        "arc 0\n"
        "arc 1\n"
        "x 0 over=0 under_in=1 under_out=1 rot=0.h 1.h 0.t 1.t\n"
        "x 1 over=0 under_in=1 under_out=1 rot=0.h 1.h 0.t 1.t\n";
    CHECK_THROWS_AS(parse(two_pass), ParseError);
}

TEST_CASE("serialization round-trips through the canonical form") {
    for (const char* text : {fixtures::circle, fixtures::two_circles, fixtures::theta,
                             fixtures::handcuff, fixtures::trefoil, fixtures::hopf}) {
        Diagram d = parse(text);
        std::string canon = serialize_diagram(d);
        Diagram re = parse(canon);
        CHECK(validate_diagram(re).empty());
        CHECK(serialize_diagram(re) == canon);  // canonical form is a fixed point
    }
}

TEST_CASE("canonical form is label-invariant") {
    // same trefoil with arcs listed in a rotated order
    std::string relabeled =
        "diagram 3\n"
        "arc 0 via=1\n"
        "arc 1 via=0\n"
        "arc 2 via=2\n"
        "x 0 over=1 under_in=2 under_out=0 rot=1.h 2.h 1.t 0.t\n"
        "x 1 over=0 under_in=1 under_out=2 rot=0.h 1.h 0.t 2.t\n"
        "x 2 over=2 under_in=0 under_out=1 rot=2.h 0.h 2.t 1.t\n";
    CHECK(isomorphic(parse(fixtures::trefoil), parse(relabeled)));
    CHECK(isomorphic(parse(fixtures::trefoil), builders::braid_closure(2, {-1, -1, -1})));
    CHECK(!isomorphic(parse(fixtures::trefoil), builders::braid_closure(2, {1, 1, 1})));
    CHECK(!isomorphic(parse(fixtures::theta), parse(fixtures::handcuff)));
}

TEST_CASE("crossing signs recomputed from rotation agree with stored slots") {
    for (const char* text : {fixtures::trefoil, fixtures::hopf}) {
        Diagram d = parse(text);
        for (auto& c : d.crossings) {
            int derived = c.under_in_slot == 1 ? +1 : -1;
            CHECK(c.sign() == derived);
        }
    }
}

TEST_CASE("face traversal covers every arc side exactly once") {
    std::mt19937 rng(515);
    std::vector<Diagram> pool = {parse(fixtures::trefoil), parse(fixtures::handcuff),
                                 parse(fixtures::hopf), builders::figure_eight()};
    for (int i = 0; i < 6; ++i) pool.push_back(builders::random_diagram(rng, 6, 3, 3));
    for (auto& d : pool) {
        Topology t = analyze(d);
        size_t total = 0;
        std::vector<int> seen(t.segments.size() * 2, 0);
        for (auto& face : t.faces)
            for (uint32_t he : face) {
                ++seen[he];
                ++total;
            }
        CHECK(total == t.segments.size() * 2);
        for (int s : seen) CHECK(s == 1);
    }
}
