#include "hlinv/moves.hpp"

#include <algorithm>
#include <map>

#include "hlinv/seggraph.hpp"

namespace hlinv {

namespace {

struct Ctx {
    Topology topo;
    SegGraph g;
    std::vector<std::vector<std::pair<uint32_t, bool>>> at;  // node -> slot -> (seg, is_from)
    std::vector<uint32_t> arc_first;   // first global segment of each arc (UINT32_MAX if none)
    std::vector<uint32_t> arc_nsegs;
    std::vector<uint32_t> circle_index;  // arc -> free-circle index or UINT32_MAX
};

Ctx make_ctx(const Diagram& d) {
    Ctx c;
    c.topo = analyze(d);
    c.g = to_seggraph(d, c.topo);
    const uint32_t nn = uint32_t(c.g.nodes.size());
    c.at.resize(nn);
    for (uint32_t v = 0; v < nn; ++v) c.at[v].assign(c.g.nodes[v].degree(), {UINT32_MAX, false});
    for (uint32_t s = 0; s < c.g.segs.size(); ++s) {
        c.at[c.g.segs[s].from.node][c.g.segs[s].from.slot] = {s, true};
        c.at[c.g.segs[s].to.node][c.g.segs[s].to.slot] = {s, false};
    }
    c.arc_first.assign(d.arcs.size(), UINT32_MAX);
    c.arc_nsegs.assign(d.arcs.size(), 0);
    for (uint32_t s = 0; s < c.topo.segments.size(); ++s) {
        uint32_t a = c.topo.segments[s].arc;
        if (c.arc_first[a] == UINT32_MAX) c.arc_first[a] = s;
        c.arc_nsegs[a]++;
    }
    c.circle_index.assign(d.arcs.size(), UINT32_MAX);
    for (uint32_t i = 0; i < c.topo.free_circle_arcs.size(); ++i)
        c.circle_index[c.topo.free_circle_arcs[i]] = i;
    return c;
}

// append a crossing, keeping crossings in front of vertices; remaps existing refs
uint32_t insert_crossing(SegGraph& g) {
    uint32_t pos = g.crossing_count();
    g.nodes.insert(g.nodes.begin() + pos, {true});
    for (auto& s : g.segs) {
        if (s.from.node >= pos) s.from.node++;
        if (s.to.node >= pos) s.to.node++;
    }
    return pos;
}

uint32_t insert_vertex(SegGraph& g) {
    g.nodes.push_back({false});
    return uint32_t(g.nodes.size() - 1);
}

// remove the given nodes, reconnecting strands through them (over entry
// continues to over exit, arriving under end to departing under end); strands
// that close up become bare circles.  Crossings only.
void dissolve_crossings(SegGraph& g, std::vector<uint32_t> dead) {
    std::sort(dead.begin(), dead.end());
    std::vector<bool> is_dead(g.nodes.size(), false);
    for (uint32_t v : dead) is_dead[v] = true;

    std::vector<std::vector<std::pair<uint32_t, bool>>> at(g.nodes.size());
    for (uint32_t v = 0; v < g.nodes.size(); ++v)
        at[v].assign(g.nodes[v].degree(), {UINT32_MAX, false});
    for (uint32_t s = 0; s < g.segs.size(); ++s) {
        at[g.segs[s].from.node][g.segs[s].from.slot] = {s, true};
        at[g.segs[s].to.node][g.segs[s].to.slot] = {s, false};
    }
    // continuation: arriving slot -> departing slot at each dead crossing
    auto continue_slot = [&](uint8_t slot) -> uint8_t {
        if (slot == 0) return 2;
        // arriving under end: departing under end is the other of {1,3}
        return slot == 1 ? 3 : 1;
    };

    std::vector<bool> dissolved(g.segs.size(), false);
    for (uint32_t v : dead)
        for (uint8_t s = 0; s < 4; ++s) dissolved[at[v][s].first] = true;

    std::vector<SegGraph::Seg> merged;
    uint32_t new_circles = 0;
    std::vector<bool> walked(g.segs.size(), false);
    for (uint32_t s0 = 0; s0 < g.segs.size(); ++s0) {
        if (!dissolved[s0] || walked[s0]) continue;
        if (is_dead[g.segs[s0].from.node]) continue;  // start only at external tails
        uint32_t s = s0;
        walked[s] = true;
        while (is_dead[g.segs[s].to.node]) {
            EndRef to = g.segs[s].to;
            uint8_t dep = continue_slot(to.slot);
            s = at[to.node][dep].first;
            walked[s] = true;
        }
        merged.push_back({g.segs[s0].from, g.segs[s].to});
    }
    for (uint32_t s0 = 0; s0 < g.segs.size(); ++s0) {  // leftover cycles
        if (!dissolved[s0] || walked[s0]) continue;
        uint32_t s = s0;
        while (!walked[s]) {
            walked[s] = true;
            EndRef to = g.segs[s].to;
            uint8_t dep = continue_slot(to.slot);
            s = at[to.node][dep].first;
        }
        new_circles++;
    }

    // compact: drop dissolved segments and dead nodes
    std::vector<SegGraph::Seg> segs;
    for (uint32_t s = 0; s < g.segs.size(); ++s)
        if (!dissolved[s]) segs.push_back(g.segs[s]);
    for (auto& m : merged) segs.push_back(m);

    std::vector<uint32_t> node_map(g.nodes.size(), UINT32_MAX);
    std::vector<SegGraph::Node> nodes;
    for (uint32_t v = 0; v < g.nodes.size(); ++v)
        if (!is_dead[v]) {
            node_map[v] = uint32_t(nodes.size());
            nodes.push_back(g.nodes[v]);
        }
    for (auto& s : segs) {
        s.from.node = node_map[s.from.node];
        s.to.node = node_map[s.to.node];
    }
    g.nodes = std::move(nodes);
    g.segs = std::move(segs);
    g.free_circles += new_circles;
}

// resolve a strand reference: returns global segment id, or UINT32_MAX with
// circle index set when the arc is a bare circle
uint32_t resolve_strand(const Ctx& c, const Diagram& d, const StrandRef& r, uint32_t& circle) {
    circle = UINT32_MAX;
    if (r.arc >= d.arcs.size()) throw MoveError("no such arc");
    if (c.circle_index[r.arc] != UINT32_MAX) {
        circle = c.circle_index[r.arc];
        return UINT32_MAX;
    }
    if (r.seg >= c.arc_nsegs[r.arc]) throw MoveError("no such segment on arc");
    return c.arc_first[r.arc] + r.seg;
}

uint32_t side_region(const Ctx& c, uint32_t seg, uint32_t circle, bool left) {
    if (circle != UINT32_MAX)
        return left ? c.topo.circle_left_region[circle] : c.topo.ambient_region;
    uint32_t face = c.topo.face_of[seg * 2 + (left ? 0 : 1)];
    return c.topo.region_of_face[face];
}

// ---------------------------------------------------------------------------

Diagram do_r1_plus(const Diagram& d, const MoveSite& site) {
    Ctx c = make_ctx(d);
    uint32_t circle;
    uint32_t seg = resolve_strand(c, d, site.a, circle);
    SegGraph g = c.g;
    uint32_t x = insert_crossing(g);

    // slot layout per kink shape; s1 arrives at `in`, loop runs lf -> lt,
    // s2 departs from `out`
    uint8_t in, out, lf, lt;
    if (site.side_a && !site.over_first) {        // left, under first
        in = 1; lf = 3; lt = 0; out = 2;
    } else if (site.side_a && site.over_first) {  // left, over first
        in = 0; lf = 2; lt = 3; out = 1;
    } else if (!site.side_a && !site.over_first) {  // right, under first
        in = 3; lf = 1; lt = 0; out = 2;
    } else {                                      // right, over first
        in = 0; lf = 2; lt = 1; out = 3;
    }

    if (circle != UINT32_MAX) {
        g.free_circles--;
        g.segs.push_back({{x, out}, {x, in}});
    } else {
        EndRef P = g.segs[seg].from, R = g.segs[seg].to;
        g.segs[seg] = {P, {x, in}};
        g.segs.push_back({{x, out}, R});
    }
    g.segs.push_back({{x, lf}, {x, lt}});
    return from_seggraph(g, d.ambient);
}

Diagram do_r1_minus(const Diagram& d, const MoveSite& site) {
    Ctx c = make_ctx(d);
    if (site.c1 >= d.crossings.size()) throw MoveError("no such crossing");
    // kink loop: a segment with both ends on this crossing joining the over
    // entry or exit to an adjacent under slot
    bool found = false;
    for (uint32_t s = 0; s < c.g.segs.size() && !found; ++s) {
        const auto& sg = c.g.segs[s];
        if (sg.from.node != site.c1 || sg.to.node != site.c1) continue;
        uint8_t f = sg.from.slot, t = sg.to.slot;
        if ((t == 0 && (f == 1 || f == 3)) || (f == 2 && (t == 1 || t == 3))) found = true;
    }
    if (!found) throw MoveError("crossing is not a removable kink");
    SegGraph g = c.g;
    dissolve_crossings(g, {site.c1});
    return from_seggraph(g, d.ambient);
}

Diagram do_r2_plus(const Diagram& d, const MoveSite& site) {
    Ctx c = make_ctx(d);
    uint32_t circ_a, circ_b;
    uint32_t seg_a = resolve_strand(c, d, site.a, circ_a);
    uint32_t seg_b = resolve_strand(c, d, site.b, circ_b);
    if (site.a.arc == site.b.arc && seg_a == seg_b)
        throw MoveError("poke needs two distinct strand pieces");
    if (side_region(c, seg_a, circ_a, site.side_a) != side_region(c, seg_b, circ_b, site.side_b))
        throw MoveError("strand sides do not share a region");

    SegGraph g = c.g;
    uint32_t x1 = insert_crossing(g);
    uint32_t x2 = insert_crossing(g);

    // slot tables, derived from the local picture with b running "north" and
    // the shared region on side_b of b; a crosses from that region first
    // entries: a_in, a_out, b_in, b_out at x1 then x2
    struct Slots { uint8_t a_in, a_out, b_in, b_out; };
    Slots s1{}, s2{};
    if (site.a_over && site.side_b) {
        s1 = {0, 2, 1, 3};
        s2 = {0, 2, 3, 1};
    } else if (site.a_over && !site.side_b) {
        s1 = {0, 2, 3, 1};
        s2 = {0, 2, 1, 3};
    } else if (!site.a_over && site.side_b) {
        s1 = {3, 1, 0, 2};
        s2 = {1, 3, 0, 2};
    } else {
        s1 = {1, 3, 0, 2};
        s2 = {3, 1, 0, 2};
    }

    // rewire a: P -> x1 -> x2 -> R
    if (circ_a != UINT32_MAX) {
        g.free_circles--;
        g.segs.push_back({{x1, s1.a_out}, {x2, s2.a_in}});   // bridge
        g.segs.push_back({{x2, s2.a_out}, {x1, s1.a_in}});   // the long way back
    } else {
        EndRef P = g.segs[seg_a].from, R = g.segs[seg_a].to;
        g.segs[seg_a] = {P, {x1, s1.a_in}};
        g.segs.push_back({{x1, s1.a_out}, {x2, s2.a_in}});
        g.segs.push_back({{x2, s2.a_out}, R});
    }
    // rewire b: the crossing met first along b depends on the mouth of the
    // poke; when both strand sides face the shared region the return
    // crossing comes first
    bool x2_first = site.side_a == site.side_b;
    uint32_t b1st = x2_first ? x2 : x1, b2nd = x2_first ? x1 : x2;
    const Slots& t1st = x2_first ? s2 : s1;
    const Slots& t2nd = x2_first ? s1 : s2;
    if (circ_b != UINT32_MAX) {
        g.free_circles--;
        g.segs.push_back({{b1st, t1st.b_out}, {b2nd, t2nd.b_in}});
        g.segs.push_back({{b2nd, t2nd.b_out}, {b1st, t1st.b_in}});
    } else {
        EndRef U = g.segs[seg_b].from, V = g.segs[seg_b].to;
        g.segs[seg_b] = {U, {b1st, t1st.b_in}};
        g.segs.push_back({{b1st, t1st.b_out}, {b2nd, t2nd.b_in}});
        g.segs.push_back({{b2nd, t2nd.b_out}, V});
    }
    return from_seggraph(g, d.ambient);
}

// find the k-th face of given length whose corner nodes match `corners`
uint32_t find_face(const Ctx& c, std::vector<uint32_t> corners, size_t len, uint32_t variant) {
    std::sort(corners.begin(), corners.end());
    uint32_t seen = 0;
    for (uint32_t f = 0; f < c.topo.faces.size(); ++f) {
        if (c.topo.faces[f].size() != len) continue;
        std::vector<uint32_t> got;
        for (uint32_t he : c.topo.faces[f]) {
            const Segment& sg = c.topo.segments[he / 2];
            got.push_back((he & 1) ? sg.from.node : sg.to.node);
        }
        std::sort(got.begin(), got.end());
        if (got != corners) continue;
        if (seen == variant) return f;
        ++seen;
    }
    throw MoveError("no matching face at those crossings");
}

Diagram do_r2_minus(const Diagram& d, const MoveSite& site) {
    Ctx c = make_ctx(d);
    if (site.c1 >= d.crossings.size() || site.c2 >= d.crossings.size() || site.c1 == site.c2)
        throw MoveError("need two distinct crossings");
    uint32_t f = find_face(c, {site.c1, site.c2}, 2, site.variant);
    uint32_t sA = c.topo.faces[f][0] / 2, sB = c.topo.faces[f][1] / 2;
    if (sA == sB) throw MoveError("degenerate bigon");
    auto over_at_both = [&](uint32_t s) {
        return c.g.segs[s].from.slot % 2 == 0 && c.g.segs[s].to.slot % 2 == 0;
    };
    auto under_at_both = [&](uint32_t s) {
        return c.g.segs[s].from.slot % 2 == 1 && c.g.segs[s].to.slot % 2 == 1;
    };
    bool ok = (over_at_both(sA) && under_at_both(sB)) || (over_at_both(sB) && under_at_both(sA));
    if (!ok) throw MoveError("bigon is a clasp, not a poke");
    SegGraph g = c.g;
    dissolve_crossings(g, {site.c1, site.c2});
    return from_seggraph(g, d.ambient);
}

Diagram do_r3(const Diagram& d, const MoveSite& site) {
    Ctx c = make_ctx(d);
    for (uint32_t x : {site.c1, site.c2, site.c3})
        if (x >= d.crossings.size()) throw MoveError("no such crossing");
    if (site.c1 == site.c2 || site.c1 == site.c3 || site.c2 == site.c3)
        throw MoveError("need three distinct crossings");
    uint32_t f = find_face(c, {site.c1, site.c2, site.c3}, 3, site.variant);

    // the three sides; each is one strand passing two corners
    struct Side {
        uint32_t seg;
        EndRef out_end, in_end;  // departing and arriving ends of the side
    };
    std::vector<Side> sides;
    for (uint32_t he : c.topo.faces[f]) {
        const Segment& sg = c.topo.segments[he / 2];
        sides.push_back({he / 2, sg.from, sg.to});
    }
    if (sides[0].seg == sides[1].seg || sides[0].seg == sides[2].seg ||
        sides[1].seg == sides[2].seg)
        throw MoveError("degenerate triangle");

    auto is_over_slot = [](uint8_t s) { return s % 2 == 0; };
    int over_both = 0, under_both = 0;
    for (auto& sd : sides) {
        bool o1 = is_over_slot(sd.out_end.slot), o2 = is_over_slot(sd.in_end.slot);
        if (o1 && o2) over_both++;
        if (!o1 && !o2) under_both++;
    }
    if (over_both != 1 || under_both != 1)
        throw MoveError("triangle strands are not layered for a slide");

    SegGraph g = c.g;
    // per strand: swap the attachments of its two entry slots and of its two
    // exit slots across the two corners (rotations and roles stay put)
    auto partner = [](uint8_t slot) -> uint8_t {
        switch (slot) {
            case 0: return 2;
            case 2: return 0;
            case 1: return 3;
            default: return 1;
        }
    };
    struct Patch {
        uint32_t seg;
        bool from_end;
        EndRef dst;
    };
    std::vector<Patch> patches;
    std::vector<std::vector<std::pair<uint32_t, bool>>>& at = c.at;
    for (auto& sd : sides) {
        // strand slots: out side at corner P, in side at corner Q
        EndRef p_out = sd.out_end;                        // side departs here
        EndRef p_in = {p_out.node, partner(p_out.slot)};  // strand arrives here
        EndRef q_in = sd.in_end;                          // side arrives here
        EndRef q_out = {q_in.node, partner(q_in.slot)};   // strand departs here
        auto swap_ends = [&](EndRef e1, EndRef e2) {
            auto [s1, f1] = at[e1.node][e1.slot];
            auto [s2, f2] = at[e2.node][e2.slot];
            patches.push_back({s1, f1, e2});
            patches.push_back({s2, f2, e1});
        };
        swap_ends(p_in, q_in);
        swap_ends(p_out, q_out);
    }
    for (auto& p : patches) {
        if (p.from_end)
            g.segs[p.seg].from = p.dst;
        else
            g.segs[p.seg].to = p.dst;
    }
    return from_seggraph(g, d.ambient);
}

}  // namespace

// ---------------------------------------------------------------------------

Diagram stabilize(const Diagram& d, uint32_t arc, uint32_t seg, bool left_side) {
    if (arc >= d.arcs.size()) throw std::invalid_argument("stabilize: no such arc");
    Ctx c = make_ctx(d);
    uint32_t circle = c.circle_index[arc];
    if (circle == UINT32_MAX && seg >= c.arc_nsegs[arc])
        throw std::invalid_argument("stabilize: no such segment on arc");

    SegGraph g = c.g;
    uint32_t w1 = insert_vertex(g);
    uint32_t w2 = insert_vertex(g);

    // w1 slots: 0 = strand out; left: 1 = edge, 2 = strand in
    //                           right: 1 = strand in, 2 = edge
    uint8_t out1 = 0, e1 = left_side ? 1 : 2, in1 = left_side ? 2 : 1;
    if (circle != UINT32_MAX) {
        g.free_circles--;
        g.segs.push_back({{w1, out1}, {w1, in1}});
    } else {
        uint32_t s = c.arc_first[arc] + seg;
        EndRef P = g.segs[s].from, R = g.segs[s].to;
        g.segs[s] = {P, {w1, in1}};
        g.segs.push_back({{w1, out1}, R});
    }
    if (left_side) {
        // w2 slots: 0 = circle out, 1 = circle in, 2 = edge in
        g.segs.push_back({{w1, e1}, {w2, 2}});
        g.segs.push_back({{w2, 0}, {w2, 1}});
    } else {
        // w2 slots: 0 = circle in, 1 = edge in, 2 = circle out
        g.segs.push_back({{w1, e1}, {w2, 1}});
        g.segs.push_back({{w2, 2}, {w2, 0}});
    }
    return from_seggraph(g, d.ambient);
}

Diagram apply_move(const Diagram& d, const MoveSite& site) {
    Diagram out;
    switch (site.type) {
        case MoveType::r1_plus: out = do_r1_plus(d, site); break;
        case MoveType::r1_minus: out = do_r1_minus(d, site); break;
        case MoveType::r2_plus: out = do_r2_plus(d, site); break;
        case MoveType::r2_minus: out = do_r2_minus(d, site); break;
        case MoveType::r3: out = do_r3(d, site); break;
    }
    Report rep = validate_diagram(out);
    if (!rep.empty())
        throw std::logic_error("move produced an invalid diagram: " + rep.front().detail);
    return out;
}

std::vector<MoveSite> enumerate_sites(const Diagram& d, MoveType type) {
    std::vector<MoveSite> out;
    Ctx c = make_ctx(d);

    auto strand_refs = [&]() {
        std::vector<StrandRef> refs;
        for (uint32_t a = 0; a < d.arcs.size(); ++a) {
            if (c.circle_index[a] != UINT32_MAX)
                refs.push_back({a, 0});
            else
                for (uint32_t k = 0; k < c.arc_nsegs[a]; ++k) refs.push_back({a, k});
        }
        return refs;
    };

    switch (type) {
        case MoveType::r1_plus: {
            for (auto& r : strand_refs())
                for (bool side : {true, false})
                    for (bool over_first : {false, true}) {
                        MoveSite s;
                        s.type = type;
                        s.a = r;
                        s.side_a = side;
                        s.over_first = over_first;
                        out.push_back(s);
                    }
            break;
        }
        case MoveType::r1_minus: {
            for (uint32_t x = 0; x < d.crossings.size(); ++x) {
                MoveSite s;
                s.type = type;
                s.c1 = x;
                try {
                    do_r1_minus(d, s);
                } catch (const MoveError&) {
                    continue;
                }
                out.push_back(s);
            }
            break;
        }
        case MoveType::r2_plus: {
            auto refs = strand_refs();
            for (auto& ra : refs)
                for (auto& rb : refs) {
                    uint32_t ca, cb;
                    uint32_t sa = resolve_strand(c, d, ra, ca);
                    uint32_t sb = resolve_strand(c, d, rb, cb);
                    if (ra.arc == rb.arc && sa == sb) continue;
                    for (bool side_a : {true, false})
                        for (bool side_b : {true, false}) {
                            if (side_region(c, sa, ca, side_a) != side_region(c, sb, cb, side_b))
                                continue;
                            for (bool a_over : {true, false}) {
                                MoveSite s;
                                s.type = type;
                                s.a = ra;
                                s.b = rb;
                                s.side_a = side_a;
                                s.side_b = side_b;
                                s.a_over = a_over;
                                out.push_back(s);
                            }
                        }
                }
            break;
        }
        case MoveType::r2_minus:
        case MoveType::r3: {
            size_t len = type == MoveType::r2_minus ? 2 : 3;
            std::map<std::vector<uint32_t>, uint32_t> seen;
            for (uint32_t f = 0; f < c.topo.faces.size(); ++f) {
                if (c.topo.faces[f].size() != len) continue;
                std::vector<uint32_t> corners;
                bool all_crossings = true;
                for (uint32_t he : c.topo.faces[f]) {
                    const Segment& sg = c.topo.segments[he / 2];
                    uint32_t node = (he & 1) ? sg.from.node : sg.to.node;
                    if (node >= d.crossings.size()) all_crossings = false;
                    corners.push_back(node);
                }
                std::sort(corners.begin(), corners.end());
                if (!all_crossings) continue;
                if (std::adjacent_find(corners.begin(), corners.end()) != corners.end()) continue;
                uint32_t variant = seen[corners]++;
                MoveSite s;
                s.type = type;
                s.c1 = corners[0];
                s.c2 = corners[1];
                s.c3 = len == 3 ? corners[2] : 0;
                s.variant = variant;
                try {
                    apply_move(d, s);
                } catch (const MoveError&) {
                    continue;
                }
                out.push_back(s);
            }
            break;
        }
    }
    return out;
}

}  // namespace hlinv
