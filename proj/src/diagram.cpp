#include "hlinv/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hlinv/seggraph.hpp"

namespace hlinv {

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    uint32_t find(uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(uint32_t a, uint32_t b) { parent[find(a)] = find(b); }
};

uint8_t node_degree(const Diagram& d, uint32_t node) {
    return node < d.crossings.size() ? 4 : 3;
}

// attachments of real arc ends: (node, slot, arc, is_head)
struct Attachment {
    EndRef at;
    uint32_t arc;
    bool head;
};

std::vector<Attachment> attachments(const Diagram& d) {
    std::vector<Attachment> out;
    const uint32_t nc = uint32_t(d.crossings.size());
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        uint8_t s_in = c.under_in_slot, s_out = s_in == 1 ? 3 : 1;
        out.push_back({{i, s_in}, c.under_in, true});
        out.push_back({{i, s_out}, c.under_out, false});
    }
    for (uint32_t j = 0; j < d.vertices.size(); ++j)
        for (uint8_t s = 0; s < 3; ++s) {
            const ArcEnd& e = d.vertices[j].ends[s];
            out.push_back({{nc + j, s}, e.arc, e.head});
        }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// validation

Report validate_diagram(const Diagram& d) {
    Report rep;
    const uint32_t na = uint32_t(d.arcs.size());

    auto arc_ok = [&](uint32_t a) { return a < na; };
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        if (!arc_ok(c.over) || !arc_ok(c.under_in) || !arc_ok(c.under_out)) {
            rep.push_back({"structure", "crossing " + std::to_string(i) + " references unknown arc"});
            return rep;
        }
        if (c.under_in_slot != 1 && c.under_in_slot != 3) {
            rep.push_back({"structure", "crossing " + std::to_string(i) + " bad under slot"});
            return rep;
        }
    }
    for (uint32_t j = 0; j < d.vertices.size(); ++j)
        for (auto& e : d.vertices[j].ends)
            if (!arc_ok(e.arc)) {
                rep.push_back({"structure", "vertex " + std::to_string(j) + " references unknown arc"});
                return rep;
            }
    for (uint32_t a = 0; a < na; ++a)
        for (uint32_t c : d.arcs[a].passages)
            if (c >= d.crossings.size()) {
                rep.push_back({"structure", "arc " + std::to_string(a) + " passage out of range"});
                return rep;
            }

    // passage lists must match the crossings' over fields exactly
    {
        std::vector<std::vector<uint32_t>> expected(na);
        for (uint32_t i = 0; i < d.crossings.size(); ++i) expected[d.crossings[i].over].push_back(i);
        for (uint32_t a = 0; a < na; ++a) {
            std::vector<uint32_t> got = d.arcs[a].passages;
            std::sort(got.begin(), got.end());
            if (got != expected[a] ||
                std::adjacent_find(got.begin(), got.end()) != got.end())
                rep.push_back({"structure",
                               "arc " + std::to_string(a) + " passage list does not match crossings"});
        }
        if (!rep.empty()) return rep;
    }

    // each open arc has exactly one head and one tail attachment; closed arcs none
    {
        std::vector<int> heads(na, 0), tails(na, 0);
        for (auto& at : attachments(d)) (at.head ? heads[at.arc] : tails[at.arc])++;
        for (uint32_t a = 0; a < na; ++a) {
            int want = d.arcs[a].closed ? 0 : 1;
            if (heads[a] != want || tails[a] != want)
                rep.push_back({"structure",
                               "arc " + std::to_string(a) + " has " + std::to_string(heads[a]) +
                                   " head / " + std::to_string(tails[a]) +
                                   " tail attachments (dangling or duplicated end)"});
        }
        if (!rep.empty()) return rep;
    }

    // every slot occupied exactly once
    {
        const uint32_t nodes = uint32_t(d.crossings.size() + d.vertices.size());
        std::vector<std::vector<int>> occ(nodes);
        for (uint32_t v = 0; v < nodes; ++v) occ[v].assign(node_degree(d, v), 0);
        for (auto& at : attachments(d)) occ[at.at.node][at.at.slot]++;
        for (uint32_t i = 0; i < d.crossings.size(); ++i) {
            occ[i][0]++;  // over entry
            occ[i][2]++;  // over exit
        }
        for (uint32_t v = 0; v < nodes; ++v)
            for (uint8_t s = 0; s < occ[v].size(); ++s)
                if (occ[v][s] != 1)
                    rep.push_back({"structure",
                                   "node " + std::to_string(v) + " slot " + std::to_string(s) +
                                       " occupied " + std::to_string(occ[v][s]) + " times"});
        if (!rep.empty()) return rep;
    }

    // planarity: V - E + F = 2 on every connected projection component
    Topology t;
    try {
        t = analyze(d);
    } catch (const std::exception& e) {
        rep.push_back({"structure", e.what()});
        return rep;
    }
    if (t.node_count > 0) {
        UnionFind uf(t.node_count);
        for (auto& s : t.segments) uf.unite(s.from.node, s.to.node);
        std::map<uint32_t, std::array<int64_t, 3>> vef;  // root -> V, E, F
        for (uint32_t v = 0; v < t.node_count; ++v) vef[uf.find(v)][0]++;
        for (auto& s : t.segments) vef[uf.find(s.from.node)][1]++;
        for (uint32_t f = 0; f < t.faces.size(); ++f)
            if (!t.faces[f].empty())
                vef[uf.find(t.segments[t.faces[f][0] / 2].from.node)][2]++;
        for (auto& [root, counts] : vef)
            if (counts[0] - counts[1] + counts[2] != 2)
                rep.push_back({"planarity",
                               "component at node " + std::to_string(root) + ": V-E+F = " +
                                   std::to_string(counts[0] - counts[1] + counts[2])});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// analysis

Topology analyze(const Diagram& d) {
    Topology t;
    const uint32_t na = uint32_t(d.arcs.size());
    const uint32_t nodes = uint32_t(d.crossings.size() + d.vertices.size());
    t.node_count = nodes;

    // locate real arc ends
    std::vector<EndRef> head_at(na), tail_at(na);
    std::vector<int> heads(na, 0), tails(na, 0);
    for (auto& at : attachments(d)) {
        if (at.head) {
            head_at[at.arc] = at.at;
            heads[at.arc]++;
        } else {
            tail_at[at.arc] = at.at;
            tails[at.arc]++;
        }
    }
    for (uint32_t a = 0; a < na; ++a) {
        int want = d.arcs[a].closed ? 0 : 1;
        if (heads[a] != want || tails[a] != want)
            throw std::invalid_argument("arc " + std::to_string(a) + " has dangling ends");
    }

    // segments along each arc
    for (uint32_t a = 0; a < na; ++a) {
        const Arc& arc = d.arcs[a];
        std::vector<EndRef> pts;  // alternating exit/entry points along the arc
        if (!arc.closed) pts.push_back(tail_at[a]);
        for (uint32_t c : arc.passages) {
            pts.push_back({c, 0});  // passage entry
            pts.push_back({c, 2});  // passage exit -- note: entry listed before exit
        }
        if (!arc.closed) pts.push_back(head_at[a]);
        if (arc.closed) {
            if (arc.passages.empty()) {
                t.free_circle_arcs.push_back(a);
                continue;
            }
            // rotate so segments run exit -> entry cyclically
            // pts = e0,x0,e1,x1,... ; segments: x_i -> e_{i+1}
            for (size_t i = 0; i < arc.passages.size(); ++i) {
                EndRef from = {arc.passages[i], 2};
                EndRef to = {arc.passages[(i + 1) % arc.passages.size()], 0};
                t.segments.push_back({from, to, a});
            }
        } else {
            // pts: tail, (entry, exit)*, head; segments between consecutive
            // "outgoing" and "incoming" points
            std::vector<EndRef> outs, ins;
            outs.push_back(tail_at[a]);
            for (uint32_t c : arc.passages) {
                ins.push_back({c, 0});
                outs.push_back({c, 2});
            }
            ins.push_back(head_at[a]);
            for (size_t i = 0; i < outs.size(); ++i) t.segments.push_back({outs[i], ins[i], a});
        }
    }

    // emanating half-edge per slot
    std::vector<std::vector<uint32_t>> emanate(nodes);
    for (uint32_t v = 0; v < nodes; ++v) emanate[v].assign(node_degree(d, v), UINT32_MAX);
    for (uint32_t s = 0; s < t.segments.size(); ++s) {
        const Segment& sg = t.segments[s];
        if (emanate[sg.from.node][sg.from.slot] != UINT32_MAX ||
            emanate[sg.to.node][sg.to.slot] != UINT32_MAX)
            throw std::invalid_argument("slot attached twice");
        emanate[sg.from.node][sg.from.slot] = s * 2;      // forward leaves from
        emanate[sg.to.node][sg.to.slot] = s * 2 + 1;      // backward leaves to
    }
    for (uint32_t v = 0; v < nodes; ++v)
        for (uint8_t s = 0; s < emanate[v].size(); ++s)
            if (emanate[v][s] == UINT32_MAX)
                throw std::invalid_argument("empty slot at node " + std::to_string(v));

    auto he_target = [&](uint32_t he) -> EndRef {
        const Segment& sg = t.segments[he / 2];
        return (he & 1) ? sg.from : sg.to;
    };

    // face traversal: next = emanating half-edge at the clockwise-next slot of
    // the arrival slot; orbits are the faces, each to the left of its half-edges
    const uint32_t H = uint32_t(t.segments.size()) * 2;
    t.face_of.assign(H, UINT32_MAX);
    t.corner_face.resize(nodes);
    for (uint32_t v = 0; v < nodes; ++v) t.corner_face[v].assign(node_degree(d, v), UINT32_MAX);
    for (uint32_t h0 = 0; h0 < H; ++h0) {
        if (t.face_of[h0] != UINT32_MAX) continue;
        uint32_t f = uint32_t(t.faces.size());
        t.faces.emplace_back();
        uint32_t h = h0;
        do {
            t.face_of[h] = f;
            t.faces[f].push_back(h);
            EndRef at = he_target(h);
            uint8_t deg = node_degree(d, at.node);
            uint8_t leave = uint8_t((at.slot + deg - 1) % deg);
            t.corner_face[at.node][leave] = f;
            h = emanate[at.node][leave];
        } while (h != h0);
    }

    // regions: merge one designated face per projection component plus the
    // right side of every free circle into a single ambient region
    const uint32_t F = uint32_t(t.faces.size());
    const uint32_t ncirc = uint32_t(t.free_circle_arcs.size());
    UnionFind ruf(F + 2 * ncirc);  // circle i: left = F+2i, right = F+2i+1
    if (nodes > 0) {
        UnionFind comp(nodes);
        for (auto& s : t.segments) comp.unite(s.from.node, s.to.node);
        std::map<uint32_t, uint32_t> designated;  // component root -> face
        for (uint32_t s = 0; s < t.segments.size(); ++s) {
            uint32_t root = comp.find(t.segments[s].from.node);
            if (!designated.count(root)) designated[root] = t.face_of[s * 2 + 1];
        }
        uint32_t first = UINT32_MAX;
        for (auto& [root, face] : designated) {
            if (first == UINT32_MAX)
                first = face;
            else
                ruf.unite(face, first);
        }
        for (uint32_t i = 0; i < ncirc; ++i) ruf.unite(F + 2 * i + 1, first);
    } else {
        for (uint32_t i = 1; i < ncirc; ++i) ruf.unite(F + 2 * i + 1, F + 1);
    }

    // stable region ids in order of first appearance
    std::vector<uint32_t> region_id(F + 2 * ncirc, UINT32_MAX);
    t.region_count = 0;
    auto rid = [&](uint32_t elem) {
        uint32_t root = ruf.find(elem);
        if (region_id[root] == UINT32_MAX) region_id[root] = t.region_count++;
        return region_id[root];
    };
    t.region_of_face.resize(F);
    for (uint32_t f = 0; f < F; ++f) t.region_of_face[f] = rid(f);
    t.circle_left_region.resize(ncirc);
    for (uint32_t i = 0; i < ncirc; ++i) t.circle_left_region[i] = rid(F + 2 * i);
    if (nodes > 0) {
        t.ambient_region = t.region_of_face[t.face_of[1]];  // right of segment 0
    } else if (ncirc > 0) {
        t.ambient_region = rid(F + 1);
    } else {
        t.region_count = 1;
        t.ambient_region = 0;
    }

    // one region edge per segment, then one per free circle
    for (uint32_t s = 0; s < t.segments.size(); ++s)
        t.region_edges.push_back({t.region_of_face[t.face_of[s * 2 + 1]],
                                  t.region_of_face[t.face_of[s * 2]], t.segments[s].arc});
    for (uint32_t i = 0; i < ncirc; ++i)
        t.region_edges.push_back({t.ambient_region, t.circle_left_region[i], t.free_circle_arcs[i]});

    // spatial components
    {
        UnionFind uf(na ? na : 1);
        for (auto& c : d.crossings) uf.unite(c.under_in, c.under_out);
        for (auto& v : d.vertices) {
            uf.unite(v.ends[0].arc, v.ends[1].arc);
            uf.unite(v.ends[0].arc, v.ends[2].arc);
        }
        ComponentStructure& cs = t.components;
        cs.arc_component.assign(na, 0);
        std::vector<uint32_t> root_id(na, UINT32_MAX);
        cs.count = 0;
        for (uint32_t a = 0; a < na; ++a) {
            uint32_t r = uf.find(a);
            if (root_id[r] == UINT32_MAX) root_id[r] = cs.count++;
            cs.arc_component[a] = root_id[r];
        }
        // genus: E - V + 1 per component over the abstract graph whose edges
        // are under-glued arc chains; a chain with no vertex is a free cycle
        std::vector<uint32_t> verts(cs.count, 0), edges(cs.count, 0), cycles(cs.count, 0);
        for (auto& v : d.vertices) verts[cs.arc_component[v.ends[0].arc]]++;
        {
            UnionFind chain(na ? na : 1);
            for (auto& c : d.crossings) chain.unite(c.under_in, c.under_out);
            std::vector<int> chain_vertex_ends(na, 0);
            for (auto& v : d.vertices)
                for (auto& e : v.ends) chain_vertex_ends[chain.find(e.arc)]++;
            std::vector<bool> seen(na, false);
            for (uint32_t a = 0; a < na; ++a) {
                uint32_t r = chain.find(a);
                if (seen[r]) continue;
                seen[r] = true;
                if (chain_vertex_ends[r] == 0)
                    cycles[cs.arc_component[a]]++;
                else
                    edges[cs.arc_component[a]]++;
            }
        }
        cs.genus.resize(cs.count);
        for (uint32_t c = 0; c < cs.count; ++c) {
            if (verts[c] == 0)
                cs.genus[c] = cycles[c];  // a lone closed strand: one cycle
            else
                cs.genus[c] = edges[c] - verts[c] + 1;
        }
        for (auto& c : d.crossings)
            cs.crossing_components.push_back(
                {cs.arc_component[c.over], cs.arc_component[c.under_in]});
    }

    // weight data: source region of each crossing
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        uint8_t corner_slot = d.crossings[i].sign() > 0 ? 1 : 0;
        t.crossing_source_region.push_back(
            t.region_of_face[t.corner_face[i][corner_slot]]);
    }

    return t;
}

ComponentStructure split_components(const Diagram& d) { return analyze(d).components; }

uint32_t genus(const Diagram& d, uint32_t component) {
    ComponentStructure cs = split_components(d);
    if (component >= cs.count) throw std::invalid_argument("no such component");
    return cs.genus[component];
}

// ---------------------------------------------------------------------------
// seggraph conversion

SegGraph to_seggraph(const Diagram& d, const Topology& t) {
    SegGraph g;
    for (size_t i = 0; i < d.crossings.size(); ++i) g.nodes.push_back({true});
    for (size_t j = 0; j < d.vertices.size(); ++j) g.nodes.push_back({false});
    for (auto& s : t.segments) g.segs.push_back({s.from, s.to});
    g.free_circles = uint32_t(t.free_circle_arcs.size());
    return g;
}

Diagram from_seggraph(const SegGraph& g, Ambient ambient) {
    const uint32_t nn = uint32_t(g.nodes.size());
    // crossing ids must come first in node numbering
    uint32_t ncross = 0;
    for (uint32_t v = 0; v < nn; ++v) {
        if (g.nodes[v].is_crossing) {
            if (ncross != v)
                throw std::invalid_argument("crossings must precede vertices in seggraph");
            ++ncross;
        }
    }

    std::vector<std::vector<std::pair<uint32_t, bool>>> at(nn);  // slot -> (seg, is_from)
    for (uint32_t v = 0; v < nn; ++v) at[v].assign(g.nodes[v].degree(), {UINT32_MAX, false});
    for (uint32_t s = 0; s < g.segs.size(); ++s) {
        auto& sg = g.segs[s];
        auto set = [&](EndRef e, bool is_from) {
            if (e.node >= nn || e.slot >= g.nodes[e.node].degree() ||
                at[e.node][e.slot].first != UINT32_MAX)
                throw std::invalid_argument("bad segment attachment");
            at[e.node][e.slot] = {s, is_from};
        };
        set(sg.from, true);
        set(sg.to, false);
    }
    for (uint32_t v = 0; v < nn; ++v)
        for (auto& [s, dir] : at[v])
            if (s == UINT32_MAX) throw std::invalid_argument("unattached slot");

    // over strand direction check: arrives at slot 0, leaves at slot 2
    for (uint32_t v = 0; v < ncross; ++v) {
        if (at[v][0].second || !at[v][2].second)
            throw std::invalid_argument("over strand direction inconsistent at crossing " +
                                        std::to_string(v));
        if (at[v][1].second == at[v][3].second)
            throw std::invalid_argument("under strand direction inconsistent at crossing " +
                                        std::to_string(v));
    }

    Diagram d;
    d.ambient = ambient;
    d.crossings.resize(ncross);
    d.vertices.resize(nn - ncross);

    // walk chains: a chain continues through crossings slot0 -> slot2
    const uint32_t ns = uint32_t(g.segs.size());
    std::vector<uint32_t> seg_arc(ns, UINT32_MAX);
    struct ArcInfo {
        bool closed = false;
        std::vector<uint32_t> segs;
        std::vector<uint32_t> passages;
        uint32_t min_seg = UINT32_MAX;
    };
    std::vector<ArcInfo> infos;

    auto walk = [&](uint32_t s0, bool closed) {
        ArcInfo info;
        info.closed = closed;
        uint32_t s = s0;
        while (true) {
            info.segs.push_back(s);
            info.min_seg = std::min(info.min_seg, s);
            seg_arc[s] = 1;  // mark visited; real id assigned later
            EndRef to = g.segs[s].to;
            bool passes = to.node < ncross && to.slot == 0;
            if (!passes) break;  // head reached (under slot or vertex)
            info.passages.push_back(to.node);
            uint32_t nxt = at[to.node][2].first;
            if (closed && nxt == s0) break;
            s = nxt;
            if (!closed && s == s0) throw std::invalid_argument("strand loops without terminal");
        }
        infos.push_back(std::move(info));
    };

    // open chains start where a segment leaves a terminal slot (under slot or vertex)
    for (uint32_t s = 0; s < ns; ++s) {
        EndRef f = g.segs[s].from;
        bool from_passage = f.node < ncross && f.slot == 2;
        if (!from_passage) walk(s, false);
    }
    for (uint32_t s = 0; s < ns; ++s)
        if (seg_arc[s] == UINT32_MAX) walk(s, true);  // leftover cyclic chains

    std::sort(infos.begin(), infos.end(),
              [](const ArcInfo& a, const ArcInfo& b) { return a.min_seg < b.min_seg; });

    d.arcs.resize(infos.size() + g.free_circles);
    for (uint32_t id = 0; id < infos.size(); ++id) {
        d.arcs[id].closed = infos[id].closed;
        d.arcs[id].passages = infos[id].passages;
        for (uint32_t s : infos[id].segs) seg_arc[s] = id;
    }
    for (uint32_t i = 0; i < g.free_circles; ++i)
        d.arcs[uint32_t(infos.size()) + i].closed = true;

    // fill crossing and vertex records from the attachments
    for (uint32_t v = 0; v < ncross; ++v) {
        Crossing& c = d.crossings[v];
        c.over = seg_arc[at[v][0].first];
        bool in_at_1 = !at[v][1].second;  // arriving segment -> under_in
        c.under_in_slot = in_at_1 ? 1 : 3;
        c.under_in = seg_arc[at[v][in_at_1 ? 1 : 3].first];
        c.under_out = seg_arc[at[v][in_at_1 ? 3 : 1].first];
    }
    for (uint32_t v = ncross; v < nn; ++v) {
        Vertex& vx = d.vertices[v - ncross];
        for (uint8_t s = 0; s < 3; ++s) {
            auto [seg, is_from] = at[v][s];
            vx.ends[s] = {seg_arc[seg], !is_from};
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

// encode the component containing start half-edge h0; fills numbering of
// nodes and first-visit order of segments
struct Encoding {
    std::vector<int32_t> tokens;
    std::vector<uint32_t> node_order;  // nodes in discovery order
    std::vector<uint32_t> seg_order;   // segments in first-traversal order
    std::vector<uint8_t> vertex_base;  // arrival slot per discovered node
};

Encoding encode_from(const SegGraph& g,
                     const std::vector<std::vector<std::pair<uint32_t, bool>>>& at,
                     uint32_t h0) {
    Encoding enc;
    std::vector<int32_t> node_id(g.nodes.size(), -1);
    std::vector<uint8_t> base(g.nodes.size(), 0);
    std::vector<bool> seg_seen(g.segs.size(), false);

    auto target = [&](uint32_t he) -> EndRef {
        return (he & 1) ? g.segs[he / 2].from : g.segs[he / 2].to;
    };
    auto emanating = [&](uint32_t node, uint8_t slot) -> uint32_t {
        auto [seg, is_from] = at[node][slot];
        return seg * 2 + (is_from ? 0 : 1);
    };

    std::vector<uint32_t> stack{h0};
    while (!stack.empty()) {
        uint32_t h = stack.back();
        stack.pop_back();
        if (!seg_seen[h / 2]) {
            seg_seen[h / 2] = true;
            enc.seg_order.push_back(h / 2);
        }
        EndRef tgt = target(h);
        uint32_t v = tgt.node;
        uint8_t deg = g.nodes[v].degree();
        if (node_id[v] >= 0) {
            enc.tokens.push_back(-1 - node_id[v]);  // revisit reference
            enc.tokens.push_back((tgt.slot + deg - base[v]) % deg);
            continue;
        }
        node_id[v] = int32_t(enc.node_order.size());
        enc.node_order.push_back(v);
        base[v] = tgt.slot;
        enc.tokens.push_back(g.nodes[v].is_crossing ? 100 : 101);
        for (uint8_t delta = 0; delta < deg; ++delta) {
            uint8_t s = uint8_t((tgt.slot + delta) % deg);
            // structural role of the slot plus strand direction
            int32_t role = g.nodes[v].is_crossing ? s : 0;
            enc.tokens.push_back(role * 2 + (at[v][s].second ? 1 : 0));
        }
        // explore every slot deterministically (counterclockwise from the
        // arrival, including the way back); stack is LIFO so push in reverse
        for (int delta = deg - 1; delta >= 0; --delta) {
            uint8_t s = uint8_t((tgt.slot + delta) % deg);
            stack.push_back(emanating(v, s));
        }
    }
    enc.vertex_base = base;
    return enc;
}

}  // namespace

Diagram canonicalize(const Diagram& d) {
    Topology t = analyze(d);
    SegGraph g = to_seggraph(d, t);

    const uint32_t nn = uint32_t(g.nodes.size());
    std::vector<std::vector<std::pair<uint32_t, bool>>> at(nn);
    for (uint32_t v = 0; v < nn; ++v) at[v].assign(g.nodes[v].degree(), {UINT32_MAX, false});
    for (uint32_t s = 0; s < g.segs.size(); ++s) {
        at[g.segs[s].from.node][g.segs[s].from.slot] = {s, true};
        at[g.segs[s].to.node][g.segs[s].to.slot] = {s, false};
    }

    // projection components over nodes
    UnionFind uf(nn ? nn : 1);
    for (auto& s : g.segs) uf.unite(s.from.node, s.to.node);
    std::map<uint32_t, std::vector<uint32_t>> comp_segs;
    for (uint32_t s = 0; s < g.segs.size(); ++s)
        comp_segs[uf.find(g.segs[s].from.node)].push_back(s);

    // best encoding per component
    std::vector<Encoding> encs;
    for (auto& [root, segs] : comp_segs) {
        Encoding best;
        bool have = false;
        for (uint32_t s : segs)
            for (uint32_t dir = 0; dir < 2; ++dir) {
                Encoding e = encode_from(g, at, s * 2 + dir);
                if (!have || e.tokens < best.tokens) {
                    best = std::move(e);
                    have = true;
                }
            }
        encs.push_back(std::move(best));
    }
    std::sort(encs.begin(), encs.end(),
              [](const Encoding& a, const Encoding& b) { return a.tokens < b.tokens; });

    // rebuild with canonical numbering: crossings first, then vertices; slots
    // of vertices rotated so the canonical arrival slot becomes slot 0
    uint32_t ncross_total = 0, nvert_total = 0;
    for (auto& n : g.nodes) (n.is_crossing ? ncross_total : nvert_total)++;

    std::vector<uint32_t> new_node(nn, UINT32_MAX);
    std::vector<uint8_t> rot(nn, 0);
    uint32_t next_cross = 0, next_vert = 0;
    for (auto& e : encs)
        for (uint32_t v : e.node_order) {
            if (g.nodes[v].is_crossing)
                new_node[v] = next_cross++;
            else {
                new_node[v] = ncross_total + next_vert++;
                rot[v] = e.vertex_base[v];
            }
        }

    std::vector<uint32_t> new_seg(g.segs.size(), UINT32_MAX);
    uint32_t next_seg = 0;
    for (auto& e : encs)
        for (uint32_t s : e.seg_order) new_seg[s] = next_seg++;

    SegGraph out;
    out.nodes.resize(nn);
    for (uint32_t v = 0; v < nn; ++v) out.nodes[new_node[v]] = g.nodes[v];
    out.segs.resize(g.segs.size());
    auto remap = [&](EndRef e) -> EndRef {
        uint8_t deg = g.nodes[e.node].degree();
        uint8_t slot = g.nodes[e.node].is_crossing ? e.slot : uint8_t((e.slot + deg - rot[e.node]) % deg);
        return {new_node[e.node], slot};
    };
    for (uint32_t s = 0; s < g.segs.size(); ++s)
        out.segs[new_seg[s]] = {remap(g.segs[s].from), remap(g.segs[s].to)};
    out.free_circles = g.free_circles;

    return from_seggraph(out, d.ambient);
}

bool isomorphic(const Diagram& a, const Diagram& b) {
    return serialize_diagram(a) == serialize_diagram(b);
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::string token(uint32_t arc, bool head) {
    return std::to_string(arc) + (head ? ".h" : ".t");
}

}  // namespace

std::string serialize_diagram(const Diagram& input) {
    Diagram d = canonicalize(input);
    std::ostringstream out;
    out << "diagram " << d.arcs.size() << "\n";
    for (uint32_t a = 0; a < d.arcs.size(); ++a) {
        out << "arc " << a;
        if (d.arcs[a].closed) out << " closed";
        if (!d.arcs[a].passages.empty()) {
            out << " via=";
            for (size_t i = 0; i < d.arcs[a].passages.size(); ++i)
                out << (i ? "," : "") << d.arcs[a].passages[i];
        }
        out << "\n";
    }
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        std::string t1, t3;
        if (c.under_in_slot == 1) {
            t1 = token(c.under_in, true);
            t3 = token(c.under_out, false);
        } else {
            t1 = token(c.under_out, false);
            t3 = token(c.under_in, true);
        }
        out << "x " << i << " over=" << c.over << " under_in=" << c.under_in
            << " under_out=" << c.under_out << " rot=" << token(c.over, true) << " " << t1 << " "
            << token(c.over, false) << " " << t3 << "\n";
    }
    for (uint32_t j = 0; j < d.vertices.size(); ++j) {
        const Vertex& v = d.vertices[j];
        out << "v " << j << " ends=";
        for (int s = 0; s < 3; ++s)
            out << (s ? " " : "") << token(v.ends[s].arc, v.ends[s].head);
        out << "\n";
    }
    return out.str();
}

namespace {

struct TokenEnd {
    uint32_t arc;
    bool head;
};

TokenEnd parse_token(const std::string& tok, int line) {
    size_t dot = tok.find('.');
    if (dot == std::string::npos || dot + 2 != tok.size() ||
        (tok[dot + 1] != 'h' && tok[dot + 1] != 't'))
        throw ParseError("bad arc-end token '" + tok + "'", line);
    uint32_t arc = 0;
    try {
        arc = uint32_t(std::stoul(tok.substr(0, dot)));
    } catch (...) {
        throw ParseError("bad arc-end token '" + tok + "'", line);
    }
    return {arc, tok[dot + 1] == 'h'};
}

uint32_t parse_field(const std::string& word, const char* name, int line) {
    std::string prefix = std::string(name) + "=";
    if (word.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + prefix + "...', got '" + word + "'", line);
    try {
        return uint32_t(std::stoul(word.substr(prefix.size())));
    } catch (...) {
        throw ParseError("bad value in '" + word + "'", line);
    }
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Diagram d;
    bool have_header = false;
    size_t declared_arcs = 0;
    std::vector<bool> arc_seen;
    std::vector<std::vector<uint32_t>> via;   // per arc, empty = unspecified
    std::vector<bool> via_given;

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw)) continue;

        if (kw == "diagram") {
            if (have_header) throw ParseError("duplicate header", lineno);
            long long n = -1;
            if (!(ss >> n) || n < 0) throw ParseError("expected 'diagram <#arcs>'", lineno);
            declared_arcs = size_t(n);
            d.arcs.resize(declared_arcs);
            arc_seen.assign(declared_arcs, false);
            via.resize(declared_arcs);
            via_given.assign(declared_arcs, false);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("missing 'diagram <#arcs>' header", lineno);

        if (kw == "arc") {
            long long id = -1;
            if (!(ss >> id) || id < 0 || size_t(id) >= declared_arcs)
                throw ParseError("arc id out of range", lineno);
            if (arc_seen[size_t(id)]) throw ParseError("duplicate arc line", lineno);
            arc_seen[size_t(id)] = true;
            std::string word;
            while (ss >> word) {
                if (word == "closed") {
                    d.arcs[size_t(id)].closed = true;
                } else if (word.rfind("via=", 0) == 0) {
                    via_given[size_t(id)] = true;
                    std::string list = word.substr(4);
                    std::istringstream ls(list);
                    std::string item;
                    while (std::getline(ls, item, ',')) {
                        try {
                            via[size_t(id)].push_back(uint32_t(std::stoul(item)));
                        } catch (...) {
                            throw ParseError("bad via list", lineno);
                        }
                    }
                } else {
                    throw ParseError("unexpected token '" + word + "'", lineno);
                }
            }
        } else if (kw == "x") {
            long long id = -1;
            if (!(ss >> id) || id < 0) throw ParseError("bad crossing id", lineno);
            if (size_t(id) != d.crossings.size())
                throw ParseError("crossing ids must be consecutive from 0", lineno);
            std::string w_over, w_ui, w_uo, w_rot, t0, t1, t2, t3;
            if (!(ss >> w_over >> w_ui >> w_uo >> w_rot))
                throw ParseError("truncated crossing line", lineno);
            Crossing c;
            c.over = parse_field(w_over, "over", lineno);
            c.under_in = parse_field(w_ui, "under_in", lineno);
            c.under_out = parse_field(w_uo, "under_out", lineno);
            if (w_rot.rfind("rot=", 0) != 0) throw ParseError("expected rot=", lineno);
            t0 = w_rot.substr(4);
            if (!(ss >> t1 >> t2 >> t3)) throw ParseError("rot needs 4 tokens", lineno);
            std::string junk;
            if (ss >> junk) throw ParseError("unexpected token '" + junk + "'", lineno);

            TokenEnd e0 = parse_token(t0, lineno), e1 = parse_token(t1, lineno),
                     e2 = parse_token(t2, lineno), e3 = parse_token(t3, lineno);
            if (e0.arc != c.over || !e0.head || e2.arc != c.over || e2.head)
                throw ParseError("rot must start at the over entry token", lineno);
            if (e1.head == e3.head)
                throw ParseError("under slots need one head and one tail token", lineno);
            const TokenEnd& hd = e1.head ? e1 : e3;
            const TokenEnd& tl = e1.head ? e3 : e1;
            if (hd.arc != c.under_in || tl.arc != c.under_out)
                throw ParseError("rot tokens disagree with under_in/under_out", lineno);
            c.under_in_slot = e1.head ? 1 : 3;
            d.crossings.push_back(c);
        } else if (kw == "v") {
            long long id = -1;
            if (!(ss >> id) || id < 0) throw ParseError("bad vertex id", lineno);
            if (size_t(id) != d.vertices.size())
                throw ParseError("vertex ids must be consecutive from 0", lineno);
            std::string w0, w1, w2;
            if (!(ss >> w0 >> w1 >> w2)) throw ParseError("vertex needs 3 end tokens", lineno);
            if (w0.rfind("ends=", 0) != 0) throw ParseError("expected ends=", lineno);
            w0 = w0.substr(5);
            std::string junk;
            if (ss >> junk) throw ParseError("unexpected token '" + junk + "'", lineno);
            Vertex v;
            TokenEnd e0 = parse_token(w0, lineno), e1 = parse_token(w1, lineno),
                     e2 = parse_token(w2, lineno);
            v.ends[0] = {e0.arc, e0.head};
            v.ends[1] = {e1.arc, e1.head};
            v.ends[2] = {e2.arc, e2.head};
            d.vertices.push_back(v);
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno);
        }
    }
    if (!have_header) throw ParseError("missing 'diagram <#arcs>' header", lineno ? lineno : 1);
    for (size_t a = 0; a < declared_arcs; ++a)
        if (!arc_seen[a])
            throw ParseError("arc " + std::to_string(a) + " not declared", lineno);

    // passage order: collect from crossings, then apply via lists
    std::vector<std::vector<uint32_t>> passes(declared_arcs);
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        if (d.crossings[i].over >= declared_arcs)
            throw ParseError("crossing over arc out of range", lineno);
        passes[d.crossings[i].over].push_back(i);
    }
    for (size_t a = 0; a < declared_arcs; ++a) {
        if (via_given[a]) {
            std::vector<uint32_t> sorted = via[a];
            std::sort(sorted.begin(), sorted.end());
            std::vector<uint32_t> expect = passes[a];
            std::sort(expect.begin(), expect.end());
            if (sorted != expect)
                throw ParseError("via list of arc " + std::to_string(a) +
                                     " does not match its over-crossings",
                                 lineno);
            d.arcs[a].passages = via[a];
        } else {
            if (passes[a].size() > 1)
                throw ParseError("arc " + std::to_string(a) +
                                     " passes over several crossings; via= order required",
                                 lineno);
            d.arcs[a].passages = passes[a];
        }
    }
    return d;
}

}  // namespace hlinv
