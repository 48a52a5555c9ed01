// Oriented diagrams of spatial trivalent graphs as combinatorial maps.
//
// Arcs are oriented strands broken only at undercrossings and vertices; an
// arc passes through every crossing where it is the over strand.  Crossings
// carry a fixed slot convention: slot 0 is the over-strand entry, slot 2 the
// over-strand exit, slots 1 and 3 the two under ends, all counterclockwise.
// With that convention the crossing sign is +1 exactly when the under entry
// sits at slot 1, and the coloring rule reads q(slot3 arc) = q(slot1 arc) * q(over).

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hlinv/algebra.hpp"  // Violation/Report/ParseError

namespace hlinv {

enum class Ambient { sphere, plane };

struct Arc {
    bool closed = false;
    std::vector<uint32_t> passages;  // crossings passed over, in order along the arc
};

struct Crossing {
    uint32_t over = 0;
    uint32_t under_in = 0;   // head attaches here
    uint32_t under_out = 0;  // tail attaches here
    uint8_t under_in_slot = 1;  // 1 or 3

    int sign() const { return under_in_slot == 1 ? +1 : -1; }
};

struct ArcEnd {
    uint32_t arc = 0;
    bool head = false;
    bool operator==(const ArcEnd&) const = default;
};

struct Vertex {
    std::array<ArcEnd, 3> ends;  // counterclockwise

    int eps(int i) const { return ends[i].head ? +1 : -1; }
};

struct Diagram {
    std::vector<Arc> arcs;
    std::vector<Crossing> crossings;
    std::vector<Vertex> vertices;
    Ambient ambient = Ambient::sphere;
};

// ---------------------------------------------------------------------------
// derived topology

struct EndRef {
    uint32_t node = 0;  // crossings first, then vertices
    uint8_t slot = 0;
    bool operator==(const EndRef&) const = default;
};

struct Segment {
    EndRef from, to;
    uint32_t arc = 0;
};

struct ComponentStructure {
    uint32_t count = 0;
    std::vector<uint32_t> arc_component;
    std::vector<uint32_t> genus;          // per component
    // component of the over strand / under strand per crossing
    std::vector<std::pair<uint32_t, uint32_t>> crossing_components;
};

struct RegionEdge {
    uint32_t right_region = 0;  // normal points right -> left
    uint32_t left_region = 0;
    uint32_t arc = 0;
};

struct Topology {
    std::vector<Segment> segments;
    std::vector<uint32_t> free_circle_arcs;

    uint32_t node_count = 0;  // #crossings + #vertices
    std::vector<std::vector<uint32_t>> faces;  // face -> half-edges (seg*2+dir)
    std::vector<uint32_t> face_of;             // half-edge -> face
    std::vector<std::vector<uint32_t>> corner_face;  // node -> slot s -> face at corner (s, ccw_next(s))

    uint32_t region_count = 0;
    std::vector<uint32_t> region_of_face;
    std::vector<uint32_t> circle_left_region;  // parallel to free_circle_arcs
    uint32_t ambient_region = 0;               // the outer region in the plane model

    std::vector<RegionEdge> region_edges;  // one per segment, then one per free circle

    ComponentStructure components;

    // per crossing, for cocycle weights: the region both normals point away from
    std::vector<uint32_t> crossing_source_region;
};

// structural + planarity validation; empty report iff the diagram is valid
Report validate_diagram(const Diagram& d);

// full analysis; throws std::invalid_argument when validate_diagram is nonempty
Topology analyze(const Diagram& d);

ComponentStructure split_components(const Diagram& d);
// genus (first Betti number) of one connected component
uint32_t genus(const Diagram& d, uint32_t component);

// ---------------------------------------------------------------------------
// text format
//
//   diagram <#arcs>
//   arc <id> [closed] [via=<c0,c1,...>]
//   x <id> over=<a> under_in=<b> under_out=<c> rot=<t0> <t1> <t2> <t3>
//   v <id> ends=<t0> <t1> <t2>
//
// Arc-end tokens are <arc>.h / <arc>.t.  Crossing rot starts at the over
// entry.  via= lists the crossings an arc passes over in order along the
// arc; it is required when there is more than one passage.

Diagram parse_diagram(const std::string& text);  // throws ParseError (shape only)
std::string serialize_diagram(const Diagram& d); // canonical form, deterministic

// relabel to the canonical form (used by serialize_diagram)
Diagram canonicalize(const Diagram& d);
// canonical-form equality, i.e. isomorphism of labeled combinatorial maps
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace hlinv
