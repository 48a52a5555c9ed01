#include "hlinv/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hlinv {

namespace {

constexpr uint32_t kUnset = UINT32_MAX;

struct CrossRel {
    uint32_t chi1, chi2, over;  // q[chi2] = q[chi1] * q[over]
    uint32_t id;
};

struct VertRel {
    std::array<uint32_t, 3> arcs;
    std::array<int, 3> eps;
    uint32_t id;
};

struct Plan {
    struct Step {
        enum Kind { assign, derive_c1, derive_c2, check_c, derive_v, check_v } kind;
        uint32_t rel = 0;     // index into cross/vert tables
        uint32_t arc = 0;     // assign target / vertex derive position
        uint32_t vpos = 0;    // which end of the vertex is solved
    };
    std::vector<Step> steps;
    std::vector<uint32_t> arcs;  // the arcs this plan colors
};

struct Relations {
    std::vector<CrossRel> cross;
    std::vector<VertRel> vert;
};

Relations relations_of(const Diagram& d) {
    Relations r;
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        uint32_t chi1 = c.under_in_slot == 1 ? c.under_in : c.under_out;
        uint32_t chi2 = c.under_in_slot == 1 ? c.under_out : c.under_in;
        r.cross.push_back({chi1, chi2, c.over, i});
    }
    for (uint32_t j = 0; j < d.vertices.size(); ++j) {
        const Vertex& v = d.vertices[j];
        r.vert.push_back({{v.ends[0].arc, v.ends[1].arc, v.ends[2].arc},
                          {v.eps(0), v.eps(1), v.eps(2)},
                          j});
    }
    return r;
}

// greedy plan: derive wherever a relation pins an uncolored arc, otherwise
// branch on the most constrained arc; relations check as soon as they close
Plan make_plan(const Relations& rel, const std::vector<uint32_t>& arcs, uint32_t total_arcs) {
    Plan plan;
    plan.arcs = arcs;
    std::vector<bool> in_scope(total_arcs, false), colored(total_arcs, false);
    for (uint32_t a : arcs) in_scope[a] = true;

    std::vector<uint32_t> cross_ids, vert_ids;
    for (uint32_t i = 0; i < rel.cross.size(); ++i)
        if (in_scope[rel.cross[i].chi1]) cross_ids.push_back(i);
    for (uint32_t i = 0; i < rel.vert.size(); ++i)
        if (in_scope[rel.vert[i].arcs[0]]) vert_ids.push_back(i);

    std::vector<bool> cross_done(rel.cross.size(), false), vert_done(rel.vert.size(), false);
    uint32_t remaining = uint32_t(arcs.size());

    // degree for the branching heuristic
    std::vector<uint32_t> degree(total_arcs, 0);
    for (uint32_t i : cross_ids) {
        degree[rel.cross[i].chi1]++;
        degree[rel.cross[i].chi2]++;
        degree[rel.cross[i].over]++;
    }
    for (uint32_t i : vert_ids)
        for (uint32_t a : rel.vert[i].arcs) degree[a]++;

    auto push_closures = [&]() {
        for (uint32_t i : cross_ids) {
            const CrossRel& c = rel.cross[i];
            if (!cross_done[i] && colored[c.chi1] && colored[c.chi2] && colored[c.over]) {
                cross_done[i] = true;
                plan.steps.push_back({Plan::Step::check_c, i, 0, 0});
            }
        }
        for (uint32_t i : vert_ids) {
            const VertRel& v = rel.vert[i];
            if (!vert_done[i] && colored[v.arcs[0]] && colored[v.arcs[1]] && colored[v.arcs[2]]) {
                vert_done[i] = true;
                plan.steps.push_back({Plan::Step::check_v, i, 0, 0});
            }
        }
    };

    while (remaining > 0) {
        bool progressed = false;
        for (uint32_t i : cross_ids) {
            const CrossRel& c = rel.cross[i];
            if (cross_done[i] || !colored[c.over]) continue;
            if (colored[c.chi1] && !colored[c.chi2]) {
                cross_done[i] = true;
                plan.steps.push_back({Plan::Step::derive_c2, i, c.chi2, 0});
                colored[c.chi2] = true;
                --remaining;
                progressed = true;
            } else if (colored[c.chi2] && !colored[c.chi1]) {
                cross_done[i] = true;
                plan.steps.push_back({Plan::Step::derive_c1, i, c.chi1, 0});
                colored[c.chi1] = true;
                --remaining;
                progressed = true;
            }
            if (progressed) break;
        }
        if (!progressed) {
            for (uint32_t i : vert_ids) {
                const VertRel& v = rel.vert[i];
                if (vert_done[i]) continue;
                int unknown = -1;
                int occurrences = 0;
                for (int k = 0; k < 3; ++k)
                    if (!colored[v.arcs[k]]) {
                        if (unknown == -1 || v.arcs[k] == v.arcs[unknown]) {
                            if (unknown == -1) unknown = k;
                            ++occurrences;
                        } else {
                            occurrences = 3;  // two distinct unknowns
                        }
                    }
                if (unknown >= 0 && occurrences == 1) {
                    vert_done[i] = true;
                    plan.steps.push_back(
                        {Plan::Step::derive_v, i, v.arcs[unknown], uint32_t(unknown)});
                    colored[v.arcs[unknown]] = true;
                    --remaining;
                    progressed = true;
                    break;
                }
            }
        }
        if (!progressed) {
            uint32_t best = kUnset;
            for (uint32_t a : arcs)
                if (!colored[a] && (best == kUnset || degree[a] > degree[best] ||
                                    (degree[a] == degree[best] && a < best)))
                    best = a;
            plan.steps.push_back({Plan::Step::assign, 0, best, 0});
            colored[best] = true;
            --remaining;
        }
        push_closures();
    }
    return plan;
}

struct Engine {
    const Relations* rel;
    const FiniteGroup* grp;
    const AssociatedQuandle* aq;
    const Plan* plan;
    uint32_t qsize;
    std::vector<uint32_t> q;  // per arc

    // first assign step may be restricted for worker splits
    uint32_t split_lo = 0, split_stride = 1;

    uint64_t leaves = 0;
    const std::function<void(const std::vector<uint32_t>&)>* sink = nullptr;

    bool vertex_ok(const VertRel& v) const {
        uint32_t x0 = aq->x_of(q[v.arcs[0]]);
        if (aq->x_of(q[v.arcs[1]]) != x0 || aq->x_of(q[v.arcs[2]]) != x0) return false;
        uint32_t prod = grp->identity;
        for (int k = 0; k < 3; ++k) {
            uint32_t g = aq->g_of(q[v.arcs[k]]);
            prod = grp->times(prod, v.eps[k] > 0 ? g : grp->inverse(g));
        }
        return prod == grp->identity;
    }

    void run(size_t step_idx, bool first_assign_pending) {
        if (step_idx == plan->steps.size()) {
            ++leaves;
            if (sink) (*sink)(q);
            return;
        }
        const Plan::Step& st = plan->steps[step_idx];
        switch (st.kind) {
            case Plan::Step::assign: {
                uint32_t start = first_assign_pending ? split_lo : 0;
                uint32_t stride = first_assign_pending ? split_stride : 1;
                for (uint32_t v = start; v < qsize; v += stride) {
                    q[st.arc] = v;
                    run(step_idx + 1, false);
                }
                q[st.arc] = kUnset;
                return;
            }
            case Plan::Step::derive_c2: {
                const CrossRel& c = rel->cross[st.rel];
                q[c.chi2] = aq->apply(q[c.chi1], q[c.over]);
                run(step_idx + 1, first_assign_pending);
                q[c.chi2] = kUnset;
                return;
            }
            case Plan::Step::derive_c1: {
                const CrossRel& c = rel->cross[st.rel];
                q[c.chi1] = aq->unapply(q[c.chi2], q[c.over]);
                run(step_idx + 1, first_assign_pending);
                q[c.chi1] = kUnset;
                return;
            }
            case Plan::Step::check_c: {
                const CrossRel& c = rel->cross[st.rel];
                if (q[c.chi2] == aq->apply(q[c.chi1], q[c.over]))
                    run(step_idx + 1, first_assign_pending);
                return;
            }
            case Plan::Step::derive_v: {
                const VertRel& v = rel->vert[st.rel];
                // common x from any already-colored end
                uint32_t x = kUnset;
                bool consistent = true;
                for (int k = 0; k < 3; ++k) {
                    if (uint32_t(k) == st.vpos) continue;
                    uint32_t xx = aq->x_of(q[v.arcs[k]]);
                    if (x == kUnset)
                        x = xx;
                    else if (x != xx)
                        consistent = false;
                }
                if (!consistent) return;
                // solve prefix * g^eps * suffix = e
                uint32_t pre = grp->identity, post = grp->identity;
                for (uint32_t k = 0; k < 3; ++k) {
                    if (k == st.vpos) continue;
                    uint32_t g = aq->g_of(q[v.arcs[k]]);
                    uint32_t term = v.eps[k] > 0 ? g : grp->inverse(g);
                    if (k < st.vpos)
                        pre = grp->times(pre, term);
                    else
                        post = grp->times(post, term);
                }
                uint32_t rhs = grp->times(grp->inverse(pre), grp->inverse(post));
                uint32_t g = v.eps[st.vpos] > 0 ? rhs : grp->inverse(rhs);
                q[v.arcs[st.vpos]] = AssociatedQuandle::encode(x, g, aq->n);
                run(step_idx + 1, first_assign_pending);
                q[v.arcs[st.vpos]] = kUnset;
                return;
            }
            case Plan::Step::check_v: {
                if (vertex_ok(rel->vert[st.rel])) run(step_idx + 1, first_assign_pending);
                return;
            }
        }
    }
};

// connected components of the constraint graph over arcs
std::vector<std::vector<uint32_t>> constraint_components(const Diagram& d, const Relations& rel) {
    uint32_t na = uint32_t(d.arcs.size());
    std::vector<uint32_t> parent(na);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](uint32_t a, uint32_t b) { parent[find(a)] = find(b); };
    for (auto& c : rel.cross) {
        unite(c.chi1, c.chi2);
        unite(c.chi1, c.over);
    }
    for (auto& v : rel.vert) {
        unite(v.arcs[0], v.arcs[1]);
        unite(v.arcs[0], v.arcs[2]);
    }
    std::map<uint32_t, std::vector<uint32_t>> groups;
    for (uint32_t a = 0; a < na; ++a) groups[find(a)].push_back(a);
    std::vector<std::vector<uint32_t>> out;
    for (auto& [root, arcs] : groups) out.push_back(arcs);
    return out;
}

BigUint count_with_plan(const Relations& rel, const FiniteGroup& grp, const AssociatedQuandle& aq,
                        const Plan& plan, uint32_t total_arcs, unsigned workers) {
    uint32_t qsize = aq.size;
    bool has_assign = false;
    for (auto& s : plan.steps)
        if (s.kind == Plan::Step::assign) has_assign = true;
    if (workers <= 1 || !has_assign) {
        Engine e{&rel, &grp, &aq, &plan, qsize, std::vector<uint32_t>(total_arcs, kUnset)};
        e.run(0, true);
        return BigUint(e.leaves);
    }
    unsigned w = std::min<unsigned>(workers, qsize);
    std::vector<Engine> engines;
    engines.reserve(w);
    for (unsigned i = 0; i < w; ++i)
        engines.push_back(
            {&rel, &grp, &aq, &plan, qsize, std::vector<uint32_t>(total_arcs, kUnset)});
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < w; ++i) {
        engines[i].split_lo = i;
        engines[i].split_stride = w;
        threads.emplace_back([&engines, i] { engines[i].run(0, true); });
    }
    for (auto& t : threads) t.join();
    BigUint total;
    for (auto& e : engines) total += BigUint(e.leaves);
    return total;
}

}  // namespace

BigUint count_colorings(const Diagram& d, const GFamily& fam, unsigned workers) {
    Relations rel = relations_of(d);
    AssociatedQuandle aq = make_associated_quandle(fam);
    BigUint total(1);
    for (auto& comp : constraint_components(d, rel)) {
        Plan plan = make_plan(rel, comp, uint32_t(d.arcs.size()));
        total *= count_with_plan(rel, fam.group, aq, plan, uint32_t(d.arcs.size()), workers);
    }
    return total;
}

void for_each_coloring(const Diagram& d, const GFamily& fam,
                       const std::function<void(const std::vector<uint32_t>&)>& fn) {
    Relations rel = relations_of(d);
    AssociatedQuandle aq = make_associated_quandle(fam);
    std::vector<uint32_t> all(d.arcs.size());
    std::iota(all.begin(), all.end(), 0);
    Plan plan = make_plan(rel, all, uint32_t(d.arcs.size()));
    Engine e{&rel, &fam.group, &aq, &plan, aq.size, std::vector<uint32_t>(d.arcs.size(), kUnset)};
    e.sink = &fn;
    e.run(0, true);
}

// ---------------------------------------------------------------------------
// shadow colorings

namespace {

struct RegionPlan {
    // propagation order: (region, edge, apply_forward) with forward meaning
    // child = left side of the edge
    struct TreeStep {
        uint32_t region;
        uint32_t edge;
        bool forward;
    };
    std::vector<TreeStep> tree;
    std::vector<uint32_t> checks;  // non-tree edge indices
    uint32_t region_count = 0;
    uint32_t root = 0;
};

RegionPlan make_region_plan(const Topology& t) {
    RegionPlan rp;
    rp.region_count = t.region_count;
    rp.root = t.ambient_region;
    std::vector<bool> seen(t.region_count, false);
    seen[rp.root] = true;
    std::vector<char> used(t.region_edges.size(), 0);
    std::vector<uint32_t> frontier{rp.root};
    while (!frontier.empty()) {
        std::vector<uint32_t> next;
        for (uint32_t r : frontier) {
            for (uint32_t e = 0; e < t.region_edges.size(); ++e) {
                if (used[e]) continue;
                const RegionEdge& re = t.region_edges[e];
                if (re.right_region == r && !seen[re.left_region]) {
                    used[e] = 1;
                    seen[re.left_region] = true;
                    rp.tree.push_back({re.left_region, e, true});
                    next.push_back(re.left_region);
                } else if (re.left_region == r && !seen[re.right_region]) {
                    used[e] = 1;
                    seen[re.right_region] = true;
                    rp.tree.push_back({re.right_region, e, false});
                    next.push_back(re.right_region);
                }
            }
        }
        frontier = std::move(next);
    }
    for (uint32_t e = 0; e < t.region_edges.size(); ++e)
        if (!used[e]) rp.checks.push_back(e);
    return rp;
}

struct ShadowCtx {
    Topology topo;
    RegionPlan rp;
    const GFamily* fam;
    const XSet* s;
    uint32_t n;  // |G|

    uint32_t act(uint32_t y, uint32_t q) const { return s->apply(q % n, y, q / n); }
    uint32_t act_inv(uint32_t y, uint32_t q) const {
        return s->apply(fam->group.inverse(q % n), y, q / n);
    }

    // propagate regions from a seed; returns false on a failed check
    bool fill(const std::vector<uint32_t>& arc_q, uint32_t seed,
              std::vector<uint32_t>& region_y) const {
        region_y.assign(rp.region_count, 0);
        region_y[rp.root] = seed;
        for (auto& st : rp.tree) {
            const RegionEdge& re = topo.region_edges[st.edge];
            uint32_t q = arc_q[re.arc];
            region_y[st.region] = st.forward ? act(region_y[re.right_region], q)
                                             : act_inv(region_y[re.left_region], q);
        }
        for (uint32_t e : rp.checks) {
            const RegionEdge& re = topo.region_edges[e];
            if (region_y[re.left_region] != act(region_y[re.right_region], arc_q[re.arc]))
                return false;
        }
        return true;
    }
};

}  // namespace

BigUint count_shadow_colorings(const Diagram& d, const GFamily& fam, const XSet& s,
                               unsigned workers) {
    (void)workers;  // region sweep is cheap; enumeration order stays canonical
    ShadowCtx ctx{analyze(d), {}, &fam, &s, fam.group.order};
    ctx.rp = make_region_plan(ctx.topo);
    BigUint total;
    uint64_t chunk = 0;
    std::vector<uint32_t> region_y;
    for_each_coloring(d, fam, [&](const std::vector<uint32_t>& q) {
        for (uint32_t seed = 0; seed < s.size; ++seed)
            if (ctx.fill(q, seed, region_y)) ++chunk;
    });
    total += BigUint(chunk);
    return total;
}

void for_each_shadow_coloring(const Diagram& d, const GFamily& fam, const XSet& s,
                              const std::function<void(const Coloring&)>& fn) {
    ShadowCtx ctx{analyze(d), {}, &fam, &s, fam.group.order};
    ctx.rp = make_region_plan(ctx.topo);
    Coloring col;
    for_each_coloring(d, fam, [&](const std::vector<uint32_t>& q) {
        for (uint32_t seed = 0; seed < s.size; ++seed)
            if (ctx.fill(q, seed, col.region_y)) {
                col.arc_q = q;
                fn(col);
            }
    });
}

Report validate_coloring(const Diagram& d, const GFamily& fam, const XSet* s, const Coloring& c) {
    Report rep;
    AssociatedQuandle aq = make_associated_quandle(fam);
    if (c.arc_q.size() != d.arcs.size()) {
        rep.push_back({"structure", "arc color count mismatch"});
        return rep;
    }
    for (uint32_t q : c.arc_q)
        if (q >= aq.size) {
            rep.push_back({"structure", "arc color out of range"});
            return rep;
        }
    Relations rel = relations_of(d);
    for (auto& cr : rel.cross)
        if (c.arc_q[cr.chi2] != aq.apply(c.arc_q[cr.chi1], c.arc_q[cr.over]))
            rep.push_back({"crossing", "at crossing " + std::to_string(cr.id)});
    for (auto& v : rel.vert) {
        Engine probe{&rel, &fam.group, &aq, nullptr, aq.size, c.arc_q};
        if (!probe.vertex_ok(v)) rep.push_back({"vertex", "at vertex " + std::to_string(v.id)});
    }
    if (s != nullptr) {
        Topology t = analyze(d);
        if (c.region_y.size() != t.region_count) {
            rep.push_back({"structure", "region color count mismatch"});
            return rep;
        }
        for (uint32_t y : c.region_y)
            if (y >= s->size) {
                rep.push_back({"structure", "region color out of range"});
                return rep;
            }
        ShadowCtx ctx{std::move(t), {}, &fam, s, fam.group.order};
        for (uint32_t e = 0; e < ctx.topo.region_edges.size(); ++e) {
            const RegionEdge& re = ctx.topo.region_edges[e];
            if (c.region_y[re.left_region] != ctx.act(c.region_y[re.right_region], c.arc_q[re.arc]))
                rep.push_back({"region", "across arc " + std::to_string(re.arc)});
        }
    }
    return rep;
}

WeightSum weight_sum(const Diagram& d, const GFamily& fam, const XSet& s, const Cochain2& theta,
                     const Coloring& c) {
    Report rep = validate_coloring(d, fam, &s, c);
    if (!rep.empty()) throw std::invalid_argument("invalid coloring: " + rep.front().to_string());
    Topology t = analyze(d);
    WeightSum out;
    out.value = 0;
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& cr = d.crossings[i];
        uint32_t chi1 = cr.under_in_slot == 1 ? cr.under_in : cr.under_out;
        PerCrossingWeight w;
        w.crossing = i;
        w.sign = cr.sign();
        w.y = c.region_y[t.crossing_source_region[i]];
        w.q1 = c.arc_q[chi1];
        w.q3 = c.arc_q[cr.over];
        out.per_crossing.push_back(w);
        int64_t v = theta.value(w.y, w.q1, w.q3);
        out.value = theta.coeffs.add(out.value, w.sign > 0 ? v : theta.coeffs.neg(v));
    }
    return out;
}

std::map<int64_t, BigUint> phi_theta(const Diagram& d, const GFamily& fam, const XSet& s,
                                     const Cochain2& theta, unsigned workers) {
    (void)workers;
    ShadowCtx ctx{analyze(d), {}, &fam, &s, fam.group.order};
    ctx.rp = make_region_plan(ctx.topo);

    // per-crossing weight inputs
    struct WInput {
        uint32_t region, chi1, over;
        int sign;
    };
    std::vector<WInput> win;
    for (uint32_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& cr = d.crossings[i];
        uint32_t chi1 = cr.under_in_slot == 1 ? cr.under_in : cr.under_out;
        win.push_back({ctx.topo.crossing_source_region[i], chi1, cr.over, cr.sign()});
    }

    std::map<int64_t, uint64_t> acc;
    std::vector<uint32_t> region_y;
    for_each_coloring(d, fam, [&](const std::vector<uint32_t>& q) {
        for (uint32_t seed = 0; seed < s.size; ++seed) {
            if (!ctx.fill(q, seed, region_y)) continue;
            int64_t w = 0;
            for (auto& wi : win) {
                int64_t v = theta.value(region_y[wi.region], q[wi.chi1], q[wi.over]);
                w = theta.coeffs.add(w, wi.sign > 0 ? v : theta.coeffs.neg(v));
            }
            acc[w]++;
        }
    });
    std::map<int64_t, BigUint> out;
    for (auto& [k, v] : acc) out[k] = BigUint(v);
    return out;
}

}  // namespace hlinv
