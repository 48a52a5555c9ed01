// hlinv: coloring-count invariants of handlebody-links and closed surfaces
// presented by trivalent spatial graph diagrams.
//
// Exit codes: 0 success, 1 validation failure, 2 parse error, 3 usage error.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hlinv/algebra.hpp"
#include "hlinv/coloring.hpp"
#include "hlinv/diagram.hpp"
#include "hlinv/invariant.hpp"
#include "hlinv/moves.hpp"

using namespace hlinv;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GFamily family_from(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_family(in);
}

XSet xset_from(const std::string& path, const GFamily& fam) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_xset(in, fam);
}

Cochain2 cochain_from(const std::string& path, const GFamily& fam, const XSet& s) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_cochain(in, fam, s);
}

// parse + structural validation; prints diagnostics and throws on failure
struct Validated {};
Diagram diagram_from(const std::string& path, const std::string& ambient) {
    Diagram d = parse_diagram(slurp(path));
    d.ambient = ambient == "plane" ? Ambient::plane : Ambient::sphere;
    Report rep = validate_diagram(d);
    if (!rep.empty()) {
        for (auto& v : rep) std::cout << v.to_string() << "\n";
        throw Validated{};
    }
    return d;
}

GFamily validated_family(const std::string& path) {
    GFamily f = family_from(path);
    Report rep = verify_group(f.group);
    Report frep = verify_gfamily(f);
    rep.insert(rep.end(), frep.begin(), frep.end());
    if (!rep.empty()) {
        for (auto& v : rep) std::cout << v.to_string() << "\n";
        throw Validated{};
    }
    return f;
}

void dump_colorings(const Diagram& d, const GFamily& fam, const XSet* s) {
    const uint32_t n = fam.group.order;
    std::vector<Coloring> all;
    if (s == nullptr) {
        for_each_coloring(d, fam, [&](const std::vector<uint32_t>& q) {
            all.push_back({q, {}});
        });
    } else {
        for_each_shadow_coloring(d, fam, *s, [&](const Coloring& c) { all.push_back(c); });
    }
    std::sort(all.begin(), all.end(), [](const Coloring& a, const Coloring& b) {
        if (a.arc_q != b.arc_q) return a.arc_q < b.arc_q;
        return a.region_y < b.region_y;
    });
    for (auto& c : all) {
        std::cout << "\n";
        for (uint32_t a = 0; a < c.arc_q.size(); ++a)
            std::cout << "arc " << a << " = (" << c.arc_q[a] / n << "," << c.arc_q[a] % n
                      << ")\n";
        for (uint32_t r = 0; r < c.region_y.size(); ++r)
            std::cout << "region " << r << " = " << c.region_y[r] << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"handlebody-link coloring invariants"};
    app.require_subcommand(1);

    std::string family_path, diagram_path, dv_path, dw_path, xset_path, cochain_path;
    std::string ambient = "sphere";
    unsigned workers = 1;
    bool dump = false;

    auto add_common = [&](CLI::App* cmd, bool needs_family) {
        if (needs_family)
            cmd->add_option("--family", family_path, "family file")->required();
        cmd->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));
        cmd->add_option("--workers", workers, "worker count (results identical)");
    };

    auto* c_valf = app.add_subcommand("validate-family", "check family axioms");
    std::string valf_path;
    c_valf->add_option("file", valf_path)->required();

    auto* c_vald = app.add_subcommand("validate-diagram", "check diagram structure");
    std::string vald_path;
    c_vald->add_option("file", vald_path)->required();
    c_vald->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));

    auto* c_col = app.add_subcommand("colorings", "count X-colorings");
    add_common(c_col, true);
    c_col->add_option("--diagram", diagram_path)->required();
    c_col->add_flag("--dump-colorings", dump);

    auto* c_shadow = app.add_subcommand("shadow-colorings", "count X_Y-colorings");
    add_common(c_shadow, true);
    c_shadow->add_option("--diagram", diagram_path)->required();
    c_shadow->add_option("--xset", xset_path)->required();
    c_shadow->add_flag("--dump-colorings", dump);

    auto* c_pair = app.add_subcommand("surface-pair", "normalized unordered pair");
    add_common(c_pair, true);
    c_pair->add_option("--dv", dv_path)->required();
    c_pair->add_option("--dw", dw_path)->required();

    auto* c_link = app.add_subcommand("link-invariant", "normalized 2-component count");
    add_common(c_link, true);
    c_link->add_option("--diagram", diagram_path)->required();

    auto* c_coc = app.add_subcommand("cocycle-invariant", "normalized weight multiset");
    add_common(c_coc, true);
    c_coc->add_option("--diagram", diagram_path)->required();
    c_coc->add_option("--xset", xset_path)->required();
    c_coc->add_option("--cochain", cochain_path)->required();

    auto* c_lk = app.add_subcommand("linking-number", "half the signed crossing count");
    c_lk->add_option("--diagram", diagram_path)->required();
    c_lk->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));

    auto* c_genus = app.add_subcommand("genus", "genus per component");
    c_genus->add_option("--diagram", diagram_path)->required();
    c_genus->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));

    auto* c_stab = app.add_subcommand("stabilize", "attach an edge and a circle");
    uint32_t arc = 0, seg = 0;
    std::string side = "L";
    c_stab->add_option("--diagram", diagram_path)->required();
    c_stab->add_option("--arc", arc)->required();
    c_stab->add_option("--seg", seg);
    c_stab->add_option("--side", side)->check(CLI::IsMember({"L", "R"}));
    c_stab->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));

    auto* c_move = app.add_subcommand("move", "apply an R1/R2/R3 rewrite");
    std::string mtype;
    uint32_t m_arc = 0, m_seg = 0, m_arc_b = 0, m_seg_b = 0, m_variant = 0;
    std::string m_side = "L", m_side_b = "L", m_over = "a";
    bool m_over_first = false;
    std::vector<uint32_t> m_crossings;
    c_move->add_option("--diagram", diagram_path)->required();
    c_move->add_option("--type", mtype)
        ->required()
        ->check(CLI::IsMember({"R1+", "R1-", "R2+", "R2-", "R3"}));
    c_move->add_option("--arc", m_arc);
    c_move->add_option("--seg", m_seg);
    c_move->add_option("--side", m_side)->check(CLI::IsMember({"L", "R"}));
    c_move->add_flag("--over-first", m_over_first);
    c_move->add_option("--arc-b", m_arc_b);
    c_move->add_option("--seg-b", m_seg_b);
    c_move->add_option("--side-b", m_side_b)->check(CLI::IsMember({"L", "R"}));
    c_move->add_option("--over", m_over)->check(CLI::IsMember({"a", "b"}));
    c_move->add_option("--crossings", m_crossings)->delimiter(',');
    c_move->add_option("--variant", m_variant);
    c_move->add_option("--ambient", ambient)->check(CLI::IsMember({"sphere", "plane"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 3;
    }

    try {
        if (*c_valf) {
            validated_family(valf_path);
            std::cout << "ok\n";
        } else if (*c_vald) {
            diagram_from(vald_path, ambient);
            std::cout << "ok\n";
        } else if (*c_col) {
            GFamily f = validated_family(family_path);
            Diagram d = diagram_from(diagram_path, ambient);
            std::cout << "count " << count_colorings(d, f, workers).to_string() << "\n";
            if (dump) dump_colorings(canonicalize(d), f, nullptr);
        } else if (*c_shadow) {
            GFamily f = validated_family(family_path);
            Diagram d = diagram_from(diagram_path, ambient);
            XSet s = xset_from(xset_path, f);
            Report rep = verify_xset(f, s);
            if (!rep.empty()) {
                for (auto& v : rep) std::cout << v.to_string() << "\n";
                return 1;
            }
            std::cout << "count " << count_shadow_colorings(d, f, s, workers).to_string()
                      << "\n";
            if (dump) dump_colorings(canonicalize(d), f, &s);
        } else if (*c_pair) {
            GFamily f = validated_family(family_path);
            Diagram dv = diagram_from(dv_path, ambient);
            Diagram dw = diagram_from(dw_path, ambient);
            std::cout << surface_pair_invariant(dv, dw, f, workers).to_string() << "\n";
        } else if (*c_link) {
            GFamily f = validated_family(family_path);
            Diagram d = diagram_from(diagram_path, ambient);
            std::cout << "link " << link_invariant(d, f, workers).to_string() << "\n";
        } else if (*c_coc) {
            GFamily f = validated_family(family_path);
            Diagram d = diagram_from(diagram_path, ambient);
            XSet s = xset_from(xset_path, f);
            Report rep = verify_xset(f, s);
            if (!rep.empty()) {
                for (auto& v : rep) std::cout << v.to_string() << "\n";
                return 1;
            }
            Cochain2 theta = cochain_from(cochain_path, f, s);
            std::cout << cocycle_surface_invariant(d, f, s, theta, workers).to_string() << "\n";
        } else if (*c_lk) {
            Diagram d = diagram_from(diagram_path, ambient);
            std::cout << "lk " << linking_number(d) << "\n";
        } else if (*c_genus) {
            Diagram d = diagram_from(diagram_path, ambient);
            ComponentStructure cs = split_components(d);
            for (uint32_t c = 0; c < cs.count; ++c) std::cout << "genus " << cs.genus[c] << "\n";
        } else if (*c_stab) {
            Diagram d = diagram_from(diagram_path, ambient);
            Diagram out;
            try {
                out = stabilize(d, arc, seg, side == "L");
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 3;
            }
            std::cout << serialize_diagram(out);
        } else if (*c_move) {
            Diagram d = diagram_from(diagram_path, ambient);
            MoveSite site;
            site.a = {m_arc, m_seg};
            site.b = {m_arc_b, m_seg_b};
            site.side_a = m_side == "L";
            site.side_b = m_side_b == "L";
            site.over_first = m_over_first;
            site.a_over = m_over == "a";
            site.variant = m_variant;
            if (mtype == "R1+") site.type = MoveType::r1_plus;
            if (mtype == "R1-") site.type = MoveType::r1_minus;
            if (mtype == "R2+") site.type = MoveType::r2_plus;
            if (mtype == "R2-") site.type = MoveType::r2_minus;
            if (mtype == "R3") site.type = MoveType::r3;
            if (site.type == MoveType::r1_minus) {
                if (m_crossings.size() != 1) throw MoveError("R1- needs --crossings <c>");
                site.c1 = m_crossings[0];
            } else if (site.type == MoveType::r2_minus) {
                if (m_crossings.size() != 2) throw MoveError("R2- needs --crossings <c1,c2>");
                site.c1 = m_crossings[0];
                site.c2 = m_crossings[1];
            } else if (site.type == MoveType::r3) {
                if (m_crossings.size() != 3) throw MoveError("R3 needs --crossings <c1,c2,c3>");
                site.c1 = m_crossings[0];
                site.c2 = m_crossings[1];
                site.c3 = m_crossings[2];
            }
            Diagram out;
            try {
                out = apply_move(d, site);
            } catch (const MoveError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 3;
            }
            std::cout << serialize_diagram(out);
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Validated&) {
        return 1;
    } catch (const MoveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cout << "violation " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
