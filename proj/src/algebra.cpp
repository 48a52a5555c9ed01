#include "hlinv/algebra.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace hlinv {

namespace {

std::string tup(std::initializer_list<std::pair<const char*, uint32_t>> vals) {
    std::string out = "at";
    for (auto& [k, v] : vals) out += std::string(" ") + k + "=" + std::to_string(v);
    return out;
}

}  // namespace

uint32_t FiniteGroup::power(uint32_t g, int e) const {
    uint32_t base = e < 0 ? inverse(g) : g;
    uint32_t k = e < 0 ? -e : e;
    uint32_t out = identity;
    for (uint32_t i = 0; i < k; ++i) out = times(out, base);
    return out;
}

FiniteGroup FiniteGroup::cyclic(uint32_t n) {
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.mul.resize(n * n);
    g.inv.resize(n);
    for (uint32_t a = 0; a < n; ++a) {
        g.inv[a] = (n - a) % n;
        for (uint32_t b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
    }
    return g;
}

FiniteGroup FiniteGroup::from_mul_table(uint32_t n, std::vector<uint32_t> mul, uint32_t identity) {
    FiniteGroup g;
    g.order = n;
    g.mul = std::move(mul);
    g.identity = identity;
    if (g.mul.size() != size_t(n) * n) throw std::invalid_argument("group table size");
    g.inv.assign(n, 0);
    for (uint32_t a = 0; a < n; ++a) {
        bool found = false;
        for (uint32_t b = 0; b < n; ++b) {
            if (g.mul[a * n + b] >= n) throw std::invalid_argument("group table entry out of range");
            if (g.mul[a * n + b] == identity && g.mul[b * n + a] == identity) {
                g.inv[a] = b;
                found = true;
            }
        }
        if (!found) throw std::invalid_argument("element without two-sided inverse");
    }
    return g;
}

Report verify_group(const FiniteGroup& g) {
    Report rep;
    const uint32_t n = g.order;
    if (n == 0 || g.mul.size() != size_t(n) * n || g.inv.size() != n || g.identity >= n) {
        rep.push_back({"structure", "dimension mismatch"});
        return rep;
    }
    for (size_t i = 0; i < g.mul.size(); ++i) {
        if (g.mul[i] >= n) {
            rep.push_back({"structure", "mul entry out of range at index " + std::to_string(i)});
            return rep;
        }
    }
    for (uint32_t a = 0; a < n; ++a) {
        if (g.inv[a] >= n) {
            rep.push_back({"structure", "inv entry out of range " + tup({{"a", a}})});
            return rep;
        }
    }
    for (uint32_t a = 0; a < n; ++a) {
        if (g.times(g.identity, a) != a || g.times(a, g.identity) != a)
            rep.push_back({"identity", tup({{"a", a}})});
        if (g.times(a, g.inv[a]) != g.identity || g.times(g.inv[a], a) != g.identity)
            rep.push_back({"inverse", tup({{"a", a}})});
    }
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            for (uint32_t c = 0; c < n; ++c)
                if (g.times(g.times(a, b), c) != g.times(a, g.times(b, c)))
                    rep.push_back({"assoc", tup({{"a", a}, {"b", b}, {"c", c}})});
    return rep;
}

Report verify_gfamily(const GFamily& f) {
    Report rep;
    const uint32_t m = f.carrier, n = f.group.order;
    if (m == 0 || f.op.size() != size_t(n) * m * m) {
        rep.push_back({"structure", "dimension mismatch"});
        return rep;
    }
    for (size_t i = 0; i < f.op.size(); ++i) {
        if (f.op[i] >= m) {
            rep.push_back({"structure", "op entry out of range at index " + std::to_string(i)});
            return rep;
        }
    }
    const uint32_t e = f.group.identity;
    // (i) idempotence
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t x = 0; x < m; ++x)
            if (f.apply(g, x, x) != x) rep.push_back({"(i)", tup({{"x", x}, {"g", g}})});
    // (ii) exponent law and identity action
    for (uint32_t x = 0; x < m; ++x)
        for (uint32_t y = 0; y < m; ++y) {
            if (f.apply(e, x, y) != x) rep.push_back({"(ii)", tup({{"x", x}, {"y", y}, {"g", e}})});
            for (uint32_t g = 0; g < n; ++g)
                for (uint32_t h = 0; h < n; ++h)
                    if (f.apply(f.group.times(g, h), x, y) != f.apply(h, f.apply(g, x, y), y))
                        rep.push_back({"(ii)", tup({{"x", x}, {"y", y}, {"g", g}, {"h", h}})});
        }
    // (iii) twisted distributivity
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t h = 0; h < n; ++h) {
            uint32_t conj = f.group.times(f.group.times(f.group.inverse(h), g), h);
            for (uint32_t x = 0; x < m; ++x)
                for (uint32_t y = 0; y < m; ++y)
                    for (uint32_t z = 0; z < m; ++z)
                        if (f.apply(h, f.apply(g, x, y), z) !=
                            f.apply(conj, f.apply(h, x, z), f.apply(h, y, z)))
                            rep.push_back({"(iii)",
                                           tup({{"x", x}, {"y", y}, {"z", z}, {"g", g}, {"h", h}})});
        }
    // right translations bijective in the first argument
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t y = 0; y < m; ++y) {
            std::vector<bool> seen(m, false);
            for (uint32_t x = 0; x < m; ++x) seen[f.apply(g, x, y)] = true;
            for (uint32_t v = 0; v < m; ++v)
                if (!seen[v]) {
                    rep.push_back({"bijective", tup({{"g", g}, {"y", y}})});
                    break;
                }
        }
    return rep;
}

GFamily make_dihedral_family(uint32_t m) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("dihedral family needs odd m >= 3");
    GFamily f;
    f.group = FiniteGroup::cyclic(2);
    f.carrier = m;
    f.op.resize(2 * m * m);
    for (uint32_t x = 0; x < m; ++x)
        for (uint32_t y = 0; y < m; ++y) {
            f.op[(0 * m + x) * m + y] = x;
            f.op[(1 * m + x) * m + y] = (2 * y + m - x % m) % m;
        }
    return f;
}

AssociatedQuandle make_associated_quandle(const GFamily& f) {
    AssociatedQuandle q;
    q.m = f.carrier;
    q.n = f.group.order;
    q.size = q.m * q.n;
    q.op.resize(size_t(q.size) * q.size);
    q.inv_op.assign(size_t(q.size) * q.size, 0);
    for (uint32_t x = 0; x < q.m; ++x)
        for (uint32_t g = 0; g < q.n; ++g)
            for (uint32_t y = 0; y < q.m; ++y)
                for (uint32_t h = 0; h < q.n; ++h) {
                    uint32_t a = AssociatedQuandle::encode(x, g, q.n);
                    uint32_t b = AssociatedQuandle::encode(y, h, q.n);
                    uint32_t conj = f.group.times(f.group.times(f.group.inverse(h), g), h);
                    uint32_t r = AssociatedQuandle::encode(f.apply(h, x, y), conj, q.n);
                    q.op[a * q.size + b] = r;
                    q.inv_op[r * q.size + b] = a;
                }
    return q;
}

Report verify_quandle_table(uint32_t size, const std::vector<uint32_t>& op) {
    Report rep;
    if (op.size() != size_t(size) * size) {
        rep.push_back({"structure", "dimension mismatch"});
        return rep;
    }
    auto at = [&](uint32_t a, uint32_t b) { return op[a * size + b]; };
    for (uint32_t a = 0; a < size; ++a)
        if (at(a, a) != a) rep.push_back({"(i)", tup({{"q", a}})});
    for (uint32_t b = 0; b < size; ++b) {
        std::vector<bool> seen(size, false);
        for (uint32_t a = 0; a < size; ++a) seen[at(a, b)] = true;
        for (uint32_t v = 0; v < size; ++v)
            if (!seen[v]) {
                rep.push_back({"(ii)", tup({{"q", b}})});
                break;
            }
    }
    for (uint32_t a = 0; a < size; ++a)
        for (uint32_t b = 0; b < size; ++b)
            for (uint32_t c = 0; c < size; ++c)
                if (at(at(a, b), c) != at(at(a, c), at(b, c)))
                    rep.push_back({"(iii)", tup({{"a", a}, {"b", b}, {"c", c}})});
    return rep;
}

Report verify_xset(const GFamily& f, const XSet& s) {
    Report rep;
    const uint32_t m = f.carrier, n = f.group.order, k = s.size;
    if (k == 0 || s.m != m || s.bar.size() != size_t(n) * k * m) {
        rep.push_back({"structure", "dimension mismatch"});
        return rep;
    }
    for (size_t i = 0; i < s.bar.size(); ++i)
        if (s.bar[i] >= k) {
            rep.push_back({"structure", "bar entry out of range at index " + std::to_string(i)});
            return rep;
        }
    const uint32_t e = f.group.identity;
    // (i)
    for (uint32_t y = 0; y < k; ++y)
        for (uint32_t x = 0; x < m; ++x) {
            if (s.apply(e, y, x) != y) rep.push_back({"(i)", tup({{"y", y}, {"x", x}, {"g", e}})});
            for (uint32_t g = 0; g < n; ++g)
                for (uint32_t h = 0; h < n; ++h)
                    if (s.apply(f.group.times(g, h), y, x) != s.apply(h, s.apply(g, y, x), x))
                        rep.push_back({"(i)", tup({{"y", y}, {"x", x}, {"g", g}, {"h", h}})});
        }
    // (ii)
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t h = 0; h < n; ++h) {
            uint32_t conj = f.group.times(f.group.times(f.group.inverse(h), g), h);
            for (uint32_t y = 0; y < k; ++y)
                for (uint32_t x = 0; x < m; ++x)
                    for (uint32_t x2 = 0; x2 < m; ++x2)
                        if (s.apply(h, s.apply(g, y, x), x2) !=
                            s.apply(conj, s.apply(h, y, x2), f.apply(h, x, x2)))
                            rep.push_back({"(ii)",
                                           tup({{"y", y}, {"x", x}, {"x'", x2}, {"g", g}, {"h", h}})});
        }
    return rep;
}

XSet make_self_xset(const GFamily& f) {
    XSet s;
    s.size = f.carrier;
    s.m = f.carrier;
    s.bar = f.op;  // same indexing: (g*m + y)*m + x -> y *_g x
    return s;
}

XSet make_singleton_xset(const GFamily& f) {
    XSet s;
    s.size = 1;
    s.m = f.carrier;
    s.bar.assign(size_t(f.group.order) * f.carrier, 0);
    return s;
}

// --------------------------------------------------------------------------
// file formats

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // next non-empty, non-comment line
    bool next(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            size_t h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            size_t a = line.find_first_not_of(" \t\r\n");
            if (a == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    }
    int lineno() const { return lineno_; }

private:
    std::istream& in_;
    int lineno_ = 0;
};

std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<long long> out;
    long long v;
    while (ss >> v) out.push_back(v);
    std::string junk;
    ss.clear();
    if (ss >> junk) throw ParseError("unexpected token '" + junk + "'", lineno);
    return out;
}

std::vector<uint32_t> read_row(LineReader& r, size_t want, uint32_t bound, const char* what) {
    std::string line;
    if (!r.next(line)) throw ParseError(std::string("missing ") + what + " row", r.lineno());
    auto vals = parse_ints(line, r.lineno());
    if (vals.size() != want)
        throw ParseError(std::string("expected ") + std::to_string(want) + " integers for " + what,
                         r.lineno());
    std::vector<uint32_t> out;
    for (long long v : vals) {
        if (v < 0 || uint64_t(v) >= bound)
            throw ParseError(std::string(what) + " entry out of range", r.lineno());
        out.push_back(uint32_t(v));
    }
    return out;
}

}  // namespace

GFamily load_family(std::istream& in) {
    LineReader r(in);
    std::string line;
    if (!r.next(line)) throw ParseError("empty family file", 1);
    std::istringstream head(line);
    std::string tag;
    long long m = 0, n = 0;
    head >> tag >> m >> n;
    if (tag != "gfamily" || m <= 0 || n <= 0)
        throw ParseError("expected header 'gfamily m n'", r.lineno());

    std::vector<uint32_t> mul;
    for (long long i = 0; i < n; ++i) {
        auto row = read_row(r, size_t(n), uint32_t(n), "group table");
        mul.insert(mul.end(), row.begin(), row.end());
    }
    auto idrow = read_row(r, 1, uint32_t(n), "identity");
    FiniteGroup group;
    try {
        group = FiniteGroup::from_mul_table(uint32_t(n), std::move(mul), idrow[0]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), r.lineno());
    }

    GFamily f;
    f.group = std::move(group);
    f.carrier = uint32_t(m);
    for (long long g = 0; g < n; ++g)
        for (long long x = 0; x < m; ++x) {
            auto row = read_row(r, size_t(m), uint32_t(m), "family table");
            f.op.insert(f.op.end(), row.begin(), row.end());
        }
    if (r.next(line)) throw ParseError("trailing content", r.lineno());
    return f;
}

std::string save_family(const GFamily& f) {
    std::ostringstream out;
    const uint32_t m = f.carrier, n = f.group.order;
    out << "gfamily " << m << " " << n << "\n";
    for (uint32_t a = 0; a < n; ++a) {
        for (uint32_t b = 0; b < n; ++b) out << (b ? " " : "") << f.group.times(a, b);
        out << "\n";
    }
    out << f.group.identity << "\n";
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t x = 0; x < m; ++x) {
            for (uint32_t y = 0; y < m; ++y) out << (y ? " " : "") << f.apply(g, x, y);
            out << "\n";
        }
    return out.str();
}

XSet load_xset(std::istream& in, const GFamily& f) {
    LineReader r(in);
    std::string line;
    if (!r.next(line)) throw ParseError("empty xset file", 1);
    std::istringstream head(line);
    std::string tag;
    long long k = 0;
    head >> tag >> k;
    if (tag != "xset" || k <= 0) throw ParseError("expected header 'xset |Y|'", r.lineno());
    XSet s;
    s.size = uint32_t(k);
    s.m = f.carrier;
    for (uint32_t g = 0; g < f.group.order; ++g)
        for (long long y = 0; y < k; ++y) {
            auto row = read_row(r, f.carrier, uint32_t(k), "xset table");
            s.bar.insert(s.bar.end(), row.begin(), row.end());
        }
    if (r.next(line)) throw ParseError("trailing content", r.lineno());
    return s;
}

Cochain2 load_cochain(std::istream& in, const GFamily& f, const XSet& s) {
    LineReader r(in);
    std::string line;
    if (!r.next(line)) throw ParseError("empty cochain file", 1);
    std::istringstream head(line);
    std::string tag, coeff, spec;
    head >> tag >> coeff >> spec;
    if (tag != "cochain2" || coeff != "coeff" || spec.empty())
        throw ParseError("expected header 'cochain2 coeff <k|Z>'", r.lineno());
    AbelianCoefficients a;
    if (spec == "Z" || spec == "z") {
        a = AbelianCoefficients::integers();
    } else {
        long long k = 0;
        try {
            k = std::stoll(spec);
        } catch (...) {
            throw ParseError("bad coefficient spec '" + spec + "'", r.lineno());
        }
        if (k < 2) throw ParseError("cyclic coefficient order must be >= 2", r.lineno());
        a = AbelianCoefficients::cyclic(k);
    }
    const uint32_t qsize = f.carrier * f.group.order;
    Cochain2 c = Cochain2::zero(a, s.size, qsize);
    while (r.next(line)) {
        auto vals = parse_ints(line, r.lineno());
        if (vals.size() != 4) throw ParseError("expected 'y q1 q2 value'", r.lineno());
        if (vals[0] < 0 || vals[0] >= s.size || vals[1] < 0 || uint64_t(vals[1]) >= qsize ||
            vals[2] < 0 || uint64_t(vals[2]) >= qsize)
            throw ParseError("cochain index out of range", r.lineno());
        c.set(uint32_t(vals[0]), uint32_t(vals[1]), uint32_t(vals[2]), vals[3]);
    }
    return c;
}

std::string save_cochain(const Cochain2& c) {
    std::ostringstream out;
    out << "cochain2 coeff ";
    if (c.coeffs.is_cyclic)
        out << c.coeffs.modulus;
    else
        out << "Z";
    out << "\n";
    // deterministic order
    std::vector<uint64_t> keys;
    keys.reserve(c.table.size());
    for (auto& [k, v] : c.table) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (uint64_t k : keys) {
        uint32_t q2 = uint32_t(k % c.qsize);
        uint32_t q1 = uint32_t((k / c.qsize) % c.qsize);
        uint32_t y = uint32_t(k / c.qsize / c.qsize);
        out << y << " " << q1 << " " << q2 << " " << c.table.at(k) << "\n";
    }
    return out.str();
}

}  // namespace hlinv
