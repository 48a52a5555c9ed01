// Finite algebraic structures as validated lookup tables: groups, G-families
// of quandles, associated quandles, X-sets, abelian coefficient groups and
// 2-cochains. Everything is dense integer-indexed so the enumeration hot loop
// is table lookups only.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace hlinv {

struct Violation {
    std::string rule;    // "structure", "(i)", "(ii)", "(iii)", "assoc", ...
    std::string detail;  // e.g. "at x=0 g=1"
    std::string to_string() const { return "violation " + rule + " " + detail; }
};
using Report = std::vector<Violation>;

class ParseError : public std::exception {
public:
    ParseError(std::string msg, int line) : msg_("parse error"), line_(line) {
        msg_ += " (line " + std::to_string(line) + "): " + msg;
    }
    const char* what() const noexcept override { return msg_.c_str(); }
    int line() const { return line_; }

private:
    std::string msg_;
    int line_;
};

// ---------------------------------------------------------------------------

struct FiniteGroup {
    uint32_t order = 0;
    std::vector<uint32_t> mul;  // mul[a*order + b]
    uint32_t identity = 0;
    std::vector<uint32_t> inv;

    uint32_t times(uint32_t a, uint32_t b) const { return mul[a * order + b]; }
    uint32_t inverse(uint32_t a) const { return inv[a]; }
    // g^e for e in {-1,0,1,...}; negative exponents via inverse
    uint32_t power(uint32_t g, int e) const;

    static FiniteGroup cyclic(uint32_t n);
    // derives inv from mul and identity; throws if not a group on that axis
    static FiniteGroup from_mul_table(uint32_t n, std::vector<uint32_t> mul, uint32_t identity);
};

Report verify_group(const FiniteGroup& g);

struct GFamily {
    FiniteGroup group;
    uint32_t carrier = 0;       // m = |X|
    std::vector<uint32_t> op;   // op[(g*m + x)*m + y] = x *_g y

    uint32_t apply(uint32_t g, uint32_t x, uint32_t y) const {
        return op[(g * carrier + x) * carrier + y];
    }
};

Report verify_gfamily(const GFamily& f);

// X = Z/m with x *_0 y = x and x *_1 y = 2y - x, G = Z/2.  m odd >= 3.
GFamily make_dihedral_family(uint32_t m);

// Q = X x G, (x,g)*(y,h) = (x *_h y, h^-1 g h), elements encoded x*|G| + g.
struct AssociatedQuandle {
    uint32_t m = 0, n = 0;      // |X|, |G|
    uint32_t size = 0;          // m*n
    std::vector<uint32_t> op;   // op[q1*size + q2]

    uint32_t apply(uint32_t q1, uint32_t q2) const { return op[q1 * size + q2]; }
    // solve a * b = c for a given b, c (right translations are bijections)
    uint32_t unapply(uint32_t c, uint32_t b) const { return inv_op[c * size + b]; }
    std::vector<uint32_t> inv_op;

    static uint32_t encode(uint32_t x, uint32_t g, uint32_t n) { return x * n + g; }
    uint32_t x_of(uint32_t q) const { return q / n; }
    uint32_t g_of(uint32_t q) const { return q % n; }
};

AssociatedQuandle make_associated_quandle(const GFamily& f);

// idempotence / right-invertibility / self-distributivity on a raw table
Report verify_quandle_table(uint32_t size, const std::vector<uint32_t>& op);

struct XSet {
    uint32_t size = 0;           // |Y|
    std::vector<uint32_t> bar;   // bar[(g*size + y)*m + x] = y bar*_g x
    uint32_t m = 0;              // carrier size of the family it acts for

    uint32_t apply(uint32_t g, uint32_t y, uint32_t x) const {
        return bar[(g * size + y) * m + x];
    }
    // y * (x,g) with q encoded as x*n+g
    uint32_t act(uint32_t y, uint32_t q, uint32_t n) const {
        return apply(q % n, y, q / n);
    }
};

Report verify_xset(const GFamily& f, const XSet& s);
XSet make_self_xset(const GFamily& f);
XSet make_singleton_xset(const GFamily& f);

// ---------------------------------------------------------------------------

struct AbelianCoefficients {
    bool is_cyclic = true;
    int64_t modulus = 0;  // k for Z/kZ; ignored for Z

    int64_t normalize(int64_t v) const {
        if (!is_cyclic) return v;
        int64_t r = v % modulus;
        return r < 0 ? r + modulus : r;
    }
    int64_t add(int64_t a, int64_t b) const { return normalize(a + b); }
    int64_t neg(int64_t a) const { return normalize(-a); }

    static AbelianCoefficients cyclic(int64_t k) { return {true, k}; }
    static AbelianCoefficients integers() { return {false, 0}; }
};

struct Cochain2 {
    AbelianCoefficients coeffs;
    uint32_t ysize = 0;  // |Y|
    uint32_t qsize = 0;  // |Q| = m*n
    std::unordered_map<uint64_t, int64_t> table;  // missing entries are zero

    static uint64_t key(uint32_t y, uint32_t q1, uint32_t q2, uint32_t qsize) {
        return (uint64_t(y) * qsize + q1) * qsize + q2;
    }
    int64_t value(uint32_t y, uint32_t q1, uint32_t q2) const {
        auto it = table.find(key(y, q1, q2, qsize));
        return it == table.end() ? 0 : it->second;
    }
    void set(uint32_t y, uint32_t q1, uint32_t q2, int64_t v) {
        v = coeffs.normalize(v);
        if (v == 0)
            table.erase(key(y, q1, q2, qsize));
        else
            table[key(y, q1, q2, qsize)] = v;
    }

    static Cochain2 zero(const AbelianCoefficients& a, uint32_t ysize, uint32_t qsize) {
        return Cochain2{a, ysize, qsize, {}};
    }
};

// ---------------------------------------------------------------------------
// text formats (see README): "gfamily m n", "xset |Y|", "cochain2 coeff <k|Z>"

GFamily load_family(std::istream& in);
std::string save_family(const GFamily& f);
XSet load_xset(std::istream& in, const GFamily& f);
Cochain2 load_cochain(std::istream& in, const GFamily& f, const XSet& s);
std::string save_cochain(const Cochain2& c);

}  // namespace hlinv
