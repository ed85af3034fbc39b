#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmpairs {

// ---------------------------------------------------------------- errors

class AlgebraError : public std::runtime_error {
public:
    AlgebraError(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg)
{
    throw AlgebraError(code, msg);
}

// ---------------------------------------------------------------- prime field

/// Arithmetic in GF(p) for a word-sized prime p. Elements are plain
/// uint32_t values in [0, p).
struct GF {
    uint32_t p = 32003;

    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const
    {
        return static_cast<uint32_t>(uint64_t(a) * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const
    {
        uint32_t r = 1 % p;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint32_t inv(uint32_t a) const
    {
        if (a == 0)
            fail("DivisionByZero", "inverse of 0 in GF(" + std::to_string(p) + ")");
        return pow(a, p - 2);
    }
    uint32_t of_int(long long v) const
    {
        long long r = v % static_cast<long long>(p);
        if (r < 0)
            r += p;
        return static_cast<uint32_t>(r);
    }

    static bool is_prime(uint64_t n);
};

// ---------------------------------------------------------------- monomials

struct Monomial {
    std::vector<int> e;

    static Monomial one(int n) { return Monomial{std::vector<int>(n, 0)}; }
    int nvars() const { return static_cast<int>(e.size()); }
    bool is_one() const
    {
        for (int x : e)
            if (x)
                return false;
        return true;
    }
    int total_degree() const
    {
        int s = 0;
        for (int x : e)
            s += x;
        return s;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator<(const Monomial& o) const { return e < o.e; } // container order only
};

Monomial mul(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b); // a | b
Monomial div(const Monomial& b, const Monomial& a); // b / a, requires a | b
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

// ---------------------------------------------------------------- degrees

/// A multidegree: length n in fine mode, length 1 in coarse mode.
struct Degree {
    std::vector<int> v;

    int len() const { return static_cast<int>(v.size()); }
    bool operator==(const Degree& o) const { return v == o.v; }
    bool operator!=(const Degree& o) const { return v != o.v; }
    bool operator<(const Degree& o) const { return v < o.v; } // map key order
    std::string str() const;
};

Degree add(const Degree& a, const Degree& b);
Degree sub(const Degree& a, const Degree& b);
Degree negate(const Degree& a);
Degree deg_min(const Degree& a, const Degree& b);
Degree deg_max(const Degree& a, const Degree& b);

// ---------------------------------------------------------------- monomial orders

enum class OrderKind { Grevlex, Lex };

struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    std::vector<int> perm; // perm[0] is the most significant variable index

    /// Returns +1 if a > b, -1 if a < b, 0 if equal.
    int compare(const Monomial& a, const Monomial& b) const;
    std::string str() const;
};

MonomialOrder default_order(int nvars, OrderKind kind = OrderKind::Grevlex);

// ---------------------------------------------------------------- polynomials

struct Term {
    Monomial m;
    uint32_t c = 0;
};

/// Sparse polynomial; terms kept strictly descending in the owning
/// ring's monomial order with no zero coefficients.
struct Poly {
    std::vector<Term> ts;

    bool is_zero() const { return ts.empty(); }
    const Term& lead() const { return ts.front(); }
    int nterms() const { return static_cast<int>(ts.size()); }
};

// ---------------------------------------------------------------- rings

enum class Grading { Fine, Coarse };

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Presentation of R = k[x_1..x_n]/J with a grading. Immutable.
struct Ring {
    int n = 0;
    std::vector<std::string> vars;
    GF gf;
    MonomialOrder order;
    Grading grading = Grading::Fine;
    std::vector<int> weights;     // coarse mode: positive weight per variable
    std::vector<Poly> relations;  // homogeneous generators of J
    bool monomial_relations = true;
    std::string signature;        // canonical serialization, set on construction

    int cmp(const Monomial& a, const Monomial& b) const { return order.compare(a, b); }
    int degree_len() const { return grading == Grading::Fine ? n : 1; }
    Degree zero_degree() const { return Degree{std::vector<int>(degree_len(), 0)}; }
    Degree degree_of(const Monomial& m) const;
    /// Degree of a homogeneous polynomial; nullopt if inhomogeneous or zero.
    std::optional<Degree> degree_of(const Poly& p) const;
    int var_index(const std::string& name) const;
};

/// Validated constructor for ring presentations. Relations must be
/// homogeneous in the chosen grading; fine mode demands monomial relations.
RingPtr make_ring(std::vector<std::string> vars, uint32_t characteristic,
                  OrderKind order_kind, Grading grading, std::vector<int> weights,
                  std::vector<Poly> relations);

/// Same ring without its relations (the ambient polynomial ring S). Memoized.
RingPtr ambient_ring(const RingPtr& r);

/// Internal constructor that skips homogeneity validation (used for the
/// Rabinowitsch trick ring, which is inhomogeneous by design).
RingPtr make_ring_unchecked(std::vector<std::string> vars, uint32_t characteristic,
                            OrderKind order_kind, Grading grading,
                            std::vector<int> weights, std::vector<Poly> relations);

// ---------------------------------------------------------------- poly arithmetic

Poly poly_zero();
Poly poly_const(const Ring& r, uint32_t c);
Poly poly_of_term(const Ring& r, Term t);
/// Normalize an arbitrary term list into a Poly (sorts, merges, drops zeros).
Poly poly_from_terms(const Ring& r, std::vector<Term> ts);
Poly add(const Ring& r, const Poly& a, const Poly& b);
Poly sub(const Ring& r, const Poly& a, const Poly& b);
Poly neg(const Ring& r, const Poly& a);
Poly scale(const Ring& r, uint32_t c, const Poly& a);
Poly mul_term(const Ring& r, const Term& t, const Poly& a);
Poly mul(const Ring& r, const Poly& a, const Poly& b);
bool poly_equal(const Poly& a, const Poly& b);
bool is_constant(const Poly& a); // nonzero constant
std::string to_string(const Ring& r, const Poly& p);
std::string serialize(const Poly& p); // canonical, name-free

/// Parses "3*x^2*y - z + 5" style expressions: sums of products of
/// integer literals and variables with optional ^exponent; `*` is
/// required between factors.
Poly parse_poly(const Ring& r, const std::string& text);
std::vector<Poly> parse_polys(const Ring& r, const std::string& comma_separated);

// ---------------------------------------------------------------- free-module elements

/// Element of a free module, sparse by component.
struct Vec {
    std::vector<std::pair<int, Poly>> comps; // sorted by component, no zero polys

    bool is_zero() const { return comps.empty(); }
    const Poly* at(int c) const;
    int nterms() const;
};

struct ModTerm {
    int comp = 0;
    Monomial m;
    uint32_t c = 0;
};

Vec vec_zero();
Vec vec_unit(int comp, const Ring& r); // e_comp
Vec vec_of(int comp, Poly p);
Vec add(const Ring& r, const Vec& a, const Vec& b);
Vec sub(const Ring& r, const Vec& a, const Vec& b);
Vec scale(const Ring& r, uint32_t c, const Vec& a);
Vec mul_term(const Ring& r, const Term& t, const Vec& a);
Vec mul_poly(const Ring& r, const Poly& p, const Vec& a);
std::string serialize(const Vec& v);

/// Matrix over the ring: a list of columns in a free module of the
/// given rank. Columns are homogeneous vectors in all graded contexts.
struct Matrix {
    int rows = 0;
    std::vector<Vec> cols;

    int ncols() const { return static_cast<int>(cols.size()); }
};

Matrix matrix_zero(int rows);
const Poly* entry(const Matrix& m, int i, int j);
std::string serialize(const Matrix& m);

/// Degree of a homogeneous vector given the row shifts; nullopt if zero or
/// inhomogeneous.
std::optional<Degree> vec_degree(const Ring& r, const Vec& v,
                                 const std::vector<Degree>& shifts);

// ---------------------------------------------------------------- dense GF(p) linear algebra

struct DenseMat {
    int nr = 0, nc = 0;
    std::vector<uint32_t> a;

    uint32_t& at(int i, int j) { return a[size_t(i) * nc + j]; }
    uint32_t at(int i, int j) const { return a[size_t(i) * nc + j]; }
    static DenseMat zero(int r, int c) { return DenseMat{r, c, std::vector<uint32_t>(size_t(r) * c, 0)}; }
};

/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(const GF& gf, DenseMat& m);
int rank(const GF& gf, DenseMat m);

// ---------------------------------------------------------------- degree boxes

/// A lattice box of degrees (n-dimensional in fine mode, an interval in
/// coarse mode).
struct Box {
    Degree lo, hi;

    bool contains(const Degree& d) const;
    /// Visits every lattice point; throws if the box is absurdly large.
    void for_each(const std::function<void(const Degree&)>& fn) const;
    long long volume() const;
    std::string str() const;
};

Box pad_box(const Box& b, int pad);
/// Smallest box containing all given degrees (all of the same length).
Box span_box(const std::vector<Degree>& ds);

} // namespace cmpairs
