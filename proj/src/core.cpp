#include "cmpairs/core.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cmpairs {

// ---------------------------------------------------------------- GF

bool GF::is_prime(uint64_t n)
{
    if (n < 2)
        return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// ---------------------------------------------------------------- monomials

Monomial mul(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
        r.e[i] += b.e[i];
    return r;
}

bool divides(const Monomial& a, const Monomial& b)
{
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i])
            return false;
    return true;
}

Monomial div(const Monomial& b, const Monomial& a)
{
    Monomial r = b;
    for (size_t i = 0; i < r.e.size(); ++i) {
        r.e[i] -= a.e[i];
        if (r.e[i] < 0)
            fail("NonDivisibleMonomial", "monomial division underflow");
    }
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
        r.e[i] = std::max(r.e[i], b.e[i]);
    return r;
}

Monomial gcd(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
        r.e[i] = std::min(r.e[i], b.e[i]);
    return r;
}

bool coprime(const Monomial& a, const Monomial& b)
{
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > 0 && b.e[i] > 0)
            return false;
    return true;
}

// ---------------------------------------------------------------- degrees

std::string Degree::str() const
{
    if (v.size() == 1)
        return std::to_string(v[0]);
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

Degree add(const Degree& a, const Degree& b)
{
    Degree r = a;
    for (size_t i = 0; i < r.v.size(); ++i)
        r.v[i] += b.v[i];
    return r;
}

Degree sub(const Degree& a, const Degree& b)
{
    Degree r = a;
    for (size_t i = 0; i < r.v.size(); ++i)
        r.v[i] -= b.v[i];
    return r;
}

Degree negate(const Degree& a)
{
    Degree r = a;
    for (auto& x : r.v)
        x = -x;
    return r;
}

Degree deg_min(const Degree& a, const Degree& b)
{
    Degree r = a;
    for (size_t i = 0; i < r.v.size(); ++i)
        r.v[i] = std::min(r.v[i], b.v[i]);
    return r;
}

Degree deg_max(const Degree& a, const Degree& b)
{
    Degree r = a;
    for (size_t i = 0; i < r.v.size(); ++i)
        r.v[i] = std::max(r.v[i], b.v[i]);
    return r;
}

// ---------------------------------------------------------------- orders

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    if (kind == OrderKind::Lex) {
        for (int v : perm) {
            if (a.e[v] != b.e[v])
                return a.e[v] > b.e[v] ? 1 : -1;
        }
        return 0;
    }
    // grevlex: higher total degree wins; on ties the last variable (in the
    // permutation) with differing exponent decides, smaller exponent winning.
    int da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da > db ? 1 : -1;
    for (auto it = perm.rbegin(); it != perm.rend(); ++it) {
        int v = *it;
        if (a.e[v] != b.e[v])
            return a.e[v] < b.e[v] ? 1 : -1;
    }
    return 0;
}

std::string MonomialOrder::str() const
{
    std::string s = kind == OrderKind::Lex ? "lex" : "grevlex";
    s += "[";
    for (size_t i = 0; i < perm.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(perm[i]);
    }
    return s + "]";
}

MonomialOrder default_order(int nvars, OrderKind kind)
{
    MonomialOrder o;
    o.kind = kind;
    o.perm.resize(nvars);
    for (int i = 0; i < nvars; ++i)
        o.perm[i] = i;
    return o;
}

// ---------------------------------------------------------------- ring

Degree Ring::degree_of(const Monomial& m) const
{
    if (grading == Grading::Fine)
        return Degree{std::vector<int>(m.e.begin(), m.e.end())};
    long long s = 0;
    for (int i = 0; i < n; ++i)
        s += static_cast<long long>(weights[i]) * m.e[i];
    return Degree{{static_cast<int>(s)}};
}

std::optional<Degree> Ring::degree_of(const Poly& p) const
{
    if (p.is_zero())
        return std::nullopt;
    Degree d = degree_of(p.ts[0].m);
    for (size_t i = 1; i < p.ts.size(); ++i)
        if (!(degree_of(p.ts[i].m) == d))
            return std::nullopt;
    return d;
}

int Ring::var_index(const std::string& name) const
{
    for (int i = 0; i < n; ++i)
        if (vars[i] == name)
            return i;
    return -1;
}

static std::string ring_signature(const Ring& r)
{
    std::ostringstream os;
    os << "ring{p=" << r.gf.p << ";n=" << r.n << ";vars=";
    for (const auto& v : r.vars)
        os << v << ",";
    os << ";ord=" << r.order.str() << ";grading="
       << (r.grading == Grading::Fine ? "fine" : "coarse");
    if (r.grading == Grading::Coarse) {
        os << "[";
        for (int w : r.weights)
            os << w << ",";
        os << "]";
    }
    os << ";J=";
    for (const auto& p : r.relations)
        os << serialize(p) << "|";
    os << "}";
    return os.str();
}

static RingPtr build_ring(std::vector<std::string> vars, uint32_t characteristic,
                          OrderKind order_kind, Grading grading,
                          std::vector<int> weights, std::vector<Poly> relations,
                          bool validate)
{
    auto r = std::make_shared<Ring>();
    r->n = static_cast<int>(vars.size());
    r->vars = std::move(vars);
    r->gf.p = characteristic;
    r->order = default_order(r->n, order_kind);
    r->grading = grading;
    r->weights = std::move(weights);

    if (!GF::is_prime(characteristic))
        fail("NonPrimeCharacteristic",
             "characteristic " + std::to_string(characteristic) + " is not prime");
    for (int i = 0; i < r->n; ++i)
        for (int j = i + 1; j < r->n; ++j)
            if (r->vars[i] == r->vars[j])
                fail("DuplicateVariable", "variable '" + r->vars[i] + "' repeated");
    if (grading == Grading::Coarse) {
        if (static_cast<int>(r->weights.size()) != r->n)
            fail("WeightCountMismatch", "need one weight per variable");
        for (int w : r->weights)
            if (w <= 0)
                fail("NonPositiveWeight", "coarse weights must be positive");
    } else {
        r->weights.assign(r->n, 1);
    }

    r->monomial_relations = true;
    for (auto& p : relations) {
        // canonical form under this ring's order
        p = poly_from_terms(*r, p.ts);
        if (p.is_zero())
            continue;
        if (validate && grading == Grading::Fine && p.nterms() > 1)
            fail("FineGradingNeedsMonomialRelations",
                 "fine multigrading requires monomial relation generators; got " +
                     to_string(*r, p));
        if (validate && !r->degree_of(p))
            fail("NonHomogeneousRelation",
                 "relation " + to_string(*r, p) + " is not homogeneous");
        if (p.nterms() > 1)
            r->monomial_relations = false;
        r->relations.push_back(p);
    }

    r->signature = ring_signature(*r);
    return r;
}

RingPtr make_ring(std::vector<std::string> vars, uint32_t characteristic,
                  OrderKind order_kind, Grading grading, std::vector<int> weights,
                  std::vector<Poly> relations)
{
    return build_ring(std::move(vars), characteristic, order_kind, grading,
                      std::move(weights), std::move(relations), true);
}

RingPtr make_ring_unchecked(std::vector<std::string> vars, uint32_t characteristic,
                            OrderKind order_kind, Grading grading,
                            std::vector<int> weights, std::vector<Poly> relations)
{
    return build_ring(std::move(vars), characteristic, order_kind, grading,
                      std::move(weights), std::move(relations), false);
}

RingPtr ambient_ring(const RingPtr& r)
{
    if (r->relations.empty())
        return r;
    static std::mutex mx;
    static std::unordered_map<std::string, RingPtr> memo;
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(r->signature);
    if (it != memo.end())
        return it->second;
    auto amb = build_ring(r->vars, r->gf.p, r->order.kind, r->grading,
                          r->grading == Grading::Coarse ? r->weights : std::vector<int>{},
                          {}, true);
    memo.emplace(r->signature, amb);
    return amb;
}

// ---------------------------------------------------------------- poly arithmetic

Poly poly_zero() { return Poly{}; }

Poly poly_const(const Ring& r, uint32_t c)
{
    c %= r.gf.p;
    if (!c)
        return Poly{};
    return Poly{{Term{Monomial::one(r.n), c}}};
}

Poly poly_of_term(const Ring& r, Term t)
{
    t.c %= r.gf.p;
    if (!t.c)
        return Poly{};
    return Poly{{std::move(t)}};
}

Poly poly_from_terms(const Ring& r, std::vector<Term> ts)
{
    std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) {
        return r.cmp(a.m, b.m) > 0;
    });
    Poly out;
    for (auto& t : ts) {
        uint32_t c = t.c % r.gf.p;
        if (!out.ts.empty() && out.ts.back().m == t.m) {
            out.ts.back().c = r.gf.add(out.ts.back().c, c);
            if (out.ts.back().c == 0)
                out.ts.pop_back();
        } else if (c) {
            out.ts.push_back(Term{t.m, c});
        }
    }
    return out;
}

Poly add(const Ring& r, const Poly& a, const Poly& b)
{
    Poly out;
    out.ts.reserve(a.ts.size() + b.ts.size());
    size_t i = 0, j = 0;
    while (i < a.ts.size() && j < b.ts.size()) {
        int c = r.cmp(a.ts[i].m, b.ts[j].m);
        if (c > 0)
            out.ts.push_back(a.ts[i++]);
        else if (c < 0)
            out.ts.push_back(b.ts[j++]);
        else {
            uint32_t s = r.gf.add(a.ts[i].c, b.ts[j].c);
            if (s)
                out.ts.push_back(Term{a.ts[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < a.ts.size(); ++i)
        out.ts.push_back(a.ts[i]);
    for (; j < b.ts.size(); ++j)
        out.ts.push_back(b.ts[j]);
    return out;
}

Poly neg(const Ring& r, const Poly& a)
{
    Poly out = a;
    for (auto& t : out.ts)
        t.c = r.gf.neg(t.c);
    return out;
}

Poly sub(const Ring& r, const Poly& a, const Poly& b) { return add(r, a, neg(r, b)); }

Poly scale(const Ring& r, uint32_t c, const Poly& a)
{
    c %= r.gf.p;
    if (!c)
        return Poly{};
    Poly out = a;
    for (auto& t : out.ts)
        t.c = r.gf.mul(t.c, c);
    return out;
}

Poly mul_term(const Ring& r, const Term& t, const Poly& a)
{
    if (t.c == 0)
        return Poly{};
    Poly out;
    out.ts.reserve(a.ts.size());
    for (const auto& s : a.ts) {
        uint32_t c = r.gf.mul(s.c, t.c);
        if (c)
            out.ts.push_back(Term{mul(s.m, t.m), c});
    }
    return out; // multiplying by a fixed monomial preserves the order
}

Poly mul(const Ring& r, const Poly& a, const Poly& b)
{
    Poly acc;
    for (const auto& t : a.ts)
        acc = add(r, acc, mul_term(r, t, b));
    return acc;
}

bool poly_equal(const Poly& a, const Poly& b)
{
    if (a.ts.size() != b.ts.size())
        return false;
    for (size_t i = 0; i < a.ts.size(); ++i)
        if (!(a.ts[i].m == b.ts[i].m) || a.ts[i].c != b.ts[i].c)
            return false;
    return true;
}

bool is_constant(const Poly& a) { return a.nterms() == 1 && a.ts[0].m.is_one(); }

std::string to_string(const Ring& r, const Poly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    for (size_t i = 0; i < p.ts.size(); ++i) {
        const Term& t = p.ts[i];
        if (i)
            s += " + ";
        bool printed = false;
        if (t.c != 1 || t.m.is_one()) {
            s += std::to_string(t.c);
            printed = true;
        }
        for (int v = 0; v < r.n; ++v) {
            if (t.m.e[v] == 0)
                continue;
            if (printed)
                s += "*";
            s += r.vars[v];
            if (t.m.e[v] > 1)
                s += "^" + std::to_string(t.m.e[v]);
            printed = true;
        }
    }
    return s;
}

std::string serialize(const Poly& p)
{
    std::string s;
    for (const auto& t : p.ts) {
        s += std::to_string(t.c);
        s += ":";
        for (int e : t.m.e) {
            s += std::to_string(e);
            s += ".";
        }
        s += ";";
    }
    return s;
}

namespace {

struct PolyLexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
            ++pos;
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c)
    {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '@';
}
bool is_ident_char(char c)
{
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

Term parse_factor_product(const Ring& r, PolyLexer& lx)
{
    // factor ('*' factor)* ; factors are INT or VAR('^' INT)?
    Term t{Monomial::one(r.n), 1};
    bool first = true;
    while (true) {
        char c = lx.peek();
        if (c >= '0' && c <= '9') {
            long long v = 0;
            while (lx.pos < lx.s.size() && lx.s[lx.pos] >= '0' && lx.s[lx.pos] <= '9') {
                v = v * 10 + (lx.s[lx.pos] - '0');
                ++lx.pos;
            }
            t.c = r.gf.mul(t.c, r.gf.of_int(v));
        } else if (is_ident_start(c)) {
            std::string name;
            while (lx.pos < lx.s.size() && is_ident_char(lx.s[lx.pos]))
                name += lx.s[lx.pos++];
            int vi = r.var_index(name);
            if (vi < 0)
                fail("UnknownVariable", "variable '" + name + "' not in ring");
            int e = 1;
            if (lx.eat('^')) {
                char d = lx.peek();
                if (!(d >= '0' && d <= '9'))
                    fail("ParseError", "exponent expected after ^");
                e = 0;
                while (lx.pos < lx.s.size() && lx.s[lx.pos] >= '0' && lx.s[lx.pos] <= '9')
                    e = e * 10 + (lx.s[lx.pos++] - '0');
            }
            t.m.e[vi] += e;
        } else if (first) {
            fail("ParseError", "factor expected in polynomial at position " +
                                   std::to_string(lx.pos));
        } else {
            break;
        }
        first = false;
        if (!lx.eat('*'))
            break;
    }
    return t;
}

} // namespace

Poly parse_poly(const Ring& r, const std::string& text)
{
    PolyLexer lx{text};
    std::vector<Term> ts;
    bool negate_term = false;
    if (lx.eat('-'))
        negate_term = true;
    else
        lx.eat('+');
    while (true) {
        Term t = parse_factor_product(r, lx);
        if (negate_term)
            t.c = r.gf.neg(t.c);
        ts.push_back(std::move(t));
        char c = lx.peek();
        if (c == '+') {
            lx.eat('+');
            negate_term = false;
        } else if (c == '-') {
            lx.eat('-');
            negate_term = true;
        } else {
            break;
        }
    }
    if (lx.peek() != '\0')
        fail("ParseError", "unexpected trailing text in polynomial: '" +
                               text.substr(lx.pos) + "'");
    return poly_from_terms(r, std::move(ts));
}

std::vector<Poly> parse_polys(const Ring& r, const std::string& comma_separated)
{
    std::vector<Poly> out;
    size_t start = 0;
    while (start <= comma_separated.size()) {
        size_t comma = comma_separated.find(',', start);
        std::string piece = comma == std::string::npos
                                ? comma_separated.substr(start)
                                : comma_separated.substr(start, comma - start);
        bool blank = true;
        for (char c : piece)
            if (c != ' ' && c != '\t')
                blank = false;
        if (!blank)
            out.push_back(parse_poly(r, piece));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------- vectors

const Poly* Vec::at(int c) const
{
    for (const auto& [i, p] : comps)
        if (i == c)
            return &p;
    return nullptr;
}

int Vec::nterms() const
{
    int s = 0;
    for (const auto& [i, p] : comps)
        s += p.nterms();
    return s;
}

Vec vec_zero() { return Vec{}; }

Vec vec_unit(int comp, const Ring& r)
{
    return Vec{{{comp, poly_const(r, 1)}}};
}

Vec vec_of(int comp, Poly p)
{
    if (p.is_zero())
        return Vec{};
    return Vec{{{comp, std::move(p)}}};
}

Vec add(const Ring& r, const Vec& a, const Vec& b)
{
    Vec out;
    size_t i = 0, j = 0;
    while (i < a.comps.size() && j < b.comps.size()) {
        if (a.comps[i].first < b.comps[j].first)
            out.comps.push_back(a.comps[i++]);
        else if (a.comps[i].first > b.comps[j].first)
            out.comps.push_back(b.comps[j++]);
        else {
            Poly s = add(r, a.comps[i].second, b.comps[j].second);
            if (!s.is_zero())
                out.comps.emplace_back(a.comps[i].first, std::move(s));
            ++i, ++j;
        }
    }
    for (; i < a.comps.size(); ++i)
        out.comps.push_back(a.comps[i]);
    for (; j < b.comps.size(); ++j)
        out.comps.push_back(b.comps[j]);
    return out;
}

Vec scale(const Ring& r, uint32_t c, const Vec& a)
{
    c %= r.gf.p;
    if (!c)
        return Vec{};
    Vec out = a;
    for (auto& [i, p] : out.comps)
        p = scale(r, c, p);
    return out;
}

Vec sub(const Ring& r, const Vec& a, const Vec& b)
{
    return add(r, a, scale(r, r.gf.p - 1, b));
}

Vec mul_term(const Ring& r, const Term& t, const Vec& a)
{
    if (t.c == 0)
        return Vec{};
    Vec out;
    out.comps.reserve(a.comps.size());
    for (const auto& [i, p] : a.comps) {
        Poly q = mul_term(r, t, p);
        if (!q.is_zero())
            out.comps.emplace_back(i, std::move(q));
    }
    return out;
}

Vec mul_poly(const Ring& r, const Poly& p, const Vec& a)
{
    Vec acc;
    for (const auto& t : p.ts)
        acc = add(r, acc, mul_term(r, t, a));
    return acc;
}

std::string serialize(const Vec& v)
{
    std::string s;
    for (const auto& [i, p] : v.comps) {
        s += "[" + std::to_string(i) + "]";
        s += serialize(p);
    }
    return s;
}

// ---------------------------------------------------------------- matrices

Matrix matrix_zero(int rows) { return Matrix{rows, {}}; }

const Poly* entry(const Matrix& m, int i, int j)
{
    return m.cols[j].at(i);
}

std::string serialize(const Matrix& m)
{
    std::string s = "M" + std::to_string(m.rows) + "x" + std::to_string(m.ncols()) + "{";
    for (const auto& c : m.cols) {
        s += serialize(c);
        s += "#";
    }
    return s + "}";
}

std::optional<Degree> vec_degree(const Ring& r, const Vec& v,
                                 const std::vector<Degree>& shifts)
{
    std::optional<Degree> d;
    for (const auto& [i, p] : v.comps) {
        for (const auto& t : p.ts) {
            Degree td = add(r.degree_of(t.m), shifts[i]);
            if (!d)
                d = td;
            else if (!(*d == td))
                return std::nullopt;
        }
    }
    return d;
}

// ---------------------------------------------------------------- dense linear algebra

std::vector<int> rref(const GF& gf, DenseMat& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.nc && row < m.nr; ++col) {
        int pr = -1;
        for (int i = row; i < m.nr; ++i)
            if (m.at(i, col)) {
                pr = i;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != row)
            for (int j = 0; j < m.nc; ++j)
                std::swap(m.at(pr, j), m.at(row, j));
        uint32_t iv = gf.inv(m.at(row, col));
        for (int j = 0; j < m.nc; ++j)
            m.at(row, j) = gf.mul(m.at(row, j), iv);
        for (int i = 0; i < m.nr; ++i) {
            if (i == row)
                continue;
            uint32_t f = m.at(i, col);
            if (!f)
                continue;
            for (int j = 0; j < m.nc; ++j)
                m.at(i, j) = gf.sub(m.at(i, j), gf.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const GF& gf, DenseMat m)
{
    return static_cast<int>(rref(gf, m).size());
}

// ---------------------------------------------------------------- boxes

bool Box::contains(const Degree& d) const
{
    for (size_t i = 0; i < d.v.size(); ++i)
        if (d.v[i] < lo.v[i] || d.v[i] > hi.v[i])
            return false;
    return true;
}

long long Box::volume() const
{
    long long v = 1;
    for (size_t i = 0; i < lo.v.size(); ++i) {
        long long w = static_cast<long long>(hi.v[i]) - lo.v[i] + 1;
        if (w <= 0)
            return 0;
        v *= w;
        if (v > (1LL << 40))
            return 1LL << 40;
    }
    return v;
}

void Box::for_each(const std::function<void(const Degree&)>& fn) const
{
    if (volume() == 0)
        return;
    if (volume() >= (1LL << 30))
        fail("BoxTooLarge", "degree box too large to enumerate: " + str());
    Degree d = lo;
    while (true) {
        fn(d);
        size_t i = 0;
        for (; i < d.v.size(); ++i) {
            if (d.v[i] < hi.v[i]) {
                ++d.v[i];
                for (size_t j = 0; j < i; ++j)
                    d.v[j] = lo.v[j];
                break;
            }
        }
        if (i == d.v.size())
            break;
    }
}

std::string Box::str() const { return lo.str() + ".." + hi.str(); }

Box pad_box(const Box& b, int pad)
{
    Box out = b;
    for (auto& x : out.lo.v)
        x -= pad;
    for (auto& x : out.hi.v)
        x += pad;
    return out;
}

Box span_box(const std::vector<Degree>& ds)
{
    if (ds.empty())
        fail("EmptySpan", "span_box needs at least one degree");
    Box b{ds[0], ds[0]};
    for (const auto& d : ds) {
        b.lo = deg_min(b.lo, d);
        b.hi = deg_max(b.hi, d);
    }
    return b;
}

} // namespace cmpairs
