#pragma once

#include "cmpairs/module.hpp"

#include <random>

namespace cmpairs::testing {

// GF(32003)[x,y], fine multigrading
inline RingPtr s2()
{
    return make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {}, {});
}

// GF(32003)[x,y]/(xy), fine multigrading
inline RingPtr rxy()
{
    auto amb = s2();
    return make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {},
                     {parse_poly(*amb, "x*y")});
}

// GF(32003)[x,y,z], fine
inline RingPtr s3()
{
    return make_ring({"x", "y", "z"}, 32003, OrderKind::Grevlex, Grading::Fine, {}, {});
}

// numerical semigroup ring k[t^3,t^4,t^5] = k[x,y,z]/(y^2-xz, z^2-x^2y, yz-x^3)
inline RingPtr semigroup345()
{
    auto amb = make_ring({"x", "y", "z"}, 32003, OrderKind::Grevlex, Grading::Coarse,
                         {3, 4, 5}, {});
    return make_ring({"x", "y", "z"}, 32003, OrderKind::Grevlex, Grading::Coarse,
                     {3, 4, 5},
                     {parse_poly(*amb, "y^2 - x*z"), parse_poly(*amb, "z^2 - x^2*y"),
                      parse_poly(*amb, "y*z - x^3")});
}

// k[x,y,t,u]/(x^2,xy,y^2), fine
inline RingPtr s4_nilp()
{
    auto amb = make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine,
                         {}, {});
    return make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine, {},
                     parse_polys(*amb, "x^2, x*y, y^2"));
}

// k[x,y,t,u]/(x^2,xy,y^2,t^2,tu,u^2), fine (Artinian)
inline RingPtr r36()
{
    auto amb = make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine,
                         {}, {});
    return make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine, {},
                     parse_polys(*amb, "x^2, x*y, y^2, t^2, t*u, u^2"));
}

inline Degree fine(std::vector<int> v) { return Degree{std::move(v)}; }
inline Degree coarse(int v) { return Degree{{v}}; }

// cyclic module R/(gens)
inline GradedModule cyclic(const RingPtr& r, const std::string& gens)
{
    Matrix m{1, {}};
    for (auto& p : parse_polys(*r, gens))
        m.cols.push_back(vec_of(0, p));
    return make_module(r, {r->zero_degree()}, m);
}

// module with one generator of the given degree and given relations
inline GradedModule cyclic_shifted(const RingPtr& r, const Degree& d,
                                   const std::string& gens)
{
    Matrix m{1, {}};
    for (auto& p : parse_polys(*r, gens))
        m.cols.push_back(vec_of(0, p));
    return make_module(r, {d}, m);
}

inline Monomial mono(const Ring& r, const std::string& text)
{
    Poly p = parse_poly(r, text);
    return p.ts.at(0).m;
}

inline std::mt19937& rng()
{
    static std::mt19937 g(20260811);
    return g;
}

inline Monomial random_monomial(const Ring& r, int maxexp)
{
    std::uniform_int_distribution<int> d(0, maxexp);
    Monomial m = Monomial::one(r.n);
    for (int i = 0; i < r.n; ++i)
        m.e[i] = d(rng());
    return m;
}

inline Poly random_poly(const Ring& r, int terms, int maxexp)
{
    std::uniform_int_distribution<int> c(0, static_cast<int>(r.gf.p) - 1);
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i)
        ts.push_back(Term{random_monomial(r, maxexp),
                          static_cast<uint32_t>(c(rng()))});
    return poly_from_terms(r, std::move(ts));
}

} // namespace cmpairs::testing
