#include "cmpairs/localcoh.hpp"
#include "cmpairs/caps.hpp"

#include <sstream>

namespace cmpairs {

Degree canonical_shift(const Ring& ring)
{
    if (ring.grading == Grading::Fine)
        return Degree{std::vector<int>(ring.n, 1)};
    int s = 0;
    for (int w : ring.weights)
        s += w;
    return Degree{{s}};
}

GradedModule deficiency(int q, const GradedModule& n)
{
    const Ring& R = *n.ring;
    if (q < 0 || q > R.n)
        return zero_module(n.ring);
    GradedModule ns = restrict_to_ambient(n);
    RingPtr amb = ns.ring;
    GradedModule omega = free_module(amb, {canonical_shift(R)});
    GradedModule k = ext_module(R.n - q, ns, omega);
    // reinterpret over R: ann_S N contains J, so the relations act as zero
    return change_ring(n.ring, k);
}

ExtendedNat grade_via_ext(const IdealGens& j, const GradedModule& n)
{
    if (is_zero_module(n))
        return ExtendedNat::infinite("zero module");
    const RingPtr& ring = n.ring;
    if (ideal_is_unit(ring, j))
        return ExtendedNat::infinite("unit ideal: R/J = 0");
    // torsion witness N = JN
    Matrix jcols{n.ngens(), {}};
    for (const auto& g : j)
        for (int i = 0; i < n.ngens(); ++i)
            jcols.cols.push_back(vec_of(i, g));
    if (is_zero_module(quotient_module(n, jcols)))
        return ExtendedNat::infinite("N = JN (graded Nakayama torsion witness)");
    GradedModule rj = make_module(ring, {ring->zero_degree()}, ideal_matrix(j));
    int top = module_dim(n);
    for (int i = 0; i <= top; ++i)
        if (!ext_is_zero(i, rj, n))
            return ExtendedNat::finite(i, "Ext^" + std::to_string(i) + "(R/J, N) != 0");
    return ExtendedNat::at_least(top + 1, "no nonvanishing Ext up to dim N");
}

ExtendedNat koszul_grade(const IdealGens& gens, const GradedModule& n)
{
    if (is_zero_module(n))
        return ExtendedNat::infinite("zero module");
    int s = static_cast<int>(gens.size());
    for (int i = s; i >= 0; --i) {
        if (!is_zero_module(koszul_homology(gens, i, n)))
            return ExtendedNat::finite(s - i,
                                       "top Koszul homology at H_" + std::to_string(i));
    }
    return ExtendedNat::infinite("all Koszul homology vanishes");
}

// ---------------------------------------------------------------- Cech route

namespace {

struct LocPiece {
    int dim = 0;
    int level = 0;   // representative level t: piece = N_{d + t deg f}
    bool exact = true;
};

// componentwise bound beyond which multiplication along any monomial ray is
// an isomorphism on graded pieces: past the generator shifts and relation
// column degrees, free-cover bases and relation multiples shift bijectively
Degree staircase_bound(const GradedModule& n)
{
    const Ring& R = *n.ring;
    std::vector<Degree> ds = n.shifts;
    if (!n.pres.cols.empty())
        for (const auto& cd : column_degrees(R, n.shifts, n.pres))
            ds.push_back(cd);
    for (const auto& h : R.relations) {
        Degree hd = *R.degree_of(h);
        for (const auto& s : n.shifts)
            ds.push_back(add(hd, s));
    }
    if (ds.empty())
        return Degree{std::vector<int>(R.degree_len(), 0)};
    Degree out = ds[0];
    for (const auto& d : ds)
        out = deg_max(out, d);
    return out;
}

// exact colimit of N_{d + k deg f} along multiplication by f; the level is
// chosen past the staircase bound, and the stabilization certificate (two
// equal injective steps plus one verification step) is asserted there
LocPiece localization_piece(const GradedModule& n, const Degree& d, const Monomial& f)
{
    const Ring& R = *n.ring;
    Degree df = R.degree_of(f);
    Degree bound = staircase_bound(n);
    int t = 0;
    for (int i = 0; i < d.len(); ++i) {
        if (df.v[i] <= 0)
            continue;
        int need = bound.v[i] - d.v[i];
        if (need > 0)
            t = std::max(t, (need + df.v[i] - 1) / df.v[i]);
    }
    ++t;
    auto at = [&](int k) {
        Degree e = d;
        for (int s = 0; s < k; ++s)
            e = add(e, df);
        return e;
    };
    auto injective_at = [&](int k) {
        DenseMat m = mult_map(n, at(k), f);
        return rank(R.gf, m) == m.nc;
    };
    int d0 = hilbert_dim(n, at(t));
    bool cert = hilbert_dim(n, at(t + 1)) == d0 && hilbert_dim(n, at(t + 2)) == d0 &&
                injective_at(t) && injective_at(t + 1) &&
                hilbert_dim(n, at(t + 3)) == d0;
    return LocPiece{d0, t, cert};
}

Monomial subset_product(const std::vector<Monomial>& gens, const std::vector<int>& t,
                        int nvars)
{
    Monomial m = Monomial::one(nvars);
    for (int v : t)
        m = mul(m, gens[static_cast<size_t>(v)]);
    return m;
}

Monomial monomial_power(const Monomial& m, int e)
{
    Monomial r = m;
    for (auto& x : r.e)
        x *= e;
    return r;
}

std::vector<std::vector<std::vector<int>>> subsets_by_size(int s)
{
    std::vector<std::vector<std::vector<int>>> out(static_cast<size_t>(s) + 1);
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        out[cur.size()].push_back(cur);
        for (int v = from; v < s; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    for (auto& level : out)
        std::sort(level.begin(), level.end());
    return out;
}

std::vector<Monomial> relevant_monomial_generators(const IdealGens& i_gens,
                                                   const GradedModule& n,
                                                   std::vector<std::string>* dropped)
{
    const RingPtr& ring = n.ring;
    if (ring->grading != Grading::Fine)
        fail("NotFineGraded", "the Cech route needs a fine multigrading");
    IdealGens mingens = ideal_trim(ring, i_gens);
    std::vector<Monomial> out;
    IdealGens ann = annihilator_module(n);
    for (const auto& g : mingens) {
        if (g.nterms() != 1)
            fail("NotMonomialIdeal", "Cech support ideal must be monomial");
        if (radical_contains(ring, ann, g)) {
            if (dropped)
                dropped->push_back(to_string(*ring, g));
            continue; // nilpotent on N: the localization vanishes identically
        }
        out.push_back(g.lead().m);
    }
    return out;
}

} // namespace

CohomologyTable cech_cohomology(const IdealGens& i_gens, const GradedModule& n,
                                int index, const Box& box)
{
    if (index < 0)
        fail("NegativeIndex", "cohomological index must be >= 0");
    const Ring& R = *n.ring;
    CohomologyTable out;
    out.index = index;
    out.box = box;
    std::vector<Monomial> gens = relevant_monomial_generators(i_gens, n, nullptr);
    int s = static_cast<int>(gens.size());
    if (index > s)
        return out; // the complex has length s
    auto subsets = subsets_by_size(s);

    box.for_each([&](const Degree& d) {
        // per-degree common representative level
        int t = 0;
        bool exact = true;
        std::vector<std::vector<LocPiece>> pieces(subsets.size());
        for (size_t k = 0; k < subsets.size(); ++k) {
            if (static_cast<int>(k) < index - 1 || static_cast<int>(k) > index + 1)
                continue;
            for (const auto& tset : subsets[k]) {
                Monomial f = subset_product(gens, tset, R.n);
                LocPiece p = f.is_one() ? LocPiece{hilbert_dim(n, d), 0, true}
                                        : localization_piece(n, d, f);
                exact = exact && p.exact;
                t = std::max(t, p.level);
                pieces[k].push_back(p);
            }
        }
        // dims at the common level t (stability certified from each level on)
        auto piece_dim = [&](int k, int idx) {
            const auto& tset = subsets[static_cast<size_t>(k)][static_cast<size_t>(idx)];
            Monomial f = subset_product(gens, tset, R.n);
            Degree e = add(d, R.degree_of(monomial_power(f, t)));
            return hilbert_dim(n, e);
        };
        auto level_dim = [&](int k) {
            if (k < 0 || k > s)
                return 0;
            int total = 0;
            for (size_t i = 0; i < subsets[static_cast<size_t>(k)].size(); ++i)
                total += piece_dim(k, static_cast<int>(i));
            return total;
        };
        // boundary matrix C^k -> C^{k+1} at this degree
        auto boundary_rank = [&](int k) {
            if (k < 0 || k + 1 > s)
                return 0;
            const auto& src = subsets[static_cast<size_t>(k)];
            const auto& tgt = subsets[static_cast<size_t>(k + 1)];
            int rows = level_dim(k + 1), cols = level_dim(k);
            if (rows == 0 || cols == 0)
                return 0;
            // offsets
            std::vector<int> soff(src.size() + 1, 0), toff(tgt.size() + 1, 0);
            for (size_t i = 0; i < src.size(); ++i)
                soff[i + 1] = soff[i] + piece_dim(k, static_cast<int>(i));
            for (size_t i = 0; i < tgt.size(); ++i)
                toff[i + 1] = toff[i] + piece_dim(k + 1, static_cast<int>(i));
            DenseMat m = DenseMat::zero(rows, cols);
            for (size_t si = 0; si < src.size(); ++si) {
                const auto& tset = src[si];
                for (int j = 0; j < s; ++j) {
                    if (std::find(tset.begin(), tset.end(), j) != tset.end())
                        continue;
                    std::vector<int> bigger = tset;
                    bigger.push_back(j);
                    std::sort(bigger.begin(), bigger.end());
                    auto it = std::lower_bound(tgt.begin(), tgt.end(), bigger);
                    size_t ti = static_cast<size_t>(it - tgt.begin());
                    int pos = static_cast<int>(
                        std::find(bigger.begin(), bigger.end(), j) - bigger.begin());
                    uint32_t sign = pos % 2 == 0 ? 1 : R.gf.p - 1;
                    Monomial f = subset_product(gens, tset, R.n);
                    Degree e = add(d, R.degree_of(monomial_power(f, t)));
                    Monomial mult = monomial_power(gens[static_cast<size_t>(j)], t);
                    DenseMat blk = mult_map(n, e, mult);
                    for (int r = 0; r < blk.nr; ++r)
                        for (int c = 0; c < blk.nc; ++c)
                            if (blk.at(r, c))
                                m.at(toff[ti] + r, soff[si] + c) =
                                    R.gf.mul(sign, blk.at(r, c));
                }
            }
            return rank(R.gf, m);
        };
        int dim_here = level_dim(index) - boundary_rank(index) - boundary_rank(index - 1);
        if (dim_here > 0)
            out.dims[d] = dim_here;
        if (!exact) {
            out.all_exact = false;
            out.limited.push_back(d);
        }
    });
    return out;
}

CohomologyTable dual_cohomology_table(int q, const GradedModule& n, const Box& box)
{
    CohomologyTable out;
    out.index = q;
    out.box = box;
    GradedModule k = deficiency(q, n);
    box.for_each([&](const Degree& d) {
        int v = hilbert_dim(k, negate(d));
        if (v)
            out.dims[d] = v;
    });
    return out;
}

Box cech_default_box(const GradedModule& n, int pad)
{
    const Ring& R = *n.ring;
    if (pad < 0)
        pad = capscfg::get_or("cech_pad", R.n + 2);
    std::vector<Degree> ds = n.shifts;
    Resolution res = free_resolution(n, default_cap(R));
    for (const auto& level : res.fshift)
        for (const auto& d : level)
            ds.push_back(d);
    if (ds.empty())
        ds.push_back(R.grading == Grading::Fine ? Degree{std::vector<int>(R.n, 0)}
                                                : Degree{{0}});
    return pad_box(span_box(ds), pad);
}

GradedModule h0_module(const IdealGens& i_gens, const GradedModule& n)
{
    const RingPtr& ring = n.ring;
    IdealGens mingens;
    for (const auto& g : ideal_trim(ring, i_gens))
        mingens.push_back(g);
    if (mingens.empty() || n.ngens() == 0)
        return minimal_presentation(n); // (0 : (0)^inf) = N
    int u = n.ngens();
    auto kernel_of_power = [&](const IdealGens& power_gens) {
        int s = static_cast<int>(power_gens.size());
        Matrix d{s * u, {}};
        for (int l = 0; l < u; ++l) {
            Vec col;
            for (int gi = 0; gi < s; ++gi)
                col.comps.emplace_back(gi * u + l, power_gens[static_cast<size_t>(gi)]);
            d.cols.push_back(std::move(col));
        }
        Matrix rels = Matrix{s * u, {}};
        for (int gi = 0; gi < s; ++gi)
            for (const auto& c : n.pres.cols) {
                Vec v;
                for (const auto& [i, p] : c.comps)
                    v.comps.emplace_back(gi * u + i, p);
                rels.cols.push_back(std::move(v));
            }
        return kernel_pregens(ring, d, rels);
    };
    IdealGens power = mingens;
    Matrix prev = kernel_of_power(power);
    for (int t = 2; t <= 24; ++t) {
        IdealGens next_power;
        for (const auto& a : power)
            for (const auto& b : mingens)
                next_power.push_back(mul(*ring, a, b));
        next_power = ideal_trim(ring, next_power);
        Matrix cur = kernel_of_power(next_power);
        // saturation reached when the new kernel sits inside the old span
        Matrix span = prev;
        for (const auto& c : n.pres.cols)
            span.cols.push_back(c);
        bool stable = true;
        for (const auto& c : cur.cols)
            if (!in_span(ring, span, c)) {
                stable = false;
                break;
            }
        if (stable)
            return subquotient_presented(ring, n.shifts, prev, n.pres);
        prev = cur;
        power = next_power;
    }
    fail("SaturationOverflow", "I-power torsion did not stabilize within 24 steps");
}

// ---------------------------------------------------------------- cd

CdResult cd_support(const IdealGens& i_gens, const GradedModule& n)
{
    const RingPtr& ring = n.ring;
    CdResult out;
    if (is_zero_module(n)) {
        out.value = ExtendedNat::minus_infinite("zero module");
        out.witness = "zero module";
        out.upper_bound = "trivial";
        return out;
    }
    if (is_maximal_graded_ideal(ring, i_gens)) {
        int top = module_dim(n);
        for (int q = top; q >= 0; --q) {
            GradedModule k = deficiency(q, n);
            if (!is_zero_module(k)) {
                out.value = ExtendedNat::finite(q, "duality");
                out.witness = "K^" + std::to_string(q) + "(N) != 0";
                out.upper_bound = "duality: K^q = 0 for q > dim N = " +
                                  std::to_string(top);
                return out;
            }
        }
        out.value = ExtendedNat::minus_infinite("all deficiency modules vanish");
        out.witness = "none";
        out.upper_bound = "duality";
        return out;
    }
    std::vector<std::string> dropped;
    std::vector<Monomial> relevant = relevant_monomial_generators(i_gens, n, &dropped);
    std::ostringstream dropnote;
    if (!dropped.empty()) {
        dropnote << " (dropped nilpotent-acting generators:";
        for (const auto& s : dropped)
            dropnote << " " << s;
        dropnote << ")";
    }
    if (relevant.empty()) {
        out.value = ExtendedNat::finite(0, "I-power torsion");
        out.witness = "every generator acts nilpotently: H^0 = N != 0";
        out.upper_bound = "generator-count: 0 relevant generators" + dropnote.str();
        return out;
    }
    int top = module_dim(n);
    int u = std::min(top, static_cast<int>(relevant.size()));
    Box box = cech_default_box(n);
    out.box_str = box.str();
    IdealGens relevant_ideal;
    for (const auto& m : relevant)
        relevant_ideal.push_back(Poly{{Term{m, 1}}});
    for (int i = u; i >= 1; --i) {
        CohomologyTable t = cech_cohomology(relevant_ideal, n, i, box);
        if (!t.dims.empty()) {
            auto [d, v] = *t.dims.begin();
            out.witness = "H^" + std::to_string(i) + " has dim " + std::to_string(v) +
                          " at degree " + d.str();
            if (i == u) {
                out.value = ExtendedNat::finite(i, "Cech witness at upper bound");
                out.upper_bound =
                    (top <= static_cast<int>(relevant.size()) ? "dimension: dim N = "
                                                              : "generator-count: ") +
                    std::to_string(u) + dropnote.str();
            } else {
                out.value = ExtendedNat::at_least(i, "Cech witness below upper bound");
                out.upper_bound = "unmatched upper bound " + std::to_string(u);
                out.box_exhausted = true;
            }
            return out;
        }
    }
    GradedModule h0 = h0_module(relevant_ideal, n);
    if (!is_zero_module(h0)) {
        if (u == 0) {
            out.value = ExtendedNat::finite(0, "H^0 != 0 and dim N = 0");
            out.witness = "H^0 = (0 : I^inf) != 0";
            out.upper_bound = "dimension: dim N = 0";
        } else {
            out.value = ExtendedNat::at_least(0, "H^0 != 0; box shows no higher witness");
            out.witness = "H^0 = (0 : I^inf) != 0";
            out.upper_bound = "unmatched upper bound " + std::to_string(u);
            out.box_exhausted = true;
        }
        return out;
    }
    // H^0 vanishes exactly; the grade is a certified lower bound
    ExtendedNat g = grade_via_ext(relevant_ideal, n);
    out.value = g.is_finite()
                    ? ExtendedNat::at_least(g.value, "grade lower bound; box empty")
                    : ExtendedNat::at_least(1, "box empty");
    out.witness = "no witness in box";
    out.upper_bound = "unmatched upper bound " + std::to_string(u);
    out.box_exhausted = true;
    return out;
}

bool relative_cm_wrt_m(const GradedModule& n)
{
    if (is_zero_module(n))
        return true;
    int top = module_dim(n);
    for (int q = 0; q < top; ++q)
        if (!is_zero_module(deficiency(q, n)))
            return false;
    return true;
}

int cd_via_duality(const GradedModule& n)
{
    if (is_zero_module(n))
        return -1;
    int top = module_dim(n);
    for (int q = top; q >= 0; --q)
        if (!is_zero_module(deficiency(q, n)))
            return q;
    return -1;
}

} // namespace cmpairs
