#include "cmpairs/homology.hpp"
#include "cmpairs/cache.hpp"
#include "cmpairs/caps.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cmpairs {

namespace {

int total_of(const Degree& d)
{
    int s = 0;
    for (int x : d.v)
        s += x;
    return s;
}

} // namespace

// ---------------------------------------------------------------- helpers

static Matrix transpose_matrix(int rows, const Matrix& m)
{
    Matrix out{m.ncols(), {}};
    for (int i = 0; i < rows; ++i) {
        Vec col;
        for (int j = 0; j < m.ncols(); ++j) {
            const Poly* p = entry(m, i, j);
            if (p && !p->is_zero())
                col.comps.emplace_back(j, *p);
        }
        out.cols.push_back(std::move(col));
    }
    return out;
}

// block-expands a polynomial matrix T (t_rows x t_cols) acting on copies of
// a module with u generators: coordinate (copy j, gen l) = j*u + l.
static Matrix expand_block(const Matrix& t, int t_rows, int u)
{
    Matrix out{t_rows * u, {}};
    for (int j = 0; j < t.ncols(); ++j) {
        for (int l = 0; l < u; ++l) {
            Vec col;
            for (const auto& [jp, p] : t.cols[static_cast<size_t>(j)].comps)
                col.comps.emplace_back(jp * u + l, p);
            std::sort(col.comps.begin(), col.comps.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.cols.push_back(std::move(col));
        }
    }
    return out;
}

static Matrix block_diag(const Matrix& p, int copies)
{
    int u = p.rows;
    Matrix out{copies * u, {}};
    for (int j = 0; j < copies; ++j) {
        for (const auto& c : p.cols) {
            Vec col;
            for (const auto& [i, q] : c.comps)
                col.comps.emplace_back(j * u + i, q);
            out.cols.push_back(std::move(col));
        }
    }
    return out;
}

static Matrix identity_matrix(const Ring& ring, int n)
{
    Matrix out{n, {}};
    for (int i = 0; i < n; ++i)
        out.cols.push_back(vec_unit(i, ring));
    return out;
}

static Matrix concat_cols(const Matrix& a, const Matrix& b)
{
    Matrix out = a;
    for (const auto& c : b.cols)
        out.cols.push_back(c);
    return out;
}

Matrix minimal_generators(const RingPtr& ring, const std::vector<Degree>& amb_shifts,
                          const Matrix& cols)
{
    Matrix clean{cols.rows, {}};
    for (const auto& c : cols.cols) {
        Vec v = ring_normal_form_vec(ring, c);
        if (!v.is_zero())
            clean.cols.push_back(std::move(v));
    }
    if (clean.ncols() == 0)
        return clean;
    std::vector<Degree> degs = column_degrees(*ring, amb_shifts, clean);
    std::vector<int> order(degs.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return total_of(degs[static_cast<size_t>(a)]) <
               total_of(degs[static_cast<size_t>(b)]);
    });
    Matrix kept{cols.rows, {}};
    for (int idx : order) {
        if (!in_span(ring, kept, clean.cols[static_cast<size_t>(idx)]))
            kept.cols.push_back(clean.cols[static_cast<size_t>(idx)]);
    }
    return kept;
}

// ---------------------------------------------------------------- resolutions

namespace {

struct ResEntry {
    std::mutex mx;
    bool init = false;
    Resolution res;
};

struct ResMemo {
    std::mutex mx;
    std::unordered_map<std::string, std::shared_ptr<ResEntry>> map;
};
ResMemo& res_memo()
{
    static ResMemo m;
    static bool registered = [] {
        cache::Store::instance().register_clearer([] {
            std::lock_guard<std::mutex> l(res_memo().mx);
            res_memo().map.clear();
        });
        return true;
    }();
    (void)registered;
    return m;
}

bool matrices_identical(const Matrix& a, const Matrix& b)
{
    return a.rows == b.rows && serialize(a) == serialize(b);
}

void try_detect_period(Resolution& res, const RingPtr& ring)
{
    if (res.period || ring->relations.size() != 1)
        return;
    int t = res.steps() - 1; // newest differential index
    int s = t - 2;
    if (s < 0)
        return;
    const Matrix& dnew = res.dmat[static_cast<size_t>(t)];
    const Matrix& dold = res.dmat[static_cast<size_t>(s)];
    if (!matrices_identical(dnew, dold))
        return;
    const auto& rnew = res.fshift[static_cast<size_t>(t)];
    const auto& rold = res.fshift[static_cast<size_t>(s)];
    const auto& cnew = res.fshift[static_cast<size_t>(t + 1)];
    const auto& cold = res.fshift[static_cast<size_t>(s + 1)];
    if (rnew.size() != rold.size() || cnew.size() != cold.size() || rold.empty())
        return;
    Degree delta = sub(rnew[0], rold[0]);
    for (size_t i = 0; i < rnew.size(); ++i)
        if (!(sub(rnew[i], rold[i]) == delta))
            return;
    for (size_t j = 0; j < cnew.size(); ++j)
        if (!(sub(cnew[j], cold[j]) == delta))
            return;
    res.period = Periodicity{s, 2, delta};
}

void extend_resolution(Resolution& res, const RingPtr& ring, int cap)
{
    while (!res.complete && res.steps() < cap) {
        const Matrix& last = res.dmat.empty() ? res.target.pres : res.dmat.back();
        if (last.ncols() == 0) {
            res.complete = true;
            return;
        }
        // rows of the syzygy matrix are indexed by the columns of `last`,
        // i.e. by the generators of the newest free module
        Matrix syz = syzygies(ring, last);
        Matrix next = minimal_generators(ring, res.fshift.back(), syz);
        if (next.ncols() == 0) {
            res.complete = true;
            return;
        }
        std::vector<Degree> new_shifts = column_degrees(*ring, res.fshift.back(), next);
        res.dmat.push_back(std::move(next));
        res.fshift.push_back(std::move(new_shifts));
        try_detect_period(res, ring);
    }
}

} // namespace

Resolution free_resolution(const GradedModule& m, int cap)
{
    std::shared_ptr<ResEntry> entry;
    {
        std::lock_guard<std::mutex> l(res_memo().mx);
        auto& slot = res_memo().map[m.key()];
        if (!slot)
            slot = std::make_shared<ResEntry>();
        entry = slot;
    }
    std::lock_guard<std::mutex> l(entry->mx);
    if (!entry->init) {
        Resolution r;
        r.target = minimal_presentation(m);
        r.fshift.push_back(r.target.shifts);
        if (r.target.pres.ncols() > 0) {
            Matrix d1 = minimal_generators(m.ring, r.target.shifts, r.target.pres);
            if (d1.ncols() > 0) {
                r.dmat.push_back(d1);
                r.fshift.push_back(column_degrees(*m.ring, r.target.shifts, d1));
            } else {
                r.complete = true;
            }
        } else {
            r.complete = true;
        }
        entry->res = std::move(r);
        entry->init = true;
    }
    extend_resolution(entry->res, m.ring, cap);
    return entry->res;
}

ExtendedNat pd(const GradedModule& m, int cap)
{
    if (is_zero_module(m))
        return ExtendedNat::minus_infinite("zero module");
    Resolution res = free_resolution(m, cap);
    if (res.complete)
        return ExtendedNat::finite(res.steps(), "resolution terminates");
    if (res.period) {
        std::ostringstream os;
        os << "matrix factorization periodicity: period " << res.period->period
           << " from step " << res.period->start + 1 << ", degree shift "
           << res.period->shift.str();
        return ExtendedNat::infinite(os.str());
    }
    return ExtendedNat::at_least(res.steps(), "cap reached without termination");
}

std::vector<int> betti_numbers(const GradedModule& m, int cap)
{
    Resolution res = free_resolution(m, cap);
    std::vector<int> out;
    for (const auto& s : res.fshift)
        out.push_back(static_cast<int>(s.size()));
    return out;
}

int default_cap(const Ring& ring)
{
    return capscfg::get_or("resolution_cap", ring.n + 4);
}

// ---------------------------------------------------------------- homology

GradedModule n_complex_homology(const GradedModule& n, const std::vector<Degree>& sa,
                                const Matrix& g, const std::vector<Degree>& sb,
                                const Matrix& f, const std::vector<Degree>& sc)
{
    const RingPtr& ring = n.ring;
    int u = n.ngens();
    int b = static_cast<int>(sb.size());
    if (u == 0 || b == 0)
        return zero_module(ring);
    std::vector<Degree> amb;
    amb.reserve(static_cast<size_t>(b) * u);
    for (int j = 0; j < b; ++j)
        for (int l = 0; l < u; ++l)
            amb.push_back(add(sb[static_cast<size_t>(j)], n.shifts[static_cast<size_t>(l)]));

    int c = static_cast<int>(sc.size());
    Matrix kergens;
    if (c == 0) {
        kergens = identity_matrix(*ring, b * u);
    } else {
        Matrix d = expand_block(f, c, u);
        Matrix lc = block_diag(n.pres, c);
        kergens = kernel_pregens(ring, d, lc);
    }
    Matrix rels = block_diag(n.pres, b);
    if (!sa.empty()) {
        Matrix e = expand_block(g, b, u);
        rels = concat_cols(e, rels);
    }
    return subquotient_presented(ring, amb, kergens, rels);
}

namespace {

struct HomologyData {
    bool zero = false;          // the homology is trivially zero
    std::vector<Degree> amb;
    Matrix kergens;
    Matrix rels;
    RingPtr ring;
};

std::vector<Degree> negate_all(const std::vector<Degree>& ds)
{
    std::vector<Degree> out;
    out.reserve(ds.size());
    for (const auto& d : ds)
        out.push_back(negate(d));
    return out;
}

// shared construction for Ext^i / Tor_i
HomologyData hom_complex_data(int i, const GradedModule& m, const GradedModule& n,
                              bool contravariant)
{
    if (i < 0)
        fail("NegativeIndex", "homological index must be >= 0");
    HomologyData out;
    out.ring = m.ring;
    if (m.ring->signature != n.ring->signature)
        fail("RingMismatch", "Ext/Tor require modules over the same ring");
    Resolution res = free_resolution(m, i + 1);
    if (!res.complete && res.steps() < i + 1)
        fail("ResolutionTooShort", "resolution cap below requested index");
    int u = n.ngens();
    int bi = res.rank(i);
    if (u == 0 || bi == 0) {
        out.zero = true;
        return out;
    }
    const auto& ai = res.fshift[static_cast<size_t>(i)];
    std::vector<Degree> ain =
        i - 1 >= 0 && i - 1 < static_cast<int>(res.fshift.size())
            ? res.fshift[static_cast<size_t>(i - 1)]
            : std::vector<Degree>{};
    std::vector<Degree> aout = i + 1 < static_cast<int>(res.fshift.size())
                                   ? res.fshift[static_cast<size_t>(i + 1)]
                                   : std::vector<Degree>{};
    const Matrix* din = res.diff(i);      // F_i -> F_{i-1}
    const Matrix* dout = res.diff(i + 1); // F_{i+1} -> F_i

    std::vector<Degree> sa, sb, sc;
    Matrix g, f;
    if (contravariant) {
        sb = negate_all(ai);
        sa = negate_all(ain);
        sc = negate_all(aout);
        g = din ? transpose_matrix(res.rank(i - 1), *din) : Matrix{0, {}};
        f = dout ? transpose_matrix(res.rank(i), *dout) : Matrix{0, {}};
    } else {
        sb = ai;
        sa = aout;
        sc = ain;
        g = dout ? *dout : Matrix{0, {}};
        f = din ? *din : Matrix{0, {}};
    }

    int b = bi;
    out.amb.reserve(static_cast<size_t>(b) * u);
    for (int j = 0; j < b; ++j)
        for (int l = 0; l < u; ++l)
            out.amb.push_back(add(sb[static_cast<size_t>(j)],
                                  n.shifts[static_cast<size_t>(l)]));
    int c = static_cast<int>(sc.size());
    if (c == 0) {
        out.kergens = identity_matrix(*out.ring, b * u);
    } else {
        Matrix d = expand_block(f, c, u);
        Matrix lc = block_diag(n.pres, c);
        out.kergens = kernel_pregens(out.ring, d, lc);
    }
    out.rels = block_diag(n.pres, b);
    if (!sa.empty()) {
        Matrix e = expand_block(g, b, u);
        out.rels = concat_cols(e, out.rels);
    }
    return out;
}

} // namespace

GradedModule ext_module(int i, const GradedModule& m, const GradedModule& n)
{
    HomologyData d = hom_complex_data(i, m, n, true);
    if (d.zero)
        return zero_module(m.ring);
    return subquotient_presented(d.ring, d.amb, d.kergens, d.rels);
}

GradedModule tor_module(int i, const GradedModule& m, const GradedModule& n)
{
    HomologyData d = hom_complex_data(i, m, n, false);
    if (d.zero)
        return zero_module(m.ring);
    return subquotient_presented(d.ring, d.amb, d.kergens, d.rels);
}

GradedModule hom_module(const GradedModule& m, const GradedModule& n)
{
    return ext_module(0, m, n);
}

static bool homology_vanishes(const HomologyData& d)
{
    if (d.zero)
        return true;
    const GroebnerBasis& gb = groebner_basis(d.ring, d.rels);
    for (const auto& c : d.kergens.cols)
        if (!normal_form(gb, c).is_zero())
            return false;
    return true;
}

namespace {

// vanishing answers are requested repeatedly by e_sup, the strategy scans
// and the property suite; memoize them
struct ZeroMemo {
    std::mutex mx;
    std::unordered_map<std::string, bool> map;
};
ZeroMemo& zero_memo()
{
    static ZeroMemo m;
    static bool registered = [] {
        cache::Store::instance().register_clearer([] {
            std::lock_guard<std::mutex> l(zero_memo().mx);
            zero_memo().map.clear();
        });
        return true;
    }();
    (void)registered;
    return m;
}

bool cached_vanishing(int i, const GradedModule& m, const GradedModule& n, bool use_ext)
{
    std::string key = (use_ext ? "E" : "T") + std::to_string(i) + "|" + m.key() + "|" +
                      n.key();
    {
        std::lock_guard<std::mutex> l(zero_memo().mx);
        auto it = zero_memo().map.find(key);
        if (it != zero_memo().map.end())
            return it->second;
    }
    bool v = homology_vanishes(hom_complex_data(i, m, n, use_ext));
    std::lock_guard<std::mutex> l(zero_memo().mx);
    zero_memo().map.emplace(std::move(key), v);
    return v;
}

} // namespace

bool ext_is_zero(int i, const GradedModule& m, const GradedModule& n)
{
    return cached_vanishing(i, m, n, true);
}

bool tor_is_zero(int i, const GradedModule& m, const GradedModule& n)
{
    return cached_vanishing(i, m, n, false);
}

// ---------------------------------------------------------------- e_sup / t_sup

namespace {

ExtendedNat sup_nonvanishing(const GradedModule& m, const GradedModule& n, int cap,
                             bool use_ext)
{
    auto vanishes = [&](int i) {
        return use_ext ? ext_is_zero(i, m, n) : tor_is_zero(i, m, n);
    };
    if (is_zero_module(m) || is_zero_module(n))
        return ExtendedNat::minus_infinite("zero module");
    Resolution res = free_resolution(m, cap);
    if (res.complete) {
        int rho = res.steps();
        for (int i = rho; i >= 0; --i)
            if (!vanishes(i))
                return ExtendedNat::finite(i, "pd = " + std::to_string(rho));
        return ExtendedNat::minus_infinite("all modules vanish up to pd");
    }
    if (res.period) {
        int pi = res.period->period;
        int first_periodic = res.period->start + 1; // homological step index
        int lo = std::max(first_periodic, 3);
        int hi = lo + pi - 1;
        if (hi + 1 <= res.steps()) {
            std::vector<int> nonzero;
            for (int i = lo; i <= hi; ++i)
                if (!vanishes(i))
                    nonzero.push_back(i);
            std::ostringstream cert;
            cert << "periodicity: period " << pi << " from step " << first_periodic
                 << ", window [" << lo << "," << hi << "]";
            if (!nonzero.empty()) {
                cert << ", nonvanishing at " << nonzero[0];
                return ExtendedNat::infinite(cert.str());
            }
            // the periodic tail vanishes identically
            for (int i = lo - 1; i >= 0; --i)
                if (!vanishes(i))
                    return ExtendedNat::finite(i, cert.str() + ", tail vanishes");
            return ExtendedNat::minus_infinite(cert.str() + ", everything vanishes");
        }
    }
    for (int i = std::min(cap, res.steps() - 1); i >= 0; --i)
        if (!vanishes(i))
            return ExtendedNat::at_least(i, "resolution truncated at cap " +
                                                std::to_string(cap));
    return ExtendedNat::at_least(0, "no nonvanishing index found within cap");
}

} // namespace

ExtendedNat e_sup(const GradedModule& m, const GradedModule& n, int cap)
{
    return sup_nonvanishing(m, n, cap, true);
}

ExtendedNat t_sup(const GradedModule& m, const GradedModule& n, int cap)
{
    ExtendedNat a = sup_nonvanishing(m, n, cap, false);
    if (a.is_exact())
        return a;
    // Tor is symmetric; the other side may have a certifiable resolution.
    // Probe cheaply first so hopeless swaps (infinite pd, no periodicity)
    // do not resolve to full depth where Betti numbers blow up.
    ExtendedNat probe = pd(n, std::min(cap, 4));
    if (probe.kind == ExtendedNat::Kind::AtLeast)
        return a;
    ExtendedNat b = sup_nonvanishing(n, m, cap, false);
    if (b.is_exact()) {
        b.certificate = "via Tor symmetry: " + b.certificate;
        return b;
    }
    return a;
}

// ---------------------------------------------------------------- Koszul

KoszulComplex koszul_complex(const RingPtr& ring, const IdealGens& gens)
{
    int s = static_cast<int>(gens.size());
    KoszulComplex kc;
    // subsets of {0..s-1} by size, lexicographic within each size
    std::vector<std::vector<std::vector<int>>> subsets(static_cast<size_t>(s) + 1);
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        subsets[cur.size()].push_back(cur);
        for (int v = from; v < s; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    for (auto& level : subsets)
        std::sort(level.begin(), level.end());

    std::vector<std::optional<Degree>> gdeg;
    for (const auto& g : gens)
        gdeg.push_back(ring->degree_of(g));

    auto subset_degree = [&](const std::vector<int>& t) {
        Degree d = ring->zero_degree();
        for (int v : t)
            if (gdeg[static_cast<size_t>(v)])
                d = add(d, *gdeg[static_cast<size_t>(v)]);
        return d;
    };
    auto find_index = [&](int size, const std::vector<int>& t) {
        const auto& level = subsets[static_cast<size_t>(size)];
        auto it = std::lower_bound(level.begin(), level.end(), t);
        return static_cast<int>(it - level.begin());
    };

    for (int k = 0; k <= s; ++k) {
        std::vector<Degree> sh;
        for (const auto& t : subsets[static_cast<size_t>(k)])
            sh.push_back(subset_degree(t));
        kc.kshift.push_back(std::move(sh));
    }
    for (int k = 0; k + 1 <= s; ++k) {
        // d_{k+1}: K_{k+1} -> K_k
        Matrix d{static_cast<int>(subsets[static_cast<size_t>(k)].size()), {}};
        for (const auto& t : subsets[static_cast<size_t>(k + 1)]) {
            Vec col;
            for (size_t pos = 0; pos < t.size(); ++pos) {
                std::vector<int> rest;
                for (size_t q = 0; q < t.size(); ++q)
                    if (q != pos)
                        rest.push_back(t[q]);
                int row = find_index(k, rest);
                Poly p = gens[static_cast<size_t>(t[pos])];
                if (pos % 2 == 1)
                    p = neg(*ring, p);
                if (!p.is_zero())
                    col.comps.emplace_back(row, std::move(p));
            }
            std::sort(col.comps.begin(), col.comps.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            d.cols.push_back(std::move(col));
        }
        kc.kd.push_back(std::move(d));
    }
    return kc;
}

GradedModule koszul_homology(const IdealGens& gens, int i, const GradedModule& n)
{
    int s = static_cast<int>(gens.size());
    if (i < 0 || i > s)
        return zero_module(n.ring);
    KoszulComplex kc = koszul_complex(n.ring, gens);
    // K_{i+1} --g--> K_i --f--> K_{i-1}
    std::vector<Degree> sa =
        i + 1 <= s ? kc.kshift[static_cast<size_t>(i + 1)] : std::vector<Degree>{};
    std::vector<Degree> sb = kc.kshift[static_cast<size_t>(i)];
    std::vector<Degree> sc =
        i - 1 >= 0 ? kc.kshift[static_cast<size_t>(i - 1)] : std::vector<Degree>{};
    Matrix g = i + 1 <= s ? kc.kd[static_cast<size_t>(i)] : Matrix{0, {}};
    Matrix f = i - 1 >= 0 ? kc.kd[static_cast<size_t>(i - 1)] : Matrix{0, {}};
    return n_complex_homology(n, sa, g, sb, f, sc);
}

} // namespace cmpairs
