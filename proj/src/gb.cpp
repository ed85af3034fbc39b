#include "cmpairs/gb.hpp"
#include "cmpairs/cache.hpp"

#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cmpairs {

namespace {

// ---------------------------------------------------------------- block order

struct BlockCtx {
    const Ring* ring;
    int rank; // components < rank are value components (block 0)

    int block(int comp) const { return comp < rank ? 0 : 1; }

    int cmp(const ModTerm& a, const ModTerm& b) const
    {
        int ba = block(a.comp), bb = block(b.comp);
        if (ba != bb)
            return ba < bb ? 1 : -1;
        int c = ring->cmp(a.m, b.m);
        if (c)
            return c;
        if (a.comp != b.comp)
            return a.comp < b.comp ? 1 : -1;
        return 0;
    }
};

std::optional<ModTerm> lead_term(const BlockCtx& cx, const Vec& v)
{
    std::optional<ModTerm> best;
    for (const auto& [i, p] : v.comps) {
        ModTerm t{i, p.lead().m, p.lead().c};
        if (!best || cx.cmp(t, *best) > 0)
            best = t;
    }
    return best;
}

// strips the exact global lead term (first term of its component)
void remove_lead(Vec& v, const ModTerm& t)
{
    for (size_t k = 0; k < v.comps.size(); ++k) {
        if (v.comps[k].first == t.comp) {
            v.comps[k].second.ts.erase(v.comps[k].second.ts.begin());
            if (v.comps[k].second.ts.empty())
                v.comps.erase(v.comps.begin() + static_cast<long>(k));
            return;
        }
    }
}

// full normal form of v against an indexed basis
Vec reduce_by(const Ring& R, const BlockCtx& cx, const std::vector<Vec>& basis,
              const std::vector<ModTerm>& leads,
              const std::vector<std::vector<int>>& bycomp, Vec v)
{
    Vec out;
    while (auto t = lead_term(cx, v)) {
        int found = -1;
        if (t->comp < cx.rank && t->comp < static_cast<int>(bycomp.size())) {
            for (int k : bycomp[t->comp]) {
                if (divides(leads[k].m, t->m)) {
                    found = k;
                    break;
                }
            }
        }
        if (found >= 0) {
            Term f{div(t->m, leads[found].m), R.gf.mul(t->c, R.gf.inv(leads[found].c))};
            v = sub(R, v, mul_term(R, f, basis[found]));
        } else {
            out = add(R, out, Vec{{{t->comp, Poly{{Term{t->m, t->c}}}}}});
            remove_lead(v, *t);
        }
    }
    return out;
}

void index_gb(GroebnerBasis& gb)
{
    BlockCtx cx{gb.ring.get(), gb.rank};
    gb.leads.clear();
    gb.bycomp.assign(static_cast<size_t>(gb.total_rank()), {});
    for (size_t i = 0; i < gb.basis.size(); ++i) {
        auto lt = lead_term(cx, gb.basis[i]);
        if (!lt)
            fail("InternalError", "zero element in Groebner basis");
        gb.leads.push_back(*lt);
        gb.bycomp[lt->comp].push_back(static_cast<int>(i));
    }
}

// ---------------------------------------------------------------- engine

struct Engine {
    const Ring& R;
    BlockCtx cx;
    std::vector<Vec> basis;
    std::vector<ModTerm> leads;
    std::vector<std::vector<int>> bycomp;
    std::vector<Vec> syzout;
    bool tracked_mode = false;

    struct SPair {
        int deg;
        int i, j;
        bool operator>(const SPair& o) const
        {
            if (deg != o.deg)
                return deg > o.deg;
            if (j != o.j)
                return j > o.j;
            return i > o.i;
        }
    };
    std::priority_queue<SPair, std::vector<SPair>, std::greater<SPair>> pairs;
    std::set<std::pair<int, int>> done;

    Engine(const Ring& r, int total_rank, int value_rank)
        : R(r), cx{&r, value_rank}, bycomp(static_cast<size_t>(total_rank))
    {
    }

    Vec reduce(Vec v) const { return reduce_by(R, cx, basis, leads, bycomp, std::move(v)); }

    void add_element(Vec v, const ModTerm& lt_in)
    {
        Vec w = std::move(v);
        ModTerm lt = lt_in;
        if (lt.c != 1) {
            w = scale(R, R.gf.inv(lt.c), w);
            lt.c = 1;
        }
        int idx = static_cast<int>(basis.size());
        basis.push_back(std::move(w));
        leads.push_back(lt);
        for (int k : bycomp[lt.comp]) {
            Monomial l = lcm(leads[k].m, lt.m);
            pairs.push(SPair{l.total_degree(), k, idx});
        }
        bycomp[lt.comp].push_back(idx);
    }

    void offer(Vec v)
    {
        if (v.is_zero())
            return;
        auto lt = lead_term(cx, v);
        if (lt->comp < cx.rank)
            add_element(std::move(v), *lt);
        else
            syzout.push_back(std::move(v));
    }

    bool pair_done(int i, int j) const
    {
        return done.count({std::min(i, j), std::max(i, j)}) > 0;
    }

    void run()
    {
        long long budget = 8'000'000;
        while (!pairs.empty()) {
            if (--budget < 0)
                fail("GBOverflow", "S-pair budget exhausted");
            SPair pr = pairs.top();
            pairs.pop();
            int i = pr.i, j = pr.j;
            const ModTerm &li = leads[i], &lj = leads[j];
            if (!tracked_mode) {
                // product criterion, sound for ideals only
                if (cx.rank == 1 && coprime(li.m, lj.m)) {
                    done.insert({i, j});
                    continue;
                }
                Monomial l = lcm(li.m, lj.m);
                bool skip = false;
                for (int k : bycomp[li.comp]) {
                    if (k == i || k == j)
                        continue;
                    if (divides(leads[k].m, l) && pair_done(i, k) && pair_done(j, k)) {
                        skip = true;
                        break;
                    }
                }
                if (skip) {
                    done.insert({i, j});
                    continue;
                }
            }
            done.insert({i, j});
            // S-pair of two single-term elements cancels identically
            if (basis[i].nterms() == 1 && basis[j].nterms() == 1)
                continue;
            Monomial l = lcm(li.m, lj.m);
            Vec s = sub(R, mul_term(R, Term{div(l, li.m), 1}, basis[i]),
                        mul_term(R, Term{div(l, lj.m), 1}, basis[j]));
            offer(reduce(std::move(s)));
        }
    }

    // minimal + tail-reduced + canonically sorted basis
    void final_reduce()
    {
        std::vector<int> order(basis.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int c = cx.cmp(leads[a], leads[b]);
            if (c)
                return c < 0; // ascending lead
            return a < b;
        });
        std::vector<Vec> kept;
        std::vector<ModTerm> keptleads;
        for (int idx : order) {
            bool redundant = false;
            for (const auto& kl : keptleads) {
                if (kl.comp == leads[idx].comp && divides(kl.m, leads[idx].m)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) {
                kept.push_back(basis[idx]);
                keptleads.push_back(leads[idx]);
            }
        }
        basis = std::move(kept);
        leads = std::move(keptleads);
        for (auto& bc : bycomp)
            bc.clear();
        for (size_t i = 0; i < basis.size(); ++i)
            bycomp[leads[i].comp].push_back(static_cast<int>(i));
        // reduce tails; pairwise-nondivisible leads survive their own reduction
        for (size_t i = 0; i < basis.size(); ++i) {
            Vec lead_part{{{leads[i].comp, Poly{{Term{leads[i].m, leads[i].c}}}}}};
            Vec tail = sub(R, basis[i], lead_part);
            auto& bucket = bycomp[leads[i].comp];
            bucket.erase(std::find(bucket.begin(), bucket.end(), static_cast<int>(i)));
            Vec red = reduce(std::move(tail));
            bucket.push_back(static_cast<int>(i));
            std::sort(bucket.begin(), bucket.end());
            basis[i] = add(R, lead_part, red);
        }
    }
};

void run_buchberger(const Ring& ring, int value_rank, const Matrix& tracked,
                    const Matrix& untracked, bool with_ring_relations,
                    GroebnerBasis& out)
{
    int t = tracked.ncols();
    int total = value_rank + t;
    Engine eng(ring, total, value_rank);
    eng.tracked_mode = t > 0;

    for (int k = 0; k < t; ++k) {
        Vec v = tracked.cols[k];
        v.comps.emplace_back(value_rank + k, poly_const(ring, 1));
        eng.offer(eng.reduce(std::move(v)));
    }
    for (const auto& c : untracked.cols)
        eng.offer(eng.reduce(c));
    if (with_ring_relations) {
        for (const auto& h : ring.relations)
            for (int i = 0; i < value_rank; ++i)
                eng.offer(eng.reduce(vec_of(i, h)));
    }
    eng.run();
    eng.final_reduce();

    out.rank = value_rank;
    out.tracked = t;
    out.basis = std::move(eng.basis);
    out.syz = std::move(eng.syzout);
}

// ---------------------------------------------------------------- serialization

std::string serialize_gb(const GroebnerBasis& gb)
{
    std::ostringstream os;
    os << "GBv1\n" << gb.rank << " " << gb.tracked << "\n";
    os << gb.basis.size() << "\n";
    for (const auto& v : gb.basis)
        os << serialize(v) << "\n";
    os << gb.syz.size() << "\n";
    for (const auto& v : gb.syz)
        os << serialize(v) << "\n";
    return os.str();
}

bool parse_vec(const std::string& s, int nvars, Vec& out)
{
    out = Vec{};
    size_t pos = 0;
    try {
        while (pos < s.size()) {
            if (s[pos] != '[')
                return false;
            size_t close = s.find(']', pos);
            if (close == std::string::npos)
                return false;
            int comp = std::stoi(s.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            Poly p;
            while (pos < s.size() && s[pos] != '[') {
                size_t colon = s.find(':', pos);
                if (colon == std::string::npos)
                    return false;
                uint32_t c = static_cast<uint32_t>(std::stoul(s.substr(pos, colon - pos)));
                pos = colon + 1;
                Monomial m = Monomial::one(nvars);
                for (int v = 0; v < nvars; ++v) {
                    size_t dot = s.find('.', pos);
                    if (dot == std::string::npos)
                        return false;
                    m.e[v] = std::stoi(s.substr(pos, dot - pos));
                    pos = dot + 1;
                }
                if (pos >= s.size() || s[pos] != ';')
                    return false;
                ++pos;
                p.ts.push_back(Term{std::move(m), c});
            }
            if (!p.ts.empty())
                out.comps.emplace_back(comp, std::move(p));
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

bool parse_gb(const std::string& data, int nvars, GroebnerBasis& gb)
{
    std::istringstream is(data);
    std::string magic;
    if (!std::getline(is, magic) || magic != "GBv1")
        return false;
    size_t nb = 0, ns = 0;
    if (!(is >> gb.rank >> gb.tracked))
        return false;
    if (!(is >> nb))
        return false;
    std::string line;
    std::getline(is, line);
    gb.basis.clear();
    gb.syz.clear();
    for (size_t i = 0; i < nb; ++i) {
        if (!std::getline(is, line))
            return false;
        Vec v;
        if (!parse_vec(line, nvars, v))
            return false;
        gb.basis.push_back(std::move(v));
    }
    if (!(is >> ns))
        return false;
    std::getline(is, line);
    for (size_t i = 0; i < ns; ++i) {
        if (!std::getline(is, line))
            return false;
        Vec v;
        if (!parse_vec(line, nvars, v))
            return false;
        gb.syz.push_back(std::move(v));
    }
    return true;
}

// ---------------------------------------------------------------- memo

struct GbMemo {
    std::mutex mx;
    std::unordered_map<std::string, std::shared_ptr<GroebnerBasis>> map;
};

GbMemo& memo()
{
    static GbMemo m;
    static bool registered = [] {
        cache::Store::instance().register_clearer([] {
            std::lock_guard<std::mutex> l(memo().mx);
            memo().map.clear();
        });
        return true;
    }();
    (void)registered;
    return m;
}

const GroebnerBasis& cached_gb(const std::string& op, const RingPtr& ring,
                               int value_rank, const Matrix& tracked,
                               const Matrix& untracked, bool with_ring_relations)
{
    std::string input_key = ring->signature + "\nrank=" + std::to_string(value_rank) +
                            "\nT=" + serialize(tracked) + "\nU=" + serialize(untracked) +
                            "\nJ=" + (with_ring_relations ? "1" : "0");
    std::string memo_key = op + "\n" + input_key;
    {
        std::lock_guard<std::mutex> l(memo().mx);
        auto it = memo().map.find(memo_key);
        if (it != memo().map.end())
            return *it->second;
    }
    auto revalidate = [&](const std::string& data) {
        GroebnerBasis g;
        if (!parse_gb(data, ring->n, g))
            return false;
        g.ring = ring;
        index_gb(g);
        return buchberger_check(g, 3);
    };
    std::string payload = cache::Store::instance().get_or_compute(
        op, input_key,
        [&]() {
            GroebnerBasis g;
            run_buchberger(*ring, value_rank, tracked, untracked, with_ring_relations, g);
            return serialize_gb(g);
        },
        revalidate);
    auto g = std::make_shared<GroebnerBasis>();
    if (!parse_gb(payload, ring->n, *g))
        fail("CacheCorrupt", "unparseable Groebner payload");
    g->ring = ring;
    index_gb(*g);
    std::lock_guard<std::mutex> l(memo().mx);
    auto [it, inserted] = memo().map.emplace(memo_key, g);
    return *it->second;
}

} // namespace

// ---------------------------------------------------------------- public API

const GroebnerBasis& groebner_basis(const RingPtr& ring, const Matrix& gens)
{
    return cached_gb("gb", ring, gens.rows, Matrix{gens.rows, {}}, gens, true);
}

const GroebnerBasis& groebner_basis_tracked(const RingPtr& ring,
                                            const Matrix& tracked_gens,
                                            const Matrix& untracked_gens)
{
    return cached_gb("gbtrack", ring, tracked_gens.rows, tracked_gens, untracked_gens,
                     true);
}

Vec normal_form(const GroebnerBasis& gb, const Vec& v)
{
    BlockCtx cx{gb.ring.get(), gb.rank};
    return reduce_by(*gb.ring, cx, gb.basis, gb.leads, gb.bycomp, v);
}

Poly normal_form(const GroebnerBasis& gb, const Poly& p)
{
    Vec v = normal_form(gb, vec_of(0, p));
    if (v.is_zero())
        return poly_zero();
    return v.comps[0].second;
}

Poly ring_normal_form(const RingPtr& ring, const Poly& p)
{
    if (ring->relations.empty() || p.is_zero())
        return p;
    const GroebnerBasis& gb = cached_gb("gb", ring, 1, Matrix{1, {}}, Matrix{1, {}}, true);
    return normal_form(gb, p);
}

Vec ring_normal_form_vec(const RingPtr& ring, const Vec& v)
{
    if (ring->relations.empty())
        return v;
    Vec out;
    for (const auto& [i, p] : v.comps) {
        Poly q = ring_normal_form(ring, p);
        if (!q.is_zero())
            out.comps.emplace_back(i, std::move(q));
    }
    return out;
}

bool in_span(const RingPtr& ring, const Matrix& gens, const Vec& v)
{
    const GroebnerBasis& gb = groebner_basis(ring, gens);
    return normal_form(gb, v).is_zero();
}

static Matrix extract_tracked_parts(const RingPtr& ring, const GroebnerBasis& gb)
{
    Matrix out;
    out.rows = gb.tracked;
    BlockCtx cx{ring.get(), 0};
    for (const auto& s : gb.syz) {
        Vec c;
        for (const auto& [i, p] : s.comps) {
            if (i < gb.rank)
                fail("InternalError", "syzygy element with value component");
            Poly q = ring_normal_form(ring, p);
            if (!q.is_zero())
                c.comps.emplace_back(i - gb.rank, std::move(q));
        }
        if (c.is_zero())
            continue;
        auto lt = lead_term(cx, c);
        if (lt->c != 1)
            c = scale(*ring, ring->gf.inv(lt->c), c);
        out.cols.push_back(std::move(c));
    }
    return out;
}

Matrix syzygies(const RingPtr& ring, const Matrix& m)
{
    if (m.ncols() == 0)
        return Matrix{0, {}};
    const GroebnerBasis& gb = groebner_basis_tracked(ring, m, Matrix{m.rows, {}});
    return extract_tracked_parts(ring, gb);
}

Matrix kernel_pregens(const RingPtr& ring, const Matrix& d, const Matrix& target_rels)
{
    if (d.ncols() == 0)
        return Matrix{0, {}};
    const GroebnerBasis& gb = groebner_basis_tracked(ring, d, target_rels);
    return extract_tracked_parts(ring, gb);
}

std::optional<Vec> lift(const RingPtr& ring, const Matrix& gens, const Vec& v)
{
    if (v.is_zero())
        return Vec{};
    if (gens.ncols() == 0)
        return std::nullopt;
    const GroebnerBasis& gb = groebner_basis_tracked(ring, gens, Matrix{gens.rows, {}});
    Vec h = normal_form(gb, v);
    Vec c;
    for (const auto& [i, p] : h.comps) {
        if (i < gb.rank)
            return std::nullopt;
        Poly q = ring_normal_form(ring, neg(*ring, p));
        if (!q.is_zero())
            c.comps.emplace_back(i - gb.rank, std::move(q));
    }
    return c;
}

bool buchberger_check(const GroebnerBasis& gb, int max_pairs)
{
    BlockCtx cx{gb.ring.get(), gb.rank};
    int tested = 0;
    for (size_t i = 0; i < gb.basis.size(); ++i) {
        for (size_t j = i + 1; j < gb.basis.size(); ++j) {
            if (gb.leads[i].comp != gb.leads[j].comp)
                continue;
            if (max_pairs >= 0 && tested >= max_pairs)
                return true;
            ++tested;
            Monomial l = lcm(gb.leads[i].m, gb.leads[j].m);
            Vec s = sub(*gb.ring,
                        mul_term(*gb.ring, Term{div(l, gb.leads[i].m), 1}, gb.basis[i]),
                        mul_term(*gb.ring, Term{div(l, gb.leads[j].m), 1}, gb.basis[j]));
            Vec h = reduce_by(*gb.ring, cx, gb.basis, gb.leads, gb.bycomp, std::move(s));
            for (const auto& [c, p] : h.comps)
                if (c < gb.rank && !p.is_zero())
                    return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- ideal ops

Matrix ideal_matrix(const IdealGens& g)
{
    Matrix m{1, {}};
    for (const auto& p : g)
        if (!p.is_zero())
            m.cols.push_back(vec_of(0, p));
    return m;
}

IdealGens ideal_from_matrix(const RingPtr& ring, const Matrix& m)
{
    IdealGens out;
    for (const auto& c : m.cols) {
        if (c.is_zero())
            continue;
        Poly p = ring_normal_form(ring, c.comps[0].second);
        if (!p.is_zero())
            out.push_back(std::move(p));
    }
    return out;
}

IdealGens ideal_trim(const RingPtr& ring, const IdealGens& a)
{
    Matrix m = ideal_matrix(a);
    const GroebnerBasis& gb = groebner_basis(ring, m);
    IdealGens out;
    for (const auto& v : gb.basis) {
        if (v.is_zero())
            continue;
        Poly p = ring_normal_form(ring, v.comps[0].second);
        if (!p.is_zero())
            out.push_back(std::move(p));
    }
    return out;
}

IdealGens ideal_quotient(const RingPtr& ring, const IdealGens& a, const IdealGens& b)
{
    bool any = false;
    IdealGens acc;
    for (const auto& f : b) {
        Poly fn = ring_normal_form(ring, f);
        if (fn.is_zero())
            continue;
        Matrix m{1, {}};
        m.cols.push_back(vec_of(0, fn));
        for (const auto& g : a)
            if (!g.is_zero())
                m.cols.push_back(vec_of(0, g));
        Matrix syz = syzygies(ring, m);
        IdealGens q;
        for (const auto& s : syz.cols) {
            if (const Poly* c0 = s.at(0))
                q.push_back(*c0);
        }
        IdealGens qt = ideal_trim(ring, q);
        if (!any) {
            acc = qt;
            any = true;
        } else {
            acc = ideal_intersect(ring, acc, qt);
        }
    }
    if (!any) // quotient by the zero ideal
        return {poly_const(*ring, 1)};
    return ideal_trim(ring, acc);
}

IdealGens ideal_intersect(const RingPtr& ring, const IdealGens& a, const IdealGens& b)
{
    // I ∩ J = ker(R -> R/I ⊕ R/J)
    Matrix d{2, {}};
    Vec diag;
    diag.comps.emplace_back(0, poly_const(*ring, 1));
    diag.comps.emplace_back(1, poly_const(*ring, 1));
    d.cols.push_back(std::move(diag));
    Matrix rels{2, {}};
    for (const auto& p : a)
        if (!p.is_zero())
            rels.cols.push_back(vec_of(0, p));
    for (const auto& p : b)
        if (!p.is_zero())
            rels.cols.push_back(vec_of(1, p));
    Matrix k = kernel_pregens(ring, d, rels);
    IdealGens out;
    for (const auto& c : k.cols)
        if (const Poly* c0 = c.at(0))
            out.push_back(*c0);
    return ideal_trim(ring, out);
}

bool ideal_contains(const RingPtr& ring, const IdealGens& a, const Poly& f)
{
    const GroebnerBasis& gb = groebner_basis(ring, ideal_matrix(a));
    return normal_form(gb, f).is_zero();
}

bool ideal_equal(const RingPtr& ring, const IdealGens& a, const IdealGens& b)
{
    IdealGens ta = ideal_trim(ring, a), tb = ideal_trim(ring, b);
    if (ta.size() != tb.size())
        return false;
    for (size_t i = 0; i < ta.size(); ++i)
        if (!poly_equal(ta[i], tb[i]))
            return false;
    return true;
}

bool ideal_is_unit(const RingPtr& ring, const IdealGens& a)
{
    return ideal_contains(ring, a, poly_const(*ring, 1));
}

bool radical_contains(const RingPtr& ring, const IdealGens& a, const Poly& f)
{
    // Rabinowitsch: 1 in (a, J, 1 - t f) inside S[t]
    auto vars = ring->vars;
    vars.push_back("@t");
    auto ext = make_ring_unchecked(vars, ring->gf.p, ring->order.kind, Grading::Coarse,
                                   std::vector<int>(vars.size(), 1), {});
    auto lift_poly = [&](const Poly& p) {
        std::vector<Term> ts;
        for (const auto& t : p.ts) {
            Monomial m = t.m;
            m.e.push_back(0);
            ts.push_back(Term{std::move(m), t.c});
        }
        return poly_from_terms(*ext, std::move(ts));
    };
    IdealGens gens;
    for (const auto& g : a)
        gens.push_back(lift_poly(g));
    for (const auto& g : ring->relations)
        gens.push_back(lift_poly(g));
    Monomial tmon = Monomial::one(ext->n);
    tmon.e[ext->n - 1] = 1;
    Poly one_minus_tf =
        sub(*ext, poly_const(*ext, 1), mul_term(*ext, Term{tmon, 1}, lift_poly(f)));
    gens.push_back(one_minus_tf);
    return ideal_contains(ext, gens, poly_const(*ext, 1));
}

int krull_dimension(const RingPtr& ring, const IdealGens& a)
{
    const GroebnerBasis& gb = groebner_basis(ring, ideal_matrix(a));
    std::vector<Monomial> leadmons;
    for (const auto& v : gb.basis) {
        const Poly& p = v.comps[0].second;
        if (p.lead().m.is_one())
            fail("UnitIdeal", "krull_dimension of the unit ideal");
        leadmons.push_back(p.lead().m);
    }
    int n = ring->n;
    int best = -1;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best)
            continue;
        bool independent = true;
        for (const auto& m : leadmons) {
            bool inside = true;
            for (int v = 0; v < n; ++v) {
                if (m.e[v] > 0 && !(mask & (1u << v))) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent)
            best = size;
    }
    return best < 0 ? 0 : best;
}

bool is_maximal_graded_ideal(const RingPtr& ring, const IdealGens& a)
{
    const GroebnerBasis& gb = groebner_basis(ring, ideal_matrix(a));
    if (normal_form(gb, poly_const(*ring, 1)).is_zero())
        return false;
    for (int v = 0; v < ring->n; ++v) {
        Monomial m = Monomial::one(ring->n);
        m.e[v] = 1;
        if (!normal_form(gb, Poly{{Term{m, 1}}}).is_zero())
            return false;
    }
    return true;
}

bool ideal_is_monomial(const RingPtr& ring, const IdealGens& a)
{
    for (const auto& g : a) {
        Poly p = ring_normal_form(ring, g);
        if (p.nterms() > 1)
            return false;
    }
    return true;
}

} // namespace cmpairs
