#include "cmpairs/module.hpp"
#include "cmpairs/cache.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cmpairs {

// ---------------------------------------------------------------- construction

const std::string& GradedModule::key() const
{
    if (key_.empty()) {
        std::ostringstream os;
        os << ring->signature << "|shifts=";
        for (const auto& d : shifts)
            os << d.str() << ";";
        os << "|" << serialize(pres);
        key_ = cache::sha256_hex(os.str());
    }
    return key_;
}

std::vector<Degree> column_degrees(const Ring& ring, const std::vector<Degree>& shifts,
                                   const Matrix& m)
{
    std::vector<Degree> out;
    for (int j = 0; j < m.ncols(); ++j) {
        auto d = vec_degree(ring, m.cols[j], shifts);
        if (!d)
            fail("InhomogeneousColumn",
                 "column " + std::to_string(j) + " is zero or not homogeneous");
        out.push_back(*d);
    }
    return out;
}

GradedModule make_module(RingPtr ring, std::vector<Degree> shifts, Matrix pres)
{
    for (const auto& d : shifts)
        if (d.len() != ring->degree_len())
            fail("GradingModeMismatch", "generator shift has wrong length");
    if (pres.rows != static_cast<int>(shifts.size()))
        fail("ShapeMismatch", "presentation rows != generator count");
    GradedModule m;
    m.ring = ring;
    m.shifts = std::move(shifts);
    m.pres.rows = pres.rows;
    for (auto& c : pres.cols) {
        Vec v = ring_normal_form_vec(ring, c);
        if (v.is_zero())
            continue;
        if (!vec_degree(*ring, v, m.shifts))
            fail("InhomogeneousColumn", "presentation column is not homogeneous");
        m.pres.cols.push_back(std::move(v));
    }
    return m;
}

GradedModule free_module(RingPtr ring, std::vector<Degree> shifts)
{
    Matrix none{static_cast<int>(shifts.size()), {}};
    return make_module(std::move(ring), std::move(shifts), std::move(none));
}

GradedModule zero_module(RingPtr ring)
{
    GradedModule m;
    m.ring = std::move(ring);
    m.pres.rows = 0;
    return m;
}

GradedModule ring_module(RingPtr ring)
{
    GradedModule m;
    m.ring = ring;
    m.shifts = {ring->zero_degree()};
    m.pres.rows = 1;
    return m;
}

bool is_zero_module(const GradedModule& m)
{
    if (m.ngens() == 0)
        return true;
    const GroebnerBasis& gb = groebner_basis(m.ring, m.pres);
    for (int i = 0; i < m.ngens(); ++i)
        if (!normal_form(gb, vec_unit(i, *m.ring)).is_zero())
            return false;
    return true;
}

bool is_free_module(const GradedModule& m)
{
    return minimal_presentation(m).pres.ncols() == 0;
}

// ---------------------------------------------------------------- minimalization

GradedModule minimal_presentation(const GradedModule& m)
{
    auto shifts = m.shifts;
    Matrix P = m.pres;
    const Ring& R = *m.ring;
    while (true) {
        int pi = -1, pj = -1;
        for (int j = 0; j < P.ncols() && pi < 0; ++j) {
            for (const auto& [i, p] : P.cols[j].comps) {
                if (is_constant(p)) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
        }
        if (pi < 0)
            break;
        const Poly* pivot = entry(P, pi, pj);
        uint32_t uinv = R.gf.inv(pivot->ts[0].c);
        Vec pivcol = P.cols[pj];
        for (int l = 0; l < P.ncols(); ++l) {
            if (l == pj)
                continue;
            const Poly* e = entry(P, pi, l);
            if (!e)
                continue;
            Poly c = scale(R, uinv, *e);
            P.cols[l] = ring_normal_form_vec(m.ring,
                                             sub(R, P.cols[l], mul_poly(R, c, pivcol)));
        }
        // drop column pj and row pi
        P.cols.erase(P.cols.begin() + pj);
        for (auto& col : P.cols) {
            Vec nv;
            for (auto& [i, p] : col.comps) {
                if (i == pi)
                    continue;
                nv.comps.emplace_back(i > pi ? i - 1 : i, std::move(p));
            }
            col = std::move(nv);
        }
        shifts.erase(shifts.begin() + pi);
        P.rows -= 1;
    }
    Matrix out{P.rows, {}};
    for (auto& c : P.cols)
        if (!c.is_zero())
            out.cols.push_back(std::move(c));
    GradedModule r;
    r.ring = m.ring;
    r.shifts = std::move(shifts);
    r.pres = std::move(out);
    return r;
}

// ---------------------------------------------------------------- derived modules

GradedModule twist(const GradedModule& m, const Degree& d)
{
    std::vector<Degree> shifts = m.shifts;
    for (auto& s : shifts)
        s = add(s, d);
    return make_module(m.ring, std::move(shifts), m.pres);
}

GradedModule change_ring(const RingPtr& target, const GradedModule& m)
{
    if (target->n != m.ring->n || target->gf.p != m.ring->gf.p ||
        target->grading != m.ring->grading)
        fail("RingMismatch", "change_ring requires the same variables and grading");
    for (const auto& h : target->relations) {
        for (int i = 0; i < m.ngens(); ++i) {
            if (!in_span(m.ring, m.pres, vec_of(i, h)))
                fail("RelationsDoNotAnnihilate",
                     "change_ring: new relation does not annihilate the module");
        }
    }
    return make_module(target, m.shifts, m.pres);
}

GradedModule restrict_to_ambient(const GradedModule& m)
{
    RingPtr amb = ambient_ring(m.ring);
    Matrix P = m.pres;
    for (const auto& h : m.ring->relations)
        for (int i = 0; i < m.ngens(); ++i)
            P.cols.push_back(vec_of(i, h));
    return make_module(amb, m.shifts, P);
}

GradedModule quotient_module(const GradedModule& m, const Matrix& extra)
{
    if (extra.rows != m.ngens())
        fail("ShapeMismatch", "quotient columns live in the wrong free module");
    Matrix P = m.pres;
    for (const auto& c : extra.cols)
        P.cols.push_back(c);
    return make_module(m.ring, m.shifts, P);
}

GradedModule image_module(RingPtr ring, const std::vector<Degree>& amb_shifts,
                          const Matrix& cols)
{
    Matrix clean{cols.rows, {}};
    for (const auto& c : cols.cols) {
        Vec v = ring_normal_form_vec(ring, c);
        if (!v.is_zero())
            clean.cols.push_back(std::move(v));
    }
    std::vector<Degree> gendegs = column_degrees(*ring, amb_shifts, clean);
    Matrix rels = syzygies(ring, clean);
    GradedModule m = make_module(ring, gendegs, rels);
    return minimal_presentation(m);
}

static Matrix take_row_prefix(const Matrix& m, int k)
{
    Matrix out{k, {}};
    for (const auto& c : m.cols) {
        Vec v;
        for (const auto& [i, p] : c.comps)
            if (i < k)
                v.comps.emplace_back(i, p);
        if (!v.is_zero())
            out.cols.push_back(std::move(v));
    }
    return out;
}

GradedModule subquotient_presented(RingPtr ring, const std::vector<Degree>& amb_shifts,
                                   const Matrix& gens, const Matrix& rels)
{
    Matrix g{gens.rows, {}};
    for (const auto& c : gens.cols) {
        Vec v = ring_normal_form_vec(ring, c);
        if (!v.is_zero())
            g.cols.push_back(std::move(v));
    }
    std::vector<Degree> gendegs = column_degrees(*ring, amb_shifts, g);
    Matrix combined = g;
    for (const auto& c : rels.cols)
        combined.cols.push_back(c);
    Matrix syz = syzygies(ring, combined);
    Matrix pres = take_row_prefix(syz, g.ncols());
    GradedModule m = make_module(ring, gendegs, pres);
    return minimal_presentation(m);
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b)
{
    if (a.ring->signature != b.ring->signature)
        fail("RingMismatch", "direct_sum over different rings");
    std::vector<Degree> shifts = a.shifts;
    shifts.insert(shifts.end(), b.shifts.begin(), b.shifts.end());
    Matrix P{a.ngens() + b.ngens(), {}};
    for (const auto& c : a.pres.cols)
        P.cols.push_back(c);
    for (const auto& c : b.pres.cols) {
        Vec v;
        for (const auto& [i, p] : c.comps)
            v.comps.emplace_back(i + a.ngens(), p);
        P.cols.push_back(std::move(v));
    }
    return make_module(a.ring, shifts, P);
}

GradedModule tensor_modules(const GradedModule& a, const GradedModule& b)
{
    if (a.ring->signature != b.ring->signature)
        fail("RingMismatch", "tensor over different rings");
    int ua = a.ngens(), ub = b.ngens();
    std::vector<Degree> shifts;
    shifts.reserve(static_cast<size_t>(ua) * ub);
    for (int i = 0; i < ua; ++i)
        for (int l = 0; l < ub; ++l)
            shifts.push_back(add(a.shifts[i], b.shifts[l]));
    Matrix P{ua * ub, {}};
    for (const auto& c : a.pres.cols) {
        for (int l = 0; l < ub; ++l) {
            Vec v;
            for (const auto& [i, p] : c.comps)
                v.comps.emplace_back(i * ub + l, p);
            P.cols.push_back(std::move(v));
        }
    }
    for (const auto& c : b.pres.cols) {
        for (int i = 0; i < ua; ++i) {
            Vec v;
            for (const auto& [l, p] : c.comps)
                v.comps.emplace_back(i * ub + l, p);
            P.cols.push_back(std::move(v));
        }
    }
    GradedModule m = make_module(a.ring, shifts, P);
    return minimal_presentation(m);
}

// ---------------------------------------------------------------- graded pieces

std::vector<Monomial> monomials_of_degree(const Ring& ring, const Degree& d)
{
    std::vector<Monomial> out;
    if (ring.grading == Grading::Fine) {
        Monomial m;
        m.e.resize(ring.n);
        for (int i = 0; i < ring.n; ++i) {
            if (d.v[i] < 0)
                return out;
            m.e[i] = d.v[i];
        }
        out.push_back(std::move(m));
        return out;
    }
    int target = d.v[0];
    if (target < 0)
        return out;
    Monomial cur = Monomial::one(ring.n);
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == ring.n - 1) {
            if (rem % ring.weights[var] == 0) {
                cur.e[var] = rem / ring.weights[var];
                out.push_back(cur);
                cur.e[var] = 0;
            }
            return;
        }
        for (int e = 0; e * ring.weights[var] <= rem; ++e) {
            cur.e[var] = e;
            rec(var + 1, rem - e * ring.weights[var]);
        }
        cur.e[var] = 0;
    };
    if (ring.n == 0) {
        if (target == 0)
            out.push_back(Monomial{{}});
        return out;
    }
    rec(0, target);
    return out;
}

std::vector<uint32_t> Piece::reduce(const GF& gf, std::vector<uint32_t> full) const
{
    for (size_t r = 0; r < rel_rre.size(); ++r) {
        uint32_t c = full[static_cast<size_t>(pivots[r])];
        if (!c)
            continue;
        for (int j = 0; j < static_cast<int>(full.size()); ++j)
            full[static_cast<size_t>(j)] =
                gf.sub(full[static_cast<size_t>(j)], gf.mul(c, rel_rre[r][static_cast<size_t>(j)]));
    }
    std::vector<uint32_t> out(qbasis.size());
    for (size_t k = 0; k < qbasis.size(); ++k)
        out[k] = full[static_cast<size_t>(qbasis[k])];
    return out;
}

int Piece::fbasis_index(const Monomial& m, int gen) const
{
    for (size_t k = 0; k < fbasis.size(); ++k)
        if (fbasis[k].second == gen && fbasis[k].first == m)
            return static_cast<int>(k);
    return -1;
}

namespace {

struct PieceMemo {
    std::mutex mx;
    std::unordered_map<std::string, std::shared_ptr<const Piece>> map;
};
PieceMemo& piece_memo()
{
    static PieceMemo m;
    static bool registered = [] {
        cache::Store::instance().register_clearer([] {
            std::lock_guard<std::mutex> l(piece_memo().mx);
            piece_memo().map.clear();
        });
        return true;
    }();
    (void)registered;
    return m;
}

std::shared_ptr<const Piece> build_piece(const GradedModule& m, const Degree& d)
{
    const Ring& R = *m.ring;
    auto piece = std::make_shared<Piece>();
    for (int i = 0; i < m.ngens(); ++i) {
        Degree need = sub(d, m.shifts[i]);
        for (auto& mon : monomials_of_degree(R, need))
            piece->fbasis.emplace_back(std::move(mon), i);
    }
    if (piece->fbasis.empty())
        return piece;
    // span of relation multiples in this degree: presentation columns plus
    // the ring relations in every generator slot
    std::vector<std::pair<Vec, Degree>> rel_cols;
    for (const auto& c : m.pres.cols) {
        auto cd = vec_degree(R, c, m.shifts);
        rel_cols.emplace_back(c, *cd);
    }
    for (const auto& h : R.relations) {
        auto hd = R.degree_of(h);
        for (int i = 0; i < m.ngens(); ++i)
            rel_cols.emplace_back(vec_of(i, h), add(*hd, m.shifts[i]));
    }
    std::vector<std::vector<uint32_t>> rows;
    for (const auto& [col, cd] : rel_cols) {
        Degree need = sub(d, cd);
        for (const auto& mult : monomials_of_degree(R, need)) {
            std::vector<uint32_t> row(piece->fbasis.size(), 0);
            bool nonzero = false;
            for (const auto& [i, p] : col.comps) {
                for (const auto& t : p.ts) {
                    int idx = piece->fbasis_index(mul(mult, t.m), i);
                    if (idx < 0)
                        fail("InternalError", "piece basis lookup failed");
                    row[static_cast<size_t>(idx)] = R.gf.add(row[static_cast<size_t>(idx)], t.c);
                    nonzero = true;
                }
            }
            if (nonzero)
                rows.push_back(std::move(row));
        }
    }
    if (!rows.empty()) {
        DenseMat dm = DenseMat::zero(static_cast<int>(rows.size()),
                                     static_cast<int>(piece->fbasis.size()));
        for (int i = 0; i < dm.nr; ++i)
            for (int j = 0; j < dm.nc; ++j)
                dm.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        std::vector<int> piv = rref(R.gf, dm);
        for (size_t r = 0; r < piv.size(); ++r) {
            std::vector<uint32_t> row(static_cast<size_t>(dm.nc));
            for (int j = 0; j < dm.nc; ++j)
                row[static_cast<size_t>(j)] = dm.at(static_cast<int>(r), j);
            piece->rel_rre.push_back(std::move(row));
            piece->pivots.push_back(piv[r]);
        }
    }
    std::vector<bool> is_piv(piece->fbasis.size(), false);
    for (int p : piece->pivots)
        is_piv[static_cast<size_t>(p)] = true;
    for (size_t k = 0; k < piece->fbasis.size(); ++k)
        if (!is_piv[k])
            piece->qbasis.push_back(static_cast<int>(k));
    return piece;
}

} // namespace

const Piece& graded_piece(const GradedModule& m, const Degree& d)
{
    if (d.len() != m.ring->degree_len())
        fail("GradingModeMismatch", "degree has wrong length for this grading");
    std::string k = m.key() + "@" + d.str();
    {
        std::lock_guard<std::mutex> l(piece_memo().mx);
        auto it = piece_memo().map.find(k);
        if (it != piece_memo().map.end())
            return *it->second;
    }
    auto p = build_piece(m, d);
    std::lock_guard<std::mutex> l(piece_memo().mx);
    auto [it, ins] = piece_memo().map.emplace(k, p);
    return *it->second;
}

int hilbert_dim(const GradedModule& m, const Degree& d)
{
    return graded_piece(m, d).dim();
}

std::map<Degree, int> hilbert_table(const GradedModule& m, const Box& box)
{
    std::map<Degree, int> out;
    box.for_each([&](const Degree& d) {
        int v = hilbert_dim(m, d);
        if (v)
            out[d] = v;
    });
    return out;
}

bool dims_equal_on(const GradedModule& a, const GradedModule& b, const Box& box)
{
    bool eq = true;
    box.for_each([&](const Degree& d) {
        if (eq && hilbert_dim(a, d) != hilbert_dim(b, d))
            eq = false;
    });
    return eq;
}

DenseMat mult_map(const GradedModule& m, const Degree& d, const Monomial& g)
{
    const Ring& R = *m.ring;
    const Piece& src = graded_piece(m, d);
    Degree td = add(d, R.degree_of(g));
    const Piece& tgt = graded_piece(m, td);
    DenseMat out = DenseMat::zero(tgt.dim(), src.dim());
    for (int col = 0; col < src.dim(); ++col) {
        auto [mon, gen] = src.fbasis[static_cast<size_t>(src.qbasis[static_cast<size_t>(col)])];
        std::vector<uint32_t> full(tgt.fbasis.size(), 0);
        int idx = tgt.fbasis_index(mul(mon, g), gen);
        if (idx < 0)
            fail("InternalError", "multiplication image missing from piece basis");
        full[static_cast<size_t>(idx)] = 1;
        std::vector<uint32_t> coords = tgt.reduce(R.gf, std::move(full));
        for (int rrow = 0; rrow < tgt.dim(); ++rrow)
            out.at(rrow, col) = coords[static_cast<size_t>(rrow)];
    }
    return out;
}

Box default_window(const std::vector<const GradedModule*>& ms, int pad)
{
    std::vector<Degree> all;
    int len = 1;
    for (const auto* m : ms) {
        len = m->ring->degree_len();
        for (const auto& s : m->shifts)
            all.push_back(s);
    }
    if (all.empty())
        all.push_back(Degree{std::vector<int>(len, 0)});
    return pad_box(span_box(all), pad);
}

// ---------------------------------------------------------------- invariants

IdealGens annihilator_module(const GradedModule& m)
{
    GradedModule mm = minimal_presentation(m);
    if (mm.ngens() == 0)
        return {poly_const(*m.ring, 1)};
    IdealGens acc;
    bool first = true;
    for (int i = 0; i < mm.ngens(); ++i) {
        Matrix d{mm.ngens(), {vec_unit(i, *m.ring)}};
        Matrix k = kernel_pregens(m.ring, d, mm.pres);
        IdealGens qi;
        for (const auto& c : k.cols)
            if (const Poly* c0 = c.at(0))
                qi.push_back(*c0);
        qi = ideal_trim(m.ring, qi);
        if (first) {
            acc = qi;
            first = false;
        } else {
            acc = ideal_intersect(m.ring, acc, qi);
        }
    }
    return ideal_trim(m.ring, acc);
}

int module_dim(const GradedModule& m)
{
    if (is_zero_module(m))
        return -1;
    return krull_dimension(m.ring, annihilator_module(m));
}

// ---------------------------------------------------------------- maps

Vec apply_map(const Ring& ring, const Matrix& mat, const Vec& v)
{
    Vec out;
    for (const auto& [l, p] : v.comps) {
        if (l >= mat.ncols())
            fail("ShapeMismatch", "apply_map: component out of range");
        out = add(ring, out, mul_poly(ring, p, mat.cols[l]));
    }
    return out;
}

bool map_well_defined(const ModuleMap& f)
{
    if (f.mat.rows != f.target.ngens())
        return false;
    for (const auto& rel : f.source.pres.cols) {
        Vec img = apply_map(*f.source.ring, f.mat, rel);
        if (!in_span(f.target.ring, f.target.pres, img))
            return false;
    }
    return true;
}

std::string module_to_string(const GradedModule& m)
{
    std::ostringstream os;
    os << "module[" << m.ngens() << " gens";
    for (const auto& s : m.shifts)
        os << " " << s.str();
    os << "; " << m.pres.ncols() << " relations]";
    return os.str();
}

} // namespace cmpairs
