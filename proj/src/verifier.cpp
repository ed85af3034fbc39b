#include "cmpairs/verifier.hpp"
#include "cmpairs/cache.hpp"
#include "cmpairs/caps.hpp"

#include "json.hpp"

#include <atomic>
#include <random>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

namespace cmpairs {

namespace {

using Status = PropertyResult::Status;

std::string ass_string(const std::vector<MonomialPrime>& ps, const Ring& ring)
{
    std::string s = "{";
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i)
            s += ",";
        s += ps[i].str(ring);
    }
    return s + "}";
}

std::string verdict_string(const CmVerdict& v)
{
    switch (v.kind) {
    case CmVerdict::Kind::Yes:
        return "yes(" + std::to_string(v.t) + ")";
    case CmVerdict::Kind::No:
        return "no";
    case CmVerdict::Kind::Undetermined:
        return "undetermined";
    }
    return "?";
}

std::string strip_spaces(std::string s)
{
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t')
            out += c;
    return out;
}

// per-entry lazily computed invariants shared across properties
struct Ctx {
    const CorpusEntry& e;
    std::optional<PairInvariantReport> rep_;
    std::optional<CdResult> cdn_;
    std::optional<ExtendedNat> graden_;
    bool is_m;

    explicit Ctx(const CorpusEntry& entry)
        : e(entry), is_m(is_maximal_graded_ideal(entry.ring, entry.ideal))
    {
    }
    const PairInvariantReport& rep()
    {
        if (!rep_)
            rep_ = cd_pair(e.ideal, e.m, e.n);
        return *rep_;
    }
    const CdResult& cd_n()
    {
        if (!cdn_)
            cdn_ = cd_support(e.ideal, e.n);
        return *cdn_;
    }
    const ExtendedNat& grade_n()
    {
        if (!graden_)
            graden_ = grade_via_ext(e.ideal, e.n);
        return *graden_;
    }
};

PropertyResult make_result(const Ctx& ctx, const std::string& prop, Status st,
                           std::string details, std::string repro_cmd)
{
    PropertyResult r;
    r.entry = ctx.e.name;
    r.property = prop;
    r.status = st;
    r.details = std::move(details);
    r.repro = "cmpairs " + std::move(repro_cmd) + " -f " + ctx.e.source_file;
    return r;
}

// independent dimension route for H^i_I(M,N) on a window, when one exists
std::optional<std::map<Degree, int>> route_dims(Ctx& ctx, int i, const Box& w)
{
    const auto& e = ctx.e;
    if (i < 0)
        return std::map<Degree, int>{};
    bool im_zero = true;
    for (const auto& g : e.ideal)
        for (int k = 0; k < e.m.ngens() && im_zero; ++k)
            if (!in_span(e.ring, e.m.pres, vec_of(k, g)))
                im_zero = false;
    if (im_zero)
        return hilbert_table(ext_module(i, e.m, e.n), w);
    GradedModule mmin = minimal_presentation(e.m);
    if (mmin.pres.ncols() == 0 && ctx.is_m) {
        GradedModule k = deficiency(i, e.n);
        std::map<Degree, int> t;
        w.for_each([&](const Degree& d) {
            int total = 0;
            for (const auto& a : mmin.shifts)
                total += hilbert_dim(k, negate(add(d, a)));
            if (total)
                t[d] = total;
        });
        return t;
    }
    // unique nonvanishing Ext within a certified range
    ExtendedNat es = e_sup(e.m, e.n, default_cap(*e.ring));
    ExtendedNat pdm = pd(e.m, default_cap(*e.ring));
    if ((pdm.is_finite() || es.is_finite()) && ctx.is_m) {
        int top = pdm.is_finite() ? pdm.value : es.value;
        std::vector<int> nz;
        for (int j = 0; j <= top; ++j)
            if (!ext_is_zero(j, e.m, e.n))
                nz.push_back(j);
        bool certified = pdm.is_finite() || (es.is_finite() && nz.size() == 1 &&
                                             nz[0] == es.value);
        if (certified && nz.size() == 1) {
            int eidx = nz[0];
            if (i < eidx)
                return std::map<Degree, int>{};
            GradedModule exte = ext_module(eidx, e.m, e.n);
            GradedModule kq = deficiency(i - eidx, exte);
            std::map<Degree, int> t;
            w.for_each([&](const Degree& d) {
                int v = hilbert_dim(kq, negate(d));
                if (v)
                    t[d] = v;
            });
            return t;
        }
    }
    return std::nullopt;
}

// Groebner-route dimension: standard monomials under the initial module
int gb_dim(const GradedModule& m, const Degree& d)
{
    const GroebnerBasis& gb = groebner_basis(m.ring, m.pres);
    int count = 0;
    for (int i = 0; i < m.ngens(); ++i) {
        for (const auto& mon : monomials_of_degree(*m.ring, sub(d, m.shifts[static_cast<size_t>(i)]))) {
            bool reducible = false;
            for (int k : gb.bycomp[static_cast<size_t>(i)])
                if (divides(gb.leads[static_cast<size_t>(k)].m, mon)) {
                    reducible = true;
                    break;
                }
            if (!reducible)
                ++count;
        }
    }
    return count;
}

std::string extnat_or(const std::optional<ExtendedNat>& v)
{
    return v ? v->str() : "n/a";
}

// ---------------------------------------------------------------- properties

PropertyResult prop_expectations(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    if (e.expectations.empty())
        return make_result(ctx, "expectations", Status::Skip, "no expectations declared",
                           "cm-pair --pair " + e.name);
    std::vector<std::string> fails;
    std::vector<std::string> checked;
    for (const auto& ex : e.expectations) {
        std::string got;
        if (ex.field == "depth")
            got = ctx.rep().depth.str();
        else if (ex.field == "cd")
            got = ctx.rep().cd.value.str();
        else if (ex.field == "e")
            got = ctx.rep().e.str();
        else if (ex.field == "h")
            got = extnat_or(ctx.rep().h);
        else if (ex.field == "cm")
            got = verdict_string(ctx.rep().verdict);
        else if (ex.field == "cci")
            got = is_cci(e.ring, e.ideal) ? "true" : "false";
        else if (ex.field == "huneke_finite") {
            HunekeReport h = huneke_check(e.ideal, e.m, e.n);
            got = h.applicable ? (h.finite ? "true" : "false") : "inapplicable";
        } else if (ex.field == "huneke_ass") {
            HunekeReport h = huneke_check(e.ideal, e.m, e.n);
            got = h.applicable ? ass_string(h.ass, *e.ring) : "inapplicable";
        } else {
            fails.push_back("unknown field '" + ex.field + "'");
            continue;
        }
        if (strip_spaces(got) != strip_spaces(ex.value))
            fails.push_back(ex.field + ": expected " + ex.value + " [" + ex.tag +
                            "], got " + got);
        else
            checked.push_back(ex.field + "=" + got + " [" + ex.tag + "]");
    }
    std::string detail;
    for (const auto& s : checked)
        detail += s + "; ";
    for (const auto& s : fails)
        detail += "FAIL " + s + "; ";
    return make_result(ctx, "expectations", fails.empty() ? Status::Pass : Status::Fail,
                       detail, "cm-pair --pair " + e.name);
}

PropertyResult prop_chain(Ctx& ctx, uint64_t)
{
    // depth_I N <= depth_I(M,N) <= cd_I(M,N) <= cd_I N + h (last only for I = m)
    const auto& rep = ctx.rep();
    const ExtendedNat& dn = ctx.grade_n();
    std::ostringstream os;
    os << "depth_I N = " << dn.str() << ", depth = " << rep.depth.str()
       << ", cd = " << rep.cd.value.str();
    bool ok = true;
    if (dn.is_finite() && rep.depth.is_finite())
        ok = ok && dn.value <= rep.depth.value;
    else if (dn.is_infinite() && !rep.depth.is_infinite())
        ok = false;
    if (rep.depth.is_finite() && rep.cd.value.is_finite())
        ok = ok && rep.depth.value <= rep.cd.value.value;
    if (rep.depth.is_finite() && rep.cd.value.kind == ExtendedNat::Kind::MinusInfinite)
        ok = false;
    if (ctx.is_m && rep.h && rep.h->is_finite() && ctx.cd_n().value.is_finite()) {
        int upper = ctx.cd_n().value.value + rep.h->value;
        os << ", cd_I N + h = " << upper;
        if (rep.cd.value.is_finite())
            ok = ok && rep.cd.value.value <= upper;
        else if (rep.cd.value.is_infinite())
            ok = false;
    }
    return make_result(ctx, "chain", ok ? Status::Pass : Status::Fail, os.str(),
                       "cm-pair --pair " + ctx.e.name);
}

PropertyResult prop_bounds(Ctx& ctx, uint64_t)
{
    const auto& rep = ctx.rep();
    if (!rep.e.is_finite())
        return make_result(ctx, "bounds-sandwich", Status::Skip,
                           "e_R(M,N) not finite: " + rep.e.str(),
                           "cd --pair " + ctx.e.name);
    GradedModule mn = tensor_modules(ctx.e.m, ctx.e.n);
    CdResult cmn = cd_support(ctx.e.ideal, mn);
    if (!cmn.value.is_finite())
        return make_result(ctx, "bounds-sandwich", Status::Skip,
                           "cd_I(M@N) not certified: " + cmn.value.str(),
                           "cd --pair " + ctx.e.name);
    int u1 = cmn.value.value + rep.e.value;
    std::ostringstream os;
    os << "cd = " << rep.cd.value.str() << " <= cd_I(M@N)+e = " << u1;
    bool ok = true;
    if (rep.cd.value.is_finite())
        ok = rep.cd.value.value <= u1;
    else if (rep.cd.value.is_infinite())
        ok = false;
    if (ctx.is_m && rep.h && rep.h->is_finite() && ctx.cd_n().value.is_finite()) {
        int u2 = ctx.cd_n().value.value + rep.h->value;
        os << ", cd_I N + h = " << u2;
        if (rep.cd.value.is_finite())
            ok = ok && rep.cd.value.value <= std::min(u1, u2);
    }
    return make_result(ctx, "bounds-sandwich", ok ? Status::Pass : Status::Fail, os.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_m_plus_e(Ctx& ctx, uint64_t)
{
    const auto& rep = ctx.rep();
    if (!rep.e.is_finite())
        return make_result(ctx, "m-plus-e", Status::Skip, "e not finite: " + rep.e.str(),
                           "cd --pair " + ctx.e.name);
    if (!rep.cd.value.is_finite())
        return make_result(ctx, "m-plus-e", Status::Skip,
                           "cd not finite: " + rep.cd.value.str(),
                           "cd --pair " + ctx.e.name);
    GradedModule mn = tensor_modules(ctx.e.m, ctx.e.n);
    CdResult cmn = cd_support(ctx.e.ideal, mn);
    GradedModule exte = ext_module(rep.e.value, ctx.e.m, ctx.e.n);
    CdResult ce = cd_support(ctx.e.ideal, exte);
    if (!cmn.value.is_finite() || !ce.value.is_finite())
        return make_result(ctx, "m-plus-e", Status::Skip, "cd certificates incomplete",
                           "cd --pair " + ctx.e.name);
    int upper = cmn.value.value + rep.e.value;
    bool bound_ok = rep.cd.value.value <= upper;
    bool equality = rep.cd.value.value == upper;
    bool criterion = ce.value.value == cmn.value.value;
    std::ostringstream os;
    os << "cd = " << rep.cd.value.value << ", bound = " << upper << ", cd_I(Ext^e) = "
       << ce.value.value << ", cd_I(M@N) = " << cmn.value.value << "; equality "
       << (equality ? "holds" : "fails") << " iff criterion "
       << (criterion ? "holds" : "fails");
    bool ok = bound_ok && (equality == criterion);
    return make_result(ctx, "m-plus-e", ok ? Status::Pass : Status::Fail, os.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_cf_ii(Ctx& ctx, uint64_t)
{
    if (!ctx.is_m)
        return make_result(ctx, "cf-ii", Status::Skip, "needs I = m",
                           "glc --pair " + ctx.e.name);
    const auto& rep = ctx.rep();
    if (!rep.h || !rep.h->is_finite() || !ctx.cd_n().value.is_finite())
        return make_result(ctx, "cf-ii", Status::Skip,
                           "needs finite h and cd_I N (h = " + extnat_or(rep.h) + ")",
                           "glc --pair " + ctx.e.name);
    int h = rep.h->value, c = ctx.cd_n().value.value;
    Box w = default_window({&ctx.e.m, &ctx.e.n}, 3);
    auto rhs = route_dims(ctx, c + h, w);
    if (!rhs)
        return make_result(ctx, "cf-ii", Status::Skip,
                           "no independent route for H^{c+h}(M,N) dims",
                           "glc --pair " + ctx.e.name);
    GradedModule kc = deficiency(c, ctx.e.n);
    GradedModule lhs_mod = tor_module(h, ctx.e.m, kc);
    std::map<Degree, int> lhs;
    w.for_each([&](const Degree& d) {
        int v = hilbert_dim(lhs_mod, negate(d));
        if (v)
            lhs[d] = v;
    });
    bool ok = lhs == *rhs;
    std::ostringstream os;
    os << "Ext^h(M, H^c(N)) vs H^{c+h}(M,N) on " << w.str() << ": "
       << (ok ? "equal" : "DIFFER") << " (h = " << h << ", c = " << c << ")";
    return make_result(ctx, "cf-ii", ok ? Status::Pass : Status::Fail, os.str(),
                       "glc --pair " + ctx.e.name);
}

PropertyResult prop_cf_iii(Ctx& ctx, uint64_t)
{
    const ExtendedNat& dn = ctx.grade_n();
    if (!dn.is_finite())
        return make_result(ctx, "cf-iii", Status::Skip, "depth_I N not finite",
                           "glc --pair " + ctx.e.name);
    int t = dn.value;
    const auto& rep = ctx.rep();
    int h = rep.h && rep.h->is_finite() ? rep.h->value : -1;
    bool hyp = t == 0 || (h >= 0 && t >= std::max(1, h));
    if (!hyp)
        return make_result(ctx, "cf-iii", Status::Skip,
                           "needs depth_I N = 0 or >= max(1, h); depth_I N = " +
                               std::to_string(t) + ", h = " + (h >= 0 ? std::to_string(h) : "n/a"),
                           "glc --pair " + ctx.e.name);
    Box w = default_window({&ctx.e.m, &ctx.e.n}, 3);
    auto lhs = route_dims(ctx, t, w);
    if (!lhs)
        return make_result(ctx, "cf-iii", Status::Skip,
                           "no independent route for H^{depth}(M,N) dims",
                           "glc --pair " + ctx.e.name);
    std::map<Degree, int> rhs;
    if (t == 0) {
        GradedModule h0 = h0_module(ctx.e.ideal, ctx.e.n);
        GradedModule hm = hom_module(ctx.e.m, h0);
        rhs = hilbert_table(hm, w);
    } else if (ctx.is_m) {
        GradedModule kt = deficiency(t, ctx.e.n);
        GradedModule t0 = tor_module(0, ctx.e.m, kt);
        w.for_each([&](const Degree& d) {
            int v = hilbert_dim(t0, negate(d));
            if (v)
                rhs[d] = v;
        });
    } else {
        return make_result(ctx, "cf-iii", Status::Skip,
                           "positive depth case needs I = m",
                           "glc --pair " + ctx.e.name);
    }
    bool ok = *lhs == rhs;
    std::ostringstream os;
    os << "H^{depth}(M,N) vs Hom(M, H^{depth}(N)) on " << w.str() << ": "
       << (ok ? "equal" : "DIFFER") << " (depth_I N = " << t << ")";
    return make_result(ctx, "cf-iii", ok ? Status::Pass : Status::Fail, os.str(),
                       "glc --pair " + ctx.e.name);
}

PropertyResult prop_cfcor(Ctx& ctx, uint64_t)
{
    // N relative CM wrt I and h = 0 imply a CM pair
    if (!ctx.is_m)
        return make_result(ctx, "cfcor-i", Status::Skip, "checked for I = m only",
                           "cm-pair --pair " + ctx.e.name);
    const auto& rep = ctx.rep();
    if (!relative_cm_wrt_m(ctx.e.n))
        return make_result(ctx, "cfcor-i", Status::Skip, "N not relative CM wrt m",
                           "cm-pair --pair " + ctx.e.name);
    if (!rep.h || !rep.h->same_value(ExtendedNat::finite(0)))
        return make_result(ctx, "cfcor-i", Status::Skip,
                           "h != 0 (h = " + extnat_or(rep.h) + ")",
                           "cm-pair --pair " + ctx.e.name);
    bool ok = rep.verdict.kind == CmVerdict::Kind::Yes;
    return make_result(ctx, "cfcor-i", ok ? Status::Pass : Status::Fail,
                       "N relative CM and h = 0, verdict " + rep.verdict.str(),
                       "cm-pair --pair " + ctx.e.name);
}

PropertyResult prop_single_ext(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    int cap = default_cap(*e.ring);
    ExtendedNat pdm = pd(e.m, cap);
    ExtendedNat es = ctx.rep().e;
    int top = pdm.is_finite() ? pdm.value : (es.is_finite() ? es.value : -1);
    if (top < 0)
        return make_result(ctx, "single-ext", Status::Skip,
                           "no certified Ext range (pd " + pdm.str() + ", e " + es.str() + ")",
                           "cd --pair " + ctx.e.name);
    std::vector<int> nz;
    for (int i = 0; i <= top; ++i)
        if (!ext_is_zero(i, e.m, e.n))
            nz.push_back(i);
    bool certified = pdm.is_finite() || (es.is_finite() && nz.size() == 1 && nz[0] == es.value);
    if (!certified || nz.size() != 1)
        return make_result(ctx, "single-ext", Status::Skip,
                           "Ext not concentrated in a single certified index",
                           "cd --pair " + ctx.e.name);
    int eidx = nz[0];
    GradedModule exte = ext_module(eidx, e.m, e.n);
    ExtendedNat de = grade_via_ext(e.ideal, exte);
    CdResult ce = cd_support(e.ideal, exte);
    const auto& rep = ctx.rep();
    std::ostringstream os;
    bool ok = true;
    os << "e = " << eidx << ": depth_I(Ext^e)+e = ";
    if (de.is_finite()) {
        os << de.value + eidx;
        ok = ok && rep.depth.is_finite() && rep.depth.value == de.value + eidx;
    } else {
        os << de.str();
        ok = ok && rep.depth.is_infinite();
    }
    os << " vs depth " << rep.depth.str();
    if (ce.value.is_finite()) {
        os << "; cd_I(Ext^e)+e = " << ce.value.value + eidx << " vs cd "
           << rep.cd.value.str();
        ok = ok && rep.cd.value.is_finite() &&
             rep.cd.value.value == ce.value.value + eidx;
        // CM equivalence: Ext^e relative CM wrt I iff the pair is CM
        if (de.is_finite()) {
            bool ext_cm = de.value == ce.value.value;
            bool pair_cm = rep.verdict.kind == CmVerdict::Kind::Yes;
            os << "; Ext^e CM " << (ext_cm ? "yes" : "no") << " vs pair "
               << verdict_string(rep.verdict);
            ok = ok && (ext_cm == pair_cm);
        }
    }
    return make_result(ctx, "single-ext", ok ? Status::Pass : Status::Fail, os.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_remark_local(Ctx& ctx, uint64_t)
{
    if (!ctx.is_m)
        return make_result(ctx, "remark-local", Status::Skip, "needs I = m",
                           "cd --pair " + ctx.e.name);
    const auto& e = ctx.e;
    int cap = default_cap(*e.ring);
    ExtendedNat pdm = pd(e.m, cap);
    if (!pdm.is_finite())
        return make_result(ctx, "remark-local", Status::Skip, "needs finite pd M",
                           "cd --pair " + ctx.e.name);
    std::vector<int> nz;
    for (int i = 0; i <= pdm.value; ++i)
        if (!ext_is_zero(i, e.m, e.n))
            nz.push_back(i);
    if (nz.size() != 1)
        return make_result(ctx, "remark-local", Status::Skip,
                           "Ext not concentrated in one index",
                           "cd --pair " + ctx.e.name);
    int eidx = nz[0];
    GradedModule exte = ext_module(eidx, e.m, e.n);
    IdealGens m_ideal;
    for (int v = 0; v < e.ring->n; ++v) {
        Monomial mo = Monomial::one(e.ring->n);
        mo.e[v] = 1;
        m_ideal.push_back(Poly{{Term{mo, 1}}});
    }
    ExtendedNat depth_n = grade_via_ext(m_ideal, e.n);
    ExtendedNat depth_e = grade_via_ext(m_ideal, exte);
    int dim_e = module_dim(exte);
    const auto& rep = ctx.rep();
    bool ok = depth_n.is_finite() && depth_e.is_finite() &&
              depth_n.value == depth_e.value + eidx && rep.cd.value.is_finite() &&
              rep.cd.value.value == dim_e + eidx;
    std::ostringstream os;
    os << "depth_m N = " << depth_n.str() << " vs depth_m Ext^e + e = "
       << depth_e.str() << "+" << eidx << "; cd = " << rep.cd.value.str()
       << " vs dim Ext^e + e = " << dim_e << "+" << eidx;
    return make_result(ctx, "remark-local", ok ? Status::Pass : Status::Fail, os.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_nice_appl(Ctx& ctx, uint64_t)
{
    if (!ctx.e.c)
        return make_result(ctx, "nice-appl", Status::Skip, "entry has no C module",
                           "semidualizing --pair " + ctx.e.name);
    const auto& e = ctx.e;
    CapVerdict sd = is_semidualizing(*e.c, default_cap(*e.ring));
    if (!sd.yes)
        return make_result(ctx, "nice-appl", Status::Skip,
                           "C not semidualizing: " + sd.witness,
                           "semidualizing --pair " + ctx.e.name);
    PairInvariantReport cc = cd_pair(e.ideal, *e.c, *e.c);
    GradedModule r = ring_module(e.ring);
    ExtendedNat depth_r = grade_via_ext(e.ideal, r);
    CdResult cd_r = cd_support(e.ideal, r);
    bool ok = cc.depth.same_value(depth_r) && cc.cd.value.same_value(cd_r.value);
    // the cci equivalence: R relative CM wrt I iff (C,C) is a CM pair
    bool r_cm = depth_r.is_exact() && cd_r.value.is_exact() &&
                depth_r.same_value(cd_r.value);
    bool cc_cm = cc.verdict.kind == CmVerdict::Kind::Yes;
    ok = ok && (r_cm == cc_cm);
    std::ostringstream os;
    os << "depth(C,C) = " << cc.depth.str() << " vs depth_I R = " << depth_r.str()
       << "; cd(C,C) = " << cc.cd.value.str() << " vs cd_I R = " << cd_r.value.str()
       << "; cci " << (r_cm ? "yes" : "no") << " vs (C,C) CM " << (cc_cm ? "yes" : "no");
    return make_result(ctx, "nice-appl", ok ? Status::Pass : Status::Fail, os.str(),
                       "semidualizing --pair " + ctx.e.name);
}

PropertyResult prop_dim_formula(Ctx& ctx, uint64_t)
{
    if (!ctx.e.c || !ctx.is_m)
        return make_result(ctx, "dim-formula", Status::Skip,
                           "needs I = m and a C module",
                           "cd --pair " + ctx.e.name);
    const auto& e = ctx.e;
    CapVerdict tr = is_totally_c_reflexive(e.m, *e.c, default_cap(*e.ring));
    if (!tr.yes)
        return make_result(ctx, "dim-formula", Status::Skip,
                           "M not totally C-reflexive: " + tr.witness,
                           "cd --pair " + ctx.e.name);
    PairInvariantReport mc = cd_pair(e.ideal, e.m, *e.c);
    GradedModule mdual = hom_module(e.m, *e.c);
    PairInvariantReport mdc = cd_pair(e.ideal, mdual, *e.c);
    int dm = module_dim(e.m);
    bool ok = mc.cd.value.is_finite() && mdc.cd.value.is_finite() &&
              mc.cd.value.value == dm && mdc.cd.value.value == dm;
    std::ostringstream os;
    os << "cd(M,C) = " << mc.cd.value.str() << ", cd(M^C,C) = " << mdc.cd.value.str()
       << ", dim M = " << dm;
    return make_result(ctx, "dim-formula", ok ? Status::Pass : Status::Fail, os.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_supp_cd(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    IdealGens ann_n = annihilator_module(e.n);
    IdealGens ann_m = annihilator_module(e.m);
    bool supp_contained = true; // Supp N inside Supp M iff ann M inside rad(ann N)
    for (const auto& g : ann_m)
        if (!radical_contains(e.ring, ann_n, g)) {
            supp_contained = false;
            break;
        }
    if (!supp_contained)
        return make_result(ctx, "supp-cd", Status::Skip,
                           "Supp N not contained in Supp M",
                           "cd --pair " + ctx.e.name);
    CdResult cn = ctx.cd_n();
    CdResult cm = cd_support(e.ideal, e.m);
    if (!cn.value.is_finite() || !cm.value.is_finite())
        return make_result(ctx, "supp-cd", Status::Skip, "cd certificates incomplete",
                           "cd --pair " + ctx.e.name);
    bool ok = cn.value.value <= cm.value.value;
    return make_result(ctx, "supp-cd", ok ? Status::Pass : Status::Fail,
                       "cd_I N = " + cn.value.str() + " <= cd_I M = " + cm.value.str(),
                       "cd --pair " + ctx.e.name);
}

PropertyResult prop_grade_routes(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    ExtendedNat a1 = ctx.grade_n();
    ExtendedNat b1 = koszul_grade(e.ideal, e.n);
    ExtendedNat a2 = grade_via_ext(e.ideal, e.m);
    ExtendedNat b2 = koszul_grade(e.ideal, e.m);
    bool ok = a1.same_value(b1) && a2.same_value(b2);
    std::ostringstream os;
    os << "N: ext-route " << a1.str() << " vs koszul " << b1.str() << "; M: ext-route "
       << a2.str() << " vs koszul " << b2.str();
    return make_result(ctx, "grade-routes", ok ? Status::Pass : Status::Fail, os.str(),
                       "depth --pair " + ctx.e.name);
}

PropertyResult prop_cech_duality(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    if (e.ring->grading != Grading::Fine)
        return make_result(ctx, "cech-duality", Status::Skip, "needs fine grading",
                           "lc --pair " + ctx.e.name);
    IdealGens m_ideal;
    for (int v = 0; v < e.ring->n; ++v) {
        Monomial mo = Monomial::one(e.ring->n);
        mo.e[v] = 1;
        m_ideal.push_back(Poly{{Term{mo, 1}}});
    }
    bool ok = true;
    std::string detail;
    for (const GradedModule* mod : {&e.m, &e.n}) {
        Box box = cech_default_box(*mod, 2);
        for (int i = 0; i <= e.ring->n; ++i) {
            CohomologyTable c = cech_cohomology(m_ideal, *mod, i, box);
            CohomologyTable d = dual_cohomology_table(i, *mod, box);
            if (c.dims != d.dims) {
                ok = false;
                detail += "mismatch at i=" + std::to_string(i) + "; ";
            }
        }
    }
    if (detail.empty())
        detail = "Cech tables equal duality tables for M and N, all indices";
    return make_result(ctx, "cech-duality", ok ? Status::Pass : Status::Fail, detail,
                       "lc --pair " + ctx.e.name);
}

PropertyResult prop_hilbert_oracle(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    bool ok = true;
    std::string detail;
    std::vector<const GradedModule*> mods = {&e.m, &e.n};
    if (e.c)
        mods.push_back(&*e.c);
    for (const GradedModule* mod : mods) {
        Box w = default_window({mod}, 3);
        w.for_each([&](const Degree& d) {
            if (ok && gb_dim(*mod, d) != hilbert_dim(*mod, d)) {
                ok = false;
                detail = "mismatch at degree " + d.str();
            }
        });
    }
    if (ok)
        detail = "initial-module standard monomial counts match the row-reduction oracle";
    return make_result(ctx, "hilbert-oracle", ok ? Status::Pass : Status::Fail, detail,
                       "cm-pair --pair " + ctx.e.name);
}

PropertyResult prop_grothendieck(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    bool ok = true;
    std::ostringstream os;
    for (const GradedModule* mod : {&e.m, &e.n}) {
        if (is_zero_module(*mod))
            continue;
        ExtendedNat g = grade_via_ext(e.ideal, *mod);
        CdResult c = cd_support(e.ideal, *mod);
        int dim = module_dim(*mod);
        if (g.is_finite() && c.value.is_finite()) {
            ok = ok && g.value <= c.value.value && c.value.value <= dim;
            os << "[grade " << g.str() << ", cd " << c.value.str() << ", dim " << dim
               << "] ";
        }
    }
    return make_result(ctx, "grothendieck", ok ? Status::Pass : Status::Fail, os.str(),
                       "depth --pair " + ctx.e.name);
}

PropertyResult prop_cm_detect(Ctx& ctx, uint64_t)
{
    const auto& e = ctx.e;
    if (e.ring->n == 0)
        return make_result(ctx, "cm-detect", Status::Skip, "trivial ring",
                           "depth --pair " + ctx.e.name);
    IdealGens m_ideal;
    for (int v = 0; v < e.ring->n; ++v) {
        Monomial mo = Monomial::one(e.ring->n);
        mo.e[v] = 1;
        m_ideal.push_back(Poly{{Term{mo, 1}}});
    }
    bool ok = true;
    std::string detail;
    for (const GradedModule* mod : {&e.m, &e.n}) {
        if (is_zero_module(*mod))
            continue;
        bool cm = relative_cm_wrt_m(*mod);
        ExtendedNat g = grade_via_ext(m_ideal, *mod);
        int dim = module_dim(*mod);
        bool cm2 = g.is_finite() && g.value == dim;
        if (cm != cm2) {
            ok = false;
            detail += "deficiency route and grade=dim disagree; ";
        }
    }
    if (detail.empty())
        detail = "deficiency-vanishing CM test matches grade = dim";
    return make_result(ctx, "cm-detect", ok ? Status::Pass : Status::Fail, detail,
                       "depth --pair " + ctx.e.name);
}

PropertyResult prop_membership(Ctx& ctx, uint64_t seed)
{
    // seeded sampling: random R-combinations of the ideal generators must
    // normal-form to zero against the Groebner basis
    const auto& e = ctx.e;
    if (e.ideal.empty())
        return make_result(ctx, "membership-soundness", Status::Skip, "zero ideal",
                           "depth --pair " + ctx.e.name);
    std::mt19937 rng(static_cast<uint32_t>(seed) ^
                     static_cast<uint32_t>(std::hash<std::string>{}(e.name)));
    std::uniform_int_distribution<int> expd(0, 2);
    std::uniform_int_distribution<uint32_t> coefd(0, e.ring->gf.p - 1);
    const GroebnerBasis& gb = groebner_basis(e.ring, ideal_matrix(e.ideal));
    int trials = 25;
    for (int t = 0; t < trials; ++t) {
        Poly combo = poly_zero();
        for (const auto& g : e.ideal) {
            std::vector<Term> ts;
            for (int k = 0; k < 2; ++k) {
                Monomial m = Monomial::one(e.ring->n);
                for (int v = 0; v < e.ring->n; ++v)
                    m.e[v] = expd(rng);
                ts.push_back(Term{std::move(m), coefd(rng)});
            }
            combo = add(*e.ring, combo, mul(*e.ring, poly_from_terms(*e.ring, ts), g));
        }
        if (!normal_form(gb, combo).is_zero())
            return make_result(ctx, "membership-soundness", Status::Fail,
                               "random combination did not reduce to zero (trial " +
                                   std::to_string(t) + ")",
                               "depth --pair " + ctx.e.name);
    }
    return make_result(ctx, "membership-soundness", Status::Pass,
                       std::to_string(trials) + " seeded combinations reduced to zero",
                       "depth --pair " + ctx.e.name);
}

using PropFn = PropertyResult (*)(Ctx&, uint64_t);

const std::vector<std::pair<std::string, PropFn>>& property_table()
{
    static std::vector<std::pair<std::string, PropFn>> table = {
        {"expectations", prop_expectations},
        {"membership-soundness", prop_membership},
        {"chain", prop_chain},
        {"bounds-sandwich", prop_bounds},
        {"m-plus-e", prop_m_plus_e},
        {"cf-ii", prop_cf_ii},
        {"cf-iii", prop_cf_iii},
        {"cfcor-i", prop_cfcor},
        {"single-ext", prop_single_ext},
        {"remark-local", prop_remark_local},
        {"nice-appl", prop_nice_appl},
        {"dim-formula", prop_dim_formula},
        {"supp-cd", prop_supp_cd},
        {"grade-routes", prop_grade_routes},
        {"cech-duality", prop_cech_duality},
        {"hilbert-oracle", prop_hilbert_oracle},
        {"grothendieck", prop_grothendieck},
        {"cm-detect", prop_cm_detect},
    };
    return table;
}

// module-level expectations: ar, semidualizing, ass, dim, gens
PropertyResult module_expectations(const ModuleEntry& me)
{
    PropertyResult r;
    r.entry = me.name;
    r.property = "module-expectations";
    r.repro = "ar -f " + me.source_file + " --module " + me.name;
    std::vector<std::string> fails, checked;
    for (const auto& ex : me.expectations) {
        std::string got;
        if (ex.field == "ar") {
            FreenessCertificate c = ar_certificate(me.mod, default_cap(*me.mod.ring));
            got = c.verdict == FreenessCertificate::Verdict::Free ? "free"
                  : c.verdict == FreenessCertificate::Verdict::NotFree ? "notfree"
                                                                       : "inconclusive";
        } else if (ex.field == "semidualizing") {
            got = is_semidualizing(me.mod, capscfg::get_or("check_cap", 6)).yes ? "yes"
                                                                                : "no";
        } else if (ex.field == "ass") {
            got = ass_string(ass_monomial(me.mod), *me.mod.ring);
        } else if (ex.field == "dim") {
            got = std::to_string(module_dim(me.mod));
        } else if (ex.field == "gens") {
            got = std::to_string(minimal_presentation(me.mod).ngens());
        } else {
            fails.push_back("unknown field '" + ex.field + "'");
            continue;
        }
        if (strip_spaces(got) != strip_spaces(ex.value))
            fails.push_back(ex.field + ": expected " + ex.value + ", got " + got);
        else
            checked.push_back(ex.field + "=" + got + " [" + ex.tag + "]");
    }
    std::string detail;
    for (const auto& s : checked)
        detail += s + "; ";
    for (const auto& s : fails)
        detail += "FAIL " + s + "; ";
    r.details = detail;
    r.status = fails.empty() ? Status::Pass : Status::Fail;
    return r;
}

} // namespace

// ---------------------------------------------------------------- corpus loading

Corpus load_corpus(const std::vector<std::string>& paths)
{
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".cm")
                    found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(p);
        }
    }
    Corpus corpus;
    corpus.files = files;
    for (const auto& f : files) {
        DslDocument doc;
        try {
            doc = parse_dsl_file(f);
        } catch (const AlgebraError& e) {
            fail("CorpusParseError", std::string(e.what()));
        }
        for (const auto& p : doc.pairs) {
            CorpusEntry entry;
            entry.source_file = f;
            entry.name = p.name;
            const auto* i = doc.ideal(p.wrt);
            const auto* mm = doc.module(p.m);
            const auto* nn = doc.module(p.n);
            entry.ring = mm->mod.ring;
            entry.ideal = i->gens;
            entry.m = mm->mod;
            entry.n = nn->mod;
            if (!p.c.empty())
                entry.c = doc.module(p.c)->mod;
            for (const auto& ex : doc.expectations)
                if (ex.target == p.name)
                    entry.expectations.push_back(ex);
            corpus.entries.push_back(std::move(entry));
        }
        for (const auto& m : doc.modules) {
            ModuleEntry me;
            me.source_file = f;
            me.name = m.name;
            me.mod = m.mod;
            for (const auto& ex : doc.expectations)
                if (ex.target == m.name)
                    me.expectations.push_back(ex);
            if (!me.expectations.empty())
                corpus.modules.push_back(std::move(me));
        }
    }
    return corpus;
}

std::vector<std::string> property_names()
{
    std::vector<std::string> out;
    for (const auto& [name, fn] : property_table())
        out.push_back(name);
    return out;
}

// ---------------------------------------------------------------- suite runner

SuiteReport run_suite(const Corpus& corpus, const std::vector<std::string>& filter,
                      int workers, uint64_t seed)
{
    auto wanted = [&](const std::string& name) {
        if (filter.empty())
            return true;
        for (const auto& f : filter)
            if (name.find(f) != std::string::npos)
                return true;
        return false;
    };
    auto t0 = std::chrono::steady_clock::now();
    cache::Store::instance().reset_stats();

    size_t n_entries = corpus.entries.size();
    std::vector<std::vector<PropertyResult>> per_entry(n_entries);
    std::atomic<size_t> next{0};
    auto work = [&]() {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= n_entries)
                return;
            const CorpusEntry& entry = corpus.entries[idx];
            Ctx ctx(entry);
            for (const auto& [name, fn] : property_table()) {
                if (!wanted(name))
                    continue;
                auto p0 = std::chrono::steady_clock::now();
                PropertyResult r;
                try {
                    r = fn(ctx, seed);
                } catch (const AlgebraError& e) {
                    r.entry = entry.name;
                    r.property = name;
                    r.status = Status::Fail;
                    r.details = std::string("error: ") + e.what();
                    r.repro = "cmpairs verify -f " + entry.source_file;
                }
                r.ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - p0)
                           .count();
                per_entry[idx].push_back(std::move(r));
            }
        }
    };
    int nthreads = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();

    SuiteReport rep;
    rep.seed = seed;
    for (auto& v : per_entry)
        for (auto& r : v)
            rep.results.push_back(std::move(r));
    if (wanted("module-expectations"))
        for (const auto& me : corpus.modules)
            rep.results.push_back(module_expectations(me));
    for (const auto& r : rep.results) {
        if (r.status == Status::Pass)
            ++rep.passes;
        else if (r.status == Status::Fail)
            ++rep.fails;
        else
            ++rep.skips;
    }
    rep.total_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    auto st = cache::Store::instance().stats();
    rep.cache_memory_hits = st.memory_hits;
    rep.cache_disk_hits = st.disk_hits;
    rep.cache_misses = st.misses;
    rep.caps = capscfg::all();
    return rep;
}

std::string report_markdown(const SuiteReport& rep)
{
    std::ostringstream os;
    os << "# Verification suite report\n\n";
    os << "- pass: " << rep.passes << ", fail: " << rep.fails << ", skip: " << rep.skips
       << "\n";
    os << "- seed: " << rep.seed << "\n";
    os << "- cache: " << rep.cache_memory_hits << " memory hits, "
       << rep.cache_disk_hits << " disk hits, " << rep.cache_misses << " misses\n";
    if (!rep.caps.empty()) {
        os << "- caps:";
        for (const auto& [k, v] : rep.caps)
            os << " " << k << "=" << v;
        os << "\n";
    }
    os << "\n| entry | property | status | details |\n|---|---|---|---|\n";
    for (const auto& r : rep.results) {
        const char* st = r.status == Status::Pass   ? "pass"
                         : r.status == Status::Fail ? "FAIL"
                                                    : "skip";
        std::string details = r.details;
        for (auto& c : details)
            if (c == '|')
                c = '/';
        os << "| " << r.entry << " | " << r.property << " | " << st << " | " << details
           << " |\n";
    }
    os << "\nEvery failure reproduces standalone via the echoed command, e.g.\n";
    for (const auto& r : rep.results)
        if (r.status == Status::Fail)
            os << "- `" << r.repro << "`\n";
    return os.str();
}

std::string report_json_string(const SuiteReport& rep, const std::string& command)
{
    nlohmann::ordered_json j;
    j["tool"] = "cmpairs";
    j["version"] = cache::kToolVersion;
    j["command"] = command;
    j["seed"] = rep.seed;
    j["caps"] = rep.caps;
    j["summary"] = {{"pass", rep.passes}, {"fail", rep.fails}, {"skip", rep.skips}};
    j["cache"] = {{"memory_hits", rep.cache_memory_hits},
                  {"disk_hits", rep.cache_disk_hits},
                  {"misses", rep.cache_misses}};
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.results) {
        nlohmann::ordered_json e;
        e["entry"] = r.entry;
        e["property"] = r.property;
        e["status"] = r.status == Status::Pass   ? "pass"
                      : r.status == Status::Fail ? "fail"
                                                 : "skip";
        e["details"] = r.details;
        e["repro"] = r.repro;
        j["results"].push_back(std::move(e));
    }
    return j.dump(2);
}

std::vector<GapCandidate> search_gap(const Corpus& corpus)
{
    std::vector<GapCandidate> out;
    for (const auto& e : corpus.entries) {
        CdResult cn = cd_support(e.ideal, e.n);
        PairInvariantReport rep = cd_pair(e.ideal, e.m, e.n);
        if (cn.value.is_finite() && rep.cd.value.is_finite() &&
            rep.cd.value.value > cn.value.value) {
            GapCandidate c;
            c.entry = e.name;
            c.cd_n = cn.value.str();
            c.cd_pair_value = rep.cd.value.str();
            c.evidence = "strategy " + std::string(strategy_name(rep.strategy)) + "; " +
                         rep.cd.value.certificate;
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace cmpairs
