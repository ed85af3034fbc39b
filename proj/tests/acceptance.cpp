// Acceptance suite: reproduces the worked examples and the property
// batteries end to end, one PASS/FAIL line per criterion. Exact arithmetic
// over GF(p) means every tolerance is zero.

#include "cmpairs/verifier.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace cmpairs;

namespace {

int g_failures = 0;

double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

void criterion(int n, const std::string& desc, bool ok, const std::string& detail,
               double ms)
{
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << desc << " ["
              << static_cast<long long>(ms) << " ms]";
    if (!detail.empty())
        std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok)
        ++g_failures;
}

IdealGens max_ideal(const RingPtr& r)
{
    IdealGens out;
    for (int v = 0; v < r->n; ++v) {
        Monomial m = Monomial::one(r->n);
        m.e[v] = 1;
        out.push_back(Poly{{Term{m, 1}}});
    }
    return out;
}

long long total_dims(const GradedModule& m, const Box& w)
{
    long long t = 0;
    for (auto& [d, v] : hilbert_table(m, w))
        t += v;
    return t;
}

// componentwise minimum of the support of a finite-length module
std::optional<Degree> support_min(const GradedModule& m, const Box& w)
{
    std::optional<Degree> out;
    w.for_each([&](const Degree& d) {
        if (hilbert_dim(m, d) > 0)
            out = out ? deg_min(*out, d) : d;
    });
    return out;
}

// ---------------------------------------------------------------- 1

void criterion1()
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    auto R = make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {},
                       {parse_poly(*make_ring({"x", "y"}, 32003, OrderKind::Grevlex,
                                              Grading::Fine, {}, {}),
                                   "x*y")});
    IdealGens ix = {parse_poly(*R, "x")};
    GradedModule m = make_module(R, {R->zero_degree()}, Matrix{1, {vec_of(0, parse_poly(*R, "x"))}});
    GradedModule n = make_module(R, {Degree{{0, 1}}}, Matrix{1, {vec_of(0, parse_poly(*R, "x"))}});
    GradedModule rr = ring_module(R);
    Box w{Degree{{-9, -9}}, Degree{{9, 9}}};

    for (int i = 1; i <= 4; ++i) {
        long long t = total_dims(ext_module(2 * i, m, n), w);
        if (t != 1) {
            ok = false;
            detail << "ext(" << 2 * i << ") total " << t << " != 1; ";
        }
    }
    for (int i = 0; i <= 3; ++i) {
        if (!ext_is_zero(2 * i + 1, m, n)) {
            ok = false;
            detail << "ext(" << 2 * i + 1 << ") != 0; ";
        }
    }
    if (!dims_equal_on(ext_module(0, m, n), n, w)) {
        ok = false;
        detail << "ext(0) dims differ from yR; ";
    }
    PairInvariantReport rep = cd_pair(ix, m, n);
    if (!rep.cd.value.is_infinite() ||
        rep.cd.value.certificate.find("period 2") == std::string::npos) {
        ok = false;
        detail << "cd_pair = " << rep.cd.value.str() << "; ";
    }
    CdResult cdn = cd_support(ix, n);
    if (!cdn.value.same_value(ExtendedNat::finite(0))) {
        ok = false;
        detail << "cd_support = " << cdn.value.str() << " != 0; ";
    }
    if (rep.verdict.kind != CmVerdict::Kind::No) {
        ok = false;
        detail << "(M,N) verdict " << rep.verdict.str() << "; ";
    }
    CmVerdict vr = is_cm_pair(ix, rr, n);
    if (vr.kind != CmVerdict::Kind::Yes || vr.t != 0) {
        ok = false;
        detail << "(R,N) verdict " << vr.str() << "; ";
    }
    double ms = ms_since(t0);
    if (ms >= 1000.0) {
        ok = false;
        detail << "runtime " << ms << " ms >= 1 s; ";
    }
    criterion(1, "hypersurface pair reproduction (runtime < 1 s)", ok, detail.str(), ms);
}

// ---------------------------------------------------------------- 2

void criterion2()
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    auto amb = make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine,
                         {}, {});
    auto S4 = make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine,
                        {}, parse_polys(*amb, "x^2, x*y, y^2"));
    auto R36 = make_ring({"x", "y", "t", "u"}, 32003, OrderKind::Grevlex, Grading::Fine,
                         {}, parse_polys(*amb, "x^2, x*y, y^2, t^2, t*u, u^2"));
    Matrix pres{1, {}};
    for (auto& p : parse_polys(*S4, "t^2, t*u, u^2"))
        pres.cols.push_back(vec_of(0, p));
    GradedModule r36_over_s4 = make_module(S4, {S4->zero_degree()}, pres);
    GradedModule c_pre = ext_module(2, r36_over_s4, ring_module(S4));
    GradedModule c = change_ring(R36, c_pre);

    CapVerdict sd = is_semidualizing(c, 6);
    if (!sd.yes) {
        ok = false;
        detail << "semidualizing failed: " << sd.witness << "; ";
    }
    GradedModule cmin = minimal_presentation(c);
    if (cmin.pres.ncols() == 0) {
        ok = false;
        detail << "C is free (Betti check); ";
    }
    // non-dualizing evidence: C is not a shift of deficiency(0, R36)
    GradedModule omega = deficiency(0, ring_module(R36));
    Box w{Degree{{-8, -8, -8, -8}}, Degree{{8, 8, 8, 8}}};
    auto min_c = support_min(cmin, w);
    auto min_o = support_min(omega, w);
    if (min_c && min_o) {
        Degree delta = sub(*min_c, *min_o);
        if (dims_equal_on(cmin, twist(omega, delta), w)) {
            ok = false;
            detail << "C matches the dualizing module up to shift " << delta.str()
                   << "; ";
        }
    }
    IdealGens m36 = max_ideal(R36);
    PairInvariantReport cc = cd_pair(m36, c, c);
    ExtendedNat depth_r = grade_via_ext(m36, ring_module(R36));
    CdResult cd_r = cd_support(m36, ring_module(R36));
    bool nice = cc.depth.same_value(ExtendedNat::finite(0)) &&
                depth_r.same_value(ExtendedNat::finite(0)) &&
                cc.cd.value.same_value(ExtendedNat::finite(0)) &&
                cd_r.value.same_value(ExtendedNat::finite(0)) &&
                cc.verdict.kind == CmVerdict::Kind::Yes && cc.verdict.t == 0;
    if (!nice) {
        ok = false;
        detail << "(C,C) invariants: depth " << cc.depth.str() << ", cd "
               << cc.cd.value.str() << ", depth R " << depth_r.str() << ", cd R "
               << cd_r.value.str() << ", verdict " << cc.verdict.str() << "; ";
    }
    double ms = ms_since(t0);
    if (ms >= 30000.0) {
        ok = false;
        detail << "runtime " << ms << " ms >= 30 s; ";
    }
    criterion(2, "Artinian semidualizing module reproduction (runtime < 30 s)", ok,
              detail.str(), ms);
}

// ---------------------------------------------------------------- 3

void criterion3()
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    auto scratch = make_ring({"x", "y", "z"}, 32003, OrderKind::Grevlex, Grading::Coarse,
                             {3, 4, 5}, {});
    auto NS = make_ring({"x", "y", "z"}, 32003, OrderKind::Grevlex, Grading::Coarse,
                        {3, 4, 5},
                        {parse_poly(*scratch, "y^2 - x*z"),
                         parse_poly(*scratch, "z^2 - x^2*y"),
                         parse_poly(*scratch, "y*z - x^3")});
    GradedModule r = ring_module(NS);
    GradedModule omega = deficiency(1, r);
    if (minimal_presentation(omega).ngens() != 2) {
        ok = false;
        detail << "omega has " << minimal_presentation(omega).ngens()
               << " generators != 2; ";
    }
    CapVerdict sd = is_semidualizing(omega, 6);
    if (!sd.yes) {
        ok = false;
        detail << "omega not semidualizing to cap 6: " << sd.witness << "; ";
    }
    IdealGens m = max_ideal(NS);
    PairInvariantReport rep = cd_pair(m, omega, omega);
    ExtendedNat depth_r = grade_via_ext(m, r);
    CdResult cd_r = cd_support(m, r);
    bool all1 = rep.depth.same_value(ExtendedNat::finite(1)) &&
                rep.cd.value.same_value(ExtendedNat::finite(1)) &&
                depth_r.same_value(ExtendedNat::finite(1)) &&
                cd_r.value.same_value(ExtendedNat::finite(1));
    if (!all1) {
        ok = false;
        detail << "depth(C,C) " << rep.depth.str() << ", cd(C,C) " << rep.cd.value.str()
               << ", depth R " << depth_r.str() << ", cd R " << cd_r.value.str() << "; ";
    }
    criterion(3, "positive-dimensional semidualizing canonical module", ok, detail.str(),
              ms_since(t0));
}

// ---------------------------------------------------------------- 4..8 via the suite

struct SuiteOutcome {
    SuiteReport rep;
    size_t entries = 0;
    double suite_ms = 0.0;
};

SuiteOutcome run_corpus(const std::string& corpus_dir)
{
    SuiteOutcome out;
    Corpus corpus = load_corpus({corpus_dir});
    out.entries = corpus.entries.size();
    auto t0 = std::chrono::steady_clock::now();
    out.rep = run_suite(corpus, {}, 4, 20260811);
    out.suite_ms = ms_since(t0);
    return out;
}

int fails_of(const SuiteReport& rep, const std::string& prop)
{
    int f = 0;
    for (const auto& r : rep.results)
        if (r.property == prop && r.status == PropertyResult::Status::Fail)
            ++f;
    return f;
}

int passes_of(const SuiteReport& rep, const std::string& prop)
{
    int p = 0;
    for (const auto& r : rep.results)
        if (r.property == prop && r.status == PropertyResult::Status::Pass)
            ++p;
    return p;
}

const PropertyResult* result_of(const SuiteReport& rep, const std::string& entry,
                                const std::string& prop)
{
    for (const auto& r : rep.results)
        if (r.entry == entry && r.property == prop)
            return &r;
    return nullptr;
}

void criterion4(const SuiteOutcome& so)
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;
    if (so.entries < 12) {
        ok = false;
        detail << "only " << so.entries << " corpus entries; ";
    }
    for (const char* prop : {"chain", "bounds-sandwich", "m-plus-e"}) {
        int f = fails_of(so.rep, prop);
        int p = passes_of(so.rep, prop);
        if (f > 0 || p == 0) {
            ok = false;
            detail << prop << ": " << f << " fails, " << p << " passes; ";
        }
    }
    detail << so.entries << " entries, chain passes " << passes_of(so.rep, "chain")
           << ", m-plus-e passes " << passes_of(so.rep, "m-plus-e");
    criterion(4, "theorem chain and bounds sandwich across the corpus", ok, detail.str(),
              ms_since(t0));
}

void criterion5(const SuiteOutcome& so)
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;
    for (const char* prop : {"grade-routes", "cech-duality", "hilbert-oracle"}) {
        int f = fails_of(so.rep, prop);
        int p = passes_of(so.rep, prop);
        if (f > 0 || p == 0) {
            ok = false;
            detail << prop << ": " << f << " fails, " << p << " passes; ";
        } else {
            detail << prop << " " << p << " passes; ";
        }
    }
    criterion(5, "route agreement suites (grade, Cech/duality, hilbert oracle)", ok,
              detail.str(), ms_since(t0));
}

void criterion6(const SuiteOutcome& so)
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    // three-way strategy agreement on (m, S2/x, S2) = corpus entry Q1
    auto S2 = make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {}, {});
    GradedModule mx = make_module(S2, {S2->zero_degree()},
                                  Matrix{1, {vec_of(0, parse_poly(*S2, "x"))}});
    PairInvariantReport rep = cd_pair(max_ideal(S2), mx, ring_module(S2));
    int agreeing = 0;
    for (auto& [name, value] : rep.strategy_values)
        if (value == "2" && (name == std::string("SingleExt") ||
                             name == std::string("CMPlusH") ||
                             name == std::string("CMLocalFormula")))
            ++agreeing;
    if (agreeing < 3) {
        ok = false;
        detail << "only " << agreeing << " strategies agree on 2; ";
    }
    for (const auto& l : rep.log)
        if (l.find("DISAGREEMENT") != std::string::npos) {
            ok = false;
            detail << "log: " << l << "; ";
        }
    // dimension identities on the two named entries
    for (const char* entry : {"Q1", "P4"}) {
        for (const char* prop : {"cf-ii", "cf-iii"}) {
            const PropertyResult* r = result_of(so.rep, entry, prop);
            if (!r || r->status != PropertyResult::Status::Pass) {
                ok = false;
                detail << entry << "/" << prop << " "
                       << (r ? (r->status == PropertyResult::Status::Skip ? "skipped"
                                                                          : "failed")
                             : "missing")
                       << (r ? " (" + r->details + ")" : "") << "; ";
            }
        }
    }
    criterion(6, "strategy cross-check and dimension identities", ok, detail.str(),
              ms_since(t0));
}

void criterion7()
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    auto amb = make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {}, {});
    auto R = make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {},
                       {parse_poly(*amb, "x*y")});
    IdealGens ix = {parse_poly(*R, "x")};
    GradedModule m = make_module(R, {R->zero_degree()},
                                 Matrix{1, {vec_of(0, parse_poly(*R, "x"))}});
    GradedModule n = make_module(R, {Degree{{0, 1}}},
                                 Matrix{1, {vec_of(0, parse_poly(*R, "x"))}});
    HunekeReport h = huneke_check(ix, m, n);
    if (!h.applicable || !h.finite || h.ass.size() != 1 || h.ass[0].str(*R) != "(x)") {
        ok = false;
        detail << "huneke: applicable " << h.applicable << ", finite " << h.finite
               << ", ass size " << h.ass.size() << "; ";
    }
    // ass_monomial regression set
    auto check_ass = [&](const GradedModule& mod, const std::string& expect,
                         const std::string& label) {
        auto ps = ass_monomial(mod);
        std::string got = "{";
        for (size_t i = 0; i < ps.size(); ++i)
            got += (i ? "," : "") + ps[i].str(*mod.ring);
        got += "}";
        if (got != expect) {
            ok = false;
            detail << label << ": " << got << " != " << expect << "; ";
        }
    };
    check_ass(free_module(amb, {amb->zero_degree()}), "{(0)}", "free plane module");
    check_ass(ring_module(R), "{(x),(y)}", "hypersurface ring");
    Matrix emb{1, {vec_of(0, parse_poly(*amb, "x^2")), vec_of(0, parse_poly(*amb, "x*y"))}};
    check_ass(make_module(amb, {amb->zero_degree()}, emb), "{(x),(x,y)}",
              "embedded-prime module");
    criterion(7, "finiteness of Ass and the associated-prime regression set", ok,
              detail.str(), ms_since(t0));
}

void criterion8(const SuiteOutcome& so, double total_budget_ms)
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    auto S2 = make_ring({"x", "y"}, 32003, OrderKind::Grevlex, Grading::Fine, {}, {});
    GradedModule f2 = free_module(S2, {S2->zero_degree(), Degree{{1, 0}}});
    FreenessCertificate c1 = ar_certificate(f2, 4);
    if (c1.verdict != FreenessCertificate::Verdict::Free) {
        ok = false;
        detail << "free module: " << c1.str() << "; ";
    }
    Matrix cols{1, {vec_of(0, parse_poly(*S2, "x")), vec_of(0, parse_poly(*S2, "y"))}};
    GradedModule ixy = image_module(S2, {S2->zero_degree()}, cols);
    FreenessCertificate c2 = ar_certificate(ixy, 4);
    if (c2.verdict != FreenessCertificate::Verdict::NotFree ||
        c2.witness.find("reflexive") == std::string::npos) {
        ok = false;
        detail << "(x,y): " << c2.str() << "; ";
    }
    GradedModule mx = make_module(S2, {S2->zero_degree()},
                                  Matrix{1, {vec_of(0, parse_poly(*S2, "x"))}});
    FreenessCertificate c3 = ar_certificate(mx, 4);
    if (c3.verdict != FreenessCertificate::Verdict::NotFree) {
        ok = false;
        detail << "S2/x: " << c3.str() << "; ";
    }
    if (so.suite_ms >= total_budget_ms) {
        ok = false;
        detail << "full suite took " << so.suite_ms << " ms >= " << total_budget_ms
               << "; ";
    } else {
        detail << "full suite " << static_cast<long long>(so.suite_ms) << " ms";
    }
    criterion(8, "AR certificates and full-suite runtime (< 2 min)", ok, detail.str(),
              ms_since(t0) + so.suite_ms);
}

} // namespace

int main(int argc, char** argv)
{
    std::string corpus_dir = argc > 1 ? argv[1] : "corpus";
    std::cout << "acceptance suite (corpus: " << corpus_dir << ")\n";
    auto t0 = std::chrono::steady_clock::now();
    try {
        criterion1();
        criterion2();
        criterion3();
        SuiteOutcome so = run_corpus(corpus_dir);
        criterion4(so);
        criterion5(so);
        criterion6(so);
        criterion7();
        criterion8(so, 120000.0);
    } catch (const AlgebraError& e) {
        std::cout << "FAIL unexpected error: " << e.what() << "\n";
        ++g_failures;
    }
    std::cout << (g_failures ? "ACCEPTANCE FAILED (" + std::to_string(g_failures) +
                                   " criteria)"
                             : "ACCEPTANCE PASSED")
              << " [" << static_cast<long long>(ms_since(t0)) << " ms total]\n";
    return g_failures ? 1 : 0;
}
