#include "cmpairs/cache.hpp"
#include "cmpairs/caps.hpp"
#include "cmpairs/verifier.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace cmpairs;
using nlohmann::ordered_json;

namespace {

struct Session {
    std::vector<std::string> files;
    std::vector<DslDocument> docs;
    std::string json_path;
    std::vector<std::string> caps_kv;
    int workers = 1;
    uint64_t seed = 1;

    void load()
    {
        for (const auto& kv : caps_kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                fail("BadCaps", "--caps expects key=value, got '" + kv + "'");
            capscfg::set(kv.substr(0, eq), std::stoi(kv.substr(eq + 1)));
        }
        namespace fs = std::filesystem;
        for (const auto& f : files) {
            if (fs::is_directory(f)) {
                std::vector<std::string> found;
                for (const auto& e : fs::directory_iterator(f))
                    if (e.path().extension() == ".cm")
                        found.push_back(e.path().string());
                std::sort(found.begin(), found.end());
                for (const auto& g : found)
                    docs.push_back(parse_dsl_file(g));
            } else {
                docs.push_back(parse_dsl_file(f));
            }
        }
    }

    const DslDocument::PairDecl* find_pair(const std::string& name,
                                           const DslDocument** where) const
    {
        for (const auto& d : docs)
            if (const auto* p = d.pair(name)) {
                *where = &d;
                return p;
            }
        fail("UnresolvedName", "pair '" + name + "' not found in the loaded files");
    }
    const DslDocument::ModuleDecl* find_module(const std::string& name) const
    {
        for (const auto& d : docs)
            if (const auto* m = d.module(name))
                return m;
        fail("UnresolvedName", "module '" + name + "' not found in the loaded files");
    }
    const DslDocument::IdealDecl* find_ideal(const std::string& name,
                                             const DslDocument** where) const
    {
        for (const auto& d : docs)
            if (const auto* i = d.ideal(name)) {
                *where = &d;
                return i;
            }
        fail("UnresolvedName", "ideal '" + name + "' not found in the loaded files");
    }
    RingPtr ring_of_ideal(const DslDocument& d, const DslDocument::IdealDecl& i) const
    {
        return d.ring(i.ring_name)->ring;
    }
};

ordered_json extnat_json(const ExtendedNat& v)
{
    ordered_json j;
    j["kind"] = v.kind_str();
    if (v.kind == ExtendedNat::Kind::Finite || v.kind == ExtendedNat::Kind::AtLeast)
        j["value"] = v.value;
    j["certificate"] = v.certificate;
    return j;
}

ordered_json cdresult_json(const CdResult& c)
{
    ordered_json j;
    j["value"] = extnat_json(c.value);
    j["witness"] = c.witness;
    j["upper_bound"] = c.upper_bound;
    j["box_exhausted"] = c.box_exhausted;
    if (!c.box_str.empty())
        j["box"] = c.box_str;
    return j;
}

ordered_json verdict_json(const CmVerdict& v)
{
    ordered_json j;
    j["kind"] = v.kind == CmVerdict::Kind::Yes   ? "yes"
                : v.kind == CmVerdict::Kind::No ? "no"
                                                : "undetermined";
    if (v.kind == CmVerdict::Kind::Yes)
        j["t"] = v.t;
    j["reason"] = v.reason;
    return j;
}

ordered_json report_json(const PairInvariantReport& rep)
{
    ordered_json j;
    j["depth"] = extnat_json(rep.depth);
    j["cd"] = cdresult_json(rep.cd);
    j["e"] = extnat_json(rep.e);
    if (rep.h)
        j["h"] = extnat_json(*rep.h);
    j["strategy"] = strategy_name(rep.strategy);
    j["verdict"] = verdict_json(rep.verdict);
    ordered_json sv = ordered_json::array();
    for (const auto& [k, v] : rep.strategy_values)
        sv.push_back({{"strategy", k}, {"value", v}});
    j["strategy_values"] = sv;
    j["log"] = rep.log;
    return j;
}

ordered_json table_json(const std::map<Degree, int>& t)
{
    ordered_json arr = ordered_json::array();
    for (const auto& [d, v] : t)
        arr.push_back({{"degree", d.str()}, {"dim", v}});
    return arr;
}

void emit(const Session& s, const std::string& command, const ordered_json& results)
{
    if (s.json_path.empty())
        return;
    ordered_json j;
    j["tool"] = "cmpairs";
    j["version"] = cache::kToolVersion;
    j["command"] = command;
    j["caps"] = capscfg::all();
    j["seed"] = s.seed;
    j["results"] = results;
    std::ofstream out(s.json_path);
    out << j.dump(2) << "\n";
}

int run(int argc, char** argv)
{
    CLI::App app{"computational invariants of pairs of graded modules"};
    app.require_subcommand(1);

    Session s;
    app.add_option("-f,--file", s.files, "input .cm files or directories")
        ->expected(-1);
    app.add_option("--json", s.json_path, "write a JSON report to this path");
    app.add_option("--caps", s.caps_kv, "cap overrides key=value")->expected(-1);
    app.add_option("--workers", s.workers, "worker threads for verify");
    app.add_option("--seed", s.seed, "seed for randomized property sampling");

    std::string pair_name, module_name, module2_name, ideal_name;
    int index = 0, truncations = 4, cap = 6, pad = -1;
    std::vector<std::string> properties;
    bool run_all = false;
    std::string md_path;

    auto* c_depth = app.add_subcommand("depth", "grade/depth with both routes");
    c_depth->add_option("--pair", pair_name);
    c_depth->add_option("--ideal", ideal_name);
    c_depth->add_option("--module", module_name);

    auto* c_cd = app.add_subcommand("cd", "cohomological dimension with certificates");
    c_cd->add_option("--pair", pair_name);
    c_cd->add_option("--ideal", ideal_name);
    c_cd->add_option("--module", module_name);

    auto* c_ext = app.add_subcommand("ext", "graded dims of Ext^i(M,N)");
    c_ext->add_option("--index", index)->required();
    c_ext->add_option("-M,--first", module_name)->required();
    c_ext->add_option("-N,--second", module2_name)->required();
    c_ext->add_option("--pad", pad);

    auto* c_lc = app.add_subcommand("lc", "local cohomology table H^i_I(N)");
    c_lc->add_option("--ideal", ideal_name)->required();
    c_lc->add_option("--module", module_name)->required();
    c_lc->add_option("--index", index)->required();
    c_lc->add_option("--pad", pad);

    auto* c_glc = app.add_subcommand("glc", "truncated generalized local cohomology");
    c_glc->add_option("--pair", pair_name)->required();
    c_glc->add_option("--index", index)->required();
    c_glc->add_option("--q", truncations);
    c_glc->add_option("--pad", pad);

    auto* c_cm = app.add_subcommand("cm-pair", "Cohen-Macaulay pair verdict");
    c_cm->add_option("--pair", pair_name)->required();

    auto* c_cci = app.add_subcommand("cci", "cohomologically complete intersection test");
    c_cci->add_option("--ideal", ideal_name)->required();

    auto* c_sd = app.add_subcommand("semidualizing", "semidualizing module check");
    c_sd->add_option("--module", module_name)->required();
    c_sd->add_option("--cap", cap);

    auto* c_ass = app.add_subcommand("ass", "associated monomial primes");
    c_ass->add_option("--module", module_name)->required();

    auto* c_hu = app.add_subcommand("huneke", "finiteness of Ass of the top module");
    c_hu->add_option("--pair", pair_name)->required();

    auto* c_ar = app.add_subcommand("ar", "freeness certificate pipeline");
    c_ar->add_option("--module", module_name)->required();
    c_ar->add_option("--cap", cap);

    auto* c_verify = app.add_subcommand("verify", "run the property suite");
    c_verify->add_flag("--all", run_all, "run every property");
    c_verify->add_option("--properties", properties, "property name filter")->expected(-1);
    c_verify->add_option("--md", md_path, "write the markdown report here");

    auto* c_gap = app.add_subcommand("search-gap",
                                     "search for cd_I N < cd_I(M,N) < infinity");

    auto* c_print = app.add_subcommand("print", "parse and canonically re-render");

    // global options (-f, --json, --caps, ...) may appear after the verb
    for (auto* sc : {c_depth, c_cd, c_ext, c_lc, c_glc, c_cm, c_cci, c_sd, c_ass, c_hu,
                     c_ar, c_verify, c_gap, c_print})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);
    s.load();

    auto need_pair = [&]() {
        const DslDocument* d = nullptr;
        const auto* p = s.find_pair(pair_name, &d);
        struct PairCtx {
            IdealGens ideal;
            GradedModule m, n;
        } ctx;
        ctx.ideal = d->ideal(p->wrt)->gens;
        ctx.m = d->module(p->m)->mod;
        ctx.n = d->module(p->n)->mod;
        return ctx;
    };

    if (*c_depth) {
        if (!pair_name.empty()) {
            auto ctx = need_pair();
            ExtendedNat v = depth_pair(ctx.ideal, ctx.m, ctx.n);
            std::cout << "depth_I(M,N) = " << v.str() << "  [" << v.certificate << "]\n";
            emit(s, "depth", ordered_json::array({extnat_json(v)}));
        } else {
            const DslDocument* d = nullptr;
            const auto* i = s.find_ideal(ideal_name, &d);
            GradedModule n = s.find_module(module_name)->mod;
            ExtendedNat a = grade_via_ext(i->gens, n);
            ExtendedNat b = koszul_grade(i->gens, n);
            std::cout << "grade via Ext:    " << a.str() << "  [" << a.certificate
                      << "]\n";
            std::cout << "grade via Koszul: " << b.str() << "  [" << b.certificate
                      << "]\n";
            if (!a.same_value(b))
                std::cout << "WARNING: routes disagree\n";
            emit(s, "depth",
                 ordered_json::array({extnat_json(a), extnat_json(b)}));
        }
        return 0;
    }
    if (*c_cd) {
        if (!pair_name.empty()) {
            auto ctx = need_pair();
            PairInvariantReport rep = cd_pair(ctx.ideal, ctx.m, ctx.n);
            std::cout << "cd_I(M,N) = " << rep.cd.value.str() << "  strategy "
                      << strategy_name(rep.strategy) << "\n";
            std::cout << "depth_I(M,N) = " << rep.depth.str() << ", e = " << rep.e.str();
            if (rep.h)
                std::cout << ", h = " << rep.h->str();
            std::cout << "\nverdict: " << rep.verdict.str() << "\n";
            for (const auto& l : rep.log)
                std::cout << "  . " << l << "\n";
            emit(s, "cd", ordered_json::array({report_json(rep)}));
        } else {
            const DslDocument* d = nullptr;
            const auto* i = s.find_ideal(ideal_name, &d);
            GradedModule n = s.find_module(module_name)->mod;
            CdResult c = cd_support(i->gens, n);
            std::cout << "cd_I(N) = " << c.str() << "\n  witness: " << c.witness
                      << "\n  upper bound: " << c.upper_bound << "\n";
            emit(s, "cd", ordered_json::array({cdresult_json(c)}));
        }
        return 0;
    }
    if (*c_ext) {
        GradedModule m = s.find_module(module_name)->mod;
        GradedModule n = s.find_module(module2_name)->mod;
        GradedModule e = ext_module(index, m, n);
        Box w = default_window({&m, &n}, pad < 0 ? 5 : pad);
        auto t = hilbert_table(e, w);
        std::cout << "Ext^" << index << "(M,N) dims on " << w.str() << ":\n";
        for (const auto& [deg, v] : t)
            std::cout << "  " << deg.str() << " -> " << v << "\n";
        if (t.empty())
            std::cout << "  (zero on the window; is_zero = "
                      << (is_zero_module(e) ? "true" : "false") << ")\n";
        emit(s, "ext", table_json(t));
        return 0;
    }
    if (*c_lc) {
        const DslDocument* d = nullptr;
        const auto* i = s.find_ideal(ideal_name, &d);
        GradedModule n = s.find_module(module_name)->mod;
        RingPtr ring = n.ring;
        std::map<Degree, int> dims;
        std::string route;
        Box box = cech_default_box(n, pad);
        if (is_maximal_graded_ideal(ring, i->gens)) {
            dims = dual_cohomology_table(index, n, box).dims;
            route = "graded local duality";
        } else {
            CohomologyTable t = cech_cohomology(i->gens, n, index, box);
            dims = t.dims;
            route = t.all_exact ? "Cech (all cells exact)" : "Cech (some cells box-limited)";
        }
        std::cout << "H^" << index << "_I(N) via " << route << " on " << box.str()
                  << ":\n";
        for (const auto& [deg, v] : dims)
            std::cout << "  " << deg.str() << " -> " << v << "\n";
        emit(s, "lc", table_json(dims));
        return 0;
    }
    if (*c_glc) {
        auto ctx = need_pair();
        Box w = default_window({&ctx.m, &ctx.n}, pad < 0 ? 5 : pad);
        GlcTable t = glc_truncated(ctx.ideal, ctx.m, ctx.n, index,
                                   capscfg::get_or("glc_q", truncations), w);
        std::cout << "Ext^" << index << "(M/I^q M, N) on " << w.str() << ", q = 1.."
                  << t.q_count << (t.exact ? " (exact shortcut)" : "") << "\n";
        for (size_t q = 0; q < t.tables.size(); ++q) {
            std::cout << "  q = " << q + 1 << ":";
            for (const auto& [deg, v] : t.tables[q])
                std::cout << " " << deg.str() << "->" << v;
            std::cout << "\n";
        }
        std::cout << (t.stabilized ? "stabilized (evidence only)" : "not stabilized")
                  << "\n";
        ordered_json arr = ordered_json::array();
        for (const auto& tt : t.tables)
            arr.push_back(table_json(tt));
        emit(s, "glc", arr);
        return 0;
    }
    if (*c_cm) {
        auto ctx = need_pair();
        PairInvariantReport rep = cd_pair(ctx.ideal, ctx.m, ctx.n);
        std::cout << rep.verdict.str() << ": depth=" << rep.depth.str()
                  << ", cd=" << rep.cd.value.str();
        if (rep.cd.value.is_infinite())
            std::cout << " (" << rep.cd.value.certificate << ")";
        std::cout << "\n";
        emit(s, "cm-pair", ordered_json::array({report_json(rep)}));
        return 0;
    }
    if (*c_cci) {
        const DslDocument* d = nullptr;
        const auto* i = s.find_ideal(ideal_name, &d);
        RingPtr ring = s.ring_of_ideal(*d, *i);
        bool v = is_cci(ring, i->gens);
        std::cout << (v ? "true" : "false") << "\n";
        emit(s, "cci", ordered_json::array({v}));
        return 0;
    }
    if (*c_sd) {
        GradedModule c = s.find_module(module_name)->mod;
        CapVerdict v = is_semidualizing(c, cap);
        std::cout << v.str() << "\n";
        emit(s, "semidualizing",
             ordered_json::array({{{"yes", v.yes}, {"cap", v.cap}, {"witness", v.witness}}}));
        return 0;
    }
    if (*c_ass) {
        GradedModule m = s.find_module(module_name)->mod;
        auto ps = ass_monomial(m);
        std::cout << "Ass = {";
        for (size_t i = 0; i < ps.size(); ++i)
            std::cout << (i ? ", " : "") << ps[i].str(*m.ring);
        std::cout << "}\n";
        ordered_json arr = ordered_json::array();
        for (const auto& p : ps)
            arr.push_back(p.str(*m.ring));
        emit(s, "ass", arr);
        return 0;
    }
    if (*c_hu) {
        auto ctx = need_pair();
        HunekeReport h = huneke_check(ctx.ideal, ctx.m, ctx.n);
        if (!h.applicable) {
            std::cout << "not applicable: " << h.reason << "\n";
        } else {
            std::cout << "applicable (c = " << h.c << "), finite = "
                      << (h.finite ? "true" : "false") << ", Ass = {";
            for (size_t i = 0; i < h.ass.size(); ++i)
                std::cout << (i ? ", " : "") << h.ass[i].str(*ctx.n.ring);
            std::cout << "}\n";
        }
        ordered_json jh;
        jh["applicable"] = h.applicable;
        jh["reason"] = h.reason;
        jh["finite"] = h.finite;
        emit(s, "huneke", ordered_json::array({jh}));
        return 0;
    }
    if (*c_ar) {
        GradedModule m = s.find_module(module_name)->mod;
        FreenessCertificate c = ar_certificate(m, cap);
        std::cout << c.str() << "\n";
        for (const auto& [name, okc] : c.conditions)
            std::cout << "  [" << (okc ? "ok" : "fail") << "] " << name << "\n";
        ordered_json jc;
        jc["verdict"] = c.verdict == FreenessCertificate::Verdict::Free ? "free"
                        : c.verdict == FreenessCertificate::Verdict::NotFree
                            ? "notfree"
                            : "inconclusive";
        jc["witness"] = c.witness;
        emit(s, "ar", ordered_json::array({jc}));
        return 0;
    }
    if (*c_verify) {
        Corpus corpus = load_corpus(s.files);
        std::vector<std::string> filter = run_all ? std::vector<std::string>{} : properties;
        SuiteReport rep = run_suite(corpus, filter, s.workers, s.seed);
        std::string md = report_markdown(rep);
        if (md_path.empty())
            std::cout << md;
        else {
            std::ofstream out(md_path);
            out << md;
        }
        if (!s.json_path.empty()) {
            std::ofstream out(s.json_path);
            out << report_json_string(rep, "verify") << "\n";
        }
        std::cout << "pass " << rep.passes << " / fail " << rep.fails << " / skip "
                  << rep.skips << "\n";
        return rep.fails ? 2 : 0;
    }
    if (*c_gap) {
        Corpus corpus = load_corpus(s.files);
        auto cands = search_gap(corpus);
        if (cands.empty()) {
            std::cout << "no certified candidates with cd_I N < cd_I(M,N) < infinity\n";
        } else {
            for (const auto& c : cands)
                std::cout << c.entry << ": cd_I N = " << c.cd_n << " < cd_I(M,N) = "
                          << c.cd_pair_value << "  [" << c.evidence << "]\n";
        }
        ordered_json arr = ordered_json::array();
        for (const auto& c : cands)
            arr.push_back({{"entry", c.entry},
                           {"cd_n", c.cd_n},
                           {"cd_pair", c.cd_pair_value},
                           {"evidence", c.evidence}});
        emit(s, "search-gap", arr);
        return 0;
    }
    if (*c_print) {
        for (const auto& d : s.docs)
            std::cout << pretty_print(d);
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
