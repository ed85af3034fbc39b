#include "cmpairs/cache.hpp"
#include "cmpairs/verifier.hpp"

#include "json.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <filesystem>
#include <fstream>

using namespace cmpairs;
using namespace cmpairs::testing;

namespace {

const char* kSmall = R"(
ring R = poly(x, y) / (x*y) over GF(32003) grading fine;
ideal I = (x) in R;
module M = coker(R, [[x]]);
module N = coker(R, [[x]], shifts = [(0, 1)]);
pair P = (M, N) wrt I;
expect P.cd = infinite tag paper;
expect P.depth = 0 tag paper;
expect P.cm = no tag paper;
)";

std::string write_temp(const std::string& text)
{
    std::string path = "dsl_test_tmp.cm";
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("dsl parses the running example")
{
    DslDocument doc = parse_dsl(kSmall);
    REQUIRE(doc.rings.size() == 1);
    REQUIRE(doc.modules.size() == 2);
    REQUIRE(doc.pairs.size() == 1);
    REQUIRE(doc.expectations.size() == 3);
    CHECK(doc.ring("R")->ring->relations.size() == 1);
    CHECK(doc.module("N")->mod.shifts[0] == fine({0, 1}));
    CHECK(doc.pair("P")->wrt == "I");
}

TEST_CASE("dsl round trip: print then reparse is identical")
{
    DslDocument doc = parse_dsl(kSmall);
    std::string printed = pretty_print(doc);
    DslDocument doc2 = parse_dsl(printed);
    CHECK(pretty_print(doc2) == printed);
    CHECK(doc2.rings.size() == doc.rings.size());
    CHECK(doc2.modules.size() == doc.modules.size());
    CHECK(doc2.pairs.size() == doc.pairs.size());
    CHECK(doc2.expectations.size() == doc.expectations.size());
}

TEST_CASE("dsl surfaces spans and validation failures")
{
    CHECK_THROWS_WITH_AS(parse_dsl("ring R = poly(x y);"),
                         doctest::Contains("ParseError"), AlgebraError);
    // homogeneity failure surfaces from make_module with the statement span
    const char* bad = "ring R = poly(x, y) grading coarse weights (1, 1);\n"
                      "module Bad = coker(R, [[x + 1]]);\n";
    try {
        parse_dsl(bad);
        CHECK(false);
    } catch (const AlgebraError& e) {
        CHECK(e.code() == "InhomogeneousColumn");
        CHECK(std::string(e.what()).find("2:") != std::string::npos); // line 2
    }
    // unresolved names
    CHECK_THROWS_WITH_AS(parse_dsl("ideal I = (x);"),
                         doctest::Contains("UnresolvedName"), AlgebraError);
    const char* dup = "ring R = poly(x);\nring R = poly(y);\n";
    CHECK_THROWS_WITH_AS(parse_dsl(dup), doctest::Contains("DuplicateName"),
                         AlgebraError);
}

TEST_CASE("dsl module constructors evaluate")
{
    const char* text = R"(
ring S = poly(x, y) over GF(32003) grading fine;
module F = free(S, shifts = [(0, 0), (1, 1)]);
module Mx = coker(S, [[x]]);
module E = ext(1, Mx, F);
module T = tor(1, Mx, Mx);
module H = hom(Mx, Mx);
module D = deficiency(1, Mx);
module Sh = shift(Mx, (2, 0));
module Q = quotient(F, [[x], [0]]);
module Im = image(S, [[x, y]]);
)";
    DslDocument doc = parse_dsl(text);
    CHECK(doc.modules.size() == 9);
    CHECK(hilbert_dim(doc.module("Sh")->mod, fine({2, 0})) == 1);
    CHECK(!is_zero_module(doc.module("E")->mod));
    CHECK(doc.module("Im")->mod.ngens() == 2);
}

TEST_CASE("verifier runs the hypersurface corpus entry")
{
    std::string path = write_temp(kSmall);
    Corpus corpus = load_corpus({path});
    REQUIRE(corpus.entries.size() == 1);
    SuiteReport rep = run_suite(corpus, {}, 2, 7);
    CHECK(rep.fails == 0);
    CHECK(rep.passes > 0);
    bool found_expectations = false;
    for (const auto& r : rep.results) {
        if (r.property == "expectations") {
            found_expectations = true;
            CHECK(r.status == PropertyResult::Status::Pass);
        }
        // every failure must carry a standalone repro command
        if (r.status == PropertyResult::Status::Fail)
            CHECK(r.repro.find("cmpairs") == 0);
    }
    CHECK(found_expectations);
    std::remove(path.c_str());
}

TEST_CASE("verifier reports are deterministic modulo timing")
{
    std::string path = write_temp(kSmall);
    Corpus corpus = load_corpus({path});
    SuiteReport a = run_suite(corpus, {}, 3, 42);
    SuiteReport b = run_suite(corpus, {}, 1, 42);
    REQUIRE(a.results.size() == b.results.size());
    for (size_t i = 0; i < a.results.size(); ++i) {
        CHECK(a.results[i].entry == b.results[i].entry);
        CHECK(a.results[i].property == b.results[i].property);
        CHECK(static_cast<int>(a.results[i].status) ==
              static_cast<int>(b.results[i].status));
        CHECK(a.results[i].details == b.results[i].details);
    }
    std::string ja = report_json_string(a, "verify");
    std::string jb = report_json_string(b, "verify");
    CHECK(ja == jb); // timing lives outside the serialized results
    std::remove(path.c_str());
}

TEST_CASE("json report conforms to the published schema shape")
{
    std::string path = write_temp(kSmall);
    Corpus corpus = load_corpus({path});
    SuiteReport rep = run_suite(corpus, {"chain"}, 1, 3);
    nlohmann::json j = nlohmann::json::parse(report_json_string(rep, "verify"));
    std::ifstream sf(std::string(CMPAIRS_SOURCE_DIR) + "/docs/schema.json");
    REQUIRE(sf.good());
    nlohmann::json schema = nlohmann::json::parse(sf);
    // structural validation against the schema's top-level contract
    for (const auto& req : schema["required"])
        CHECK(j.contains(req.get<std::string>()));
    CHECK(j["tool"] == schema["properties"]["tool"]["const"]);
    CHECK(j["results"].is_array());
    for (const auto& r : j["results"]) {
        for (const auto& req : schema["definitions"]["suite_result"]["required"])
            CHECK(r.contains(req.get<std::string>()));
        bool ok_status = false;
        for (const auto& v : schema["definitions"]["suite_result"]["properties"]["status"]["enum"])
            if (r["status"] == v)
                ok_status = true;
        CHECK(ok_status);
    }
    std::remove(path.c_str());
}

TEST_CASE("extended nat serialization shape")
{
    ExtendedNat v = ExtendedNat::infinite("periodicity: period 2");
    CHECK(std::string(v.kind_str()) == "infinite");
    CHECK(ExtendedNat::finite(3).str() == "3");
    CHECK(ExtendedNat::at_least(2).str() == ">=2");
    CHECK(ExtendedNat::minus_infinite().str() == "-infinite");
}

TEST_CASE("search gap finds nothing in the shipped family")
{
    std::string dir = std::string(CMPAIRS_SOURCE_DIR) + "/corpus";
    REQUIRE(std::filesystem::is_directory(dir));
    Corpus corpus = load_corpus({dir + "/gap_family.cm"});
    auto cands = search_gap(corpus);
    CHECK(cands.empty());
}

TEST_CASE("cache transparency: warm results byte-identical to cold")
{
    auto S2 = s2();
    IdealGens gens = parse_polys(*S2, "x^2 + x*y, y^3");
    Matrix m = ideal_matrix(gens);
    Matrix cold = syzygies(S2, m);
    std::string cold_s = serialize(cold);
    cache::Store::instance().clear_memory(); // drops memos, keeps the disk layer
    Matrix warm = syzygies(S2, m);
    CHECK(serialize(warm) == cold_s);
}

TEST_CASE("dsl ring options: lex order and explicit characteristic")
{
    DslDocument doc = parse_dsl(
        "ring L = poly(y, x) over GF(101) grading coarse weights (2, 1) order lex;\n"
        "ideal J = (y - x^2) in L;\n");
    const auto* r = doc.ring("L");
    REQUIRE(r);
    CHECK(r->ring->gf.p == 101);
    CHECK(r->ring->order.kind == OrderKind::Lex);
    // y > x^5 under lex with y first
    CHECK(r->ring->cmp(parse_poly(*r->ring, "y").lead().m,
                       parse_poly(*r->ring, "x^5").lead().m) > 0);
    std::string printed = pretty_print(doc);
    CHECK(pretty_print(parse_dsl(printed)) == printed);
}
