#pragma once

#include "cmpairs/dsl.hpp"

namespace cmpairs {

/// One corpus pair: all objects over one ring, with optional auxiliary
/// semidualizing module and tagged expectations.
struct CorpusEntry {
    std::string source_file;
    std::string name;
    RingPtr ring;
    IdealGens ideal;
    GradedModule m, n;
    std::optional<GradedModule> c;
    std::vector<DslDocument::Expectation> expectations;
};

/// Module-level expectations (ar / semidualizing / ass / dim / gens).
struct ModuleEntry {
    std::string source_file;
    std::string name;
    GradedModule mod;
    std::vector<DslDocument::Expectation> expectations;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
    std::vector<ModuleEntry> modules;
    std::vector<std::string> files;
};

/// Loads `.cm` files; directories are walked for *.cm in sorted order.
Corpus load_corpus(const std::vector<std::string>& paths);

struct PropertyResult {
    std::string entry;
    std::string property;
    enum class Status { Pass, Fail, Skip } status = Status::Skip;
    std::string details; // computed values / unmet hypothesis
    std::string repro;   // standalone CLI command reproducing the check
    double ms = 0.0;
};

struct SuiteReport {
    std::vector<PropertyResult> results;
    int passes = 0, fails = 0, skips = 0;
    double total_ms = 0.0;
    long long cache_memory_hits = 0, cache_disk_hits = 0, cache_misses = 0;
    uint64_t seed = 0;
    std::map<std::string, int> caps;
};

/// Evaluates every registered property on every entry (subject to the
/// name filter), entries fanned out over `workers` threads, results in
/// deterministic entry order.
SuiteReport run_suite(const Corpus& corpus, const std::vector<std::string>& filter,
                      int workers, uint64_t seed);

std::vector<std::string> property_names();

std::string report_markdown(const SuiteReport& rep);
std::string report_json_string(const SuiteReport& rep, const std::string& command);

struct GapCandidate {
    std::string entry;
    std::string cd_n;
    std::string cd_pair_value;
    std::string evidence;
};

/// Searches the corpus for certified instances of cd_I N < cd_I(M,N) < oo.
std::vector<GapCandidate> search_gap(const Corpus& corpus);

} // namespace cmpairs
