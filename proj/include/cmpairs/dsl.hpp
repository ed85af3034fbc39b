#pragma once

#include "cmpairs/pair.hpp"

namespace cmpairs {

/// Parsed `.cm` document: ordered declarations of rings, ideals, modules,
/// pairs and expectations, with resolved objects and source spans.
struct DslDocument {
    struct Span {
        int line = 0, col = 0;
    };
    struct RingDecl {
        std::string name;
        RingPtr ring;
        Span span;
        std::string printed; // canonical statement text
    };
    struct IdealDecl {
        std::string name;
        std::string ring_name;
        IdealGens gens;
        Span span;
        std::string printed;
    };
    struct ModuleDecl {
        std::string name;
        std::string ring_name;
        GradedModule mod;
        Span span;
        std::string printed;
    };
    struct PairDecl {
        std::string name;
        std::string m, n, wrt;
        std::string c; // optional auxiliary semidualizing module
        Span span;
        std::string printed;
    };
    struct Expectation {
        std::string target; // pair or module name
        std::string field;
        std::string value;  // canonical value text
        std::string tag;    // paper | derived | trivial
        Span span;
        std::string printed;
    };

    std::vector<RingDecl> rings;
    std::vector<IdealDecl> ideals;
    std::vector<ModuleDecl> modules;
    std::vector<PairDecl> pairs;
    std::vector<Expectation> expectations;
    std::vector<std::string> statement_order; // printed statements in order

    const RingDecl* ring(const std::string& name) const;
    const IdealDecl* ideal(const std::string& name) const;
    const ModuleDecl* module(const std::string& name) const;
    const PairDecl* pair(const std::string& name) const;
};

/// Parses DSL text; throws AlgebraError with code "ParseError" (carrying
/// line:col) on syntax errors, and surfaces homogeneity/validation errors
/// from the module layer with their statement spans.
DslDocument parse_dsl(const std::string& text);
DslDocument parse_dsl_file(const std::string& path);

/// Canonical re-rendering; parse(pretty_print(doc)) yields an identical
/// document.
std::string pretty_print(const DslDocument& doc);

} // namespace cmpairs
