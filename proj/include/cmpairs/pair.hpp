#pragma once

#include "cmpairs/localcoh.hpp"

namespace cmpairs {

// ---------------------------------------------------------------- depth of a pair

/// depth_I(M,N) = depth_{ann(M/IM)} N; Infinite iff M = IM or that grade
/// is infinite.
ExtendedNat depth_pair(const IdealGens& i_gens, const GradedModule& m,
                       const GradedModule& n);

// ---------------------------------------------------------------- truncated limits

/// Graded dimension tables of Ext^i(M/I^q M, N) for q = 1..Q on a window.
/// When I·M = 0 the limit is constant and the table is exact.
struct GlcTable {
    int index = 0;
    Box window{};
    int q_count = 0;
    std::vector<std::map<Degree, int>> tables; // per q, nonzero cells
    bool stabilized = false;   // three consecutive equal tables (evidence only)
    bool exact = false;        // I*M = 0 shortcut: the system is constant
};

GlcTable glc_truncated(const IdealGens& i_gens, const GradedModule& m,
                       const GradedModule& n, int index, int q_count,
                       const Box& window);

// ---------------------------------------------------------------- h invariant

/// h_I(M,N) = sup_q e_R(M, H^q_I(N)) for I = m, through the duality
/// Ext^p(M, D(K^q)) = D(Tor_p(M, K^q)): the value is sup_q t_sup(M, K^q(N)).
ExtendedNat h_invariant(const GradedModule& m, const GradedModule& n);

// ---------------------------------------------------------------- cd of a pair

enum class CdStrategy {
    ExtConstant,    // I*M = 0: the limit system is constant, cd = e_R(M,N)
    FreeModule,     // M free: cd = cd_I N
    SingleExt,      // unique nonvanishing Ext^e within a certified range
    CMPlusH,        // I = m, N relative CM: cd = cd_I N + h
    CMLocalFormula, // I = m, R CM, pd M finite: cd = dim R - depth_{ann N} M
    BoundsOnly,
};
const char* strategy_name(CdStrategy s);

struct CmVerdict {
    enum class Kind { Yes, No, Undetermined };
    Kind kind = Kind::Undetermined;
    int t = 0; // the common value for Yes
    std::string reason;

    std::string str() const
    {
        switch (kind) {
        case Kind::Yes:
            return "Yes(" + std::to_string(t) + ")";
        case Kind::No:
            return "No";
        case Kind::Undetermined:
            return "Undetermined";
        }
        return "?";
    }
};

struct PairInvariantReport {
    ExtendedNat depth;             // BiZa route, always computed
    CdResult cd;
    ExtendedNat e;                 // e_R(M,N)
    std::optional<ExtendedNat> h;  // only when I = m
    CdStrategy strategy = CdStrategy::BoundsOnly;
    CmVerdict verdict;
    std::vector<std::pair<std::string, std::string>> strategy_values;
    std::vector<std::string> log;  // cross-checks and notes
};

/// Full pair analysis: depth via the annihilator formula, cd through a
/// strategy cascade with certificates, the CM-pair verdict, and a
/// cross-check log. I must be monomial (fine grading) or the graded
/// maximal ideal.
PairInvariantReport cd_pair(const IdealGens& i_gens, const GradedModule& m,
                            const GradedModule& n);

CmVerdict is_cm_pair(const IdealGens& i_gens, const GradedModule& m,
                     const GradedModule& n);

/// grade I = cd_I R (cohomologically complete intersection).
bool is_cci(const RingPtr& ring, const IdealGens& i_gens);

// ---------------------------------------------------------------- semidualizing

struct CapVerdict {
    bool yes = false;
    int cap = 0;
    std::string witness; // failing condition when no

    std::string str() const
    {
        return yes ? "Yes-to-cap(" + std::to_string(cap) + ")" : "No(" + witness + ")";
    }
};

/// Homothety R -> Hom(C,C) bijective on a window plus Ext^i(C,C) = 0 for
/// 1 <= i <= cap.
CapVerdict is_semidualizing(const GradedModule& c, int cap);

/// Canonical map M -> Hom(Hom(M,C),C) bijective on a window plus vanishing
/// Ext^i(M,C) and Ext^i(M^C,C) for 1 <= i <= cap.
CapVerdict is_totally_c_reflexive(const GradedModule& m, const GradedModule& c, int cap);

// ---------------------------------------------------------------- associated primes

/// A monomial prime of R, generated by a subset of the variables.
struct MonomialPrime {
    std::vector<int> vars; // sorted ascending

    bool operator==(const MonomialPrime& o) const { return vars == o.vars; }
    bool operator<(const MonomialPrime& o) const
    {
        if (vars.size() != o.vars.size())
            return vars.size() < o.vars.size();
        return vars < o.vars;
    }
    std::string str(const Ring& ring) const;
};

IdealGens monomial_prime_gens(const RingPtr& ring, const MonomialPrime& p);

/// Associated primes of a finite multigraded module over a fine-graded
/// ring; enumerates the monomial primes of R.
std::vector<MonomialPrime> ass_monomial(const GradedModule& m);

struct HunekeReport {
    bool applicable = false;
    std::string reason;
    int c = 0; // cd_I N when applicable
    std::vector<MonomialPrime> ass;
    bool finite = false;
};

/// Finiteness of Ass H^{cd_I N}_I(M,N) under the relative-CM hypothesis;
/// exact via the torsion submodule when cd_I N = 0, via duality when I = m.
HunekeReport huneke_check(const IdealGens& i_gens, const GradedModule& m,
                          const GradedModule& n);

// ---------------------------------------------------------------- AR certificate

struct FreenessCertificate {
    enum class Verdict { Free, NotFree, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
    std::vector<std::pair<std::string, bool>> conditions;

    std::string str() const
    {
        switch (verdict) {
        case Verdict::Free:
            return "Free";
        case Verdict::NotFree:
            return "NotFree(" + witness + ")";
        case Verdict::Inconclusive:
            return "Inconclusive(" + witness + ")";
        }
        return "?";
    }
};

/// Freeness pipeline: reflexivity, vanishing Ext against R, maximal depth
/// of the dual, duals' Ext vanishing to cap, Fitting-ideal codimension of
/// the non-free locus; Free requires a zero minimal relation matrix.
FreenessCertificate ar_certificate(const GradedModule& m, int cap);

// ---------------------------------------------------------------- canonical map data

/// Hom(M, N) as explicit subquotient data of N^{u_M}: needed to build
/// canonical maps (homothety, biduals). Uses M exactly as presented.
struct HomData {
    std::vector<Degree> amb;
    Matrix kergens;
    Matrix rels;
    std::vector<Degree> gen_degrees; // degrees of kergens columns
};
HomData hom_data(const GradedModule& m, const GradedModule& n);
/// Presented module (im kergens + im rels)/(im rels), minimalized.
GradedModule hom_data_module(const RingPtr& ring, const HomData& d);

} // namespace cmpairs
