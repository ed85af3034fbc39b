#pragma once

#include "cmpairs/homology.hpp"

namespace cmpairs {

/// Canonical twist sigma of the ambient ring: sum of the variable weights
/// (the all-ones vector in fine mode).
Degree canonical_shift(const Ring& ring);

/// Deficiency module K^q(N) = Ext^{n-q}_S(N, S(-sigma)) over the ambient
/// polynomial ring S (N restricted along S -> R). By graded local duality
/// its dims at degree d equal the dims of H^q_m(N) at -d.
GradedModule deficiency(int q, const GradedModule& n);

/// min{ i : Ext^i_R(R/J, N) != 0 }; Infinite when N = JN (torsion witness).
ExtendedNat grade_via_ext(const IdealGens& j, const GradedModule& n);

/// Independent route: s - max{ i : H_i(K(g; N)) != 0 } on the Koszul
/// complex of the generators; Infinite when all Koszul homology vanishes.
ExtendedNat koszul_grade(const IdealGens& gens, const GradedModule& n);

// ---------------------------------------------------------------- Cech route

enum class CellStatus { Exact, BoxLimited };

struct CohomologyTable {
    int index = 0;
    Box box{};
    std::map<Degree, int> dims;    // nonzero cells only
    bool all_exact = true;         // every cell carried a stabilization certificate
    std::vector<Degree> limited;   // cells where the colimit walk hit its cap

    long long total() const
    {
        long long t = 0;
        for (const auto& [d, v] : dims)
            t += v;
        return t;
    }
};

/// Degreewise Cech cohomology H^i_I(N) on the box, for a monomial ideal in
/// fine multigrading. Generators acting nilpotently on N are dropped (their
/// localizations vanish identically); each localization piece is a
/// stabilized colimit along multiplication maps, certified by two
/// consecutive equal injective steps plus one verification step.
CohomologyTable cech_cohomology(const IdealGens& i_gens, const GradedModule& n,
                                int index, const Box& box);

/// Table of H^q_m(N) dims read off the deficiency module: dims[d] =
/// dim K^q(N)_{-d}. Exact in every cell.
CohomologyTable dual_cohomology_table(int q, const GradedModule& n, const Box& box);

/// Default Cech box: componentwise span of generator and resolution shifts
/// of N, padded by dim S + 2.
Box cech_default_box(const GradedModule& n, int pad = -1);

/// The I-power torsion submodule (0 :_N I^infinity), presented; computed by
/// saturating kernels, exactly.
GradedModule h0_module(const IdealGens& i_gens, const GradedModule& n);

// ---------------------------------------------------------------- cd

struct CdResult {
    ExtendedNat value;
    std::string witness;      // nonvanishing evidence
    std::string upper_bound;  // duality | dimension | generator-count
    bool box_exhausted = false;
    std::string box_str;

    std::string str() const
    {
        std::string s = value.str();
        if (box_exhausted)
            s += " (box exhausted)";
        return s;
    }
};

/// cd_I(N) with certificates. Exact via deficiency modules when I is the
/// graded maximal ideal; otherwise a descending Cech search from the upper
/// bound min(dim N, #relevant generators). A Finite value always couples a
/// nonvanishing witness with a matching upper bound; otherwise the result
/// is AtLeast with box_exhausted set.
CdResult cd_support(const IdealGens& i_gens, const GradedModule& n);

/// N relative Cohen-Macaulay with respect to the graded maximal ideal:
/// K^q(N) = 0 for every q != dim N.
bool relative_cm_wrt_m(const GradedModule& n);

/// max{ q : K^q(N) != 0 }, i.e. cd_m N by duality; -1 for the zero module.
int cd_via_duality(const GradedModule& n);

} // namespace cmpairs
