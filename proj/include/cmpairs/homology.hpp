#pragma once

#include "cmpairs/extnat.hpp"
#include "cmpairs/module.hpp"

namespace cmpairs {

/// Eventual periodicity of a minimal resolution (hypersurface rings):
/// dmat[k + period] equals dmat[k] with generator degrees moved by `shift`,
/// for every k >= start. Verified once; the syzygy pipeline is
/// deterministic, so it propagates.
struct Periodicity {
    int start = 0;  // 0-based index into dmat
    int period = 2;
    Degree shift;
};

/// Minimal graded free resolution of a module, possibly truncated at a cap.
///   F_steps -> ... -> F_1 -> F_0 -> M -> 0
/// dmat[k] is the differential F_{k+1} -> F_k; fshift[k] the generator
/// degrees of F_k. `complete` means the syzygy after the last differential
/// vanished, so pd = steps.
struct Resolution {
    GradedModule target; // minimal presentation of the resolved module
    std::vector<std::vector<Degree>> fshift;
    std::vector<Matrix> dmat;
    bool complete = false;
    std::optional<Periodicity> period;

    int steps() const { return static_cast<int>(dmat.size()); }
    int rank(int k) const
    {
        if (k < 0 || k >= static_cast<int>(fshift.size()))
            return 0;
        return static_cast<int>(fshift[static_cast<size_t>(k)].size());
    }
    /// d_k as a matrix (1-based homological index); zero-column matrix
    /// when out of range.
    const Matrix* diff(int k) const
    {
        if (k < 1 || k > steps())
            return nullptr;
        return &dmat[static_cast<size_t>(k - 1)];
    }
};

/// Minimal free resolution to length `cap` (memoized; extends previous
/// computations of the same module).
Resolution free_resolution(const GradedModule& m, int cap);

/// Prunes columns to a minimal generating set of their span (graded
/// Nakayama, greedy by degree).
Matrix minimal_generators(const RingPtr& ring, const std::vector<Degree>& amb_shifts,
                          const Matrix& cols);

ExtendedNat pd(const GradedModule& m, int cap);

/// Homology ker(f)/im(g) of N^a --g--> N^b --f--> N^c where the maps are
/// polynomial matrices acting on copies of the presented module N; sa, sb,
/// sc are the degree shifts of the copies. Result is a minimal presented
/// module.
GradedModule n_complex_homology(const GradedModule& n, const std::vector<Degree>& sa,
                                const Matrix& g, const std::vector<Degree>& sb,
                                const Matrix& f, const std::vector<Degree>& sc);

/// Ext^i_R(M, N) as a presented graded module. Throws ResolutionTooShort
/// when cap < i+1 would be needed; the default cap is i+1.
GradedModule ext_module(int i, const GradedModule& m, const GradedModule& n);
GradedModule tor_module(int i, const GradedModule& m, const GradedModule& n);
GradedModule hom_module(const GradedModule& m, const GradedModule& n);

/// Cheap exactness test Ext^i(M, N) = 0 (no presentation is built).
bool ext_is_zero(int i, const GradedModule& m, const GradedModule& n);
bool tor_is_zero(int i, const GradedModule& m, const GradedModule& n);

/// e_R(M,N) = sup{ i : Ext^i(M,N) != 0 }. Exact when pd M is finite or a
/// resolution period certifies the tail; AtLeast otherwise.
ExtendedNat e_sup(const GradedModule& m, const GradedModule& n, int cap);
/// sup{ i : Tor_i(M,N) != 0 } with the same certificate semantics.
ExtendedNat t_sup(const GradedModule& m, const GradedModule& n, int cap);

/// Default caps: resolution length = dim S + 4.
int default_cap(const Ring& ring);

/// Betti numbers b_0..b_steps of the minimal resolution.
std::vector<int> betti_numbers(const GradedModule& m, int cap);

// ---------------------------------------------------------------- Koszul

/// Matrices of the Koszul complex on the given ring elements; kd[k] is
/// d_{k+1}: K_{k+1} -> K_k in exterior-algebra bases, and kshift[k] the
/// degrees of the K_k basis elements.
struct KoszulComplex {
    std::vector<Matrix> kd;
    std::vector<std::vector<Degree>> kshift;
};
KoszulComplex koszul_complex(const RingPtr& ring, const IdealGens& gens);

/// H_i of the Koszul complex on `gens` with coefficients in N.
GradedModule koszul_homology(const IdealGens& gens, int i, const GradedModule& n);

} // namespace cmpairs
