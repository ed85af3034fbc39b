#pragma once

#include "cmpairs/core.hpp"

namespace cmpairs {

/// Gröbner data for a submodule of a free module over R = S/J.
///
/// All computation happens over the ambient polynomial ring S: the columns
/// of J·e_i are adjoined to the input generators, so normal forms and
/// membership below are the R-level notions. When `tracked > 0` the module
/// is augmented by one bookkeeping component per tracked input column;
/// elements whose value part vanished during the computation are collected
/// in `syz` — their bookkeeping parts generate the syzygy module of the
/// tracked columns over R.
struct GroebnerBasis {
    RingPtr ring;
    int rank = 0;    // value components (block 0)
    int tracked = 0; // bookkeeping components (block 1), 0 for plain bases
    std::vector<Vec> basis; // value-lead elements, monic, auto-reduced
    std::vector<Vec> syz;   // pure-bookkeeping elements

    // derived index, rebuilt on load
    std::vector<ModTerm> leads;
    std::vector<std::vector<int>> bycomp;

    int total_rank() const { return rank + tracked; }
};

/// Plain reduced Gröbner basis of the span of `gens` (plus J) in R^rank.
/// Results are memoized in-process and disk-cached by content.
const GroebnerBasis& groebner_basis(const RingPtr& ring, const Matrix& gens);

/// Gröbner basis with syzygy tracking of the columns of `tracked_gens`;
/// `untracked_gens` participate in the span but carry no bookkeeping.
const GroebnerBasis& groebner_basis_tracked(const RingPtr& ring,
                                            const Matrix& tracked_gens,
                                            const Matrix& untracked_gens);

/// Unique reduced remainder of v modulo the basis (bookkeeping components
/// pass through untouched). Zero iff v lies in the span over R.
Vec normal_form(const GroebnerBasis& gb, const Vec& v);
Poly normal_form(const GroebnerBasis& gb, const Poly& p); // rank-1 convenience

/// Normal form of a ring element modulo the ring's own relations J.
Poly ring_normal_form(const RingPtr& ring, const Poly& p);
Vec ring_normal_form_vec(const RingPtr& ring, const Vec& v);

bool in_span(const RingPtr& ring, const Matrix& gens, const Vec& v);

/// Generating set of the syzygy module over R of the columns of `m`:
/// a matrix with m.ncols() rows whose columns c satisfy m·c ≡ 0 mod J.
Matrix syzygies(const RingPtr& ring, const Matrix& m);

/// Columns v of R^{d.ncols()} with d·v in the span of `target_rels`
/// (plus J): generators of the preimage of ker(d̄) for the induced map
/// into the module presented by target_rels.
Matrix kernel_pregens(const RingPtr& ring, const Matrix& d, const Matrix& target_rels);

/// Coefficients c with gens·c = v over R, if v lies in the span.
std::optional<Vec> lift(const RingPtr& ring, const Matrix& gens, const Vec& v);

/// Buchberger criterion on a finished basis: every S-pair of value-lead
/// elements reduces to zero. Used by tests and cache revalidation.
bool buchberger_check(const GroebnerBasis& gb, int max_pairs = -1);

// ----------------------------------------------------------------- ideals

/// Ideals of R are generator lists of ring elements (rank-1 columns).
using IdealGens = std::vector<Poly>;

Matrix ideal_matrix(const IdealGens& g);
IdealGens ideal_from_matrix(const RingPtr& ring, const Matrix& m);

/// (A : B) = { r in R : r·B ⊆ A } for ideals A, B.
IdealGens ideal_quotient(const RingPtr& ring, const IdealGens& a, const IdealGens& b);
IdealGens ideal_intersect(const RingPtr& ring, const IdealGens& a, const IdealGens& b);
bool ideal_contains(const RingPtr& ring, const IdealGens& a, const Poly& f);
bool ideal_equal(const RingPtr& ring, const IdealGens& a, const IdealGens& b);
bool ideal_is_unit(const RingPtr& ring, const IdealGens& a);
/// Canonical reduced generating set (the reduced GB, normal-formed mod J).
IdealGens ideal_trim(const RingPtr& ring, const IdealGens& a);

/// True iff f lies in the radical of a (Rabinowitsch membership test).
bool radical_contains(const RingPtr& ring, const IdealGens& a, const Poly& f);

/// Krull dimension of R/a, via independent variable sets modulo the
/// initial ideal. Throws UnitIdeal when a = R.
int krull_dimension(const RingPtr& ring, const IdealGens& a);

/// Tests a = (x_1, ..., x_n) as an ideal of R.
bool is_maximal_graded_ideal(const RingPtr& ring, const IdealGens& a);

/// All generators monomials (after NF mod J)?
bool ideal_is_monomial(const RingPtr& ring, const IdealGens& a);

} // namespace cmpairs
