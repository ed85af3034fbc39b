#pragma once

#include "cmpairs/gb.hpp"

#include <map>

namespace cmpairs {

/// Finitely presented graded module over R: generators with degree shifts
/// and a presentation matrix whose columns are homogeneous syzygies among
/// the generators. The zero module (no generators) is legal everywhere.
struct GradedModule {
    RingPtr ring;
    std::vector<Degree> shifts;
    Matrix pres; // pres.rows == shifts.size()

    int ngens() const { return static_cast<int>(shifts.size()); }
    const std::string& key() const; // content key, computed lazily

private:
    mutable std::string key_;
};

/// Validated constructor: checks shapes, normal-forms entries mod J,
/// verifies column homogeneity and strips zero columns.
GradedModule make_module(RingPtr ring, std::vector<Degree> shifts, Matrix pres);
GradedModule free_module(RingPtr ring, std::vector<Degree> shifts);
GradedModule zero_module(RingPtr ring);
/// R itself as a module (one generator in degree 0, no relations).
GradedModule ring_module(RingPtr ring);

/// Degrees of the (homogeneous) columns; throws InhomogeneousColumn.
std::vector<Degree> column_degrees(const Ring& ring, const std::vector<Degree>& shifts,
                                   const Matrix& m);

bool is_zero_module(const GradedModule& m);
/// True iff the minimal presentation has no relations.
bool is_free_module(const GradedModule& m);

/// Gaussian-elimination surgery on unit entries; yields a presentation
/// with minimal generators and no unit entries.
GradedModule minimal_presentation(const GradedModule& m);

/// M with all generator degrees moved by d (the twist M(-d) in the usual
/// convention: generator degrees increase by d).
GradedModule twist(const GradedModule& m, const Degree& d);

/// Reinterprets M over a ring with more relations; requires the new
/// relations to annihilate M.
GradedModule change_ring(const RingPtr& target, const GradedModule& m);

/// M as a module over the ambient polynomial ring S (J-columns adjoined).
GradedModule restrict_to_ambient(const GradedModule& m);

/// M / (classes of the extra columns).
GradedModule quotient_module(const GradedModule& m, const Matrix& extra);

/// The module generated by the given columns inside a graded free module,
/// presented by its syzygies.
GradedModule image_module(RingPtr ring, const std::vector<Degree>& amb_shifts,
                          const Matrix& cols);

/// (im gens + im rels)/(im rels) as a presented module, minimalized.
GradedModule subquotient_presented(RingPtr ring, const std::vector<Degree>& amb_shifts,
                                   const Matrix& gens, const Matrix& rels);

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
GradedModule tensor_modules(const GradedModule& a, const GradedModule& b);

// ---------------------------------------------------------------- graded pieces

/// Vector-space data of one graded piece M_d, built by row reduction over
/// the monomial basis of the free cover — no Gröbner bases involved.
struct Piece {
    std::vector<std::pair<Monomial, int>> fbasis; // (monomial, generator)
    std::vector<std::vector<uint32_t>> rel_rre;   // reduced row echelon of relations
    std::vector<int> pivots;                      // pivot column per rel_rre row
    std::vector<int> qbasis;                      // fbasis indices spanning the quotient

    int dim() const { return static_cast<int>(qbasis.size()); }
    int fdim() const { return static_cast<int>(fbasis.size()); }
    /// Reduces a coefficient vector on fbasis to coordinates on qbasis.
    std::vector<uint32_t> reduce(const GF& gf, std::vector<uint32_t> full) const;
    int fbasis_index(const Monomial& m, int gen) const;
};

/// Memoized graded piece of M at degree d.
const Piece& graded_piece(const GradedModule& m, const Degree& d);

/// dim_k M_d; the Gröbner-free linear-algebra oracle.
int hilbert_dim(const GradedModule& m, const Degree& d);

std::map<Degree, int> hilbert_table(const GradedModule& m, const Box& box);
bool dims_equal_on(const GradedModule& a, const GradedModule& b, const Box& box);

/// Matrix of multiplication by the monomial g from M_d to M_{d+deg g},
/// in the memoized piece bases.
DenseMat mult_map(const GradedModule& m, const Degree& d, const Monomial& g);

/// Degree window spanned by the generator shifts of the given modules,
/// padded componentwise.
Box default_window(const std::vector<const GradedModule*>& ms, int pad);

/// Monomials of the ring with the given degree, in deterministic order.
std::vector<Monomial> monomials_of_degree(const Ring& ring, const Degree& d);

// ---------------------------------------------------------------- invariants

IdealGens annihilator_module(const GradedModule& m);
/// dim R/ann M; -1 for the zero module.
int module_dim(const GradedModule& m);

// ---------------------------------------------------------------- maps

/// Homogeneous map between presented modules: column j of `mat` gives the
/// image of source generator j in target coordinates.
struct ModuleMap {
    GradedModule source, target;
    Matrix mat;
};

Vec apply_map(const Ring& ring, const Matrix& mat, const Vec& v);
/// The map respects presentations: relations map into relations.
bool map_well_defined(const ModuleMap& f);

std::string module_to_string(const GradedModule& m);

} // namespace cmpairs
