#pragma once
//
// Finite-dimensional *-subalgebras of L(C^n) and linear maps defined on them.
//

#include <cstdint>
#include <optional>
#include <vector>

#include "qgw/linalg.hpp"

namespace qgw {

/// A *-subalgebra of L(C^n) carried by an HS-orthonormal basis.
class StarAlgebra {
public:
    StarAlgebra() = default;
    /// Wraps a subspace without checking closure; use certify() for that.
    explicit StarAlgebra(OperatorSubspace basis);

    Index carrier_dim() const { return basis_.rows(); }
    Index dim() const { return basis_.dim(); }
    const OperatorSubspace& space() const { return basis_; }
    Matrix element(Index i) const { return basis_.basis(i); }
    std::vector<Matrix> elements() const { return basis_.basis(); }

    Vector coordinates(const Matrix& x) const { return basis_.coordinates(x); }
    double membership_residual(const Matrix& x) const { return basis_.residual(x); }
    bool contains(const Matrix& x, const Tolerance& tol = {}) const;

private:
    OperatorSubspace basis_;
};

/// Residuals of the StarAlgebra invariants.
struct AlgebraCertificate {
    double adjoint = 0.0;         // max residual of b^* outside the span
    double product = 0.0;         // max residual of b_i b_j outside the span
    double nondegeneracy = 0.0;   // 1 - (rank of [b v] / n), 0 when nondegenerate
    bool unital = false;

    double worst() const;
};

AlgebraCertificate certify(const StarAlgebra& a, const Tolerance& tol = {});

/// Smallest *-algebra containing the generators (and the unit if requested).
StarAlgebra algebra_closure(const std::vector<Matrix>& generators, Index n, bool include_unit,
                            const Tolerance& tol = {});

/// {T : T x = x T for all x in ops} as a *-algebra on C^n.
/// Orthonormal basis, in vec coordinates, of {T : T h = h' T}, h a seeded generic Hermitian element of span(dom) and
/// h' the same combination of the images. Contains every intertwiner of
/// dom -> images. Empty when span(dom) is not *-closed or the images do not
/// respect the adjoint.
std::optional<Matrix> intertwiner_seed(const std::vector<Matrix>& dom, const std::vector<Matrix>& images,
                                       const Tolerance& tol = {});

StarAlgebra commutant_of(const std::vector<Matrix>& ops, Index n, const Tolerance& tol = {});
StarAlgebra commutant(const StarAlgebra& a, const Tolerance& tol = {});

/// A intersected with its commutant.
StarAlgebra center(const StarAlgebra& a, const Tolerance& tol = {});

/// Minimal central projections of a unital algebra, ordered by the smallest
/// index of their support. Uses a generic Hermitian central element drawn
/// from a fixed-seed generator.
std::vector<Matrix> central_projections(const StarAlgebra& a, const Tolerance& tol = {},
                                        std::uint64_t seed = 0x5eed);

/// Whether a map reverses products (representation of the opposite algebra).
enum class Side { Plain, Opposite };

/// Linear map on a StarAlgebra, given by the images of its orthonormal basis.
struct AlgebraMap {
    StarAlgebra domain;
    std::vector<Matrix> images;
    Side side = Side::Plain;

    Index target_rows() const;
    Index target_cols() const;
    Matrix apply(const Matrix& a) const;
    /// Element x of the domain with apply(x) = target; requires injectivity.
    Matrix preimage(const Matrix& target, const Tolerance& tol = {}) const;
    /// Residual of `target` outside the image of the map.
    double image_residual(const Matrix& target) const;
};

/// Residuals of the *-homomorphism axioms (anti-multiplicative when
/// side == Opposite).
struct HomomorphismCertificate {
    double multiplicative = 0.0;
    double adjoint = 0.0;
    double unital = 0.0;  // ||f(1) - 1||, only meaningful for unital domains
    double injectivity = 0.0;  // 0 when faithful, 1 otherwise

    double worst(bool require_unital, bool require_faithful) const;
};

HomomorphismCertificate certify(const AlgebraMap& f, const Tolerance& tol = {});

/// Extends generator images to a map on the algebra generated by
/// `generators`. The graph {g + f(g)} is closed as a *-algebra; a
/// well-defined *-homomorphism exists iff its dimension equals dim(domain).
AlgebraMap extend_homomorphism(const StarAlgebra& domain, const std::vector<Matrix>& generators,
                               const std::vector<Matrix>& images, Side side,
                               const Tolerance& tol = {});

/// Composition g after f (f's images must lie in g's domain).
AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f, const Tolerance& tol = {});

/// Map defined on an algebra whose elements are pushed through `f`.
AlgebraMap restrict_map(const AlgebraMap& f, const StarAlgebra& subalgebra);

/// The operators {f(b) : b in basis} as a StarAlgebra (the image).
StarAlgebra image_algebra(const AlgebraMap& f, const Tolerance& tol = {});

}  // namespace qgw
