#pragma once
//
// Fiber products of von Neumann algebras (via commutants) and spatial fiber
// products of C*-algebras (via kets), morphisms of factorizations and the
// fiber product of two morphisms.
//

#include "qgw/rtensor.hpp"

namespace qgw {

struct FiberProduct {
    SpacePtr space;
    StarAlgebra algebra;
};

/// (A' (x) B')' on H (x)_mu K. Requires the legs to take values in A and B.
FiberProduct fiber_classical(const StarAlgebra& a, const StarAlgebra& b, SpacePtr space,
                             const Tolerance& tol = {});

/// {T : T|alpha>_1, T^*|alpha>_1 in [|alpha>_1 B], T|beta>_2, T^*|beta>_2 in
/// [|beta>_2 A]} on alpha |> H <| beta. Requires rho_alpha(B^dag) in A and
/// rho_beta(B) in B.
FiberProduct fiber_spatial(const StarAlgebra& a, const StarAlgebra& b, SpacePtr space,
                           const Tolerance& tol = {});

/// distance(Ad_phi(classical), spatial).
double fiber_phi_distance(const FiberProduct& classical, const FiberProduct& spatial, const Matrix& phi);

struct MorphismCheck {
    double representation = 0.0;  // max ||pi(rho_alpha(d)) - rho_beta(d)||
    double span = 0.0;            // distance([I_pi alpha], beta)
    bool by_representation = false;
    bool by_span = false;
    bool holds = false;
};

/// Whether pi : A -> B (on H, K) maps alpha to beta. Both criteria are
/// evaluated; disagreement raises InternalInconsistencyError.
MorphismCheck is_morphism(const AlgebraMap& pi, const CStarFactorization& alpha, const CStarFactorization& beta,
                          const Tolerance& tol = {});

/// I_pi: {V : V a = pi(a) V, V alpha in beta, beta^* V in alpha^*}.
OperatorSubspace morphism_intertwiners(const AlgebraMap& pi, const CStarFactorization& alpha,
                                       const CStarFactorization& beta, const Tolerance& tol = {});

/// phi * psi between fiber products, defined by
/// Z (X (x) Y) = (X (x) Y) S for X in L^phi, Y in L^psi.
class FiberMorphism {
public:
    FiberMorphism(const AlgebraMap& phi, const AlgebraMap& psi, SpacePtr src, SpacePtr tgt,
                  const Tolerance& tol = {});

    struct Applied {
        Matrix op;
        double residual = 0.0;
    };

    Applied apply_checked(const Matrix& s) const;
    /// Throws NotWellDefinedError when the defining equations are inconsistent.
    Matrix apply(const Matrix& s) const;

    SpacePtr source() const { return src_; }
    SpacePtr target() const { return tgt_; }

private:
    SpacePtr src_;
    SpacePtr tgt_;
    Tolerance tol_;
    std::vector<Matrix> lifts_;
    Matrix stacked_;
    std::size_t prefix_ = 0;
    Matrix prefix_pinv_;
    double scale_ = 1.0;
};

}  // namespace qgw
