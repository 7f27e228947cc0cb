#pragma once
//
// Hopf bimodules: the von Neumann flavor over a faithful state and the
// concrete C*-flavor over a C*-base, with leg and coassociativity checks.
//

#include <string>

#include "qgw/fiber.hpp"
#include "qgw/report.hpp"

namespace qgw {

/// (N, mu, H, A, rho, sigma, Delta) with Delta valued in operators on
/// H (x)_{rho sigma} H, given in quotient coordinates.
struct HopfData {
    std::shared_ptr<const GnsTriple> gns;
    StarAlgebra algebra;
    AlgebraMap rho;    // N^op -> A, Side::Opposite
    AlgebraMap sigma;  // N -> A, Side::Plain
    AlgebraMap delta;  // A -> L(space)
    SpacePtr space;
};

HopfData make_hopf_data(std::shared_ptr<const GnsTriple> gns, StarAlgebra algebra, AlgebraMap rho,
                        AlgebraMap sigma, std::vector<Matrix> delta_images, const Tolerance& tol = {});

/// (base, H, A, alpha, beta, Delta) with Delta valued in operators on
/// alpha |> H_base <| beta.
struct CStarHopfData {
    StarAlgebra algebra;
    FactorizationPtr alpha;  // over the base
    FactorizationPtr beta;   // over the opposite base
    AlgebraMap delta;
    SpacePtr space;
};

/// alpha |> alpha = [|alpha>_1 alpha] and beta <| beta = [|beta>_2 beta] on
/// alpha |> H <| beta.
struct DerivedPair {
    FactorizationPtr alpha_alpha;
    FactorizationPtr beta_beta;
};

DerivedPair derived_factorizations(const CStarFactorization& alpha, const CStarFactorization& beta,
                                   const RelativeTensorSpace& space, const Tolerance& tol = {});

/// Axiom keys shared by both flavors: "homomorphism", "fiber-product",
/// "leg-left", "leg-right", "coassociativity".
Report check_hopf_vn(const HopfData& h, const Tolerance& tol = {});
Report check_hopf_cstar(const CStarHopfData& h, const Tolerance& tol = {});

/// The C*-side transported through a linkage: alpha = L^{rho'}, beta =
/// L^{sigma'}, Delta_H = Ad_Phi o Delta_mu.
struct HopfTransport {
    CStarHopfData cstar;
    Matrix phi;
    double phi_unitarity = 0.0;
};

HopfTransport transport_hopf(const HopfData& h, const LinkedBase& lb, const Tolerance& tol = {});

struct HopfEquivalence {
    Report vn;
    Report cstar;
    Report summary;  // linkage residual, verdict agreement, named-axiom agreement
};

/// Runs both checks on linked data after certifying Delta_H = Ad_Phi o Delta_mu.
HopfEquivalence hopf_equivalence(const HopfData& vn, const CStarHopfData& cs, const Matrix& phi,
                                 const Tolerance& tol = {});
HopfEquivalence hopf_equivalence(const HopfData& vn, const LinkedBase& lb, const Tolerance& tol = {});

}  // namespace qgw
