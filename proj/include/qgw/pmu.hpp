#pragma once
//
// Pseudo-multiplicative unitaries V : H (x)_{sigma_hat rho} H -> H (x)_{rho sigma} H
// and their C*-counterparts over a C*-base.
//

#include "qgw/hopf.hpp"

namespace qgw {

struct PmuData {
    std::shared_ptr<const GnsTriple> gns;
    AlgebraMap rho;        // N^op, Side::Opposite
    AlgebraMap sigma;      // N, Side::Plain
    AlgebraMap sigma_hat;  // N, Side::Plain
    Matrix v;              // target quotient x source quotient
    SpacePtr source;       // H (x)_{sigma_hat, rho} H
    SpacePtr target;       // H (x)_{rho, sigma} H
};

PmuData make_pmu_data(std::shared_ptr<const GnsTriple> gns, AlgebraMap rho, AlgebraMap sigma, AlgebraMap sigma_hat,
                      Matrix v, const Tolerance& tol = {});

struct CStarPmuData {
    FactorizationPtr alpha;     // over the base
    FactorizationPtr beta;      // over the opposite base
    FactorizationPtr beta_hat;  // over the opposite base
    Matrix v;
    SpacePtr source;  // beta_hat |> H <| alpha
    SpacePtr target;  // alpha |> H <| beta
};

/// Axiom keys: "invariants", "unitarity", "intertwine-rho", "intertwine-sigma",
/// "intertwine-sigma-to-sigma-hat", "intertwine-sigma-hat", edge checks and
/// "pentagon".
Report check_pmu_vn(const PmuData& p, const Tolerance& tol = {});
Report check_pmu_cstar(const CStarPmuData& p, const Tolerance& tol = {});

struct PmuTransport {
    CStarPmuData cstar;
    Matrix phi_source;
    Matrix phi_target;
};

/// alpha, beta, beta_hat from the transported representations and
/// V_H = Phi_target V Phi_source^*.
PmuTransport transport_pmu(const PmuData& p, const LinkedBase& lb, const Tolerance& tol = {});

struct PmuEquivalence {
    Report vn;
    Report cstar;
    Report summary;
};

PmuEquivalence pmu_equivalence(const PmuData& p, const LinkedBase& lb, const Tolerance& tol = {});

}  // namespace qgw
