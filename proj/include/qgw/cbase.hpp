#pragma once
//
// C*-bases (H, B, B^dag), bicyclic vectors, base equivalence and linkage of a
// base to the GNS space of a faithful state.
//

#include <cstdint>
#include <memory>
#include <optional>

#include "qgw/gns.hpp"

namespace qgw {

/// Generic bicyclic vector for (B, B^dag); nullopt if none was found.
std::optional<Vector> find_bicyclic(const CStarBase& base, const Tolerance& tol = {},
                                    std::uint64_t seed = 0xb1c1);

struct CommutantCheck {
    double b_commutant = 0.0;    // distance(B', B^dag)
    double dag_commutant = 0.0;  // distance((B^dag)', B)
    bool standard = false;
};

/// Throws PreconditionError when the base has no bicyclic vector.
CommutantCheck check_standard_commutant(const CStarBase& base, const Tolerance& tol = {});

/// Unitary U with U zeta = zeta_mu, U B U^* = pi_mu(N), U B^dag U^* = pi_mu^op(N^op).
struct BaseEquivalence {
    Matrix u;
    std::shared_ptr<const GnsTriple> gns;
    double zeta = 0.0;
    double algebra = 0.0;
    double opposite = 0.0;
    double unitarity = 0.0;

    bool holds(const Tolerance& tol) const;
    double worst() const;
};

/// N = B with the identity coordinatization.
BaseEquivalence base_equivalence(const CStarBase& base, const Tolerance& tol = {});
/// theta: N -> B a *-isomorphism; mu(n) = <zeta, theta(n) zeta>.
BaseEquivalence base_equivalence(const CStarBase& base, const AlgebraMap& theta,
                                 const Tolerance& tol = {});

/// J_zeta from the polar decomposition of b zeta -> b^* zeta, with the induced
/// anti-isomorphism B -> B^dag, b -> J b^* J.
struct BaseConjugation {
    AntilinearMap j;
    AlgebraMap anti_isomorphism;
    double into_dag = 0.0;    // max residual of J b^* J outside B^dag
    double onto_dag = 0.0;    // distance(span{J b^* J}, B^dag)
    double square = 0.0;      // ||J^2 - 1||
    double antiunitarity = 0.0;
};

BaseConjugation modular_conjugation_of_base(const CStarBase& base, const Tolerance& tol = {});

/// A C*-base tied to the GNS space of a faithful state through a unitary
/// U : H_base -> H_mu.
struct LinkedBase {
    std::shared_ptr<const GnsTriple> gns;
    CStarBase base;
    Matrix u;
};

/// base = (H_mu, pi_mu(N), pi_mu^op(N^op)), U = 1.
LinkedBase link(const GnsTriple& g, const Tolerance& tol = {});
/// Verifies U zeta = zeta_mu and the two conjugations.
LinkedBase link(std::shared_ptr<const GnsTriple> g, const CStarBase& base, const Matrix& u,
                const Tolerance& tol = {});

/// For a representation of N^op (Opposite) returns the representation of
/// B^dag, for a representation of N (Plain) the representation of B, through
/// the linkage unitary.
AlgebraMap transport_representation(const LinkedBase& lb, const AlgebraMap& rep,
                                     const Tolerance& tol = {});

}  // namespace qgw
