#pragma once
//
// Faithful states on finite-dimensional *-algebras and their GNS data.
//

#include <optional>

#include "qgw/staralg.hpp"

namespace qgw {

/// Antilinear map v -> m * conj(v).
struct AntilinearMap {
    Matrix m;

    Vector apply(const Vector& v) const { return m * v.conjugate(); }
    /// The linear operator J X J.
    Matrix sandwich(const Matrix& x) const { return m * x.conjugate() * m.conjugate(); }
    /// J J as a linear map.
    Matrix square() const { return m * m.conjugate(); }
};

/// A state on an algebra, given by a density operator on the carrier:
/// mu(a) = trace(density * a).
struct State {
    StarAlgebra algebra;
    Matrix density;

    Complex value(const Matrix& a) const { return (density * a).trace(); }
    /// G_ij = mu(b_i^* b_j) over the algebra basis.
    Matrix gram() const;
    bool is_faithful(const Tolerance& tol = {}) const;
};

/// Residuals of the State invariants.
struct StateCertificate {
    double positivity = 0.0;     // max(0, -lambda_min(G))
    double normalization = 0.0;  // |mu(1) - 1|
    bool faithful = false;
};

StateCertificate certify(const State& mu, const Tolerance& tol = {});

/// (H_mu, pi_mu, zeta_mu, J_mu, pi_mu^op). H_mu = C^d with d = dim(algebra);
/// the coordinates are L^* c for algebra coordinates c and G = L L^*.
struct GnsTriple {
    State state;
    Matrix coordinate_change;  // L^*
    AlgebraMap pi;             // Side::Plain
    AlgebraMap pi_op;          // Side::Opposite, b -> J pi(b)^* J
    Vector zeta;
    AntilinearMap modular_conjugation;

    Index dim() const { return zeta.size(); }
    const StarAlgebra& algebra() const { return state.algebra; }
    /// pi(a) zeta
    Vector vector_of(const Matrix& a) const;
    /// The representation matching a leg side: pi_op for Opposite, pi for Plain.
    const AlgebraMap& leg(Side side) const { return side == Side::Plain ? pi : pi_op; }
};

struct GnsCertificate {
    double state_reproduction = 0.0;
    double homomorphism = 0.0;
    double opposite_homomorphism = 0.0;
    double commutation = 0.0;       // [pi(a), pi_op(b)]
    double conjugation_square = 0.0;  // J^2 - 1
    double antiunitarity = 0.0;
    bool cyclic = false;
    bool cocyclic = false;
};

GnsTriple gns(const State& mu, const Tolerance& tol = {});
GnsCertificate certify(const GnsTriple& g, const Tolerance& tol = {});

/// rank of {x v : x in ops} equals the ambient dimension.
bool is_cyclic(const std::vector<Matrix>& ops, const Vector& v, const Tolerance& tol = {});

/// (H, B, B^dag) with optional bicyclic vector.
struct CStarBase {
    Index frak_h_dim = 0;
    StarAlgebra b;
    StarAlgebra b_dag;
    std::optional<Vector> zeta;

    CStarBase opposite() const { return CStarBase{frak_h_dim, b_dag, b, zeta}; }
    const Vector& bicyclic() const;
};

/// The base (H_mu, pi_mu(N), pi_mu^op(N^op)) with zeta_mu recorded.
CStarBase cbase_from_state(const GnsTriple& g, const Tolerance& tol = {});
CStarBase cbase_from_state(const State& mu, const Tolerance& tol = {});

}  // namespace qgw
