#pragma once
//
// C*-factorizations alpha of L(H_base, H) over a C*-base and their induced
// representations of B^dag.
//

#include <memory>

#include "qgw/cbase.hpp"

namespace qgw {

struct FactorizationCertificate {
    double star_products = 0.0;   // distance([alpha^* alpha], B)
    double module = 0.0;          // distance([alpha B], alpha)
    double nondegenerate = 0.0;   // 0 when [alpha H_base] = H
    double representation = 0.0;  // *-homomorphism residual of rho_alpha

    double worst() const;
};

class CStarFactorization {
public:
    /// Validates the factorization axioms and computes rho_alpha; throws
    /// InvalidFactorizationError when an axiom fails.
    CStarFactorization(CStarBase base, OperatorSubspace alpha, const Tolerance& tol = {});

    const CStarBase& base() const { return base_; }
    const OperatorSubspace& alpha() const { return alpha_; }
    Index h_dim() const { return alpha_.rows(); }
    Index dim() const { return alpha_.dim(); }
    std::vector<Matrix> elements() const { return alpha_.basis(); }
    /// Representation of B^dag on H with rho(b) xi = xi b for xi in alpha.
    const AlgebraMap& rho() const { return rho_; }
    const FactorizationCertificate& certificate() const { return cert_; }

    /// The unique R(xi) in alpha with R(xi) zeta = xi.
    Matrix r_operator(const Vector& xi) const;
    /// R(e_a) for the canonical basis of H.
    const std::vector<Matrix>& r_basis() const { return r_basis_; }
    bool contains(const Matrix& x, const Tolerance& tol = {}) const;

private:
    CStarBase base_;
    OperatorSubspace alpha_;
    AlgebraMap rho_;
    FactorizationCertificate cert_;
    Matrix evaluation_inverse_;
    std::vector<Matrix> r_basis_;
};

using FactorizationPtr = std::shared_ptr<const CStarFactorization>;

/// {T : T a = rep(a) T for a in rep.domain} as a subspace of
/// L(C^carrier, C^target).
OperatorSubspace intertwiner_space(const AlgebraMap& rep, const Tolerance& tol = {});

/// L^rho(H_base, H) for a faithful nondegenerate representation of B^dag; the
/// result is checked to induce rho again.
CStarFactorization factorization_from_representation(const CStarBase& base, const AlgebraMap& rho,
                                                     const Tolerance& tol = {});

/// Max residual of rho_alpha(b) vs rho(b) over the basis of B^dag.
double representation_distance(const AlgebraMap& a, const AlgebraMap& b);

struct Compatibility {
    double alpha_into_beta = 0.0;  // distance of [rho_alpha(B^dag_2) beta] from beta
    double beta_into_alpha = 0.0;
    double commutator = 0.0;       // max ||[rho_alpha(x), rho_beta(y)]||
    bool compatible = false;
};

/// Compatibility of two factorizations of the same H. The span condition and
/// the commutation of the induced representations are computed separately;
/// a disagreement raises InternalInconsistencyError.
Compatibility compatible(const CStarFactorization& alpha, const CStarFactorization& beta,
                         const Tolerance& tol = {});

}  // namespace qgw
