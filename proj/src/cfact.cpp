#include "qgw/cfact.hpp"

#include <algorithm>
#include <cmath>

namespace qgw {

double FactorizationCertificate::worst() const {
    return std::max({star_products, module, nondegenerate, representation});
}

CStarFactorization::CStarFactorization(CStarBase base, OperatorSubspace alpha, const Tolerance& tol)
    : base_(std::move(base)), alpha_(std::move(alpha)) {
    if (alpha_.cols() != base_.frak_h_dim) throw DimensionError("factorization does not start at the base space");
    const Vector& zeta = base_.bicyclic();
    const Index h = alpha_.rows();
    const auto xs = alpha_.basis();
    const Index m = alpha_.dim();
    if (m == 0) throw InvalidFactorizationError("factorization is zero");

    Matrix x(h, m);
    for (Index k = 0; k < m; ++k) x.col(k) = xs[k] * zeta;
    if (m != h || tolerant_rank(x, tol) != h)
        throw InvalidFactorizationError("evaluation at the bicyclic vector is not bijective");
    evaluation_inverse_ = x.fullPivLu().inverse();

    const double bound = tol.certify();
    std::vector<Matrix> products;
    for (const auto& a : xs)
        for (const auto& b : xs) products.push_back(a.adjoint() * b);
    cert_.star_products = subspace_distance(span(products, base_.frak_h_dim, base_.frak_h_dim, tol), base_.b.space());
    if (cert_.star_products > bound) throw InvalidFactorizationError("[alpha^* alpha] differs from B (distance " + std::to_string(cert_.star_products) + ")");

    std::vector<Matrix> module;
    for (const auto& a : xs)
        for (const auto& b : base_.b.elements()) module.push_back(a * b);
    cert_.module = subspace_distance(span(module, h, base_.frak_h_dim, tol), alpha_);
    if (cert_.module > bound) throw InvalidFactorizationError("[alpha B] differs from alpha (distance " + std::to_string(cert_.module) + ")");

    Matrix stacked(h, m * base_.frak_h_dim);
    for (Index k = 0; k < m; ++k) stacked.middleCols(k * base_.frak_h_dim, base_.frak_h_dim) = xs[k];
    cert_.nondegenerate = 1.0 - double(tolerant_rank(stacked, tol)) / double(h);
    if (cert_.nondegenerate > 0.0) throw InvalidFactorizationError("[alpha H] is not all of H");

    std::vector<Matrix> images;
    double intertwining = 0.0;
    for (const auto& d : base_.b_dag.elements()) {
        Matrix y(h, m);
        for (Index k = 0; k < m; ++k) y.col(k) = xs[k] * (d * zeta);
        Matrix r = y * evaluation_inverse_;
        for (const auto& a : xs) intertwining = std::max(intertwining, (r * a - a * d).norm());
        images.push_back(std::move(r));
    }
    rho_ = AlgebraMap{base_.b_dag, images, Side::Plain};
    cert_.representation = std::max(certify(rho_, tol).worst(true, true), intertwining);
    if (cert_.representation > bound * std::max(1.0, std::sqrt(double(h))))
        throw InvalidFactorizationError("induced map of B^dag is not a representation");

    for (Index a = 0; a < h; ++a) r_basis_.push_back(r_operator(Vector::Unit(h, a)));
}

Matrix CStarFactorization::r_operator(const Vector& xi) const {
    if (xi.size() != h_dim()) throw DimensionError("vector does not lie in H");
    return alpha_.element(evaluation_inverse_ * xi);
}

bool CStarFactorization::contains(const Matrix& x, const Tolerance& tol) const {
    alpha_.require_shape(x, "factorization membership");
    return alpha_.residual(x) <= tol.certify() * std::max(1.0, x.norm());
}

OperatorSubspace intertwiner_space(const AlgebraMap& rep, const Tolerance& tol) {
    const Index p = rep.domain.carrier_dim();
    const Index q = rep.target_rows();
    const auto dom = rep.domain.elements();
    const auto seed = intertwiner_seed(dom, rep.images, tol);
    ConstraintSolver solver = seed ? ConstraintSolver(*seed, tol) : ConstraintSolver(p * q, tol);
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const Matrix& a = dom[i];
        const Matrix& r = rep.images[i];
        solver.add([&, p, q](const Vector& v) {
            const Matrix t = unvec(v, q, p);
            return vec(t * a - r * t);
        }, a.norm() + r.norm());
    }
    return OperatorSubspace(q, p, solver.solutions());
}

double representation_distance(const AlgebraMap& a, const AlgebraMap& b) {
    double worst = 0.0;
    const auto dom = a.domain.elements();
    for (std::size_t i = 0; i < dom.size(); ++i) worst = std::max(worst, (a.images[i] - b.apply(dom[i])).norm());
    return worst;
}

CStarFactorization factorization_from_representation(const CStarBase& base, const AlgebraMap& rho, const Tolerance& tol) {
    if (rho.domain.carrier_dim() != base.frak_h_dim || !subspace_equal(rho.domain.space(), base.b_dag.space(), tol))
        throw DimensionError("representation is not defined on B^dag");
    const double scale = std::max(1.0, std::sqrt(double(rho.target_rows())));
    if (certify(rho, tol).worst(true, true) > tol.certify() * scale)
        throw PreconditionError("representation of B^dag is not a faithful unital *-homomorphism");
    CStarFactorization f(base, intertwiner_space(rho, tol), tol);
    if (representation_distance(f.rho(), rho) > tol.certify() * scale)
        throw InternalInconsistencyError("L^rho does not induce rho");
    return f;
}

Compatibility compatible(const CStarFactorization& alpha, const CStarFactorization& beta, const Tolerance& tol) {
    if (alpha.h_dim() != beta.h_dim()) throw DimensionError("factorizations live on different spaces");
    Compatibility c;
    const Index h = alpha.h_dim();
    std::vector<Matrix> ab, ba;
    for (const auto& r : alpha.rho().images)
        for (const auto& e : beta.elements()) ab.push_back(r * e);
    for (const auto& r : beta.rho().images)
        for (const auto& e : alpha.elements()) ba.push_back(r * e);
    c.alpha_into_beta = subspace_distance(span(ab, h, beta.base().frak_h_dim, tol), beta.alpha());
    c.beta_into_alpha = subspace_distance(span(ba, h, alpha.base().frak_h_dim, tol), alpha.alpha());
    double scale = 1.0;
    for (const auto& x : alpha.rho().images)
        for (const auto& y : beta.rho().images) {
            c.commutator = std::max(c.commutator, (x * y - y * x).norm());
            scale = std::max(scale, x.norm() * y.norm());
        }
    c.compatible = c.alpha_into_beta <= tol.certify() && c.beta_into_alpha <= tol.certify();
    const bool commute = c.commutator <= tol.certify() * scale;
    if (commute != c.compatible)
        throw InternalInconsistencyError("span and commutation criteria for compatibility disagree");
    return c;
}

}  // namespace qgw
