#include "qgw/gns.hpp"

#include <algorithm>
#include <cmath>

namespace qgw {

Matrix State::gram() const {
    const auto basis = algebra.elements();
    const Index d = static_cast<Index>(basis.size());
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) g(i, j) = value(basis[i].adjoint() * basis[j]);
    return g;
}

bool State::is_faithful(const Tolerance& tol) const {
    const Matrix g = gram();
    const Matrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& ev = es.eigenvalues();
    if (ev.size() == 0) return false;
    const double top = std::max(std::abs(ev.maxCoeff()), 1e-300);
    return ev.minCoeff() > tol.rank_threshold(top, g.rows(), g.cols());
}

StateCertificate certify(const State& mu, const Tolerance& tol) {
    StateCertificate c;
    const Matrix g = mu.gram();
    const Matrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    c.positivity = std::max(0.0, -es.eigenvalues().minCoeff()) + (g - h).norm();
    c.normalization = std::abs(mu.value(identity(mu.algebra.carrier_dim())) - Complex(1.0));
    c.faithful = mu.is_faithful(tol);
    return c;
}

Vector GnsTriple::vector_of(const Matrix& a) const {
    return coordinate_change * state.algebra.coordinates(a);
}

bool is_cyclic(const std::vector<Matrix>& ops, const Vector& v, const Tolerance& tol) {
    if (ops.empty()) return v.size() == 0;
    Matrix cols(v.size(), static_cast<Index>(ops.size()));
    for (std::size_t i = 0; i < ops.size(); ++i) cols.col(static_cast<Index>(i)) = ops[i] * v;
    return tolerant_rank(cols, tol) == v.size();
}

GnsTriple gns(const State& mu, const Tolerance& tol) {
    const StarAlgebra& n = mu.algebra;
    require_finite(mu.density, "state density");
    if (mu.density.rows() != n.carrier_dim() || mu.density.cols() != n.carrier_dim())
        throw DimensionError("state density does not act on the algebra carrier");
    if (n.dim() == 0) throw PreconditionError("state on the zero algebra");

    const Matrix unit = identity(n.carrier_dim());
    if (n.membership_residual(unit) > tol.certify() * std::sqrt(double(n.carrier_dim())))
        throw PreconditionError("GNS requires a unital algebra");

    const StateCertificate sc = certify(mu, tol);
    const double scale = std::max(1.0, mu.density.norm());
    if (sc.positivity > tol.certify() * scale) throw PreconditionError("state is not positive");
    if (sc.normalization > tol.certify() * scale) throw PreconditionError("state is not normalized");
    if (!sc.faithful) throw FaithfulnessError("state is not faithful: Gram matrix is singular");

    const Matrix g = mu.gram();
    const Matrix h = 0.5 * (g + g.adjoint());
    Eigen::LLT<Matrix> llt(h);
    if (llt.info() != Eigen::Success) throw FaithfulnessError("Cholesky factorization of the Gram matrix failed");
    const Matrix l = llt.matrixL();
    const Matrix l_adj = l.adjoint();
    const Matrix l_adj_inv = l_adj.triangularView<Eigen::Upper>().solve(identity(l.rows()));

    const auto basis = n.elements();
    const Index d = n.dim();

    GnsTriple t;
    t.state = mu;
    t.coordinate_change = l_adj;

    // Left multiplication in algebra coordinates, then conjugated into H_mu.
    std::vector<Matrix> pis;
    pis.reserve(basis.size());
    for (Index k = 0; k < d; ++k) {
        Matrix m(d, d);
        for (Index j = 0; j < d; ++j) m.col(j) = n.coordinates(basis[k] * basis[j]);
        pis.push_back(l_adj * m * l_adj_inv);
    }
    t.pi = AlgebraMap{n, pis, Side::Plain};
    t.zeta = l_adj * n.coordinates(unit);

    Matrix c(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) c(i, j) = hs_inner(basis[i], basis[j].adjoint());
    const Matrix s = l_adj * c * l_adj_inv.conjugate();
    const Matrix delta = s.transpose() * s.conjugate();
    const Matrix hd = 0.5 * (delta + delta.adjoint());
    t.modular_conjugation = AntilinearMap{s * hermitian_inv_sqrt(hd).conjugate()};

    std::vector<Matrix> ops;
    ops.reserve(pis.size());
    for (const auto& p : pis) ops.push_back(t.modular_conjugation.sandwich(p.adjoint()));
    t.pi_op = AlgebraMap{n, ops, Side::Opposite};
    for (const auto& m : pis) require_finite(m, "GNS representation");
    return t;
}

GnsCertificate certify(const GnsTriple& g, const Tolerance& tol) {
    GnsCertificate c;
    const auto basis = g.algebra().elements();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Complex lhs = g.zeta.dot(g.pi.images[i] * g.zeta);
        c.state_reproduction = std::max(c.state_reproduction, std::abs(lhs - g.state.value(basis[i])));
    }
    c.homomorphism = certify(g.pi, tol).worst(true, true);
    c.opposite_homomorphism = certify(g.pi_op, tol).worst(true, true);
    for (const auto& a : g.pi.images)
        for (const auto& b : g.pi_op.images) c.commutation = std::max(c.commutation, (a * b - b * a).norm());
    const Matrix& m = g.modular_conjugation.m;
    c.conjugation_square = (g.modular_conjugation.square() - identity(m.rows())).norm();
    c.antiunitarity = unitarity_residual(m);
    c.cyclic = is_cyclic(g.pi.images, g.zeta, tol);
    c.cocyclic = is_cyclic(g.pi_op.images, g.zeta, tol);
    return c;
}

const Vector& CStarBase::bicyclic() const {
    if (!zeta) throw PreconditionError("C*-base has no bicyclic vector");
    return *zeta;
}

CStarBase cbase_from_state(const GnsTriple& g, const Tolerance& tol) {
    CStarBase b;
    b.frak_h_dim = g.dim();
    b.b = image_algebra(g.pi, tol);
    b.b_dag = image_algebra(g.pi_op, tol);
    b.zeta = g.zeta;
    return b;
}

CStarBase cbase_from_state(const State& mu, const Tolerance& tol) { return cbase_from_state(gns(mu, tol), tol); }

}  // namespace qgw
