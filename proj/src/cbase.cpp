#include "qgw/cbase.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qgw {
namespace {

Matrix columns_applied(const std::vector<Matrix>& ops, const Vector& v) {
    Matrix m(v.size(), static_cast<Index>(ops.size()));
    for (std::size_t i = 0; i < ops.size(); ++i) m.col(static_cast<Index>(i)) = ops[i] * v;
    return m;
}

Matrix checked_inverse(const Matrix& x, const Tolerance& tol, const char* what) {
    if (x.rows() != x.cols() || tolerant_rank(x, tol) != x.rows()) throw PreconditionError(what);
    return x.fullPivLu().inverse();
}

}  // namespace

std::optional<Vector> find_bicyclic(const CStarBase& base, const Tolerance& tol, std::uint64_t seed) {
    const Index n = base.frak_h_dim;
    if (base.b.dim() != n || base.b_dag.dim() != n) return std::nullopt;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto b = base.b.elements();
    const auto bd = base.b_dag.elements();
    for (int attempt = 0; attempt < 16; ++attempt) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
        v.normalize();
        if (is_cyclic(b, v, tol) && is_cyclic(bd, v, tol)) return v;
    }
    return std::nullopt;
}

CommutantCheck check_standard_commutant(const CStarBase& base, const Tolerance& tol) {
    if (!base.zeta && !find_bicyclic(base, tol)) throw PreconditionError("C*-base is not standard: no bicyclic vector");
    CommutantCheck c;
    c.b_commutant = subspace_distance(commutant(base.b, tol).space(), base.b_dag.space());
    c.dag_commutant = subspace_distance(commutant(base.b_dag, tol).space(), base.b.space());
    c.standard = c.b_commutant <= tol.certify() && c.dag_commutant <= tol.certify();
    return c;
}

bool BaseEquivalence::holds(const Tolerance& tol) const { return worst() <= tol.certify(); }

double BaseEquivalence::worst() const { return std::max({zeta, algebra, opposite, unitarity}); }

BaseEquivalence base_equivalence(const CStarBase& base, const Tolerance& tol) {
    const auto elems = base.b.elements();
    return base_equivalence(base, AlgebraMap{base.b, elems, Side::Plain}, tol);
}

BaseEquivalence base_equivalence(const CStarBase& base, const AlgebraMap& theta, const Tolerance& tol) {
    const Vector& zeta = base.bicyclic();
    if (theta.target_rows() != base.frak_h_dim) throw DimensionError("coordinatization does not act on the base space");
    const StarAlgebra& n = theta.domain;
    const auto nb = n.elements();

    Matrix density = Matrix::Zero(n.carrier_dim(), n.carrier_dim());
    for (std::size_t i = 0; i < nb.size(); ++i) density += zeta.dot(theta.images[i] * zeta) * nb[i].adjoint();
    auto g = std::make_shared<const GnsTriple>(gns(State{n, density}, tol));

    const Matrix x = columns_applied(theta.images, zeta);
    Matrix w(g->dim(), static_cast<Index>(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i) w.col(static_cast<Index>(i)) = g->vector_of(nb[i]);
    const Matrix u = w * checked_inverse(x, tol, "vector is not cyclic for the base algebra");

    BaseEquivalence e;
    e.u = u;
    e.gns = g;
    e.unitarity = unitarity_residual(u);
    e.zeta = (u * zeta - g->zeta).norm();
    for (std::size_t i = 0; i < nb.size(); ++i)
        e.algebra = std::max(e.algebra, (u * theta.images[i] * u.adjoint() - g->pi.images[i]).norm());
    std::vector<Matrix> conj;
    for (const auto& d : base.b_dag.elements()) conj.push_back(u * d * u.adjoint());
    e.opposite = subspace_distance(span(conj, u.rows(), u.rows(), tol), image_algebra(g->pi_op, tol).space());
    return e;
}

BaseConjugation modular_conjugation_of_base(const CStarBase& base, const Tolerance& tol) {
    const Vector& zeta = base.bicyclic();
    const auto b = base.b.elements();
    std::vector<Matrix> adj;
    for (const auto& x : b) adj.push_back(x.adjoint());
    const Matrix x = columns_applied(b, zeta);
    const Matrix y = columns_applied(adj, zeta);
    const Matrix s = y * checked_inverse(x, tol, "vector is not cyclic for the base algebra").conjugate();
    const Matrix delta = s.transpose() * s.conjugate();

    BaseConjugation c;
    c.j = AntilinearMap{s * hermitian_inv_sqrt(0.5 * (delta + delta.adjoint())).conjugate()};
    std::vector<Matrix> images;
    for (const auto& a : adj) {
        images.push_back(c.j.sandwich(a));
        c.into_dag = std::max(c.into_dag, base.b_dag.membership_residual(images.back()));
    }
    c.anti_isomorphism = AlgebraMap{base.b, images, Side::Opposite};
    c.onto_dag = subspace_distance(span(images, base.frak_h_dim, base.frak_h_dim, tol), base.b_dag.space());
    c.square = (c.j.square() - identity(base.frak_h_dim)).norm();
    c.antiunitarity = unitarity_residual(c.j.m);
    return c;
}

LinkedBase link(const GnsTriple& g, const Tolerance& tol) {
    return LinkedBase{std::make_shared<const GnsTriple>(g), cbase_from_state(g, tol), identity(g.dim())};
}

LinkedBase link(std::shared_ptr<const GnsTriple> g, const CStarBase& base, const Matrix& u, const Tolerance& tol) {
    if (u.rows() != g->dim() || u.cols() != base.frak_h_dim) throw DimensionError("linkage unitary has the wrong shape");
    const double bound = tol.certify() * std::max(1.0, std::sqrt(double(u.rows())));
    if (unitarity_residual(u) > bound) throw PreconditionError("linkage operator is not unitary");
    if ((u * base.bicyclic() - g->zeta).norm() > bound) throw PreconditionError("linkage does not carry zeta to zeta_mu");
    std::vector<Matrix> conj, conj_dag;
    for (const auto& x : base.b.elements()) conj.push_back(u * x * u.adjoint());
    for (const auto& x : base.b_dag.elements()) conj_dag.push_back(u * x * u.adjoint());
    const Index n = g->dim();
    if (subspace_distance(span(conj, n, n, tol), image_algebra(g->pi, tol).space()) > tol.certify())
        throw PreconditionError("linkage does not conjugate B onto pi_mu(N)");
    if (subspace_distance(span(conj_dag, n, n, tol), image_algebra(g->pi_op, tol).space()) > tol.certify())
        throw PreconditionError("linkage does not conjugate B^dag onto pi_mu^op(N^op)");
    return LinkedBase{std::move(g), base, u};
}

AlgebraMap transport_representation(const LinkedBase& lb, const AlgebraMap& rep, const Tolerance& tol) {
    const bool opposite = rep.side == Side::Opposite;
    const StarAlgebra& target = opposite ? lb.base.b_dag : lb.base.b;
    const AlgebraMap& leg = lb.gns->leg(rep.side);
    std::vector<Matrix> images;
    for (const auto& d : target.elements()) images.push_back(rep.apply(leg.preimage(lb.u * d * lb.u.adjoint(), tol)));
    return AlgebraMap{target, images, Side::Plain};
}

}  // namespace qgw
