#include "qgw/fiber.hpp"

#include <algorithm>
#include <cmath>

namespace qgw {
namespace {

void require_inside(const std::vector<Matrix>& ops, const StarAlgebra& alg, const Tolerance& tol, const char* what) {
    for (const auto& x : ops)
        if (!alg.contains(x, tol)) throw PreconditionError(what);
}

const std::vector<Matrix>& left_leg(const RelativeTensorSpace& s) {
    return s.flavor == Flavor::State ? s.left_rep.images : s.left_fact->rho().images;
}

const std::vector<Matrix>& right_leg(const RelativeTensorSpace& s) {
    return s.flavor == Flavor::State ? s.right_rep.images : s.right_fact->rho().images;
}

// Residual of vec(x) off the subspace spanned by the orthonormal frame f.
Vector off_frame(const Matrix& f, const Vector& x) { return x - f * (f.adjoint() * x); }

OperatorSubspace adjoint_span(const OperatorSubspace& s, const Tolerance& tol) {
    std::vector<Matrix> adj;
    for (const auto& x : s.basis()) adj.push_back(x.adjoint());
    return span(adj, s.cols(), s.rows(), tol);
}

// max over the domain basis of ||f(leg_src(n)) - leg_tgt(n)||
double equivariance(const AlgebraMap& f, const AlgebraMap& src_leg, const AlgebraMap& tgt_leg) {
    double worst = 0.0;
    const auto dom = src_leg.domain.elements();
    for (std::size_t i = 0; i < dom.size(); ++i)
        worst = std::max(worst, (f.apply(src_leg.images[i]) - tgt_leg.apply(dom[i])).norm());
    return worst;
}

// (A' (x) 1 + 1 (x) B')' on the relative tensor product.
StarAlgebra commutant_of_lifted_commutants(const StarAlgebra& a, const StarAlgebra& b, const RelativeTensorSpace& space,
                                           const Tolerance& tol) {
    std::vector<Matrix> gens;
    const Matrix ih = identity(space.left_dim);
    const Matrix ik = identity(space.right_dim);
    for (const auto& s : commutant(a, tol).elements()) gens.push_back(lift(space, s, ik, tol));
    for (const auto& t : commutant(b, tol).elements()) gens.push_back(lift(space, ih, t, tol));
    return commutant_of(gens, space.dim(), tol);
}

}  // namespace

FiberProduct fiber_classical(const StarAlgebra& a, const StarAlgebra& b, SpacePtr space, const Tolerance& tol) {
    if (a.carrier_dim() != space->left_dim || b.carrier_dim() != space->right_dim)
        throw DimensionError("algebras do not act on the tensor factors");
    require_inside(left_leg(*space), a, tol, "left leg does not take values in the first algebra");
    require_inside(right_leg(*space), b, tol, "right leg does not take values in the second algebra");
    StarAlgebra alg = commutant_of_lifted_commutants(a, b, *space, tol);
    return FiberProduct{std::move(space), std::move(alg)};
}

FiberProduct fiber_spatial(const StarAlgebra& a, const StarAlgebra& b, SpacePtr space, const Tolerance& tol) {
    if (space->flavor != Flavor::CStar) throw PreconditionError("spatial fiber product needs a C*-relative tensor product");
    if (a.carrier_dim() != space->left_dim || b.carrier_dim() != space->right_dim)
        throw DimensionError("algebras do not act on the tensor factors");
    require_inside(left_leg(*space), a, tol, "rho_alpha(B^dag) is not contained in the first algebra");
    require_inside(right_leg(*space), b, tol, "rho_beta(B) is not contained in the second algebra");

    const Index r = space->dim();
    struct Family {
        Matrix ket;
        const OperatorSubspace* range;
        const OperatorSubspace* range_adj;
    };
    std::vector<Matrix> left_kets, right_kets, left_prods, right_prods;
    for (const auto& xi : space->left_fact->elements()) {
        left_kets.push_back(ket_left(*space, xi, tol));
        for (const auto& y : b.elements()) left_prods.push_back(left_kets.back() * y);
    }
    for (const auto& eta : space->right_fact->elements()) {
        right_kets.push_back(ket_right(*space, eta, tol));
        for (const auto& x : a.elements()) right_prods.push_back(right_kets.back() * x);
    }
    const OperatorSubspace left_range = span(left_prods, r, space->right_dim, tol);
    const OperatorSubspace right_range = span(right_prods, r, space->left_dim, tol);
    const OperatorSubspace left_adj = adjoint_span(left_range, tol);
    const OperatorSubspace right_adj = adjoint_span(right_range, tol);
    std::vector<Family> families;
    for (auto& k : left_kets) families.push_back(Family{std::move(k), &left_range, &left_adj});
    for (auto& k : right_kets) families.push_back(Family{std::move(k), &right_range, &right_adj});

    ConstraintSolver solver(commutant_of_lifted_commutants(a, b, *space, tol).space().frame(), tol);
    for (const auto& f : families) {
        const double scale = std::max(1.0, f.ket.norm());
        solver.add([&f, r](const Vector& v) {
            const Matrix t = unvec(v, r, r);
            return off_frame(f.range->frame(), vec(t * f.ket));
        }, scale);
        solver.add([&f, r](const Vector& v) {
            const Matrix t = unvec(v, r, r);
            return off_frame(f.range_adj->frame(), vec(f.ket.adjoint() * t));
        }, scale);
    }
    StarAlgebra alg(OperatorSubspace(r, r, solver.solutions()));
    return FiberProduct{std::move(space), std::move(alg)};
}

double fiber_phi_distance(const FiberProduct& classical, const FiberProduct& spatial, const Matrix& phi) {
    std::vector<Matrix> conj;
    for (const auto& x : classical.algebra.elements()) conj.push_back(phi * x * phi.adjoint());
    if (conj.empty()) return spatial.algebra.dim() == 0 ? 0.0 : 1.0;
    return subspace_distance(span(conj, phi.rows(), phi.rows()), spatial.algebra.space());
}

OperatorSubspace morphism_intertwiners(const AlgebraMap& pi, const CStarFactorization& alpha,
                                       const CStarFactorization& beta, const Tolerance& tol) {
    const Index h = pi.domain.carrier_dim();
    const Index k = pi.target_rows();
    if (alpha.h_dim() != h || beta.h_dim() != k) throw DimensionError("factorizations do not match the morphism");
    const OperatorSubspace alpha_adj = adjoint_span(alpha.alpha(), tol);
    const Matrix& beta_frame = beta.alpha().frame();
    const auto dom = pi.domain.elements();
    const auto seed = intertwiner_seed(dom, pi.images, tol);
    ConstraintSolver solver = seed ? ConstraintSolver(*seed, tol) : ConstraintSolver(k * h, tol);
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const Matrix& x = dom[i];
        const Matrix& y = pi.images[i];
        solver.add([&x, &y, h, k](const Vector& v) {
            const Matrix t = unvec(v, k, h);
            return vec(t * x - y * t);
        }, x.norm() + y.norm());
    }
    for (const auto& xi : alpha.elements())
        solver.add([xi, &beta_frame, h, k](const Vector& v) {
            return off_frame(beta_frame, vec(unvec(v, k, h) * xi));
        }, std::max(1.0, xi.norm()));
    for (const auto& eta : beta.elements())
        solver.add([eta, &alpha_adj, h, k](const Vector& v) {
            return off_frame(alpha_adj.frame(), vec(eta.adjoint() * unvec(v, k, h)));
        }, std::max(1.0, eta.norm()));
    return OperatorSubspace(k, h, solver.solutions());
}

MorphismCheck is_morphism(const AlgebraMap& pi, const CStarFactorization& alpha, const CStarFactorization& beta,
                          const Tolerance& tol) {
    const double scale = std::max(1.0, std::sqrt(double(pi.target_rows())));
    if (certify(pi, tol).worst(true, false) > tol.certify() * scale)
        throw PreconditionError("map is not a unital *-homomorphism");
    require_inside(alpha.rho().images, pi.domain, tol, "rho_alpha(B^dag) is not in the domain of the morphism");

    MorphismCheck m;
    const auto dom = alpha.rho().domain.elements();
    for (std::size_t i = 0; i < dom.size(); ++i)
        m.representation =
            std::max(m.representation, (pi.apply(alpha.rho().images[i]) - beta.rho().apply(dom[i])).norm());

    const OperatorSubspace ipi = morphism_intertwiners(pi, alpha, beta, tol);
    std::vector<Matrix> moved;
    for (const auto& v : ipi.basis())
        for (const auto& xi : alpha.elements()) moved.push_back(v * xi);
    m.span = moved.empty() ? 1.0
                           : subspace_distance(span(moved, beta.h_dim(), beta.base().frak_h_dim, tol), beta.alpha());

    m.by_representation = m.representation <= tol.certify() * scale;
    m.by_span = m.span <= tol.certify();
    if (m.by_representation != m.by_span)
        throw InternalInconsistencyError("representation and span criteria for a morphism disagree");
    m.holds = m.by_representation;
    return m;
}

FiberMorphism::FiberMorphism(const AlgebraMap& phi, const AlgebraMap& psi, SpacePtr src, SpacePtr tgt,
                             const Tolerance& tol)
    : src_(std::move(src)), tgt_(std::move(tgt)), tol_(tol) {
    if (src_->flavor != tgt_->flavor) throw PreconditionError("fiber morphism between different flavors");
    if (phi.domain.carrier_dim() != src_->left_dim || phi.target_rows() != tgt_->left_dim ||
        psi.domain.carrier_dim() != src_->right_dim || psi.target_rows() != tgt_->right_dim)
        throw DimensionError("maps do not match the tensor factors");

    require_inside(left_leg(*src_), phi.domain, tol, "source left leg is not in the domain of the first map");
    require_inside(right_leg(*src_), psi.domain, tol, "source right leg is not in the domain of the second map");
    const double scale = std::max(1.0, std::sqrt(double(std::max(tgt_->left_dim, tgt_->right_dim))));
    double eq = 0.0;
    if (src_->flavor == Flavor::State) {
        eq = std::max(equivariance(phi, src_->left_rep, tgt_->left_rep), equivariance(psi, src_->right_rep, tgt_->right_rep));
    } else {
        eq = std::max(equivariance(phi, src_->left_fact->rho(), tgt_->left_fact->rho()),
                      equivariance(psi, src_->right_fact->rho(), tgt_->right_fact->rho()));
    }
    if (eq > tol.certify() * scale) throw PreconditionError("maps do not intertwine the legs");

    const auto lx = intertwiner_space(phi, tol).basis();
    const auto ly = intertwiner_space(psi, tol).basis();
    const auto lifted = lift_family(*src_, *tgt_, lx, ly);
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        const double scale = std::max(1.0, lx[i / ly.size()].norm() * ly[i % ly.size()].norm());
        if (lifted[i].residual > tol.certify() * scale)
            throw NotWellDefinedError("intertwiner pair does not descend to the relative tensor products");
        lifts_.push_back(lifted[i].op);
    }
    const Index rt = tgt_->dim();
    const Index rs = src_->dim();
    stacked_.resize(rt, rs * static_cast<Index>(lifts_.size()));
    for (std::size_t i = 0; i < lifts_.size(); ++i) stacked_.middleCols(static_cast<Index>(i) * rs, rs) = lifts_[i];
    if (tolerant_rank(stacked_, tol) != rt)
        throw NotWellDefinedError("intertwiners do not span the target relative tensor product");
    // Shortest prefix of lifts that already spans the target.
    prefix_ = 1;
    while (prefix_ < lifts_.size() && tolerant_rank(stacked_.leftCols(rs * static_cast<Index>(prefix_)), tol) != rt)
        prefix_ = std::min(lifts_.size(), 2 * prefix_);
    const Matrix head = stacked_.leftCols(rs * static_cast<Index>(prefix_));
    const Matrix gram = head * head.adjoint();
    prefix_pinv_ = head.adjoint() * gram.llt().solve(identity(rt));
    scale_ = std::max(1.0, stacked_.norm());
}

FiberMorphism::Applied FiberMorphism::apply_checked(const Matrix& s) const {
    const Index rs = src_->dim();
    if (s.rows() != rs || s.cols() != rs) throw DimensionError("operator does not act on the source space");
    Matrix moved(tgt_->dim(), rs * static_cast<Index>(lifts_.size()));
    for (std::size_t i = 0; i < lifts_.size(); ++i) moved.middleCols(static_cast<Index>(i) * rs, rs) = lifts_[i] * s;
    Applied a;
    a.op = moved.leftCols(rs * static_cast<Index>(prefix_)) * prefix_pinv_;
    a.residual = (a.op * stacked_ - moved).norm() / std::max(1.0, s.norm());
    return a;
}

Matrix FiberMorphism::apply(const Matrix& s) const {
    Applied a = apply_checked(s);
    if (a.residual > tol_.certify() * scale_) throw NotWellDefinedError("operator is outside the domain of the fiber morphism");
    return std::move(a.op);
}

}  // namespace qgw
