#include "qgw/hopf.hpp"

#include <algorithm>
#include <cmath>

namespace qgw {
namespace {

constexpr const char* kHom = "homomorphism";
constexpr const char* kFiber = "fiber-product";
constexpr const char* kLegLeft = "leg-left";
constexpr const char* kLegRight = "leg-right";
constexpr const char* kCoassoc = "coassociativity";

double threshold(const Tolerance& tol, Index dim) { return tol.certify() * std::max(1.0, std::sqrt(double(dim))); }

double max_commutator(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    double worst = 0.0;
    for (const auto& x : a)
        for (const auto& y : b) worst = std::max(worst, (x * y - y * x).norm());
    return worst;
}

double max_outside(const std::vector<Matrix>& ops, const StarAlgebra& alg) {
    double worst = 0.0;
    for (const auto& x : ops) worst = std::max(worst, alg.membership_residual(x));
    return worst;
}

AlgebraMap identity_map(const StarAlgebra& a) { return AlgebraMap{a, a.elements(), Side::Plain}; }

// max_b || assoc L(Delta b) assoc^* - R(Delta b) ||
double coassociativity_residual(const AlgebraMap& delta, const FiberMorphism& left, const FiberMorphism& right,
                                const Matrix& assoc) {
    double worst = 0.0;
    for (const auto& d : delta.images) {
        const Matrix l = left.apply(d);
        const Matrix r = right.apply(d);
        worst = std::max(worst, (assoc * l * assoc.adjoint() - r).norm());
    }
    return worst;
}

void add_coassociativity(Report& r, const AlgebraMap& delta, SpacePtr x, SpacePtr xl, SpacePtr xr,
                         const AlgebraMap& id, const Tolerance& tol) {
    const double thr = threshold(tol, xl->dim());
    try {
        const InducedUnitary assoc = induced_unitary(nest_left(*xl, *x), nest_right(*xr, *x), Matrix());
        r.add("associator", "(X (x) H) -> (H (x) X) well defined and unitary",
              std::max(assoc.well_defined, assoc.unitarity), thr);
        const FiberMorphism left(delta, id, x, xl, tol);
        const FiberMorphism right(id, delta, x, xr, tol);
        r.add(kCoassoc, "(Delta * id) o Delta = (id * Delta) o Delta",
              coassociativity_residual(delta, left, right, assoc.op), thr);
    } catch (const NotWellDefinedError& e) {
        r.add(kCoassoc, std::string("fiber product of morphisms not defined: ") + e.what(),
              std::numeric_limits<double>::infinity(), thr);
    }
}

bool all_passed(const Report& r) { return r.first_failure() == nullptr; }

}  // namespace

HopfData make_hopf_data(std::shared_ptr<const GnsTriple> gns, StarAlgebra algebra, AlgebraMap rho, AlgebraMap sigma,
                        std::vector<Matrix> delta_images, const Tolerance& tol) {
    if (rho.side != Side::Opposite || sigma.side != Side::Plain)
        throw PreconditionError("rho must represent N^op and sigma must represent N");
    auto space = std::make_shared<const RelativeTensorSpace>(rtp_state(gns, rho, sigma, tol));
    if (static_cast<Index>(delta_images.size()) != algebra.dim())
        throw DimensionError("coproduct needs one image per algebra basis element");
    for (const auto& m : delta_images)
        if (m.rows() != space->dim() || m.cols() != space->dim())
            throw DimensionError("coproduct images must act on H (x)_mu H in quotient coordinates");
    AlgebraMap delta{algebra, std::move(delta_images), Side::Plain};
    return HopfData{std::move(gns), std::move(algebra), std::move(rho), std::move(sigma), std::move(delta),
                    std::move(space)};
}

DerivedPair derived_factorizations(const CStarFactorization& alpha, const CStarFactorization& beta,
                                   const RelativeTensorSpace& space, const Tolerance& tol) {
    if (space.flavor != Flavor::CStar) throw PreconditionError("derived factorizations need a C*-relative tensor product");
    try {
        return DerivedPair{leg_right(space, alpha, tol), leg_left(space, beta, tol)};
    } catch (const NotWellDefinedError& e) {
        throw InvalidFactorizationError(std::string("derived factorization: ") + e.what());
    }
}

Report check_hopf_vn(const HopfData& h, const Tolerance& tol) {
    Report r;
    r.command = "hopf-check";
    r.tolerance = tol.epsilon;
    const RelativeTensorSpace& x = *h.space;
    const double thr = threshold(tol, x.dim());
    r.value("dim H", double(x.left_dim));
    r.value("dim H (x)_mu H", double(x.dim()));
    r.value("dim A", double(h.algebra.dim()));

    r.add("legs", "rho(N^op), sigma(N) in A and commuting",
          std::max({max_outside(h.rho.images, h.algebra), max_outside(h.sigma.images, h.algebra),
                    max_commutator(h.rho.images, h.sigma.images)}),
          threshold(tol, x.left_dim));
    r.add(kHom, "Delta is a unital *-homomorphism", certify(h.delta, tol).worst(true, false), thr);
    if (!all_passed(r)) {
        r.skip(kFiber, "Delta(A) in A *_mu A", thr);
        r.skip(kLegLeft, "Delta o rho = rho_2", thr);
        r.skip(kLegRight, "Delta o sigma = sigma_1", thr);
        r.skip(kCoassoc, "(Delta * id) o Delta = (id * Delta) o Delta", thr);
        return r;
    }

    const FiberProduct fp = fiber_classical(h.algebra, h.algebra, h.space, tol);
    r.value("dim A *_mu A", double(fp.algebra.dim()));
    r.add(kFiber, "Delta(A) in A *_mu A", max_outside(h.delta.images, fp.algebra), thr);

    const Matrix ih = identity(x.left_dim);
    std::vector<Matrix> rho2, sigma1;
    double left = 0.0, right = 0.0;
    for (const auto& p : h.rho.images) {
        rho2.push_back(lift(x, ih, p, tol));
        left = std::max(left, (h.delta.apply(p) - rho2.back()).norm());
    }
    for (const auto& s : h.sigma.images) {
        sigma1.push_back(lift(x, s, ih, tol));
        right = std::max(right, (h.delta.apply(s) - sigma1.back()).norm());
    }
    r.add(kLegLeft, "Delta o rho = rho_2", left, thr);
    r.add(kLegRight, "Delta o sigma = sigma_1", right, thr);
    if (!all_passed(r)) {
        r.skip(kCoassoc, "(Delta * id) o Delta = (id * Delta) o Delta", thr);
        return r;
    }

    const StarAlgebra& n = h.gns->algebra();
    auto xl = std::make_shared<const RelativeTensorSpace>(
        rtp_state(h.gns, AlgebraMap{n, rho2, Side::Opposite}, h.sigma, tol));
    auto xr = std::make_shared<const RelativeTensorSpace>(
        rtp_state(h.gns, h.rho, AlgebraMap{n, sigma1, Side::Plain}, tol));
    r.value("dim triple", double(xl->dim()));
    add_coassociativity(r, h.delta, h.space, xl, xr, identity_map(h.algebra), tol);
    return r;
}

Report check_hopf_cstar(const CStarHopfData& h, const Tolerance& tol) {
    Report r;
    r.command = "hopf-check";
    r.tolerance = tol.epsilon;
    const RelativeTensorSpace& x = *h.space;
    const double thr = threshold(tol, x.dim());
    r.value("dim H", double(x.left_dim));
    r.value("dim alpha |> H <| beta", double(x.dim()));
    r.value("dim A", double(h.algebra.dim()));

    const Compatibility c = compatible(*h.alpha, *h.beta, tol);
    r.add("legs", "rho_alpha(B^dag), rho_beta(B) in A; alpha, beta compatible",
          std::max({max_outside(h.alpha->rho().images, h.algebra), max_outside(h.beta->rho().images, h.algebra),
                    c.alpha_into_beta, c.beta_into_alpha}),
          threshold(tol, x.left_dim));
    r.add(kHom, "Delta is a unital *-homomorphism", certify(h.delta, tol).worst(true, false), thr);
    if (!all_passed(r)) {
        r.skip(kFiber, "Delta(A) in A *_H A", thr);
        r.skip(kLegLeft, "Delta in Mor(A_alpha, (A * A)_{alpha |> alpha})", thr);
        r.skip(kLegRight, "Delta in Mor(A_beta, (A * A)_{beta <| beta})", thr);
        r.skip(kCoassoc, "(Delta * id) o Delta = (id * Delta) o Delta", thr);
        return r;
    }

    const FiberProduct fp = fiber_spatial(h.algebra, h.algebra, h.space, tol);
    r.value("dim A *_H A", double(fp.algebra.dim()));
    r.add(kFiber, "Delta(A) in A *_H A", max_outside(h.delta.images, fp.algebra), thr);

    const DerivedPair d = derived_factorizations(*h.alpha, *h.beta, x, tol);
    const MorphismCheck ml = is_morphism(h.delta, *h.alpha, *d.alpha_alpha, tol);
    const MorphismCheck mr = is_morphism(h.delta, *h.beta, *d.beta_beta, tol);
    const double mthr = threshold(tol, x.dim());
    r.add(kLegLeft, "Delta in Mor(A_alpha, (A * A)_{alpha |> alpha})", ml.representation, mthr);
    r.add(kLegRight, "Delta in Mor(A_beta, (A * A)_{beta <| beta})", mr.representation, mthr);
    r.value("leg-left span residual", ml.span);
    r.value("leg-right span residual", mr.span);
    if (!all_passed(r)) {
        r.skip(kCoassoc, "(Delta * id) o Delta = (id * Delta) o Delta", thr);
        return r;
    }

    auto xl = std::make_shared<const RelativeTensorSpace>(rtp_cstar(d.alpha_alpha, h.beta, tol));
    auto xr = std::make_shared<const RelativeTensorSpace>(rtp_cstar(h.alpha, d.beta_beta, tol));
    r.value("dim triple", double(xl->dim()));
    add_coassociativity(r, h.delta, h.space, xl, xr, identity_map(h.algebra), tol);
    return r;
}

HopfTransport transport_hopf(const HopfData& h, const LinkedBase& lb, const Tolerance& tol) {
    auto alpha = std::make_shared<const CStarFactorization>(
        factorization_from_representation(lb.base, transport_representation(lb, h.rho, tol), tol));
    auto beta = std::make_shared<const CStarFactorization>(
        factorization_from_representation(lb.base.opposite(), transport_representation(lb, h.sigma, tol), tol));
    auto space = std::make_shared<const RelativeTensorSpace>(rtp_cstar(alpha, beta, tol));
    const PhiUnitary phi = phi_unitary(*h.space, *space, lb, tol);
    std::vector<Matrix> images;
    for (const auto& d : h.delta.images) images.push_back(phi.op * d * phi.op.adjoint());
    HopfTransport t;
    t.cstar = CStarHopfData{h.algebra, alpha, beta, AlgebraMap{h.algebra, images, Side::Plain}, space};
    t.phi = phi.op;
    t.phi_unitarity = std::max(phi.unitarity, phi.well_defined);
    return t;
}

HopfEquivalence hopf_equivalence(const HopfData& vn, const CStarHopfData& cs, const Matrix& phi, const Tolerance& tol) {
    const double thr = threshold(tol, vn.space->dim());
    double linkage = unitarity_residual(phi);
    const auto basis = vn.algebra.elements();
    for (std::size_t i = 0; i < basis.size(); ++i)
        linkage = std::max(linkage, (phi * vn.delta.images[i] * phi.adjoint() - cs.delta.apply(basis[i])).norm());
    if (linkage > thr) throw PreconditionError("C*-side coproduct is not Ad_Phi of the von Neumann one");

    HopfEquivalence e;
    e.vn = check_hopf_vn(vn, tol);
    e.cstar = check_hopf_cstar(cs, tol);
    e.summary.command = "equiv-check";
    e.summary.tolerance = tol.epsilon;
    e.summary.add("linkage", "Delta_H = Ad_Phi o Delta_mu", linkage, thr);
    const bool agree = e.vn.passed() == e.cstar.passed();
    e.summary.add("verdict-agreement", "Hopf-von Neumann bimodule iff concrete Hopf C*-bimodule", agree ? 0.0 : 1.0, 0.5);
    const Check* fv = e.vn.first_failure();
    const Check* fc = e.cstar.first_failure();
    const bool same = (fv == nullptr && fc == nullptr) || (fv && fc && fv->axiom == fc->axiom);
    e.summary.add("axiom-agreement", "first failing axiom coincides", same ? 0.0 : 1.0, 0.5);
    e.summary.value("von Neumann verdict pass", e.vn.passed() ? 1.0 : 0.0);
    e.summary.value("C* verdict pass", e.cstar.passed() ? 1.0 : 0.0);
    return e;
}

HopfEquivalence hopf_equivalence(const HopfData& vn, const LinkedBase& lb, const Tolerance& tol) {
    const HopfTransport t = transport_hopf(vn, lb, tol);
    return hopf_equivalence(vn, t.cstar, t.phi, tol);
}

}  // namespace qgw
