#include "qgw/pmu.hpp"

#include <algorithm>
#include <cmath>

namespace qgw {
namespace {

// The pentagon's vertices. Hs = source, Hr = target, Hp = H (x)_{sigma rho} H.
struct Vertices {
    SpacePtr hs, hr, hp;
    SpacePtr s1l, s1r, t1l, t1r, t2r, t2l, m1r, m2r, m2l, m3l, m4l;
};

double threshold(const Tolerance& tol, Index dim) { return tol.certify() * std::max(1.0, std::sqrt(double(dim))); }

double max_commutator(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    double worst = 0.0;
    for (const auto& x : a)
        for (const auto& y : b) worst = std::max(worst, (x * y - y * x).norm());
    return worst;
}

template <class F>
SpacePtr make_space(F&& f) {
    return std::make_shared<const RelativeTensorSpace>(f());
}

Matrix lift_edge(Report& r, const char* name, const RelativeTensorSpace& src, const RelativeTensorSpace& tgt,
                 const Matrix& s, const Matrix& t, const Tolerance& tol) {
    Lift l = lift_checked(src, tgt, s, t, tol);
    r.add(std::string("edge ") + name, "lifted leg operator is well defined", l.residual,
          tol.certify() * std::max(1.0, s.norm() * t.norm()));
    return std::move(l.op);
}

Matrix induced_edge(Report& r, const char* name, const NestedQuotient& src, const NestedQuotient& tgt,
                    const Matrix& plain, const Tolerance& tol) {
    InducedUnitary u = induced_unitary(src, tgt, plain);
    r.add(std::string("edge ") + name, "associator or flip is well defined and unitary",
          std::max(u.well_defined, u.unitarity), threshold(tol, u.op.rows()));
    return std::move(u.op);
}

void pentagon(Report& r, const Vertices& w, const Matrix& v, const Tolerance& tol) {
    const Index n = w.hs->left_dim;
    const Matrix ih = identity(n);
    const Matrix p23 = tensor_permutation({n, n, n}, {0, 2, 1});

    const Matrix e1 = lift_edge(r, "S1L->T1L (V x 1)", *w.s1l, *w.t1l, v, ih, tol);
    const Matrix e2 = induced_edge(r, "T1L->T1R (assoc)", nest_left(*w.t1l, *w.hr), nest_right(*w.t1r, *w.hs), Matrix(), tol);
    const Matrix e3 = lift_edge(r, "T1R->T2R (1 x V)", *w.t1r, *w.t2r, ih, v, tol);
    const Matrix e4 = induced_edge(r, "T2R->T2L (assoc)", nest_right(*w.t2r, *w.hr), nest_left(*w.t2l, *w.hr), Matrix(), tol);

    const Matrix f1 = induced_edge(r, "S1L->S1R (assoc)", nest_left(*w.s1l, *w.hs), nest_right(*w.s1r, *w.hs), Matrix(), tol);
    const Matrix f2 = lift_edge(r, "S1R->M1R (1 x V)", *w.s1r, *w.m1r, ih, v, tol);
    const Matrix f3 = induced_edge(r, "M1R->M2R (flip 23)", nest_right(*w.m1r, *w.hr), nest_right(*w.m2r, *w.hp), p23, tol);
    const Matrix f4 = induced_edge(r, "M2R->M2L (assoc)", nest_right(*w.m2r, *w.hp), nest_left(*w.m2l, *w.hs), Matrix(), tol);
    const Matrix f5 = lift_edge(r, "M2L->M3L (V x 1)", *w.m2l, *w.m3l, v, ih, tol);
    const Matrix f6 = induced_edge(r, "M3L->M4L (flip 23)", nest_left(*w.m3l, *w.hr), nest_left(*w.m4l, *w.hs), p23, tol);
    const Matrix f7 = lift_edge(r, "M4L->T2L (V x 1)", *w.m4l, *w.t2l, v, ih, tol);

    const Matrix path_a = e4 * e3 * e2 * e1;
    const Matrix path_b = f7 * f6 * f5 * f4 * f3 * f2 * f1;
    r.value("dim triple", double(w.s1l->dim()));
    r.add("pentagon", "V_12 V_13 V_23 = V_23 V_12 through the five-vertex diagram", (path_a - path_b).norm(),
          100.0 * tol.epsilon);
}

Vertices vn_vertices(const PmuData& p, const Tolerance& tol) {
    const auto& g = p.gns;
    const StarAlgebra& n = g->algebra();
    const Index h = p.rho.target_rows();
    const Matrix ih = identity(h);
    auto lifted = [&](const RelativeTensorSpace& s, const AlgebraMap& rep, bool on_left, Side side) {
        std::vector<Matrix> imgs;
        for (const auto& x : rep.images) imgs.push_back(on_left ? lift(s, x, ih, tol) : lift(s, ih, x, tol));
        return AlgebraMap{n, imgs, side};
    };
    Vertices w;
    w.hs = p.source;
    w.hr = p.target;
    w.hp = make_space([&] { return rtp_state(g, p.sigma, p.rho, tol); });
    const auto& hs = *w.hs;
    const auto& hr = *w.hr;
    w.s1l = make_space([&] { return rtp_state(g, lifted(hs, p.sigma_hat, false, Side::Plain), p.rho, tol); });
    w.s1r = make_space([&] { return rtp_state(g, p.sigma_hat, lifted(hs, p.rho, true, Side::Opposite), tol); });
    w.t1l = make_space([&] { return rtp_state(g, lifted(hr, p.sigma_hat, false, Side::Plain), p.rho, tol); });
    w.t1r = make_space([&] { return rtp_state(g, p.rho, lifted(hs, p.sigma, true, Side::Plain), tol); });
    w.t2r = make_space([&] { return rtp_state(g, p.rho, lifted(hr, p.sigma, true, Side::Plain), tol); });
    w.t2l = make_space([&] { return rtp_state(g, lifted(hr, p.rho, false, Side::Opposite), p.sigma, tol); });
    w.m1r = make_space([&] { return rtp_state(g, p.sigma_hat, lifted(hr, p.rho, false, Side::Opposite), tol); });
    w.m2r = make_space([&] { return rtp_state(g, p.sigma_hat, lifted(*w.hp, p.rho, true, Side::Opposite), tol); });
    w.m2l = make_space([&] { return rtp_state(g, lifted(hs, p.sigma, false, Side::Plain), p.rho, tol); });
    w.m3l = make_space([&] { return rtp_state(g, lifted(hr, p.sigma_hat, true, Side::Plain), p.rho, tol); });
    w.m4l = make_space([&] { return rtp_state(g, lifted(hs, p.rho, true, Side::Opposite), p.sigma, tol); });
    return w;
}

Vertices cstar_vertices(const CStarPmuData& p, const Tolerance& tol) {
    Vertices w;
    w.hs = p.source;
    w.hr = p.target;
    w.hp = make_space([&] { return rtp_cstar(p.beta, p.alpha, tol); });
    const auto& hs = *w.hs;
    const auto& hr = *w.hr;
    w.s1l = make_space([&] { return rtp_cstar(leg_right(hs, *p.beta_hat, tol), p.alpha, tol); });
    w.s1r = make_space([&] { return rtp_cstar(p.beta_hat, leg_left(hs, *p.alpha, tol), tol); });
    w.t1l = make_space([&] { return rtp_cstar(leg_right(hr, *p.beta_hat, tol), p.alpha, tol); });
    w.t1r = make_space([&] { return rtp_cstar(p.alpha, leg_left(hs, *p.beta, tol), tol); });
    w.t2r = make_space([&] { return rtp_cstar(p.alpha, leg_left(hr, *p.beta, tol), tol); });
    w.t2l = make_space([&] { return rtp_cstar(leg_right(hr, *p.alpha, tol), p.beta, tol); });
    w.m1r = make_space([&] { return rtp_cstar(p.beta_hat, leg_right(hr, *p.alpha, tol), tol); });
    w.m2r = make_space([&] { return rtp_cstar(p.beta_hat, leg_left(*w.hp, *p.alpha, tol), tol); });
    w.m2l = make_space([&] { return rtp_cstar(leg_right(hs, *p.beta, tol), p.alpha, tol); });
    w.m3l = make_space([&] { return rtp_cstar(leg_left(hr, *p.beta_hat, tol), p.alpha, tol); });
    w.m4l = make_space([&] { return rtp_cstar(leg_left(hs, *p.alpha, tol), p.beta, tol); });
    return w;
}

// distance([V src], tgt)
double transport_distance(const Matrix& v, const CStarFactorization& src, const CStarFactorization& tgt,
                          const Tolerance& tol) {
    std::vector<Matrix> moved;
    for (const auto& x : src.elements()) moved.push_back(v * x);
    return subspace_distance(span(moved, v.rows(), src.base().frak_h_dim, tol), tgt.alpha());
}

bool intertwining_passed(const Report& r) {
    for (const char* k : {"intertwine-rho", "intertwine-sigma", "intertwine-sigma-to-sigma-hat", "intertwine-sigma-hat"}) {
        const Check* c = r.find(k);
        if (c == nullptr || !c->passed()) return false;
    }
    return true;
}

}  // namespace

PmuData make_pmu_data(std::shared_ptr<const GnsTriple> gns, AlgebraMap rho, AlgebraMap sigma, AlgebraMap sigma_hat,
                      Matrix v, const Tolerance& tol) {
    if (rho.side != Side::Opposite || sigma.side != Side::Plain || sigma_hat.side != Side::Plain)
        throw PreconditionError("rho must represent N^op; sigma and sigma_hat must represent N");
    auto source = std::make_shared<const RelativeTensorSpace>(rtp_state(gns, sigma_hat, rho, tol));
    auto target = std::make_shared<const RelativeTensorSpace>(rtp_state(gns, rho, sigma, tol));
    if (v.rows() != target->dim() || v.cols() != source->dim())
        throw DimensionError("V must map the source quotient onto the target quotient");
    require_finite(v, "pseudo-multiplicative unitary");
    return PmuData{std::move(gns), std::move(rho), std::move(sigma), std::move(sigma_hat), std::move(v),
                   std::move(source), std::move(target)};
}

Report check_pmu_vn(const PmuData& p, const Tolerance& tol) {
    Report r;
    r.command = "pmu-check";
    r.tolerance = tol.epsilon;
    const RelativeTensorSpace& hs = *p.source;
    const RelativeTensorSpace& hr = *p.target;
    const Index h = hs.left_dim;
    const double thr = threshold(tol, hs.dim());
    r.value("dim H", double(h));
    r.value("dim source", double(hs.dim()));
    r.value("dim target", double(hr.dim()));

    r.add("invariants", "rho(N^op), sigma(N), sigma_hat(N) commute pairwise",
          std::max({max_commutator(p.rho.images, p.sigma.images), max_commutator(p.rho.images, p.sigma_hat.images),
                    max_commutator(p.sigma.images, p.sigma_hat.images)}),
          threshold(tol, h));
    r.add("unitarity", "V^* V = V V^* = 1", unitarity_residual(p.v), thr);
    if (!r.checks.front().passed()) {
        r.skip("pentagon", "V_12 V_13 V_23 = V_23 V_12 through the five-vertex diagram", 100.0 * tol.epsilon);
        return r;
    }

    const Matrix ih = identity(h);
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
    for (const auto& y : p.rho.images) r1 = std::max(r1, (p.v * lift(hs, y, ih, tol) - lift(hr, ih, y, tol) * p.v).norm());
    for (std::size_t i = 0; i < p.sigma.images.size(); ++i) {
        const Matrix& s = p.sigma.images[i];
        const Matrix& sh = p.sigma_hat.images[i];
        r2 = std::max(r2, (p.v * lift(hs, s, ih, tol) - lift(hr, s, ih, tol) * p.v).norm());
        r3 = std::max(r3, (p.v * lift(hs, ih, s, tol) - lift(hr, sh, ih, tol) * p.v).norm());
        r4 = std::max(r4, (p.v * lift(hs, ih, sh, tol) - lift(hr, ih, sh, tol) * p.v).norm());
    }
    r.add("intertwine-rho", "V(rho(y) x 1) = (1 x rho(y))V", r1, thr);
    r.add("intertwine-sigma", "V(sigma(x) x 1) = (sigma(x) x 1)V", r2, thr);
    r.add("intertwine-sigma-to-sigma-hat", "V(1 x sigma(x)) = (sigma_hat(x) x 1)V", r3, thr);
    r.add("intertwine-sigma-hat", "V(1 x sigma_hat(x)) = (1 x sigma_hat(x))V", r4, thr);

    pentagon(r, vn_vertices(p, tol), p.v, tol);
    return r;
}

Report check_pmu_cstar(const CStarPmuData& p, const Tolerance& tol) {
    Report r;
    r.command = "pmu-check";
    r.tolerance = tol.epsilon;
    const RelativeTensorSpace& hs = *p.source;
    const RelativeTensorSpace& hr = *p.target;
    const double thr = threshold(tol, hs.dim());
    r.value("dim H", double(hs.left_dim));
    r.value("dim source", double(hs.dim()));
    r.value("dim target", double(hr.dim()));

    const Compatibility ab = compatible(*p.alpha, *p.beta, tol);
    const Compatibility ah = compatible(*p.alpha, *p.beta_hat, tol);
    const Compatibility bh = compatible(*p.beta, *p.beta_hat, tol);
    double worst = 0.0;
    for (const auto* c : {&ab, &ah, &bh}) worst = std::max({worst, c->alpha_into_beta, c->beta_into_alpha});
    r.add("invariants", "alpha, beta, beta_hat pairwise compatible", worst, tol.certify());
    r.add("unitarity", "V^* V = V V^* = 1", unitarity_residual(p.v), thr);
    if (!r.checks.front().passed()) {
        r.skip("pentagon", "V_12 V_13 V_23 = V_23 V_12 through the five-vertex diagram", 100.0 * tol.epsilon);
        return r;
    }

    r.add("intertwine-rho", "V(alpha <| alpha) = alpha |> alpha",
          transport_distance(p.v, *leg_left(hs, *p.alpha, tol), *leg_right(hr, *p.alpha, tol), tol), tol.certify());
    r.add("intertwine-sigma", "V(beta <| alpha) = beta <| beta",
          transport_distance(p.v, *leg_left(hs, *p.beta, tol), *leg_left(hr, *p.beta, tol), tol), tol.certify());
    r.add("intertwine-sigma-to-sigma-hat", "V(beta_hat |> beta) = beta_hat <| beta",
          transport_distance(p.v, *leg_right(hs, *p.beta, tol), *leg_left(hr, *p.beta_hat, tol), tol), tol.certify());
    r.add("intertwine-sigma-hat", "V(beta_hat |> beta_hat) = alpha |> beta_hat",
          transport_distance(p.v, *leg_right(hs, *p.beta_hat, tol), *leg_right(hr, *p.beta_hat, tol), tol),
          tol.certify());

    pentagon(r, cstar_vertices(p, tol), p.v, tol);
    return r;
}

PmuTransport transport_pmu(const PmuData& p, const LinkedBase& lb, const Tolerance& tol) {
    auto fact = [&](const CStarBase& base, const AlgebraMap& rep) {
        return std::make_shared<const CStarFactorization>(
            factorization_from_representation(base, transport_representation(lb, rep, tol), tol));
    };
    PmuTransport t;
    t.cstar.alpha = fact(lb.base, p.rho);
    t.cstar.beta = fact(lb.base.opposite(), p.sigma);
    t.cstar.beta_hat = fact(lb.base.opposite(), p.sigma_hat);
    t.cstar.source = std::make_shared<const RelativeTensorSpace>(rtp_cstar(t.cstar.beta_hat, t.cstar.alpha, tol));
    t.cstar.target = std::make_shared<const RelativeTensorSpace>(rtp_cstar(t.cstar.alpha, t.cstar.beta, tol));
    t.phi_source = phi_unitary(*p.source, *t.cstar.source, lb, tol).op;
    t.phi_target = phi_unitary(*p.target, *t.cstar.target, lb, tol).op;
    t.cstar.v = t.phi_target * p.v * t.phi_source.adjoint();
    return t;
}

PmuEquivalence pmu_equivalence(const PmuData& p, const LinkedBase& lb, const Tolerance& tol) {
    const PmuTransport t = transport_pmu(p, lb, tol);
    const double thr = threshold(tol, p.source->dim());
    const double linkage = std::max(unitarity_residual(t.phi_source), unitarity_residual(t.phi_target));
    if (linkage > thr) throw PreconditionError("identification unitaries are not unitary");

    PmuEquivalence e;
    e.vn = check_pmu_vn(p, tol);
    e.cstar = check_pmu_cstar(t.cstar, tol);
    e.summary.command = "equiv-check";
    e.summary.tolerance = tol.epsilon;
    e.summary.add("linkage", "Phi identifies source and target spaces", linkage, thr);
    e.summary.add("verdict-agreement", "pseudo-multiplicative iff C*-pseudo-multiplicative",
                  e.vn.passed() == e.cstar.passed() ? 0.0 : 1.0, 0.5);
    e.summary.add("intertwining-agreement", "leg relations hold iff factorization transports hold",
                  intertwining_passed(e.vn) == intertwining_passed(e.cstar) ? 0.0 : 1.0, 0.5);
    e.summary.value("von Neumann verdict pass", e.vn.passed() ? 1.0 : 0.0);
    e.summary.value("C* verdict pass", e.cstar.passed() ? 1.0 : 0.0);
    return e;
}

}  // namespace qgw
