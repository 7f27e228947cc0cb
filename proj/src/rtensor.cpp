#include "qgw/rtensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgw {
namespace {

// G_{(a,c),(a',c')} = < R_l(e_a')^* R_l(e_a) zeta , R_r(f_c)^* R_r(f_c') zeta >
Matrix gram_from_r(const std::vector<Matrix>& lr, const std::vector<Matrix>& rr, const Vector& zeta) {
    const Index h = static_cast<Index>(lr.size());
    const Index k = static_cast<Index>(rr.size());
    const Index d = zeta.size();
    Matrix u(d, h * h);
    for (Index a = 0; a < h; ++a) {
        const Vector rz = lr[a] * zeta;
        for (Index ap = 0; ap < h; ++ap) u.col(a * h + ap) = lr[ap].adjoint() * rz;
    }
    Matrix v(d, k * k);
    for (Index cp = 0; cp < k; ++cp) {
        const Vector rz = rr[cp] * zeta;
        for (Index c = 0; c < k; ++c) v.col(c * k + cp) = rr[c].adjoint() * rz;
    }
    const Matrix inner = u.adjoint() * v;
    Matrix g(h * k, h * k);
    for (Index a = 0; a < h; ++a)
        for (Index ap = 0; ap < h; ++ap)
            for (Index c = 0; c < k; ++c)
                for (Index cp = 0; cp < k; ++cp) g(a * k + c, ap * k + cp) = inner(a * h + ap, c * k + cp);
    return g;
}

std::vector<Matrix> state_r_operators(const GnsTriple& g, const AlgebraMap& rep) {
    const AlgebraMap& leg = g.leg(rep.side);
    const Index d = g.dim();
    Matrix b(d, d);
    for (Index i = 0; i < d; ++i) b.col(i) = leg.images[static_cast<std::size_t>(i)] * g.zeta;
    const Matrix b_inv = b.fullPivLu().inverse();
    const Index h = rep.target_rows();
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(h));
    for (Index a = 0; a < h; ++a) {
        Matrix c(h, d);
        for (Index i = 0; i < d; ++i) c.col(i) = rep.images[static_cast<std::size_t>(i)].col(a);
        out.push_back(c * b_inv);
    }
    return out;
}

void require_representation(const AlgebraMap& rep, const Tolerance& tol, const char* what) {
    const double scale = std::max(1.0, std::sqrt(double(rep.target_rows())));
    if (certify(rep, tol).worst(true, false) > tol.certify() * scale) throw PreconditionError(what);
}

}  // namespace

Vector RelativeTensorSpace::class_of(const Vector& xi, const Vector& eta) const {
    return classes() * kron(xi, eta);
}

RelativeTensorSpace rtp_state(std::shared_ptr<const GnsTriple> g, const AlgebraMap& left, const AlgebraMap& right,
                              const Tolerance& tol) {
    if (left.side == right.side) throw PreconditionError("legs of a relative tensor product need opposite sides");
    for (const AlgebraMap* rep : {&left, &right}) {
        if (rep->domain.dim() != g->algebra().dim() || rep->domain.carrier_dim() != g->algebra().carrier_dim() ||
            !subspace_equal(rep->domain.space(), g->algebra().space(), tol))
            throw DimensionError("representation is not defined on the state's algebra");
    }
    require_representation(left, tol, "left representation violates the *-representation axioms");
    require_representation(right, tol, "right representation violates the *-representation axioms");

    RelativeTensorSpace s;
    s.flavor = Flavor::State;
    s.left_dim = left.target_rows();
    s.right_dim = right.target_rows();
    s.gns = std::move(g);
    s.left_rep = left;
    s.right_rep = right;
    s.zeta = s.gns->zeta;
    s.left_r = state_r_operators(*s.gns, left);
    s.right_r = state_r_operators(*s.gns, right);
    s.gram = gram_from_r(s.left_r, s.right_r, s.zeta);
    s.quotient = null_space_quotient(s.gram, tol);
    return s;
}

RelativeTensorSpace rtp_cstar(FactorizationPtr left, FactorizationPtr right, const Tolerance& tol) {
    const CStarBase& lb = left->base();
    const CStarBase& rb = right->base();
    if (lb.frak_h_dim != rb.frak_h_dim || !subspace_equal(lb.b.space(), rb.b_dag.space(), tol) ||
        !subspace_equal(lb.b_dag.space(), rb.b.space(), tol))
        throw DimensionError("right factorization is not over the opposite base");
    if ((lb.bicyclic() - rb.bicyclic()).norm() > tol.certify())
        throw DimensionError("factorizations use different bicyclic vectors");

    RelativeTensorSpace s;
    s.flavor = Flavor::CStar;
    s.left_dim = left->h_dim();
    s.right_dim = right->h_dim();
    s.zeta = lb.bicyclic();
    s.left_r = left->r_basis();
    s.right_r = right->r_basis();
    s.left_fact = std::move(left);
    s.right_fact = std::move(right);
    s.gram = gram_from_r(s.left_r, s.right_r, s.zeta);
    s.quotient = null_space_quotient(s.gram, tol);
    return s;
}

Vector triple_class(const RelativeTensorSpace& s, const Matrix& xi, const Vector& x, const Matrix& eta) {
    // g_(a,c) = < xi^* R_l(e_a) zeta , R_r(f_c)^* eta x >
    const Vector ex = eta * x;
    Matrix p(s.zeta.size(), s.left_dim);
    for (Index a = 0; a < s.left_dim; ++a) p.col(a) = xi.adjoint() * (s.left_r[a] * s.zeta);
    Matrix q(s.zeta.size(), s.right_dim);
    for (Index c = 0; c < s.right_dim; ++c) q.col(c) = s.right_r[c].adjoint() * ex;
    const Matrix inner = p.adjoint() * q;
    Vector g(s.plain_dim());
    for (Index a = 0; a < s.left_dim; ++a)
        for (Index c = 0; c < s.right_dim; ++c) g(a * s.right_dim + c) = inner(a, c);
    return s.section().adjoint() * g;
}

Matrix ket_left(const RelativeTensorSpace& s, const Matrix& xi, const Tolerance& tol) {
    if (s.flavor != Flavor::CStar) throw PreconditionError("kets need a C*-relative tensor product");
    if (!s.left_fact->contains(xi, tol)) throw MembershipError("operator is not in the left factorization");
    return s.classes() * kron(xi * s.zeta, identity(s.right_dim));
}

Matrix ket_right(const RelativeTensorSpace& s, const Matrix& eta, const Tolerance& tol) {
    if (s.flavor != Flavor::CStar) throw PreconditionError("kets need a C*-relative tensor product");
    if (!s.right_fact->contains(eta, tol)) throw MembershipError("operator is not in the right factorization");
    return s.classes() * kron(identity(s.left_dim), eta * s.zeta);
}

double identification_residual(const RelativeTensorSpace& s, const Tolerance& tol) {
    if (s.flavor != Flavor::CStar) throw PreconditionError("identifications need a C*-relative tensor product");
    double worst = 0.0;
    const Index n = s.zeta.size();
    for (const auto& xi : s.left_fact->elements()) {
        const Matrix kl = ket_left(s, xi, tol);
        for (const auto& eta : s.right_fact->elements()) {
            const Matrix kr = ket_right(s, eta, tol);
            for (Index j = 0; j < n; ++j) {
                const Vector x = Vector::Unit(n, j);
                const Vector t = triple_class(s, xi, x, eta);
                worst = std::max(worst, (t - kl * (eta * x)).norm());
                worst = std::max(worst, (t - kr * (xi * x)).norm());
            }
        }
    }
    return worst;
}

FactorizationPtr leg_right(const RelativeTensorSpace& x, const CStarFactorization& delta, const Tolerance& tol) {
    if (delta.h_dim() != x.right_dim) throw DimensionError("factorization does not act on the right factor");
    std::vector<Matrix> elems;
    for (const auto& xi : x.left_fact->elements()) {
        const Matrix k = ket_left(x, xi, tol);
        for (const auto& d : delta.elements()) elems.push_back(k * d);
    }
    auto f = std::make_shared<const CStarFactorization>(delta.base(), span(elems, x.dim(), delta.base().frak_h_dim, tol), tol);
    const auto dom = delta.rho().domain.elements();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const Matrix expected = lift(x, identity(x.left_dim), delta.rho().images[i], tol);
        if ((f->rho().apply(dom[i]) - expected).norm() > tol.certify() * std::max(1.0, expected.norm()))
            throw InternalInconsistencyError("derived factorization does not induce the lifted representation");
    }
    return f;
}

FactorizationPtr leg_left(const RelativeTensorSpace& x, const CStarFactorization& gamma, const Tolerance& tol) {
    if (gamma.h_dim() != x.left_dim) throw DimensionError("factorization does not act on the left factor");
    std::vector<Matrix> elems;
    for (const auto& eta : x.right_fact->elements()) {
        const Matrix k = ket_right(x, eta, tol);
        for (const auto& g : gamma.elements()) elems.push_back(k * g);
    }
    auto f = std::make_shared<const CStarFactorization>(gamma.base(), span(elems, x.dim(), gamma.base().frak_h_dim, tol), tol);
    const auto dom = gamma.rho().domain.elements();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const Matrix expected = lift(x, gamma.rho().images[i], identity(x.right_dim), tol);
        if ((f->rho().apply(dom[i]) - expected).norm() > tol.certify() * std::max(1.0, expected.norm()))
            throw InternalInconsistencyError("derived factorization does not induce the lifted representation");
    }
    return f;
}

Lift lift_checked(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt, const Matrix& s, const Matrix& t,
                  const Tolerance& tol) {
    if (s.rows() != tgt.left_dim || s.cols() != src.left_dim || t.rows() != tgt.right_dim || t.cols() != src.right_dim)
        throw DimensionError("operator legs do not match the tensor factors");
    const Matrix k = kron(s, t);
    const Matrix pk = tgt.classes() * k;
    Lift out;
    out.op = pk * src.section();
    out.residual = (pk - out.op * src.classes()).norm();
    (void)tol;
    return out;
}

std::vector<Lift> lift_family(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt,
                              const std::vector<Matrix>& ss, const std::vector<Matrix>& ts) {
    for (const auto& s : ss)
        if (s.rows() != tgt.left_dim || s.cols() != src.left_dim) throw DimensionError("left operators do not match");
    for (const auto& t : ts)
        if (t.rows() != tgt.right_dim || t.cols() != src.right_dim) throw DimensionError("right operators do not match");
    // S (x) T = (S (x) 1)(1 (x) T)
    const Matrix off_null = identity(src.plain_dim()) - src.section() * src.classes();
    const Matrix ih = identity(src.left_dim);
    const Matrix ik = identity(tgt.right_dim);
    std::vector<Matrix> right_sec, right_null;
    for (const auto& t : ts) {
        const Matrix b = kron(ih, t);
        right_sec.push_back(b * src.section());
        right_null.push_back(b * off_null);
    }
    std::vector<Lift> out;
    out.reserve(ss.size() * ts.size());
    for (const auto& s : ss) {
        const Matrix a = tgt.classes() * kron(s, ik);
        for (std::size_t j = 0; j < ts.size(); ++j) out.push_back(Lift{a * right_sec[j], (a * right_null[j]).norm()});
    }
    return out;
}

Matrix lift(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt, const Matrix& s, const Matrix& t,
            const Tolerance& tol) {
    Lift l = lift_checked(src, tgt, s, t, tol);
    const double scale = std::max(1.0, s.norm() * t.norm());
    if (l.residual > tol.certify() * scale)
        throw NotWellDefinedError("operator does not descend to the relative tensor product");
    return std::move(l.op);
}

Matrix lift(const RelativeTensorSpace& s, const Matrix& a, const Matrix& b, const Tolerance& tol) {
    return lift(s, s, a, b, tol);
}

Flip flip(const RelativeTensorSpace& s, const Tolerance& tol) {
    Flip f;
    auto target = std::make_shared<RelativeTensorSpace>(
        s.flavor == Flavor::State ? rtp_state(s.gns, s.right_rep, s.left_rep, tol)
                                  : rtp_cstar(s.right_fact, s.left_fact, tol));
    const Matrix pk = target->classes() * tensor_permutation({s.left_dim, s.right_dim}, {1, 0});
    f.op = pk * s.section();
    f.well_defined = (pk - f.op * s.classes()).norm();
    f.unitarity = unitarity_residual(f.op);
    f.target = std::move(target);
    return f;
}

Matrix tensor_permutation(const std::vector<Index>& dims, const std::vector<Index>& perm) {
    const std::size_t k = dims.size();
    if (perm.size() != k) throw DimensionError("permutation length does not match the factors");
    std::vector<Index> out_dims(k);
    for (std::size_t i = 0; i < k; ++i) out_dims[static_cast<std::size_t>(perm[i])] = dims[i];
    const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<Index>());
    Matrix m = Matrix::Zero(total, total);
    std::vector<Index> idx(k, 0), out_idx(k, 0);
    for (Index in = 0; in < total; ++in) {
        Index rem = in;
        for (std::size_t i = k; i-- > 0;) {
            idx[i] = rem % dims[i];
            rem /= dims[i];
        }
        for (std::size_t i = 0; i < k; ++i) out_idx[static_cast<std::size_t>(perm[i])] = idx[i];
        Index out = 0;
        for (std::size_t i = 0; i < k; ++i) out = out * out_dims[i] + out_idx[i];
        m(out, in) = 1.0;
    }
    return m;
}

NestedQuotient nest_left(const RelativeTensorSpace& outer, const RelativeTensorSpace& inner) {
    if (outer.left_dim != inner.dim()) throw DimensionError("outer left factor is not the inner product");
    const Matrix i3 = identity(outer.right_dim);
    return NestedQuotient{outer.classes() * kron(inner.classes(), i3), kron(inner.section(), i3) * outer.section()};
}

NestedQuotient nest_right(const RelativeTensorSpace& outer, const RelativeTensorSpace& inner) {
    if (outer.right_dim != inner.dim()) throw DimensionError("outer right factor is not the inner product");
    const Matrix i1 = identity(outer.left_dim);
    return NestedQuotient{outer.classes() * kron(i1, inner.classes()), kron(i1, inner.section()) * outer.section()};
}

InducedUnitary induced_unitary(const NestedQuotient& src, const NestedQuotient& tgt, const Matrix& plain) {
    InducedUnitary u;
    const Matrix pk = plain.size() == 0 ? tgt.classes : Matrix(tgt.classes * plain);
    if (pk.cols() != src.classes.cols()) throw DimensionError("nested quotients have different plain spaces");
    u.op = pk * src.section;
    u.well_defined = (pk - u.op * src.classes).norm();
    u.unitarity = unitarity_residual(u.op);
    return u;
}

PhiUnitary phi_unitary(const RelativeTensorSpace& ss, const RelativeTensorSpace& cs, const LinkedBase& lb,
                       const Tolerance& tol) {
    if (ss.flavor != Flavor::State || cs.flavor != Flavor::CStar)
        throw PreconditionError("phi maps a state-based product to a C*-based one");
    if (ss.left_dim != cs.left_dim || ss.right_dim != cs.right_dim) throw DimensionError("factor dimensions differ");
    const double scale = std::max(1.0, std::sqrt(double(std::max(ss.left_dim, ss.right_dim))));
    if (representation_distance(transport_representation(lb, ss.left_rep, tol), cs.left_fact->rho()) >
            tol.certify() * scale ||
        representation_distance(transport_representation(lb, ss.right_rep, tol), cs.right_fact->rho()) >
            tol.certify() * scale)
        throw PreconditionError("state-side representations are not linked to the factorizations");

    PhiUnitary p;
    std::vector<Matrix> xs, ys;
    for (const auto& r : ss.left_r) {
        xs.push_back(r * lb.u);
        p.membership = std::max(p.membership, cs.left_fact->alpha().residual(xs.back()));
    }
    for (const auto& r : ss.right_r) {
        ys.push_back(r * lb.u);
        p.membership = std::max(p.membership, cs.right_fact->alpha().residual(ys.back()));
    }
    if (p.membership > tol.certify() * scale) throw MembershipError("R-operators do not land in the factorizations");

    Matrix m(cs.dim(), ss.plain_dim());
    for (Index a = 0; a < ss.left_dim; ++a)
        for (Index c = 0; c < ss.right_dim; ++c)
            m.col(a * ss.right_dim + c) = triple_class(cs, xs[a], cs.zeta, ys[c]);
    p.op = m * ss.section();
    p.well_defined = (p.op * ss.classes() - m).norm();
    p.unitarity = unitarity_residual(p.op);
    return p;
}

}  // namespace qgw
