#include "qgw/fixtures.hpp"

#include <cmath>
#include <random>

namespace qgw {
namespace {

Matrix diag_indicator(Index n, const std::function<bool(Index)>& pred) {
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        if (pred(i)) m(i, i) = 1.0;
    return m;
}

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                               const std::vector<std::array<Index, 3>>& compose)
    : units_(std::move(units)), arrows_(std::move(arrows)) {
    const Index nu = unit_count();
    const Index na = arrow_count();
    if (nu == 0 || na == 0) throw PreconditionError("groupoid needs units and arrows");
    for (const auto& a : arrows_)
        if (a.src < 0 || a.src >= nu || a.tgt < 0 || a.tgt >= nu) throw PreconditionError("arrow endpoint is not a unit");

    table_.assign(static_cast<std::size_t>(na * na), -1);
    for (const auto& [g, h, gh] : compose) {
        if (g < 0 || g >= na || h < 0 || h >= na || gh < 0 || gh >= na)
            throw PreconditionError("composition refers to an unknown arrow");
        if (!composable(g, h)) throw PreconditionError("composition given for a non-composable pair");
        if (arrows_[gh].src != arrows_[h].src || arrows_[gh].tgt != arrows_[g].tgt)
            throw PreconditionError("composite has the wrong endpoints");
        auto& slot = table_[static_cast<std::size_t>(g * na + h)];
        if (slot != -1 && slot != gh) throw PreconditionError("composition is not a function");
        slot = gh;
    }
    for (Index g = 0; g < na; ++g)
        for (Index h = 0; h < na; ++h)
            if (composable(g, h) && this->compose(g, h) < 0) throw PreconditionError("composable pair without composite");

    for (Index g = 0; g < na; ++g)
        for (Index h = 0; h < na; ++h) {
            if (!composable(g, h)) continue;
            for (Index k = 0; k < na; ++k)
                if (composable(h, k) && this->compose(this->compose(g, h), k) != this->compose(g, this->compose(h, k)))
                    throw PreconditionError("composition is not associative");
        }

    identities_.assign(static_cast<std::size_t>(nu), -1);
    for (Index u = 0; u < nu; ++u) {
        for (Index e = 0; e < na && identities_[static_cast<std::size_t>(u)] < 0; ++e) {
            if (arrows_[e].src != u || arrows_[e].tgt != u) continue;
            bool ok = true;
            for (Index g = 0; g < na && ok; ++g) {
                if (arrows_[g].tgt == u && this->compose(e, g) != g) ok = false;
                if (arrows_[g].src == u && this->compose(g, e) != g) ok = false;
            }
            if (ok) identities_[static_cast<std::size_t>(u)] = e;
        }
        if (identities_[static_cast<std::size_t>(u)] < 0) throw PreconditionError("unit without identity arrow");
    }

    inverses_.assign(static_cast<std::size_t>(na), -1);
    for (Index g = 0; g < na; ++g) {
        for (Index k = 0; k < na; ++k) {
            if (composable(g, k) && composable(k, g) && this->compose(g, k) == identity_at(arrows_[g].tgt) &&
                this->compose(k, g) == identity_at(arrows_[g].src)) {
                inverses_[static_cast<std::size_t>(g)] = k;
                break;
            }
        }
        if (inverses_[static_cast<std::size_t>(g)] < 0) throw PreconditionError("arrow without inverse");
    }
}

std::vector<std::array<Index, 3>> FiniteGroupoid::composition_table() const {
    std::vector<std::array<Index, 3>> out;
    for (Index g = 0; g < arrow_count(); ++g)
        for (Index h = 0; h < arrow_count(); ++h)
            if (composable(g, h)) out.push_back({g, h, compose(g, h)});
    return out;
}

FiniteGroupoid cyclic_group(Index n) {
    if (n < 1) throw PreconditionError("cyclic group needs n >= 1");
    std::vector<Arrow> arrows;
    for (Index i = 0; i < n; ++i) arrows.push_back(Arrow{"g" + std::to_string(i), 0, 0});
    std::vector<std::array<Index, 3>> comp;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) comp.push_back({i, j, (i + j) % n});
    return FiniteGroupoid({"e"}, std::move(arrows), comp);
}

FiniteGroupoid pair_groupoid(Index n) {
    if (n < 1) throw PreconditionError("pair groupoid needs n >= 1");
    std::vector<std::string> units;
    for (Index i = 0; i < n; ++i) units.push_back("u" + std::to_string(i));
    std::vector<Arrow> arrows;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) arrows.push_back(Arrow{"(" + std::to_string(i) + "," + std::to_string(j) + ")", j, i});
    std::vector<std::array<Index, 3>> comp;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k) comp.push_back({i * n + j, j * n + k, i * n + k});
    return FiniteGroupoid(std::move(units), std::move(arrows), comp);
}

StarAlgebra diagonal_algebra(Index n) {
    Matrix frame = Matrix::Zero(n * n, n);
    for (Index i = 0; i < n; ++i) frame(i * n + i, i) = 1.0;
    return StarAlgebra(OperatorSubspace(n, n, frame));
}

StarAlgebra block_algebra(const std::vector<Index>& blocks) {
    if (blocks.empty()) throw PreconditionError("block specification is empty");
    Index n = 0, d = 0;
    for (Index b : blocks) {
        if (b < 1) throw PreconditionError("block sizes must be positive");
        n += b;
        d += b * b;
    }
    Matrix frame = Matrix::Zero(n * n, d);
    Index offset = 0, col = 0;
    for (Index b : blocks) {
        for (Index j = 0; j < b; ++j)
            for (Index i = 0; i < b; ++i) frame((offset + j) * n + offset + i, col++) = 1.0;
        offset += b;
    }
    return StarAlgebra(OperatorSubspace(n, n, frame));
}

State random_faithful_state(const std::vector<Index>& blocks, std::uint64_t seed) {
    StarAlgebra alg = block_algebra(blocks);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.2, 1.0);
    const Index n = alg.carrier_dim();
    Matrix density = Matrix::Zero(n, n);
    Index offset = 0;
    for (Index b : blocks) {
        const Matrix g = gaussian(b, b, rng);
        Matrix p = g * g.adjoint() + 0.1 * identity(b);
        p *= uni(rng) / std::real(p.trace());
        density.block(offset, offset, b, b) = p;
        offset += b;
    }
    density /= density.trace();
    return State{std::move(alg), std::move(density)};
}

CStarBase random_standard_base(const std::vector<Index>& blocks, std::uint64_t seed, const Tolerance& tol) {
    return cbase_from_state(random_faithful_state(blocks, seed), tol);
}

Matrix random_unitary(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix g = gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * identity(n);
    const Matrix r = qr.matrixQR();
    for (Index i = 0; i < n; ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

LinkedBase random_linked_base(const GnsTriple& g, std::uint64_t seed, const Tolerance& tol) {
    const CStarBase b0 = cbase_from_state(g, tol);
    const Matrix u = random_unitary(g.dim(), seed);
    std::vector<Matrix> b, bd;
    for (const auto& x : b0.b.elements()) b.push_back(u.adjoint() * x * u);
    for (const auto& x : b0.b_dag.elements()) bd.push_back(u.adjoint() * x * u);
    CStarBase base{g.dim(), StarAlgebra(span(b, tol)), StarAlgebra(span(bd, tol)), Vector(u.adjoint() * g.zeta)};
    return link(std::make_shared<const GnsTriple>(g), base, u, tol);
}

GroupoidLegs groupoid_legs(const FiniteGroupoid& g, const std::optional<std::vector<double>>& weights,
                           const Tolerance& tol) {
    const Index nu = g.unit_count();
    const Index na = g.arrow_count();
    std::vector<double> w = weights.value_or(std::vector<double>(static_cast<std::size_t>(nu), 1.0));
    if (static_cast<Index>(w.size()) != nu) throw DimensionError("one weight per unit is required");
    double total = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) throw FaithfulnessError("unit weights must be positive");
        total += x;
    }
    Matrix density = Matrix::Zero(nu, nu);
    for (Index u = 0; u < nu; ++u) density(u, u) = w[static_cast<std::size_t>(u)] / total;
    StarAlgebra n = diagonal_algebra(nu);
    auto gns_ptr = std::make_shared<const GnsTriple>(gns(State{n, density}, tol));

    std::vector<Matrix> range, source;
    for (Index u = 0; u < nu; ++u) {
        range.push_back(diag_indicator(na, [&](Index a) { return g.arrows()[a].tgt == u; }));
        source.push_back(diag_indicator(na, [&](Index a) { return g.arrows()[a].src == u; }));
    }
    return GroupoidLegs{gns_ptr, AlgebraMap{n, range, Side::Opposite}, AlgebraMap{n, range, Side::Plain},
                        AlgebraMap{n, source, Side::Plain}};
}

PmuData groupoid_pmu(const FiniteGroupoid& g, const std::optional<std::vector<double>>& weights, const Tolerance& tol) {
    const GroupoidLegs legs = groupoid_legs(g, weights, tol);
    const RelativeTensorSpace src = rtp_state(legs.gns, legs.sigma_hat, legs.rho, tol);
    const RelativeTensorSpace tgt = rtp_state(legs.gns, legs.rho, legs.sigma, tol);
    const Index na = g.arrow_count();
    Matrix v = Matrix::Zero(tgt.dim(), src.dim());
    for (const auto& [a, b, ab] : g.composition_table()) {
        Vector s = src.classes().col(a * na + b);
        Vector t = tgt.classes().col(a * na + ab);
        if (s.norm() <= tol.certify() || t.norm() <= tol.certify())
            throw InternalInconsistencyError("composable pair has a null class");
        v += t.normalized() * s.normalized().adjoint();
    }
    return make_pmu_data(legs.gns, legs.rho, legs.sigma, legs.sigma_hat, v, tol);
}

HopfData groupoid_hopf(const FiniteGroupoid& g, const Tolerance& tol) {
    const GroupoidLegs legs = groupoid_legs(g, std::nullopt, tol);
    const Index na = g.arrow_count();
    std::vector<Matrix> lambdas;
    for (Index a = 0; a < na; ++a) {
        Matrix l = Matrix::Zero(na, na);
        for (Index h = 0; h < na; ++h)
            if (g.composable(a, h)) l(g.compose(a, h), h) = 1.0;
        lambdas.push_back(std::move(l));
    }
    StarAlgebra algebra(span(lambdas, tol));
    const RelativeTensorSpace space = rtp_state(legs.gns, legs.rho, legs.sigma, tol);

    std::vector<Matrix> dl;
    for (const auto& l : lambdas) {
        Lift x = lift_checked(space, space, l, l, tol);
        if (x.residual > tol.certify() * std::max(1.0, l.norm() * l.norm()))
            throw InternalInconsistencyError("lambda_g (x) lambda_g does not descend to the relative tensor product");
        dl.push_back(std::move(x.op));
    }
    std::vector<Matrix> images;
    for (const auto& b : algebra.elements()) {
        Matrix d = Matrix::Zero(space.dim(), space.dim());
        for (std::size_t i = 0; i < lambdas.size(); ++i) d += dl[i] * (hs_inner(lambdas[i], b) / lambdas[i].squaredNorm());
        images.push_back(std::move(d));
    }
    return make_hopf_data(legs.gns, std::move(algebra), legs.rho, legs.sigma, std::move(images), tol);
}

PmuData phase_perturbed(const PmuData& p, Index index, double theta, const Tolerance& tol) {
    if (index < 0 || index >= p.v.cols()) throw DimensionError("phase index outside the source space");
    Matrix v = p.v;
    v.col(index) *= std::polar(1.0, theta);
    return make_pmu_data(p.gns, p.rho, p.sigma, p.sigma_hat, v, tol);
}

PmuData swapped(const PmuData& p, const Tolerance& tol) {
    const Index h = p.source->left_dim;
    const Matrix flip_plain = tensor_permutation({h, h}, {1, 0});
    const Matrix v = p.target->classes() * flip_plain * p.source->section();
    if (unitarity_residual(v) > tol.certify() * std::max(1.0, std::sqrt(double(v.rows()))))
        throw PreconditionError("tensor flip does not descend to a unitary between the relative tensor squares");
    return make_pmu_data(p.gns, p.rho, p.sigma, p.sigma_hat, v, tol);
}

HopfData perturbed_coproduct(const HopfData& h, double theta, std::uint64_t seed, const Tolerance& tol) {
    const FiberProduct fp = fiber_classical(h.algebra, h.algebra, h.space, tol);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Index r = h.space->dim();
    Matrix herm = Matrix::Zero(r, r);
    for (const auto& b : fp.algebra.elements()) herm += normal(rng) * (b + b.adjoint()) + normal(rng) * Complex(0, 1) * (b - b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (herm + herm.adjoint()));
    Eigen::VectorXcd phases(r);
    for (Index i = 0; i < r; ++i) phases(i) = std::polar(1.0, theta * es.eigenvalues()(i));
    const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    HopfData out = h;
    for (auto& d : out.delta.images) d = u * d * u.adjoint();
    return out;
}

}  // namespace qgw
