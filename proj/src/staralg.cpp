#include "qgw/staralg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qgw {

StarAlgebra::StarAlgebra(OperatorSubspace basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols()) {
        throw DimensionError("a *-algebra must consist of square operators");
    }
}

bool StarAlgebra::contains(const Matrix& x, const Tolerance& tol) const {
    return membership_residual(x) <= tol.certify() * std::max(1.0, x.norm());
}

double AlgebraCertificate::worst() const {
    return std::max({adjoint, product, nondegeneracy});
}

AlgebraCertificate certify(const StarAlgebra& a, const Tolerance& tol) {
    AlgebraCertificate c;
    const auto b = a.elements();
    const Index n = a.carrier_dim();
    for (const auto& x : b) c.adjoint = std::max(c.adjoint, a.membership_residual(x.adjoint()));
    for (const auto& x : b) {
        for (const auto& y : b) c.product = std::max(c.product, a.membership_residual(x * y));
    }
    if (n > 0) {
        Matrix stacked(n, n * std::max<Index>(a.dim(), 1));
        stacked.setZero();
        for (std::size_t k = 0; k < b.size(); ++k) stacked.middleCols(static_cast<Index>(k) * n, n) = b[k];
        const Index r = tolerant_rank(stacked, tol);
        c.nondegeneracy = 1.0 - static_cast<double>(r) / static_cast<double>(n);
    }
    c.unital = a.contains(identity(n), tol);
    return c;
}

StarAlgebra algebra_closure(const std::vector<Matrix>& generators, Index n, bool include_unit,
                            const Tolerance& tol) {
    std::vector<Matrix> seed;
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n) throw DimensionError("algebra_closure: generator shape");
        seed.push_back(g);
        seed.push_back(g.adjoint());
    }
    if (include_unit) seed.push_back(identity(n));
    OperatorSubspace current = span(seed, n, n, tol);
    for (;;) {
        const auto b = current.basis();
        std::vector<Matrix> next = b;
        for (const auto& x : b) {
            next.push_back(x.adjoint());
            for (const auto& y : b) next.push_back(x * y);
        }
        OperatorSubspace grown = span(next, n, n, tol);
        if (grown.dim() == current.dim()) return StarAlgebra(std::move(grown));
        current = std::move(grown);
    }
}

std::optional<Matrix> intertwiner_seed(const std::vector<Matrix>& dom, const std::vector<Matrix>& images,
                                       const Tolerance& tol) {
    if (dom.empty() || dom.size() != images.size()) return std::nullopt;
    const Index n = dom.front().rows();
    const Index k = images.front().rows();
    const Index m = static_cast<Index>(dom.size());
    Matrix d(n * n, m), im(k * k, m);
    for (Index i = 0; i < m; ++i) {
        if (dom[i].rows() != n || dom[i].cols() != n || images[i].rows() != k || images[i].cols() != k)
            return std::nullopt;
        d.col(i) = vec(dom[i]);
        im.col(i) = vec(images[i]);
    }
    // Adjoints must stay inside span(dom) and map to the adjoint images.
    const auto solver = d.completeOrthogonalDecomposition();
    double dscale = 1.0, iscale = 1.0;
    for (Index i = 0; i < m; ++i) {
        dscale = std::max(dscale, dom[i].norm());
        iscale = std::max(iscale, images[i].norm());
    }
    for (Index i = 0; i < m; ++i) {
        const Vector target = vec(dom[i].adjoint());
        const Vector c = solver.solve(target);
        if ((d * c - target).norm() > tol.certify() * dscale) return std::nullopt;
        if ((im * c - vec(images[i].adjoint())).norm() > tol.certify() * iscale * std::max(1.0, c.norm()))
            return std::nullopt;
    }

    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> normal;
    Matrix h = Matrix::Zero(n, n), hp = Matrix::Zero(k, k);
    for (Index i = 0; i < m; ++i) {
        const Complex c(normal(rng), normal(rng));
        h += c * dom[i] + std::conj(c) * dom[i].adjoint();
        hp += c * images[i] + std::conj(c) * images[i].adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eh(0.5 * (h + h.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> ep(0.5 * (hp + hp.adjoint()));

    // Joint clustering of both spectra. Merging close eigenvalues only
    // enlarges the seed, so the gap is generous.
    struct Item {
        double lambda;
        bool target;
        Index index;
    };
    std::vector<Item> items;
    for (Index i = 0; i < n; ++i) items.push_back({eh.eigenvalues()(i), false, i});
    for (Index i = 0; i < k; ++i) items.push_back({ep.eigenvalues()(i), true, i});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.lambda < b.lambda; });
    double spread = 1.0;
    for (const auto& it : items) spread = std::max(spread, std::abs(it.lambda));
    const double gap = 1e-6 * spread;

    std::vector<Vector> cols;
    std::size_t start = 0;
    while (start < items.size()) {
        std::size_t end = start + 1;
        while (end < items.size() && items[end].lambda - items[end - 1].lambda <= gap) ++end;
        for (std::size_t a = start; a < end; ++a) {
            if (!items[a].target) continue;
            for (std::size_t b = start; b < end; ++b) {
                if (items[b].target) continue;
                const Matrix t = ep.eigenvectors().col(items[a].index) * eh.eigenvectors().col(items[b].index).adjoint();
                cols.push_back(vec(t));
            }
        }
        start = end;
    }
    Matrix out(k * n, static_cast<Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = cols[i];
    return out;
}

StarAlgebra commutant_of(const std::vector<Matrix>& ops, Index n, const Tolerance& tol) {
    for (const auto& x : ops)
        if (x.rows() != n || x.cols() != n) throw DimensionError("commutant: operator shape");
    const auto seed = intertwiner_seed(ops, ops, tol);
    ConstraintSolver solver = seed ? ConstraintSolver(*seed, tol) : ConstraintSolver(n * n, tol);
    for (const auto& x : ops) {
        solver.add(
            [&](const Vector& v) {
                const Matrix t = unvec(v, n, n);
                return vec(t * x - x * t);
            },
            2.0 * x.norm());
    }
    return StarAlgebra(OperatorSubspace(n, n, solver.solutions()));
}

StarAlgebra commutant(const StarAlgebra& a, const Tolerance& tol) {
    return commutant_of(a.elements(), a.carrier_dim(), tol);
}

StarAlgebra center(const StarAlgebra& a, const Tolerance& tol) {
    const auto b = a.elements();
    const Index d = a.dim();
    const Index n = a.carrier_dim();
    ConstraintSolver solver(d, tol);
    for (const auto& y : b) {
        solver.add(
            [&](const Vector& c) {
                const Matrix x = a.space().element(c);
                return vec(x * y - y * x);
            },
            2.0);
    }
    std::vector<Matrix> elems;
    const Matrix& sol = solver.solutions();
    for (Index k = 0; k < sol.cols(); ++k) elems.push_back(a.space().element(sol.col(k)));
    return StarAlgebra(span(elems, n, n, tol));
}

std::vector<Matrix> central_projections(const StarAlgebra& a, const Tolerance& tol,
                                        std::uint64_t seed) {
    const Index n = a.carrier_dim();
    if (!a.contains(identity(n), tol)) {
        throw PreconditionError("central_projections: algebra is not unital");
    }
    const StarAlgebra z = center(a, tol);
    std::vector<Matrix> herm;
    for (const auto& x : z.elements()) {
        herm.push_back(0.5 * (x + x.adjoint()));
        herm.push_back(Complex(0.0, -0.5) * (x - x.adjoint()));
    }
    const OperatorSubspace hs = span(herm, n, n, tol);
    const auto hb = hs.basis();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    constexpr int kMaxAttempts = 8;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Matrix h = Matrix::Zero(n, n);
        for (const auto& x : hb) h += gauss(rng) * x;
        h = 0.5 * (h + h.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const auto& lam = es.eigenvalues();
        const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
        std::vector<Matrix> projections;
        Index start = 0;
        for (Index i = 1; i <= n; ++i) {
            if (i == n || lam(i) - lam(i - 1) > 1e-7 * scale) {
                const Matrix v = es.eigenvectors().middleCols(start, i - start);
                projections.push_back(v * v.adjoint());
                start = i;
            }
        }
        bool ok = static_cast<Index>(projections.size()) <= std::max<Index>(z.dim(), 1);
        for (const auto& p : projections) {
            if (!ok) break;
            if (!z.contains(p, tol)) ok = false;
            // p Z must be one-dimensional for p A to be a simple algebra.
            std::vector<Matrix> pz;
            for (const auto& x : z.elements()) pz.push_back(p * x);
            if (span(pz, n, n, Tolerance(std::max(tol.epsilon, 1e-8))).dim() != 1) ok = false;
        }
        if (!ok) continue;
        auto first_support = [](const Matrix& p) {
            const double m = p.diagonal().real().maxCoeff();
            for (Index i = 0; i < p.rows(); ++i) {
                if (std::real(p(i, i)) > 0.5 * m) return i;
            }
            return p.rows();
        };
        std::sort(projections.begin(), projections.end(),
                  [&](const Matrix& x, const Matrix& y) { return first_support(x) < first_support(y); });
        return projections;
    }
    throw NumericError("central_projections: no generic central element found");
}

// ---------------------------------------------------------------------------
// AlgebraMap

Index AlgebraMap::target_rows() const { return images.empty() ? 0 : images.front().rows(); }
Index AlgebraMap::target_cols() const { return images.empty() ? 0 : images.front().cols(); }

Matrix AlgebraMap::apply(const Matrix& a) const {
    const Vector c = domain.coordinates(a);
    Matrix out = Matrix::Zero(target_rows(), target_cols());
    for (Index i = 0; i < c.size(); ++i) out += c(i) * images[static_cast<std::size_t>(i)];
    return out;
}

namespace {

Matrix stacked_images(const AlgebraMap& f) {
    Matrix m(f.target_rows() * f.target_cols(), static_cast<Index>(f.images.size()));
    for (std::size_t i = 0; i < f.images.size(); ++i) m.col(static_cast<Index>(i)) = vec(f.images[i]);
    return m;
}

}  // namespace

Matrix AlgebraMap::preimage(const Matrix& target, const Tolerance& tol) const {
    if (target.rows() != target_rows() || target.cols() != target_cols()) {
        throw DimensionError("preimage: target shape mismatch");
    }
    const Matrix m = stacked_images(*this);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
    const Vector c = cod.solve(vec(target));
    const double res = (m * c - vec(target)).norm();
    if (res > tol.certify() * std::max(1.0, target.norm())) {
        throw MembershipError("preimage: operator is not in the image of the map (residual " +
                              std::to_string(res) + ")");
    }
    return domain.space().element(c);
}

double AlgebraMap::image_residual(const Matrix& target) const {
    const Matrix q = range_basis(stacked_images(*this));
    const Vector v = vec(target);
    return (v - q * (q.adjoint() * v)).norm();
}

double HomomorphismCertificate::worst(bool require_unital, bool require_faithful) const {
    double w = std::max(multiplicative, adjoint);
    if (require_unital) w = std::max(w, unital);
    if (require_faithful) w = std::max(w, injectivity);
    return w;
}

HomomorphismCertificate certify(const AlgebraMap& f, const Tolerance& tol) {
    HomomorphismCertificate c;
    const auto b = f.domain.elements();
    for (std::size_t i = 0; i < b.size(); ++i) {
        c.adjoint = std::max(c.adjoint, (f.apply(b[i].adjoint()) - f.images[i].adjoint()).norm());
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Matrix lhs = f.apply(b[i] * b[j]);
            const Matrix rhs = f.side == Side::Plain ? Matrix(f.images[i] * f.images[j])
                                                     : Matrix(f.images[j] * f.images[i]);
            c.multiplicative = std::max(c.multiplicative, (lhs - rhs).norm());
        }
    }
    const Index n = f.domain.carrier_dim();
    if (f.domain.contains(identity(n), tol) && f.target_rows() == f.target_cols()) {
        c.unital = (f.apply(identity(n)) - identity(f.target_rows())).norm();
    }
    const Index r = b.empty() ? 0 : tolerant_rank(stacked_images(f), tol);
    c.injectivity = r == f.domain.dim() ? 0.0 : 1.0;
    return c;
}

AlgebraMap extend_homomorphism(const StarAlgebra& domain, const std::vector<Matrix>& generators,
                               const std::vector<Matrix>& images, Side side, const Tolerance& tol) {
    if (generators.size() != images.size()) {
        throw DimensionError("extend_homomorphism: one image per generator required");
    }
    const Index n = domain.carrier_dim();
    const Index m = images.empty() ? 0 : images.front().rows();
    std::vector<Matrix> graph;
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (generators[k].rows() != n || images[k].rows() != m || images[k].cols() != m) {
            throw DimensionError("extend_homomorphism: generator or image shape");
        }
        Matrix g = Matrix::Zero(n + m, n + m);
        g.topLeftCorner(n, n) = generators[k];
        g.bottomRightCorner(m, m) = side == Side::Plain ? Matrix(images[k]) : Matrix(images[k].transpose());
        graph.push_back(std::move(g));
    }
    const StarAlgebra closed = algebra_closure(graph, n + m, true, tol);
    if (closed.dim() != domain.dim()) {
        throw PreconditionError("generator images do not define a *-homomorphism (graph dimension " +
                                std::to_string(closed.dim()) + " vs domain " +
                                std::to_string(domain.dim()) + ")");
    }
    const auto gb = closed.elements();
    Matrix firsts(n * n, closed.dim());
    for (Index k = 0; k < closed.dim(); ++k) firsts.col(k) = vec(gb[static_cast<std::size_t>(k)].topLeftCorner(n, n));
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(firsts);
    AlgebraMap f{domain, {}, side};
    for (const auto& b : domain.elements()) {
        const Vector c = cod.solve(vec(b));
        if ((firsts * c - vec(b)).norm() > tol.certify()) {
            throw PreconditionError("generators do not generate the domain algebra");
        }
        Matrix img = Matrix::Zero(m, m);
        for (Index k = 0; k < c.size(); ++k) img += c(k) * gb[static_cast<std::size_t>(k)].bottomRightCorner(m, m);
        f.images.push_back(side == Side::Plain ? img : Matrix(img.transpose()));
    }
    return f;
}

AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f, const Tolerance& tol) {
    AlgebraMap out{f.domain, {}, f.side == g.side ? Side::Plain : Side::Opposite};
    for (const auto& x : f.images) {
        if (!g.domain.contains(x, Tolerance(std::max(tol.epsilon, 1e-9)))) {
            throw PreconditionError("compose: image leaves the domain of the outer map");
        }
        out.images.push_back(g.apply(x));
    }
    return out;
}

AlgebraMap restrict_map(const AlgebraMap& f, const StarAlgebra& subalgebra) {
    AlgebraMap out{subalgebra, {}, f.side};
    for (const auto& b : subalgebra.elements()) out.images.push_back(f.apply(b));
    return out;
}

StarAlgebra image_algebra(const AlgebraMap& f, const Tolerance& tol) {
    return StarAlgebra(span(f.images, f.target_rows(), f.target_cols(), tol));
}

}  // namespace qgw
