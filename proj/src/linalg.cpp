#include "qgw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qgw {

namespace {

struct Svd {
    Matrix u;
    Eigen::VectorXd s;
    Matrix v;
};

// BDCSVD verified by reconstruction and orthonormality; JacobiSVD otherwise.
Svd square_svd(const Matrix& m, bool full_v) {
    const unsigned opts = Eigen::ComputeThinU | (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
    Eigen::BDCSVD<Matrix> fast(m, opts);
    Svd out{fast.matrixU(), fast.singularValues(), fast.matrixV()};
    const Index p = out.s.size();
    const double scale = std::max(1.0, m.norm());
    const double bound = 1e-11 * static_cast<double>(std::max<Index>({m.rows(), m.cols(), 1}));
    const double recon = (m - out.u * out.s.asDiagonal() * out.v.leftCols(p).adjoint()).norm() / scale;
    const double orth_u = (out.u.adjoint() * out.u - Matrix::Identity(out.u.cols(), out.u.cols())).norm();
    const double orth_v = (out.v.adjoint() * out.v - Matrix::Identity(out.v.cols(), out.v.cols())).norm();
    if (recon <= bound && orth_u <= bound && orth_v <= bound && out.s.allFinite()) return out;
    Eigen::JacobiSVD<Matrix> slow(m, opts);
    return Svd{slow.matrixU(), slow.singularValues(), slow.matrixV()};
}

// Thin U; thin or full V. Rectangular inputs are first reduced by a
// Householder QR so the decomposition runs on a square triangle.
Svd checked_svd(const Matrix& m, bool full_v) {
    const Index r = m.rows();
    const Index c = m.cols();
    if (r > c) {
        Eigen::HouseholderQR<Matrix> qr(m);
        const Matrix tri = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
        Svd inner = square_svd(tri, false);
        Matrix q = qr.householderQ() * Matrix::Identity(r, c);
        return Svd{q * inner.u, std::move(inner.s), std::move(inner.v)};
    }
    if (r < c) {
        const Matrix ma = m.adjoint();
        Eigen::HouseholderQR<Matrix> qr(ma);
        const Matrix tri = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        // m = tri^* Q^*, tri^* = U S W^*  =>  m = U S (Q W)^*
        Svd inner = square_svd(tri.adjoint(), false);
        Matrix q = qr.householderQ() * Matrix::Identity(c, full_v ? c : r);
        Matrix v(c, full_v ? c : r);
        v.leftCols(r) = q.leftCols(r) * inner.v;
        if (full_v) v.rightCols(c - r) = q.rightCols(c - r);
        return Svd{std::move(inner.u), std::move(inner.s), std::move(v)};
    }
    return square_svd(m, full_v);
}

}  // namespace

Tolerance::Tolerance(double eps) : epsilon(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw NumericError("tolerance must be a positive finite number");
    }
}

double Tolerance::rank_threshold(double sigma_max, Index rows, Index cols) const {
    return epsilon * sigma_max * static_cast<double>(std::max<Index>({rows, cols, 1}));
}

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) {
        throw DimensionError("unvec: length " + std::to_string(v.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Complex hs_inner(const Matrix& a, const Matrix& b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw NumericError(std::string(what) + ": non-finite entry");
    }
}

Index tolerant_rank(const Matrix& m, const Tolerance& tol) {
    if (m.size() == 0) return 0;
    const Svd svd = checked_svd(m, false);
    const auto& s = svd.s;
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double thr = tol.rank_threshold(s(0), m.rows(), m.cols());
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > thr) ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// OperatorSubspace

OperatorSubspace::OperatorSubspace(Index rows, Index cols)
    : rows_(rows), cols_(cols), frame_(rows * cols, 0) {}

OperatorSubspace::OperatorSubspace(Index rows, Index cols, Matrix frame)
    : rows_(rows), cols_(cols), frame_(std::move(frame)) {
    if (frame_.rows() != rows * cols) {
        throw DimensionError("operator subspace frame has wrong length");
    }
}

Matrix OperatorSubspace::basis(Index i) const { return unvec(frame_.col(i), rows_, cols_); }

std::vector<Matrix> OperatorSubspace::basis() const {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (Index i = 0; i < dim(); ++i) out.push_back(basis(i));
    return out;
}

void OperatorSubspace::require_shape(const Matrix& x, const char* what) const {
    if (x.rows() != rows_ || x.cols() != cols_) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " operator, got " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

Vector OperatorSubspace::coordinates(const Matrix& x) const {
    require_shape(x, "coordinates");
    return frame_.adjoint() * vec(x);
}

Matrix OperatorSubspace::element(const Vector& coords) const {
    if (coords.size() != dim()) throw DimensionError("element: coordinate length mismatch");
    return unvec(frame_ * coords, rows_, cols_);
}

Matrix OperatorSubspace::project(const Matrix& x) const { return element(coordinates(x)); }

double OperatorSubspace::residual(const Matrix& x) const {
    require_shape(x, "residual");
    const Vector v = vec(x);
    return (v - frame_ * (frame_.adjoint() * v)).norm();
}

OperatorSubspace span(const std::vector<Matrix>& mats, Index rows, Index cols,
                      const Tolerance& tol) {
    if (mats.empty()) return OperatorSubspace(rows, cols);
    Matrix stacked(rows * cols, static_cast<Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) {
        if (mats[k].rows() != rows || mats[k].cols() != cols) {
            throw DimensionError("span: all matrices must share one shape");
        }
        require_finite(mats[k], "span");
        stacked.col(static_cast<Index>(k)) = vec(mats[k]);
    }
    return OperatorSubspace(rows, cols, range_basis(stacked, tol));
}

OperatorSubspace span(const std::vector<Matrix>& mats, const Tolerance& tol) {
    if (mats.empty()) throw DimensionError("span: shape unknown for an empty list");
    return span(mats, mats.front().rows(), mats.front().cols(), tol);
}

double inclusion_residual(const OperatorSubspace& a, const OperatorSubspace& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("subspace comparison: shape mismatch");
    }
    if (a.dim() == 0) return 0.0;
    const Matrix res = a.frame() - b.frame() * (b.frame().adjoint() * a.frame());
    return res.colwise().norm().maxCoeff();
}

double subspace_distance(const OperatorSubspace& a, const OperatorSubspace& b) {
    const double r = std::max(inclusion_residual(a, b), inclusion_residual(b, a));
    if (a.dim() != b.dim()) return std::max(r, 1.0);
    return r;
}

bool subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b, const Tolerance& tol) {
    return a.dim() == b.dim() && subspace_distance(a, b) <= tol.epsilon;
}

// ---------------------------------------------------------------------------
// Null spaces and ranges

namespace {

// Null space of m (rows x k) inside C^k, with the rank threshold computed
// from max(sigma_max, scale).
Matrix null_space_scaled(const Matrix& m, double scale, const Tolerance& tol) {
    const Index k = m.cols();
    if (k == 0) return Matrix(0, 0);
    if (m.rows() == 0) return Matrix::Identity(k, k);
    const Svd svd = checked_svd(m, true);
    const auto& s = svd.s;
    const double smax = s.size() > 0 ? s(0) : 0.0;
    const double thr = tol.rank_threshold(std::max(smax, scale), m.rows(), k);
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > thr) ++r;
    }
    return svd.v.rightCols(k - r);
}

}  // namespace

Matrix null_space(const Matrix& m, const Tolerance& tol) {
    require_finite(m, "null_space");
    return null_space_scaled(m, 0.0, tol);
}

Matrix range_basis(const Matrix& m, const Tolerance& tol) {
    if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
    const Svd svd = checked_svd(m, false);
    const auto& s = svd.s;
    if (s.size() == 0 || s(0) == 0.0) return Matrix(m.rows(), 0);
    const double thr = tol.rank_threshold(s(0), m.rows(), m.cols());
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > thr) ++r;
    }
    return svd.u.leftCols(r);
}

ConstraintSolver::ConstraintSolver(Index unknowns, Tolerance tol)
    : tol_(tol), basis_(Matrix::Identity(unknowns, unknowns)) {}

ConstraintSolver::ConstraintSolver(const Matrix& initial, Tolerance tol) : tol_(tol) {
    require_finite(initial, "constraint seed");
    basis_ = range_basis(initial, tol_);
}

void ConstraintSolver::restrict_to(const Matrix& images, double scale) {
    if (basis_.cols() == 0) return;
    const Matrix n = null_space_scaled(images, scale, tol_);
    basis_ = basis_ * n;
    if (basis_.cols() > 0) {
        // Re-orthonormalize against accumulated rounding.
        Eigen::HouseholderQR<Matrix> qr(basis_);
        basis_ = qr.householderQ() * Matrix::Identity(basis_.rows(), basis_.cols());
    }
}

void ConstraintSolver::add(const Family& family, double scale) {
    if (basis_.cols() == 0) return;
    Matrix images;
    for (Index j = 0; j < basis_.cols(); ++j) {
        const Vector img = family(basis_.col(j));
        if (j == 0) images.resize(img.size(), basis_.cols());
        images.col(j) = img;
    }
    restrict_to(images, scale);
}

void ConstraintSolver::add_matrix(const Matrix& constraint) {
    if (constraint.cols() != basis_.rows()) {
        throw DimensionError("constraint matrix does not act on the unknowns");
    }
    if (basis_.cols() == 0) return;
    const double scale = constraint.rows() > 0 ? constraint.norm() : 0.0;
    restrict_to(constraint * basis_, scale);
}

// ---------------------------------------------------------------------------
// Gram quotients

GramQuotient null_space_quotient(const Matrix& gram, const Tolerance& tol) {
    if (gram.rows() != gram.cols()) throw DimensionError("Gram matrix must be square");
    require_finite(gram, "null_space_quotient");
    const Index n = gram.rows();
    GramQuotient out;
    if (n == 0) {
        out.classes = Matrix(0, 0);
        out.section = Matrix(0, 0);
        return out;
    }
    const double gnorm = gram.norm();
    if ((gram - gram.adjoint()).norm() > tol.rank_threshold(std::max(gnorm, 1e-300), n, n)) {
        throw NumericError("Gram matrix is not Hermitian");
    }
    const Matrix g = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const auto& lam = es.eigenvalues();
    const double lmax = lam(n - 1);
    if (lmax <= 0.0) {
        out.classes = Matrix(0, n);
        out.section = Matrix(n, 0);
        return out;
    }
    if (lam(0) < -10.0 * tol.rank_threshold(lmax, n, n)) {
        throw NumericError("Gram matrix is not positive semidefinite");
    }
    const double thr = tol.rank_threshold(lmax, n, n);
    Index rank = 0;
    for (Index i = 0; i < n; ++i) {
        if (lam(i) > thr) ++rank;
    }

    // Ordered Gram-Schmidt in the G-metric over the canonical basis.
    std::vector<Vector> picked;
    std::vector<Vector> gpicked;  // G * picked
    for (Index i = 0; i < n && static_cast<Index>(picked.size()) <= rank; ++i) {
        const double gii = std::real(g(i, i));
        if (gii <= thr) continue;
        Vector r = Vector::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < picked.size(); ++k) {
                r -= picked[k] * gpicked[k].dot(r);
            }
        }
        const Vector gr = g * r;
        const double nrm2 = std::real(r.dot(gr));
        if (nrm2 > 1e-8 * gii) {
            const double s = 1.0 / std::sqrt(nrm2);
            picked.push_back(r * s);
            gpicked.push_back(gr * s);
        }
    }
    if (static_cast<Index>(picked.size()) == rank) {
        out.section.resize(n, rank);
        for (Index k = 0; k < rank; ++k) out.section.col(k) = picked[static_cast<std::size_t>(k)];
    } else {
        out.section.resize(n, rank);
        for (Index k = 0; k < rank; ++k) {
            const Index i = n - 1 - k;
            out.section.col(k) = es.eigenvectors().col(i) / std::sqrt(lam(i));
        }
    }
    out.dim = rank;
    out.classes = out.section.adjoint() * g;
    return out;
}

Matrix hermitian_sqrt(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_inv_sqrt(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    const auto& lam = es.eigenvalues();
    if (lam.size() > 0 && lam(0) <= 0.0) throw NumericError("inverse square root of a singular matrix");
    Eigen::VectorXd s = lam.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double unitarity_residual(const Matrix& m) {
    if (m.rows() != m.cols()) return std::max(1.0, (m.adjoint() * m - identity(m.cols())).norm());
    const Matrix i = identity(m.rows());
    return (m.adjoint() * m - i).norm() + (m * m.adjoint() - i).norm();
}

}  // namespace qgw
