#pragma once
//
// Dense complex linear algebra used throughout qgw: operator subspaces with
// Hilbert-Schmidt orthonormal frames, tolerant rank decisions, null spaces of
// linear constraint families and Gram-matrix quotients.
//
// Operators are vectorized column-major (Eigen's native order), so
// vec(A X B) = (B^T kron A) vec(X).
//

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qgw/errors.hpp"

namespace qgw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative tolerance used for every rank and residual decision.
struct Tolerance {
    double epsilon = 1e-9;

    Tolerance() = default;
    explicit Tolerance(double eps);

    /// Threshold for a singular value, given the largest one and the shape.
    double rank_threshold(double sigma_max, Index rows, Index cols) const;
    /// Bound used when certifying computed identities (10 eps).
    double certify() const { return 10.0 * epsilon; }
};

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(Index n);

/// trace(a^* b)
Complex hs_inner(const Matrix& a, const Matrix& b);

/// Throws NumericError if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

/// Number of singular values of `m` above the tolerant threshold.
Index tolerant_rank(const Matrix& m, const Tolerance& tol);

/// A finite-dimensional subspace of L(C^cols, C^rows), stored through an
/// orthonormal frame of vectorized operators.
class OperatorSubspace {
public:
    OperatorSubspace() = default;
    OperatorSubspace(Index rows, Index cols);
    /// `frame` must have orthonormal columns of length rows*cols.
    OperatorSubspace(Index rows, Index cols, Matrix frame);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index dim() const { return frame_.cols(); }
    const Matrix& frame() const { return frame_; }

    Matrix basis(Index i) const;
    std::vector<Matrix> basis() const;

    /// Hilbert-Schmidt coordinates of the orthogonal projection of x.
    Vector coordinates(const Matrix& x) const;
    Matrix element(const Vector& coords) const;
    Matrix project(const Matrix& x) const;
    /// ||x - P x||_HS
    double residual(const Matrix& x) const;

    void require_shape(const Matrix& x, const char* what) const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    Matrix frame_;
};

OperatorSubspace span(const std::vector<Matrix>& mats, Index rows, Index cols,
                      const Tolerance& tol = {});
/// Shape taken from the first matrix; mats must be nonempty.
OperatorSubspace span(const std::vector<Matrix>& mats, const Tolerance& tol = {});

/// max over both frames of the projection residual onto the other subspace;
/// 0 for equal subspaces. Dimension mismatch yields at least 1.
double subspace_distance(const OperatorSubspace& a, const OperatorSubspace& b);
bool subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b,
                    const Tolerance& tol = {});
/// max residual of a's frame projected onto b (a subset of b iff ~0).
double inclusion_residual(const OperatorSubspace& a, const OperatorSubspace& b);

/// Orthonormal basis (columns) of {x : m x = 0}.
Matrix null_space(const Matrix& m, const Tolerance& tol = {});

/// Orthonormal basis (columns) of the range of m.
Matrix range_basis(const Matrix& m, const Tolerance& tol = {});

/// Incrementally intersects null spaces of linear constraint families on
/// C^n. Each family is given as a map sending a candidate vector to its
/// residual vector; the candidate space shrinks after every family.
class ConstraintSolver {
public:
    explicit ConstraintSolver(Index unknowns, Tolerance tol = {});
    /// Starts from the span of the columns of `initial` instead of everything.
    ConstraintSolver(const Matrix& initial, Tolerance tol);

    using Family = std::function<Vector(const Vector&)>;
    /// `scale` is a norm bound of the constraint map; it keeps the rank
    /// threshold meaningful when the family is (almost) satisfied already.
    void add(const Family& family, double scale);
    /// Adds constraints given as an explicit matrix acting on the unknowns.
    void add_matrix(const Matrix& constraint);

    /// Orthonormal basis of the remaining solution space (columns).
    const Matrix& solutions() const { return basis_; }
    Index dim() const { return basis_.cols(); }

private:
    void restrict_to(const Matrix& images, double scale);

    Tolerance tol_;
    Matrix basis_;
};

/// Realization of the quotient of C^n by the null space of a positive
/// semidefinite Gram matrix G. `classes` (dim x n) maps a vector to its class
/// with classes^* classes = G; `section` (n x dim) is a right inverse with
/// section^* G section = I. co_isometry() = section^*.
struct GramQuotient {
    Matrix classes;
    Matrix section;
    Index dim = 0;

    Matrix co_isometry() const { return section.adjoint(); }
};

/// Factors out the null space of `gram`. The quotient basis is obtained by
/// ordered Gram-Schmidt over the canonical basis when that is stable, so
/// classes of orthogonal canonical vectors stay aligned with coordinates.
GramQuotient null_space_quotient(const Matrix& gram, const Tolerance& tol = {});

/// Hermitian square root and inverse square root of a positive definite
/// matrix.
Matrix hermitian_sqrt(const Matrix& h);
Matrix hermitian_inv_sqrt(const Matrix& h);

/// ||m^* m - 1|| + ||m m^* - 1|| (Frobenius).
double unitarity_residual(const Matrix& m);

}  // namespace qgw
