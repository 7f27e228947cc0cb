#pragma once
//
// Shared fixtures and brute-force oracles for the test binaries. Oracles use
// Hermitian eigen-solvers on Gram matrices rather than the library's SVD path.
//

#include <random>

#include "qgw/fixtures.hpp"
#include "qgw/json_io.hpp"

namespace qgw::test {

inline Matrix unit(Index n, Index i, Index j) {
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

inline Matrix diag(std::initializer_list<Complex> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v.asDiagonal();
}

/// Rank from the eigenvalues of m^* m, relative to the largest.
inline Index oracle_rank(const Matrix& m, double rel = 1e-10) {
    if (m.size() == 0) return 0;
    const Matrix g = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const double top = es.eigenvalues().maxCoeff();
    if (top <= 0.0) return 0;
    Index r = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > rel * top) ++r;
    return r;
}

/// dim {T : T b = b T for every b} from the stacked Kronecker system.
inline Index oracle_commutant_dim(const std::vector<Matrix>& ops, Index n) {
    Matrix k(static_cast<Index>(ops.size()) * n * n, n * n);
    for (std::size_t i = 0; i < ops.size(); ++i)
        k.middleRows(static_cast<Index>(i) * n * n, n * n) =
            kron(ops[i].transpose(), identity(n)) - kron(identity(n), ops[i]);
    return n * n - oracle_rank(k);
}

/// The standard form of M_2 on HS(M_2) = C^4 (column-major vec): B = left
/// multiplications, B^dag = right multiplications, zeta = vec(1)/sqrt 2.
inline CStarBase standard_m2_base() {
    std::vector<Matrix> left, right;
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
            left.push_back(kron(identity(2), unit(2, i, j)));
            right.push_back(kron(unit(2, i, j).transpose(), identity(2)));
        }
    CStarBase b;
    b.frak_h_dim = 4;
    b.b = algebra_closure(left, 4, true);
    b.b_dag = algebra_closure(right, 4, true);
    b.zeta = vec(identity(2)) / std::sqrt(2.0);
    return b;
}

inline AlgebraMap identity_rep(const StarAlgebra& a, Side side = Side::Plain) {
    return AlgebraMap{a, a.elements(), side};
}

/// State on N with the given density on its carrier.
inline State make_state(const StarAlgebra& n, const Matrix& density) { return State{n, density}; }

inline std::shared_ptr<const GnsTriple> gns_ptr(const State& mu) { return std::make_shared<const GnsTriple>(gns(mu)); }

/// N = C with a representation on C^h of either side.
struct ScalarBase {
    std::shared_ptr<const GnsTriple> g;
    AlgebraMap on(Index h, Side side) const {
        return AlgebraMap{g->algebra(), {identity(h) * (g->algebra().element(0)(0, 0))}, side};
    }
};

inline ScalarBase scalar_base() {
    const StarAlgebra c = algebra_closure({identity(1)}, 1, true);
    return ScalarBase{gns_ptr(make_state(c, identity(1)))};
}

/// F2: N = C^2 with mu = (1/2, 1/2), H = K = H_mu with the GNS actions.
inline std::shared_ptr<const GnsTriple> f2_gns() {
    const StarAlgebra d2 = diagonal_algebra(2);
    return gns_ptr(make_state(d2, identity(2) / 2.0));
}

/// Spaces of a linked pair over a GNS triple with the left leg on N^op.
struct LinkedPair {
    LinkedBase lb;
    RelativeTensorSpace state_side;
    RelativeTensorSpace cstar_side;
};

inline LinkedPair linked_pair(std::shared_ptr<const GnsTriple> g, const AlgebraMap& left, const AlgebraMap& right,
                              const LinkedBase& lb) {
    auto alpha = std::make_shared<const CStarFactorization>(
        factorization_from_representation(lb.base, transport_representation(lb, left)));
    auto beta = std::make_shared<const CStarFactorization>(
        factorization_from_representation(lb.base.opposite(), transport_representation(lb, right)));
    return LinkedPair{lb, rtp_state(g, left, right), rtp_cstar(alpha, beta)};
}

inline Index composable_pairs(const FiniteGroupoid& g) {
    Index n = 0;
    for (Index a = 0; a < g.arrow_count(); ++a)
        for (Index b = 0; b < g.arrow_count(); ++b)
            if (g.composable(a, b)) ++n;
    return n;
}

}  // namespace qgw::test
