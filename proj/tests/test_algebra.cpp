#include <doctest.h>

#include "support.hpp"

using namespace qgw;
using namespace qgw::test;

namespace {

Matrix random_matrix(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
}

double frame_gram_defect(const OperatorSubspace& s) {
    return (s.frame().adjoint() * s.frame() - identity(s.dim())).norm();
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("span of collinear, canonical and empty families") {
        CHECK(span({identity(2), 2.0 * identity(2)}).dim() == 1);
        CHECK(span({unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1)}).dim() == 4);
        const OperatorSubspace empty = span({}, 2, 2);
        CHECK(empty.dim() == 0);
        CHECK(empty.rows() == 2);
    }

    TEST_CASE("span rejects mixed shapes") {
        CHECK_THROWS_AS(span({identity(2), identity(3)}), DimensionError);
    }

    TEST_CASE("span dimension is the rank of the stacked vectorizations") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            std::vector<Matrix> mats;
            for (int k = 0; k < 3; ++k) mats.push_back(random_matrix(3, seed * 10 + static_cast<std::uint64_t>(k)));
            mats.push_back(mats[0] + Complex(0, 2) * mats[2]);
            Matrix stacked(9, 4);
            for (Index k = 0; k < 4; ++k) stacked.col(k) = vec(mats[static_cast<std::size_t>(k)]);
            const OperatorSubspace s = span(mats);
            CHECK(s.dim() == oracle_rank(stacked));
            CHECK(frame_gram_defect(s) <= 1e-8);
            CHECK(subspace_equal(span(s.basis()), s));
        }
    }

    TEST_CASE("subspace equality examples") {
        CHECK(subspace_equal(span({identity(2)}), span({3.0 * identity(2)})));
        CHECK_FALSE(subspace_equal(span({identity(2)}), span({unit(2, 0, 0)})));
        CHECK(subspace_equal(span({unit(2, 0, 0), unit(2, 1, 1)}), span({identity(2), diag({1.0, -1.0})})));
        CHECK_THROWS_AS(subspace_distance(span({identity(2)}), span({identity(3)})), DimensionError);
    }

    TEST_CASE("null space quotient") {
        const GramQuotient q4 = null_space_quotient(identity(4));
        CHECK(q4.dim == 4);
        CHECK(unitarity_residual(q4.co_isometry()) <= 1e-10);

        const Matrix g2 = diag({1.0, 1.0, 0.0, 0.0});
        const GramQuotient q2 = null_space_quotient(g2);
        CHECK(q2.dim == 2);
        const Matrix q = q2.co_isometry();
        CHECK((q * g2 * q.adjoint() - identity(2)).norm() <= 1e-8);

        Matrix bad = identity(2);
        bad(0, 0) = -1.0;
        CHECK_THROWS_AS(null_space_quotient(bad), NumericError);
        Matrix skew = identity(2);
        skew(0, 1) = 1.0;
        CHECK_THROWS_AS(null_space_quotient(skew), NumericError);
    }

    TEST_CASE("null space quotient of random positive semidefinite Gram matrices") {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const Index n = 6;
            const Index r = static_cast<Index>(seed % 5) + 1;
            const Matrix f = random_matrix(n, seed).leftCols(r);
            const Matrix g = f * f.adjoint();
            const GramQuotient qq = null_space_quotient(g);
            const Matrix q = qq.co_isometry();
            CHECK(qq.dim == oracle_rank(f));
            CHECK((q * g * q.adjoint() - identity(qq.dim)).norm() <= 1e-8 * g.norm());
            CHECK((qq.classes.adjoint() * qq.classes - g).norm() <= 1e-8 * g.norm());
            CHECK(qq.dim + (n - oracle_rank(g)) == n);
        }
    }

    TEST_CASE("non-finite matrices and tolerances are rejected") {
        Matrix m = identity(2);
        m(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
        CHECK_THROWS_AS(require_finite(m, "m"), NumericError);
        CHECK_THROWS_AS(Tolerance(0.0), NumericError);
        CHECK_THROWS_AS(Tolerance(-1.0), NumericError);
    }

    TEST_CASE("vectorization is column-major") {
        const Matrix a = random_matrix(3, 11);
        const Matrix x = random_matrix(3, 12);
        const Matrix b = random_matrix(3, 13);
        CHECK((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm() <= 1e-10 * (a * x * b).norm());
        CHECK((unvec(vec(x), 3, 3) - x).norm() == 0.0);
    }
}

TEST_SUITE("staralg") {
    TEST_CASE("closure examples") {
        CHECK(algebra_closure({unit(2, 0, 1)}, 2, true).dim() == 4);
        CHECK(algebra_closure({identity(2)}, 2, false).dim() == 1);
        const StarAlgebra d = algebra_closure({diag({1.0, 2.0})}, 2, false);
        CHECK(d.dim() == 2);
        CHECK(subspace_equal(d.space(), diagonal_algebra(2).space()));
    }

    TEST_CASE("commutant examples") {
        const StarAlgebra m2 = algebra_closure({unit(2, 0, 1)}, 2, true);
        CHECK(commutant(m2).dim() == 1);
        CHECK(commutant(algebra_closure({identity(3)}, 3, true)).dim() == 9);
        const StarAlgebra d2 = diagonal_algebra(2);
        CHECK(subspace_equal(commutant(d2).space(), d2.space()));
    }

    TEST_CASE("commutant dimension matches the Kronecker oracle and double commutant") {
        const std::vector<std::vector<Index>> specs{{1}, {2}, {2, 1}, {1, 1, 1}, {3, 1}, {2, 2}};
        std::uint64_t seed = 3;
        for (const auto& spec : specs) {
            const StarAlgebra a0 = block_algebra(spec);
            const Index n = a0.carrier_dim();
            const Matrix u = random_unitary(n, seed++);
            std::vector<Matrix> gens;
            for (const auto& b : a0.elements()) gens.push_back(u * b * u.adjoint());
            const StarAlgebra a = algebra_closure(gens, n, true);
            const StarAlgebra c = commutant(a);
            CHECK(c.dim() == oracle_commutant_dim(gens, n));
            CHECK(c.dim() == static_cast<Index>(spec.size()));
            CHECK(certify(c).worst() <= 1e-8);
            CHECK(subspace_equal(commutant(c).space(), a.space(), Tolerance(1e-8)));
        }
    }

    TEST_CASE("central projections") {
        const auto p1 = central_projections(algebra_closure({unit(2, 0, 1)}, 2, true));
        REQUIRE(p1.size() == 1);
        CHECK((p1[0] - identity(2)).norm() <= 1e-8);

        const auto p2 = central_projections(diagonal_algebra(2));
        REQUIRE(p2.size() == 2);
        CHECK((p2[0] - unit(2, 0, 0)).norm() <= 1e-8);
        CHECK((p2[1] - unit(2, 1, 1)).norm() <= 1e-8);

        const auto p3 = central_projections(block_algebra({2, 1}));
        REQUIRE(p3.size() == 2);
        CHECK(oracle_rank(p3[0]) == 2);
        CHECK(oracle_rank(p3[1]) == 1);
        Matrix sum = Matrix::Zero(3, 3);
        for (std::size_t i = 0; i < p3.size(); ++i) {
            sum += p3[i];
            for (std::size_t j = 0; j < p3.size(); ++j)
                CHECK((p3[i] * p3[j] - (i == j ? p3[i] : Matrix::Zero(3, 3))).norm() <= 1e-8);
        }
        CHECK((sum - identity(3)).norm() <= 1e-8);
    }

    TEST_CASE("homomorphism extension detects inconsistent assignments") {
        const StarAlgebra d2 = diagonal_algebra(2);
        const AlgebraMap flip =
            extend_homomorphism(d2, {unit(2, 0, 0), unit(2, 1, 1)}, {unit(2, 1, 1), unit(2, 0, 0)}, Side::Plain);
        CHECK(certify(flip).worst(true, true) <= 1e-8);
        CHECK((flip.apply(diag({1.0, 2.0})) - diag({2.0, 1.0})).norm() <= 1e-8);
    }
}

TEST_SUITE("gns") {
    TEST_CASE("trace state on M2") {
        const StarAlgebra m2 = algebra_closure({unit(2, 0, 1)}, 2, true);
        const GnsTriple g = gns(make_state(m2, identity(2) / 2.0));
        CHECK(g.dim() == 4);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Matrix a = random_matrix(2, seed);
            const Vector lhs = g.modular_conjugation.apply(g.vector_of(a));
            CHECK((lhs - g.vector_of(a.adjoint())).norm() <= 1e-8 * a.norm());
            CHECK(std::abs(g.zeta.dot(g.pi.apply(a) * g.zeta) - g.state.value(a)) <= 1e-8 * a.norm());
        }
        const GnsCertificate c = certify(g);
        CHECK(c.conjugation_square <= 1e-8);
        CHECK(c.antiunitarity <= 1e-8);
        CHECK(c.commutation <= 1e-8);
        CHECK(c.cyclic);
        CHECK(c.cocyclic);
    }

    TEST_CASE("uniform state on the diagonal algebra") {
        const GnsTriple g = *f2_gns();
        CHECK(g.dim() == 2);
        CHECK(std::abs(std::abs(g.zeta(0)) - 1.0 / std::sqrt(2.0)) <= 1e-10);
        CHECK(std::abs(std::abs(g.zeta(1)) - 1.0 / std::sqrt(2.0)) <= 1e-10);
        for (const auto& x : g.pi.images) CHECK((x - Matrix(x.diagonal().asDiagonal())).norm() <= 1e-10);
    }

    TEST_CASE("vector state on M2 is not faithful") {
        const StarAlgebra m2 = algebra_closure({unit(2, 0, 1)}, 2, true);
        CHECK_THROWS_AS(gns(make_state(m2, unit(2, 0, 0))), FaithfulnessError);
    }

    TEST_CASE("random faithful states satisfy the GNS invariants") {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const State mu = random_faithful_state({2, 1}, seed);
            const StateCertificate sc = certify(mu);
            CHECK(sc.faithful);
            CHECK(sc.normalization <= 1e-10);
            const GnsTriple g = gns(mu);
            CHECK(g.dim() == 5);
            const GnsCertificate c = certify(g);
            CHECK(c.state_reproduction <= 1e-8);
            CHECK(c.homomorphism <= 1e-8);
            CHECK(c.opposite_homomorphism <= 1e-8);
            CHECK(c.conjugation_square <= 1e-8);
            CHECK(c.cyclic);
            CHECK(c.cocyclic);
        }
    }

    TEST_CASE("bases from states") {
        const StarAlgebra m2 = algebra_closure({unit(2, 0, 1)}, 2, true);
        const CStarBase b = cbase_from_state(make_state(m2, identity(2) / 2.0));
        CHECK(b.frak_h_dim == 4);
        CHECK(b.b.dim() == 4);
        CHECK(b.b_dag.dim() == 4);

        const ScalarBase c = scalar_base();
        const CStarBase bc = cbase_from_state(*c.g);
        CHECK(bc.frak_h_dim == 1);
        CHECK(bc.b.dim() == 1);

        const CStarBase bd = cbase_from_state(make_state(diagonal_algebra(2), diag({1.0 / 3.0, 2.0 / 3.0})));
        CHECK(subspace_equal(bd.b.space(), bd.b_dag.space()));
        CHECK(subspace_equal(bd.b.space(), diagonal_algebra(2).space()));
    }
}

TEST_SUITE("cbase") {
    TEST_CASE("bicyclic vectors") {
        const CStarBase m2 = standard_m2_base();
        CHECK(is_cyclic(m2.b.elements(), *m2.zeta));
        CHECK(is_cyclic(m2.b_dag.elements(), *m2.zeta));
        CHECK(find_bicyclic(m2).has_value());

        CStarBase scalars;
        scalars.frak_h_dim = 2;
        scalars.b = algebra_closure({identity(2)}, 2, true);
        scalars.b_dag = scalars.b;
        CHECK_FALSE(find_bicyclic(scalars).has_value());

        CStarBase d2{2, diagonal_algebra(2), diagonal_algebra(2), std::nullopt};
        const Vector z = Vector::Ones(2) / std::sqrt(2.0);
        CHECK(is_cyclic(d2.b.elements(), z));
        CHECK(find_bicyclic(d2).has_value());
    }

    TEST_CASE("standard bases are mutual commutants") {
        CHECK(check_standard_commutant(standard_m2_base()).standard);
        const StarAlgebra m2 = algebra_closure({unit(2, 0, 1)}, 2, true);
        CHECK(check_standard_commutant(cbase_from_state(make_state(m2, identity(2) / 2.0))).standard);

        std::vector<Matrix> d;
        d.push_back(diag({1.0, 1.0, 0.0}));
        d.push_back(diag({0.0, 0.0, 1.0}));
        const StarAlgebra dm = algebra_closure(d, 3, true);
        CHECK_THROWS_AS(check_standard_commutant(CStarBase{3, dm, dm, std::nullopt}), PreconditionError);
    }

    TEST_CASE("base equivalence") {
        const State mu0 = random_faithful_state({2}, 9);
        const GnsTriple g0 = gns(mu0);
        const CStarBase b0 = cbase_from_state(g0);
        const BaseEquivalence e0 = base_equivalence(b0);
        CHECK(e0.holds(Tolerance{}));
        CHECK((e0.u - identity(4)).norm() <= 1e-8);

        const CStarBase m2 = standard_m2_base();
        const BaseEquivalence e = base_equivalence(m2);
        CHECK(e.holds(Tolerance{}));
        for (const auto& b : m2.b.elements())
            CHECK(std::abs(e.gns->state.value(b) - (b.trace() / 4.0)) <= 1e-8);

        CStarBase phased = m2;
        const Complex ph = std::polar(1.0, 0.7);
        phased.zeta = ph * *m2.zeta;
        const BaseEquivalence ep = base_equivalence(phased);
        CHECK(ep.holds(Tolerance{}));
        CHECK((ep.u - e.u * std::conj(ph)).norm() <= 1e-8);
        for (const auto& b : m2.b.elements())
            CHECK((ep.u * b * ep.u.adjoint() - e.u * b * e.u.adjoint()).norm() <= 1e-8);
    }

    TEST_CASE("recovering a base through its equivalence unitary") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const CStarBase b = random_standard_base({2, 1}, seed);
            const BaseEquivalence e = base_equivalence(b);
            const CStarBase back = cbase_from_state(*e.gns);
            std::vector<Matrix> bb, bd;
            for (const auto& x : back.b.elements()) bb.push_back(e.u.adjoint() * x * e.u);
            for (const auto& x : back.b_dag.elements()) bd.push_back(e.u.adjoint() * x * e.u);
            CHECK(subspace_equal(span(bb), b.b.space()));
            CHECK(subspace_equal(span(bd), b.b_dag.space()));
        }
    }

    TEST_CASE("modular conjugation of bases") {
        const CStarBase m2 = standard_m2_base();
        const BaseConjugation c = modular_conjugation_of_base(m2);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Matrix x = random_matrix(2, seed);
            CHECK((c.j.apply(vec(x)) - vec(x.adjoint())).norm() <= 1e-8 * x.norm());
        }
        CHECK(c.onto_dag <= 1e-8);

        CStarBase d2{2, diagonal_algebra(2), diagonal_algebra(2), Vector(Vector::Ones(2) / std::sqrt(2.0))};
        const BaseConjugation cd = modular_conjugation_of_base(d2);
        CHECK((cd.j.m - identity(2)).norm() <= 1e-8);

        const CStarBase nt = cbase_from_state(make_state(diagonal_algebra(2), diag({1.0 / 3.0, 2.0 / 3.0})));
        const BaseConjugation cn = modular_conjugation_of_base(nt);
        CHECK(cn.into_dag <= 1e-8);
        CHECK(cn.onto_dag <= 1e-8);
        CHECK(cn.square <= 1e-8);
    }

    TEST_CASE("random standard bases") {
        CHECK(random_standard_base({1}, 1).frak_h_dim == 1);
        CHECK(random_standard_base({2}, 1).frak_h_dim == 4);
        CHECK(random_standard_base({2, 1}, 1).frak_h_dim == 5);
    }
}
