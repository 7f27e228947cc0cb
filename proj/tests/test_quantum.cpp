#include <doctest.h>

#include "support.hpp"

using namespace qgw;
using namespace qgw::test;

namespace {

HopfData left_only_coproduct(const HopfData& h) {
    std::vector<Matrix> imgs;
    for (const auto& x : h.algebra.elements()) imgs.push_back(lift(*h.space, x, identity(h.algebra.carrier_dim())));
    return make_hopf_data(h.gns, h.algebra, h.rho, h.sigma, imgs);
}

const Check& must_find(const Report& r, const std::string& axiom) {
    const Check* c = r.find(axiom);
    REQUIRE(c != nullptr);
    return *c;
}

}  // namespace

TEST_SUITE("fixtures") {
    TEST_CASE("groupoid axioms are validated") {
        CHECK_THROWS_AS(FiniteGroupoid({"u"}, {Arrow{"e", 0, 0}}, {}), PreconditionError);
        CHECK_THROWS_AS(FiniteGroupoid({"u"}, {Arrow{"e", 0, 1}}, {{0, 0, 0}}), PreconditionError);
        // Z/2 with a non-identity unit element is not a groupoid.
        CHECK_THROWS_AS(FiniteGroupoid({"u"}, {Arrow{"a", 0, 0}, Arrow{"b", 0, 0}},
                                       {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}),
                        PreconditionError);
        const FiniteGroupoid z3 = cyclic_group(3);
        CHECK(z3.arrow_count() == 3);
        for (Index g = 0; g < 3; ++g) CHECK(z3.compose(g, z3.inverse(g)) == z3.identity_at(0));
        const FiniteGroupoid p3 = pair_groupoid(3);
        CHECK(p3.arrow_count() == 9);
        CHECK(composable_pairs(p3) == 27);
    }

    TEST_CASE("groupoid unitaries") {
        const PmuData z1 = groupoid_pmu(cyclic_group(1));
        CHECK(z1.source->dim() == 1);
        CHECK(std::abs(std::abs(z1.v(0, 0)) - 1.0) <= 1e-12);
        CHECK(z1.v(0, 0).real() > 0.0);

        const PmuData z2 = groupoid_pmu(cyclic_group(2));
        CHECK(z2.source->dim() == 4);
        CHECK(z2.target->dim() == 4);

        const PmuData f4 = groupoid_pmu(pair_groupoid(2));
        CHECK(f4.source->dim() == 8);
        CHECK(f4.target->dim() == 8);
        CHECK(unitarity_residual(f4.v) <= 1e-10);
    }

    TEST_CASE("groupoid algebras") {
        const HopfData h2 = groupoid_hopf(pair_groupoid(2));
        CHECK(h2.algebra.dim() == 4);
        CHECK(commutant(h2.algebra).dim() == 4);
        const HopfData h3 = groupoid_hopf(pair_groupoid(3));
        CHECK(h3.algebra.dim() == 9);
        CHECK(central_projections(h3.algebra).size() == 1);
    }

    TEST_CASE("weighted states") {
        const PmuData p = groupoid_pmu(pair_groupoid(2), std::vector<double>{1.0, 2.0});
        const Report r = check_pmu_vn(p);
        CHECK(r.passed());
        CHECK_THROWS_AS(groupoid_pmu(pair_groupoid(2), std::vector<double>{1.0}), DimensionError);
        CHECK_THROWS_AS(groupoid_pmu(pair_groupoid(2), std::vector<double>{1.0, 0.0}), FaithfulnessError);
    }
}

TEST_SUITE("hopf") {
    TEST_CASE("positive groupoid fixtures") {
        for (const FiniteGroupoid& g : {cyclic_group(2), pair_groupoid(2)}) {
            const HopfData h = groupoid_hopf(g);
            const Report vn = check_hopf_vn(h);
            CHECK(vn.passed());
            CHECK(must_find(vn, "coassociativity").residual <= 1e-8);
            const HopfEquivalence e = hopf_equivalence(h, link(*h.gns));
            CHECK(e.vn.passed());
            CHECK(e.cstar.passed());
            CHECK(e.summary.passed());
        }
    }

    TEST_CASE("derived factorizations on the diagonal fixture") {
        const HopfData h = groupoid_hopf(pair_groupoid(2));
        const HopfTransport t = transport_hopf(h, link(*h.gns));
        const DerivedPair d = derived_factorizations(*t.cstar.alpha, *t.cstar.beta, *t.cstar.space);
        CHECK(d.alpha_alpha->dim() == t.cstar.space->dim());
        CHECK(d.beta_beta->dim() == t.cstar.space->dim());
        const auto dom = d.alpha_alpha->rho().domain.elements();
        for (std::size_t i = 0; i < dom.size(); ++i) {
            const Matrix expect = lift(*t.cstar.space, identity(4), t.cstar.alpha->rho().apply(dom[i]));
            CHECK((d.alpha_alpha->rho().images[i] - expect).norm() <= 1e-8);
        }
    }

    TEST_CASE("left-only coproduct over the scalar base is coassociative") {
        const HopfData h = left_only_coproduct(groupoid_hopf(cyclic_group(2)));
        const HopfEquivalence e = hopf_equivalence(h, link(*h.gns));
        CHECK(e.vn.passed());
        CHECK(e.cstar.passed());
    }

    TEST_CASE("left-only coproduct is not defined over a nontrivial base") {
        CHECK_THROWS_AS(left_only_coproduct(groupoid_hopf(pair_groupoid(2))), NotWellDefinedError);
    }

    TEST_CASE("perturbed coproducts fail on both sides") {
        const HopfData h = groupoid_hopf(pair_groupoid(2));
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const HopfData bad = perturbed_coproduct(h, 1e-3, seed);
            const HopfEquivalence e = hopf_equivalence(bad, link(*bad.gns));
            CHECK_FALSE(e.vn.passed());
            CHECK_FALSE(e.cstar.passed());
            CHECK(e.summary.passed());
            CHECK(must_find(e.vn, "leg-left").residual >= 1e-4);
        }
    }
}

TEST_SUITE("pmu") {
    TEST_CASE("positive groupoid unitaries") {
        for (const FiniteGroupoid& g : {cyclic_group(2), pair_groupoid(2)}) {
            const PmuData p = groupoid_pmu(g);
            const PmuEquivalence e = pmu_equivalence(p, link(*p.gns));
            CHECK(e.vn.passed());
            CHECK(e.cstar.passed());
            CHECK(must_find(e.vn, "pentagon").residual <= 1e-7);
            CHECK(must_find(e.cstar, "pentagon").residual <= 1e-7);
            CHECK(e.summary.passed());
        }
    }

    TEST_CASE("the flip is not pseudo-multiplicative") {
        const PmuData p = swapped(groupoid_pmu(cyclic_group(2)));
        const PmuEquivalence e = pmu_equivalence(p, link(*p.gns));
        for (const char* key : {"intertwine-rho", "intertwine-sigma", "intertwine-sigma-to-sigma-hat", "intertwine-sigma-hat"}) {
            CHECK(must_find(e.vn, key).passed());
            CHECK(must_find(e.cstar, key).passed());
        }
        CHECK_FALSE(must_find(e.vn, "pentagon").passed());
        CHECK_FALSE(must_find(e.cstar, "pentagon").passed());
        CHECK(e.summary.passed());
        CHECK_THROWS_AS(swapped(groupoid_pmu(pair_groupoid(2))), PreconditionError);
    }

    TEST_CASE("phase perturbation is detected") {
        const PmuData p = phase_perturbed(groupoid_pmu(pair_groupoid(2)), 1, 1e-3);
        const PmuEquivalence e = pmu_equivalence(p, random_linked_base(*p.gns, 4));
        CHECK_FALSE(e.vn.passed());
        CHECK_FALSE(e.cstar.passed());
        CHECK(must_find(e.vn, "pentagon").residual >= 1e-4);
        CHECK(must_find(e.cstar, "pentagon").residual >= 1e-4);
        CHECK(e.summary.passed());
    }

    TEST_CASE("non-unitary candidates fail the unitarity axiom") {
        const PmuData p = groupoid_pmu(cyclic_group(2));
        const PmuData q = make_pmu_data(p.gns, p.rho, p.sigma, p.sigma_hat, 2.0 * p.v);
        CHECK_FALSE(must_find(check_pmu_vn(q), "unitarity").passed());
        CHECK_THROWS_AS(make_pmu_data(p.gns, p.rho, p.sigma, p.sigma_hat, Matrix::Identity(3, 3)), DimensionError);
    }
}

TEST_SUITE("json") {
    TEST_CASE("matrices round-trip bit-exactly") {
        Matrix m(2, 3);
        m << Complex(0.1, -1.0 / 3.0), 1e-300, Complex(0, 6.02214076e23), -0.0, Complex(1.0 / 7.0, 2.0 / 9.0), 3.0;
        const io::Json j = io::to_json(m);
        const Matrix back = io::matrix_from_json(io::Json::parse(j.dump()), "/m");
        for (Index i = 0; i < m.rows(); ++i)
            for (Index k = 0; k < m.cols(); ++k) {
                CHECK(back(i, k).real() == m(i, k).real());
                CHECK(back(i, k).imag() == m(i, k).imag());
            }
        CHECK(j["data"][1] == io::Json::array({1e-300, 0.0}));
    }

    TEST_CASE("malformed input names its location") {
        const io::Json bad = io::Json::parse(R"({"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0]]})");
        CHECK_THROWS_WITH_AS(io::matrix_from_json(bad, "/V"), doctest::Contains("/V/data"), InputError);
        const io::Json bad2 = io::Json::parse(R"({"rows": 1, "cols": 1, "data": [["x", 0]]})");
        CHECK_THROWS_WITH_AS(io::matrix_from_json(bad2, "/V"), doctest::Contains("/V/data/0"), InputError);
        CHECK_THROWS_AS(io::groupoid_from_json(io::Json::parse(R"({"units": ["u"]})"), "/groupoid"), InputError);
    }

    TEST_CASE("groupoids round-trip") {
        const FiniteGroupoid g = pair_groupoid(3);
        const io::Json j = io::to_json(g);
        CHECK(io::to_json(io::groupoid_from_json(j, "/g")).dump() == j.dump());
    }

    TEST_CASE("bundles round-trip") {
        const PmuData p = groupoid_pmu(pair_groupoid(2), std::vector<double>{1.0, 2.0});
        const io::Json jp = io::to_json(p);
        const PmuData p2 = io::pmu_from_json(io::Json::parse(jp.dump()));
        CHECK((p2.v - p.v).norm() <= 1e-12);
        CHECK(check_pmu_vn(p2).passed());

        const HopfData h = groupoid_hopf(cyclic_group(3));
        const io::Json jh = io::to_json(h);
        const HopfData h2 = io::hopf_from_json(io::Json::parse(jh.dump()));
        CHECK(check_hopf_vn(h2).passed());

        io::Json tampered = jp;
        tampered["coordinate_maps"]["source"]["data"][0][0] = 0.5;
        CHECK_THROWS_AS(io::pmu_from_json(tampered), InputError);
    }

    TEST_CASE("linear extensions") {
        const StarAlgebra d2 = diagonal_algebra(2);
        const AlgebraMap f = io::linear_extension(d2, {unit(2, 0, 0), identity(2)}, {unit(2, 1, 1), identity(2)}, Side::Plain);
        CHECK((f.apply(unit(2, 1, 1)) - unit(2, 0, 0)).norm() <= 1e-10);
        CHECK_THROWS_AS(io::linear_extension(d2, {identity(2)}, {identity(2)}, Side::Plain), PreconditionError);
        CHECK_THROWS_AS(io::linear_extension(d2, {unit(2, 0, 0), unit(2, 1, 1), identity(2)},
                                             {unit(2, 0, 0), unit(2, 1, 1), 2.0 * identity(2)}, Side::Plain),
                        PreconditionError);
    }

    TEST_CASE("reports round-trip") {
        Report r;
        r.command = "pmu-check";
        r.tolerance = 1e-9;
        r.add("unitarity", "V^* V = 1", 1.25e-16, 2e-8);
        r.skip("pentagon", "five-vertex diagram", 1e-7);
        r.value("dim", 8.0);
        const io::Json j = io::to_json(r);
        CHECK(j["checks"][1]["residual"].is_null());
        const Report back = io::report_from_json(io::Json::parse(j.dump()));
        CHECK(io::to_json(back).dump() == j.dump());
        CHECK(back.verdict() == Verdict::Fail);
    }

    TEST_CASE("generation is deterministic") {
        const auto once = [] {
            const GnsTriple g = gns(random_faithful_state({2, 1}, 17));
            const LinkedBase lb = random_linked_base(g, 5);
            return io::to_json(lb).dump() + io::to_json(groupoid_pmu(pair_groupoid(2))).dump();
        };
        CHECK(once() == once());
    }
}
