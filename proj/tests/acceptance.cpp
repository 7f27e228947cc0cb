// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace qgw;
using namespace qgw::test;

namespace {

constexpr double kSubspaceTol = 1e-8;
constexpr double kPhiTol = 1e-8;
constexpr double kPentagonPass = 1e-7;
constexpr double kPentagonFail = 1e-4;
constexpr double kPerturbation = 1e-3;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Criterion = std::function<Outcome()>;

std::string sci(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << x;
    return s.str();
}

const std::vector<std::vector<Index>> kSpecs{{1}, {2}, {3}, {1, 1}, {2, 1}, {3, 1}, {2, 2}, {1, 1, 1}, {2, 1, 1}, {3, 2, 1}};

StarAlgebra random_algebra(const std::vector<Index>& blocks, Index mult, std::uint64_t seed) {
    const StarAlgebra a0 = block_algebra(blocks);
    const Index n = a0.carrier_dim() * mult;
    const Matrix u = random_unitary(n, seed);
    std::vector<Matrix> gens;
    for (const auto& b : a0.elements()) gens.push_back(u * kron(b, identity(mult)) * u.adjoint());
    return algebra_closure(gens, n, true);
}

FactorizationPtr fact(const CStarBase& base, const AlgebraMap& rho) {
    return std::make_shared<const CStarFactorization>(factorization_from_representation(base, rho));
}

AlgebraMap conjugated(const AlgebraMap& f, const Matrix& w) {
    AlgebraMap g = f;
    for (auto& x : g.images) x = w * x * w.adjoint();
    return g;
}

/// rho(d) = u (1_m (x) d) u^* on C^m (x) H_base.
AlgebraMap amplified(const StarAlgebra& b, Index m, const Matrix& u) {
    std::vector<Matrix> imgs;
    for (const auto& d : b.elements()) imgs.push_back(u * kron(identity(m), d) * u.adjoint());
    return AlgebraMap{b, imgs, Side::Plain};
}

const Check* pentagon(const Report& r) { return r.find("pentagon"); }

Outcome commutant_duality() {
    Outcome o;
    double worst = 0.0;
    int count = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto& spec = kSpecs[static_cast<std::size_t>(seed - 1) % kSpecs.size()];
        const Index mult = seed % 3 == 0 ? 2 : 1;
        const StarAlgebra a = random_algebra(spec, mult, 1000 + seed);
        const StarAlgebra cc = commutant(commutant(a));
        const double d = subspace_distance(cc.space(), a.space());
        worst = std::max(worst, d);
        o.pass = o.pass && d <= kSubspaceTol;
        ++count;
    }
    o.detail = std::to_string(count) + " algebras, worst distance " + sci(worst);
    return o;
}

Outcome standard_commutants() {
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto& spec = kSpecs[static_cast<std::size_t>(seed + 2) % kSpecs.size()];
        const CommutantCheck c = check_standard_commutant(random_standard_base(spec, 2000 + seed));
        worst = std::max({worst, c.b_commutant, c.dag_commutant});
    }
    o.pass = worst <= kSubspaceTol;
    o.detail = "20 bases, worst residual " + sci(worst);
    return o;
}

Outcome factorization_round_trip() {
    Outcome o;
    double worst = 0.0;
    bool dims = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto& spec = kSpecs[static_cast<std::size_t>(seed) % 6];
        const CStarBase base = random_standard_base(spec, 3000 + seed);
        const Index m = 1 + static_cast<Index>(seed % 2);
        const AlgebraMap rho = amplified(base.b_dag, m, random_unitary(m * base.frak_h_dim, 3100 + seed));
        const CStarFactorization f = factorization_from_representation(base, rho);
        const CStarFactorization back = factorization_from_representation(base, f.rho());
        dims = dims && f.dim() == f.h_dim() && back.dim() == f.dim();
        worst = std::max({worst, subspace_distance(back.alpha(), f.alpha()), representation_distance(f.rho(), rho)});
    }
    o.pass = dims && worst <= kSubspaceTol;
    o.detail = std::string("20 factorizations, dim alpha = dim H ") + (dims ? "always" : "NOT always") +
               ", worst distance " + sci(worst);
    return o;
}

Outcome compatibility() {
    struct Case {
        FactorizationPtr a, b;
    };
    std::vector<Case> suite;
    const ScalarBase c = scalar_base();
    const CStarBase sb = cbase_from_state(*c.g);
    suite.push_back({fact(sb, AlgebraMap{sb.b_dag, {identity(3) * sb.b_dag.element(0)(0, 0)}, Side::Plain}),
                     fact(sb.opposite(), AlgebraMap{sb.b, {identity(3) * sb.b.element(0)(0, 0)}, Side::Plain})});
    for (const auto& legs : {groupoid_legs(pair_groupoid(2)), groupoid_legs(pair_groupoid(2), std::vector<double>{1.0, 3.0})}) {
        const LinkedBase lb = random_linked_base(*legs.gns, 11);
        const auto a = fact(lb.base, transport_representation(lb, legs.rho));
        suite.push_back({a, fact(lb.base.opposite(), transport_representation(lb, legs.sigma))});
        suite.push_back({a, fact(lb.base.opposite(), transport_representation(lb, legs.sigma_hat))});
    }
    const CStarBase m2 = standard_m2_base();
    const auto left = fact(m2, identity_rep(m2.b_dag));
    suite.push_back({left, fact(m2.opposite(), identity_rep(m2.b))});
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        suite.push_back({left, fact(m2.opposite(), conjugated(identity_rep(m2.b), random_unitary(4, 4000 + seed)))});
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const CStarBase b = random_standard_base({2, 1}, 4100 + seed);
        const auto a = fact(b, identity_rep(b.b_dag));
        suite.push_back({a, fact(b.opposite(), identity_rep(b.b))});
        suite.push_back({a, fact(b.opposite(), conjugated(identity_rep(b.b), random_unitary(5, 4200 + seed)))});
    }

    Outcome o;
    int yes = 0, no = 0;
    for (const auto& k : suite) {
        double comm = 0.0;
        for (const auto& x : k.a->rho().images)
            for (const auto& y : k.b->rho().images) comm = std::max(comm, (x * y - y * x).norm());
        const bool commute = comm <= 1e-8;
        try {
            const Compatibility r = compatible(*k.a, *k.b);
            o.pass = o.pass && r.compatible == commute;
            (r.compatible ? yes : no) += 1;
        } catch (const Error& e) {
            o.pass = false;
            o.detail = std::string(e.kind()) + ": " + e.what();
            return o;
        }
    }
    o.pass = o.pass && yes > 0 && no > 0;
    o.detail = std::to_string(yes) + " compatible and " + std::to_string(no) + " incompatible pairs, criteria agree " +
               (o.pass ? "on all" : "NOT on all");
    return o;
}

struct LinkCase {
    std::string name;
    std::shared_ptr<const GnsTriple> g;
    AlgebraMap left, right;
    LinkedBase lb;
};

std::vector<LinkCase> link_suite(bool with_scalar) {
    std::vector<LinkCase> cases;
    if (with_scalar) {
        const ScalarBase c = scalar_base();
        cases.push_back({"F1", c.g, c.on(2, Side::Opposite), c.on(3, Side::Plain), link(*c.g)});
    }
    const auto g2 = f2_gns();
    cases.push_back({"F2", g2, g2->pi_op, g2->pi, link(*g2)});
    const GroupoidLegs l4 = groupoid_legs(pair_groupoid(2));
    cases.push_back({"F4", l4.gns, l4.rho, l4.sigma, link(*l4.gns)});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        if (seed % 2 == 1) {
            const auto& spec = kSpecs[static_cast<std::size_t>(seed) % 8];
            auto g = gns_ptr(random_faithful_state(spec, 5000 + seed));
            cases.push_back({"random-state-" + std::to_string(seed), g, g->pi_op, g->pi, random_linked_base(*g, 5100 + seed)});
        } else {
            const GroupoidLegs l = groupoid_legs(pair_groupoid(2), std::vector<double>{1.0, static_cast<double>(seed)});
            cases.push_back({"random-groupoid-" + std::to_string(seed), l.gns, l.rho, l.sigma,
                             random_linked_base(*l.gns, 5200 + seed)});
        }
    }
    return cases;
}

Outcome phi_unitarity() {
    Outcome o;
    double worst = 0.0;
    bool dims = true;
    int count = 0;
    for (const auto& k : link_suite(true)) {
        const LinkedPair p = linked_pair(k.g, k.left, k.right, k.lb);
        const PhiUnitary phi = phi_unitary(p.state_side, p.cstar_side, k.lb);
        dims = dims && p.state_side.dim() == p.cstar_side.dim();
        worst = std::max({worst, phi.unitarity, phi.well_defined});
        ++count;
    }
    o.pass = dims && worst <= kPhiTol;
    o.detail = std::to_string(count) + " linked pairs (F1, F2, F4, 10 random), dims " + (dims ? "equal" : "DIFFER") +
               ", worst unitarity " + sci(worst);
    return o;
}

Outcome fiber_identification() {
    Outcome o;
    double worst = 0.0;
    int count = 0;
    for (const auto& k : link_suite(false)) {
        const LinkedPair p = linked_pair(k.g, k.left, k.right, k.lb);
        const StarAlgebra a = image_algebra(k.left);
        const StarAlgebra b = image_algebra(k.right);
        const FiberProduct fc = fiber_classical(commutant(commutant(a)), commutant(commutant(b)),
                                                std::make_shared<const RelativeTensorSpace>(p.state_side));
        const FiberProduct fs = fiber_spatial(commutant(commutant(a)), commutant(commutant(b)),
                                              std::make_shared<const RelativeTensorSpace>(p.cstar_side));
        const PhiUnitary phi = phi_unitary(p.state_side, p.cstar_side, k.lb);
        worst = std::max(worst, fiber_phi_distance(fc, fs, phi.op));
        ++count;
    }
    for (const auto& g : {pair_groupoid(2), cyclic_group(2)}) {
        const HopfData h = groupoid_hopf(g);
        const HopfTransport t = transport_hopf(h, random_linked_base(*h.gns, 5300));
        const FiberProduct fc = fiber_classical(h.algebra, h.algebra, h.space);
        const FiberProduct fs = fiber_spatial(t.cstar.algebra, t.cstar.algebra, t.cstar.space);
        worst = std::max(worst, fiber_phi_distance(fc, fs, t.phi));
        ++count;
    }
    o.pass = worst <= kSubspaceTol;
    o.detail = std::to_string(count) + " fiber products (F2, F4, 10 random, 2 groupoid algebras), worst distance " +
               sci(worst);
    return o;
}

Outcome morphism_criteria() {
    struct Case {
        AlgebraMap pi;
        FactorizationPtr a, b;
        bool expected;
    };
    std::vector<Case> suite;
    const auto g = f2_gns();
    const LinkedBase lb = link(*g);
    const auto alpha = fact(lb.base, transport_representation(lb, g->pi_op));
    const StarAlgebra d = image_algebra(g->pi);
    suite.push_back({identity_rep(d), alpha, alpha, true});
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    suite.push_back({conjugated(identity_rep(d), swap), alpha, alpha, false});

    const ScalarBase c = scalar_base();
    const CStarBase sb = cbase_from_state(*c.g);
    const auto s = fact(sb, AlgebraMap{sb.b_dag, {identity(2) * sb.b_dag.element(0)(0, 0)}, Side::Plain});
    suite.push_back({conjugated(identity_rep(algebra_closure({unit(2, 0, 1)}, 2, true)), random_unitary(2, 6000)), s, s, true});

    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const CStarBase base = random_standard_base(seed == 1 ? std::vector<Index>{2} : std::vector<Index>{2, 1}, 6100 + seed);
        const Index h = 2 * base.frak_h_dim;
        const AlgebraMap rho = amplified(base.b_dag, 2, random_unitary(h, 6200 + seed));
        const auto a = fact(base, rho);
        const Matrix w = random_unitary(h, 6300 + seed);
        const AlgebraMap pi = conjugated(identity_rep(image_algebra(rho)), w);
        suite.push_back({pi, a, fact(base, conjugated(rho, w)), true});
        suite.push_back({pi, a, fact(base, conjugated(rho, random_unitary(h, 6400 + seed))), false});
    }

    Outcome o;
    int yes = 0, no = 0;
    for (const auto& k : suite) {
        try {
            const MorphismCheck m = is_morphism(k.pi, *k.a, *k.b);
            o.pass = o.pass && m.by_representation == m.by_span && m.holds == k.expected;
            (m.holds ? yes : no) += 1;
        } catch (const Error& e) {
            o.pass = false;
            o.detail = std::string(e.kind()) + ": " + e.what();
            return o;
        }
    }
    o.pass = o.pass && yes >= 3 && no >= 3;
    o.detail = std::to_string(yes) + " morphisms and " + std::to_string(no) + " non-morphisms, criteria agree " +
               (o.pass ? "on all" : "NOT on all");
    return o;
}

Outcome hopf_equivalence_suite() {
    Outcome o;
    std::string notes;
    const auto run = [&](const std::string& name, const HopfData& h, bool expect_pass, std::uint64_t link_seed) {
        const HopfEquivalence e = hopf_equivalence(h, random_linked_base(*h.gns, link_seed));
        const bool agree = e.vn.passed() == e.cstar.passed();
        const bool ok = agree && e.vn.passed() == expect_pass && e.summary.passed();
        if (!ok) notes += " " + name;
        o.pass = o.pass && ok;
    };
    run("Z/2", groupoid_hopf(cyclic_group(2)), true, 7001);
    run("Z/3", groupoid_hopf(cyclic_group(3)), true, 7002);
    const HopfData p2 = groupoid_hopf(pair_groupoid(2));
    const HopfData p3 = groupoid_hopf(pair_groupoid(3));
    run("pair-2", p2, true, 7003);
    run("pair-3", p3, true, 7004);
    run("pair-2 perturbed", perturbed_coproduct(p2, kPerturbation, 1), false, 7005);
    run("pair-2 perturbed", perturbed_coproduct(p2, kPerturbation, 2), false, 7006);
    run("pair-3 perturbed", perturbed_coproduct(p3, kPerturbation, 3), false, 7007);
    o.detail = "4 positives, 3 perturbed negatives (theta 1e-3)" + (notes.empty() ? std::string() : "; mismatch:" + notes);
    return o;
}

Outcome pmu_equivalence_suite() {
    Outcome o;
    std::string notes;
    double worst_pos = 0.0, least_neg = std::numeric_limits<double>::infinity();
    const auto run = [&](const std::string& name, const PmuData& p, bool expect_pass, std::uint64_t link_seed) {
        const PmuEquivalence e = pmu_equivalence(p, random_linked_base(*p.gns, link_seed));
        const Check* a = pentagon(e.vn);
        const Check* b = pentagon(e.cstar);
        bool ok = a && b && e.vn.passed() == e.cstar.passed() && e.vn.passed() == expect_pass && e.summary.passed();
        if (a && b) {
            if (expect_pass) {
                worst_pos = std::max({worst_pos, a->residual, b->residual});
                ok = ok && a->residual <= kPentagonPass && b->residual <= kPentagonPass;
            } else {
                least_neg = std::min({least_neg, a->residual, b->residual});
                ok = ok && a->residual >= kPentagonFail && b->residual >= kPentagonFail;
            }
        }
        if (!ok) notes += " " + name;
        o.pass = o.pass && ok;
    };
    run("Z/2", groupoid_pmu(cyclic_group(2)), true, 8001);
    run("Z/3", groupoid_pmu(cyclic_group(3)), true, 8002);
    const PmuData p2 = groupoid_pmu(pair_groupoid(2));
    run("pair-2", p2, true, 8003);
    run("pair-3", groupoid_pmu(pair_groupoid(3)), true, 8004);
    run("Z/2 swap", swapped(groupoid_pmu(cyclic_group(2))), false, 8005);
    run("Z/3 swap", swapped(groupoid_pmu(cyclic_group(3))), false, 8006);
    run("pair-2 phase", phase_perturbed(p2, 1, kPerturbation), false, 8007);
    std::ostringstream d;
    d << "4 positives (worst pentagon " << std::scientific << std::setprecision(2) << worst_pos
      << "), 3 negatives (least pentagon " << least_neg << ")" << (notes.empty() ? "" : "; mismatch:" + notes);
    o.detail = d.str();
    return o;
}

Outcome determinism() {
    const auto once = [] {
        const PmuData p = groupoid_pmu(pair_groupoid(2), std::vector<double>{1.0, 2.0});
        const PmuEquivalence e = pmu_equivalence(p, random_linked_base(*p.gns, 9001));
        Report r;
        r.command = "pmu-check";
        r.tolerance = Tolerance{}.epsilon;
        r.merge(e.vn, "vn/");
        r.merge(e.cstar, "cstar/");
        r.merge(e.summary, "");
        const HopfData h = perturbed_coproduct(groupoid_hopf(pair_groupoid(2)), kPerturbation, 9002);
        const GnsTriple g = gns(random_faithful_state({2, 1}, 9003));
        return io::to_json(r).dump(2) + io::to_json(h).dump(2) + io::to_json(random_linked_base(g, 9004)).dump(2);
    };
    const std::string a = once();
    const std::string b = once();
    Outcome o;
    o.pass = a == b;
    o.detail = std::to_string(a.size()) + " bytes, " + (o.pass ? "identical" : "DIFFERENT");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"commutant duality", commutant_duality},
        {"standard base commutants", standard_commutants},
        {"factorization round trip", factorization_round_trip},
        {"compatibility criterion", compatibility},
        {"relative tensor product identification", phi_unitarity},
        {"fiber product identification", fiber_identification},
        {"morphism criteria", morphism_criteria},
        {"Hopf bimodule equivalence", hopf_equivalence_suite},
        {"pseudo-multiplicative unitary equivalence", pmu_equivalence_suite},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o.pass = false;
            o.detail = std::string(e.kind()) + ": " + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
                  << o.detail << "; " << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
