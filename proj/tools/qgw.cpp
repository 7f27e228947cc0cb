#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgw/fixtures.hpp"
#include "qgw/json_io.hpp"

namespace {

using namespace qgw;
using qgw::io::Json;

struct Common {
    std::string in;
    std::string out;
    double tolerance = 0.0;
    std::string side = "both";
    std::optional<std::uint64_t> link_seed;
};

double resolve_tolerance(double flag) {
    if (flag > 0.0) return flag;
    if (const char* env = std::getenv("QGW_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) throw InputError("QGW_TOLERANCE: not a positive number");
        return v;
    }
    return Tolerance{}.epsilon;
}

Json read_json(const std::string& path) {
    if (path.empty()) throw InputError("--in is required");
    std::ifstream f(path);
    if (!f) throw InputError(path + ": cannot open");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

void write_json(const Json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError(path + ": cannot write");
    f << text;
}

std::string kind_of(const Json& j) {
    if (!j.is_object()) throw InputError("/: expected an object");
    auto it = j.find("kind");
    if (it == j.end() || !it->is_string()) throw InputError("/kind: missing bundle kind");
    return it->get<std::string>();
}

std::optional<std::vector<double>> weights_of(const Json& j) {
    if (!j.contains("weights") || j["weights"].is_null()) return std::nullopt;
    if (!j["weights"].is_array()) throw InputError("/weights: expected an array");
    std::vector<double> w;
    for (const auto& x : j["weights"]) {
        if (!x.is_number()) throw InputError("/weights: expected numbers");
        w.push_back(x.get<double>());
    }
    return w;
}

FiniteGroupoid groupoid_of(const Json& j) {
    if (!j.contains("groupoid")) throw InputError("/: missing field \"groupoid\"");
    return io::groupoid_from_json(j["groupoid"], "/groupoid");
}

std::shared_ptr<const GnsTriple> gns_of(const Json& j, const Tolerance& tol) {
    const std::string kind = kind_of(j);
    if (kind == "groupoid") return groupoid_legs(groupoid_of(j), weights_of(j), tol).gns;
    if (!j.contains("state")) throw InputError("/: missing field \"state\"");
    return std::make_shared<const GnsTriple>(gns(io::state_from_json(j["state"], "/state", tol), tol));
}

PmuData pmu_of(const Json& j, const Tolerance& tol) {
    const std::string kind = kind_of(j);
    if (kind == "groupoid") return groupoid_pmu(groupoid_of(j), weights_of(j), tol);
    if (kind == "pmu") return io::pmu_from_json(j, tol);
    throw InputError("/kind: expected \"pmu\" or \"groupoid\"");
}

HopfData hopf_of(const Json& j, const Tolerance& tol) {
    const std::string kind = kind_of(j);
    if (kind == "groupoid") return groupoid_hopf(groupoid_of(j), tol);
    if (kind == "hopf") return io::hopf_from_json(j, tol);
    throw InputError("/kind: expected \"hopf\" or \"groupoid\"");
}

LinkedBase linked(const GnsTriple& g, const Common& c, const Tolerance& tol) {
    return c.link_seed ? random_linked_base(g, *c.link_seed, tol) : link(g, tol);
}

double flag(bool ok) { return ok ? 0.0 : 1.0; }

Report cmd_gns(const Json& j, const Tolerance& tol) {
    Report r;
    const auto g = gns_of(j, tol);
    const StateCertificate sc = certify(g->state, tol);
    const GnsCertificate gc = certify(*g, tol);
    const double thr = tol.certify() * std::sqrt(static_cast<double>(g->dim()));
    r.add("positivity", "mu(a^* a) >= 0", sc.positivity, thr);
    r.add("normalization", "mu(1) = 1", sc.normalization, thr);
    r.add("faithful", "mu(a^* a) = 0 implies a = 0", flag(sc.faithful), 0.5);
    r.add("state-reproduction", "<zeta, pi(a) zeta> = mu(a)", gc.state_reproduction, thr);
    r.add("homomorphism", "pi is a *-homomorphism", gc.homomorphism, thr);
    r.add("opposite-homomorphism", "pi^op is a *-anti-homomorphism", gc.opposite_homomorphism, thr);
    r.add("commutation", "[pi(a), pi^op(b)] = 0", gc.commutation, thr);
    r.add("conjugation-square", "J^2 = 1", gc.conjugation_square, thr);
    r.add("antiunitarity", "<J x, J y> = <y, x>", gc.antiunitarity, thr);
    r.add("cyclic", "[pi(N) zeta] = H_mu", flag(gc.cyclic), 0.5);
    r.add("cocyclic", "[pi^op(N^op) zeta] = H_mu", flag(gc.cocyclic), 0.5);
    r.value("dim_H", static_cast<double>(g->dim()));
    r.value("dim_N", static_cast<double>(g->algebra().dim()));
    return r;
}

CStarBase base_of(const Json& j, const Tolerance& tol) {
    if (kind_of(j) == "base") {
        if (!j.contains("base")) throw InputError("/: missing field \"base\"");
        return io::base_from_json(j["base"], "/base", tol);
    }
    return cbase_from_state(*gns_of(j, tol), tol);
}

Report cmd_base_check(const Json& j, const Tolerance& tol) {
    Report r;
    CStarBase base = base_of(j, tol);
    if (!base.zeta) base.zeta = find_bicyclic(base, tol);
    const double thr = tol.certify() * std::sqrt(static_cast<double>(base.frak_h_dim));
    r.value("dim_H", static_cast<double>(base.frak_h_dim));
    r.add("bicyclic", "[B zeta] = [B^dag zeta] = H", flag(base.zeta.has_value()), 0.5);
    if (!base.zeta) {
        r.skip("dag-is-commutant", "B^dag = B'", thr);
        r.skip("base-is-bicommutant", "B = (B^dag)'", thr);
        r.skip("conjugation", "J_zeta B^* J_zeta = B^dag", thr);
        r.skip("equivalence", "U zeta = zeta_mu, U B U^* = pi_mu(N)", thr);
        return r;
    }
    const CommutantCheck cc = check_standard_commutant(base, tol);
    r.add("dag-is-commutant", "B^dag = B'", cc.b_commutant, thr);
    r.add("base-is-bicommutant", "B = (B^dag)'", cc.dag_commutant, thr);
    const BaseConjugation bc = modular_conjugation_of_base(base, tol);
    r.add("conjugation", "J_zeta B^* J_zeta = B^dag",
          std::max({bc.into_dag, bc.onto_dag, bc.square, bc.antiunitarity}), thr);
    const BaseEquivalence be = base_equivalence(base, tol);
    r.add("equivalence", "U zeta = zeta_mu, U B U^* = pi_mu(N)", be.worst(), thr);
    return r;
}

Report cmd_factorize(const Json& j, const Common& c, const Tolerance& tol) {
    Report r;
    std::vector<std::pair<std::string, std::pair<CStarBase, AlgebraMap>>> jobs;
    if (kind_of(j) == "factorization") {
        CStarBase base = base_of(Json{{"kind", "base"}, {"base", j.value("base", Json())}}, tol);
        if (!j.contains("rho")) throw InputError("/: missing field \"rho\"");
        AlgebraMap rho = io::map_from_json(j["rho"], base.b_dag, "/rho", tol);
        jobs.push_back({"", {std::move(base), std::move(rho)}});
    } else {
        const PmuData p = pmu_of(j, tol);
        const LinkedBase lb = linked(*p.gns, c, tol);
        jobs.push_back({"alpha/", {lb.base, transport_representation(lb, p.rho, tol)}});
        jobs.push_back({"beta/", {lb.base.opposite(), transport_representation(lb, p.sigma, tol)}});
        jobs.push_back({"beta-hat/", {lb.base.opposite(), transport_representation(lb, p.sigma_hat, tol)}});
    }
    for (const auto& [prefix, job] : jobs) {
        const auto& [base, rho] = job;
        const CStarFactorization f = factorization_from_representation(base, rho, tol);
        const auto& cert = f.certificate();
        const double thr = tol.certify() * std::sqrt(static_cast<double>(f.dim()));
        r.add(prefix + "star-products", "[alpha^* alpha] = B", cert.star_products, thr);
        r.add(prefix + "module", "[alpha B] = alpha", cert.module, thr);
        r.add(prefix + "nondegenerate", "[alpha H_base] = H", cert.nondegenerate, thr);
        r.add(prefix + "representation", "rho_alpha is a *-homomorphism", cert.representation, thr);
        r.add(prefix + "round-trip", "rho_{L^rho} = rho", representation_distance(f.rho(), rho), thr);
        r.add(prefix + "dimension", "dim alpha = dim H", std::abs(static_cast<double>(f.dim() - f.h_dim())), 0.5);
        r.value(prefix + "dim_alpha", static_cast<double>(f.dim()));
    }
    return r;
}

struct PmuSides {
    PmuData p;
    LinkedBase lb;
    PmuTransport t;
};

PmuSides pmu_sides(const Json& j, const Common& c, const Tolerance& tol) {
    PmuData p = pmu_of(j, tol);
    LinkedBase lb = linked(*p.gns, c, tol);
    PmuTransport t = transport_pmu(p, lb, tol);
    return {std::move(p), std::move(lb), std::move(t)};
}

Report cmd_rtp(const Json& j, const Common& c, const Tolerance& tol) {
    Report r;
    const PmuSides s = pmu_sides(j, c, tol);
    const auto one = [&](const std::string& name, const RelativeTensorSpace& st, const RelativeTensorSpace& cs) {
        const double thr = tol.certify() * std::sqrt(static_cast<double>(std::max<Index>(1, cs.plain_dim())));
        r.value(name + "/dim_state", static_cast<double>(st.dim()));
        r.value(name + "/dim_cstar", static_cast<double>(cs.dim()));
        r.add(name + "/dimension", "dim H (x)_mu K = dim alpha |> H_base <| beta",
              std::abs(static_cast<double>(st.dim() - cs.dim())), 0.5);
        r.add(name + "/identification", "xi |> eta x = xi |> x <| eta = xi x <| eta", identification_residual(cs, tol), thr);
    };
    one("source", *s.p.source, *s.t.cstar.source);
    one("target", *s.p.target, *s.t.cstar.target);
    return r;
}

Report cmd_phi(const Json& j, const Common& c, const Tolerance& tol) {
    Report r;
    const PmuSides s = pmu_sides(j, c, tol);
    const auto one = [&](const std::string& name, const RelativeTensorSpace& st, const RelativeTensorSpace& cs) {
        const PhiUnitary phi = phi_unitary(st, cs, s.lb, tol);
        const double thr = tol.certify() * std::sqrt(static_cast<double>(std::max<Index>(1, st.dim())));
        r.add(name + "/well-defined", "Phi(xi (x) eta) respects the null spaces", phi.well_defined, thr);
        r.add(name + "/unitarity", "Phi^* Phi = Phi Phi^* = 1", phi.unitarity, thr);
        r.add(name + "/membership", "R(xi) in alpha, R(eta) in beta", phi.membership, thr);
        r.value(name + "/dim", static_cast<double>(st.dim()));
    };
    one("source", *s.p.source, *s.t.cstar.source);
    one("target", *s.p.target, *s.t.cstar.target);
    return r;
}

Report cmd_fiber(const Json& j, const Common& c, const Tolerance& tol) {
    Report r;
    const HopfData h = hopf_of(j, tol);
    const LinkedBase lb = linked(*h.gns, c, tol);
    const HopfTransport t = transport_hopf(h, lb, tol);
    const FiberProduct classical = fiber_classical(h.algebra, h.algebra, h.space, tol);
    const FiberProduct spatial = fiber_spatial(t.cstar.algebra, t.cstar.algebra, t.cstar.space, tol);
    const double thr = tol.certify() * std::sqrt(static_cast<double>(std::max<Index>(1, h.space->dim())));
    r.value("dim_classical", static_cast<double>(classical.algebra.dim()));
    r.value("dim_spatial", static_cast<double>(spatial.algebra.dim()));
    r.add("phi-unitarity", "Phi^* Phi = Phi Phi^* = 1", t.phi_unitarity, thr);
    r.add("fiber-identification", "Ad_Phi (A' (x) B')' = A *_H B",
          fiber_phi_distance(classical, spatial, t.phi), thr);
    return r;
}

Report cmd_morphism(const Json& j, const Tolerance& tol) {
    Report r;
    if (kind_of(j) != "morphism") throw InputError("/kind: expected \"morphism\"");
    const CStarBase base = base_of(Json{{"kind", "base"}, {"base", j.value("base", Json())}}, tol);
    for (const char* key : {"A", "alpha", "beta", "pi"})
        if (!j.contains(key)) throw InputError(std::string("/: missing field \"") + key + "\"");
    const StarAlgebra a = io::algebra_from_json(j["A"], "/A", tol);
    const AlgebraMap alpha_rep = io::map_from_json(j["alpha"], base.b_dag, "/alpha", tol);
    const AlgebraMap beta_rep = io::map_from_json(j["beta"], base.b_dag, "/beta", tol);
    const AlgebraMap pi = io::map_from_json(j["pi"], a, "/pi", tol);
    const CStarFactorization alpha = factorization_from_representation(base, alpha_rep, tol);
    const CStarFactorization beta = factorization_from_representation(base, beta_rep, tol);
    const MorphismCheck m = is_morphism(pi, alpha, beta, tol);
    const double thr = tol.certify() * std::sqrt(static_cast<double>(std::max(alpha.h_dim(), beta.h_dim())));
    r.value("representation_residual", m.representation);
    r.value("span_residual", m.span);
    r.add("equivariance", "pi(rho_alpha(d)) = rho_beta(d)", m.representation, thr);
    r.add("span", "beta = [I_pi alpha]", m.span, thr);
    r.add("criteria-agreement", "equivariance iff beta = [I_pi alpha]", flag(m.by_representation == m.by_span), 0.5);
    return r;
}

Report hopf_report(const Json& j, const Common& c, const Tolerance& tol) {
    const HopfData h = hopf_of(j, tol);
    Report r;
    if (c.side == "vn") return check_hopf_vn(h, tol);
    const LinkedBase lb = linked(*h.gns, c, tol);
    if (c.side == "cstar") return check_hopf_cstar(transport_hopf(h, lb, tol).cstar, tol);
    const HopfEquivalence e = hopf_equivalence(h, lb, tol);
    r.merge(e.vn, "vn/");
    r.merge(e.cstar, "cstar/");
    r.merge(e.summary, "");
    return r;
}

Report pmu_report(const Json& j, const Common& c, const Tolerance& tol) {
    const PmuData p = pmu_of(j, tol);
    Report r;
    if (c.side == "vn") return check_pmu_vn(p, tol);
    const LinkedBase lb = linked(*p.gns, c, tol);
    if (c.side == "cstar") return check_pmu_cstar(transport_pmu(p, lb, tol).cstar, tol);
    const PmuEquivalence e = pmu_equivalence(p, lb, tol);
    r.merge(e.vn, "vn/");
    r.merge(e.cstar, "cstar/");
    r.merge(e.summary, "");
    return r;
}

Report cmd_equiv(const Json& j, const Common& c, const Tolerance& tol) {
    Common both = c;
    both.side = "both";
    const std::string kind = kind_of(j);
    if (kind == "pmu") return pmu_report(j, both, tol);
    if (kind == "hopf") return hopf_report(j, both, tol);
    if (kind != "groupoid") throw InputError("/kind: expected \"groupoid\", \"pmu\" or \"hopf\"");
    Report r;
    r.merge(pmu_report(j, both, tol), "pmu/");
    r.merge(hopf_report(j, both, tol), "hopf/");
    return r;
}

struct GenOptions {
    Index cyclic = 0;
    Index pair = 0;
    std::string emit;
    std::vector<double> weights;
    bool swap = false;
    std::optional<double> perturb_phase;
    Index index = 0;
    std::optional<double> perturb_coproduct;
    std::uint64_t seed = 1;
    std::vector<Index> blocks;
};

Json gen_groupoid(const FiniteGroupoid& g, const GenOptions& o, const Tolerance& tol) {
    std::optional<std::vector<double>> weights;
    if (!o.weights.empty()) weights = o.weights;
    if (o.emit == "groupoid") {
        if (o.swap || o.perturb_phase || o.perturb_coproduct)
            throw InputError("perturbations need --emit pmu or --emit hopf");
        Json j{{"kind", "groupoid"}, {"groupoid", io::to_json(g)}};
        if (weights) j["weights"] = *weights;
        return j;
    }
    if (o.emit == "pmu") {
        if (o.perturb_coproduct) throw InputError("--perturb-coproduct needs --emit hopf");
        PmuData p = groupoid_pmu(g, weights, tol);
        if (o.swap) p = swapped(p, tol);
        if (o.perturb_phase) p = phase_perturbed(p, o.index, *o.perturb_phase, tol);
        return io::to_json(p);
    }
    if (o.swap || o.perturb_phase) throw InputError("--swap and --perturb-phase need --emit pmu");
    if (weights) throw InputError("--weights is not supported with --emit hopf");
    HopfData h = groupoid_hopf(g, tol);
    if (o.perturb_coproduct) h = perturbed_coproduct(h, *o.perturb_coproduct, o.seed, tol);
    return io::to_json(h);
}

Json gen_random_base(const GenOptions& o, const Tolerance& tol) {
    if (o.blocks.empty()) throw InputError("--blocks must be nonempty");
    for (Index b : o.blocks)
        if (b < 1) throw InputError("--blocks entries must be positive");
    const State mu = random_faithful_state(o.blocks, o.seed);
    const CStarBase base = cbase_from_state(mu, tol);
    return Json{{"kind", "base"}, {"state", io::to_json(mu)}, {"base", io::to_json(base)}};
}

void print_report(const Report& r) {
    std::cout << r.command << ": " << to_string(r.verdict()) << " (tolerance " << r.tolerance << ")\n";
    for (const auto& c : r.checks) {
        std::cout << "  [" << (c.skipped ? "skip" : c.passed() ? "pass" : "FAIL") << "] " << c.axiom;
        if (!c.skipped) std::cout << "  residual " << c.residual << " <= " << c.threshold;
        std::cout << "  (" << c.anchor << ")\n";
    }
    for (const auto& [k, v] : r.values) std::cout << "  " << k << " = " << v << "\n";
    if (const Check* f = r.first_failure()) std::cout << "first failing axiom: " << f->axiom << "\n";
    if (!r.error.empty()) std::cout << "error: " << r.error << "\n";
}

int exit_code(const Report& r) {
    switch (r.verdict()) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Error: return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional quantum groupoid toolkit"};
    app.require_subcommand(1);
    Common common;
    GenOptions gen;

    auto add_common = [&](CLI::App* sub, bool needs_in) {
        auto* in = sub->add_option("--in", common.in, "input JSON bundle");
        if (needs_in) in->required();
        sub->add_option("--out", common.out, "write the JSON result here");
        sub->add_option("--tolerance", common.tolerance, "relative tolerance (default 1e-9, env QGW_TOLERANCE)")
            ->check(CLI::PositiveNumber);
    };
    auto add_link = [&](CLI::App* sub) {
        sub->add_option("--link-seed", common.link_seed, "use a random linked base with this seed");
    };
    auto add_side = [&](CLI::App* sub) {
        sub->add_option("--side", common.side, "vn, cstar or both")->check(CLI::IsMember({"vn", "cstar", "both"}));
    };

    const std::vector<std::pair<std::string, std::string>> checks{
        {"gns", "GNS triple of a state"},
        {"base-check", "standard form of a C*-base"},
        {"factorize", "C*-factorizations of the legs"},
        {"rtp", "relative tensor products, both flavors"},
        {"phi", "unitary between the relative tensor products"},
        {"fiber", "fiber products under the identification"},
        {"morphism-check", "morphism of C*-factorizations"},
        {"hopf-check", "Hopf bimodule axioms"},
        {"pmu-check", "pseudo-multiplicative unitary axioms"},
        {"equiv-check", "both sides and their agreement"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : checks) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, true);
        if (name != "gns" && name != "base-check" && name != "morphism-check") add_link(sub);
        if (name == "hopf-check" || name == "pmu-check") add_side(sub);
        subs[name] = sub;
    }
    auto add_perturbations = [&](CLI::App* sub) {
        sub->add_option("--weights", gen.weights, "unit weights of the state");
        sub->add_flag("--swap", gen.swap, "replace V by the tensor flip");
        sub->add_option("--perturb-phase", gen.perturb_phase, "phase angle on one source coordinate");
        sub->add_option("--index", gen.index, "coordinate for --perturb-phase");
        sub->add_option("--perturb-coproduct", gen.perturb_coproduct, "rotation angle of the coproduct");
        sub->add_option("--seed", gen.seed, "seed for --perturb-coproduct");
    };
    auto* gen_group = app.add_subcommand("gen-group", "cyclic group bundle");
    add_common(gen_group, false);
    gen_group->add_option("--cyclic", gen.cyclic, "order of the cyclic group")->required()->check(CLI::PositiveNumber);
    gen_group->add_option("--emit", gen.emit, "groupoid, pmu or hopf")->check(CLI::IsMember({"groupoid", "pmu", "hopf"}));
    add_perturbations(gen_group);
    auto* gen_pair = app.add_subcommand("gen-groupoid", "pair groupoid bundle");
    add_common(gen_pair, false);
    gen_pair->add_option("--pair", gen.pair, "number of units")->required()->check(CLI::PositiveNumber);
    gen_pair->add_option("--emit", gen.emit, "groupoid, pmu or hopf")->check(CLI::IsMember({"groupoid", "pmu", "hopf"}));
    add_perturbations(gen_pair);
    auto* gen_base = app.add_subcommand("gen-random-base", "random standard base");
    add_common(gen_base, false);
    gen_base->add_option("--blocks", gen.blocks, "matrix block sizes")->required()->delimiter(',');
    gen_base->add_option("--seed", gen.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    Report report;
    report.command = name;
    try {
        const Tolerance tol(resolve_tolerance(common.tolerance));
        report.tolerance = tol.epsilon;

        if (name == "gen-group" || name == "gen-groupoid") {
            if (gen.emit.empty()) gen.emit = name == "gen-group" ? "pmu" : "groupoid";
            const FiniteGroupoid g = name == "gen-group" ? cyclic_group(gen.cyclic) : pair_groupoid(gen.pair);
            write_json(gen_groupoid(g, gen, tol), common.out);
            return 0;
        }
        if (name == "gen-random-base") {
            write_json(gen_random_base(gen, tol), common.out);
            return 0;
        }

        const Json j = read_json(common.in);
        Report r;
        if (name == "gns") r = cmd_gns(j, tol);
        else if (name == "base-check") r = cmd_base_check(j, tol);
        else if (name == "factorize") r = cmd_factorize(j, common, tol);
        else if (name == "rtp") r = cmd_rtp(j, common, tol);
        else if (name == "phi") r = cmd_phi(j, common, tol);
        else if (name == "fiber") r = cmd_fiber(j, common, tol);
        else if (name == "morphism-check") r = cmd_morphism(j, tol);
        else if (name == "hopf-check") r = hopf_report(j, common, tol);
        else if (name == "pmu-check") r = pmu_report(j, common, tol);
        else r = cmd_equiv(j, common, tol);
        r.command = name;
        r.tolerance = tol.epsilon;
        report = std::move(r);
    } catch (const Error& e) {
        report.error = std::string(e.kind()) + ": " + e.what();
    } catch (const Json::exception& e) {
        report.error = std::string("input-error: ") + e.what();
    }
    print_report(report);
    if (!common.out.empty()) {
        try {
            write_json(io::to_json(report), common.out);
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }
    return exit_code(report);
}
