#include "qgw/json_io.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace qgw::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

Index index_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < 0) fail(where, "expected a non-negative integer");
    return static_cast<Index>(v);
}

double number_from_json(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::vector<Matrix> matrices_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of matrices");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], at(where, std::to_string(i))));
    return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double from_nullable(const Json& j, const std::string& where) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return number_from_json(j, where);
}

std::shared_ptr<const GnsTriple> gns_from_json(const Json& j, const std::string& where, const Tolerance& tol) {
    return std::make_shared<const GnsTriple>(gns(state_from_json(j, where, tol), tol));
}

void check_coordinates(const Matrix& stored, const Matrix& computed, const std::string& where, const Tolerance& tol) {
    if (stored.rows() != computed.rows() || stored.cols() != computed.cols())
        fail(where, "quotient coordinates have the wrong shape");
    if ((stored - computed).norm() > tol.certify() * std::max(1.0, computed.norm()))
        fail(where, "quotient coordinates differ from the canonical ones");
}

}  // namespace

Json to_json(const Matrix& m) {
    require_finite(m, "matrix serialization");
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index k = 0; k < m.cols(); ++k) data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
    const Index rows = index_from_json(field(j, "rows", where), at(where, "rows"));
    const Index cols = index_from_json(field(j, "cols", where), at(where, "cols"));
    const Json& data = field(j, "data", where);
    if (!data.is_array()) fail(at(where, "data"), "expected an array");
    if (static_cast<Index>(data.size()) != rows * cols)
        fail(at(where, "data"), "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(data.size()));
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i * cols + k);
            const Json& e = data[idx];
            const std::string w = at(at(where, "data"), std::to_string(idx));
            if (e.is_number()) {
                m(i, k) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                m(i, k) = Complex(number_from_json(e[0], w + "/0"), number_from_json(e[1], w + "/1"));
            } else {
                fail(w, "expected [re, im]");
            }
        }
    return m;
}

Vector vector_from_json(const Json& j, const std::string& where) {
    const Matrix m = matrix_from_json(j, where);
    if (m.cols() != 1) fail(where, "expected a column vector");
    return m.col(0);
}

Json to_json(const StarAlgebra& a) {
    const Index n = a.carrier_dim();
    return Json{{"dim_H", n}, {"generators", matrices_to_json(a.elements())}, {"unital", a.contains(identity(n))}};
}

StarAlgebra algebra_from_json(const Json& j, const std::string& where, const Tolerance& tol) {
    const Index n = index_from_json(field(j, "dim_H", where), at(where, "dim_H"));
    const auto gens = matrices_from_json(field(j, "generators", where), at(where, "generators"));
    bool unital = true;
    if (j.contains("unital")) {
        if (!j["unital"].is_boolean()) fail(at(where, "unital"), "expected a boolean");
        unital = j["unital"].get<bool>();
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].rows() != n || gens[i].cols() != n)
            fail(at(at(where, "generators"), std::to_string(i)), "generator is not dim_H x dim_H");
    return algebra_closure(gens, n, unital, tol);
}

Json to_json(const State& s) { return Json{{"algebra", to_json(s.algebra)}, {"rho", to_json(s.density)}}; }

State state_from_json(const Json& j, const std::string& where, const Tolerance& tol) {
    StarAlgebra a = algebra_from_json(field(j, "algebra", where), at(where, "algebra"), tol);
    Matrix rho = matrix_from_json(field(j, "rho", where), at(where, "rho"));
    if (rho.rows() != a.carrier_dim() || rho.cols() != a.carrier_dim()) fail(at(where, "rho"), "density has the wrong shape");
    return State{std::move(a), std::move(rho)};
}

Json to_json(const CStarBase& b) {
    Json j{{"frak_H_dim", b.frak_h_dim}, {"B", to_json(b.b)}, {"B_dag", to_json(b.b_dag)}};
    if (b.zeta) j["zeta"] = to_json(Matrix(*b.zeta));
    return j;
}

CStarBase base_from_json(const Json& j, const std::string& where, const Tolerance& tol) {
    CStarBase b;
    b.frak_h_dim = index_from_json(field(j, "frak_H_dim", where), at(where, "frak_H_dim"));
    b.b = algebra_from_json(field(j, "B", where), at(where, "B"), tol);
    b.b_dag = algebra_from_json(field(j, "B_dag", where), at(where, "B_dag"), tol);
    if (b.b.carrier_dim() != b.frak_h_dim || b.b_dag.carrier_dim() != b.frak_h_dim)
        fail(where, "algebras do not act on a space of dimension frak_H_dim");
    if (j.contains("zeta") && !j["zeta"].is_null()) {
        Vector z = vector_from_json(j["zeta"], at(where, "zeta"));
        if (z.size() != b.frak_h_dim) fail(at(where, "zeta"), "vector has the wrong length");
        b.zeta = std::move(z);
    }
    return b;
}

Json to_json(const AlgebraMap& f) {
    return Json{{"side", f.side == Side::Plain ? "plain" : "opposite"},
                {"generators", matrices_to_json(f.domain.elements())},
                {"images", matrices_to_json(f.images)}};
}

AlgebraMap linear_extension(const StarAlgebra& domain, const std::vector<Matrix>& xs, const std::vector<Matrix>& ys,
                            Side side, const Tolerance& tol) {
    if (xs.size() != ys.size()) throw DimensionError("one image per generator is required");
    if (xs.empty()) throw DimensionError("a map needs at least one generator");
    const Index n = domain.carrier_dim();
    const Index m = static_cast<Index>(xs.size());
    const Index r = ys.front().rows();
    const Index c = ys.front().cols();
    Matrix coords(domain.dim(), m);
    Matrix images(r * c, m);
    for (Index i = 0; i < m; ++i) {
        if (xs[i].rows() != n || xs[i].cols() != n) throw DimensionError("generator does not act on the domain carrier");
        if (ys[i].rows() != r || ys[i].cols() != c) throw DimensionError("images differ in shape");
        if (domain.space().residual(xs[i]) > tol.certify() * std::max(1.0, xs[i].norm()))
            throw PreconditionError("generator lies outside the domain algebra");
        coords.col(i) = domain.space().coordinates(xs[i]);
        images.col(i) = vec(ys[i]);
    }
    if (tolerant_rank(coords, tol) != domain.dim()) throw PreconditionError("generators do not span the domain algebra");
    // Solve images = M coords in the least-squares sense and check consistency.
    const auto cod = coords.transpose().completeOrthogonalDecomposition();
    const Matrix mt = cod.solve(images.transpose());
    const Matrix fit = mt.transpose() * coords;
    if ((fit - images).norm() > tol.certify() * std::max(1.0, images.norm()))
        throw PreconditionError("assignment is not linear on the generators");
    AlgebraMap f{domain, {}, side};
    for (Index k = 0; k < domain.dim(); ++k) f.images.push_back(unvec(mt.row(k).transpose(), r, c));
    return f;
}

AlgebraMap map_from_json(const Json& j, const StarAlgebra& domain, const std::string& where, const Tolerance& tol) {
    Side side = Side::Plain;
    if (j.contains("side")) {
        const Json& s = j["side"];
        if (!s.is_string() || (s != "plain" && s != "opposite")) fail(at(where, "side"), "expected \"plain\" or \"opposite\"");
        side = s == "plain" ? Side::Plain : Side::Opposite;
    }
    const auto xs = matrices_from_json(field(j, "generators", where), at(where, "generators"));
    const auto ys = matrices_from_json(field(j, "images", where), at(where, "images"));
    try {
        return linear_extension(domain, xs, ys, side, tol);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Json to_json(const FiniteGroupoid& g) {
    Json arrows = Json::array();
    for (const auto& a : g.arrows())
        arrows.push_back(Json{{"id", a.id}, {"src", g.units()[a.src]}, {"tgt", g.units()[a.tgt]}});
    Json compose = Json::array();
    for (const auto& [a, b, ab] : g.composition_table())
        compose.push_back(Json::array({g.arrows()[a].id, g.arrows()[b].id, g.arrows()[ab].id}));
    return Json{{"units", g.units()}, {"arrows", std::move(arrows)}, {"compose", std::move(compose)}};
}

FiniteGroupoid groupoid_from_json(const Json& j, const std::string& where) {
    const Json& ju = field(j, "units", where);
    if (!ju.is_array()) fail(at(where, "units"), "expected an array");
    std::vector<std::string> units;
    std::map<std::string, Index> unit_index;
    for (std::size_t i = 0; i < ju.size(); ++i) {
        const std::string w = at(at(where, "units"), std::to_string(i));
        std::string name = ju[i].is_string() ? ju[i].get<std::string>() : ju[i].dump();
        if (!unit_index.emplace(name, static_cast<Index>(i)).second) fail(w, "duplicate unit");
        units.push_back(std::move(name));
    }
    auto unit_ref = [&](const Json& e, const std::string& w) -> Index {
        if (e.is_string()) {
            auto it = unit_index.find(e.get<std::string>());
            if (it == unit_index.end()) fail(w, "unknown unit");
            return it->second;
        }
        const Index u = index_from_json(e, w);
        if (u >= static_cast<Index>(units.size())) fail(w, "unit index out of range");
        return u;
    };

    const Json& ja = field(j, "arrows", where);
    if (!ja.is_array()) fail(at(where, "arrows"), "expected an array");
    std::vector<Arrow> arrows;
    std::map<std::string, Index> arrow_index;
    for (std::size_t i = 0; i < ja.size(); ++i) {
        const std::string w = at(at(where, "arrows"), std::to_string(i));
        const Json& id = field(ja[i], "id", w);
        std::string name = id.is_string() ? id.get<std::string>() : id.dump();
        if (!arrow_index.emplace(name, static_cast<Index>(i)).second) fail(w, "duplicate arrow id");
        arrows.push_back(Arrow{std::move(name), unit_ref(field(ja[i], "src", w), at(w, "src")),
                               unit_ref(field(ja[i], "tgt", w), at(w, "tgt"))});
    }
    auto arrow_ref = [&](const Json& e, const std::string& w) -> Index {
        if (e.is_string()) {
            auto it = arrow_index.find(e.get<std::string>());
            if (it == arrow_index.end()) fail(w, "unknown arrow");
            return it->second;
        }
        const Index a = index_from_json(e, w);
        if (a >= static_cast<Index>(arrows.size())) fail(w, "arrow index out of range");
        return a;
    };

    const Json& jc = field(j, "compose", where);
    if (!jc.is_array()) fail(at(where, "compose"), "expected an array");
    std::vector<std::array<Index, 3>> compose;
    for (std::size_t i = 0; i < jc.size(); ++i) {
        const std::string w = at(at(where, "compose"), std::to_string(i));
        if (!jc[i].is_array() || jc[i].size() != 3) fail(w, "expected [g, h, gh]");
        compose.push_back({arrow_ref(jc[i][0], w + "/0"), arrow_ref(jc[i][1], w + "/1"), arrow_ref(jc[i][2], w + "/2")});
    }
    try {
        return FiniteGroupoid(std::move(units), std::move(arrows), compose);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Json to_json(const LinkedBase& lb) { return Json{{"base", to_json(lb.base)}, {"u", to_json(lb.u)}}; }

LinkedBase linked_base_from_json(const Json& j, std::shared_ptr<const GnsTriple> gns, const std::string& where,
                                 const Tolerance& tol) {
    CStarBase base = base_from_json(field(j, "base", where), at(where, "base"), tol);
    Matrix u = matrix_from_json(field(j, "u", where), at(where, "u"));
    return link(std::move(gns), base, u, tol);
}

Json to_json(const PmuData& p) {
    return Json{{"kind", "pmu"},
                {"state", to_json(p.gns->state)},
                {"reps", Json{{"rho", to_json(p.rho)}, {"sigma", to_json(p.sigma)}, {"sigma_hat", to_json(p.sigma_hat)}}},
                {"V", to_json(p.v)},
                {"coordinate_maps", Json{{"source", to_json(p.source->classes())}, {"target", to_json(p.target->classes())}}}};
}

PmuData pmu_from_json(const Json& j, const Tolerance& tol) {
    const std::string where = "";
    auto g = gns_from_json(field(j, "state", where), "/state", tol);
    const Json& reps = field(j, "reps", where);
    const StarAlgebra& n = g->algebra();
    AlgebraMap rho = map_from_json(field(reps, "rho", "/reps"), n, "/reps/rho", tol);
    AlgebraMap sigma = map_from_json(field(reps, "sigma", "/reps"), n, "/reps/sigma", tol);
    AlgebraMap sigma_hat = map_from_json(field(reps, "sigma_hat", "/reps"), n, "/reps/sigma_hat", tol);
    if (rho.side != Side::Opposite) fail("/reps/rho/side", "rho must be a representation of N^op");
    if (sigma.side != Side::Plain || sigma_hat.side != Side::Plain) fail("/reps", "sigma and sigma_hat must represent N");
    Matrix v = matrix_from_json(field(j, "V", where), "/V");
    PmuData p = make_pmu_data(g, rho, sigma, sigma_hat, v, tol);
    if (j.contains("coordinate_maps")) {
        const Json& cm = j["coordinate_maps"];
        if (cm.contains("source"))
            check_coordinates(matrix_from_json(cm["source"], "/coordinate_maps/source"), p.source->classes(),
                              "/coordinate_maps/source", tol);
        if (cm.contains("target"))
            check_coordinates(matrix_from_json(cm["target"], "/coordinate_maps/target"), p.target->classes(),
                              "/coordinate_maps/target", tol);
    }
    return p;
}

Json to_json(const HopfData& h) {
    return Json{{"kind", "hopf"},
                {"side", "vn"},
                {"state", to_json(h.gns->state)},
                {"A", to_json(h.algebra)},
                {"Delta", to_json(h.delta)},
                {"legs", Json{{"rho", to_json(h.rho)}, {"sigma", to_json(h.sigma)}}},
                {"coordinate_maps", Json{{"space", to_json(h.space->classes())}}}};
}

HopfData hopf_from_json(const Json& j, const Tolerance& tol) {
    if (j.contains("side") && j["side"] != "vn") fail("/side", "only von Neumann side bundles are accepted");
    auto g = gns_from_json(field(j, "state", ""), "/state", tol);
    StarAlgebra a = algebra_from_json(field(j, "A", ""), "/A", tol);
    const Json& legs = field(j, "legs", "");
    AlgebraMap rho = map_from_json(field(legs, "rho", "/legs"), g->algebra(), "/legs/rho", tol);
    AlgebraMap sigma = map_from_json(field(legs, "sigma", "/legs"), g->algebra(), "/legs/sigma", tol);
    if (rho.side != Side::Opposite || sigma.side != Side::Plain)
        fail("/legs", "rho must represent N^op and sigma must represent N");
    const Json& jd = field(j, "Delta", "");
    const auto xs = matrices_from_json(field(jd, "generators", "/Delta"), "/Delta/generators");
    const auto ys = matrices_from_json(field(jd, "images", "/Delta"), "/Delta/images");
    HopfData h;
    try {
        AlgebraMap delta = linear_extension(a, xs, ys, Side::Plain, tol);
        h = make_hopf_data(g, a, rho, sigma, delta.images, tol);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        fail("/Delta", e.what());
    }
    if (j.contains("coordinate_maps") && j["coordinate_maps"].contains("space"))
        check_coordinates(matrix_from_json(j["coordinate_maps"]["space"], "/coordinate_maps/space"), h.space->classes(),
                          "/coordinate_maps/space", tol);
    return h;
}

Json to_json(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"axiom", c.axiom},
                              {"anchor", c.anchor},
                              {"residual", nullable(c.residual)},
                              {"threshold", nullable(c.threshold)},
                              {"skipped", c.skipped},
                              {"passed", c.passed()}});
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = nullable(v);
    Json j{{"command", r.command},
           {"verdict", to_string(r.verdict())},
           {"tolerance", r.tolerance},
           {"checks", std::move(checks)},
           {"values", std::move(values)}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

Report report_from_json(const Json& j) {
    Report r;
    r.command = field(j, "command", "").get<std::string>();
    r.tolerance = number_from_json(field(j, "tolerance", ""), "/tolerance");
    const Json& checks = field(j, "checks", "");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const std::string w = "/checks/" + std::to_string(i);
        Check c;
        c.axiom = field(checks[i], "axiom", w).get<std::string>();
        c.anchor = field(checks[i], "anchor", w).get<std::string>();
        c.residual = from_nullable(field(checks[i], "residual", w), w + "/residual");
        c.threshold = from_nullable(field(checks[i], "threshold", w), w + "/threshold");
        c.skipped = field(checks[i], "skipped", w).get<bool>();
        r.checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : field(j, "values", "").items()) r.values.emplace_back(k, from_nullable(v, "/values/" + k));
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
}

}  // namespace qgw::io
