#pragma once
//
// JSON encodings of matrices, algebras, states, bases, maps, groupoids,
// candidate bundles and reports. Malformed input raises InputError with a
// JSON-pointer style location.
//

#include <json.hpp>

#include "qgw/fixtures.hpp"
#include "qgw/report.hpp"

namespace qgw::io {

using Json = nlohmann::json;

/// {"rows", "cols", "data": [[re, im], ...]} in row-major order.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& where);
Vector vector_from_json(const Json& j, const std::string& where);

/// {"dim_H", "generators", "unital"}; loading takes the generated *-algebra.
Json to_json(const StarAlgebra& a);
StarAlgebra algebra_from_json(const Json& j, const std::string& where, const Tolerance& tol = {});

/// {"algebra", "rho"}
Json to_json(const State& s);
State state_from_json(const Json& j, const std::string& where, const Tolerance& tol = {});

/// {"frak_H_dim", "B", "B_dag", "zeta"?}
Json to_json(const CStarBase& b);
CStarBase base_from_json(const Json& j, const std::string& where, const Tolerance& tol = {});

/// {"side", "generators", "images"}: the map is the linear extension of
/// generators[i] -> images[i] to `domain`.
Json to_json(const AlgebraMap& f);
AlgebraMap map_from_json(const Json& j, const StarAlgebra& domain, const std::string& where,
                         const Tolerance& tol = {});

/// Linear map on `domain` with xs[i] -> ys[i]; the xs must span the domain
/// and the assignment must respect their linear relations.
AlgebraMap linear_extension(const StarAlgebra& domain, const std::vector<Matrix>& xs, const std::vector<Matrix>& ys,
                            Side side, const Tolerance& tol = {});

/// {"units", "arrows": [{"id", "src", "tgt"}], "compose": [[g, h, gh], ...]}
/// with arrows referenced by id and units by name (indices are accepted).
Json to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const Json& j, const std::string& where);

Json to_json(const LinkedBase& lb);
LinkedBase linked_base_from_json(const Json& j, std::shared_ptr<const GnsTriple> gns, const std::string& where,
                                 const Tolerance& tol = {});

/// {"kind": "pmu", "state", "reps": {"rho", "sigma", "sigma_hat"}, "V",
///  "coordinate_maps": {"source", "target"}}
Json to_json(const PmuData& p);
PmuData pmu_from_json(const Json& j, const Tolerance& tol = {});

/// {"kind": "hopf", "side": "vn", "state", "A", "Delta", "legs": {"rho", "sigma"},
///  "coordinate_maps": {"space"}}
Json to_json(const HopfData& h);
HopfData hopf_from_json(const Json& j, const Tolerance& tol = {});

/// Non-finite residuals and thresholds are written as null.
Json to_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace qgw::io
