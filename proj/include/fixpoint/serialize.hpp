#pragma once

// JSON and CSV forms of sets, Λ, traces and estimates.
//
// SetSpec JSON: {"variant": "<name>", ...fields}, unknown keys rejected.
//   halfspace        {"normal": [..], "offset": r}
//   affine_subspace  {"point": [..], "basis": [[..], ..]}   (basis orthonormalized)
//   ball, sphere     {"center": [..], "radius": r}
//   box              {"lo": [..], "hi": [..]}
//   finite_point_set {"points": [[..], ..]}
//   piecewise_curve  {"pieces": [{"kind": "segment", "from": [..], "to": [..]}
//                               | {"kind": "parabola", "a","b","c","t0","t1"}]}
//   epigraph         {"breakpoints": [..], "pieces": [{"a","b","c"}, ..], "convex": bool}
//   union            {"members": [<set>, ..]}
//   whole_space      {"dim": n}
// Non-finite reals are written as the strings "inf", "-inf" and "nan".

#include "fixpoint/diagnostics.hpp"
#include "fixpoint/regularity.hpp"

#include <json.hpp>

#include <string>

namespace fixpoint {

using Json = nlohmann::ordered_json;

/// Thrown for JSON that parses but does not describe a valid object.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

Json real_json(double v);
double real_from_json(const Json& j, const char* what);
Json vector_json(const Vector& v);
Vector vector_from_json(const Json& j, const char* what);
Json points_json(const Points& pts);
Points points_from_json(const Json& j, const char* what);

/// Throws SchemaError if `j` has a key outside `allowed`.
void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what);

Json set_json(const SetSpec& s);
SetSpec set_from_json(const Json& j);

Json lambda_json(const Lambda& l);
Lambda lambda_from_json(const Json& j, Eigen::Index dim);

Json trace_json(const Trace& t);
/// Columns k, x_i, b_i, dist_A, dist_B, dist_target, step_norm, residual.
std::string trace_csv(const Trace& t);

Json estimate_json(const RegularityEstimate& e);
Json rate_json(const RateEstimate& r);
Json monotonicity_json(const MonotonicityReport& r);
Json extendibility_json(const ExtendibilityReport& r);
Json dichotomy_json(const DichotomyReport& r);

} // namespace fixpoint
