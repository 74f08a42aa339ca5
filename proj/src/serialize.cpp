#include "fixpoint/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace fixpoint {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

Json real_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

double real_from_json(const Json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw SchemaError(std::string(what) + ": expected a number");
}

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real_json(v[i]));
    return a;
}

Vector vector_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw SchemaError(std::string(what) + ": expected a nonempty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = real_from_json(j[i], what);
    return v;
}

Json points_json(const Points& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(vector_json(p));
    return a;
}

Points points_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array of points");
    Points out;
    for (const auto& p : j) out.push_back(vector_from_json(p, what));
    return out;
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError(std::string(what) + ": unknown key \"" + key + "\"");
    }
}

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw SchemaError(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

double real_field(const Json& j, const char* key, const char* what) {
    return real_from_json(field(j, key, what), what);
}

} // namespace

Json set_json(const SetSpec& s) {
    Json j;
    j["variant"] = std::string(s.name());
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Halfspace>) {
                j["normal"] = vector_json(v.normal);
                j["offset"] = real_json(v.offset);
            } else if constexpr (std::is_same_v<T, AffineSubspace>) {
                j["point"] = vector_json(v.point);
                j["basis"] = points_json(v.basis);
            } else if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Sphere>) {
                j["center"] = vector_json(v.center);
                j["radius"] = real_json(v.radius);
            } else if constexpr (std::is_same_v<T, Box>) {
                j["lo"] = vector_json(v.lo);
                j["hi"] = vector_json(v.hi);
            } else if constexpr (std::is_same_v<T, FinitePointSet>) {
                j["points"] = points_json(v.points);
            } else if constexpr (std::is_same_v<T, PiecewiseCurve>) {
                Json pieces = Json::array();
                for (const auto& piece : v.pieces) {
                    Json p;
                    if (const auto* seg = std::get_if<Segment>(&piece)) {
                        p["kind"] = "segment";
                        p["from"] = vector_json(seg->from);
                        p["to"] = vector_json(seg->to);
                    } else {
                        const auto& par = std::get<Parabola>(piece);
                        p["kind"] = "parabola";
                        p["a"] = par.a;
                        p["b"] = par.b;
                        p["c"] = par.c;
                        p["t0"] = par.t0;
                        p["t1"] = par.t1;
                    }
                    pieces.push_back(std::move(p));
                }
                j["pieces"] = std::move(pieces);
            } else if constexpr (std::is_same_v<T, Epigraph>) {
                j["breakpoints"] = v.breakpoints;
                Json pieces = Json::array();
                for (const auto& q : v.pieces) pieces.push_back({{"a", q.a}, {"b", q.b}, {"c", q.c}});
                j["pieces"] = std::move(pieces);
                j["convex"] = v.convex;
            } else if constexpr (std::is_same_v<T, Union>) {
                Json members = Json::array();
                for (const auto& m : v.members) members.push_back(set_json(m));
                j["members"] = std::move(members);
            } else {
                j["dim"] = v.dim;
            }
        },
        s.variant());
    return j;
}

SetSpec set_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("set: expected an object");
    const auto& vj = field(j, "variant", "set");
    if (!vj.is_string()) throw SchemaError("set: \"variant\" must be a string");
    const auto v = vj.get<std::string>();
    const char* w = "set";
    if (v == "halfspace") {
        reject_unknown_keys(j, {"variant", "normal", "offset"}, "halfspace");
        return SetSpec::halfspace(vector_from_json(field(j, "normal", w), "halfspace normal"),
                                  real_field(j, "offset", "halfspace"));
    }
    if (v == "affine_subspace") {
        reject_unknown_keys(j, {"variant", "point", "basis"}, "affine_subspace");
        const Vector p = vector_from_json(field(j, "point", w), "affine point");
        const Points dirs = j.contains("basis") ? points_from_json(j.at("basis"), "affine basis") : Points{};
        // an orthonormal basis is kept as written so that files round-trip exactly
        try {
            return SetSpec::affine(p, dirs);
        } catch (const InvariantError&) {
            return SetSpec::affine_span(p, dirs);
        }
    }
    if (v == "ball" || v == "sphere") {
        reject_unknown_keys(j, {"variant", "center", "radius"}, v.c_str());
        Vector c = vector_from_json(field(j, "center", w), "center");
        const double r = real_field(j, "radius", v.c_str());
        return v == "ball" ? SetSpec::ball(std::move(c), r) : SetSpec::sphere(std::move(c), r);
    }
    if (v == "box") {
        reject_unknown_keys(j, {"variant", "lo", "hi"}, "box");
        return SetSpec::box(vector_from_json(field(j, "lo", w), "box lo"),
                            vector_from_json(field(j, "hi", w), "box hi"));
    }
    if (v == "finite_point_set") {
        reject_unknown_keys(j, {"variant", "points"}, "finite_point_set");
        return SetSpec::points(points_from_json(field(j, "points", w), "finite_point_set"));
    }
    if (v == "piecewise_curve") {
        reject_unknown_keys(j, {"variant", "pieces"}, "piecewise_curve");
        std::vector<CurvePiece> pieces;
        for (const auto& p : field(j, "pieces", w)) {
            const auto kind = field(p, "kind", "curve piece").get<std::string>();
            if (kind == "segment") {
                reject_unknown_keys(p, {"kind", "from", "to"}, "segment");
                pieces.push_back(Segment{vector_from_json(field(p, "from", "segment"), "segment from"),
                                         vector_from_json(field(p, "to", "segment"), "segment to")});
            } else if (kind == "parabola") {
                reject_unknown_keys(p, {"kind", "a", "b", "c", "t0", "t1"}, "parabola");
                pieces.push_back(Parabola{real_field(p, "a", "parabola"), real_field(p, "b", "parabola"),
                                          real_field(p, "c", "parabola"), real_field(p, "t0", "parabola"),
                                          real_field(p, "t1", "parabola")});
            } else {
                throw SchemaError("curve piece: unknown kind \"" + kind + "\"");
            }
        }
        return SetSpec::curve(std::move(pieces));
    }
    if (v == "epigraph") {
        reject_unknown_keys(j, {"variant", "breakpoints", "pieces", "convex"}, "epigraph");
        std::vector<double> bps;
        for (const auto& b : field(j, "breakpoints", w)) bps.push_back(real_from_json(b, "breakpoint"));
        std::vector<Quadratic> qs;
        for (const auto& q : field(j, "pieces", w)) {
            reject_unknown_keys(q, {"a", "b", "c"}, "epigraph piece");
            qs.push_back({q.value("a", 0.0), q.value("b", 0.0), q.value("c", 0.0)});
        }
        return SetSpec::epigraph(std::move(bps), std::move(qs), j.value("convex", false));
    }
    if (v == "union") {
        reject_unknown_keys(j, {"variant", "members"}, "union");
        std::vector<SetSpec> members;
        for (const auto& m : field(j, "members", w)) members.push_back(set_from_json(m));
        return SetSpec::set_union(std::move(members));
    }
    if (v == "whole_space") {
        reject_unknown_keys(j, {"variant", "dim"}, "whole_space");
        return SetSpec::whole(field(j, "dim", w).get<Eigen::Index>());
    }
    throw SchemaError("set: unknown variant \"" + v + "\"");
}

Json lambda_json(const Lambda& l) {
    if (l.is_whole()) return "whole";
    return set_json(*l.subspace());
}

Lambda lambda_from_json(const Json& j, Eigen::Index dim) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "whole")) return Lambda::whole();
    SetSpec s = set_from_json(j);
    if (s.dim() != dim) throw DimensionError("lambda: dimension mismatch");
    if (std::holds_alternative<WholeSpace>(s.variant())) return Lambda::whole();
    return Lambda::affine(std::move(s));
}

Json trace_json(const Trace& t) {
    Json j;
    j["seed"] = vector_json(t.seed);
    j["stop_reason"] = std::string(to_string(t.stop_reason));
    j["iterations"] = t.x.size() - 1;
    j["x"] = points_json(t.x);
    j["b"] = points_json(t.b);
    j["z"] = points_json(t.z);
    auto reals = [](const std::vector<double>& v) {
        Json a = Json::array();
        for (double d : v) a.push_back(real_json(d));
        return a;
    };
    j["dist_A"] = reals(t.dist_A);
    j["dist_B"] = reals(t.dist_B);
    j["dist_target"] = reals(t.dist_target);
    j["residual"] = reals(t.residual);
    return j;
}

std::string trace_csv(const Trace& t) {
    const Eigen::Index d = t.x.empty() ? 0 : t.x.front().size();
    std::string out = "k";
    for (Eigen::Index i = 0; i < d; ++i) out += ",x_" + std::to_string(i);
    for (Eigen::Index i = 0; i < d; ++i) out += ",b_" + std::to_string(i);
    out += ",dist_A,dist_B,dist_target,step_norm,residual\n";
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        out += std::to_string(k);
        for (Eigen::Index i = 0; i < d; ++i) out += "," + format_double(t.x[k][i]);
        for (Eigen::Index i = 0; i < d; ++i)
            out += "," + (k < t.b.size() ? format_double(t.b[k][i]) : std::string("nan"));
        const double step = k == 0 ? std::numeric_limits<double>::quiet_NaN() : (t.x[k] - t.x[k - 1]).norm();
        for (double v : {t.dist_A[k], t.dist_B[k], t.dist_target[k], step, t.residual[k]})
            out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

Json estimate_json(const RegularityEstimate& e) {
    Json j;
    j["kind"] = std::string(to_string(e.kind));
    j["value"] = real_json(e.value);
    j["base_point"] = vector_json(e.base_point);
    j["delta"] = real_json(e.delta);
    j["lambda"] = lambda_json(e.lambda);
    j["degenerate"] = e.degenerate;
    j["argmax"] = e.argmax ? vector_json(*e.argmax) : Json(nullptr);
    j["certificate"] = {{"seed", e.certificate.seed},
                        {"count", e.certificate.count},
                        {"grid_spacing", real_json(e.certificate.grid_spacing)}};
    return j;
}

Json rate_json(const RateEstimate& r) {
    Json j;
    j["kind"] = r.kind == RateKind::Q ? "Q" : "R";
    j["c"] = real_json(r.c);
    if (r.kind == RateKind::R) j["gamma"] = real_json(r.gamma);
    j["limit"] = vector_json(r.limit);
    j["valid_from"] = r.valid_from;
    j["window_end"] = r.window_end;
    return j;
}

Json monotonicity_json(const MonotonicityReport& r) {
    return {{"linear_c", real_json(r.linear_c)},
            {"monotone", r.monotone},
            {"degenerate", r.degenerate},
            {"exact_omega", r.exact_omega},
            {"probe_size", r.probe_size}};
}

Json extendibility_json(const ExtendibilityReport& r) {
    Json j{{"m", r.m}, {"c", real_json(r.c)}, {"holds", r.holds}, {"d0", real_json(r.d0)}};
    j["gamma"] = r.holds ? real_json(r.gamma) : Json(nullptr);
    j["failing_index"] = r.failing_index ? Json(*r.failing_index) : Json(nullptr);
    return j;
}

Json dichotomy_json(const DichotomyReport& r) {
    Json j{{"kind", std::string(to_string(r.kind))}, {"c", real_json(r.c)}, {"bound_holds", r.bound_holds}};
    j["failing_index"] = r.failing_index ? Json(*r.failing_index) : Json(nullptr);
    return j;
}

} // namespace fixpoint
