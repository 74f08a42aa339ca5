#include "fixpoint/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fixpoint {

Vector make_vector(std::initializer_list<double> coords) {
    Vector v(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) v[i++] = c;
    return v;
}

Vector make_vector(const std::vector<double>& coords) {
    return Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, const char* what) {
    if (v.size() == 0) throw InvariantError(std::string(what) + ": empty vector");
    if (!v.allFinite()) throw InvariantError(std::string(what) + ": non-finite coordinate");
}

void require_dim(const Vector& v, Eigen::Index dim, const char* what) {
    if (v.size() != dim) {
        std::ostringstream os;
        os << what << ": expected dimension " << dim << ", got " << v.size();
        throw DimensionError(os.str());
    }
}

bool lex_less(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

Points sorted_unique(Points points, double identical) {
    std::sort(points.begin(), points.end(), lex_less);
    Points out;
    out.reserve(points.size());
    for (auto& p : points) {
        bool seen = std::any_of(out.begin(), out.end(),
                                [&](const Vector& q) { return (p - q).norm() <= identical; });
        if (!seen) out.push_back(std::move(p));
    }
    return out;
}

double pair_norm(const Vector& a, const Vector& b) { return std::hypot(a.norm(), b.norm()); }

std::string to_string(const Vector& v) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ')';
    return os.str();
}

} // namespace fixpoint
