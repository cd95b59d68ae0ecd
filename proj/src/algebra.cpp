#include "ditray/algebra.hpp"

#include <cmath>
#include <sstream>

namespace ditray {

Tolerance::Tolerance(double value) : value_(value) {
    if (!(value > 0.0) || !(value < 1e-3)) {
        std::ostringstream msg;
        msg << "tolerance must lie in (0, 1e-3), got " << value;
        throw UsageError(msg.str());
    }
}

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw UsageError(msg.str());
    }
}

constexpr double kHashGrid = 1e-6;

std::vector<std::int64_t> quantize(const CVector& unit) {
    std::vector<std::int64_t> key;
    key.reserve(2 * unit.size());
    for (const Cx& x : unit) {
        key.push_back(std::llround(x.real() / kHashGrid));
        key.push_back(std::llround(x.imag() / kHashGrid));
    }
    return key;
}

}  // namespace

Cx inner_product(const CVector& u, const CVector& v) {
    require_same_dimension(u.size(), v.size(), "inner_product");
    Cx acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += u[i] * std::conj(v[i]);
    }
    return acc;
}

double norm(const CVector& v) {
    double sum = 0.0;
    for (const Cx& x : v) {
        sum += std::norm(x);
    }
    return std::sqrt(sum);
}

CVector scaled(const CVector& v, Cx c) {
    CVector out(v);
    for (Cx& x : out) {
        x *= c;
    }
    return out;
}

Ray canonicalize_ray(const CVector& v, Tolerance tol) {
    const double n = norm(v);
    if (!(n > tol.value())) {
        throw ZeroVectorError("cannot canonicalize a (near-)zero vector");
    }
    Ray ray;
    ray.unit = scaled(v, Cx{1.0 / n, 0.0});
    for (const Cx& x : ray.unit) {
        const double mag = std::abs(x);
        if (mag > tol.value()) {
            // Rotate so this coordinate is real and positive; earlier
            // coordinates are below tol and stay below it.
            ray.unit = scaled(ray.unit, std::conj(x) / mag);
            break;
        }
    }
    ray.hash_key = quantize(ray.unit);
    return ray;
}

double ray_distance(const Ray& a, const Ray& b) {
    require_same_dimension(a.unit.size(), b.unit.size(), "ray_distance");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.unit.size(); ++i) {
        sum += std::norm(a.unit[i] - b.unit[i]);
    }
    return std::sqrt(sum);
}

bool ray_equal(const Ray& a, const Ray& b, Tolerance tol) {
    return ray_distance(a, b) < tol.value();
}

double cos_angle(const Ray& a, const Ray& b) {
    return std::abs(inner_product(a.unit, b.unit));
}

bool is_orthogonal(const Ray& a, const Ray& b, Tolerance tol) {
    return cos_angle(a, b) < tol.value();
}

}  // namespace ditray
