#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ditray/errors.hpp"

namespace ditray {

using Cx = std::complex<double>;
using CVector = std::vector<Cx>;

// Comparison threshold, carried explicitly through every predicate.
// Two tiers are used across the project: decision() for feasibility
// predicates on arbitrary encodings, reproduction() for checks against
// exact roots of unity.
class Tolerance {
public:
    explicit Tolerance(double value);

    static Tolerance decision() { return Tolerance(1e-9); }
    static Tolerance reproduction() { return Tolerance(1e-12); }

    double value() const { return value_; }

private:
    double value_;
};

// Canonical representative of a nonzero vector modulo nonzero complex
// scalars: unit norm, first significant coordinate real and positive.
// hash_key quantizes the coordinates to a 1e-6 grid for bucketing.
struct Ray {
    CVector unit;
    std::vector<std::int64_t> hash_key;
};

// sum_i u[i] * conj(v[i]); conjugation on the second argument throughout.
Cx inner_product(const CVector& u, const CVector& v);

double norm(const CVector& v);

CVector scaled(const CVector& v, Cx c);

Ray canonicalize_ray(const CVector& v, Tolerance tol);

// Euclidean distance between canonical units.
double ray_distance(const Ray& a, const Ray& b);

bool ray_equal(const Ray& a, const Ray& b, Tolerance tol);

// |<a,b>| on unit representatives; lands in [0, 1 + eps].
double cos_angle(const Ray& a, const Ray& b);

bool is_orthogonal(const Ray& a, const Ray& b, Tolerance tol);

}  // namespace ditray
