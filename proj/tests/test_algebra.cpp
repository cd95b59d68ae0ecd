#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ditray/algebra.hpp"
#include "test_util.hpp"

using namespace ditray;
using testutil::alpha;
using testutil::alphabar;

TEST_CASE("inner product on disjoint support vanishes") {
    const CVector u{{1, 0}, {0, 0}, {0, 0}};
    const CVector v{{0, 0}, {1, 0}, {0, 0}};
    CHECK(std::abs(inner_product(u, v)) == 0.0);
}

TEST_CASE("inner product reproduces alpha + alphabar = -1 orthogonality") {
    const CVector u{{1, 0}, {1, 0}, {1, 0}};
    const CVector v{{1, 0}, alpha(), alphabar()};
    // <u,v> = 1 + conj(alpha) + conj(alphabar) = 1 + alphabar + alpha = 0
    CHECK(std::abs(inner_product(u, v)) < 1e-12);
}

TEST_CASE("inner product of (1,1,1) and (1,1,alpha) is 2 + alphabar") {
    const CVector u{{1, 0}, {1, 0}, {1, 0}};
    const CVector v{{1, 0}, {1, 0}, alpha()};
    const Cx expected = Cx{2.0, 0.0} + alphabar();
    const Cx got = inner_product(u, v);
    CHECK(std::abs(got - expected) < 1e-12);
    CHECK(std::abs(got) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    const double normalized = std::abs(got) / (norm(u) * norm(v));
    CHECK(normalized == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("inner product rejects mismatched dimensions") {
    const CVector u{{1, 0}, {0, 0}};
    const CVector v{{1, 0}, {0, 0}, {0, 0}};
    CHECK_THROWS_AS(inner_product(u, v), UsageError);
}

TEST_CASE("inner product is conjugate symmetric on random pairs") {
    SeededRng rng(11);
    for (int i = 0; i < 200; ++i) {
        const CVector u = testutil::random_vector(rng, 3);
        const CVector v = testutil::random_vector(rng, 3);
        CHECK(std::abs(inner_product(u, v) - std::conj(inner_product(v, u))) < 1e-12);
    }
}

TEST_CASE("Cauchy-Schwarz holds on random vectors") {
    SeededRng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const CVector u = testutil::random_vector(rng, 4);
        const CVector v = testutil::random_vector(rng, 4);
        CHECK(std::abs(inner_product(u, v)) <= norm(u) * norm(v) + 1e-12);
    }
}

TEST_CASE("canonicalize_ray maps (abar,abar,abar) to (1,1,1)/sqrt(3)") {
    const Ray ray = canonicalize_ray({alphabar(), alphabar(), alphabar()}, Tolerance::decision());
    const double s = 1.0 / std::sqrt(3.0);
    for (const Cx& x : ray.unit) {
        CHECK(std::abs(x - Cx{s, 0.0}) < 1e-12);
    }
}

TEST_CASE("canonicalize_ray removes phase and scale from (0,0,2i)") {
    const Ray ray = canonicalize_ray({{0, 0}, {0, 0}, {0, 2}}, Tolerance::decision());
    CHECK(std::abs(ray.unit[0]) < 1e-12);
    CHECK(std::abs(ray.unit[1]) < 1e-12);
    CHECK(std::abs(ray.unit[2] - Cx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("canonicalize_ray maps (abar,abar,1) to (1,1,alpha)/sqrt(3)") {
    const Ray ray = canonicalize_ray({alphabar(), alphabar(), {1, 0}}, Tolerance::decision());
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(ray.unit[0] - Cx{s, 0.0}) < 1e-12);
    CHECK(std::abs(ray.unit[1] - Cx{s, 0.0}) < 1e-12);
    CHECK(std::abs(ray.unit[2] - alpha() * s) < 1e-12);
}

TEST_CASE("canonicalize_ray rejects (near-)zero vectors") {
    CHECK_THROWS_AS(canonicalize_ray({{0, 0}, {0, 0}}, Tolerance::decision()), ZeroVectorError);
    CHECK_THROWS_AS(canonicalize_ray({{1e-15, 0}, {0, 0}}, Tolerance::decision()),
                    ZeroVectorError);
}

TEST_CASE("ray invariants: unit norm and positive real leading coordinate") {
    SeededRng rng(13);
    for (int i = 0; i < 500; ++i) {
        const Ray ray = canonicalize_ray(testutil::random_vector(rng, 3), Tolerance::decision());
        CHECK(std::abs(norm(ray.unit) - 1.0) < 1e-12);
        for (const Cx& x : ray.unit) {
            if (std::abs(x) > 1e-9) {
                CHECK(x.real() > 0.0);
                CHECK(std::abs(x.imag()) < 1e-9);
                break;
            }
        }
    }
}

TEST_CASE("canonicalization is idempotent") {
    SeededRng rng(14);
    for (int i = 0; i < 500; ++i) {
        const Ray ray = canonicalize_ray(testutil::random_vector(rng, 3), Tolerance::decision());
        const Ray again = canonicalize_ray(ray.unit, Tolerance::decision());
        CHECK(ray_distance(ray, again) < 1e-12);
    }
}

TEST_CASE("canonical rays are invariant under nonzero scaling") {
    SeededRng rng(15);
    const Tolerance tol = Tolerance::decision();
    for (int i = 0; i < 10000; ++i) {
        const CVector v = testutil::random_vector(rng, 3);
        if (norm(v) < 1e-3) {
            continue;
        }
        const Cx c = std::polar(std::pow(10.0, rng.uniform(-2.0, 2.0)),
                                rng.uniform(0.0, 6.283185307179586));
        CHECK(ray_equal(canonicalize_ray(v, tol), canonicalize_ray(scaled(v, c), tol), tol));
    }
}

TEST_CASE("cos_angle basics") {
    const Tolerance tol = Tolerance::decision();
    const Ray r1 = canonicalize_ray({{1, 0}, {1, 0}, {1, 0}}, tol);
    const Ray r2 = canonicalize_ray({{1, 0}, alpha(), alphabar()}, tol);
    const Ray r3 = canonicalize_ray({{1, 0}, {1, 0}, alpha()}, tol);
    CHECK(cos_angle(r1, r1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cos_angle(r1, r2) < 1e-12);
    CHECK(cos_angle(r1, r3) == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("is_orthogonal matches the reference pairs") {
    const Tolerance tol = Tolerance::decision();
    const Ray e0 = canonicalize_ray({{1, 0}, {0, 0}, {0, 0}}, tol);
    const Ray e1 = canonicalize_ray({{0, 0}, {1, 0}, {0, 0}}, tol);
    CHECK(is_orthogonal(e0, e1, tol));
    const Ray ones = canonicalize_ray({{1, 0}, {1, 0}, {1, 0}}, tol);
    const Ray col1 = canonicalize_ray({{1, 0}, alphabar(), alpha()}, tol);
    CHECK(is_orthogonal(ones, col1, tol));
    const Ray shifted = canonicalize_ray({alpha(), {1, 0}, {1, 0}}, tol);
    CHECK_FALSE(is_orthogonal(ones, shifted, tol));
    CHECK(cos_angle(ones, shifted) == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("tolerance must lie in (0, 1e-3)") {
    CHECK_THROWS_AS(Tolerance(0.0), UsageError);
    CHECK_THROWS_AS(Tolerance(-1e-6), UsageError);
    CHECK_THROWS_AS(Tolerance(1e-3), UsageError);
    CHECK_THROWS_AS(Tolerance(0.5), UsageError);
    CHECK_NOTHROW(Tolerance(1e-20));
    CHECK_NOTHROW(Tolerance(1e-9));
}
