#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <type_traits>

#include "ditray/report.hpp"
#include "ditray/search.hpp"
#include "test_util.hpp"

using namespace ditray;
using testutil::alpha;
using testutil::alphabar;

namespace {

const Tolerance kTol = Tolerance::decision();

}  // namespace

TEST_CASE("grid-center parameters give the all-ones encoding, which is inadmissible") {
    const Encoding enc = encoding_from_params({0.0, 0.0, 0.0, 0.0}, 3);
    for (const Cx& value : enc.g) {
        CHECK(std::abs(value - Cx{1.0, 0.0}) < 1e-15);
    }
    CHECK_FALSE(check_admissible(enc, kTol).admissible);
}

TEST_CASE("samples carry 2(d-1) parameters and reconstruct exactly") {
    for (int d : {2, 3, 4}) {
        SeededRng rng(derive_seed(0, 0));
        const EncodingSample sample = sample_encoding(rng, d);
        CHECK(sample.params.size() == static_cast<std::size_t>(2 * (d - 1)));
        const Encoding rebuilt = encoding_from_params(sample.params, d);
        for (int x = 0; x < d; ++x) {
            CHECK(std::abs(rebuilt.g[x] - sample.enc.g[x]) < 1e-12);
        }
        CHECK(std::abs(sample.enc.g[0] - Cx{1.0, 0.0}) < 1e-15);
        for (int j = 1; j < d; ++j) {
            const double mag = std::abs(sample.enc.g[j]);
            CHECK(mag >= 0.1);
            CHECK(mag <= 10.0);
        }
    }
}

TEST_CASE("the seed-0 first sample follows the documented draw order") {
    // Draw order per remaining amplitude: log10 magnitude, then phase.
    SeededRng expected_stream(derive_seed(0, 0));
    const double m1 = expected_stream.uniform(-1.0, 1.0);
    const double p1 = expected_stream.uniform(0.0, 2.0 * std::numbers::pi);
    const double m2 = expected_stream.uniform(-1.0, 1.0);
    const double p2 = expected_stream.uniform(0.0, 2.0 * std::numbers::pi);

    SeededRng rng(derive_seed(0, 0));
    const EncodingSample sample = sample_encoding(rng, 3);
    CHECK(sample.params == std::vector<double>{m1, p1, m2, p2});

    // Frozen stream values; a change here means the generator contract moved.
    REQUIRE(sample.params.size() == 4);
    CHECK(sample.params[0] == doctest::Approx(0.78474832955312412).epsilon(1e-15));
    CHECK(sample.params[1] == doctest::Approx(5.8063402743530803).epsilon(1e-15));
    CHECK(sample.params[2] == doctest::Approx(0.54860228680156009).epsilon(1e-15));
    CHECK(sample.params[3] == doctest::Approx(3.7737902051814323).epsilon(1e-15));
    CHECK(std::abs(sample.enc.g[1] - Cx{5.4122774562651355, -2.7960222111140483}) < 1e-12);
    CHECK(std::abs(sample.enc.g[2] - Cx{-2.8531918130730394, -2.0899228428470877}) < 1e-12);
}

TEST_CASE("min_bases_for_encoding on the reference encodings") {
    const Encoding trit = roots_of_unity_encoding(Alphabet::of_size(3));
    CHECK(min_bases_for_encoding(trit, kTol) == 3);

    const Encoding bit = roots_of_unity_encoding(Alphabet::of_size(2));
    CHECK(min_bases_for_encoding(bit, kTol) == 1);

    SeededRng rng(77);
    Encoding generic;
    for (int k = 0; k < 3; ++k) {
        generic.g.emplace_back(rng.uniform(0.3, 1.0), rng.uniform(-1.0, 1.0));
    }
    REQUIRE(check_admissible(generic, kTol).admissible);
    CHECK_FALSE(min_bases_for_encoding(generic, kTol).has_value());

    Encoding inadmissible;
    inadmissible.g = {Cx{1, 0}, Cx{1, 0}, alpha()};
    CHECK_FALSE(min_bases_for_encoding(inadmissible, kTol).has_value());
}

TEST_CASE("min_bases_for_encoding is invariant under global scaling") {
    const Encoding trit = roots_of_unity_encoding(Alphabet::of_size(3));
    for (const Cx c : {Cx{2.0, 0.0}, Cx{0.0, -0.5}, Cx{1.3, 0.7}}) {
        Encoding scaled_enc;
        for (const Cx& value : trit.g) {
            scaled_enc.g.push_back(c * value);
        }
        CHECK(min_bases_for_encoding(scaled_enc, kTol) == 3);
    }
}

TEST_CASE("proof step checks hold with the expected margins for roots of unity") {
    const Encoding enc = roots_of_unity_encoding(Alphabet::of_size(3));
    const auto results = proof_step_checks(enc, kTol);
    REQUIRE(results.size() == 3);
    CHECK(results[0].step == "a");
    CHECK(results[0].holds);
    CHECK(results[0].margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(results[1].step == "b");
    CHECK(results[1].holds);
    CHECK(results[1].margin == doctest::Approx(1.0).epsilon(1e-12));  // 1 + 1 - 1
    CHECK(results[2].step == "c");
    CHECK(results[2].holds);
    CHECK(results[2].margin == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));  // |1-alpha|
}

TEST_CASE("proof step checks flag zero and coincident values") {
    Encoding zero;
    zero.g = {Cx{1, 0}, Cx{0, 0}, alpha()};
    const auto with_zero = proof_step_checks(zero, kTol);
    CHECK_FALSE(with_zero[0].holds);  // (a) fails
    CHECK(with_zero[1].holds);        // the bound stays positive
    CHECK(with_zero[2].holds);

    Encoding equal;
    equal.g = {Cx{1, 0}, Cx{1, 0}, alpha()};
    const auto with_equal = proof_step_checks(equal, kTol);
    CHECK(with_equal[0].holds);
    CHECK(with_equal[1].holds);
    CHECK_FALSE(with_equal[2].holds);  // (c) fails
}

TEST_CASE("proof step checks are defined for d=3 only") {
    const Encoding bit = roots_of_unity_encoding(Alphabet::of_size(2));
    CHECK_THROWS_AS(proof_step_checks(bit, kTol), UsageError);
}

TEST_CASE("step (b) margin is strictly positive on 1e5 admissible draws") {
    long long admissible = 0;
    for (long long i = 0; i < 100000; ++i) {
        SeededRng rng(derive_seed(1234, i));
        const EncodingSample sample = sample_encoding(rng, 3);
        if (!check_admissible(sample.enc, kTol).admissible) {
            continue;
        }
        ++admissible;
        const auto results = proof_step_checks(sample.enc, kTol);
        CHECK(results[1].holds);
        CHECK(results[1].margin > 0.0);
    }
    CHECK(admissible > 90000);
}

TEST_CASE("the final 3x3 integer system has determinant -9") {
    CHECK(final_system_determinant() == -9);
    static_assert(std::is_same_v<decltype(final_system_determinant()), long long>);
    // Permuting two rows flips the sign.
    CHECK(determinant3({{{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}}) == 9);
}

TEST_CASE("refinement polishes a near-miss of the reference family back to k=3") {
    const Alphabet alphabet = Alphabet::of_size(3);
    const auto functions = enumerate_functions(alphabet);
    // In-gauge reference point: g = (1, alpha, alphabar), phases (2pi/3, 4pi/3).
    const double phase1 = 2.0 * std::numbers::pi / 3.0;
    const double phase2 = 4.0 * std::numbers::pi / 3.0;
    EncodingSample sample;
    sample.params = {0.0, phase1 + 4e-9, 0.0, phase2};
    sample.enc = encoding_from_params(sample.params, 3);

    // Strictly infeasible: the perturbation splits the would-be classes.
    CHECK_FALSE(min_bases_for_encoding(sample.enc, kTol).has_value());

    const auto refined = try_refine(functions, sample, kTol);
    REQUIRE(refined.has_value());
    CHECK(refined->k == 3);
    CHECK(min_bases_for_encoding(refined->polished.enc, kTol) == 3);
}

TEST_CASE("a d=3 scan finds no violations and only k=3 decompositions") {
    const SearchReport report = lower_bound_scan(3, 2000, 7, kTol);
    CHECK(report.d == 3);
    CHECK(report.samples == 2000);
    CHECK(report.violations.empty());
    CHECK(report.feasible_count + report.infeasible_count == 2000);
    CHECK(report.inadmissible_count <= report.infeasible_count);
    if (report.min_k_found.has_value()) {
        CHECK(*report.min_k_found == 3);
    }
    CHECK(report.proof_failures == 0);
    REQUIRE(report.min_step_b_margin.has_value());
    CHECK(*report.min_step_b_margin > 0.0);
}

TEST_CASE("a d=2 scan reaches the balanced encoding through refinement") {
    const SearchReport report = lower_bound_scan(2, 10000, 42, kTol);
    REQUIRE(report.min_k_found.has_value());
    CHECK(*report.min_k_found == 1);
    CHECK(report.refined_count >= 1);
    CHECK(report.violations.empty());  // violations are a d=3 notion
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->k == 1);
    // The witness must sit at the balanced point: g[1] = -1 up to tolerance.
    CHECK(std::abs(report.witness->sample.enc.g[1] - Cx{-1.0, 0.0}) < 1e-6);
}

TEST_CASE("scans with identical inputs serialize identically") {
    const SearchReport a = lower_bound_scan(3, 500, 99, kTol);
    const SearchReport b = lower_bound_scan(3, 500, 99, kTol);
    CHECK(search_report_json(a).dump() == search_report_json(b).dump());
}

TEST_CASE("single inadmissible draw counts as infeasible") {
    // Hunt for a seed whose first d=3 sample is inadmissible is brittle;
    // instead check the accounting identity over a small scan.
    const SearchReport report = lower_bound_scan(3, 50, 3, kTol);
    CHECK(report.feasible_count + report.infeasible_count == 50);
    CHECK(report.inadmissible_count <= report.infeasible_count);
}

TEST_CASE("conjecture probe reports the roots-of-unity structure per d") {
    const SearchReport d2 = conjecture_probe(2, 200, 5, kTol);
    REQUIRE(d2.roots_of_unity.has_value());
    CHECK(d2.roots_of_unity->ray_count == 2);
    CHECK(d2.roots_of_unity->k == 1);
    CHECK(d2.roots_of_unity->is_mub == true);  // vacuous: single basis

    const SearchReport d3 = conjecture_probe(3, 200, 5, kTol);
    REQUIRE(d3.roots_of_unity.has_value());
    CHECK(d3.roots_of_unity->ray_count == 9);
    CHECK(d3.roots_of_unity->k == 3);
    CHECK(d3.roots_of_unity->is_mub == true);

    const SearchReport d4 = conjecture_probe(4, 20, 5, kTol);
    REQUIRE(d4.roots_of_unity.has_value());
    // Exploratory: assert internal consistency, not a preordained k.
    CHECK(d4.roots_of_unity->ray_count == 256 / 4);
    if (d4.roots_of_unity->k.has_value()) {
        CHECK(*d4.roots_of_unity->k == d4.roots_of_unity->ray_count / 4);
    }
}

TEST_CASE("d=4 probe ray count agrees with an independent brute count") {
    const Alphabet alphabet = Alphabet::of_size(4);
    const Encoding enc = roots_of_unity_encoding(alphabet);
    std::vector<CVector> representatives;
    for (const DitFunction& f : enumerate_functions(alphabet)) {
        const CVector v = oracle_vector(f, enc).v;
        bool found = false;
        for (const CVector& rep : representatives) {
            if (testutil::same_ray_brute(rep, v)) {
                found = true;
                break;
            }
        }
        if (!found) {
            representatives.push_back(v);
        }
    }
    CHECK(representatives.size() == 64);
}

TEST_CASE("conjecture probe rejects out-of-range d") {
    CHECK_THROWS_AS(conjecture_probe(5, 10, 1, kTol), ResourceLimitError);
    CHECK_THROWS_AS(conjecture_probe(1, 10, 1, kTol), ResourceLimitError);
}
