#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ditray/partition.hpp"
#include "ditray/rng.hpp"

namespace ditray {

// Encoding in the g[0] = 1 gauge, together with its free coordinates:
// per remaining amplitude a log10-magnitude in [-1, 1] and a phase in
// [0, 2 pi), i.e. 2(d-1) reals. Reconstructing from params reproduces enc.
struct EncodingSample {
    Encoding enc;
    std::vector<double> params;
};

EncodingSample sample_encoding(SeededRng& rng, int d);
Encoding encoding_from_params(const std::vector<double>& params, int d);

// none when the encoding is inadmissible or its rays do not partition into
// orthogonal d-tuples; otherwise the forced basis count (rays / d).
std::optional<int> min_bases_for_encoding(const Encoding& enc, Tolerance tol);

struct ProofStepResult {
    std::string step;  // "a", "b", "c"
    std::string description;
    bool holds = false;
    double margin = 0.0;  // distance from violating the step's inequality
};

// The three algebraic steps behind the d=3 lower bound, as inequalities:
//   (a) every encoding value nonzero,
//   (b) adjacent oracle vectors (g(x),g(x),g(y)) and (g(x),g(y),g(y)) are
//       never orthogonal: |<u,v>| >= |g(x)|^2 + |g(y)|^2 - |g(x)||g(y)| > 0,
//   (c) encoding values pairwise distinct.
std::vector<ProofStepResult> proof_step_checks(const Encoding& enc, Tolerance tol);

long long determinant3(const std::array<std::array<long long, 3>, 3>& m);

// Determinant of the integer system {2a+b=0, a+2c=0, 2b+c=0} in the unknown
// encoding values; being nonzero certifies that only the zero solution exists.
long long final_system_determinant();

struct ViolationRecord {
    long long sample_index = 0;
    EncodingSample sample;  // polished parameters when refined
    int k = 0;
    bool refined = false;
};

struct RootsOfUnitySummary {
    int d = 0;
    int ray_count = 0;
    std::optional<int> k;
    std::optional<bool> is_mub;
};

struct SearchReport {
    int d = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::string generator = "mt19937_64";
    double log10_mag_min = -1.0;
    double log10_mag_max = 1.0;
    std::optional<int> min_k_found;
    long long feasible_count = 0;
    long long infeasible_count = 0;
    long long inadmissible_count = 0;  // subset of infeasible_count
    long long refined_count = 0;       // subset of feasible_count
    std::vector<ViolationRecord> violations;  // k <= 2 at d=3; expected empty
    std::optional<ViolationRecord> witness;   // sample achieving min_k_found
    long long proof_failures = 0;             // d=3 admissible samples only
    std::optional<double> min_step_b_margin;  // d=3 only
    std::optional<RootsOfUnitySummary> roots_of_unity;  // probe only
};

struct RefinedResult {
    EncodingSample polished;
    int k = 0;
};

// Near-feasibility refinement: re-group and re-decompose at a ladder of
// relaxed thresholds; when a relaxed structure exists, polish the sample's
// parameters by coordinate descent against that frozen structure and
// re-evaluate at the strict tolerance. Only strict-tolerance successes are
// reported, so refinement can add feasible findings but never fake them.
std::optional<RefinedResult> try_refine(const std::vector<DitFunction>& functions,
                                        const EncodingSample& sample, Tolerance tol);

// Seeded scan over random encodings; sample i uses the substream
// derive_seed(seed, i), so reports are reproducible and mergeable by index.
SearchReport lower_bound_scan(int d, long long samples, std::uint64_t seed, Tolerance tol);

// lower_bound_scan plus a summary of the roots-of-unity encoding at d;
// d restricted to {2, 3, 4}.
SearchReport conjecture_probe(int d, long long samples, std::uint64_t seed, Tolerance tol);

}  // namespace ditray
