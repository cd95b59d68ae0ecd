#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ditray/partition.hpp"

namespace ditray {

// One column of a basis decomposition, posed as an identification task:
// the black-box function is promised to have its oracle ray in `basis`,
// and the class label is the ClassTable index of the matching ray.
struct PromiseProblem {
    int column = 0;  // 1-based, for display
    std::vector<Ray> basis;
    std::vector<int> class_indices;
    std::vector<long long> promise_set;  // ascending function ids

    static PromiseProblem from_decomposition(const ClassTable& table,
                                             const BasisDecomposition& decomp,
                                             int column, Tolerance tol);
};

struct OutcomeDistribution {
    std::vector<double> probs;
    std::optional<int> sampled_outcome;
    std::uint64_t seed = 0;
};

struct QueryStats {
    long long oracle_calls = 0;
};

// Normalized oracle state for f; the single query to the black box.
CVector prepare_state(const DitFunction& f, const Encoding& enc,
                      QueryStats* stats = nullptr);

// Born-rule projective measurement: probs[i] = |<state, basis[i]>|^2.
// The sampled outcome is drawn from the seeded deterministic stream.
OutcomeDistribution measure(const CVector& state, const std::vector<Ray>& basis,
                            std::uint64_t seed, Tolerance tol);

// One query, one measurement, one label. Throws PromiseViolationError when f
// is outside the promise set.
int identify_class(const DitFunction& f, const PromiseProblem& problem,
                   const Encoding& enc, std::uint64_t seed, Tolerance tol,
                   QueryStats* stats = nullptr);

struct FunctionTally {
    long long function_id = 0;
    int true_class = 0;
    std::map<int, long long> outcome_counts;  // class label -> count
    double accuracy = 0.0;
};

struct ProtocolSummary {
    int column = 0;
    std::uint64_t seed = 0;
    long long trials = 0;
    std::vector<FunctionTally> per_function;
    std::map<int, double> per_class_accuracy;
    double overall_accuracy = 0.0;
    long long oracle_calls = 0;
};

// identify_class over all promised functions x trials; trial generators are
// derived from (seed, run index) so runs are reproducible and independent.
ProtocolSummary run_protocol(const PromiseProblem& problem, const Encoding& enc,
                             long long trials, std::uint64_t seed, Tolerance tol);

}  // namespace ditray
