#include "ditray/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ditray/rng.hpp"

namespace ditray {

PromiseProblem PromiseProblem::from_decomposition(const ClassTable& table,
                                                  const BasisDecomposition& decomp,
                                                  int column, Tolerance tol) {
    if (!decomp.feasible) {
        throw UsageError("promise problems require a feasible basis decomposition");
    }
    if (column < 1 || column > decomp.k) {
        std::ostringstream msg;
        msg << "column must lie in 1.." << decomp.k << ", got " << column;
        throw UsageError(msg.str());
    }
    PromiseProblem problem;
    problem.column = column;
    for (int class_index : decomp.bases[column - 1]) {
        const RayClass& cls = table.classes[class_index];
        problem.basis.push_back(cls.ray);
        problem.class_indices.push_back(class_index);
        problem.promise_set.insert(problem.promise_set.end(), cls.members.begin(),
                                   cls.members.end());
    }
    std::sort(problem.promise_set.begin(), problem.promise_set.end());
    for (std::size_t i = 0; i < problem.basis.size(); ++i) {
        for (std::size_t j = i + 1; j < problem.basis.size(); ++j) {
            if (!is_orthogonal(problem.basis[i], problem.basis[j], tol)) {
                throw UsageError("promise basis rays are not pairwise orthogonal");
            }
        }
    }
    return problem;
}

CVector prepare_state(const DitFunction& f, const Encoding& enc, QueryStats* stats) {
    const Admissibility adm = check_admissible(enc, Tolerance::decision());
    if (!adm.admissible) {
        throw InadmissibleEncodingError(adm.violation);
    }
    if (stats != nullptr) {
        ++stats->oracle_calls;
    }
    const OracleVector oracle = oracle_vector(f, enc);
    const double n = norm(oracle.v);
    return scaled(oracle.v, Cx{1.0 / n, 0.0});
}

OutcomeDistribution measure(const CVector& state, const std::vector<Ray>& basis,
                            std::uint64_t seed, Tolerance tol) {
    if (basis.size() != state.size()) {
        std::ostringstream msg;
        msg << "measurement basis must contain " << state.size() << " rays, got "
            << basis.size();
        throw UsageError(msg.str());
    }
    if (std::abs(norm(state) - 1.0) > tol.value()) {
        throw UsageError("measured state must have unit norm");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!is_orthogonal(basis[i], basis[j], tol)) {
                throw UsageError("measurement basis is not orthonormal within tolerance");
            }
        }
    }
    OutcomeDistribution out;
    out.seed = seed;
    out.probs.reserve(basis.size());
    for (const Ray& b : basis) {
        out.probs.push_back(std::norm(inner_product(state, b.unit)));
    }
    SeededRng rng(seed);
    const double u = rng.uniform01();
    double cumulative = 0.0;
    int outcome = static_cast<int>(basis.size()) - 1;
    for (std::size_t i = 0; i < out.probs.size(); ++i) {
        cumulative += out.probs[i];
        if (u < cumulative) {
            outcome = static_cast<int>(i);
            break;
        }
    }
    out.sampled_outcome = outcome;
    return out;
}

int identify_class(const DitFunction& f, const PromiseProblem& problem, const Encoding& enc,
                   std::uint64_t seed, Tolerance tol, QueryStats* stats) {
    if (!std::binary_search(problem.promise_set.begin(), problem.promise_set.end(), f.id)) {
        std::ostringstream msg;
        msg << "function id " << f.id << " is outside the promise set of column "
            << problem.column;
        throw PromiseViolationError(msg.str());
    }
    const CVector state = prepare_state(f, enc, stats);
    const OutcomeDistribution outcome = measure(state, problem.basis, seed, tol);
    return problem.class_indices[*outcome.sampled_outcome];
}

namespace {

int true_class_of(const DitFunction& f, const PromiseProblem& problem, const Encoding& enc,
                  Tolerance tol) {
    const Ray ray = canonicalize_ray(oracle_vector(f, enc).v, tol);
    for (std::size_t i = 0; i < problem.basis.size(); ++i) {
        if (ray_equal(problem.basis[i], ray, tol)) {
            return problem.class_indices[i];
        }
    }
    throw UsageError("promised function's oracle ray does not match any basis ray");
}

}  // namespace

ProtocolSummary run_protocol(const PromiseProblem& problem, const Encoding& enc,
                             long long trials, std::uint64_t seed, Tolerance tol) {
    if (trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    ProtocolSummary summary;
    summary.column = problem.column;
    summary.seed = seed;
    summary.trials = trials;

    QueryStats stats;
    std::map<int, long long> class_correct;
    std::map<int, long long> class_total;
    long long correct_runs = 0;

    for (std::size_t index = 0; index < problem.promise_set.size(); ++index) {
        const DitFunction f =
            DitFunction::from_id(problem.promise_set[index], enc.dimension());
        FunctionTally tally;
        tally.function_id = f.id;
        tally.true_class = true_class_of(f, problem, enc, tol);
        long long correct = 0;
        for (long long t = 0; t < trials; ++t) {
            const std::uint64_t run_seed =
                derive_seed(seed, static_cast<std::uint64_t>(index) *
                                          static_cast<std::uint64_t>(trials) +
                                      static_cast<std::uint64_t>(t));
            const int label = identify_class(f, problem, enc, run_seed, tol, &stats);
            ++tally.outcome_counts[label];
            if (label == tally.true_class) {
                ++correct;
            }
        }
        tally.accuracy = static_cast<double>(correct) / static_cast<double>(trials);
        class_correct[tally.true_class] += correct;
        class_total[tally.true_class] += trials;
        correct_runs += correct;
        summary.per_function.push_back(std::move(tally));
    }

    for (const auto& [label, total] : class_total) {
        summary.per_class_accuracy[label] =
            static_cast<double>(class_correct[label]) / static_cast<double>(total);
    }
    const long long total_runs =
        static_cast<long long>(problem.promise_set.size()) * trials;
    summary.overall_accuracy =
        total_runs > 0 ? static_cast<double>(correct_runs) / static_cast<double>(total_runs)
                       : 0.0;
    summary.oracle_calls = stats.oracle_calls;
    return summary;
}

}  // namespace ditray
