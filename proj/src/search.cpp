#include "ditray/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ditray {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Bounds the relaxed-threshold cover search; exhaustion skips the refinement
// attempt for that sample and level. Strict decompositions are never budgeted.
constexpr long long kRelaxedCoverBudget = 20'000;

// Grouping of functions into merged ray classes plus a basis assignment,
// captured at a relaxed threshold and held fixed while polishing.
struct FrozenStructure {
    std::vector<std::vector<long long>> groups;
    std::vector<std::vector<int>> bases;  // indices into groups
};

Ray ray_of(const DitFunction& f, const Encoding& enc) {
    return canonicalize_ray(oracle_vector(f, enc).v, Tolerance::decision());
}

// Worst violation of the frozen structure: the largest distance of a member
// ray from its group representative, or the largest overlap inside a basis.
// Zero means the structure holds exactly.
double structure_residual(const std::vector<DitFunction>& functions, const Encoding& enc,
                          const FrozenStructure& s) {
    double residual = 0.0;
    std::vector<Ray> reps;
    reps.reserve(s.groups.size());
    for (const auto& group : s.groups) {
        const Ray rep = ray_of(functions[group.front()], enc);
        for (std::size_t m = 1; m < group.size(); ++m) {
            residual = std::max(residual, ray_distance(rep, ray_of(functions[group[m]], enc)));
        }
        reps.push_back(rep);
    }
    for (const auto& basis : s.bases) {
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = a + 1; b < basis.size(); ++b) {
                residual = std::max(residual, cos_angle(reps[basis[a]], reps[basis[b]]));
            }
        }
    }
    return residual;
}

// Greedy coordinate descent over the sample's free parameters. Deterministic;
// bails out early when the residual is not contracting.
void polish(const std::vector<DitFunction>& functions, std::vector<double>& params, int d,
            const FrozenStructure& s, double target) {
    auto eval = [&](const std::vector<double>& p) {
        try {
            return structure_residual(functions, encoding_from_params(p, d), s);
        } catch (const ZeroVectorError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    double best = eval(params);
    const double initial = best;
    double step = std::clamp(best, 1e-12, 0.1);  // match the violation scale
    for (int sweep = 0; sweep < 100 && best > target && step > 1e-15; ++sweep) {
        if (sweep == 8 && best > 0.5 * initial) {
            break;  // not contracting; this trigger was noise
        }
        bool improved = false;
        for (std::size_t i = 0; i < params.size(); ++i) {
            for (const double direction : {1.0, -1.0}) {
                while (true) {
                    std::vector<double> trial = params;
                    trial[i] += direction * step;
                    const double r = eval(trial);
                    if (r < best) {
                        best = r;
                        params = std::move(trial);
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
}

struct StrictEval {
    bool feasible = false;
    int k = 0;
};

std::vector<long long> id_list(const std::vector<DitFunction>& functions) {
    std::vector<long long> ids;
    ids.reserve(functions.size());
    for (const DitFunction& f : functions) {
        ids.push_back(f.id);
    }
    return ids;
}

// One canonicalization pass, shared across the strict check and the ladder.
std::vector<Ray> canonical_rays(const std::vector<DitFunction>& functions, const Encoding& enc,
                                Tolerance tol) {
    std::vector<Ray> rays;
    rays.reserve(functions.size());
    for (const DitFunction& f : functions) {
        rays.push_back(canonicalize_ray(oracle_vector(f, enc).v, tol));
    }
    return rays;
}

StrictEval strict_pipeline(const std::vector<Ray>& rays, const std::vector<long long>& ids,
                           const Encoding& enc, Tolerance tol) {
    const ClassTable table = group_rays(rays, ids, enc, tol.value());
    const BasisDecomposition decomp = decompose_bases_at(table, tol.value(), 0);
    return {decomp.feasible, decomp.k};
}

StrictEval strict_pipeline(const std::vector<DitFunction>& functions, const Encoding& enc,
                           Tolerance tol) {
    return strict_pipeline(canonical_rays(functions, enc, tol), id_list(functions), enc, tol);
}

// Relaxation thresholds for the near-feasibility trigger. The coarse end
// exists so that samples merely near a feasible encoding (e.g. near the
// d=2 balanced point) still get polished; every hit is re-verified strictly.
std::vector<double> relaxation_ladder(Tolerance tol) {
    std::vector<double> levels{10.0 * tol.value(), 1e-6, 1e-3, 0.3};
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::erase_if(levels, [&](double level) { return level <= tol.value(); });
    return levels;
}

std::vector<double> normalized_phases(std::vector<double> params) {
    for (std::size_t i = 1; i < params.size(); i += 2) {
        params[i] = std::fmod(params[i], kTwoPi);
        if (params[i] < 0.0) {
            params[i] += kTwoPi;
        }
    }
    return params;
}

}  // namespace

EncodingSample sample_encoding(SeededRng& rng, int d) {
    if (d < 2) {
        throw UsageError("alphabet size must be at least 2, got " + std::to_string(d));
    }
    EncodingSample sample;
    sample.params.reserve(2 * (d - 1));
    for (int j = 1; j < d; ++j) {
        sample.params.push_back(rng.uniform(-1.0, 1.0));   // log10 magnitude
        sample.params.push_back(rng.uniform(0.0, kTwoPi));  // phase
    }
    sample.enc = encoding_from_params(sample.params, d);
    return sample;
}

Encoding encoding_from_params(const std::vector<double>& params, int d) {
    if (static_cast<int>(params.size()) != 2 * (d - 1)) {
        std::ostringstream msg;
        msg << "expected " << 2 * (d - 1) << " parameters for d = " << d << ", got "
            << params.size();
        throw UsageError(msg.str());
    }
    Encoding enc;
    enc.g.reserve(d);
    enc.g.push_back(Cx{1.0, 0.0});
    for (int j = 1; j < d; ++j) {
        enc.g.push_back(std::polar(std::pow(10.0, params[2 * j - 2]), params[2 * j - 1]));
    }
    return enc;
}

std::optional<int> min_bases_for_encoding(const Encoding& enc, Tolerance tol) {
    if (!check_admissible(enc, tol).admissible) {
        return std::nullopt;
    }
    const Alphabet alphabet = Alphabet::of_size(enc.dimension());
    const std::vector<DitFunction> functions = enumerate_functions(alphabet);
    const StrictEval eval = strict_pipeline(functions, enc, tol);
    if (!eval.feasible) {
        return std::nullopt;
    }
    return eval.k;
}

std::vector<ProofStepResult> proof_step_checks(const Encoding& enc, Tolerance tol) {
    if (enc.dimension() != 3) {
        throw UsageError("proof step checks are defined for d = 3 encodings");
    }
    const auto& g = enc.g;
    std::vector<ProofStepResult> results;

    double margin_a = std::numeric_limits<double>::infinity();
    for (const Cx& value : g) {
        margin_a = std::min(margin_a, std::abs(value));
    }
    results.push_back(
        {"a", "all encoding values nonzero", margin_a > tol.value(), margin_a});

    // (b): the images of adjacent functions (x,x,y) and (x,y,y) keep a
    // nonzero overlap. |<u,v>| = ||gx|^2 + |gy|^2 + gx conj(gy)| is bounded
    // below by |gx|^2 + |gy|^2 - |gx||gy| = (|gx| - |gy|/2)^2 + 3|gy|^2/4.
    double margin_b = std::numeric_limits<double>::infinity();
    bool holds_b = true;
    constexpr int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (const auto& pair : pairs) {
        const Cx gx = g[pair[0]];
        const Cx gy = g[pair[1]];
        const double ax = std::abs(gx);
        const double ay = std::abs(gy);
        const double bound = ax * ax + ay * ay - ax * ay;
        const CVector u{gx, gx, gy};
        const CVector v{gx, gy, gy};
        const double actual = std::abs(inner_product(u, v));
        const double slack = 1e-12 * std::max(1.0, ax * ax + ay * ay);
        if (actual + slack < bound) {
            holds_b = false;
        }
        margin_b = std::min(margin_b, bound);
    }
    holds_b = holds_b && margin_b > 0.0;
    results.push_back({"b",
                       "adjacent oracle vectors stay non-orthogonal: "
                       "|<u,v>| >= |gx|^2 + |gy|^2 - |gx||gy| > 0",
                       holds_b, margin_b});

    double margin_c = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = x + 1; y < g.size(); ++y) {
            margin_c = std::min(margin_c, std::abs(g[x] - g[y]));
        }
    }
    results.push_back(
        {"c", "encoding values pairwise distinct", margin_c > tol.value(), margin_c});
    return results;
}

long long determinant3(const std::array<std::array<long long, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

long long final_system_determinant() {
    return determinant3({{{2, 1, 0}, {1, 0, 2}, {0, 2, 1}}});
}

namespace {

std::optional<RefinedResult> refine_with_rays(const std::vector<DitFunction>& functions,
                                              const std::vector<Ray>& rays,
                                              const std::vector<long long>& ids,
                                              const EncodingSample& sample, Tolerance tol) {
    const int d = sample.enc.dimension();
    for (const double level : relaxation_ladder(tol)) {
        const ClassTable coarse = group_rays(rays, ids, sample.enc, level);
        if (coarse.classes.empty() ||
            static_cast<int>(coarse.classes.size()) % d != 0) {
            continue;
        }
        const BasisDecomposition relaxed =
            decompose_bases_at(coarse, level, kRelaxedCoverBudget);
        if (!relaxed.feasible) {
            continue;
        }
        FrozenStructure structure;
        structure.groups.reserve(coarse.classes.size());
        for (const RayClass& cls : coarse.classes) {
            structure.groups.push_back(cls.members);
        }
        structure.bases = relaxed.bases;

        std::vector<double> params = sample.params;
        polish(functions, params, d, structure, 0.01 * tol.value());
        const Encoding polished = encoding_from_params(params, d);
        if (!check_admissible(polished, tol).admissible) {
            continue;
        }
        const StrictEval eval = strict_pipeline(functions, polished, tol);
        if (eval.feasible) {
            RefinedResult result;
            result.polished.params = normalized_phases(params);
            result.polished.enc = encoding_from_params(result.polished.params, d);
            result.k = eval.k;
            return result;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<RefinedResult> try_refine(const std::vector<DitFunction>& functions,
                                        const EncodingSample& sample, Tolerance tol) {
    return refine_with_rays(functions, canonical_rays(functions, sample.enc, tol),
                            id_list(functions), sample, tol);
}

namespace {

SearchReport scan_impl(int d, long long samples, std::uint64_t seed, Tolerance tol,
                       bool probe) {
    if (samples < 1) {
        throw UsageError("samples must be at least 1");
    }
    const Alphabet alphabet = Alphabet::of_size(d);
    const std::vector<DitFunction> functions = enumerate_functions(alphabet);
    const std::vector<long long> ids = id_list(functions);

    SearchReport report;
    report.d = d;
    report.samples = samples;
    report.seed = seed;
    report.tol = tol.value();

    double min_margin_b = std::numeric_limits<double>::infinity();
    for (long long i = 0; i < samples; ++i) {
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        const EncodingSample sample = sample_encoding(rng, d);
        if (!check_admissible(sample.enc, tol).admissible) {
            ++report.infeasible_count;
            ++report.inadmissible_count;
            continue;
        }
        if (d == 3) {
            for (const ProofStepResult& step : proof_step_checks(sample.enc, tol)) {
                if (step.step == "b") {
                    min_margin_b = std::min(min_margin_b, step.margin);
                }
                if (!step.holds) {
                    ++report.proof_failures;
                }
            }
        }
        const std::vector<Ray> rays = canonical_rays(functions, sample.enc, tol);
        const StrictEval strict = strict_pipeline(rays, ids, sample.enc, tol);
        bool feasible = strict.feasible;
        bool refined = false;
        int k = strict.k;
        EncodingSample witness = sample;
        if (!feasible) {
            if (const auto polished = refine_with_rays(functions, rays, ids, sample, tol)) {
                feasible = true;
                refined = true;
                k = polished->k;
                witness = polished->polished;
            }
        }
        if (feasible) {
            ++report.feasible_count;
            if (refined) {
                ++report.refined_count;
            }
            if (!report.min_k_found.has_value() || k < *report.min_k_found) {
                report.min_k_found = k;
                report.witness = ViolationRecord{i, witness, k, refined};
            }
            if (d == 3 && k <= 2) {
                report.violations.push_back(ViolationRecord{i, witness, k, refined});
            }
        } else {
            ++report.infeasible_count;
        }
    }
    if (d == 3 && std::isfinite(min_margin_b)) {
        report.min_step_b_margin = min_margin_b;
    }

    if (probe) {
        RootsOfUnitySummary roots;
        roots.d = d;
        const Encoding enc = roots_of_unity_encoding(alphabet);
        const ClassTable table = partition_rays(functions, enc, tol);
        roots.ray_count = static_cast<int>(table.classes.size());
        const BasisDecomposition decomp = decompose_bases(table, tol);
        if (decomp.feasible) {
            roots.k = decomp.k;
            roots.is_mub = verify_mub(table, decomp, tol).is_mub;
        }
        report.roots_of_unity = roots;
    }
    return report;
}

}  // namespace

SearchReport lower_bound_scan(int d, long long samples, std::uint64_t seed, Tolerance tol) {
    return scan_impl(d, samples, seed, tol, false);
}

SearchReport conjecture_probe(int d, long long samples, std::uint64_t seed, Tolerance tol) {
    if (d < 2 || d > 4) {
        throw ResourceLimitError("conjecture probe supports d in {2, 3, 4}, got " +
                                 std::to_string(d));
    }
    return scan_impl(d, samples, seed, tol, true);
}

}  // namespace ditray
