#include "ditray/partition.hpp"

#include <cmath>
#include <map>

namespace ditray {

namespace {

// Secondary grid shifted by half a cell. A pair of rays equal within a
// threshold well below the grid can straddle a primary cell boundary; in any
// single coordinate it then shares a shifted cell, so probing both grids
// covers the straddle in practice (a simultaneous miss needs independent
// boundary hits in two coordinates, measure-zero for the inputs seen here).
std::vector<std::int64_t> offset_key(const CVector& unit) {
    constexpr double grid = 1e-6;
    std::vector<std::int64_t> key;
    key.reserve(2 * unit.size());
    for (const Cx& x : unit) {
        key.push_back(std::llround(x.real() / grid + 0.5));
        key.push_back(std::llround(x.imag() / grid + 0.5));
    }
    return key;
}

struct CoverSearch {
    int n = 0;
    int d = 0;
    const std::vector<std::vector<char>>* adj = nullptr;
    std::vector<char> covered;
    std::vector<std::vector<int>> bases;
    long long budget = 0;  // <= 0: unlimited
    bool exhausted = false;

    bool tick() {
        if (budget <= 0) {
            return !exhausted;
        }
        if (--budget == 0) {
            exhausted = true;
            budget = -1;
            return false;
        }
        return true;
    }

    bool cover_all() {
        int anchor = -1;
        for (int i = 0; i < n; ++i) {
            if (!covered[i]) {
                anchor = i;
                break;
            }
        }
        if (anchor < 0) {
            return true;
        }
        if (!tick()) {
            return false;
        }
        std::vector<int> candidates;
        for (int j = anchor + 1; j < n; ++j) {
            if (!covered[j] && (*adj)[anchor][j]) {
                candidates.push_back(j);
            }
        }
        if (static_cast<int>(candidates.size()) < d - 1) {
            return false;
        }
        covered[anchor] = 1;
        std::vector<int> chosen;
        const bool ok = extend(anchor, candidates, 0, chosen);
        if (!ok) {
            covered[anchor] = 0;
        }
        return ok;
    }

    bool extend(int anchor, const std::vector<int>& candidates, std::size_t start,
                std::vector<int>& chosen) {
        if (static_cast<int>(chosen.size()) == d - 1) {
            std::vector<int> basis;
            basis.reserve(d);
            basis.push_back(anchor);
            basis.insert(basis.end(), chosen.begin(), chosen.end());
            for (int j : chosen) {
                covered[j] = 1;
            }
            bases.push_back(std::move(basis));
            if (cover_all()) {
                return true;
            }
            bases.pop_back();
            for (int j : chosen) {
                covered[j] = 0;
            }
            return false;
        }
        for (std::size_t idx = start; idx < candidates.size(); ++idx) {
            if (!tick()) {
                return false;
            }
            const int j = candidates[idx];
            bool compatible = true;
            for (int c : chosen) {
                if (!(*adj)[c][j]) {
                    compatible = false;
                    break;
                }
            }
            if (!compatible) {
                continue;
            }
            chosen.push_back(j);
            if (extend(anchor, candidates, idx + 1, chosen)) {
                return true;
            }
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

namespace {

// ray_distance with an early exit against the threshold.
bool ray_within(const Ray& a, const Ray& b, double tol) {
    const double limit = tol * tol;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.unit.size(); ++i) {
        sum += std::norm(a.unit[i] - b.unit[i]);
        if (sum >= limit) {
            return false;
        }
    }
    return true;
}

}  // namespace

ClassTable group_rays(const std::vector<Ray>& rays, const std::vector<long long>& ids,
                      const Encoding& enc, double merge_tol) {
    ClassTable table;
    table.d = enc.dimension();
    table.encoding = enc;
    // The 1e-6 grid only pre-screens thresholds well below the cell size.
    const bool bucketed = merge_tol <= 1e-7;
    std::map<std::vector<std::int64_t>, std::vector<int>> primary;
    std::map<std::vector<std::int64_t>, std::vector<int>> shifted;

    for (std::size_t n = 0; n < rays.size(); ++n) {
        const Ray& ray = rays[n];
        int found = -1;
        if (bucketed) {
            auto probe = [&](const std::map<std::vector<std::int64_t>, std::vector<int>>& buckets,
                             const std::vector<std::int64_t>& key) {
                const auto it = buckets.find(key);
                if (it == buckets.end()) {
                    return;
                }
                for (int idx : it->second) {
                    if (found < 0 && ray_within(table.classes[idx].ray, ray, merge_tol)) {
                        found = idx;
                    }
                }
            };
            probe(primary, ray.hash_key);
            if (found < 0) {
                probe(shifted, offset_key(ray.unit));
            }
        } else {
            for (std::size_t idx = 0; idx < table.classes.size(); ++idx) {
                if (ray_within(table.classes[idx].ray, ray, merge_tol)) {
                    found = static_cast<int>(idx);
                    break;
                }
            }
        }
        if (found < 0) {
            const int idx = static_cast<int>(table.classes.size());
            table.classes.push_back(RayClass{ray, {ids[n]}});
            if (bucketed) {
                primary[ray.hash_key].push_back(idx);
                shifted[offset_key(ray.unit)].push_back(idx);
            }
        } else {
            table.classes[found].members.push_back(ids[n]);
        }
    }
    return table;
}

ClassTable group_by_ray(const std::vector<DitFunction>& functions, const Encoding& enc,
                        Tolerance canonical_tol, double merge_tol) {
    std::vector<Ray> rays;
    std::vector<long long> ids;
    rays.reserve(functions.size());
    ids.reserve(functions.size());
    for (const DitFunction& f : functions) {
        rays.push_back(canonicalize_ray(oracle_vector(f, enc).v, canonical_tol));
        ids.push_back(f.id);
    }
    return group_rays(rays, ids, enc, merge_tol);
}

ClassTable partition_rays(const std::vector<DitFunction>& functions, const Encoding& enc,
                          Tolerance tol) {
    const Admissibility adm = check_admissible(enc, tol);
    if (!adm.admissible) {
        throw InadmissibleEncodingError(adm.violation);
    }
    return group_by_ray(functions, enc, tol, tol.value());
}

std::vector<std::vector<int>> orthogonality_graph_at(const ClassTable& table, double orth_tol) {
    const int n = static_cast<int>(table.classes.size());
    std::vector<std::vector<int>> adjacency(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (cos_angle(table.classes[i].ray, table.classes[j].ray) < orth_tol) {
                adjacency[i].push_back(j);
                adjacency[j].push_back(i);
            }
        }
    }
    return adjacency;
}

std::vector<std::vector<int>> orthogonality_graph(const ClassTable& table, Tolerance tol) {
    return orthogonality_graph_at(table, tol.value());
}

BasisDecomposition decompose_bases_at(const ClassTable& table, double orth_tol,
                                      long long node_budget) {
    BasisDecomposition out;
    const int n = static_cast<int>(table.classes.size());
    const int d = table.d;
    if (n == 0 || d < 2 || n % d != 0) {
        return out;
    }
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (cos_angle(table.classes[i].ray, table.classes[j].ray) < orth_tol) {
                adj[i][j] = adj[j][i] = 1;
            }
        }
    }
    CoverSearch search;
    search.n = n;
    search.d = d;
    search.adj = &adj;
    search.covered.assign(n, 0);
    search.budget = node_budget;
    if (search.cover_all()) {
        out.feasible = true;
        out.bases = std::move(search.bases);
        out.k = n / d;
    }
    return out;
}

BasisDecomposition decompose_bases(const ClassTable& table, Tolerance tol) {
    return decompose_bases_at(table, tol.value(), 0);
}

MubReport verify_mub(const ClassTable& table, const BasisDecomposition& decomp, Tolerance tol) {
    if (!decomp.feasible) {
        throw UsageError("verify_mub requires a feasible decomposition");
    }
    MubReport report;
    for (const auto& basis : decomp.bases) {
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = a + 1; b < basis.size(); ++b) {
                const double overlap =
                    cos_angle(table.classes[basis[a]].ray, table.classes[basis[b]].ray);
                report.max_intra_deviation = std::max(report.max_intra_deviation, overlap);
            }
        }
    }
    const double target = 1.0 / std::sqrt(static_cast<double>(table.d));
    for (std::size_t a = 0; a < decomp.bases.size(); ++a) {
        for (std::size_t b = a + 1; b < decomp.bases.size(); ++b) {
            for (int i : decomp.bases[a]) {
                for (int j : decomp.bases[b]) {
                    const double overlap =
                        cos_angle(table.classes[i].ray, table.classes[j].ray);
                    report.cross_overlaps.push_back(overlap);
                    report.max_cross_deviation =
                        std::max(report.max_cross_deviation, std::abs(overlap - target));
                }
            }
        }
    }
    report.is_mub = report.max_cross_deviation < tol.value();
    return report;
}

}  // namespace ditray
