#pragma once

#include <vector>

#include "ditray/oracle.hpp"

namespace ditray {

struct RayClass {
    Ray ray;
    std::vector<long long> members;  // ascending function ids
};

// Functions grouped by the ray of their oracle vector. Classes are ordered
// by first appearance, i.e. by their smallest member id.
struct ClassTable {
    int d = 0;
    Encoding encoding;
    std::vector<RayClass> classes;
};

struct BasisDecomposition {
    bool feasible = false;
    int k = 0;                            // = classes/d when feasible
    std::vector<std::vector<int>> bases;  // ascending class indices per basis
};

struct MubReport {
    double max_intra_deviation = 0.0;     // largest |<u,v>| within a basis
    std::vector<double> cross_overlaps;   // |<u,v>| across distinct bases
    double max_cross_deviation = 0.0;     // from 1/sqrt(d)
    bool is_mub = false;
};

ClassTable partition_rays(const std::vector<DitFunction>& functions,
                          const Encoding& enc, Tolerance tol);

// Adjacency lists over class indices; edge (i,j) iff the class rays are
// orthogonal within tol. Symmetric, no self-loops.
std::vector<std::vector<int>> orthogonality_graph(const ClassTable& table, Tolerance tol);

// Exact cover of the class rays by d-cliques of the orthogonality graph.
// Backtracking always extends the lowest-indexed uncovered ray and enumerates
// partner subsets in ascending order, so the first cover found is the
// lexicographically least partition. Infeasibility is a value, not an error.
BasisDecomposition decompose_bases(const ClassTable& table, Tolerance tol);

MubReport verify_mub(const ClassTable& table, const BasisDecomposition& decomp,
                     Tolerance tol);

// Raw-threshold variants backing the public API. The encoding scan's
// relaxation ladder calls these with thresholds above the Tolerance range.
ClassTable group_by_ray(const std::vector<DitFunction>& functions, const Encoding& enc,
                        Tolerance canonical_tol, double merge_tol);
// Same grouping over pre-canonicalized rays (rays[i] belongs to ids[i]);
// lets callers reuse one canonicalization pass across several thresholds.
ClassTable group_rays(const std::vector<Ray>& rays, const std::vector<long long>& ids,
                      const Encoding& enc, double merge_tol);
std::vector<std::vector<int>> orthogonality_graph_at(const ClassTable& table, double orth_tol);
// node_budget > 0 bounds the backtracking; exhaustion reports infeasible, so
// budgeted calls are only meaningful where a miss is acceptable.
BasisDecomposition decompose_bases_at(const ClassTable& table, double orth_tol,
                                      long long node_budget = 0);

}  // namespace ditray
