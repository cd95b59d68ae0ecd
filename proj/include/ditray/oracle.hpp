#pragma once

#include <string>
#include <vector>

#include "ditray/algebra.hpp"

namespace ditray {

struct Alphabet {
    int d = 0;
    // d=3 uses "-", "0", "+" in domain order; other sizes use "0".."d-1".
    std::vector<std::string> display_names;

    static Alphabet of_size(int d);
};

// Total function on the alphabet, stored as its value table.
// id is the base-d positional code of the table with table[0] (the value at
// the first letter) as the most significant digit.
struct DitFunction {
    std::vector<int> table;
    long long id = 0;

    static DitFunction from_table(const std::vector<int>& table, int d);
    static DitFunction from_id(long long id, int d);
};

// Oracle amplitude function g: letter -> complex number.
struct Encoding {
    std::vector<Cx> g;

    int dimension() const { return static_cast<int>(g.size()); }
};

struct Admissibility {
    bool admissible = false;
    std::string violation;  // empty when admissible
};

// Admissible = every value nonzero and all values pairwise distinct,
// both up to tol.
Admissibility check_admissible(const Encoding& enc, Tolerance tol);

struct OracleVector {
    CVector v;  // v[x] = g[f(x)]
    long long source = 0;
};

inline constexpr long long kEnumerationCap = 1'000'000;

// d^d, overflow-checked.
long long function_space_size(int d);

// All d^d functions, ordered by id ascending.
std::vector<DitFunction> enumerate_functions(const Alphabet& alphabet,
                                             long long cap = kEnumerationCap);

// g[k] = e^{2 pi i (k - 1) / 3} for d=3 (letter-indexed exponents -1, 0, +1,
// giving (alphabar, 1, alpha) in domain order); g[k] = e^{2 pi i k / d}
// otherwise. The two indexings agree on rays.
Encoding roots_of_unity_encoding(const Alphabet& alphabet);

OracleVector oracle_vector(const DitFunction& f, const Encoding& enc);

// d=3 literals are three characters over "-0+"; other sizes use
// comma-separated integers.
std::string format_function(const DitFunction& f, const Alphabet& alphabet);
DitFunction parse_function_literal(const std::string& text, const Alphabet& alphabet);

}  // namespace ditray
