#include "ditray/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

namespace ditray {

Alphabet Alphabet::of_size(int d) {
    if (d < 2) {
        throw UsageError("alphabet size must be at least 2, got " + std::to_string(d));
    }
    Alphabet alphabet;
    alphabet.d = d;
    if (d == 3) {
        alphabet.display_names = {"-", "0", "+"};
    } else {
        alphabet.display_names.reserve(d);
        for (int k = 0; k < d; ++k) {
            alphabet.display_names.push_back(std::to_string(k));
        }
    }
    return alphabet;
}

DitFunction DitFunction::from_table(const std::vector<int>& table, int d) {
    if (static_cast<int>(table.size()) != d) {
        std::ostringstream msg;
        msg << "function table must have " << d << " entries, got " << table.size();
        throw UsageError(msg.str());
    }
    DitFunction f;
    f.table = table;
    for (int value : table) {
        if (value < 0 || value >= d) {
            std::ostringstream msg;
            msg << "function value " << value << " outside 0.." << d - 1;
            throw UsageError(msg.str());
        }
        f.id = f.id * d + value;
    }
    return f;
}

DitFunction DitFunction::from_id(long long id, int d) {
    const long long size = function_space_size(d);
    if (id < 0 || id >= size) {
        std::ostringstream msg;
        msg << "function id " << id << " outside 0.." << size - 1;
        throw UsageError(msg.str());
    }
    DitFunction f;
    f.id = id;
    f.table.assign(d, 0);
    for (int x = d - 1; x >= 0; --x) {
        f.table[x] = static_cast<int>(id % d);
        id /= d;
    }
    return f;
}

Admissibility check_admissible(const Encoding& enc, Tolerance tol) {
    const auto& g = enc.g;
    for (std::size_t x = 0; x < g.size(); ++x) {
        if (!(std::abs(g[x]) > tol.value())) {
            std::ostringstream msg;
            msg << "g[" << x << "] is (near) zero: all encoding values must be nonzero";
            return {false, msg.str()};
        }
    }
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = x + 1; y < g.size(); ++y) {
            if (!(std::abs(g[x] - g[y]) > tol.value())) {
                std::ostringstream msg;
                msg << "values not pairwise distinct: |g[" << x << "] - g[" << y
                    << "]| = " << std::abs(g[x] - g[y]) << " <= tol";
                return {false, msg.str()};
            }
        }
    }
    return {true, {}};
}

long long function_space_size(int d) {
    if (d < 2) {
        throw UsageError("alphabet size must be at least 2, got " + std::to_string(d));
    }
    long long size = 1;
    for (int i = 0; i < d; ++i) {
        if (size > std::numeric_limits<long long>::max() / d) {
            throw ResourceLimitError("function space size d^d overflows for d = " +
                                     std::to_string(d));
        }
        size *= d;
    }
    return size;
}

std::vector<DitFunction> enumerate_functions(const Alphabet& alphabet, long long cap) {
    const long long size = function_space_size(alphabet.d);
    if (size > cap) {
        std::ostringstream msg;
        msg << "function space size " << size << " for d = " << alphabet.d
            << " exceeds the enumeration cap " << cap;
        throw ResourceLimitError(msg.str());
    }
    std::vector<DitFunction> functions;
    functions.reserve(static_cast<std::size_t>(size));
    for (long long id = 0; id < size; ++id) {
        functions.push_back(DitFunction::from_id(id, alphabet.d));
    }
    return functions;
}

Encoding roots_of_unity_encoding(const Alphabet& alphabet) {
    Encoding enc;
    enc.g.reserve(alphabet.d);
    const int shift = alphabet.d == 3 ? 1 : 0;
    for (int k = 0; k < alphabet.d; ++k) {
        enc.g.push_back(std::polar(1.0, 2.0 * std::numbers::pi * (k - shift) / alphabet.d));
    }
    return enc;
}

OracleVector oracle_vector(const DitFunction& f, const Encoding& enc) {
    if (f.table.size() != enc.g.size()) {
        std::ostringstream msg;
        msg << "oracle_vector: dimension mismatch (" << f.table.size() << " vs "
            << enc.g.size() << ")";
        throw UsageError(msg.str());
    }
    OracleVector out;
    out.source = f.id;
    out.v.reserve(f.table.size());
    for (int value : f.table) {
        out.v.push_back(enc.g[value]);
    }
    return out;
}

std::string format_function(const DitFunction& f, const Alphabet& alphabet) {
    std::string text;
    for (std::size_t x = 0; x < f.table.size(); ++x) {
        if (alphabet.d != 3 && x > 0) {
            text += ',';
        }
        text += alphabet.display_names[f.table[x]];
    }
    return text;
}

DitFunction parse_function_literal(const std::string& text, const Alphabet& alphabet) {
    std::vector<int> table;
    if (alphabet.d == 3) {
        if (text.size() != 3) {
            throw UsageError("function literal for d=3 must be 3 characters over \"-0+\", got \"" +
                             text + "\"");
        }
        for (char c : text) {
            switch (c) {
                case '-': table.push_back(0); break;
                case '0': table.push_back(1); break;
                case '+': table.push_back(2); break;
                default:
                    throw UsageError(std::string("invalid character '") + c +
                                     "' in function literal (expected -, 0 or +)");
            }
        }
    } else {
        std::stringstream stream(text);
        std::string token;
        while (std::getline(stream, token, ',')) {
            char* end = nullptr;
            const long value = std::strtol(token.c_str(), &end, 10);
            if (end == token.c_str() || *end != '\0') {
                throw UsageError("invalid function literal token \"" + token + "\"");
            }
            table.push_back(static_cast<int>(value));
        }
        if (static_cast<int>(table.size()) != alphabet.d) {
            std::ostringstream msg;
            msg << "function literal must list " << alphabet.d << " comma-separated values, got "
                << table.size();
            throw UsageError(msg.str());
        }
    }
    return DitFunction::from_table(table, alphabet.d);
}

}  // namespace ditray
