#include "ditray/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ditray/report.hpp"
#include "ditray/rng.hpp"

namespace ditray {

namespace {

using nlohmann::json;

Cx symbol_value(int s) {
    switch (s) {
        case 1: return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);   // alpha
        case 2: return std::polar(1.0, -2.0 * std::numbers::pi / 3.0);  // alphabar
        default: return Cx{1.0, 0.0};
    }
}

const char* symbol_name(int s) {
    switch (s) {
        case 1: return "alpha";
        case 2: return "alphabar";
        default: return "1";
    }
}

// The built-in d=3 reference scheme: nine cells of three functions each,
// listed in display order (row-major); the columns of the 3x3 grid are the
// orthogonal triples. Symbols: 0 -> 1, 1 -> alpha, 2 -> alphabar.
struct ReferenceCell {
    std::array<const char*, 3> functions;
    std::array<int, 3> vector_symbols;
};

constexpr std::array<ReferenceCell, 9> kSchemeCells{{
    {{"---", "000", "+++"}, {0, 0, 0}},
    {{"--0", "00+", "++-"}, {0, 0, 1}},
    {{"--+", "00-", "++0"}, {0, 0, 2}},
    {{"-0+", "0+-", "+-0"}, {0, 1, 2}},
    {{"-0-", "0+0", "+-+"}, {0, 1, 0}},
    {{"-+-", "0-0", "+0+"}, {0, 2, 0}},
    {{"-+0", "+0-", "0-+"}, {0, 2, 1}},
    {{"0--", "+00", "-++"}, {1, 0, 0}},
    {{"+--", "-00", "0++"}, {2, 0, 0}},
}};

constexpr std::array<std::array<int, 3>, 3> kSchemeColumns{{{0, 3, 6}, {1, 4, 7}, {2, 5, 8}}};

std::string cell_vector_text(const ReferenceCell& cell) {
    std::string text = "(";
    for (int i = 0; i < 3; ++i) {
        if (i > 0) {
            text += ',';
        }
        text += symbol_name(cell.vector_symbols[i]);
    }
    text += ')';
    return text;
}

CVector cell_vector(const ReferenceCell& cell) {
    return {symbol_value(cell.vector_symbols[0]), symbol_value(cell.vector_symbols[1]),
            symbol_value(cell.vector_symbols[2])};
}

struct VerifyCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Largest coordinate deviation between the canonical units of two rays.
double max_coordinate_deviation(const Ray& a, const Ray& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.unit.size(); ++i) {
        dev = std::max(dev, std::abs(a.unit[i] - b.unit[i]));
    }
    return dev;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = nullptr;

    OutputTarget(const RunConfig& cfg, std::ostream& fallback) {
        if (cfg.output.empty()) {
            os = &fallback;
        } else {
            file.open(cfg.output, std::ios::binary);
            if (!file) {
                throw UsageError("cannot open output file: " + cfg.output);
            }
            os = &file;
        }
    }
};

Encoding resolve_encoding(const RunConfig& cfg, const Alphabet& alphabet) {
    if (cfg.encoding_literal.empty()) {
        return roots_of_unity_encoding(alphabet);
    }
    Encoding enc = parse_encoding_literal(cfg.encoding_literal);
    if (enc.dimension() != alphabet.d) {
        std::ostringstream msg;
        msg << "encoding lists " << enc.dimension() << " values but d = " << alphabet.d;
        throw UsageError(msg.str());
    }
    return enc;
}

int effective_d(const RunConfig& cfg) {
    if (!cfg.encoding_literal.empty() && !cfg.d_set) {
        int count = 1;
        for (char c : cfg.encoding_literal) {
            if (c == ',') {
                ++count;
            }
        }
        return count;
    }
    return cfg.d;
}

std::string bool_text(bool value) { return value ? "true" : "false"; }

// The reference 3x3 layout: cells in display order, columns = triples.
std::string render_reference_grid() {
    std::array<std::string, 9> cells;
    for (std::size_t c = 0; c < kSchemeCells.size(); ++c) {
        std::string cell;
        for (const char* literal : kSchemeCells[c].functions) {
            cell += literal;
            cell += ' ';
        }
        cell += "-> ";
        cell += cell_vector_text(kSchemeCells[c]);
        cells[c] = std::move(cell);
    }
    std::array<std::size_t, 3> widths{};
    for (int col = 0; col < 3; ++col) {
        for (int row = 0; row < 3; ++row) {
            widths[col] = std::max(widths[col], cells[row * 3 + col].size());
        }
    }
    std::ostringstream out;
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            std::string cell = cells[row * 3 + col];
            cell.resize(widths[col], ' ');
            out << (col > 0 ? "  |  " : "") << cell;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

int cmd_verify_paper(const RunConfig& cfg, std::ostream& out) {
    if (cfg.d != 3) {
        throw UsageError("verify-paper requires --d 3");
    }
    const double rtol = cfg.tol_set ? cfg.tol : 1e-12;
    const Tolerance tol(rtol);
    const Alphabet alphabet = Alphabet::of_size(3);
    const std::vector<DitFunction> functions = enumerate_functions(alphabet);
    const Encoding enc = roots_of_unity_encoding(alphabet);

    std::vector<VerifyCheck> checks;
    auto add_check = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({name, ok, detail});
    };

    // Encoding table: g = (alphabar, 1, alpha) in domain order.
    {
        const CVector expected{symbol_value(2), symbol_value(0), symbol_value(1)};
        double dev = 0.0;
        for (int x = 0; x < 3; ++x) {
            dev = std::max(dev, std::abs(enc.g[x] - expected[x]));
        }
        std::ostringstream detail;
        detail << "g = (alphabar, 1, alpha), max deviation " << dev;
        add_check("encoding-table", dev < rtol, detail.str());
    }

    add_check("function-count", functions.size() == 27,
              "expected 27 functions, got " + std::to_string(functions.size()));

    const ClassTable table = partition_rays(functions, enc, tol);
    {
        bool ok = table.classes.size() == 9;
        for (const RayClass& cls : table.classes) {
            ok = ok && cls.members.size() == 3;
        }
        std::ostringstream detail;
        detail << table.classes.size() << " classes";
        if (!table.classes.empty()) {
            detail << ", sizes";
            for (const RayClass& cls : table.classes) {
                detail << ' ' << cls.members.size();
            }
        }
        add_check("class-count", ok, "expected 9 classes of 3; got " + detail.str());
    }

    // Match every reference cell against a computed class.
    std::array<int, 9> cell_class{};
    cell_class.fill(-1);
    for (std::size_t c = 0; c < kSchemeCells.size(); ++c) {
        const ReferenceCell& cell = kSchemeCells[c];
        const Ray expected_ray = canonicalize_ray(cell_vector(cell), tol);
        std::set<long long> expected_members;
        for (const char* literal : cell.functions) {
            expected_members.insert(parse_function_literal(literal, alphabet).id);
        }
        bool ok = false;
        std::string detail;
        for (std::size_t i = 0; i < table.classes.size(); ++i) {
            const double dev = max_coordinate_deviation(table.classes[i].ray, expected_ray);
            if (dev < rtol) {
                cell_class[c] = static_cast<int>(i);
                const std::set<long long> got(table.classes[i].members.begin(),
                                              table.classes[i].members.end());
                if (got == expected_members) {
                    ok = true;
                    std::ostringstream msg;
                    msg << "class " << i << ", max coordinate deviation " << dev;
                    detail = msg.str();
                } else {
                    std::ostringstream msg;
                    msg << "ray matches class " << i << " but members differ: expected {";
                    for (const char* literal : cell.functions) {
                        msg << ' ' << literal;
                    }
                    msg << " }, got {";
                    for (long long id : table.classes[i].members) {
                        msg << ' '
                            << format_function(DitFunction::from_id(id, 3), alphabet);
                    }
                    msg << " }";
                    detail = msg.str();
                }
                break;
            }
        }
        if (cell_class[c] < 0) {
            detail = "no computed class ray within tolerance of " + cell_vector_text(cell);
        }
        add_check("cell " + cell_vector_text(cell), ok, detail);
    }

    const BasisDecomposition decomp = decompose_bases(table, tol);
    {
        bool ok = decomp.feasible && decomp.k == 3;
        std::string detail =
            decomp.feasible ? "k = " + std::to_string(decomp.k) : "no feasible decomposition";
        if (ok) {
            std::set<std::set<int>> expected;
            for (const auto& column : kSchemeColumns) {
                std::set<int> basis;
                for (int cell : column) {
                    basis.insert(cell_class[cell]);
                }
                expected.insert(basis);
            }
            std::set<std::set<int>> got;
            for (const auto& basis : decomp.bases) {
                got.insert(std::set<int>(basis.begin(), basis.end()));
            }
            ok = expected == got;
            if (!ok) {
                detail += "; bases do not match the reference columns";
            }
        }
        add_check("bases", ok, detail);
    }

    if (decomp.feasible) {
        const MubReport mub = verify_mub(table, decomp, tol);
        {
            std::ostringstream detail;
            detail << "max intra-basis overlap " << mub.max_intra_deviation;
            add_check("intra-basis-orthogonality", mub.max_intra_deviation < rtol,
                      detail.str());
        }
        {
            std::ostringstream detail;
            detail << mub.cross_overlaps.size()
                   << " cross pairs, max deviation from sqrt(3)/3 = "
                   << mub.max_cross_deviation;
            add_check("cross-angle",
                      mub.cross_overlaps.size() == 27 && mub.max_cross_deviation < rtol,
                      detail.str());
        }
    } else {
        add_check("intra-basis-orthogonality", false, "skipped: no feasible decomposition");
        add_check("cross-angle", false, "skipped: no feasible decomposition");
    }

    bool all_ok = true;
    for (const VerifyCheck& check : checks) {
        all_ok = all_ok && check.ok;
    }

    if (cfg.format == "json") {
        json j;
        j["command"] = "verify-paper";
        j["d"] = 3;
        j["tolerance"] = rtol;
        j["ok"] = all_ok;
        json jchecks = json::array();
        for (const VerifyCheck& check : checks) {
            jchecks.push_back({{"name", check.name}, {"ok", check.ok}, {"detail", check.detail}});
        }
        j["checks"] = jchecks;
        j["classes"] = class_table_json(table, alphabet)["classes"];
        j["decomposition"] = decomposition_json(decomp);
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv_row({"check", "ok", "detail"});
        for (const VerifyCheck& check : checks) {
            out << csv_row({check.name, bool_text(check.ok), check.detail});
        }
        out << csv_row({"overall", bool_text(all_ok), ""});
    } else {
        out << "verify-paper (d = 3, tolerance " << rtol << ")\n\n";
        out << "g: - -> alphabar, 0 -> 1, + -> alpha\n\n";
        out << render_reference_grid();
        out << "(columns are the orthogonal triples)\n\n";
        for (const VerifyCheck& check : checks) {
            out << (check.ok ? "  ok   " : "  FAIL ") << check.name;
            if (!check.ok && !check.detail.empty()) {
                out << " -- " << check.detail;
            }
            out << "\n";
        }
        out << "\n" << (all_ok ? "all checks passed" : "MISMATCH") << "\n";
    }
    return all_ok ? kExitOk : kExitMismatch;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
    const int d = effective_d(cfg);
    const Alphabet alphabet = Alphabet::of_size(d);
    const Encoding enc = resolve_encoding(cfg, alphabet);
    const Tolerance tol(cfg.tol);
    const std::vector<DitFunction> functions = enumerate_functions(alphabet);
    const ClassTable table = partition_rays(functions, enc, tol);
    const BasisDecomposition decomp = decompose_bases(table, tol);
    MubReport mub;
    if (decomp.feasible) {
        mub = verify_mub(table, decomp, tol);
    }

    if (cfg.format == "json") {
        json j = class_table_json(table, alphabet);
        j["command"] = "partition";
        j["tolerance"] = cfg.tol;
        j["decomposition"] = decomposition_json(decomp);
        j["mub"] = decomp.feasible ? mub_json(mub) : json(nullptr);
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv_row({"class", "basis", "ray", "members"});
        std::vector<int> basis_of(table.classes.size(), -1);
        if (decomp.feasible) {
            for (std::size_t b = 0; b < decomp.bases.size(); ++b) {
                for (int idx : decomp.bases[b]) {
                    basis_of[idx] = static_cast<int>(b) + 1;
                }
            }
        }
        for (std::size_t i = 0; i < table.classes.size(); ++i) {
            const RayClass& cls = table.classes[i];
            std::string members;
            for (std::size_t m = 0; m < cls.members.size(); ++m) {
                if (m > 0) {
                    members += ';';
                }
                members += format_function(DitFunction::from_id(cls.members[m], d), alphabet);
            }
            out << csv_row({std::to_string(i),
                            basis_of[i] > 0 ? std::to_string(basis_of[i]) : std::string{},
                            render_ray_text(cls.ray), members});
        }
    } else {
        out << "partition (d = " << d << ", tolerance " << cfg.tol << ")\n";
        out << "encoding:";
        for (const Cx& value : enc.g) {
            out << ' ' << complex_to_text(value);
        }
        out << "\n\n";
        out << table.classes.size() << " ray classes over " << functions.size()
            << " functions\n";
        for (std::size_t i = 0; i < table.classes.size(); ++i) {
            const RayClass& cls = table.classes[i];
            out << "  class " << i << ": " << render_ray_text(cls.ray) << " <-";
            for (long long id : cls.members) {
                out << ' ' << format_function(DitFunction::from_id(id, d), alphabet);
            }
            out << "\n";
        }
        out << "\n";
        if (decomp.feasible) {
            out << "feasible: k = " << decomp.k << " orthogonal " << d << "-tuples\n\n";
            out << render_scheme_text(table, decomp, alphabet);
            out << "\nmub: max intra overlap " << mub.max_intra_deviation
                << ", max cross deviation from 1/sqrt(d) " << mub.max_cross_deviation
                << ", is_mub " << bool_text(mub.is_mub) << "\n";
        } else {
            out << "infeasible: the " << table.classes.size()
                << " rays do not partition into orthogonal " << d << "-tuples (k = none)\n";
        }
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const int d = effective_d(cfg);
    const Alphabet alphabet = Alphabet::of_size(d);
    const Encoding enc = resolve_encoding(cfg, alphabet);
    const Tolerance tol(cfg.tol);
    if (cfg.trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    const DitFunction f = parse_function_literal(cfg.function_literal, alphabet);
    const std::vector<DitFunction> functions = enumerate_functions(alphabet);
    const ClassTable table = partition_rays(functions, enc, tol);
    const BasisDecomposition decomp = decompose_bases(table, tol);
    if (!decomp.feasible) {
        throw DomainError(
            "no feasible orthogonal-basis decomposition for this encoding; "
            "simulate requires one to pose a promise problem");
    }
    const PromiseProblem problem =
        PromiseProblem::from_decomposition(table, decomp, cfg.column, tol);

    QueryStats stats;
    const CVector state = prepare_state(f, enc, &stats);
    const OutcomeDistribution distribution =
        measure(state, problem.basis, derive_seed(cfg.seed, 0), tol);

    const bool promised =
        std::binary_search(problem.promise_set.begin(), problem.promise_set.end(), f.id);
    std::map<int, long long> tallies;  // outcome index -> count
    long long correct = 0;
    int true_outcome = -1;
    if (promised) {
        const Ray f_ray = canonicalize_ray(oracle_vector(f, enc).v, tol);
        for (std::size_t i = 0; i < problem.basis.size(); ++i) {
            if (ray_equal(problem.basis[i], f_ray, tol)) {
                true_outcome = static_cast<int>(i);
            }
        }
        if (true_outcome < 0) {
            throw UsageError("promised function's oracle ray does not match any basis ray");
        }
    }
    for (long long t = 0; t < cfg.trials; ++t) {
        const std::uint64_t run_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
        if (promised) {
            const int label = identify_class(f, problem, enc, run_seed, tol, &stats);
            int outcome = 0;
            for (std::size_t i = 0; i < problem.class_indices.size(); ++i) {
                if (problem.class_indices[i] == label) {
                    outcome = static_cast<int>(i);
                }
            }
            ++tallies[outcome];
            if (outcome == true_outcome) {
                ++correct;
            }
        } else {
            const OutcomeDistribution od = measure(state, problem.basis, run_seed, tol);
            ++tallies[*od.sampled_outcome];
        }
    }
    const int identified_class =
        promised ? problem.class_indices[true_outcome] : -1;
    const double accuracy =
        promised ? static_cast<double>(correct) / static_cast<double>(cfg.trials) : 0.0;

    if (cfg.format == "json") {
        json j;
        j["command"] = "simulate";
        j["d"] = d;
        j["function"] = cfg.function_literal;
        j["function_id"] = f.id;
        j["column"] = cfg.column;
        j["seed"] = cfg.seed;
        j["trials"] = cfg.trials;
        j["tolerance"] = cfg.tol;
        j["distribution"] = distribution.probs;
        json jtallies = json::array();
        for (std::size_t i = 0; i < problem.basis.size(); ++i) {
            const auto it = tallies.find(static_cast<int>(i));
            jtallies.push_back({{"outcome", i},
                                {"class", problem.class_indices[i]},
                                {"ray", render_ray_text(problem.basis[i])},
                                {"count", it == tallies.end() ? 0 : it->second}});
        }
        j["outcomes"] = jtallies;
        j["promise_violation"] = !promised;
        if (promised) {
            j["identified_class"] = identified_class;
            j["identified_ray"] = render_ray_text(problem.basis[true_outcome]);
            j["accuracy"] = accuracy;
            j["oracle_calls"] = stats.oracle_calls;
        } else {
            j["identified_class"] = nullptr;
            j["identified_ray"] = nullptr;
            j["accuracy"] = nullptr;
            j["oracle_calls"] = stats.oracle_calls;
        }
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv_row({"outcome", "class", "ray", "probability", "count"});
        for (std::size_t i = 0; i < problem.basis.size(); ++i) {
            const auto it = tallies.find(static_cast<int>(i));
            out << csv_row({std::to_string(i), std::to_string(problem.class_indices[i]),
                            render_ray_text(problem.basis[i]),
                            format_double(distribution.probs[i]),
                            std::to_string(it == tallies.end() ? 0 : it->second)});
        }
    } else {
        out << "simulate (d = " << d << ", function " << cfg.function_literal << ", column "
            << cfg.column << ", seed " << cfg.seed << ", trials " << cfg.trials << ")\n\n";
        out << "outcome distribution:\n";
        for (std::size_t i = 0; i < problem.basis.size(); ++i) {
            const auto it = tallies.find(static_cast<int>(i));
            out << "  " << render_ray_text(problem.basis[i]) << "  p = "
                << distribution.probs[i] << "  sampled " << (it == tallies.end() ? 0 : it->second)
                << "/" << cfg.trials << "\n";
        }
        out << "\n";
        if (promised) {
            out << "identified class " << identified_class << " "
                << render_ray_text(problem.basis[true_outcome]) << " with accuracy " << accuracy
                << " (" << stats.oracle_calls << " oracle calls)\n";
        } else {
            out << "PromiseViolation: function " << cfg.function_literal
                << " is outside the promise set of column " << cfg.column
                << "; identification refused (measurement shown above)\n";
        }
    }
    return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
    const Tolerance tol(cfg.tol);
    const SearchReport report = cfg.probe
                                    ? conjecture_probe(cfg.d, cfg.samples, cfg.seed, tol)
                                    : lower_bound_scan(cfg.d, cfg.samples, cfg.seed, tol);

    if (cfg.format == "json") {
        json j = search_report_json(report);
        j["command"] = "search";
        j["probe"] = cfg.probe;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::vector<std::string> header{"d",           "samples",     "seed",
                                        "tolerance",   "min_k_found", "feasible",
                                        "infeasible",  "inadmissible", "refined",
                                        "violations",  "proof_failures"};
        std::vector<std::string> row{
            std::to_string(report.d),
            std::to_string(report.samples),
            std::to_string(report.seed),
            format_double(report.tol),
            report.min_k_found.has_value() ? std::to_string(*report.min_k_found)
                                           : std::string{},
            std::to_string(report.feasible_count),
            std::to_string(report.infeasible_count),
            std::to_string(report.inadmissible_count),
            std::to_string(report.refined_count),
            std::to_string(report.violations.size()),
            std::to_string(report.proof_failures)};
        if (report.roots_of_unity.has_value()) {
            header.insert(header.end(), {"roots_ray_count", "roots_k", "roots_mub"});
            const RootsOfUnitySummary& roots = *report.roots_of_unity;
            row.push_back(std::to_string(roots.ray_count));
            row.push_back(roots.k.has_value() ? std::to_string(*roots.k) : std::string{});
            row.push_back(roots.is_mub.has_value() ? bool_text(*roots.is_mub)
                                                   : std::string{});
        }
        out << csv_row(header);
        out << csv_row(row);
    } else {
        out << "search (d = " << report.d << ", samples " << report.samples << ", seed "
            << report.seed << ", tolerance " << report.tol << ")\n\n";
        out << "  feasible     " << report.feasible_count << " (refined "
            << report.refined_count << ")\n";
        out << "  infeasible   " << report.infeasible_count << " (inadmissible "
            << report.inadmissible_count << ")\n";
        out << "  min k found  "
            << (report.min_k_found.has_value() ? std::to_string(*report.min_k_found)
                                               : std::string("none"))
            << "\n";
        out << "  violations   " << report.violations.size() << "\n";
        if (report.d == 3) {
            out << "  proof margins: step-b min "
                << (report.min_step_b_margin.has_value()
                        ? format_double(*report.min_step_b_margin)
                        : std::string("n/a"))
                << ", failures " << report.proof_failures << "\n";
        }
        if (report.witness.has_value()) {
            out << "  witness: sample " << report.witness->sample_index << " with k = "
                << report.witness->k << (report.witness->refined ? " (refined)" : "") << ", g =";
            for (const Cx& value : report.witness->sample.enc.g) {
                out << ' ' << complex_to_text(value);
            }
            out << "\n";
        }
        if (report.roots_of_unity.has_value()) {
            const RootsOfUnitySummary& roots = *report.roots_of_unity;
            out << "  roots-of-unity encoding: " << roots.ray_count << " rays, k = "
                << (roots.k.has_value() ? std::to_string(*roots.k) : std::string("none"))
                << ", mub "
                << (roots.is_mub.has_value() ? bool_text(*roots.is_mub) : std::string("n/a"))
                << "\n";
        }
        if (!report.violations.empty()) {
            out << "\n  COUNTEREXAMPLE CANDIDATES (k <= 2):\n";
            for (const ViolationRecord& record : report.violations) {
                out << "    sample " << record.sample_index << ": k = " << record.k << ", g =";
                for (const Cx& value : record.sample.enc.g) {
                    out << ' ' << complex_to_text(value);
                }
                out << "\n";
            }
        }
    }
    return report.violations.empty() ? kExitOk : kExitMismatch;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    // Function and encoding literals routinely start with '-' (e.g. "--0"),
    // which an option parser reads as a flag. Fuse these options with their
    // value up front so both "--function --0" and "--function=--0" work.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if ((arg == "--function" || arg == "--encoding") && i + 1 < argc) {
            arg += '=';
            arg += argv[++i];
        }
        args.push_back(std::move(arg));
    }
    std::vector<const char*> argv_fused;
    argv_fused.push_back(argc > 0 ? argv[0] : "ditray");
    for (const std::string& arg : args) {
        argv_fused.push_back(arg.c_str());
    }

    RunConfig cfg;
    CLI::App app{"oracle-ray analysis of the d-valued functions of a single dit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "alphabet size")
            ->each([&](const std::string&) { cfg.d_set = true; });
        sub->add_option("--tol", cfg.tol, "decision tolerance")
            ->each([&](const std::string&) { cfg.tol_set = true; });
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--output", cfg.output, "write the report to a file");
    };

    CLI::App* verify = app.add_subcommand(
        "verify-paper", "recompute the built-in d=3 reference construction and check "
                        "every table cell, basis and angle");
    add_common(verify);

    CLI::App* partition = app.add_subcommand(
        "partition", "group all functions by oracle ray and decompose the rays into "
                     "orthogonal d-tuples");
    add_common(partition);
    partition->add_option("--encoding", cfg.encoding_literal,
                          "comma-separated complex values a+bi, one per letter");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the single-query identification protocol for one function "
                    "against one basis column");
    add_common(simulate);
    simulate->add_option("--encoding", cfg.encoding_literal,
                         "comma-separated complex values a+bi, one per letter");
    simulate->add_option("--function", cfg.function_literal, "function literal")->required();
    simulate->add_option("--column", cfg.column, "basis column, 1-based");
    simulate->add_option("--trials", cfg.trials, "measurement repetitions");

    CLI::App* search = app.add_subcommand(
        "search", "scan random encodings for decompositions below the known bound");
    add_common(search);
    search->add_option("--samples", cfg.samples, "number of sampled encodings");
    search->add_flag("--probe", cfg.probe,
                     "also summarize the roots-of-unity encoding (d in {2,3,4})");

    try {
        app.parse(static_cast<int>(argv_fused.size()), argv_fused.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        OutputTarget target(cfg, out);
        if (app.got_subcommand(verify)) {
            cfg.command = "verify-paper";
            return cmd_verify_paper(cfg, *target.os);
        }
        if (app.got_subcommand(partition)) {
            cfg.command = "partition";
            return cmd_partition(cfg, *target.os);
        }
        if (app.got_subcommand(simulate)) {
            cfg.command = "simulate";
            return cmd_simulate(cfg, *target.os);
        }
        cfg.command = "search";
        return cmd_search(cfg, *target.os);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace ditray
