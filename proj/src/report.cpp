#include "ditray/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace ditray {

namespace {

Cx alpha_value() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }
Cx alphabar_value() { return std::polar(1.0, -2.0 * std::numbers::pi / 3.0); }

constexpr double kNameTol = 1e-12;

}  // namespace

std::string complex_to_text(Cx z) {
    struct Named {
        Cx value;
        const char* name;
    };
    const Named named[] = {
        {{0.0, 0.0}, "0"},        {{1.0, 0.0}, "1"},
        {{-1.0, 0.0}, "-1"},      {{0.0, 1.0}, "i"},
        {{0.0, -1.0}, "-i"},      {alpha_value(), "alpha"},
        {alphabar_value(), "alphabar"},
    };
    for (const Named& candidate : named) {
        if (std::abs(z - candidate.value) < kNameTol) {
            return candidate.name;
        }
    }
    char buffer[80];
    std::snprintf(buffer, sizeof(buffer), "%.10g%+.10gi", z.real(), z.imag());
    return buffer;
}

Cx parse_complex_literal(const std::string& text) {
    std::string trimmed;
    for (char c : text) {
        if (c != ' ' && c != '\t') {
            trimmed += c;
        }
    }
    if (trimmed.empty()) {
        throw UsageError("empty complex literal");
    }
    const char* start = trimmed.c_str();
    char* end = nullptr;
    const double first = std::strtod(start, &end);
    if (end == start) {
        throw UsageError("malformed complex literal \"" + text + "\" (expected a+bi)");
    }
    if (*end == '\0') {
        return {first, 0.0};
    }
    if (*end == 'i' && end[1] == '\0') {
        return {0.0, first};
    }
    if (*end != '+' && *end != '-') {
        throw UsageError("malformed complex literal \"" + text + "\" (expected a+bi)");
    }
    const char* second_start = end;
    char* second_end = nullptr;
    const double second = std::strtod(second_start, &second_end);
    if (second_end == second_start || *second_end != 'i' || second_end[1] != '\0') {
        throw UsageError("malformed complex literal \"" + text + "\" (expected a+bi)");
    }
    return {first, second};
}

Encoding parse_encoding_literal(const std::string& text) {
    Encoding enc;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        enc.g.push_back(parse_complex_literal(token));
    }
    if (enc.g.size() < 2) {
        throw UsageError("encoding literal must list at least 2 comma-separated values");
    }
    return enc;
}

std::string render_ray_text(const Ray& ray) {
    Cx lead{1.0, 0.0};
    for (const Cx& x : ray.unit) {
        if (std::abs(x) > 1e-9) {
            lead = x;
            break;
        }
    }
    std::string text = "(";
    for (std::size_t i = 0; i < ray.unit.size(); ++i) {
        if (i > 0) {
            text += ',';
        }
        text += complex_to_text(ray.unit[i] / lead);
    }
    text += ')';
    return text;
}

nlohmann::json complex_json(Cx z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json vector_json(const CVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Cx& x : v) {
        out.push_back(complex_json(x));
    }
    return out;
}

nlohmann::json class_table_json(const ClassTable& table, const Alphabet& alphabet) {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        const RayClass& cls = table.classes[i];
        nlohmann::json members = nlohmann::json::array();
        for (long long id : cls.members) {
            members.push_back(format_function(DitFunction::from_id(id, table.d), alphabet));
        }
        classes.push_back({{"index", i},
                           {"ray", vector_json(cls.ray.unit)},
                           {"ray_text", render_ray_text(cls.ray)},
                           {"members", members}});
    }
    return {{"d", table.d},
            {"encoding", vector_json(table.encoding.g)},
            {"classes", classes}};
}

nlohmann::json decomposition_json(const BasisDecomposition& decomp) {
    nlohmann::json out;
    out["feasible"] = decomp.feasible;
    if (decomp.feasible) {
        out["k"] = decomp.k;
        out["bases"] = decomp.bases;
    } else {
        out["k"] = nullptr;
        out["bases"] = nullptr;
    }
    return out;
}

nlohmann::json mub_json(const MubReport& report) {
    return {{"max_intra_deviation", report.max_intra_deviation},
            {"cross_overlaps", report.cross_overlaps},
            {"max_cross_deviation", report.max_cross_deviation},
            {"is_mub", report.is_mub}};
}

namespace {

nlohmann::json sample_json(const ViolationRecord& record) {
    return {{"sample_index", record.sample_index},
            {"k", record.k},
            {"refined", record.refined},
            {"params", record.sample.params},
            {"encoding", vector_json(record.sample.enc.g)}};
}

}  // namespace

nlohmann::json search_report_json(const SearchReport& report) {
    nlohmann::json out;
    out["d"] = report.d;
    out["samples"] = report.samples;
    out["seed"] = report.seed;
    out["tolerance"] = report.tol;
    out["generator"] = report.generator;
    out["param_ranges"] = {{"log10_magnitude", {report.log10_mag_min, report.log10_mag_max}},
                           {"phase", {0.0, 2.0 * std::numbers::pi}}};
    out["min_k_found"] =
        report.min_k_found.has_value() ? nlohmann::json(*report.min_k_found) : nullptr;
    out["feasible_count"] = report.feasible_count;
    out["infeasible_count"] = report.infeasible_count;
    out["inadmissible_count"] = report.inadmissible_count;
    out["refined_count"] = report.refined_count;
    nlohmann::json violations = nlohmann::json::array();
    for (const ViolationRecord& record : report.violations) {
        violations.push_back(sample_json(record));
    }
    out["violations"] = violations;
    out["witness"] = report.witness.has_value() ? sample_json(*report.witness)
                                                : nlohmann::json(nullptr);
    if (report.d == 3) {
        out["proof_failures"] = report.proof_failures;
        out["min_step_b_margin"] = report.min_step_b_margin.has_value()
                                       ? nlohmann::json(*report.min_step_b_margin)
                                       : nullptr;
    }
    if (report.roots_of_unity.has_value()) {
        const RootsOfUnitySummary& roots = *report.roots_of_unity;
        out["roots_of_unity"] = {
            {"d", roots.d},
            {"ray_count", roots.ray_count},
            {"k", roots.k.has_value() ? nlohmann::json(*roots.k) : nullptr},
            {"is_mub", roots.is_mub.has_value() ? nlohmann::json(*roots.is_mub) : nullptr}};
    }
    return out;
}

nlohmann::json protocol_summary_json(const ProtocolSummary& summary, const ClassTable& table,
                                     const Alphabet& alphabet) {
    nlohmann::json per_function = nlohmann::json::array();
    for (const FunctionTally& tally : summary.per_function) {
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [label, count] : tally.outcome_counts) {
            counts[render_ray_text(table.classes[label].ray)] = count;
        }
        per_function.push_back(
            {{"function",
              format_function(DitFunction::from_id(tally.function_id, table.d), alphabet)},
             {"true_class", tally.true_class},
             {"outcome_counts", counts},
             {"accuracy", tally.accuracy}});
    }
    nlohmann::json per_class = nlohmann::json::object();
    for (const auto& [label, accuracy] : summary.per_class_accuracy) {
        per_class[render_ray_text(table.classes[label].ray)] = accuracy;
    }
    return {{"column", summary.column},
            {"seed", summary.seed},
            {"trials", summary.trials},
            {"per_function", per_function},
            {"per_class_accuracy", per_class},
            {"overall_accuracy", summary.overall_accuracy},
            {"oracle_calls", summary.oracle_calls}};
}

std::string render_scheme_text(const ClassTable& table, const BasisDecomposition& decomp,
                               const Alphabet& alphabet) {
    if (!decomp.feasible) {
        return {};
    }
    // One column per basis, one line per class: "members -> ray".
    std::vector<std::vector<std::string>> columns;
    std::size_t rows = 0;
    for (const auto& basis : decomp.bases) {
        std::vector<std::string> cells;
        for (int class_index : basis) {
            const RayClass& cls = table.classes[class_index];
            std::string cell;
            for (std::size_t m = 0; m < cls.members.size(); ++m) {
                if (m > 0) {
                    cell += ' ';
                }
                cell += format_function(DitFunction::from_id(cls.members[m], table.d), alphabet);
            }
            cell += " -> ";
            cell += render_ray_text(cls.ray);
            cells.push_back(std::move(cell));
        }
        rows = std::max(rows, cells.size());
        columns.push_back(std::move(cells));
    }
    std::vector<std::size_t> widths;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::size_t width = std::string("basis ").size() + 2;
        for (const std::string& cell : columns[c]) {
            width = std::max(width, cell.size());
        }
        widths.push_back(width);
    }
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string header = "basis " + std::to_string(c + 1);
        header.resize(widths[c], ' ');
        out << (c > 0 ? "  |  " : "") << header;
    }
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::string cell = r < columns[c].size() ? columns[c][r] : std::string{};
            cell.resize(widths[c], ' ');
            out << (c > 0 ? "  |  " : "") << cell;
        }
        out << "\n";
    }
    return out.str();
}

std::string csv_field(const std::string& value) {
    const bool needs_quotes =
        value.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted += c;
        }
    }
    quoted += '"';
    return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            row += ',';
        }
        row += csv_field(fields[i]);
    }
    row += "\r\n";
    return row;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace ditray
