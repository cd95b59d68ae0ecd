#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ditray/partition.hpp"
#include "ditray/search.hpp"
#include "ditray/simulator.hpp"

namespace ditray {

// "alpha", "alphabar", "1", "-1", "0", "i", "-i" when the value matches one
// of these within 1e-12; otherwise decimal "a+bi".
std::string complex_to_text(Cx z);

// Decimal "a+bi" (also plain "a" or "bi").
Cx parse_complex_literal(const std::string& text);

// Comma-separated complex literals, one per letter.
Encoding parse_encoding_literal(const std::string& text);

// Ray scaled to a leading 1, e.g. "(1,1,alpha)".
std::string render_ray_text(const Ray& ray);

nlohmann::json complex_json(Cx z);  // [re, im]
nlohmann::json vector_json(const CVector& v);
nlohmann::json class_table_json(const ClassTable& table, const Alphabet& alphabet);
nlohmann::json decomposition_json(const BasisDecomposition& decomp);
nlohmann::json mub_json(const MubReport& report);
nlohmann::json search_report_json(const SearchReport& report);
nlohmann::json protocol_summary_json(const ProtocolSummary& summary, const ClassTable& table,
                                     const Alphabet& alphabet);

// d x k grid with one line per class, columns = bases; empty string unless
// the decomposition is feasible.
std::string render_scheme_text(const ClassTable& table, const BasisDecomposition& decomp,
                               const Alphabet& alphabet);

// RFC 4180: fields quoted when needed, records terminated with CRLF.
std::string csv_field(const std::string& value);
std::string csv_row(const std::vector<std::string>& fields);

std::string format_double(double value);  // shortest round-trip form

}  // namespace ditray
