#pragma once

// CSV and JSON writers/readers for FieldGrid.
//
// CSV:  "# meta {...}" line, then "x,y,value", then one row per cell, %.17g.
// JSON: {"meta": {...}, "grid": {...}, "values": [...]}; non-finite as strings.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fdsec/errors.hpp"
#include "fdsec/field.hpp"

namespace fdsec {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

inline void write_csv(const FieldGrid& f, std::ostream& os) {
  nlohmann::json meta = f.meta;
  meta["grid"] = to_json(f.spec);
  os << "# meta " << meta.dump() << '\n';
  os << "x,y,value\n";
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    os << format_g17(f.spec.x_of(c)) << ',' << format_g17(f.spec.y_of(c)) << ',' << format_g17(f.values[c]) << '\n';
  }
}

inline FieldGrid read_csv(std::istream& is) {
  FieldGrid f;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# meta ", 0) != 0) throw InvalidParameter("CSV lacks the '# meta' line");
  f.meta = nlohmann::json::parse(line.substr(7));
  f.spec = grid_from_json(f.meta.at("grid"));
  if (!std::getline(is, line) || line != "x,y,value") throw InvalidParameter("CSV header must be x,y,value");
  f.values.reserve(f.spec.cells());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    if (last == std::string::npos) throw InvalidParameter("malformed CSV row: " + line);
    f.values.push_back(parse_double(line.substr(last + 1)));
  }
  if (f.values.size() != f.spec.cells()) throw InvalidParameter("CSV row count does not match the grid");
  return f;
}

inline nlohmann::json to_json(const FieldGrid& f) {
  nlohmann::json values = nlohmann::json::array();
  for (double v : f.values) values.push_back(number_to_json(v));
  return {{"meta", f.meta}, {"grid", to_json(f.spec)}, {"values", std::move(values)}};
}

inline FieldGrid field_from_json(const nlohmann::json& j) {
  FieldGrid f;
  f.meta = j.at("meta");
  f.spec = grid_from_json(j.at("grid"));
  for (const auto& v : j.at("values")) f.values.push_back(number_from_json(v));
  if (f.values.size() != f.spec.cells()) throw InvalidParameter("JSON value count does not match the grid");
  return f;
}

inline void write_json(const FieldGrid& f, std::ostream& os) { os << to_json(f).dump() << '\n'; }

inline FieldGrid read_json(std::istream& is) { return field_from_json(nlohmann::json::parse(is)); }

}  // namespace fdsec
