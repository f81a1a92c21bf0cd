#include "cusptorsion/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cusptorsion::report {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("cannot serialize a non-finite value");
  if (v == 0.0) return "0";  // no negative zero in reports
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      // nlohmann::json keeps object keys in a std::map, so iteration is sorted
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten_into(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  auto join = [&](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten_into(it.value(), join(it.key()), rows);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten_into(v[i], join(std::to_string(i)), rows);
  } else {
    rows.emplace_back(prefix, scalar_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

json to_json(const torsion::TorsionReport& r) {
  json j = json::object();
  j["total"] = r.total;
  j["breakdown"] = json::object();
  for (const auto& [k, v] : r.breakdown) j["breakdown"][k] = v;
  j["inputs"] = json::object();
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
  if (!r.cs_digest.empty()) j["cross_section_digest"] = r.cs_digest;
  return j;
}

std::vector<std::pair<std::string, std::string>> flatten(const json& value) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_into(value, "", rows);
  return rows;
}

std::string to_csv(const json& value) {
  std::string out = "name,value\n";
  for (const auto& [name, text] : flatten(value)) out += csv_field(name) + "," + csv_field(text) + "\n";
  return out;
}

}  // namespace cusptorsion::report
