#include "cactusj/io.hpp"

#include <fstream>

namespace cactusj {

json laurent_json(const Laurent& p) {
  json j = json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c.get_str();
  return j;
}

json ratfunc_json(const RatFunc& f) {
  json j;
  j["num"] = laurent_json(f.num());
  j["den"] = laurent_json(f.den());
  return j;
}

json rat_json(const Rat& q) { return json(q.get_str()); }

template <class C>
static json coeff_json(const C& c) {
  if constexpr (std::is_same_v<C, Laurent>)
    return laurent_json(c);
  else
    return ratfunc_json(c);
}

template <class C>
json hecke_json(const CoxGroup& W, const HeckeElt<C>& h) {
  json j;
  j["basis"] = h.basis == Basis::T ? "T" : "C";
  json coeffs = json::object();
  for (const auto& [w, c] : h.coef) coeffs[W.word_str(w)] = coeff_json(c);
  j["coeffs"] = coeffs;
  return j;
}

json jelt_json(const CoxGroup& W, const JElt<Int>& e) {
  json j = json::object();
  for (const auto& [w, c] : e.coef) j["t_" + W.word_str(w)] = c.get_str();
  return j;
}

json jelt_json(const CoxGroup& W, const JElt<Rat>& e) {
  json j = json::object();
  for (const auto& [w, c] : e.coef) j["t_" + W.word_str(w)] = c.get_str();
  return j;
}

json jelt_json(const CoxGroup& W, const JElt<RatFunc>& e) {
  json j = json::object();
  for (const auto& [w, c] : e.coef) j["t_" + W.word_str(w)] = ratfunc_json(c);
  return j;
}

GroupSpec group_spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedMatrixFile("cannot open matrix file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw MalformedMatrixFile("cannot parse matrix file " + path + ": " + e.what());
  }
  if (j.contains("type")) return parse_group_label(j["type"].get<std::string>());
  if (!j.contains("size") || !j.contains("m"))
    throw MalformedMatrixFile("matrix file needs either \"type\" or \"size\"+\"m\"");
  GroupSpec spec;
  spec.label = path;
  try {
    spec.matrix.size = j["size"].get<int>();
    spec.matrix.m = j["m"].get<std::vector<std::vector<int>>>();
  } catch (const std::exception& e) {
    throw MalformedMatrixFile("bad matrix entries in " + path + ": " + e.what());
  }
  spec.matrix.validate();
  return spec;
}

GroupSpec resolve_group_spec(const std::string& label, const std::string& matrix_file) {
  if (!label.empty() && !matrix_file.empty())
    throw ConfigError("give either --group or --matrix-file, not both");
  if (!label.empty()) return parse_group_label(label);
  if (!matrix_file.empty()) return group_spec_from_file(matrix_file);
  throw ConfigError("one of --group or --matrix-file is required");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template json hecke_json<Laurent>(const CoxGroup&, const HeckeElt<Laurent>&);
template json hecke_json<RatFunc>(const CoxGroup&, const HeckeElt<RatFunc>&);

}  // namespace cactusj
