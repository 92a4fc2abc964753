/* Apache License, Version 2.0 */
#include "ghp/space_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ghp {

using nlohmann::json;

namespace {

json ext_to_json(ExtReal v) {
  if (v.is_inf()) return json("inf");
  return json(v.value());
}

ExtReal ext_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtReal::inf();
    throw InvalidSpaceError("matrix entries must be numbers or \"inf\"", {});
  }
  if (!j.is_number())
    throw InvalidSpaceError("matrix entries must be numbers or \"inf\"", {});
  return ExtReal(j.get<double>());
}

}  // namespace

std::string space_to_json(const FiniteSpace& x, int base) {
  json j;
  j["n"] = x.size();
  json rows = json::array();
  for (int i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < x.size(); ++k) row.push_back(ext_to_json(x.dist(i, k)));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  if (base >= 0) j["base"] = base;
  if (!x.label().empty()) j["label"] = x.label();
  return j.dump(2);
}

FiniteSpace space_from_json(const std::string& text, int* base_out) {
  json j = json::parse(text);
  if (!j.contains("matrix") || !j["matrix"].is_array())
    throw InvalidSpaceError("space file: missing matrix", {});
  RawMatrix m;
  for (const auto& row : j["matrix"]) {
    std::vector<ExtReal> r;
    for (const auto& e : row) r.push_back(ext_from_json(e));
    m.push_back(std::move(r));
  }
  if (j.contains("n") && j["n"].get<int>() != static_cast<int>(m.size()))
    throw InvalidSpaceError("space file: n does not match matrix size", {});
  std::string label = j.value("label", std::string());
  if (base_out) {
    *base_out = j.value("base", -1);
    if (*base_out >= static_cast<int>(m.size()))
      throw InvalidSpaceError("space file: base index out of range", {});
  }
  return FiniteSpace(std::move(m), std::move(label));  // validates, may throw
}

FiniteSpace load_space_file(const std::string& path, int* base_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open space file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return space_from_json(ss.str(), base_out);
}

void save_space_file(const std::string& path, const FiniteSpace& x, int base) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write space file: " + path);
  out << space_to_json(x, base) << "\n";
}

std::string rho_to_json(const RhoEstimate& est) {
  json j;
  json per;
  for (const RhoLevel& l : est.levels) {
    json e;
    e["N"] = l.n;
    e["lo"] = l.value.lo;
    e["hi"] = l.value.hi;
    e["certified"] = l.certified;
    e["net_radius_sum"] = l.radius_sum;
    e["sampling_slack"] = l.sampling_slack;
    per.push_back(std::move(e));
  }
  j["per_N"] = std::move(per);
  j["tail"] = est.tail_bound;
  j["lo"] = est.total.lo;
  j["hi"] = est.total.hi;
  j["model_gap"] = est.model_gap;
  j["outer_lo"] = est.outer().lo;
  j["outer_hi"] = est.outer().hi;
  j["fully_certified"] = est.fully_certified;
  return j.dump(2);
}

std::string net_to_json(const SliceNet& net) {
  json arr = json::array();
  for (const FiniteSpace& s : net.elements) {
    arr.push_back(json::parse(space_to_json(s, net.pointed ? 0 : -1)));
  }
  json j;
  j["n_cap"] = net.n_cap;
  j["diam_cap"] = net.diam_cap;
  j["delta"] = net.delta;
  j["certified"] = net.certified;
  j["net_radius"] = net.net_radius;
  j["sampling_slack"] = net.sampling_slack;
  j["elements"] = std::move(arr);
  return j.dump(2);
}

}  // namespace ghp
