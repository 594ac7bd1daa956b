#include "config.hpp"

#include <algorithm>

namespace tiqs::cli {

SchemaError::SchemaError(const std::string& p, const std::string& what)
    : std::runtime_error(p + ": " + what), path(p) {}

Node::Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) throw SchemaError(path_, "expected an object");
}

bool Node::has(const std::string& key) const { return j_->contains(key); }

Node Node::child(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required object missing");
  return Node((*j_)[key], at(key));
}

Node Node::child_or_empty(const std::string& key) const {
  static const json empty = json::object();
  return has(key) ? child(key) : Node(empty, at(key));
}

std::vector<Node> Node::objects(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required array missing");
  const json& v = (*j_)[key];
  if (!v.is_array() || v.empty()) throw SchemaError(at(key), "expected a non-empty array of objects");
  std::vector<Node> out;
  for (size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], at(key) + "[" + std::to_string(i) + "]");
  return out;
}

void Node::allow(std::initializer_list<const char*> keys) const {
  for (auto it = j_->begin(); it != j_->end(); ++it) {
    const std::string& k = it.key();
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw SchemaError(at(k), "unknown field");
  }
}

double Node::number(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required number missing");
  const json& v = (*j_)[key];
  if (!v.is_number()) throw SchemaError(at(key), "expected a number");
  return v.get<double>();
}

double Node::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

int Node::integer(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required integer missing");
  const json& v = (*j_)[key];
  if (!v.is_number_integer()) throw SchemaError(at(key), "expected an integer");
  return v.get<int>();
}

int Node::integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

bool Node::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const json& v = (*j_)[key];
  if (!v.is_boolean()) throw SchemaError(at(key), "expected true or false");
  return v.get<bool>();
}

std::string Node::string(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const json& v = (*j_)[key];
  if (!v.is_string()) throw SchemaError(at(key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> Node::numbers(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required array missing");
  const json& v = (*j_)[key];
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw SchemaError(at(key), "expected a number or a non-empty array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw SchemaError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<double> Node::numbers(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? numbers(key) : fallback;
}

std::vector<int> Node::integers(const std::string& key) const {
  if (!has(key)) throw SchemaError(at(key), "required array missing");
  const json& v = (*j_)[key];
  if (v.is_number_integer()) return {v.get<int>()};
  if (!v.is_array() || v.empty()) throw SchemaError(at(key), "expected an integer or a non-empty array of integers");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw SchemaError(at(key) + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

std::vector<int> Node::integers(const std::string& key, const std::vector<int>& fallback) const {
  return has(key) ? integers(key) : fallback;
}

bool Node::has_frequency(const std::string& key) const { return has(key + "_2pi_Hz") || has(key + "_rad_s"); }

std::vector<double> Node::frequencies(const std::string& key) const {
  const bool hz = has(key + "_2pi_Hz"), rad = has(key + "_rad_s");
  if (hz && rad) throw SchemaError(at(key + "_2pi_Hz"), "give either _2pi_Hz or _rad_s, not both");
  if (!hz && !rad) throw SchemaError(at(key + "_2pi_Hz"), "required frequency missing (_2pi_Hz or _rad_s)");
  std::vector<double> v = numbers(hz ? key + "_2pi_Hz" : key + "_rad_s");
  if (hz)
    for (double& x : v) x *= two_pi;
  return v;
}

double Node::frequency(const std::string& key) const {
  std::vector<double> v = frequencies(key);
  if (v.size() != 1) throw SchemaError(at(key), "expected a single value");
  return v.front();
}

double Node::frequency(const std::string& key, double fallback) const {
  return has_frequency(key) ? frequency(key) : fallback;
}

CrystalConfig read_crystal(const Node& n) {
  n.allow({"N", "omega_z_2pi_Hz", "omega_z_rad_s", "omega_x_2pi_Hz", "omega_x_rad_s", "mass_kg"});
  CrystalConfig c;
  c.N = n.integer("N");
  c.omega_z = n.frequency("omega_z");
  c.omega_x = n.frequency("omega_x");
  c.mass = n.number("mass_kg", c.mass);
  if (c.N < 2) throw SchemaError(n.path() + ".N", "need at least 2 ions");
  if (!(c.omega_x > c.omega_z && c.omega_z > 0.0))
    throw SchemaError(n.path() + ".omega_x_2pi_Hz", "need omega_x > omega_z > 0");
  return c;
}

DriveSpec read_drive(const Node& n, double omega_x) {
  n.allow({"Omega_L_2pi_Hz", "Omega_L_rad_s", "mu_2pi_Hz", "mu_rad_s", "detuning_from_omega_x_2pi_Hz",
           "detuning_from_omega_x_rad_s", "phi_s_rad", "phi_m_rad", "h0_2pi_Hz", "h0_rad_s", "Delta_2pi_Hz",
           "Delta_rad_s", "xi", "eta", "omega_R_2pi_Hz", "omega_R_rad_s", "debye_waller"});
  DriveSpec d;
  d.Omega_L = n.frequency("Omega_L");
  const bool abs = n.has_frequency("mu"), rel = n.has_frequency("detuning_from_omega_x");
  if (abs == rel) throw SchemaError(n.path() + ".mu_2pi_Hz", "give exactly one of mu_* or detuning_from_omega_x_*");
  d.mu = abs ? n.frequency("mu") : omega_x + n.frequency("detuning_from_omega_x");
  d.set_phases(n.number("phi_s_rad", 0.0), n.number("phi_m_rad", 0.0));
  d.h0 = n.frequency("h0", 0.0);
  d.Delta = n.frequency("Delta", 0.0);
  d.xi = n.number("xi", 0.0);
  d.eta = n.number("eta", d.eta);
  d.omega_R = n.frequency("omega_R", 0.0);
  d.debye_waller = n.boolean("debye_waller", false);
  return d;
}

}  // namespace tiqs::cli
