#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "tiqs/couplings.hpp"
#include "tiqs/ion_crystal.hpp"

namespace tiqs::cli {

using json = nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& what);
  std::string path;
};

// read-only view of one JSON object with its location for error messages
class Node {
 public:
  Node(const json& j, std::string path);

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;
  Node child(const std::string& key) const;
  Node child_or_empty(const std::string& key) const;
  void allow(std::initializer_list<const char*> keys) const;
  std::vector<Node> objects(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> integers(const std::string& key) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;

  // angular frequency from <key>_2pi_Hz or <key>_rad_s, exactly one present
  bool has_frequency(const std::string& key) const;
  double frequency(const std::string& key) const;
  double frequency(const std::string& key, double fallback) const;
  std::vector<double> frequencies(const std::string& key) const;

 private:
  const json* j_;
  std::string path_;
  std::string at(const std::string& key) const { return path_ + "." + key; }
};

CrystalConfig read_crystal(const Node& n);
// mu from mu_* or detuning_from_omega_x_* (signed, mu = omega_x + value)
DriveSpec read_drive(const Node& n, double omega_x);

}  // namespace tiqs::cli
