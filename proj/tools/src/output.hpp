#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace tiqs::cli {

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

struct Provenance {
  std::string scenario;
  std::string config_hash;
  std::vector<std::string> regime;  // one line per check
  std::string timestamp;
};

// files are held in memory and only land on disk together
class ArtifactSet {
 public:
  explicit ArtifactSet(Provenance p) : prov_(std::move(p)) {}

  // CSV with a "# " header block; the timestamp is the last header line
  std::ostringstream& csv(const std::string& name, const std::vector<std::string>& columns);
  void report(const std::string& name, nlohmann::json body);

  void commit(const std::filesystem::path& dir) const;
  Provenance& provenance() { return prov_; }

 private:
  Provenance prov_;
  std::map<std::string, std::ostringstream> csv_;
  std::map<std::string, std::string> json_;
};

std::string format_double(double v);

}  // namespace tiqs::cli
