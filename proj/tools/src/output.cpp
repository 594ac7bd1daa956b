#include "output.hpp"

#include <Eigen/Core>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "tiqs/version.hpp"

namespace tiqs::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string modules_line() {
  return std::string("tiqs ") + TIQS_VERSION_STRING + ", core " + TIQS_VERSION_STRING + ", eigen " +
         std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

}  // namespace

std::ostringstream& ArtifactSet::csv(const std::string& name, const std::vector<std::string>& columns) {
  std::ostringstream& os = csv_[name];
  os << "# " << modules_line() << "\n";
  os << "# scenario: " << prov_.scenario << "\n";
  os << "# config_hash: fnv1a64:" << prov_.config_hash << "\n";
  for (const auto& r : prov_.regime) os << "# regime: " << r << "\n";
  os << "# generated: " << prov_.timestamp << "\n";
  for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  return os;
}

void ArtifactSet::report(const std::string& name, nlohmann::json body) {
  nlohmann::json p;
  p["modules"] = modules_line();
  p["scenario"] = prov_.scenario;
  p["config_hash"] = "fnv1a64:" + prov_.config_hash;
  p["regime"] = prov_.regime;
  p["generated"] = prov_.timestamp;
  body["provenance"] = p;
  json_[name] = body.dump(2) + "\n";
}

void ArtifactSet::commit(const fs::path& dir) const {
  fs::create_directories(dir);
  std::random_device rd;
  const fs::path tmp = dir / (".tiqs-partial-" + hex64((std::uint64_t(rd()) << 32) ^ rd()));
  fs::create_directory(tmp);
  try {
    auto put = [&](const std::string& name, const std::string& bytes) {
      std::ofstream f(tmp / name, std::ios::binary);
      f << bytes;
      f.close();
      if (!f) throw std::runtime_error("could not write " + (tmp / name).string());
    };
    for (const auto& [n, s] : csv_) put(n, s.str());
    for (const auto& [n, s] : json_) put(n, s);
    for (const auto& [n, s] : csv_) fs::rename(tmp / n, dir / n);
    for (const auto& [n, s] : json_) fs::rename(tmp / n, dir / n);
    fs::remove_all(tmp);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(tmp, ec);
    throw;
  }
}

}  // namespace tiqs::cli
