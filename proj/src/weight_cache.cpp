#include "kvtk/weight_cache.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kvtk {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Chart parameters snap to a 1e-9 grid so that path points recomputed from
/// slightly different arithmetic still hit the same entry.
long long grid(double v) { return std::llround(v * 1e9); }

}  // namespace

WeightCache::WeightCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string WeightCache::key_for(const KGraph& g, const EyePoint& xi,
                                 long samples, std::uint64_t seed) {
  std::ostringstream os;
  os << canonical_string(g) << "|";
  switch (xi.chart) {
    case EyeChart::interior:
      os << "interior:" << grid(xi.q.real()) << "," << grid(xi.q.imag());
      break;
    case EyeChart::upper_lid:
      os << "upper_lid:" << grid(xi.param);
      break;
    case EyeChart::lower_lid:
      os << "lower_lid:" << grid(xi.param);
      break;
    case EyeChart::iris:
      os << "iris";  // the approach angle does not enter the integrand
      break;
    case EyeChart::corner_01:
      os << "corner_01";
      break;
    case EyeChart::corner_10:
      os << "corner_10";
      break;
  }
  os << "|s" << samples << "|r" << seed;
  return os.str();
}

std::optional<WeightEstimate> WeightCache::get(const std::string& key) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memory_.find(key);
    if (it != memory_.end()) return it->second;
  }
  if (dir_.empty()) return std::nullopt;
  const auto path = std::filesystem::path(dir_) /
                    (std::to_string(fnv1a(key)) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    WeightEstimate w;
    w.value = j.at("value").get<double>();
    w.stderr_ = j.at("stderr").get<double>();
    w.samples = j.at("samples").get<long>();
    w.seed = j.at("seed").get<std::uint64_t>();
    w.bad_samples = j.value("bad_samples", 0L);
    std::lock_guard<std::mutex> lock(mutex_);
    memory_.emplace(key, w);
    return w;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // stale or foreign file; recompute
  }
}

void WeightCache::put(const std::string& key, const WeightEstimate& estimate) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    memory_[key] = estimate;
  }
  if (dir_.empty()) return;
  nlohmann::json j;
  j["key"] = key;
  j["value"] = estimate.value;
  j["stderr"] = estimate.stderr_;
  j["samples"] = estimate.samples;
  j["seed"] = estimate.seed;
  j["bad_samples"] = estimate.bad_samples;
  const auto path = std::filesystem::path(dir_) /
                    (std::to_string(fnv1a(key)) + ".json");
  std::ofstream out(path);
  out << j.dump() << "\n";
}

WeightEstimate WeightCache::deformed(const KGraph& g, const EyePoint& xi,
                                     long samples, std::uint64_t seed,
                                     int workers) {
  const std::string key = key_for(g, xi, samples, seed);
  if (auto hit = get(key)) return *hit;
  const WeightEstimate w = deformed_weight(g, xi, samples, seed, workers);
  put(key, w);
  return w;
}

}  // namespace kvtk
