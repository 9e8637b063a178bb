#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "kvtk/eye.hpp"
#include "kvtk/kgraph.hpp"
#include "kvtk/weights.hpp"

namespace kvtk {

/**
 * Memoizes weight estimates by (canonical graph, chart, chart parameter on a
 * fixed grid, samples, seed). Always caches in memory; with a directory it
 * also persists one small JSON file per entry, so repeated path traces skip
 * finished integrals. Thread safe.
 */
class WeightCache {
 public:
  /// Empty directory string keeps the cache memory-only. The directory is
  /// created when missing.
  explicit WeightCache(std::string dir = "");

  static std::string key_for(const KGraph& g, const EyePoint& xi, long samples,
                             std::uint64_t seed);

  std::optional<WeightEstimate> get(const std::string& key);
  void put(const std::string& key, const WeightEstimate& estimate);

  /// Convenience wrapper around deformed_weight.
  WeightEstimate deformed(const KGraph& g, const EyePoint& xi, long samples,
                          std::uint64_t seed, int workers = 0);

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::map<std::string, WeightEstimate> memory_;
  std::mutex mutex_;
};

}  // namespace kvtk
