#include "kvtk/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kvtk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kChunks = 256;
constexpr int kGroups = 16;
constexpr int kStrata = 16;  // 4 x 4 grid on the first half-plane point

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform in the open interval (0,1), a pure function of its counters.
double u01(std::uint64_t seed, std::uint64_t chunk, std::uint64_t sample,
           std::uint64_t dim) {
  const std::uint64_t h =
      splitmix(splitmix(splitmix(splitmix(seed) ^ chunk) ^ sample) ^ dim);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

double det_inplace(std::vector<double>& m, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[static_cast<std::size_t>(r * n + col)]) >
          std::abs(m[static_cast<std::size_t>(pivot * n + col)]))
        pivot = r;
    const double p = m[static_cast<std::size_t>(pivot * n + col)];
    if (p == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = col; c < n; ++c)
        std::swap(m[static_cast<std::size_t>(pivot * n + c)],
                  m[static_cast<std::size_t>(col * n + c)]);
      det = -det;
    }
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const double factor = m[static_cast<std::size_t>(r * n + col)] / p;
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c)
        m[static_cast<std::size_t>(r * n + c)] -=
            factor * m[static_cast<std::size_t>(col * n + c)];
    }
  }
  return det;
}

McResult mc_integrate(int half_plane_points, int unit_dims, const Integrand& f,
                      const McOptions& opts) {
  if (opts.samples < 1)
    throw std::invalid_argument("mc_integrate: samples >= 1 required");
  if (half_plane_points < 0 || unit_dims < 0 ||
      half_plane_points + unit_dims < 1)
    throw std::invalid_argument("mc_integrate: nothing to integrate over");

  const long block = static_cast<long>(kChunks) * kStrata;
  const long samples = ((opts.samples + block - 1) / block) * block;
  const long chunk_size = samples / kChunks;

  std::vector<double> chunk_sum(kChunks, 0.0);
  std::vector<long> chunk_bad(kChunks, 0);

  auto run_chunk = [&](int c) {
    double acc = 0.0;
    long bad = 0;
    std::vector<std::complex<double>> pts(
        static_cast<std::size_t>(half_plane_points));
    std::vector<double> aux(static_cast<std::size_t>(unit_dims));
    for (long s = 0; s < chunk_size; ++s) {
      double weight = 1.0;
      int dim = 0;
      for (int k = 0; k < half_plane_points; ++k) {
        double u = u01(opts.seed, static_cast<std::uint64_t>(c),
                       static_cast<std::uint64_t>(s),
                       static_cast<std::uint64_t>(dim++));
        double v = u01(opts.seed, static_cast<std::uint64_t>(c),
                       static_cast<std::uint64_t>(s),
                       static_cast<std::uint64_t>(dim++));
        if (k == 0) {
          const int cell = static_cast<int>(s % kStrata);
          u = (cell % 4 + u) / 4.0;
          v = (cell / 4 + v) / 4.0;
        }
        // Heavy-tailed map onto the half-plane; the factors below are the
        // reciprocals of the sampling density.
        const double x = 0.5 + 1.2 * std::tan(kPi * (u - 0.5));
        const double y = 0.8 * std::tan(kPi * v / 2.0);
        weight *= 1.2 * kPi * (1.0 + ((x - 0.5) / 1.2) * ((x - 0.5) / 1.2));
        weight *= 0.4 * kPi * (1.0 + (y / 0.8) * (y / 0.8));
        pts[static_cast<std::size_t>(k)] = {x, y};
      }
      for (int k = 0; k < unit_dims; ++k)
        aux[static_cast<std::size_t>(k)] =
            u01(opts.seed, static_cast<std::uint64_t>(c),
                static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(dim++));
      const double val = f(pts, aux) * weight;
      if (std::isfinite(val)) {
        acc += val;
      } else {
        ++bad;
      }
    }
    chunk_sum[static_cast<std::size_t>(c)] = acc;
    chunk_bad[static_cast<std::size_t>(c)] = bad;
  };

  int workers = opts.workers;
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = hc == 0 ? 1 : static_cast<int>(hc);
  }
  workers = std::min(workers, kChunks);
  if (workers <= 1) {
    for (int c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (int c = next.fetch_add(1); c < kChunks; c = next.fetch_add(1))
          run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  // Group means in fixed chunk order, then the median.
  std::vector<double> means(kGroups, 0.0);
  for (int c = 0; c < kChunks; ++c)
    means[static_cast<std::size_t>(c % kGroups)] +=
        chunk_sum[static_cast<std::size_t>(c)];
  const double group_samples =
      static_cast<double>(chunk_size) * (kChunks / kGroups);
  for (auto& m : means) m /= group_samples;

  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[kGroups / 2 - 1] + sorted[kGroups / 2]);

  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= kGroups;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (kGroups - 1);
  // Asymptotic efficiency of the median of normal means: pi/2.
  const double kMedianFactor = 1.2533141373155003;
  const double se = kMedianFactor * std::sqrt(var / kGroups);

  McResult r;
  r.value = median;
  r.stderr_ = se;
  r.samples = samples;
  r.seed = opts.seed;
  for (long b : chunk_bad) r.bad_samples += b;
  return r;
}

}  // namespace kvtk
