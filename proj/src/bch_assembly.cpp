#include "kvtk/bch_assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kvtk/lie_trees.hpp"
#include "kvtk/weights.hpp"

namespace kvtk {

namespace {

// splitmix64 finisher; decorrelates the per-graph seeds from the base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t hash) {
  std::uint64_t z = base ^ (hash + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WeightEstimate tree_weight(const KGraph& g, const EyePoint& xi, long samples,
                           std::uint64_t seed, WeightCache* cache,
                           int workers) {
  if (cache) return cache->deformed(g, xi, samples, seed, workers);
  return deformed_weight(g, xi, samples, seed, workers);
}

}  // namespace

DeformedBch assemble(const EyePoint& xi, int order, long samples,
                     std::uint64_t seed, WeightCache* cache, int workers) {
  xi.validate();
  if (order < 1 || order > kAssembleOrderCeiling)
    throw std::invalid_argument("assemble: order must be in [1, " +
                                std::to_string(kAssembleOrderCeiling) + "]");
  DeformedBch out;
  out.xi = xi;
  out.order = order;
  out.series = LieSeries<double>(2, order);
  out.samples_per_graph = samples;
  out.seed = seed;
  out.series.add_term(Word{0}, 1.0);
  out.series.add_term(Word{1}, 1.0);

  std::map<Word, double> variance;
  for (int n = 1; n + 1 <= order; ++n) {
    for (const LieTree& t : enumerate_lie_trees(n)) {
      const KGraph g = to_kgraph(t);
      const WeightEstimate w = tree_weight(
          g, xi, samples, mix_seed(seed, canonical_hash(g)), cache, workers);
      for (const auto& [word, c] : symbol(t).coeffs) {
        const double cd = to_double(c);
        out.series.add_term(word, w.value * cd);
        variance[word] += cd * cd * w.stderr_ * w.stderr_;
      }
    }
  }
  for (const auto& [word, v] : variance)
    out.coeff_stderr[word] = std::sqrt(v);
  return out;
}

namespace {

struct Measured {
  double value = 0.0;
  double err = 0.0;
};

// The y-rooted ladder ad(y)^n x: swap the two ground markers of the x ladder.
KGraph y_ladder_graph(int n) {
  KGraph g = to_kgraph(lie_ladder(n));
  for (auto& e : g.edges)
    for (auto& t : e) {
      if (t == kGround1)
        t = kGround2;
      else if (t == kGround2)
        t = kGround1;
    }
  return g;
}

Measured mc_coeff(const KGraph& g, const EyePoint& xi, long samples,
                  std::uint64_t seed, int workers) {
  const WeightEstimate w = deformed_weight(
      g, xi, samples, mix_seed(seed, canonical_hash(g)), workers);
  return {w.value, w.stderr_};
}

}  // namespace

AssociativityDefect associativity_defect(const EyePoint& xi, int order,
                                         long samples, std::uint64_t seed,
                                         int workers) {
  xi.validate();
  if (order != 3)
    throw std::invalid_argument("associativity_defect: only order 3");

  AssociativityDefect out;
  out.xi = xi;
  out.series = LieSeries<double>(3, 3);
  const Word xyw{0, 1, 2};
  const Word xwy{0, 2, 1};

  // Ladder coefficients of Z_xi: c1 = [x,y], c2 = [x,[x,y]], c2p = [y,[y,x]].
  const bool exact_endpoint = xi.chart == EyeChart::iris ||
                              xi.chart == EyeChart::corner_01 ||
                              xi.chart == EyeChart::corner_10;
  if (exact_endpoint) {
    Rational c1(0), c2(0), c2p(0);
    if (xi.chart != EyeChart::iris) {
      const Rational t =
          xi.chart == EyeChart::corner_01 ? Rational(0) : Rational(1);
      c1 = bernoulli_lid_exact(1, t);
      c2 = bernoulli_lid_exact(2, t);
      // Both corners carry a Hausdorff-type series, so the mirrored ladder
      // has the mirrored exact coefficient: 1/12 at either end.
      c2p = Rational(1, 12);
    }
    out.series.add_term(xyw, to_double(c2 - c2p));
    out.series.add_term(xwy, to_double(c2 + 2 * c2p - c1 * c1));
    out.coeff_stderr[xyw] = 0.0;
    out.coeff_stderr[xwy] = 0.0;
    return out;
  }

  Measured c1, c2, c2p;
  if (xi.chart == EyeChart::upper_lid) {
    c1 = {bernoulli_lid(1, xi.param), 0.0};
    c2 = {bernoulli_lid(2, xi.param), 0.0};
  } else {
    c1 = mc_coeff(to_kgraph(lie_ladder(1)), xi, samples, seed, workers);
    c2 = mc_coeff(to_kgraph(lie_ladder(2)), xi, samples, seed, workers);
  }
  c2p = mc_coeff(y_ladder_graph(2), xi, samples, seed, workers);

  out.series.add_term(xyw, c2.value - c2p.value);
  out.series.add_term(xwy, c2.value + 2.0 * c2p.value - c1.value * c1.value);
  out.coeff_stderr[xyw] = std::hypot(c2.err, c2p.err);
  out.coeff_stderr[xwy] =
      std::sqrt(c2.err * c2.err + 4.0 * c2p.err * c2p.err +
                4.0 * c1.value * c1.value * c1.err * c1.err);
  return out;
}

namespace {

// Chart parameter of a point on a lid path; corners sit at the lid ends.
double lid_param(const EyePoint& p) {
  if (p.chart == EyeChart::corner_01) return 0.0;
  if (p.chart == EyeChart::corner_10) return 3.14159265358979323846;
  return p.param;
}

}  // namespace

PathTrace path_trace(const std::vector<EyePoint>& path, int order,
                     long samples, std::uint64_t seed, WeightCache* cache,
                     int workers) {
  if (path.empty()) throw std::invalid_argument("path_trace: empty path");
  for (const EyePoint& p : path) p.validate();

  bool upper = false, lower = false, other = false;
  for (const EyePoint& p : path) {
    switch (p.chart) {
      case EyeChart::upper_lid: upper = true; break;
      case EyeChart::lower_lid: lower = true; break;
      case EyeChart::corner_01:
      case EyeChart::corner_10: break;
      default: other = true; break;
    }
  }
  if (upper && lower)
    throw std::invalid_argument("path_trace: path mixes the two lids");
  if (other && (upper || lower))
    throw std::invalid_argument(
        "path_trace: path mixes lid and non-lid charts");
  const bool lid_path = (upper || lower) || !other;

  PathTrace out;
  out.points = path;
  for (std::size_t i = 0; i < path.size(); ++i) {
    out.params.push_back(lid_path ? lid_param(path[i])
                                  : static_cast<double>(i));
    const DeformedBch z = assemble(path[i], order, samples, seed, cache,
                                   workers);
    std::map<Word, double> c;
    for (const auto& [w, v] : z.series.coeffs)
      if (w.size() >= 2) c[w] = v;
    out.coeffs.push_back(std::move(c));
    out.errors.push_back(z.coeff_stderr);
  }

  out.fd.resize(path.size());
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double dp = out.params[i + 1] - out.params[i - 1];
    std::map<Word, double> row;
    std::map<Word, double> hi_lo = out.coeffs[i + 1];
    for (const auto& [w, v] : out.coeffs[i - 1]) hi_lo.emplace(w, 0.0);
    for (const auto& [w, hi] : hi_lo) {
      const auto lo = out.coeffs[i - 1].find(w);
      const double dv = hi - (lo == out.coeffs[i - 1].end() ? 0.0 : lo->second);
      if (dp == 0.0) {
        if (dv != 0.0)
          throw std::invalid_argument(
              "path_trace: coincident parameters with differing coefficients");
        row[w] = 0.0;
      } else {
        row[w] = dv / dp;
      }
    }
    out.fd[i] = std::move(row);
  }
  return out;
}

}  // namespace kvtk
