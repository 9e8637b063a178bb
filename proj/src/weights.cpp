#include "kvtk/weights.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "kvtk/mc_engine.hpp"
#include "kvtk/rational_series.hpp"

namespace kvtk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double angle(std::complex<double> p, std::complex<double> q) {
  if (p == q) throw std::invalid_argument("angle: coincident points");
  const std::complex<double> num = q - p;
  const std::complex<double> den = q - std::conj(p);
  if (den == 0.0) throw std::invalid_argument("angle: coincident points");
  return std::arg(num / den);
}

std::array<double, 4> angle_gradient(std::complex<double> p,
                                     std::complex<double> q) {
  const std::complex<double> u = 1.0 / (q - p);
  const std::complex<double> v = 1.0 / (q - std::conj(p));
  return {
      v.imag() - u.imag(),   // d/d Re p
      -u.real() - v.real(),  // d/d Im p
      u.imag() - v.imag(),   // d/d Re q
      u.real() - v.real(),   // d/d Im q
  };
}

GraphIntegrand::GraphIntegrand(const KGraph& g, const EyePoint& xi)
    : n_(g.n_aerial) {
  const auto [pin1, pin2] = xi.pinned_points();
  for (int i = 0; i < g.n_aerial; ++i) {
    for (Target t : g.edges[static_cast<std::size_t>(i)]) {
      Row r;
      r.src = i;
      if (t == kGround1) {
        r.pinned = pin1;
      } else if (t == kGround2) {
        r.pinned = pin2;
      } else {
        r.aerial_target = t - 1;
      }
      rows_.push_back(r);
    }
  }
}

double GraphIntegrand::operator()(
    const std::vector<std::complex<double>>& pts) const {
  thread_local std::vector<double> scratch;
  const int dim = 2 * n_;
  scratch.assign(static_cast<std::size_t>(dim * dim), 0.0);
  for (int e = 0; e < dim; ++e) {
    const Row& r = rows_[static_cast<std::size_t>(e)];
    const std::complex<double> p = pts[static_cast<std::size_t>(r.src)];
    const std::complex<double> q =
        r.aerial_target >= 0 ? pts[static_cast<std::size_t>(r.aerial_target)]
                             : r.pinned;
    if (p == q) return std::numeric_limits<double>::quiet_NaN();
    const auto grad = angle_gradient(p, q);
    scratch[static_cast<std::size_t>(e * dim + 2 * r.src)] = grad[0];
    scratch[static_cast<std::size_t>(e * dim + 2 * r.src + 1)] = grad[1];
    if (r.aerial_target >= 0) {
      scratch[static_cast<std::size_t>(e * dim + 2 * r.aerial_target)] +=
          grad[2];
      scratch[static_cast<std::size_t>(e * dim + 2 * r.aerial_target + 1)] +=
          grad[3];
    }
  }
  double det = det_inplace(scratch, dim);
  return det * std::pow(2.0 * kPi, -dim);
}

namespace {

WeightEstimate to_estimate(const McResult& r) {
  WeightEstimate w;
  w.value = r.value;
  w.stderr_ = r.stderr_;
  w.samples = r.samples;
  w.seed = r.seed;
  w.bad_samples = r.bad_samples;
  return w;
}

}  // namespace

WeightEstimate deformed_weight(const KGraph& g, const EyePoint& xi,
                               long samples, std::uint64_t seed, int workers) {
  g.validate();
  xi.validate();
  if (g.n_ground != 2)
    throw std::invalid_argument("deformed_weight: graph needs 2 ground points");
  if (g.n_aerial == 0)
    throw std::invalid_argument("deformed_weight: no aerial points");
  const GraphIntegrand f(g, xi);
  McOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.workers = workers;
  const McResult r = mc_integrate(
      g.n_aerial, 0,
      [&f](const std::vector<std::complex<double>>& pts,
           const std::vector<double>&) { return f(pts); },
      opts);
  return to_estimate(r);
}

WeightEstimate weight_mc(const KGraph& g, long samples, std::uint64_t seed,
                         int workers) {
  return deformed_weight(g, EyePoint::corner_01(), samples, seed, workers);
}

WeightEstimate weight_three_edge_ground(long samples, std::uint64_t seed,
                                        int workers) {
  McOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.workers = workers;
  // Rows: angles to the grounds 0, s, 1; columns (Re p, Im p, s). Only the
  // middle edge sees the moving ground. The orientation is pinned by the
  // reference value +1/6. The middle point is drawn from the exact density
  // of its own angle differential (the inverse-CDF map below), which kills
  // the variance of the s direction without changing the integral.
  const McResult r = mc_integrate(
      1, 1,
      [](const std::vector<std::complex<double>>& pts,
         const std::vector<double>& aux) {
        const std::complex<double> p = pts[0];
        const double a = p.real(), b = p.imag();
        const double alpha0 = std::atan(-a / b);
        const double alpha1 = std::atan((1.0 - a) / b);
        const double t = alpha0 + aux[0] * (alpha1 - alpha0);
        const double s = a + b * std::tan(t);
        // density of s: b / ((alpha1 - alpha0) |s - p|^2)
        const double inv_density =
            (alpha1 - alpha0) * (std::norm(p - std::complex<double>(s, 0.0))) /
            b;
        const auto g0 = angle_gradient(p, {0.0, 0.0});
        const auto gs = angle_gradient(p, {s, 0.0});
        const auto g1 = angle_gradient(p, {1.0, 0.0});
        // d angle(p, s) / ds is the Re-target entry of the gradient.
        const double ds = gs[2];
        const double det = ds * (g0[0] * g1[1] - g0[1] * g1[0]);
        return det * inv_density * std::pow(2.0 * kPi, -3.0);
      },
      opts);
  return to_estimate(r);
}

Rational bernoulli_lid_exact(int n, const Rational& t) {
  if (n < 0) throw std::invalid_argument("bernoulli_lid: n >= 0 required");
  const Rational val = eval_poly(bernoulli_polynomial(n), t);
  Rational fact(1);
  for (int k = 2; k <= n; ++k) fact *= Rational(k);
  return (n % 2 == 0 ? val : -val) / fact;
}

double bernoulli_lid(int n, double theta) {
  if (n < 0) throw std::invalid_argument("bernoulli_lid: n >= 0 required");
  const auto coeffs = bernoulli_polynomial(n);
  const double t = theta / kPi;
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;)
    acc = acc * t + to_double(coeffs[k]);
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return (n % 2 == 0 ? acc : -acc) / fact;
}

ExtendedGraph ExtendedGraph::ground_split() {
  ExtendedGraph eg;
  eg.kind = Kind::ground_split;
  return eg;
}

ExtendedGraph ExtendedGraph::aerial_tail(
    int n_aerial, std::vector<std::pair<int, Target>> edges) {
  ExtendedGraph eg;
  eg.kind = Kind::aerial_tail;
  eg.n_aerial = n_aerial;
  eg.tail_edges = std::move(edges);
  return eg;
}

ExtendedGraph ExtendedGraph::lid_difference(int ladder_n, double theta) {
  ExtendedGraph eg;
  eg.kind = Kind::lid_difference;
  eg.ladder_n = ladder_n;
  eg.theta = theta;
  return eg;
}

namespace {

/// Checks the one-missing-edge shape and returns 0 when every two-vertex
/// contraction degenerates; throws otherwise.
double aerial_tail_residual(const ExtendedGraph& eg) {
  const int n = eg.n_aerial;
  if (n < 1) throw std::invalid_argument("stokes: empty extended graph");
  if (static_cast<int>(eg.tail_edges.size()) != 2 * n - 1)
    throw std::invalid_argument("stokes: an extended graph has 2n-1 edges");
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  std::set<std::pair<int, Target>> seen;
  for (const auto& [src, t] : eg.tail_edges) {
    if (src < 1 || src > n)
      throw std::invalid_argument("stokes: edge source out of range");
    if (t < kGround2 || t > n || t == src)
      throw std::invalid_argument("stokes: bad edge target");
    if (!seen.insert({src, t}).second)
      throw std::invalid_argument("stokes: double edge");
    ++out[static_cast<std::size_t>(src - 1)];
  }
  int singles = 0;
  for (int v : out) {
    if (v != 1 && v != 2)
      throw std::invalid_argument("stokes: vertices carry one or two edges");
    if (v == 1) ++singles;
  }
  if (singles != 1)
    throw std::invalid_argument("stokes: exactly one single-edged vertex");

  // Collision faces: contract each aerial pair joined by an edge. The face
  // vanishes when the merged vertex would carry a loop or a double edge;
  // anything else would need a genuine weight on a stratum this catalog
  // does not cover.
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      int between = 0;
      for (const auto& [src, t] : eg.tail_edges)
        if ((src == i && t == j) || (src == j && t == i)) ++between;
      if (between == 0) continue;
      bool degenerate = between >= 2;  // leftover edge becomes a loop
      if (!degenerate) {
        // Outgoing double at the merged vertex.
        std::multiset<Target> merged;
        for (const auto& [src, t] : eg.tail_edges) {
          if ((src == i && t == j) || (src == j && t == i)) continue;
          if (src == i || src == j) merged.insert(t);
        }
        for (Target t : merged)
          if (merged.count(t) >= 2) degenerate = true;
        // Incoming double: a third vertex pointing at both ends.
        for (int k = 1; k <= n && !degenerate; ++k) {
          if (k == i || k == j) continue;
          int hits = 0;
          for (const auto& [src, t] : eg.tail_edges)
            if (src == k && (t == i || t == j)) ++hits;
          if (hits >= 2) degenerate = true;
        }
      }
      if (!degenerate)
        throw std::invalid_argument(
            "stokes: unsupported face type (non-degenerate contraction)");
    }
  }
  return 0.0;
}

}  // namespace

double stokes_residual(const ExtendedGraph& eg, long samples,
                       std::uint64_t seed, int workers) {
  switch (eg.kind) {
    case ExtendedGraph::Kind::ground_split: {
      const KGraph one{1, 2, {{kGround1, kGround2}}};
      const KGraph ladder2{2, 2, {{kGround1, 2}, {kGround1, kGround2}}};
      const auto w3 = weight_three_edge_ground(samples, seed, workers);
      const auto wl = weight_mc(ladder2, samples, seed ^ 0x9E3779B97F4A7C15ULL,
                                workers);
      const auto w1 = weight_mc(one, samples, seed ^ 0x2545F4914F6CDD1DULL,
                                workers);
      return w3.value + wl.value - w1.value * w1.value;
    }
    case ExtendedGraph::Kind::aerial_tail:
      return aerial_tail_residual(eg);
    case ExtendedGraph::Kind::lid_difference: {
      if (eg.ladder_n < 1)
        throw std::invalid_argument("stokes: ladder_n >= 1 required");
      const double lo = eg.theta - kLidDelta, hi = eg.theta + kLidDelta;
      if (lo < 0.0 || hi > kPi)
        throw std::invalid_argument(
            "stokes: theta too close to a corner for the finite difference");
      KGraph g{0, 2, {}};
      {
        // Ladder graph built inline to keep this module below the tree layer.
        g.n_aerial = eg.ladder_n;
        for (int i = 0; i + 1 < eg.ladder_n; ++i)
          g.edges.push_back({kGround1, i + 2});
        g.edges.push_back({kGround1, kGround2});
      }
      const auto whi = deformed_weight(g, EyePoint::upper_lid(hi), samples,
                                       seed, workers);
      const auto wlo = deformed_weight(g, EyePoint::upper_lid(lo), samples,
                                       seed ^ 0xD1B54A32D192ED03ULL, workers);
      const double fd = (whi.value - wlo.value) / (2.0 * kLidDelta);
      return fd + bernoulli_lid(eg.ladder_n - 1, eg.theta) / kPi;
    }
  }
  throw std::logic_error("stokes: bad kind");
}

}  // namespace kvtk
