#include "kvtk/density.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "kvtk/bch_series.hpp"
#include "kvtk/mc_engine.hpp"
#include "kvtk/rational_series.hpp"

namespace kvtk {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base ^ (salt + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ------------------------------------------------------- exact oracle side

/// tr log of the determinant factor: sum_k gamma_k tr((ad u)^k). The j
/// factor expands log((1 - e^{-s})/s); the q factor log(sinh(s/2)/(s/2)).
Polynomial log_det_factor(const LieAlgebraSpec& alg, const VectorPoly& u,
                          int degree, bool use_q) {
  const int nvars = 2 * alg.dim();
  std::vector<Rational> gamma;
  if (!use_q) {
    gamma = log_jfactor_coeffs(static_cast<std::size_t>(degree));
  } else {
    RationalSeries sinc(static_cast<std::size_t>(degree));
    Rational fact(1);  // (2m + 1)!
    Rational quarter(1);
    for (int m = 0; 2 * m <= degree; ++m) {
      if (m > 0) {
        fact *= Rational(2 * m) * Rational(2 * m + 1);
        quarter /= Rational(4);
      }
      sinc[static_cast<std::size_t>(2 * m)] = quarter / fact;
    }
    gamma = series_log(sinc, static_cast<std::size_t>(degree)).c;
  }
  Polynomial acc(nvars, degree);
  PolyMatrix power = poly_matrix_identity(alg.dim(), nvars, degree);
  const PolyMatrix a = alg.ad_poly(u, nvars, degree);
  for (int k = 1; k <= degree; ++k) {
    power = mat_mul(power, a, degree);
    if (gamma[static_cast<std::size_t>(k)] == 0) continue;
    acc = acc + scale(mat_trace(power), gamma[static_cast<std::size_t>(k)]);
  }
  return acc;
}

Polynomial exp_poly(const Polynomial& l, int degree) {
  Polynomial acc = Polynomial::constant(Rational(1), l.nvars, degree);
  Polynomial power = Polynomial::constant(Rational(1), l.nvars, degree);
  Rational fact(1);
  for (int k = 1; k <= degree; ++k) {
    power = mul(power, l, degree);
    if (power.is_zero()) break;
    fact *= Rational(k);
    acc = acc + scale(power, 1 / fact);
  }
  return acc;
}

// ------------------------------------------- importance-sampled wheel side

// Proposal shape around each singular center: half the shell draws take a
// log-uniform radius (covers collapse down to kRhoMin and out to kRhoMax),
// half a uniform radius on [0, kRhoLin] (covers the moderate-separation bulk
// that carries most of the integrand's mass). kAlpha splits each vertex
// between the shells and the global map. Tuned on the mixed two-spoke wheel;
// the same shape works for every graph the expansion needs.
constexpr double kAlpha = 0.7;
constexpr double kRhoMin = 1e-7;
constexpr double kRhoMax = 1e3;
constexpr double kRhoLin = 0.7;
const double kLogR = std::log(kRhoMax / kRhoMin);

/// Density of the engine's heavy-tailed half-plane map.
double tan_density(std::complex<double> z) {
  const double xs = (z.real() - 0.5) / 1.2;
  const double ys = z.imag() / 0.8;
  return 1.0 / (1.2 * kPi * (1.0 + xs * xs)) / (0.4 * kPi * (1.0 + ys * ys));
}

struct Center {
  std::complex<double> c;
  bool boundary = false;  // real-axis center: upper semicircle only
};

double shell_density(std::complex<double> z, const Center& c) {
  const double r = std::abs(z - c.c);
  double radial = 0.0;
  if (r >= kRhoMin && r <= kRhoMax) radial += 0.5 / (kLogR * r * r);
  if (r < kRhoLin) radial += 0.5 / (kRhoLin * r);
  return radial / (c.boundary ? kPi : 2.0 * kPi);
}

// Every vertex's proposal covers both pins and all earlier-sampled points,
// not just its own edge targets: the singular strata of the integrand are
// clusters of points collapsing together onto a pin or onto each other, and
// a vertex joins such a cluster through its neighbours even when none of its
// edges touches the cluster point directly.
std::vector<Center> pin_centers(const EyePoint& xi) {
  const auto [pin1, pin2] = xi.pinned_points();
  std::vector<Center> fixed;
  for (std::complex<double> c : {pin1, pin2}) {
    if (std::abs(c.imag()) < 1e-12) {
      fixed.push_back({{c.real(), 0.0}, true});
    } else {
      fixed.push_back({c, false});
      fixed.push_back({std::conj(c), false});
    }
  }
  return fixed;
}

McResult importance_mc(const KGraph& g, const EyePoint& xi,
                       const McOptions& opts) {
  const GraphIntegrand f(g, xi);
  const std::vector<Center> fixed = pin_centers(xi);
  const int n = g.n_aerial;

  auto sample = [&](const std::vector<std::complex<double>>&,
                    const std::vector<double>& aux) -> double {
    thread_local std::vector<std::complex<double>> z;
    thread_local std::vector<Center> centers;
    z.assign(static_cast<std::size_t>(n), {});
    double inv_density = 1.0;
    for (int v = 0; v < n; ++v) {
      centers.assign(fixed.begin(), fixed.end());
      for (int u = 0; u < v; ++u) {
        centers.push_back({z[static_cast<std::size_t>(u)], false});
        centers.push_back({std::conj(z[static_cast<std::size_t>(u)]), false});
      }
      const double uc = aux[static_cast<std::size_t>(3 * v)];
      const double ua = aux[static_cast<std::size_t>(3 * v + 1)];
      const double ub = aux[static_cast<std::size_t>(3 * v + 2)];
      const double alpha = centers.empty() ? 0.0 : kAlpha;
      std::complex<double> p;
      if (uc < alpha) {
        const double scaled =
            uc * static_cast<double>(centers.size()) / alpha;
        const auto k =
            std::min(static_cast<std::size_t>(scaled), centers.size() - 1);
        const double sub = scaled - static_cast<double>(k);
        const Center& c = centers[k];
        const double rho = sub < 0.5 ? kRhoMin * std::exp(ua * kLogR)
                                     : kRhoLin * ua;
        const double ang = (c.boundary ? kPi : 2.0 * kPi) * ub;
        p = c.c + std::polar(rho, ang);
      } else {
        p = {0.5 + 1.2 * std::tan(kPi * (ua - 0.5)),
             0.8 * std::tan(kPi * ub / 2.0)};
      }
      if (!(p.imag() > 0.0)) return 0.0;  // the integrand extends by zero
      double dens = (1.0 - alpha) * tan_density(p);
      if (!centers.empty()) {
        const double per = alpha / static_cast<double>(centers.size());
        for (const Center& c : centers) dens += per * shell_density(p, c);
      }
      inv_density /= dens;
      z[static_cast<std::size_t>(v)] = p;
    }
    return f(z) * inv_density;
  };

  return mc_integrate(0, 3 * n, sample, opts);
}

std::map<Monomial, double> to_numeric(const Polynomial& p) {
  std::map<Monomial, double> out;
  for (const auto& [m, c] : p.terms) out.emplace(m, to_double(c));
  return out;
}

std::map<Monomial, double> mul_numeric(const std::map<Monomial, double>& a,
                                       const std::map<Monomial, double>& b,
                                       int nvars, int max_degree) {
  std::map<Monomial, double> r;
  for (const auto& [ma, ca] : a) {
    const int da = monomial_degree(ma);
    if (da > max_degree) continue;
    for (const auto& [mb, cb] : b) {
      if (da + monomial_degree(mb) > max_degree) continue;
      Monomial m(static_cast<std::size_t>(nvars), 0);
      for (int v = 0; v < nvars; ++v)
        m[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
            ma[static_cast<std::size_t>(v)] + mb[static_cast<std::size_t>(v)]);
      r[m] += ca * cb;
    }
  }
  return r;
}

}  // namespace

DensityExpansion density_oracle(const LieAlgebraSpec& alg, int degree,
                                bool use_q) {
  if (degree < 0 || degree > 6)
    throw std::invalid_argument("density_oracle: degree must be in [0, 6]");
  const int nvars = 2 * alg.dim();

  DensityExpansion out;
  out.algebra = alg.name();
  out.max_total_degree = degree;
  out.source = DensitySource::oracle;

  Polynomial l(nvars, degree);
  if (degree >= 1) {
    const VectorPoly x = generic_element(alg, 0, degree);
    const VectorPoly y = generic_element(alg, 1, degree);
    const VectorPoly z = eval_on_algebra(bch_oracle(degree), alg);
    l = scale(log_det_factor(alg, x, degree, use_q) +
                  log_det_factor(alg, y, degree, use_q) -
                  log_det_factor(alg, z, degree, use_q),
              Rational(1, 2));
  }
  out.log_exact = l;
  out.exact = exp_poly(l, degree);
  out.terms = to_numeric(out.exact);
  out.log_terms = to_numeric(out.log_exact);
  return out;
}

WeightEstimate wheel_weight(const WheelGraph& w, const EyePoint& xi,
                            long samples, std::uint64_t seed, int workers) {
  const KGraph g = w.to_kgraph();
  xi.validate();
  McOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.workers = workers;
  const McResult r = importance_mc(g, xi, opts);
  WeightEstimate est;
  est.value = r.value;
  est.stderr_ = r.stderr_;
  est.samples = r.samples;
  est.seed = r.seed;
  est.bad_samples = r.bad_samples;
  return est;
}

DensityExpansion density_from_wheels(const LieAlgebraSpec& alg,
                                     const EyePoint& xi, int degree,
                                     const WheelMcParams& mc) {
  if (degree < 0 || degree > 4)
    throw std::invalid_argument(
        "density_from_wheels: degree must be in [0, 4]");
  xi.validate();
  const int nvars = 2 * alg.dim();

  DensityExpansion out;
  out.algebra = alg.name();
  out.max_total_degree = degree;
  out.source = DensitySource::wheels;
  out.xi = xi;
  out.samples_per_wheel = mc.samples;
  out.seed = mc.seed;

  // Measured log D and the per-wheel pieces needed for error propagation.
  struct Piece {
    double stderr_scaled = 0.0;  // stderr / cyclic symmetry
    std::map<Monomial, double> symbol;
  };
  std::vector<Piece> pieces;
  for (int n = 2; n <= std::min(degree, 3); ++n) {
    for (const WheelGraph& w : enumerate_wheels(n, n - 2)) {
      const Polynomial symbol = wheel_symbol(w, alg);
      if (symbol.is_zero()) continue;
      const KGraph g = w.to_kgraph();
      const std::uint64_t seed = mix_seed(mc.seed, canonical_hash(g));
      WeightEstimate est;
      if (mc.cache != nullptr) {
        const std::string key =
            WeightCache::key_for(g, xi, mc.samples, seed);
        if (auto hit = mc.cache->get(key)) {
          est = *hit;
        } else {
          est = wheel_weight(w, xi, mc.samples, seed, mc.workers);
          mc.cache->put(key, est);
        }
      } else {
        est = wheel_weight(w, xi, mc.samples, seed, mc.workers);
      }
      const double cyc = static_cast<double>(w.cyclic_symmetry());
      Piece piece;
      piece.stderr_scaled = est.stderr_ / cyc;
      piece.symbol = to_numeric(symbol);
      for (const auto& [m, c] : piece.symbol) {
        out.log_terms[m] += est.value / cyc * c;
        out.log_stderr[m] = std::hypot(out.log_stderr[m],
                                       piece.stderr_scaled * std::abs(c));
      }
      pieces.push_back(std::move(piece));
    }
  }

  // exp in coefficient space, then first-order error transport: the partial
  // of exp(L) in one wheel weight is its scaled symbol times exp(L).
  std::map<Monomial, double> d{{Monomial(static_cast<std::size_t>(nvars), 0),
                                1.0}};
  {
    std::map<Monomial, double> power = d;
    double fact = 1.0;
    for (int k = 1; k <= degree; ++k) {
      power = mul_numeric(power, out.log_terms, nvars, degree);
      if (power.empty()) break;
      fact *= k;
      for (const auto& [m, c] : power) d[m] += c / fact;
    }
  }
  out.terms = d;
  for (const Piece& piece : pieces) {
    const auto partial = mul_numeric(piece.symbol, d, nvars, degree);
    for (const auto& [m, c] : partial)
      out.coeff_stderr[m] =
          std::hypot(out.coeff_stderr[m], piece.stderr_scaled * std::abs(c));
  }
  return out;
}

}  // namespace kvtk
