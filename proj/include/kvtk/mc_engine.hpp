#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace kvtk {

struct McOptions {
  long samples = 100000;
  std::uint64_t seed = 0;
  int workers = 0;  // <= 0 picks the hardware concurrency
};

struct McResult {
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;  // actually evaluated; the request is rounded up
  std::uint64_t seed = 0;
  long bad_samples = 0;  // non-finite integrand values, counted not clipped
};

/**
 * Integrand over (H)^k x [0,1]^m: called with k half-plane points and m unit
 * interval auxiliaries, must return the raw integrand value (the change of
 * variables to the sampling density is the engine's business).
 */
using Integrand = std::function<double(const std::vector<std::complex<double>>&,
                                       const std::vector<double>&)>;

/**
 * Deterministic chunked Monte Carlo over (H)^k x [0,1]^m.
 *
 * The sample stream is a pure function of (seed, chunk, sample, dimension)
 * through a counter hash, so the estimate is bit-identical for any worker
 * count. 256 equal chunks feed 16 groups; the reported value is the median
 * of the group means (robust against the integrable singularities at point
 * collisions, whose variance need not be finite) and the error bar is the
 * asymptotic standard error of that median. The first half-plane point is
 * stratified on a 4x4 grid to cut variance; requested sample counts are
 * rounded up to a multiple of 4096 so every chunk sees every stratum
 * equally often.
 *
 * pre: samples >= 1, k + m >= 1. errors: std::invalid_argument.
 */
McResult mc_integrate(int half_plane_points, int unit_dims, const Integrand& f,
                      const McOptions& opts);

/// Determinant by Gaussian elimination with partial pivoting; m is row-major
/// n x n and is clobbered.
double det_inplace(std::vector<double>& m, int n);

}  // namespace kvtk
