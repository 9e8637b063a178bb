#pragma once

#include <complex>
#include <string>
#include <utility>

namespace kvtk {

enum class EyeChart { interior, upper_lid, lower_lid, iris, corner_01, corner_10 };

/**
 * Point of the compactified configuration space of two points in the upper
 * half-plane modulo az+b (the eye). Each chart stores the parameter of its
 * canonical representative:
 *
 *   interior    q in H, points pinned at (i, q)
 *   upper_lid   theta in [0, pi], points (0, e^{i theta}); theta = 0 is the
 *               corner (0, 1), theta = pi the corner (0, -1)
 *   lower_lid   theta in [0, pi], points (-e^{-i theta}, 0); runs between
 *               the same two corners along the other boundary arc
 *   iris        the collision circle; both points pinned at i, the recorded
 *               approach angle does not enter any integrand because pinned
 *               points have no outgoing edges
 *   corner_01   (0, 1), the configuration of the undeformed weights
 *   corner_10   (0, -1)
 */
struct EyePoint {
  EyeChart chart = EyeChart::corner_01;
  std::complex<double> q{0.0, 1.0};  // interior only
  double param = 0.0;                // lid theta or iris angle

  static EyePoint interior_at(std::complex<double> q);
  static EyePoint upper_lid(double theta);
  static EyePoint lower_lid(double theta);
  static EyePoint iris(double angle);
  static EyePoint corner_01() { return EyePoint{}; }
  static EyePoint corner_10();

  /// Throws std::invalid_argument when the parameter leaves the chart range.
  void validate() const;

  /// Positions substituted for the two ground markers of a graph.
  std::pair<std::complex<double>, std::complex<double>> pinned_points() const;

  /// "corner_01", "upper_lid:0.785398", "interior:0.3,1.2", "iris:1".
  static EyePoint parse(const std::string& text);
  std::string str() const;
};

}  // namespace kvtk
