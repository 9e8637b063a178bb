#pragma once

#include "kvtk/lie_series.hpp"

namespace kvtk {

/// log(exp x exp y) computed in the free associative algebra and converted to
/// the Lyndon basis.
LieSeries<Rational> bch_via_assoc_log(int max_degree);

/// The same series assembled from the explicit Dynkin formula (nested
/// bracketings of block words, summed with factorial coefficients).
LieSeries<Rational> bch_via_dynkin(int max_degree);

/// Hausdorff series Z(x, y) through max_degree (letters 0 -> x, 1 -> y).
/// Both construction methods are run and must agree exactly.
/// pre: 1 <= max_degree <= 8.
LieSeries<Rational> bch_oracle(int max_degree);

/// Coefficient b_n of ad^n(x) y, i.e. of the Lyndon word x^n y.
Rational bch_single_y_coefficient(const LieSeries<Rational>& z, int n);

}  // namespace kvtk
