#include "kvtk/kv_equations.hpp"

#include <sstream>
#include <stdexcept>

#include "kvtk/bch_series.hpp"
#include "kvtk/rational_series.hpp"

namespace kvtk {

namespace {

// ---------------------------------------------------- rational elimination

struct LinearSolveResult {
  bool feasible = true;
  std::vector<Rational> particular;          // free coordinates set to zero
  std::vector<std::vector<Rational>> kernel;  // nullspace basis
};

// Row-echelon solve of A lambda = b; pivots scan columns left to right, so
// the particular solution concentrates on the earliest solvable unknowns.
// cols is passed explicitly because a zero-row system (every constraint
// vanished identically) still has that many unknowns, all of them free.
LinearSolveResult solve_linear(std::vector<std::vector<Rational>> a,
                               std::vector<Rational> b, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<int> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    const Rational inv = 1 / a[rank][c];
    for (std::size_t j = c; j < cols; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  LinearSolveResult out;
  for (std::size_t r = rank; r < rows; ++r)
    if (b[r] != 0) {
      out.feasible = false;
      return out;
    }
  out.particular.assign(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) out.particular[c] = b[pivot_of_col[c]];
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Rational> dir(cols, Rational(0));
    dir[c] = 1;
    for (std::size_t j = 0; j < cols; ++j)
      if (pivot_of_col[j] >= 0) dir[j] = -a[pivot_of_col[j]][c];
    out.kernel.push_back(std::move(dir));
  }
  return out;
}

// ------------------------------------------------------- equation assembly

LieSeries<Rational> generator2(int letter, int order) {
  return LieSeries<Rational>::generator(letter, 2, order);
}

/// The Hausdorff series the convention's left side subtracts: log(e^y e^x)
/// for kv_original (the letter swap of the oracle), log(e^x e^y) otherwise.
LieSeries<Rational> convention_bch(KVConvention convention, int order) {
  LieSeries<Rational> z = bch_oracle(order);
  if (convention == KVConvention::paper_transcribed) return z;
  return substitute(z, {generator2(1, order), generator2(0, order)}, order);
}

/// Applies the convention's adjoint operator series to a Lie element:
/// sum_{k>=1} c_k (ad g)^k v with c_k = eps^{k+1}/k! and eps the sign the
/// convention places on the exponent.
LieSeries<Rational> apply_exp_ad(const LieSeries<Rational>& v, int letter,
                                 bool alternating, int order) {
  LieSeries<Rational> acc(2, order);
  LieSeries<Rational> power = v.truncated(order);
  const LieSeries<Rational> g = generator2(letter, order);
  Rational fact(1);
  for (int k = 1; k <= order; ++k) {
    power = bracket(g, power, order);
    if (power.empty()) break;
    fact *= k;
    Rational c = 1 / fact;
    if (alternating && k % 2 == 0) c = -c;
    acc = acc + scale(power, c);
  }
  return acc;
}

struct Unknown {
  bool on_f = true;
  Word word;
};

std::string unknown_label(const Unknown& u) {
  return std::string(u.on_f ? "F[" : "G[") + word_to_string(u.word) + "]";
}

}  // namespace

LieSeries<Rational> kv_symmetry(const LieSeries<Rational>& f) {
  const int order = f.max_degree;
  return substitute(f,
                    {scale(generator2(1, order), Rational(-1)),
                     scale(generator2(0, order), Rational(-1))},
                    order);
}

KVSolution solve_FG(int order, KVConvention convention, bool symmetric) {
  if (order < 2 || order > 6)
    throw std::invalid_argument("solve_FG: order must be in [2, 6]");

  // kv_original: (1 - e^{-ad x}) F + (e^{ad y} - 1) G.
  // paper_transcribed: (e^{ad x} - 1) F + (1 - e^{ad y}) G.
  const bool x_alternating = convention == KVConvention::kv_original;
  const Rational y_sign(convention == KVConvention::kv_original ? 1 : -1);

  std::vector<Unknown> unknowns;
  for (int d = 1; d < order; ++d)
    for (const Word& w : lyndon_words(2, d)) {
      unknowns.push_back({true, w});
      if (!symmetric) unknowns.push_back({false, w});
    }

  std::vector<Word> constraint_words;
  for (int d = 2; d <= order; ++d)
    for (const Word& w : lyndon_words(2, d)) constraint_words.push_back(w);

  // Column per unknown: the full contribution of its basis element to the
  // right side, including the tied G term in the symmetric case.
  std::vector<LieSeries<Rational>> columns;
  for (const Unknown& u : unknowns) {
    LieSeries<Rational> basis(2, order);
    basis.add_term(u.word, Rational(1));
    LieSeries<Rational> col(2, order);
    if (u.on_f) {
      col = apply_exp_ad(basis, 0, x_alternating, order);
      if (symmetric)
        col = col + scale(apply_exp_ad(kv_symmetry(basis), 1, false, order),
                          y_sign);
    } else {
      col = scale(apply_exp_ad(basis, 1, false, order), y_sign);
    }
    columns.push_back(std::move(col));
  }

  const LieSeries<Rational> lhs = generator2(0, order) +
                                  generator2(1, order) -
                                  convention_bch(convention, order);

  auto build = [&](int through) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const Word& w : constraint_words) {
      if (static_cast<int>(w.size()) > through) continue;
      std::vector<Rational> row;
      row.reserve(columns.size());
      for (const auto& col : columns) row.push_back(col.coefficient(w));
      a.push_back(std::move(row));
      b.push_back(lhs.coefficient(w));
    }
    return solve_linear(std::move(a), std::move(b), columns.size());
  };

  for (int m = 2; m <= order; ++m)
    if (!build(m).feasible) {
      std::ostringstream msg;
      msg << "equation (1) is infeasible at degree " << m << " under the "
          << (convention == KVConvention::kv_original ? "kv_original"
                                                      : "paper_transcribed")
          << (symmetric ? " convention with the symmetry F(x,y) = G(-y,-x)"
                        : " convention");
      throw std::runtime_error(msg.str());
    }
  const LinearSolveResult sol = build(order);

  KVSolution out;
  out.order = order;
  out.convention = convention;
  out.symmetric = symmetric;
  out.F = LieSeries<Rational>(2, order - 1);
  out.G = LieSeries<Rational>(2, order - 1);
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    if (sol.particular[i] == 0) continue;
    (unknowns[i].on_f ? out.F : out.G)
        .add_term(unknowns[i].word, sol.particular[i]);
  }
  if (symmetric) out.G = kv_symmetry(out.F);

  std::ostringstream desc;
  desc << sol.kernel.size() << " free direction"
       << (sol.kernel.size() == 1 ? "" : "s");
  for (const auto& dir : sol.kernel) {
    LieSeries<Rational> df(2, order - 1), dg(2, order - 1);
    std::string lead;
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      if (dir[i] == 0) continue;
      if (lead.empty()) lead = unknown_label(unknowns[i]);
      (unknowns[i].on_f ? df : dg).add_term(unknowns[i].word, dir[i]);
    }
    if (symmetric) dg = kv_symmetry(df);
    desc << (lead.empty() ? "" : "; ") << lead;
    out.kernel.emplace_back(std::move(df), std::move(dg));
  }
  out.free_parameters = desc.str();
  return out;
}

namespace {

/// tr(ad g . dV/dg) for the evaluated series V, g the x or y block.
Polynomial trace_ad_jacobian(const LieAlgebraSpec& alg, const VectorPoly& v,
                             int which, int max_degree) {
  const int d = alg.dim();
  const PolyMatrix a =
      alg.ad_poly(generic_element(alg, which, max_degree), 2 * d, max_degree);
  Polynomial tr(2 * d, max_degree);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (a[r][c].is_zero()) continue;
      tr = tr + mul(a[r][c], derivative(v[c], which * d + r), max_degree);
    }
  return tr;
}

/// (1/2) tr sum_{k>=1} (B_k / k!) (ad u)^k, the nonconstant half of
/// (1/2) tr h(ad u) with h(s) = s/(e^s - 1).
Polynomial half_trace_h_ad(const LieAlgebraSpec& alg, const VectorPoly& u,
                           int max_degree) {
  const int nv = 2 * alg.dim();
  const PolyMatrix a = alg.ad_poly(u, nv, max_degree);
  const std::vector<Rational> bern =
      bernoulli_numbers(static_cast<std::size_t>(max_degree));
  PolyMatrix p = a;
  Polynomial acc(nv, max_degree);
  Rational fact(1);
  for (int k = 1; k <= max_degree; ++k) {
    fact *= k;
    if (bern[k] != 0) acc = acc + scale(mat_trace(p), bern[k] / (2 * fact));
    if (k < max_degree) p = mat_mul(p, a, max_degree);
  }
  return acc;
}

/// log j(u) = sum_k gamma_k tr((ad u)^k) on the coordinate ring.
Polynomial log_j(const LieAlgebraSpec& alg, const VectorPoly& u,
                 int max_degree) {
  const int nv = 2 * alg.dim();
  const PolyMatrix a = alg.ad_poly(u, nv, max_degree);
  const std::vector<Rational> gamma =
      log_jfactor_coeffs(static_cast<std::size_t>(max_degree));
  PolyMatrix p = a;
  Polynomial acc(nv, max_degree);
  for (int k = 1; k <= max_degree; ++k) {
    if (gamma[k] != 0) acc = acc + scale(mat_trace(p), gamma[k]);
    if (k < max_degree) p = mat_mul(p, a, max_degree);
  }
  return acc;
}

}  // namespace

TraceReport verify_trace(const KVSolution& sol, const LieAlgebraSpec& alg,
                         int order) {
  if (order < 2 || order > sol.order)
    throw std::invalid_argument("verify_trace: order outside the solution");
  const int deg = order - 1;  // degree F and G actually carry
  TraceReport rep;
  rep.algebra = alg.name();
  rep.order = order;

  const VectorPoly fv = eval_on_algebra(sol.F.truncated(deg), alg);
  const VectorPoly gv = eval_on_algebra(sol.G.truncated(deg), alg);
  rep.lhs = (trace_ad_jacobian(alg, fv, 0, deg) +
             trace_ad_jacobian(alg, gv, 1, deg))
                .truncated(deg);

  const VectorPoly x = generic_element(alg, 0, deg);
  const VectorPoly y = generic_element(alg, 1, deg);
  const VectorPoly z = eval_on_algebra(bch_oracle(deg), alg);
  rep.rhs = (half_trace_h_ad(alg, x, deg) + half_trace_h_ad(alg, y, deg) -
             half_trace_h_ad(alg, z, deg))
                .truncated(deg);
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

KVSolution solve_joint(const LieAlgebraSpec& alg, int order,
                       KVConvention convention, bool symmetric) {
  KVSolution base = solve_FG(order, convention, symmetric);
  const int deg = order - 1;
  const Polynomial r0 = verify_trace(base, alg, order).residual;

  std::vector<Polynomial> contrib;
  for (const auto& [df, dg] : base.kernel) {
    const VectorPoly fv = eval_on_algebra(df.truncated(deg), alg);
    const VectorPoly gv = eval_on_algebra(dg.truncated(deg), alg);
    contrib.push_back((trace_ad_jacobian(alg, fv, 0, deg) +
                       trace_ad_jacobian(alg, gv, 1, deg))
                          .truncated(deg));
  }

  // One row per monomial present anywhere; unknowns are the kernel weights.
  std::map<Monomial, std::size_t> row_of;
  auto note = [&](const Polynomial& p) {
    for (const auto& [m, c] : p.terms)
      row_of.emplace(m, row_of.size());
  };
  note(r0);
  for (const auto& p : contrib) note(p);

  std::vector<std::vector<Rational>> a(
      row_of.size(), std::vector<Rational>(contrib.size(), Rational(0)));
  std::vector<Rational> b(row_of.size(), Rational(0));
  for (const auto& [m, r] : row_of) b[r] = -r0.coefficient(m);
  for (std::size_t i = 0; i < contrib.size(); ++i)
    for (const auto& [m, c] : contrib[i].terms) a[row_of.at(m)][i] = c;

  const LinearSolveResult fit =
      solve_linear(std::move(a), std::move(b), contrib.size());
  if (!fit.feasible)
    throw std::runtime_error("trace condition unsatisfiable on " + alg.name() +
                             " through order " + std::to_string(order));

  KVSolution out = base;
  for (std::size_t i = 0; i < base.kernel.size(); ++i) {
    if (fit.particular[i] == 0) continue;
    out.F = out.F + scale(base.kernel[i].first, fit.particular[i]);
    out.G = out.G + scale(base.kernel[i].second, fit.particular[i]);
  }
  out.kernel.clear();
  for (const auto& mu : fit.kernel) {
    LieSeries<Rational> df(2, deg), dg(2, deg);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] == 0) continue;
      df = df + scale(base.kernel[i].first, mu[i]);
      dg = dg + scale(base.kernel[i].second, mu[i]);
    }
    out.kernel.emplace_back(std::move(df), std::move(dg));
  }
  std::ostringstream desc;
  desc << out.kernel.size() << " free direction"
       << (out.kernel.size() == 1 ? "" : "s") << " after the trace condition on "
       << alg.name();
  out.free_parameters = desc.str();
  return out;
}

LieSeries<Rational> verify_eqdiff(const KVSolution& sol, int order) {
  if (order < 2 || order > sol.order)
    throw std::invalid_argument("verify_eqdiff: order outside the solution");
  // The scaling equation holds for the product opposite to the one the
  // defining equation subtracts: under kv_original that is log(e^x e^y).
  const LieSeries<Rational> z =
      convention_bch(sol.convention == KVConvention::kv_original
                         ? KVConvention::paper_transcribed
                         : KVConvention::kv_original,
                     order);

  // Left side: degree-n component of Z carries t^{n-1}, so d/dt scales it
  // by n - 1 and lands on t^{n-2}.
  LieSeries<Rational> lhs(2, order);
  for (const auto& [w, c] : z.coeffs)
    lhs.add_term(w, c * Rational(static_cast<long>(w.size()) - 1));

  const LieSeries<Rational> u =
      bracket(generator2(0, order), sol.F.truncated(order), order);
  const LieSeries<Rational> v =
      bracket(generator2(1, order), sol.G.truncated(order), order);
  const LieSeries<Rational> rhs = directional_derivative(z, 0, u, order) +
                                  directional_derivative(z, 1, v, order);
  return lhs - rhs;
}

Rational bernoulli_d(int n) {
  if (n < 0 || n > 6)
    throw std::invalid_argument("bernoulli_d: n must be in [0, 6]");
  const LieSeries<Rational> z = bch_oracle(n + 2);
  return Rational(n + 1) * bch_single_y_coefficient(z, n + 1) -
         bch_single_y_coefficient(z, n) / 4;
}

Polynomial j_series_check(const LieAlgebraSpec& alg, int order) {
  if (order < 1 || order > 8)
    throw std::invalid_argument("j_series_check: order must be in [1, 8]");
  const int nv = 2 * alg.dim();
  const PolyMatrix a =
      alg.ad_poly(generic_element(alg, 0, order), nv, order);
  const std::vector<Rational> gamma =
      log_jfactor_coeffs(static_cast<std::size_t>(order));
  const std::vector<Rational> bern =
      bernoulli_numbers(static_cast<std::size_t>(order));
  PolyMatrix p = a;
  Polynomial residual(nv, order);
  Rational fact(1);
  for (int k = 1; k <= order; ++k) {
    fact *= k;
    const Rational c = Rational(k) * gamma[k] / 2 - bern[k] / (2 * fact);
    if (c != 0) residual = residual + scale(mat_trace(p), c);
    if (k < order) p = mat_mul(p, a, order);
  }
  return residual;
}

Polynomial density_transport_check(const KVSolution& sol,
                                   const LieAlgebraSpec& alg, int order) {
  if (order < 1 || order > sol.order - 1)
    throw std::invalid_argument(
        "density_transport_check: order outside the solution");
  const int n = order;
  const int d = alg.dim();
  const int nv = 2 * d;

  const VectorPoly x = generic_element(alg, 0, n);
  const VectorPoly y = generic_element(alg, 1, n);
  const VectorPoly z = eval_on_algebra(bch_oracle(n), alg);
  const Polynomial big_l =
      scale(log_j(alg, x, n) + log_j(alg, y, n) - log_j(alg, z, n),
            Rational(1, 2));

  // d/dt of L(tx, ty): the degree-k component picks up a factor k.
  Polynomial lhs(nv, n);
  for (int k = 1; k <= n; ++k)
    lhs = lhs + scale(big_l.component(k), Rational(k));

  const VectorPoly fv = eval_on_algebra(sol.F.truncated(n), alg);
  const VectorPoly gv = eval_on_algebra(sol.G.truncated(n), alg);
  const Polynomial tr_term =
      trace_ad_jacobian(alg, fv, 0, n) + trace_ad_jacobian(alg, gv, 1, n);

  const VectorPoly u = alg.bracket_poly(x, fv, n);
  const VectorPoly v = alg.bracket_poly(y, gv, n);
  Polynomial vf(nv, n);
  for (int b = 0; b < d; ++b) {
    if (!u[b].is_zero()) vf = vf + mul(u[b], derivative(big_l, b), n);
    if (!v[b].is_zero()) vf = vf + mul(v[b], derivative(big_l, d + b), n);
  }
  return (lhs - tr_term - vf).truncated(n);
}

}  // namespace kvtk
