#include "kvtk/star_product.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kvtk/weights.hpp"

namespace kvtk {

namespace {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t hash) {
  std::uint64_t z = base ^ (hash + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

Polynomial LinearPoisson::alpha(int i, int j, int max_degree) const {
  Polynomial p(alg.dim(), max_degree);
  for (int k = 0; k < alg.dim(); ++k) {
    const Rational c = scale * alg.c(i, j, k);
    if (c == 0) continue;
    Monomial m(static_cast<std::size_t>(alg.dim()), 0);
    m[static_cast<std::size_t>(k)] = 1;
    p.add_term(m, c);
  }
  return p;
}

Numbering Numbering::identity(int n_aerial) {
  Numbering num;
  num.vertex_order.resize(static_cast<std::size_t>(n_aerial));
  std::iota(num.vertex_order.begin(), num.vertex_order.end(), 0);
  num.swap_edges.assign(static_cast<std::size_t>(n_aerial), false);
  return num;
}

KGraph Numbering::applied_to(const KGraph& g) const {
  if (static_cast<int>(vertex_order.size()) != g.n_aerial ||
      static_cast<int>(swap_edges.size()) != g.n_aerial)
    throw std::invalid_argument("Numbering: size mismatch with the graph");
  KGraph out;
  out.n_aerial = g.n_aerial;
  out.edges.resize(static_cast<std::size_t>(g.n_aerial));
  for (int v = 0; v < g.n_aerial; ++v) {
    std::array<Target, 2> e = g.edges[static_cast<std::size_t>(v)];
    for (Target& t : e)
      if (t >= 1) t = vertex_order[static_cast<std::size_t>(t - 1)] + 1;
    if (swap_edges[static_cast<std::size_t>(v)]) std::swap(e[0], e[1]);
    out.edges[static_cast<std::size_t>(vertex_order[static_cast<std::size_t>(v)])] = e;
  }
  out.validate();
  return out;
}

Polynomial apply_B(const KGraph& g, const Numbering& numbering,
                   const LinearPoisson& alpha, const Polynomial& f,
                   const Polynomial& h) {
  const KGraph gr = numbering.applied_to(g);
  const int n = gr.n_aerial;
  const int d = alpha.alg.dim();
  const int max_degree = f.degree() + h.degree();
  Polynomial acc(d, max_degree);
  if (n == 0) return mul(f, h, max_degree);

  // Edges in a fixed order: (vertex 0 edge 0, vertex 0 edge 1, vertex 1 ...).
  const int n_edges = 2 * n;
  std::vector<int> index(static_cast<std::size_t>(n_edges), 0);
  while (true) {
    // incoming derivative indices per target
    bool dead = false;
    std::vector<std::vector<int>> incoming(static_cast<std::size_t>(n));
    std::vector<int> into_f, into_h;
    for (int e = 0; e < n_edges && !dead; ++e) {
      const Target t = gr.edges[static_cast<std::size_t>(e / 2)]
                               [static_cast<std::size_t>(e % 2)];
      const int idx = index[static_cast<std::size_t>(e)];
      if (t == kGround1) {
        into_f.push_back(idx);
      } else if (t == kGround2) {
        into_h.push_back(idx);
      } else {
        auto& inc = incoming[static_cast<std::size_t>(t - 1)];
        inc.push_back(idx);
        if (inc.size() > 1) dead = true;  // linear alpha dies here
      }
    }

    if (!dead) {
      Rational scalar(1);
      std::vector<Polynomial> poly_factors;
      for (int v = 0; v < n && scalar != 0; ++v) {
        const int i = index[static_cast<std::size_t>(2 * v)];
        const int j = index[static_cast<std::size_t>(2 * v + 1)];
        const auto& inc = incoming[static_cast<std::size_t>(v)];
        if (inc.size() == 1) {
          scalar *= alpha.scale * alpha.alg.c(i, j, inc.front());
        } else {
          poly_factors.push_back(alpha.alpha(i, j, max_degree));
          if (poly_factors.back().is_zero()) scalar = 0;
        }
      }
      if (scalar != 0) {
        Polynomial df = f;
        for (int idx : into_f) df = derivative(df, idx);
        Polynomial dh = h;
        for (int idx : into_h) dh = derivative(dh, idx);
        if (!df.is_zero() && !dh.is_zero()) {
          Polynomial prod = mul(df, dh, max_degree);
          for (const Polynomial& p : poly_factors) prod = mul(prod, p, max_degree);
          acc = acc + scale(prod, scalar);
        }
      }
    }

    // next index map
    int e = 0;
    for (; e < n_edges; ++e) {
      if (++index[static_cast<std::size_t>(e)] < d) break;
      index[static_cast<std::size_t>(e)] = 0;
    }
    if (e == n_edges) break;
  }
  return acc;
}

namespace {

/// All ordered pairs of distinct admissible targets for one vertex.
std::vector<std::array<Target, 2>> vertex_choices(int n, int v) {
  std::vector<Target> targets{kGround1, kGround2};
  for (int u = 0; u < n; ++u)
    if (u != v) targets.push_back(u + 1);
  std::vector<std::array<Target, 2>> out;
  for (Target a : targets)
    for (Target b : targets)
      if (a != b) out.push_back({a, b});
  return out;
}

/// Class key blind to vertex numbering and edge order: the minimum of
/// canonical_string over all 2^n edge flips. Grouping by it yields the
/// geometric classes whose sizes are n! 2^n / |Aut|.
std::string geometric_key(const KGraph& g) {
  std::string best;
  for (unsigned mask = 0; mask < (1u << g.n_aerial); ++mask) {
    KGraph flipped = g;
    for (int v = 0; v < g.n_aerial; ++v)
      if (mask & (1u << v))
        std::swap(flipped.edges[static_cast<std::size_t>(v)][0],
                  flipped.edges[static_cast<std::size_t>(v)][1]);
    std::string key = canonical_string(flipped);
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

void enumerate_numbered(int n, const std::function<void(const KGraph&)>& fn) {
  std::vector<std::vector<std::array<Target, 2>>> choices;
  for (int v = 0; v < n; ++v) choices.push_back(vertex_choices(n, v));
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  while (true) {
    KGraph g;
    g.n_aerial = n;
    for (int v = 0; v < n; ++v)
      g.edges.push_back(choices[static_cast<std::size_t>(v)]
                               [pick[static_cast<std::size_t>(v)]]);
    g.validate();
    fn(g);
    int v = 0;
    for (; v < n; ++v) {
      if (++pick[static_cast<std::size_t>(v)] <
          choices[static_cast<std::size_t>(v)].size())
        break;
      pick[static_cast<std::size_t>(v)] = 0;
    }
    if (v == n) break;
  }
}

}  // namespace

long star_multiplicity(const KGraph& g) {
  const int n = g.n_aerial;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  long aut = 0;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Numbering num;
      num.vertex_order = perm;
      for (int v = 0; v < n; ++v) num.swap_edges.push_back(mask & (1u << v));
      if (num.applied_to(g).edges == g.edges) ++aut;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return factorial(n) * (1L << n) / aut;
}

std::vector<StarGraphClass> enumerate_star_graphs(int n_aerial) {
  if (n_aerial < 1 || n_aerial > kStarOrderCeiling)
    throw std::invalid_argument("enumerate_star_graphs: n_aerial must be in [1, " +
                                std::to_string(kStarOrderCeiling) + "]");
  std::vector<StarGraphClass> out;
  std::map<std::string, std::size_t> seen;
  enumerate_numbered(n_aerial, [&](const KGraph& g) {
    const std::string key = geometric_key(g);
    const auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.size());
      out.push_back({g, 1});
    } else {
      ++out[it->second].count;
    }
  });
  return out;
}

StarResult star(const Polynomial& f, const Polynomial& h, int order,
                const LinearPoisson& alpha, const StarMcParams& mc) {
  if (order < 0 || order > kStarOrderCeiling)
    throw std::invalid_argument("star: order must be in [0, " +
                                std::to_string(kStarOrderCeiling) + "]");
  const int d = alpha.alg.dim();
  StarResult out;
  out.nvars = d;
  out.order = order;
  out.samples_per_graph = mc.samples;
  out.seed = mc.seed;

  const EyePoint corner = EyePoint::corner_01();
  const Polynomial plain = mul(f, h, f.degree() + h.degree());
  for (const auto& [m, c] : plain.terms) out.terms[m] += to_double(c);

  for (int n = 1; n <= order; ++n) {
    const double inv_fact = 1.0 / static_cast<double>(factorial(n));
    for (const StarGraphClass& cls : enumerate_star_graphs(n)) {
      const Polynomial b =
          apply_B(cls.rep, Numbering::identity(n), alpha, f, h);
      if (b.is_zero()) continue;
      const std::uint64_t seed = mix_seed(mc.seed, canonical_hash(cls.rep));
      const WeightEstimate w =
          mc.cache ? mc.cache->deformed(cls.rep, corner, mc.samples, seed,
                                        mc.workers)
                   : deformed_weight(cls.rep, corner, mc.samples, seed,
                                     mc.workers);
      const double factor = inv_fact * static_cast<double>(cls.count);
      for (const auto& [m, c] : b.terms) {
        const double cd = to_double(c);
        out.terms[m] += factor * w.value * cd;
        out.coeff_stderr[m] = std::hypot(out.coeff_stderr[m],
                                         factor * w.stderr_ * std::fabs(cd));
      }
    }
  }
  return out;
}

}  // namespace kvtk
