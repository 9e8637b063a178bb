#include "kvtk/lie_algebra.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kvtk {

LieAlgebraSpec::LieAlgebraSpec(int dim, std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("algebra dim out of range");
  c_.assign(static_cast<std::size_t>(dim * dim * dim), Rational(0));
}

void LieAlgebraSpec::set_bracket(int i, int j, int k, const Rational& value) {
  if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
    throw std::invalid_argument("bracket index out of range");
  if (i >= j)
    throw std::invalid_argument("bracket entries must have i < j");
  c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)] = value;
  c_[static_cast<std::size_t>((j * dim_ + i) * dim_ + k)] = -value;
}

void LieAlgebraSpec::check_jacobi() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) {
          Rational acc(0);
          for (int l = 0; l < dim_; ++l)
            acc += c(j, k, l) * c(i, l, m) + c(k, i, l) * c(j, l, m) +
                   c(i, j, l) * c(k, l, m);
          if (acc != 0) {
            std::ostringstream os;
            os << "Jacobi identity fails for (e" << i << ", e" << j << ", e"
               << k << ") in component e" << m << " of algebra '" << name_
               << "'";
            throw std::invalid_argument(os.str());
          }
        }
}

std::vector<Rational> LieAlgebraSpec::bracket_vec(
    const std::vector<Rational>& u, const std::vector<Rational>& v) const {
  std::vector<Rational> r(dim_, Rational(0));
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      for (int k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0) r[k] += u[i] * v[j] * c(i, j, k);
    }
  }
  return r;
}

std::vector<double> LieAlgebraSpec::bracket_vec(
    const std::vector<double>& u, const std::vector<double>& v) const {
  std::vector<double> r(dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0) r[k] += u[i] * v[j] * to_double(c(i, j, k));
  return r;
}

VectorPoly LieAlgebraSpec::bracket_poly(const VectorPoly& u, const VectorPoly& v,
                                        int max_degree) const {
  const int nvars = u[0].nvars;
  VectorPoly r(dim_, Polynomial(nvars, max_degree));
  for (int i = 0; i < dim_; ++i) {
    if (u[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      Polynomial prod;
      bool have = false;
      for (int k = 0; k < dim_; ++k) {
        if (c(i, j, k) == 0) continue;
        if (!have) {
          prod = mul(u[i], v[j], max_degree);
          have = true;
        }
        r[k] = r[k] + scale(prod, c(i, j, k));
      }
    }
  }
  return r;
}

PolyMatrix LieAlgebraSpec::ad_poly(const VectorPoly& u, int nvars,
                                   int max_degree) const {
  PolyMatrix m = poly_matrix_zero(dim_, nvars, max_degree);
  // [u, e_i] = sum_a u_a c(a, i, k) e_k
  for (int a = 0; a < dim_; ++a) {
    if (u[a].is_zero()) continue;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k)
        if (c(a, i, k) != 0) m[k][i] = m[k][i] + scale(u[a], c(a, i, k));
  }
  return m;
}

std::vector<std::vector<double>> LieAlgebraSpec::ad_numeric(
    const std::vector<double>& u) const {
  std::vector<std::vector<double>> m(dim_, std::vector<double>(dim_, 0.0));
  for (int a = 0; a < dim_; ++a)
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k)
        if (c(a, i, k) != 0) m[k][i] += u[a] * to_double(c(a, i, k));
  return m;
}

std::vector<std::tuple<int, int, int, Rational>>
LieAlgebraSpec::sparse_brackets() const {
  std::vector<std::tuple<int, int, int, Rational>> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0) out.emplace_back(i, j, k, c(i, j, k));
  return out;
}

LieAlgebraSpec LieAlgebraSpec::builtin(const std::string& name) {
  if (name == "abelian2") return LieAlgebraSpec(2, name);
  if (name == "aff1") {
    LieAlgebraSpec a(2, name);
    a.set_bracket(0, 1, 1, Rational(1));  // [e1, e2] = e2
    a.check_jacobi();
    return a;
  }
  if (name == "heisenberg3") {
    LieAlgebraSpec a(3, name);
    a.set_bracket(0, 1, 2, Rational(1));
    a.check_jacobi();
    return a;
  }
  if (name == "sl2") {
    // Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    LieAlgebraSpec a(3, name);
    a.set_bracket(0, 1, 1, Rational(2));
    a.set_bracket(0, 2, 2, Rational(-2));
    a.set_bracket(1, 2, 0, Rational(1));
    a.check_jacobi();
    return a;
  }
  if (name == "so3") {
    LieAlgebraSpec a(3, name);
    a.set_bracket(0, 1, 2, Rational(1));
    a.set_bracket(1, 2, 0, Rational(1));
    a.set_bracket(0, 2, 1, Rational(-1));
    a.check_jacobi();
    return a;
  }
  throw std::invalid_argument("unknown builtin algebra '" + name + "'");
}

LieAlgebraSpec LieAlgebraSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("algebra file is not valid JSON: ") +
                                e.what());
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("algebra file: missing integer 'dim'");
  LieAlgebraSpec a(j["dim"].get<int>(),
                   j.value("name", std::string("unnamed")));
  for (const auto& entry : j.value("brackets", nlohmann::json::array())) {
    if (!entry.is_array() || entry.size() != 4)
      throw std::invalid_argument(
          "algebra file: bracket entries are [i, j, k, \"p/q\"]");
    const int i = entry[0].get<int>();
    const int jj = entry[1].get<int>();
    const int k = entry[2].get<int>();
    a.set_bracket(i, jj, k, parse_rational(entry[3].get<std::string>()));
  }
  a.check_jacobi();
  return a;
}

LieAlgebraSpec LieAlgebraSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open algebra file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string LieAlgebraSpec::to_json_text() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["name"] = name_;
  auto arr = nlohmann::json::array();
  for (const auto& [i, jj, k, v] : sparse_brackets())
    arr.push_back({i, jj, k, format_rational(v)});
  j["brackets"] = arr;
  return j.dump();
}

VectorPoly generic_element(const LieAlgebraSpec& alg, int which,
                           int max_degree) {
  const int d = alg.dim();
  VectorPoly v(d, Polynomial(2 * d, max_degree));
  for (int k = 0; k < d; ++k)
    v[k] = Polynomial::variable(which * d + k, 2 * d, max_degree);
  return v;
}

VectorPoly eval_on_algebra(const LieSeries<Rational>& s,
                           const LieAlgebraSpec& alg) {
  if (s.alphabet_size != 2)
    throw std::invalid_argument(
        "eval_on_algebra expects a 2-letter series (alphabet mismatch)");
  const int d = alg.dim();
  const int max_degree = s.max_degree;
  const VectorPoly gx = generic_element(alg, 0, max_degree);
  const VectorPoly gy = generic_element(alg, 1, max_degree);
  VectorPoly out(d, Polynomial(2 * d, max_degree));
  std::map<Word, VectorPoly> memo;
  std::function<const VectorPoly&(const Word&)> eval_word =
      [&](const Word& w) -> const VectorPoly& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    VectorPoly v;
    if (w.size() == 1) {
      v = (w[0] == 0) ? gx : gy;
    } else {
      auto [lw, rw] = standard_factorization(w);
      v = alg.bracket_poly(eval_word(lw), eval_word(rw), max_degree);
    }
    return memo.emplace(w, std::move(v)).first->second;
  };
  for (const auto& [w, cf] : s.coeffs) {
    const VectorPoly& v = eval_word(w);
    for (int k = 0; k < d; ++k) out[k] = out[k] + scale(v[k], cf);
  }
  return out;
}

std::vector<double> eval_on_algebra_numeric(const LieSeries<Rational>& s,
                                            const LieAlgebraSpec& alg,
                                            const std::vector<double>& x0,
                                            const std::vector<double>& y0) {
  if (s.alphabet_size != 2)
    throw std::invalid_argument(
        "eval_on_algebra expects a 2-letter series (alphabet mismatch)");
  const int d = alg.dim();
  std::vector<double> out(d, 0.0);
  std::map<Word, std::vector<double>> memo;
  std::function<const std::vector<double>&(const Word&)> eval_word =
      [&](const Word& w) -> const std::vector<double>& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    std::vector<double> v;
    if (w.size() == 1) {
      v = (w[0] == 0) ? x0 : y0;
    } else {
      auto [lw, rw] = standard_factorization(w);
      v = alg.bracket_vec(eval_word(lw), eval_word(rw));
    }
    return memo.emplace(w, std::move(v)).first->second;
  };
  for (const auto& [w, cf] : s.coeffs) {
    const std::vector<double>& v = eval_word(w);
    for (int k = 0; k < d; ++k) out[k] += to_double(cf) * v[k];
  }
  return out;
}

}  // namespace kvtk
