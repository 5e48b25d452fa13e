#include "woodshole/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "woodshole/error.hpp"

namespace woodshole {

namespace {

int exponent_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Neumaier summation on each component.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, im_ = 0.0, re_c_ = 0.0, im_c_ = 0.0;
};

constexpr std::size_t kCompensatedThreshold = 1000;

}  // namespace

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = exponent_degree(a);
  const int db = exponent_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
  if (num_vars <= 0) throw InputError("polynomial must have at least one variable");
}

MultiPoly MultiPoly::from_map(int num_vars, TermMap terms) {
  MultiPoly p(num_vars);
  p.terms_ = std::move(terms);
  p.strip();
  return p;
}

MultiPoly::MultiPoly(int num_vars,
                     const std::vector<std::pair<Exponent, Complex>>& terms)
    : MultiPoly(num_vars) {
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != num_vars) {
      throw InputError("exponent length " + std::to_string(e.size()) +
                       " does not match " + std::to_string(num_vars) +
                       " variables");
    }
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) {
      throw InputError("negative exponent in polynomial term");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InputError("non-finite polynomial coefficient");
    }
    terms_[e] += c;
  }
  strip();
}

MultiPoly MultiPoly::constant(int num_vars, Complex value) {
  return MultiPoly(num_vars, {{Exponent(num_vars, 0), value}});
}

MultiPoly MultiPoly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw InputError("variable index out of range");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return MultiPoly(num_vars, {{e, Complex(1.0)}});
}

MultiPoly MultiPoly::monomial(int num_vars, Exponent exponent, Complex coefficient) {
  return MultiPoly(num_vars, {{std::move(exponent), coefficient}});
}

void MultiPoly::strip() {
  double scale = 0.0;
  for (const auto& [e, c] : terms_) scale = std::max(scale, std::abs(c));
  const double cutoff = kRelativeZero * scale;
  std::erase_if(terms_, [cutoff](const auto& kv) {
    const double m = std::abs(kv.second);
    return m == 0.0 || m < cutoff;
  });
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return kZeroDegree;
  // Graded order: the last key has maximal degree.
  return exponent_degree(terms_.rbegin()->first);
}

int MultiPoly::degree_in(int var_index) const {
  if (var_index < 0 || var_index >= num_vars_) throw InputError("variable index out of range");
  int deg = kZeroDegree;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[var_index]);
  return deg;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return exponent_degree(terms_.begin()->first) ==
         exponent_degree(terms_.rbegin()->first);
}

double MultiPoly::coefficient_scale() const {
  double scale = 0.0;
  for (const auto& [e, c] : terms_) scale = std::max(scale, std::abs(c));
  return scale;
}

Complex MultiPoly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (exponent_degree(e) == degree) out.emplace(e, c);
  }
  return from_map(num_vars_, std::move(out));
}

MultiPoly MultiPoly::operator-() const {
  TermMap out = terms_;
  for (auto& [e, c] : out) c = -c;
  return from_map(num_vars_, std::move(out));
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw InputError("variable count mismatch in sum");
  MultiPoly::TermMap out = a.terms_;
  for (const auto& [e, c] : b.terms_) out[e] += c;
  return MultiPoly::from_map(a.num_vars_, std::move(out));
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw InputError("variable count mismatch in product");
  MultiPoly::TermMap out;
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return MultiPoly::from_map(a.num_vars_, std::move(out));
}

MultiPoly operator*(Complex s, const MultiPoly& p) {
  MultiPoly::TermMap out = p.terms_;
  for (auto& [e, c] : out) c *= s;
  return MultiPoly::from_map(p.num_vars_, std::move(out));
}

Complex eval(const MultiPoly& p, std::span<const Complex> x) {
  const int n = p.num_vars();
  if (static_cast<int>(x.size()) != n) {
    throw InputError("evaluation point has " + std::to_string(x.size()) +
                     " coordinates, polynomial has " + std::to_string(n) +
                     " variables");
  }
  if (p.is_zero()) return Complex(0.0);

  std::vector<std::vector<Complex>> powers(n);
  for (int i = 0; i < n; ++i) {
    const int deg = p.degree_in(i);
    powers[i].resize(deg + 1);
    powers[i][0] = 1.0;
    for (int k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * x[i];
  }

  auto term_value = [&](const Exponent& e, Complex c) {
    for (int i = 0; i < n; ++i) c *= powers[i][e[i]];
    return c;
  };

  if (p.size() >= kCompensatedThreshold) {
    CompensatedSum sum;
    for (const auto& [e, c] : p.terms()) sum.add(term_value(e, c));
    return sum.value();
  }
  Complex sum = 0.0;
  for (const auto& [e, c] : p.terms()) sum += term_value(e, c);
  return sum;
}

MultiPoly partial(const MultiPoly& p, int var_index) {
  if (var_index < 0 || var_index >= p.num_vars()) {
    throw InputError("partial derivative index " + std::to_string(var_index) +
                     " out of range");
  }
  std::vector<std::pair<Exponent, Complex>> out;
  for (const auto& [e, c] : p.terms()) {
    if (e[var_index] == 0) continue;
    Exponent d = e;
    d[var_index] -= 1;
    out.emplace_back(std::move(d), c * static_cast<double>(e[var_index]));
  }
  return MultiPoly(p.num_vars(), out);
}

MultiPoly homogenize(const MultiPoly& p, int target_degree, int new_var_position) {
  const int n = p.num_vars();
  if (new_var_position < 0 || new_var_position > n) {
    throw InputError("homogenizing variable position out of range");
  }
  if (!p.is_zero() && target_degree < p.total_degree()) {
    throw InputError("homogenization degree " + std::to_string(target_degree) +
                     " below polynomial degree " + std::to_string(p.total_degree()));
  }
  std::vector<std::pair<Exponent, Complex>> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent h(e.begin(), e.end());
    h.insert(h.begin() + new_var_position, target_degree - exponent_degree(e));
    out.emplace_back(std::move(h), c);
  }
  return MultiPoly(n + 1, out);
}

MultiPoly dehomogenize_chart(const MultiPoly& p, int chart_index) {
  const int n = p.num_vars();
  if (chart_index < 0 || chart_index >= n) throw InputError("chart index out of range");
  if (n < 2) throw InputError("cannot dehomogenize a univariate polynomial");
  if (!p.is_homogeneous()) throw InputError("dehomogenization requires a homogeneous polynomial");
  std::vector<std::pair<Exponent, Complex>> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent d = e;
    d.erase(d.begin() + chart_index);
    out.emplace_back(std::move(d), c);
  }
  return MultiPoly(n - 1, out);
}

MultiPoly restrict_to_zero(const MultiPoly& p, int var_index) {
  const int n = p.num_vars();
  if (var_index < 0 || var_index >= n) throw InputError("variable index out of range");
  if (n < 2) throw InputError("cannot restrict a univariate polynomial");
  std::vector<std::pair<Exponent, Complex>> out;
  for (const auto& [e, c] : p.terms()) {
    if (e[var_index] != 0) continue;
    Exponent d = e;
    d.erase(d.begin() + var_index);
    out.emplace_back(std::move(d), c);
  }
  return MultiPoly(n - 1, out);
}

MultiPoly swap_variables(const MultiPoly& p, int a, int b) {
  const int n = p.num_vars();
  if (a < 0 || a >= n || b < 0 || b >= n) throw InputError("variable index out of range");
  std::vector<std::pair<Exponent, Complex>> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent s = e;
    std::swap(s[a], s[b]);
    out.emplace_back(std::move(s), c);
  }
  return MultiPoly(n, out);
}

std::vector<Exponent> monomials_of_degree(int num_vars, int degree) {
  std::vector<Exponent> out;
  Exponent e(num_vars, 0);
  // Enumerate compositions of degree into num_vars parts.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == num_vars - 1) {
      e[var] = remaining;
      out.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, remaining - k);
    }
  };
  if (num_vars > 0 && degree >= 0) rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

}  // namespace woodshole
