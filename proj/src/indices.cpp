#include "woodshole/indices.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "woodshole/error.hpp"

namespace woodshole {

namespace {

constexpr int kMaxSigmaDim = 8;
constexpr double kNonTransversal = 1e-8;
constexpr double kDegenerate = 1e-10;

Complex integer_power(Complex base, int exponent) {
  Complex out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

Complex sigma_k(const CMatrix& m, int k) {
  const auto n = static_cast<int>(m.rows());
  if (m.cols() != n) throw InputError("sigma_k needs a square matrix");
  if (n > kMaxSigmaDim) throw InputError("sigma_k supports matrices up to 8x8");
  if (k < 0 || k > n) throw InputError("sigma_k index " + std::to_string(k) + " out of range");
  if (k == 0) return 1.0;

  // Walk all k-subsets of {0..n-1} in lexicographic order.
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  CMatrix minor(k, k);
  Complex sum = 0.0;
  while (true) {
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) minor(r, c) = m(idx[r], idx[c]);
    }
    sum += Eigen::PartialPivLU<CMatrix>(minor).determinant();
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int r = pos + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  return sum;
}

Complex det_i_minus(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("det(I - M) needs a square matrix");
  const CMatrix a = CMatrix::Identity(m.rows(), m.cols()) - m;
  return Eigen::PartialPivLU<CMatrix>(a).determinant();
}

Complex woods_hole_term(const CMatrix& j, int k) {
  const Complex denom = det_i_minus(j);
  if (!(std::abs(denom) > kNonTransversal)) {
    throw HypothesisError("non-transversal fixed point: |det(I - J)| <= 1e-8");
  }
  return sigma_k(j, k) / denom;
}

Complex lefschetz_rhs(int /*n*/, int d, int k) {
  return integer_power(Complex(-static_cast<double>(d)), k);
}

long long fixed_point_count(int n, int d) {
  long long sum = 0, power = 1;
  for (int j = 0; j <= n; ++j) {
    sum += power;
    power *= d;
  }
  return sum;
}

InvariantPolySpec::InvariantPolySpec(int n, std::vector<SigmaMonomial> monomials)
    : n_(n), monomials_(std::move(monomials)) {
  if (n < 1) throw InputError("invariant polynomial needs n >= 1");
  for (const SigmaMonomial& mono : monomials_) {
    if (static_cast<int>(mono.exponents.size()) != n) {
      throw InputError("invariant monomial has " + std::to_string(mono.exponents.size()) +
                       " exponents, expected " + std::to_string(n));
    }
    int weight = 0;
    for (int k = 0; k < n; ++k) {
      if (mono.exponents[k] < 0) throw InputError("negative exponent in invariant monomial");
      weight += (k + 1) * mono.exponents[k];
    }
    if (weight > n) {
      throw InputError("invariant monomial has weighted degree " + std::to_string(weight) +
                       " above n = " + std::to_string(n));
    }
  }
}

InvariantPolySpec InvariantPolySpec::monomial(int n, std::vector<int> exponents) {
  return InvariantPolySpec(n, {SigmaMonomial{std::move(exponents), Complex(1.0)}});
}

std::string InvariantPolySpec::label() const {
  if (monomials_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const SigmaMonomial& mono : monomials_) {
    if (!first) os << " + ";
    first = false;
    std::ostringstream factors;
    bool any = false;
    for (int k = 0; k < n_; ++k) {
      const int a = mono.exponents[k];
      if (a == 0) continue;
      if (any) factors << "*";
      any = true;
      factors << "sigma" << (k + 1);
      if (a > 1) factors << "^" << a;
    }
    const bool unit = mono.coefficient == Complex(1.0);
    if (!unit) {
      if (mono.coefficient.imag() == 0.0) {
        os << mono.coefficient.real();
      } else {
        os << "(" << mono.coefficient.real() << (mono.coefficient.imag() < 0 ? "-" : "+")
           << std::abs(mono.coefficient.imag()) << "i)";
      }
      if (any) os << "*";
    }
    if (any) {
      os << factors.str();
    } else if (unit) {
      os << "1";
    }
  }
  return os.str();
}

Complex InvariantPolySpec::evaluate_at(const std::vector<Complex>& s) const {
  if (static_cast<int>(s.size()) != n_) throw InputError("invariant evaluation needs n arguments");
  Complex sum = 0.0;
  for (const SigmaMonomial& mono : monomials_) {
    Complex term = mono.coefficient;
    for (int k = 0; k < n_; ++k) term *= integer_power(s[k], mono.exponents[k]);
    sum += term;
  }
  return sum;
}

Complex InvariantPolySpec::evaluate(const CMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw InputError("invariant polynomial dimension mismatch");
  std::vector<Complex> s;
  for (int k = 1; k <= n_; ++k) s.push_back(sigma_k(m, k));
  return evaluate_at(s);
}

std::vector<InvariantPolySpec> default_invariants(int n) {
  std::vector<InvariantPolySpec> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  // Enumerate by weighted degree, then by exponent vector.
  for (int weight = 0; weight <= n; ++weight) {
    auto rec = [&](auto&& self, int k, int remaining) -> void {
      if (k < 0) {
        if (remaining == 0) out.push_back(InvariantPolySpec::monomial(n, a));
        return;
      }
      for (int e = remaining / (k + 1); e >= 0; --e) {
        a[k] = e;
        self(self, k - 1, remaining - e * (k + 1));
      }
      a[k] = 0;
    };
    rec(rec, n - 1, weight);
  }
  return out;
}

Complex guillot_lhs_term(const CMatrix& j, const InvariantPolySpec& b) {
  if (b.n() != j.rows()) throw InputError("invariant polynomial dimension does not match Jacobian");
  const Complex denom = det_i_minus(j);
  if (!(std::abs(denom) > kNonTransversal)) {
    throw HypothesisError("non-transversal fixed point: |det(I - J)| <= 1e-8");
  }
  return b.evaluate(j) / denom;
}

Complex guillot_rhs(const InvariantPolySpec& b, int d) {
  std::vector<Complex> s;
  for (int k = 1; k <= b.n(); ++k) s.push_back(integer_power(Complex(-static_cast<double>(d)), k));
  return b.evaluate_at(s);
}

Complex bb_index(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw InputError("Baum-Bott index needs a 2x2 linearization");
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (!(std::abs(det) > kDegenerate)) throw HypothesisError("degenerate singularity: |det| <= 1e-10");
  const Complex tr = m(0, 0) + m(1, 1);
  return tr * tr / det;
}

Complex cs_index(Complex lambda_tangent, Complex lambda_normal) {
  if (!(std::abs(lambda_tangent) > kDegenerate)) {
    throw HypothesisError("tangent eigenvalue vanishes (saddle-node along the invariant line)");
  }
  return lambda_normal / lambda_tangent;
}

}  // namespace woodshole
