#pragma once

#include <complex>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace woodshole {

using Complex = std::complex<double>;
using Exponent = std::vector<int>;

// Graded-lexicographic order: total degree first, then lexicographic with
// the first variable most significant.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Coefficients below this fraction of the largest coefficient modulus are
// treated as numerical zero and dropped on construction.
inline constexpr double kRelativeZero = 1e-14;

// Sparse multivariate polynomial with double-precision complex coefficients.
// Immutable after construction; the term map is kept in graded-lex order so
// equality and serialization are deterministic.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Complex, GradedLexLess>;

  // Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  explicit MultiPoly(int num_vars);
  MultiPoly(int num_vars, const std::vector<std::pair<Exponent, Complex>>& terms);

  static MultiPoly constant(int num_vars, Complex value);
  static MultiPoly variable(int num_vars, int index);
  static MultiPoly monomial(int num_vars, Exponent exponent, Complex coefficient);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const;
  // Degree in a single variable; kZeroDegree for the zero polynomial.
  int degree_in(int var_index) const;
  bool is_homogeneous() const;
  // Largest coefficient modulus (0 for the zero polynomial).
  double coefficient_scale() const;
  Complex coefficient(const Exponent& exponent) const;
  // Sum of the terms of exactly the given total degree.
  MultiPoly homogeneous_part(int degree) const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(Complex s, const MultiPoly& p);
  friend MultiPoly operator*(const MultiPoly& p, Complex s) { return s * p; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  static MultiPoly from_map(int num_vars, TermMap terms);
  void strip();

  int num_vars_;
  TermMap terms_;
};

Complex eval(const MultiPoly& p, std::span<const Complex> x);

MultiPoly partial(const MultiPoly& p, int var_index);

// Multiplies each term by new_var^(target_degree - term degree); the new
// variable is inserted at new_var_position, shifting later variables right.
MultiPoly homogenize(const MultiPoly& p, int target_degree, int new_var_position);

// Sets the chart variable to 1 and removes it.
MultiPoly dehomogenize_chart(const MultiPoly& p, int chart_index);

// Sets var_index to 0 and removes it.
MultiPoly restrict_to_zero(const MultiPoly& p, int var_index);

// Swaps two variables.
MultiPoly swap_variables(const MultiPoly& p, int a, int b);

// All exponent vectors of exactly the given total degree, in graded-lex order.
std::vector<Exponent> monomials_of_degree(int num_vars, int degree);

}  // namespace woodshole
