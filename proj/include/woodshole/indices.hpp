#pragma once

#include <string>
#include <vector>

#include "woodshole/linalg.hpp"
#include "woodshole/polyalg.hpp"

namespace woodshole {

// tr(wedge^k M): sum of the k x k principal minors. sigma_0 = 1.
Complex sigma_k(const CMatrix& m, int k);

Complex det_i_minus(const CMatrix& m);

// sigma_k(J) / det(I - J).
Complex woods_hole_term(const CMatrix& j, int k);

// (-1)^k d^k.
Complex lefschetz_rhs(int n, int d, int k);

// Number of fixed points of a degree-d endomorphism of P^n: 1 + d + ... + d^n.
long long fixed_point_count(int n, int d);

// One monomial coefficient * sigma_1^a1 ... sigma_n^an.
struct SigmaMonomial {
  std::vector<int> exponents;
  Complex coefficient;
};

// Invariant polynomial B = Q(sigma_1, ..., sigma_n) of weighted degree <= n.
class InvariantPolySpec {
 public:
  InvariantPolySpec(int n, std::vector<SigmaMonomial> monomials);

  // Monic monomial sigma_1^a1 ... sigma_n^an.
  static InvariantPolySpec monomial(int n, std::vector<int> exponents);

  int n() const { return n_; }
  const std::vector<SigmaMonomial>& monomials() const { return monomials_; }
  // Human-readable form such as "1", "sigma1^2", "2*sigma2 + sigma1".
  std::string label() const;

  // B(M) through the sigma_k of M.
  Complex evaluate(const CMatrix& m) const;
  // Q(s_1, ..., s_n).
  Complex evaluate_at(const std::vector<Complex>& s) const;

 private:
  int n_;
  std::vector<SigmaMonomial> monomials_;
};

// Every monic sigma-monomial of weighted degree <= n, constant first.
std::vector<InvariantPolySpec> default_invariants(int n);

// B(J) / det(I - J).
Complex guillot_lhs_term(const CMatrix& j, const InvariantPolySpec& b);

// Q(-d, (-d)^2, ..., (-d)^n).
Complex guillot_rhs(const InvariantPolySpec& b, int d);

// Baum-Bott index of a non-degenerate singularity: tr(M)^2 / det(M).
Complex bb_index(const CMatrix& m);

// Camacho-Sad index of a non-degenerate singularity on an invariant line.
Complex cs_index(Complex lambda_tangent, Complex lambda_normal);

}  // namespace woodshole
