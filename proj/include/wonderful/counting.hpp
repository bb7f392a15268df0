#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact q-analog counts for the subspace lattice of P^n over GF(q) and the
// rank bookkeeping for CH^1 of the exceptional divisors of its wonderful
// blow-up.  Everything is arbitrary precision.
namespace wonderful::counting {

using BigInt = boost::multiprecision::cpp_int;

/// Gaussian binomial [m choose k]_q for vector spaces; 0 outside 0 <= k <= m.
BigInt q_binomial(int m, int k, const BigInt& q);

/// #P^t(GF(q)) = (q^{t+1} - 1)/(q - 1); 0 for t < 0.
BigInt projective_points(int t, const BigInt& q);

/// Number of d-dimensional linear subspaces of P^n over GF(q).
BigInt gaussian_count(int n, int d, const BigInt& q);

/// Nontrivial subspaces of codimension >= 2 in P^d; lambda(0) = lambda(1) = 0.
BigInt lambda(int d, const BigInt& q);

/// Subspaces of codimension >= 2 in P^t not lying in a fixed hyperplane,
/// counted directly: an i-dimensional one meets the hyperplane in an
/// (i-1)-dimensional subspace and there are q^{t-i} ways to extend it.
BigInt nu(int t, const BigInt& q);

/// The same number read off the hyperplane recursion
/// lambda(t) = nu(t) + lambda(t-1) + #P^{t-1}.
BigInt nu_from_recursion(int t, const BigInt& q);

/// 1 if d is 0 or n-1, else 2.
int epsilon(int d, int n);

/// rk CH^1(E_L) for dim L = d in P^n: lambda(d) + lambda(n-1-d) + epsilon(d).
BigInt rank_ch1_exceptional(int d, int n, const BigInt& q);

struct InequalityRecord {
  std::string name;  // "hyperplane-step" for the t-indexed one, "rank-gap" for (d, d')
  int d = 0;         // t for hyperplane-step
  int d_prime = 0;   // unused for hyperplane-step
  BigInt lhs;
  BigInt rhs;
  bool pass = false;
};

struct InequalityReport {
  int n = 0;
  BigInt q;
  std::vector<InequalityRecord> records;
  bool pass() const;
};

/// lambda(t) - lambda(t-1) > lambda(t-1) + 1 for 2 <= t <= n, and
/// lambda(n-1-d) - lambda(n-1-d') > lambda(d') - lambda(d) + 1 for all
/// d < d' < n-1-d.
InequalityReport check_inequalities(int n, const BigInt& q);

/// rank(d) > rank(d') for all d < d' < n-1-d.
InequalityReport check_rank_monotonicity(int n, const BigInt& q);

}  // namespace wonderful::counting
