#include "wonderful/counting.hpp"

#include "wonderful/error.hpp"

namespace wonderful::counting {

namespace {

BigInt ipow(const BigInt& b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_q(const BigInt& q) { require(q >= 2, ErrorCode::InvalidArgument, "q must be at least 2"); }

}  // namespace

BigInt q_binomial(int m, int k, const BigInt& q) {
  check_q(q);
  if (k < 0 || k > m) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, m - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt projective_points(int t, const BigInt& q) {
  check_q(q);
  if (t < 0) return 0;
  return (ipow(q, t + 1) - 1) / (q - 1);
}

BigInt gaussian_count(int n, int d, const BigInt& q) {
  require(d >= 0 && d <= n - 1, ErrorCode::InvalidArgument, "need 0 <= d <= n-1");
  return q_binomial(n + 1, d + 1, q);
}

BigInt lambda(int d, const BigInt& q) {
  require(d >= 0, ErrorCode::InvalidArgument, "lambda needs d >= 0");
  check_q(q);
  BigInt sum = 0;
  for (int i = 0; i <= d - 2; ++i) sum += gaussian_count(d, i, q);
  return sum;
}

BigInt nu(int t, const BigInt& q) {
  require(t >= 2, ErrorCode::InvalidArgument, "nu needs t >= 2");
  BigInt sum = 0;
  for (int i = 0; i <= t - 2; ++i) sum += ipow(q, t - i) * q_binomial(t, i, q);
  return sum;
}

BigInt nu_from_recursion(int t, const BigInt& q) {
  require(t >= 2, ErrorCode::InvalidArgument, "nu needs t >= 2");
  return lambda(t, q) - lambda(t - 1, q) - projective_points(t - 1, q);
}

int epsilon(int d, int n) {
  require(d >= 0 && d <= n - 1, ErrorCode::InvalidArgument, "need 0 <= d <= n-1");
  return (d == 0 || d == n - 1) ? 1 : 2;
}

BigInt rank_ch1_exceptional(int d, int n, const BigInt& q) {
  return lambda(d, q) + lambda(n - 1 - d, q) + epsilon(d, n);
}

bool InequalityReport::pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

InequalityReport check_inequalities(int n, const BigInt& q) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be at least 1");
  InequalityReport report{n, q, {}};
  for (int t = 2; t <= n; ++t) {
    InequalityRecord r{"hyperplane-step", t, 0, lambda(t, q) - lambda(t - 1, q), lambda(t - 1, q) + 1};
    r.pass = r.lhs > r.rhs;
    report.records.push_back(std::move(r));
  }
  for (int d = 0; d <= n - 1; ++d) {
    for (int dp = d + 1; dp < n - 1 - d; ++dp) {
      InequalityRecord r{"rank-gap", d, dp, lambda(n - 1 - d, q) - lambda(n - 1 - dp, q),
                         lambda(dp, q) - lambda(d, q) + 1};
      r.pass = r.lhs > r.rhs;
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

InequalityReport check_rank_monotonicity(int n, const BigInt& q) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be at least 1");
  InequalityReport report{n, q, {}};
  for (int d = 0; d <= n - 1; ++d) {
    for (int dp = d + 1; dp < n - 1 - d; ++dp) {
      InequalityRecord r{"rank-monotone", d, dp, rank_ch1_exceptional(d, n, q), rank_ch1_exceptional(dp, n, q)};
      r.pass = r.lhs > r.rhs;
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace wonderful::counting
