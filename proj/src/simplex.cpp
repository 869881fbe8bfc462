#include "btt/simplex.hpp"

#include "btt/errors.hpp"

namespace btt {

std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error(Errc::DimensionMismatch, "feasible_point: row count");
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != n) throw Error(Errc::DimensionMismatch, "feasible_point: ragged rows");
  }
  if (m == 0) return std::vector<Rational>(n, Rational(0));

  // Tableau over the variables y_0..y_{n-1}, artificials a_0..a_{m-1}, rhs.
  const std::size_t cols = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = flip ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs of "minimise the sum of artificials".
  std::vector<Rational> cost(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    cost[j] = (j >= n && j < cols) ? Rational(0) : Rational(-s);
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so some row always qualifies.
    if (leave == m) throw std::logic_error("feasible_point: unbounded phase one");

    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  // cost[cols] holds minus the objective value.
  if (cost[cols] != 0) return std::nullopt;
  std::vector<Rational> y(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) y[basis[i]] = t[i][cols];
  }
  return y;
}

}  // namespace btt
