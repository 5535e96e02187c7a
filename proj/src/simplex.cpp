#include "zc1/simplex.hpp"

namespace zc1 {
namespace {

struct Tableau {
  int m, n, ncol;  // rows, structural columns, total columns (excl. rhs)
  std::vector<std::vector<Rational>> T;  // (m+1) x (ncol+1)
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational pv = T[r][c];
    if (pv != Rational(1))
      for (auto& x : T[r]) x /= pv;
    for (int i = 0; i <= m; ++i) {
      if (i == r || T[i][c].is_zero()) continue;
      Rational f = T[i][c];
      for (int j = 0; j <= ncol; ++j)
        if (!T[r][j].is_zero()) T[i][j] -= f * T[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule; `allowed` limits entering columns. True when optimal,
  // false when unbounded.
  bool run(int allowed) {
    for (;;) {
      int e = -1;
      for (int j = 0; j < allowed; ++j)
        if (T[m][j] > Rational(0)) {
          e = j;
          break;
        }
      if (e < 0) return true;
      int r = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (T[i][e] > Rational(0)) {
          Rational ratio = T[i][ncol] / T[i][e];
          if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
            best = ratio;
            r = i;
          }
        }
      }
      if (r < 0) return false;
      pivot(r, e);
    }
  }
};

}  // namespace

LpResult simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  int m = static_cast<int>(A.size());
  int n = static_cast<int>(c.size());
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i)
    if (b[i] < Rational(0)) art_rows.push_back(i);
  int na = static_cast<int>(art_rows.size());
  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.ncol = n + m + na;
  tb.T.assign(m + 1, std::vector<Rational>(tb.ncol + 1, Rational(0)));
  tb.basis.assign(m, 0);
  std::vector<int> art_col(m, -1);
  for (int k = 0; k < na; ++k) art_col[art_rows[k]] = n + m + k;
  for (int i = 0; i < m; ++i) {
    bool neg = b[i] < Rational(0);
    Rational sgn(neg ? -1 : 1);
    for (int j = 0; j < n; ++j) tb.T[i][j] = A[i][j] * sgn;
    tb.T[i][n + i] = sgn;
    tb.T[i][tb.ncol] = b[i] * sgn;
    if (neg) {
      tb.T[i][art_col[i]] = Rational(1);
      tb.basis[i] = art_col[i];
    } else {
      tb.basis[i] = n + i;
    }
  }
  if (na > 0) {
    // phase 1: drive artificial variables to zero
    for (int i : art_rows)
      for (int j = 0; j <= tb.ncol; ++j) tb.T[m][j] += tb.T[i][j];
    for (int j = n + m; j < tb.ncol; ++j) tb.T[m][j] = Rational(0);
    tb.run(n + m);
    if (!tb.T[m][tb.ncol].is_zero()) return {LpStatus::infeasible, Rational(0)};
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] >= n + m) {
        for (int j = 0; j < n + m; ++j)
          if (!tb.T[i][j].is_zero()) {
            tb.pivot(i, j);
            break;
          }
      }
    }
    for (int j = 0; j <= tb.ncol; ++j) tb.T[m][j] = Rational(0);
  }
  for (int j = 0; j < n; ++j) tb.T[m][j] = c[j];
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n && !tb.T[m][tb.basis[i]].is_zero()) {
      Rational f = tb.T[m][tb.basis[i]];
      for (int j = 0; j <= tb.ncol; ++j) tb.T[m][j] -= f * tb.T[i][j];
    }
  }
  if (!tb.run(n + m)) return {LpStatus::unbounded, Rational(0)};
  Rational val(0);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) val += c[tb.basis[i]] * tb.T[i][tb.ncol];
  return {LpStatus::optimal, val};
}

LpResult lp_bound(const std::vector<std::pair<std::vector<Rational>, Rational>>& rows, int nvars,
                  int var, int sign) {
  int m = static_cast<int>(rows.size());
  int n = 2 * nvars;  // x = u - w with u, w >= 0
  std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nvars; ++j) {
      A[i][j] = rows[i].first[j];
      A[i][nvars + j] = -rows[i].first[j];
    }
    b[i] = rows[i].second;
  }
  std::vector<Rational> c(n, Rational(0));
  c[var] = Rational(sign);
  c[nvars + var] = Rational(-sign);
  return simplex_max(A, b, c);
}

}  // namespace zc1
