#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gpdcalc/rational.hpp"
#include "gpdcalc/report.hpp"

namespace gpdcalc {

// Exact rational row reduction; returns a basis of the nullspace of the
// rows-as-constraints system (vectors x with M x = 0).
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> m,
                                                    std::size_t cols) {
  std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pr = rank;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[rank], m[pr]);
    Rational inv = Rational(1) / m[rank][c];
    for (std::size_t j = 0; j < cols; ++j) m[rank][j] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline bool in_span(const std::vector<std::vector<Rational>>& basis,
                    const std::vector<Rational>& v) {
  // Solve basis^T x = v by elimination on the augmented system.
  std::size_t dim = v.size();
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(basis.size() + 1, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = basis[j][i];
    m[i][basis.size()] = v[i];
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < basis.size() && rank < dim; ++c) {
    std::size_t pr = rank;
    while (pr < dim && m[pr][c].is_zero()) ++pr;
    if (pr == dim) continue;
    std::swap(m[rank], m[pr]);
    Rational inv = Rational(1) / m[rank][c];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j <= basis.size(); ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  for (std::size_t r = rank; r < dim; ++r)
    if (!m[r][basis.size()].is_zero()) return false;
  // also rows below rank among first `rank` rows consistent by construction
  for (std::size_t r = 0; r < dim; ++r) {
    bool all_zero = true;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!m[r][j].is_zero()) all_zero = false;
    if (all_zero && !m[r][basis.size()].is_zero()) return false;
  }
  return true;
}

// A Lie bialgebra with rational structure constants: bracket c[i][j][k]
// ([e_i, e_j] = sum_k c[i][j][k] e_k) and cobracket delta[i][j][k]
// (delta(e_i) = sum_{j<k} delta[i][j][k] e_j ^ e_k, antisymmetric in j,k).
struct LieBialgebra {
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<Rational>>> bracket;
  std::vector<std::vector<std::vector<Rational>>> cobracket;

  static LieBialgebra zero(std::size_t m) {
    LieBialgebra b;
    b.dim = m;
    b.bracket.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, Rational(0))));
    b.cobracket.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, Rational(0))));
    return b;
  }

  std::vector<Rational> bracket_of(const std::vector<Rational>& u,
                                   const std::vector<Rational>& v) const {
    std::vector<Rational> w(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (u[i].is_zero() || v[j].is_zero()) continue;
        for (std::size_t k = 0; k < dim; ++k) w[k] += u[i] * v[j] * bracket[i][j][k];
      }
    return w;
  }

  // Dual bracket on g*: <[t1, t2]_*, e_i> = <t1 ^ t2, delta(e_i)> with the
  // determinant pairing <a^b, u^v> = a(u)b(v) - a(v)b(u).
  std::vector<Rational> dual_bracket(const std::vector<Rational>& t1,
                                     const std::vector<Rational>& t2) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
          const Rational& d = cobracket[i][j][k];
          if (d.is_zero()) continue;
          // ordered sum over an antisymmetric tensor equals the unordered
          // determinant pairing
          acc += d * t1[j] * t2[k];
        }
      out[i] = acc;
    }
    return out;
  }

  // Basis of {theta : theta([g,g]) = 0}, the infinitesimally invariant
  // covectors.
  std::vector<std::vector<Rational>> invariant_covectors() const {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        std::vector<Rational> row(dim, Rational(0));
        for (std::size_t k = 0; k < dim; ++k) row[k] = bracket[i][j][k];
        rows.push_back(std::move(row));
      }
    if (rows.empty()) rows.emplace_back(dim, Rational(0));
    return nullspace(std::move(rows), dim);
  }

  VerificationReport validate() const {
    VerificationReport rep;
    rep.suite = "bialgebra";
    bool anti = true, coanti = true;
    for (std::size_t i = 0; i < dim && anti; ++i)
      for (std::size_t j = 0; j < dim && anti; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (bracket[i][j][k] != -bracket[j][i][k]) {
            anti = false;
            break;
          }
    rep.add("bracket-antisymmetry", "c^k_{ij} = -c^k_{ji}", anti);
    for (std::size_t i = 0; i < dim && coanti; ++i)
      for (std::size_t j = 0; j < dim && coanti; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (cobracket[i][j][k] != -cobracket[i][k][j]) {
            coanti = false;
            break;
          }
    rep.add("cobracket-antisymmetry", "delta^{jk}_i = -delta^{kj}_i", coanti);

    // Jacobi for the bracket.
    bool jac = true;
    std::string jw;
    for (std::size_t i = 0; i < dim && jac; ++i)
      for (std::size_t j = i + 1; j < dim && jac; ++j)
        for (std::size_t k = j + 1; k < dim && jac; ++k) {
          auto e = [&](std::size_t a) {
            std::vector<Rational> v(dim, Rational(0));
            v[a] = Rational(1);
            return v;
          };
          auto sum = bracket_of(bracket_of(e(i), e(j)), e(k));
          auto t2 = bracket_of(bracket_of(e(j), e(k)), e(i));
          auto t3 = bracket_of(bracket_of(e(k), e(i)), e(j));
          for (std::size_t m = 0; m < dim; ++m) sum[m] += t2[m] + t3[m];
          for (std::size_t m = 0; m < dim; ++m)
            if (!sum[m].is_zero()) {
              jac = false;
              jw = "triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                   std::to_string(k + 1) + ")";
              break;
            }
        }
    rep.add("jacobi", "Jacobi identity of the bracket", jac, jw);

    // Co-Jacobi: the dual bracket satisfies Jacobi.
    bool cojac = true;
    std::string cw;
    auto eps = [&](std::size_t a) {
      std::vector<Rational> v(dim, Rational(0));
      v[a] = Rational(1);
      return v;
    };
    for (std::size_t i = 0; i < dim && cojac; ++i)
      for (std::size_t j = i + 1; j < dim && cojac; ++j)
        for (std::size_t k = j + 1; k < dim && cojac; ++k) {
          auto sum = dual_bracket(dual_bracket(eps(i), eps(j)), eps(k));
          auto t2 = dual_bracket(dual_bracket(eps(j), eps(k)), eps(i));
          auto t3 = dual_bracket(dual_bracket(eps(k), eps(i)), eps(j));
          for (std::size_t m = 0; m < dim; ++m) sum[m] += t2[m] + t3[m];
          for (std::size_t m = 0; m < dim; ++m)
            if (!sum[m].is_zero()) {
              cojac = false;
              cw = "dual triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                   std::to_string(k + 1) + ")";
              break;
            }
        }
    rep.add("co-jacobi", "Jacobi identity of the dual bracket", cojac, cw);

    // Cocycle compatibility: delta[u,v] = ad_u delta(v) - ad_v delta(u),
    // with ad acting on wedge^2 as a derivation. Expressed on the
    // antisymmetric coefficient matrices D_u[j][k] = <delta(u), e^j ^ e^k>.
    auto delta_of = [&](const std::vector<Rational>& u) {
      std::vector<std::vector<Rational>> d(dim, std::vector<Rational>(dim, Rational(0)));
      for (std::size_t i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j)
          for (std::size_t k = 0; k < dim; ++k) d[j][k] += u[i] * cobracket[i][j][k];
      }
      return d;
    };
    auto ad_on_wedge = [&](const std::vector<Rational>& u,
                           const std::vector<std::vector<Rational>>& d) {
      // (ad_u (x ^ y) = [u,x] ^ y + x ^ [u,y]) => A C + C A^T with
      // A[m][k] = ad-matrix: [u, e_m] = sum_k A... specifically
      // out[j][k] = sum_m ( ad[m][j] d[m][k] + ad[m][k] d[j][m] ).
      std::vector<std::vector<Rational>> ad(dim, std::vector<Rational>(dim, Rational(0)));
      for (std::size_t i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t m = 0; m < dim; ++m)
          for (std::size_t k = 0; k < dim; ++k) ad[m][k] += u[i] * bracket[i][m][k];
      }
      std::vector<std::vector<Rational>> out(dim, std::vector<Rational>(dim, Rational(0)));
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
          Rational acc(0);
          for (std::size_t m = 0; m < dim; ++m)
            acc += ad[m][j] * d[m][k] + ad[m][k] * d[j][m];
          out[j][k] = acc;
        }
      return out;
    };
    bool coc = true;
    std::string ow;
    auto e = [&](std::size_t a) {
      std::vector<Rational> v(dim, Rational(0));
      v[a] = Rational(1);
      return v;
    };
    for (std::size_t i = 0; i < dim && coc; ++i)
      for (std::size_t j = i + 1; j < dim && coc; ++j) {
        auto lhs = delta_of(bracket_of(e(i), e(j)));
        auto r1 = ad_on_wedge(e(i), delta_of(e(j)));
        auto r2 = ad_on_wedge(e(j), delta_of(e(i)));
        for (std::size_t a = 0; a < dim && coc; ++a)
          for (std::size_t b = 0; b < dim; ++b)
            if (lhs[a][b] != r1[a][b] - r2[a][b]) {
              coc = false;
              ow = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
              break;
            }
      }
    rep.add("cobracket-cocycle", "delta[u,v] = ad_u delta(v) - ad_v delta(u)", coc, ow);
    return rep;
  }

  // Closure of the invariant covector space under the dual bracket.
  VerificationReport closure_report() const {
    VerificationReport rep;
    rep.suite = "bialgebra-invariants";
    auto inv = invariant_covectors();
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = i + 1; j < inv.size(); ++j) {
        auto br = dual_bracket(inv[i], inv[j]);
        bool ok = in_span(inv, br);
        rep.add("closure-" + std::to_string(i + 1) + "-" + std::to_string(j + 1),
                "invariant covectors are closed under the dual bracket", ok,
                ok ? "" : "bracket of basis elements " + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + " leaves the span");
      }
    if (inv.size() < 2)
      rep.add("closure-trivial", "invariant covectors are closed under the dual bracket", true);
    return rep;
  }
};

}  // namespace gpdcalc
