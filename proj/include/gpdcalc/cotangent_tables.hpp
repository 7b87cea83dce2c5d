#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gpdcalc/combinatorics.hpp"
#include "gpdcalc/cotangent_model.hpp"

namespace gpdcalc {

// Coefficient tables of a multiplicative k-form on T*M in the fiberwise
// normal form: the p-linear block lin[I, j] (|I| = k) and the single-dp
// block mix[K, a] (|K| = k-1), all entries polynomials in the base
// coordinates. The displayed closed-form bracket and action laws of the
// model are evaluated directly from these tables.
struct MultFormTables {
  unsigned k = 0;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, PolyExpr> lin;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, PolyExpr> mix;
};

inline MultFormTables random_tables(const CotangentModel& model, Rng& rng, unsigned k,
                                    unsigned poly_degree) {
  MultFormTables t;
  t.k = k;
  std::size_t n = model.n();
  for_each_increasing_tuple(n, k, [&](const std::vector<std::size_t>& I) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyExpr c = rng.poly(model.base_chart(), poly_degree);
      if (!c.is_zero()) t.lin.emplace(std::make_pair(I, j), std::move(c));
    }
  });
  if (k >= 1)
    for_each_increasing_tuple(n, k - 1, [&](const std::vector<std::size_t>& K) {
      for (std::size_t a = 0; a < n; ++a) {
        PolyExpr c = rng.poly(model.base_chart(), poly_degree);
        if (!c.is_zero()) t.mix.emplace(std::make_pair(K, a), std::move(c));
      }
    });
  return t;
}

inline GradedElement assemble_lin(const CotangentModel& model, const MultFormTables& t) {
  GradedElement out(model.forms(), t.k);
  for (const auto& [key, c] : t.lin) {
    GradedElement::IndexTuple tuple(key.first.begin(), key.first.end());
    out.add_component(tuple, model.to_model(c) * PolyExpr::coordinate(
                                                     model.chart(), "p" + std::to_string(key.second + 1)));
  }
  return out;
}

inline GradedElement assemble_mix(const CotangentModel& model, const MultFormTables& t) {
  GradedElement out(model.forms(), t.k);
  for (const auto& [key, c] : t.mix) {
    GradedElement::IndexTuple tuple(key.first.begin(), key.first.end());
    tuple.push_back(model.n() + key.second);
    int sign = GradedElement::sort_tuple(tuple);
    if (sign == 0) continue;
    PolyExpr cc = model.to_model(c);
    out.add_component(tuple, sign < 0 ? -cc : cc);
  }
  return out;
}

inline GradedElement assemble(const CotangentModel& model, const MultFormTables& t) {
  return assemble_lin(model, t) + assemble_mix(model, t);
}

namespace detail {

inline GradedElement dq_wedge(const CotangentModel& model, const std::vector<std::size_t>& I) {
  GradedElement out = GradedElement::scalar(model.forms(),
                                            PolyExpr::constant(model.chart(), Rational(1)));
  for (auto i : I) out = wedge(out, GradedElement::basis(model.forms(), "dq" + std::to_string(i + 1)));
  return out;
}

inline GradedElement dx_wedge(const CotangentModel& model, const std::vector<std::size_t>& I) {
  GradedElement out = GradedElement::scalar(model.base_forms(),
                                            PolyExpr::constant(model.base_chart(), Rational(1)));
  for (auto i : I)
    out = wedge(out, GradedElement::basis(model.base_forms(), "dx" + std::to_string(i + 1)));
  return out;
}

inline std::vector<std::size_t> drop(const std::vector<std::size_t>& I, std::size_t pos) {
  std::vector<std::size_t> r;
  for (std::size_t m = 0; m < I.size(); ++m)
    if (m != pos) r.push_back(I[m]);
  return r;
}

}  // namespace detail

// [lin-block, lin-block]: sum over increasing I, A and removal positions s, t
//   (-1)^(k-s) T_{I,j} T'_{A,i_s} p^j dq^{I_s} ^ dq^A
// - (-1)^(l-t) T'_{A,b} T_{I,a_t} p^b dq^{A_t} ^ dq^I.
inline GradedElement expected_lin_lin(const CotangentModel& model, const MultFormTables& ta,
                                      const MultFormTables& tb) {
  unsigned k = ta.k, l = tb.k;
  GradedElement out(model.forms(), k + l - 1);
  for (const auto& [ka, ca] : ta.lin) {
    const auto& I = ka.first;
    std::size_t j = ka.second;
    for (std::size_t s = 0; s < I.size(); ++s) {
      // T'_{A, i_s}: all A entries with second index i_s
      for (const auto& [kb, cb] : tb.lin) {
        if (kb.second != I[s]) continue;
        const auto& A = kb.first;
        PolyExpr coeff = model.to_model(ca) * model.to_model(cb) *
                         PolyExpr::coordinate(model.chart(), "p" + std::to_string(j + 1));
        if ((k - (s + 1)) % 2 == 1) coeff = -coeff;
        GradedElement w = wedge(detail::dq_wedge(model, detail::drop(I, s)),
                                detail::dq_wedge(model, A)) *
                          coeff;
        out += w;
      }
    }
  }
  for (const auto& [kb, cb] : tb.lin) {
    const auto& A = kb.first;
    std::size_t b = kb.second;
    for (std::size_t t = 0; t < A.size(); ++t) {
      for (const auto& [ka, ca] : ta.lin) {
        if (ka.second != A[t]) continue;
        const auto& I = ka.first;
        PolyExpr coeff = model.to_model(cb) * model.to_model(ca) *
                         PolyExpr::coordinate(model.chart(), "p" + std::to_string(b + 1));
        if ((l - (t + 1)) % 2 == 0) coeff = -coeff;  // overall minus times (-1)^(l-t)
        GradedElement w = wedge(detail::dq_wedge(model, detail::drop(A, t)),
                                detail::dq_wedge(model, I)) *
                          coeff;
        out += w;
      }
    }
  }
  return out;
}

// [lin-block (k-form), mix-block (l-form)]:
//   (-1)^(k+l-s) T'_{L,b} T_{I,l_s} dq^{L_s} ^ dp^b ^ dq^I
// + T'_{L,b} (d T_{I,j} / d q^b) p^j dq^L ^ dq^I
// (the first sum over removal positions in L, |L| = l-1; signs pinned by the
// degree-(1,1) bracket table and cross-checked against the bracket itself).
inline GradedElement expected_lin_mix(const CotangentModel& model, const MultFormTables& ta,
                                      const MultFormTables& tb) {
  unsigned k = ta.k, l = tb.k;
  (void)k;
  GradedElement out(model.forms(), ta.k + l - 1);
  for (const auto& [kb, cb] : tb.mix) {
    const auto& L = kb.first;
    std::size_t b = kb.second;
    for (std::size_t s = 0; s < L.size(); ++s) {
      for (const auto& [ka, ca] : ta.lin) {
        if (ka.second != L[s]) continue;
        const auto& I = ka.first;
        PolyExpr coeff = model.to_model(cb) * model.to_model(ca);
        if ((ta.k + l - (s + 1)) % 2 == 1) coeff = -coeff;
        GradedElement w = wedge(wedge(detail::dq_wedge(model, detail::drop(L, s)),
                                      GradedElement::basis(model.forms(), "dp" + std::to_string(b + 1))),
                                detail::dq_wedge(model, I)) *
                          coeff;
        out += w;
      }
    }
    for (const auto& [ka, ca] : ta.lin) {
      const auto& I = ka.first;
      std::size_t j = ka.second;
      PolyExpr dca = ca.derivative(model.base_chart()->name(b));
      if (dca.is_zero()) continue;
      PolyExpr coeff = model.to_model(cb) * model.to_model(dca) *
                       PolyExpr::coordinate(model.chart(), "p" + std::to_string(j + 1));
      GradedElement w =
          wedge(detail::dq_wedge(model, L), detail::dq_wedge(model, I)) * coeff;
      out += w;
    }
  }
  return out;
}

// [mix-block (k-form), mix-block (l-form)]:
//   - T_{K,a} (d T'_{L,b} / d q^a) dq^K ^ dq^L ^ dp^b
//   + T'_{L,b} (d T_{K,a} / d q^b) dq^K ^ dq^L ^ dp^a
// (both terms in K-before-L order; the degree-(1,1) case is the model's
// third bracket line).
inline GradedElement expected_mix_mix(const CotangentModel& model, const MultFormTables& ta,
                                      const MultFormTables& tb) {
  GradedElement out(model.forms(), ta.k + tb.k - 1);
  for (const auto& [ka, ca] : ta.mix) {
    const auto& K = ka.first;
    std::size_t a = ka.second;
    for (const auto& [kb, cb] : tb.mix) {
      const auto& L = kb.first;
      std::size_t b = kb.second;
      PolyExpr dcb = cb.derivative(model.base_chart()->name(a));
      if (!dcb.is_zero()) {
        PolyExpr coeff = -(model.to_model(ca) * model.to_model(dcb));
        GradedElement w = wedge(wedge(detail::dq_wedge(model, K), detail::dq_wedge(model, L)),
                                GradedElement::basis(model.forms(), "dp" + std::to_string(b + 1))) *
                          coeff;
        out += w;
      }
      PolyExpr dca = ca.derivative(model.base_chart()->name(b));
      if (!dca.is_zero()) {
        PolyExpr coeff = model.to_model(cb) * model.to_model(dca);
        GradedElement w = wedge(wedge(detail::dq_wedge(model, K), detail::dq_wedge(model, L)),
                                GradedElement::basis(model.forms(), "dp" + std::to_string(a + 1))) *
                          coeff;
        out += w;
      }
    }
  }
  return out;
}

// (lin + mix) |> gamma_L dx^L:
//   - (-1)^(l-s) gamma_L T_{I,l_s} dx^{L_s} ^ dx^I  -  T_{K,a} (d gamma_L / d x^a) dx^K ^ dx^L.
inline GradedElement expected_action(const CotangentModel& model, const MultFormTables& ta,
                                     const GradedElement& gamma) {
  unsigned l = gamma.degree();
  GradedElement out(model.base_forms(), ta.k + l - 1);
  for (const auto& [tg, cg] : gamma.components()) {
    std::vector<std::size_t> L;
    for (auto slot : tg) L.push_back(gamma.frame()->label(slot).coordinate);
    for (std::size_t s = 0; s < L.size(); ++s) {
      for (const auto& [ka, ca] : ta.lin) {
        if (ka.second != L[s]) continue;
        PolyExpr coeff = -(cg * ca);
        if ((l - (s + 1)) % 2 == 1) coeff = -coeff;
        GradedElement w = wedge(detail::dx_wedge(model, detail::drop(L, s)),
                                detail::dx_wedge(model, ka.first)) *
                          coeff;
        out += w;
      }
    }
    for (const auto& [ka, ca] : ta.mix) {
      std::size_t a = ka.second;
      PolyExpr dcg = cg.derivative(model.base_chart()->name(a));
      if (dcg.is_zero()) continue;
      PolyExpr coeff = -(ca * dcg);
      GradedElement w = wedge(detail::dx_wedge(model, ka.first), detail::dx_wedge(model, L)) * coeff;
      out += w;
    }
  }
  return out;
}

}  // namespace gpdcalc
