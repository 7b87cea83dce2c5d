#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gpdcalc/graded.hpp"

namespace gpdcalc {

// Deterministic RNG: mt19937_64 with modulo-bounded draws. The engine's
// output sequence is fixed by the C++ standard, and no std distributions are
// used, so streams are identical across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
  long long integer(long long lo, long long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(engine_() % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  bool chance(unsigned num, unsigned den) { return engine_() % den < num; }

  // Random polynomial of total degree <= max_degree with integer coefficients
  // in [-coeff_bound, coeff_bound].
  PolyExpr poly(const ChartPtr& chart, unsigned max_degree, long long coeff_bound = 3) {
    PolyExpr out = PolyExpr::zero(chart);
    std::vector<unsigned> exps(chart->size(), 0);
    fill_monomials(out, chart, exps, 0, max_degree, coeff_bound);
    return out;
  }

  // Random graded element with coefficients of the given polynomial degree.
  GradedElement element(const FramePtr& frame, unsigned degree, unsigned poly_degree,
                        long long coeff_bound = 3) {
    GradedElement g(frame, degree);
    std::vector<std::size_t> tuple;
    fill_components(g, frame, tuple, 0, degree, poly_degree, coeff_bound);
    return g;
  }

 private:
  void fill_monomials(PolyExpr& out, const ChartPtr& chart, std::vector<unsigned>& exps,
                      std::size_t coord, unsigned remaining, long long bound) {
    if (coord == chart->size()) {
      long long c = integer(-bound, bound);
      if (c != 0) out += PolyExpr::monomial(chart, exps, Rational(c));
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      exps[coord] = e;
      fill_monomials(out, chart, exps, coord + 1, remaining - e, bound);
    }
    exps[coord] = 0;
  }

  void fill_components(GradedElement& g, const FramePtr& frame, std::vector<std::size_t>& tuple,
                       std::size_t from, unsigned remaining, unsigned poly_degree,
                       long long bound) {
    if (remaining == 0) {
      PolyExpr c = poly(frame->chart(), poly_degree, bound);
      if (!c.is_zero()) g.add_component(tuple, c);
      return;
    }
    for (std::size_t i = from; i + remaining <= frame->size(); ++i) {
      tuple.push_back(i);
      fill_components(g, frame, tuple, i + 1, remaining - 1, poly_degree, bound);
      tuple.pop_back();
    }
  }

  std::mt19937_64 engine_;
};

}  // namespace gpdcalc
