#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gpdcalc/charpairs.hpp"
#include "gpdcalc/rng.hpp"

namespace gpdcalc {

// The cotangent group bundle T*M => M with fiberwise addition, in standard
// coordinates (q^i, p^j). Source and target both equal the bundle projection;
// the vertical bundle with zero anchor is the tangent algebroid.
class CotangentModel {
 public:
  explicit CotangentModel(std::size_t n) : n_(n) {
    std::vector<std::string> coords;
    for (std::size_t i = 0; i < n_; ++i) coords.push_back("q" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n_; ++i) coords.push_back("p" + std::to_string(i + 1));
    chart_ = make_chart(std::move(coords));
    std::vector<std::string> base;
    for (std::size_t i = 0; i < n_; ++i) base.push_back("x" + std::to_string(i + 1));
    base_chart_ = make_chart(std::move(base));
    forms_ = Frame::covectors(chart_);
    vectors_ = Frame::vectors(chart_);
    base_forms_ = Frame::covectors(base_chart_);
    base_vectors_ = Frame::vectors(base_chart_);
    vertical_ = std::make_shared<const AlgebroidChart>(AlgebroidChart::abelian(base_chart_, n_));
  }

  std::size_t n() const { return n_; }
  const ChartPtr& chart() const { return chart_; }
  const ChartPtr& base_chart() const { return base_chart_; }
  const FramePtr& forms() const { return forms_; }
  const FramePtr& vectors() const { return vectors_; }
  const FramePtr& base_forms() const { return base_forms_; }
  const FramePtr& base_vectors() const { return base_vectors_; }
  const AlgebroidPtr& vertical_algebroid() const { return vertical_; }

  struct Membership {
    bool ok = true;
    std::string witness;
  };

  // A form is multiplicative iff it matches the fiberwise-linear normal form:
  // pure-dq components homogeneous linear in p, single-dp components
  // p-independent, no component with two dp factors.
  Membership is_multiplicative_form(const GradedElement& w) const {
    if (*w.frame() != *forms_)
      throw Error(ErrorKind::FrameMismatch, "expected a form over the model chart");
    return check_normal_form(w, /*fiber_factor_is_dp=*/true);
  }

  // Mirror normal form: pure-dp-direction (@p) components linear in p,
  // single-@q components p-independent.
  Membership is_multiplicative_multivector(const GradedElement& w) const {
    if (*w.frame() != *vectors_)
      throw Error(ErrorKind::FrameMismatch, "expected a multivector over the model chart");
    return check_normal_form(w, /*fiber_factor_is_dp=*/false);
  }

  GradedElement canonical_symplectic() const {
    GradedElement w(forms_, 2);
    for (std::size_t i = 0; i < n_; ++i)
      w += wedge(GradedElement::basis(forms_, "dq" + std::to_string(i + 1)),
                 GradedElement::basis(forms_, "dp" + std::to_string(i + 1)));
    return w;
  }

  GradedElement canonical_poisson() const {
    GradedElement p(vectors_, 2);
    for (std::size_t i = 0; i < n_; ++i)
      p += wedge(GradedElement::basis(vectors_, "@q" + std::to_string(i + 1)),
                 GradedElement::basis(vectors_, "@p" + std::to_string(i + 1)));
    return p;
  }

  // omega#: @p^i -> -dq^i, @q^i -> dp^i, applied factorwise. Restricted to
  // multiplicative inputs; preserves multiplicativity.
  GradedElement omega_sharp(const GradedElement& multivector) const {
    auto m = is_multiplicative_multivector(multivector);
    if (!m.ok) throw Error(ErrorKind::NotMultiplicative, "omega_sharp: " + m.witness);
    GradedElement out = map_labels(multivector, forms_, [&](const FrameLabel& l) {
      std::size_t i = l.coordinate;
      bool is_q = i < n_;
      std::string name = is_q ? "dp" + std::to_string(i + 1) : "dq" + std::to_string(i - n_ + 1);
      GradedElement img = GradedElement::basis(forms_, name);
      return is_q ? img : -img;
    });
    auto back = is_multiplicative_form(out);
    if (!back.ok) throw Error(ErrorKind::NotMultiplicative, "omega_sharp image: " + back.witness);
    return out;
  }

  GradedElement omega_sharp_inverse(const GradedElement& form) const {
    auto m = is_multiplicative_form(form);
    if (!m.ok) throw Error(ErrorKind::NotMultiplicative, "omega_sharp_inverse: " + m.witness);
    GradedElement out = map_labels(form, vectors_, [&](const FrameLabel& l) {
      std::size_t i = l.coordinate;
      bool is_q = i < n_;
      std::string name = is_q ? "@p" + std::to_string(i + 1) : "@q" + std::to_string(i - n_ + 1);
      GradedElement img = GradedElement::basis(vectors_, name);
      return is_q ? -img : img;
    });
    auto back = is_multiplicative_multivector(out);
    if (!back.ok)
      throw Error(ErrorKind::NotMultiplicative, "omega_sharp_inverse image: " + back.witness);
    return out;
  }

  // Leading term of a multiplicative form: restrict to p = 0 and read the
  // single-dp block as the A* (x) ^(k-1)T*M tensor. On this model rho = 0, so
  // Theta|_M = B theta = theta; the restriction having only single-dp
  // components is asserted.
  Rho0kTensor leading_term_form(const GradedElement& w) const {
    auto m = is_multiplicative_form(w);
    if (!m.ok) throw Error(ErrorKind::NotMultiplicative, "leading term: " + m.witness);
    GradedElement at_zero = restrict_fiber(w);
    GradedElement value(vertical_->split_covectors(), w.degree());
    for (const auto& [t, c] : at_zero.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) {
        std::size_t i = forms_->label(slot).coordinate;
        if (i < n_)
          nt.push_back(n_ + i);  // dq_i -> dx_i, after the E-block
        else
          nt.push_back(i - n_);  // dp_j -> E_j
      }
      int sign = GradedElement::sort_tuple(nt);
      value.add_component(std::move(nt), sign < 0 ? -to_base(c) : to_base(c));
    }
    for (const auto& [t, c] : value.components())
      if (value.bundle_factors(t) != 1)
        throw Error(ErrorKind::NotMultiplicative,
                    "restriction to M leaves a component outside the leading block");
    return make_rho0k(vertical_, std::move(value));
  }

  RhoK0Tensor leading_term_multivector(const GradedElement& w) const {
    auto m = is_multiplicative_multivector(w);
    if (!m.ok) throw Error(ErrorKind::NotMultiplicative, "leading term: " + m.witness);
    GradedElement at_zero = restrict_fiber(w);
    GradedElement value(vertical_->split_vectors(), w.degree());
    for (const auto& [t, c] : at_zero.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) {
        std::size_t i = vectors_->label(slot).coordinate;
        if (i < n_)
          nt.push_back(i);  // @q_i -> @x_i
        else
          nt.push_back(n_ + (i - n_));  // @p_j -> e_j, after the base block
      }
      int sign = GradedElement::sort_tuple(nt);
      value.add_component(std::move(nt), sign < 0 ? -to_base(c) : to_base(c));
    }
    for (const auto& [t, c] : value.components())
      if (value.bundle_factors(t) != w.degree() - 1)
        throw Error(ErrorKind::NotMultiplicative,
                    "restriction to M leaves a component outside the leading block");
    return make_rhok0(vertical_, std::move(value));
  }

  // s* renames dx^i to dq^i (s = t on this model).
  GradedElement s_pullback(const GradedElement& gamma) const {
    if (*gamma.frame() != *base_forms_)
      throw Error(ErrorKind::FrameMismatch, "s_pullback expects a base form");
    GradedElement out(forms_, gamma.degree());
    for (const auto& [t, c] : gamma.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) nt.push_back(base_forms_->label(slot).coordinate);
      out.add_component(std::move(nt), to_model(c));
    }
    return out;
  }

  GradedElement s_extract(const GradedElement& w) const {
    if (*w.frame() != *forms_)
      throw Error(ErrorKind::FrameMismatch, "s_extract expects a model form");
    GradedElement out(base_forms_, w.degree());
    for (const auto& [t, c] : w.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) {
        std::size_t i = forms_->label(slot).coordinate;
        if (i >= n_)
          throw Error(ErrorKind::NotInImage, "component carries a dp factor: not an s-pullback");
        nt.push_back(i);
      }
      if (fiber_degree(c) > 0)
        throw Error(ErrorKind::NotInImage, "coefficient depends on p: not an s-pullback");
      out.add_component(std::move(nt), to_base(c));
    }
    return out;
  }

  // Theta |> gamma, via s*(Theta |> gamma) = [Theta, s* gamma]_P.
  GradedElement action_on_base(const GradedElement& p, const GradedElement& theta,
                               const GradedElement& gamma) const {
    auto m = is_multiplicative_form(theta);
    if (!m.ok) throw Error(ErrorKind::NotMultiplicative, "action: " + m.witness);
    return s_extract(koszul_bracket(p, theta, s_pullback(gamma)));
  }

  // Invariant lift of a vertical section (coefficients in the base
  // coordinates): u^j e_j -> u^j(q) @p_j, constant along the fibers.
  GradedElement invariant_lift(const std::vector<PolyExpr>& u) const {
    if (u.size() != n_) throw Error(ErrorKind::NotVertical, "need one component per fiber direction");
    GradedElement out(vectors_, 1);
    for (std::size_t j = 0; j < n_; ++j)
      if (!u[j].is_zero()) out.add_component({n_ + j}, to_model(u[j]));
    return out;
  }

  // Lift of an element of Gamma(^* A) given over the vertical split frame
  // (pure bundle factors): e_j -> @p_j.
  GradedElement invariant_lift_multi(const GradedElement& u) const {
    GradedElement out(vectors_, u.degree());
    for (const auto& [t, c] : u.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) {
        const FrameLabel& l = u.frame()->label(slot);
        if (l.block != Block::Bundle)
          throw Error(ErrorKind::NotVertical, "element has a base factor");
        nt.push_back(n_ + l.coordinate);
      }
      out.add_component(std::move(nt), to_model(c));
    }
    return out;
  }

  // Inverse of the lift: requires pure-@p factors and p-independent
  // coefficients.
  GradedElement extract_vertical(const GradedElement& w) const {
    GradedElement out(vertical_->split_vectors(), w.degree());
    for (const auto& [t, c] : w.components()) {
      GradedElement::IndexTuple nt;
      for (auto slot : t) {
        std::size_t i = vectors_->label(slot).coordinate;
        if (i < n_) throw Error(ErrorKind::NotVertical, "component carries a base direction");
        nt.push_back(n_ + (i - n_));
      }
      if (fiber_degree(c) > 0)
        throw Error(ErrorKind::NotVertical, "coefficient depends on p");
      out.add_component(std::move(nt), to_base(c));
    }
    return out;
  }

  // Direct multiplicativity test on symbolic composable points (q, p', p''):
  // m*Theta - pr1*Theta - pr2*Theta = 0 as a form on the composition space.
  bool direct_multiplicative_form_check(const GradedElement& w) const {
    std::vector<std::string> coords;
    for (std::size_t i = 0; i < n_; ++i) coords.push_back("q" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n_; ++i) coords.push_back("s" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n_; ++i) coords.push_back("t" + std::to_string(i + 1));
    ChartPtr cc = make_chart(std::move(coords));
    FramePtr cf = Frame::covectors(cc);
    auto lift_coeff = [&](const PolyExpr& c, int which) {
      // which: 0 -> p = s + t, 1 -> p = s, 2 -> p = t
      PolyExpr out = PolyExpr::zero(cc);
      for (const auto& [e, coeff] : c.monomials()) {
        PolyExpr term = PolyExpr::constant(cc, coeff);
        for (std::size_t i = 0; i < n_; ++i)
          if (e[i] > 0) term = term * PolyExpr::coordinate(cc, cc->name(i)).pow(e[i]);
        for (std::size_t i = 0; i < n_; ++i) {
          if (e[n_ + i] == 0) continue;
          PolyExpr rep = PolyExpr::zero(cc);
          if (which == 0)
            rep = PolyExpr::coordinate(cc, "s" + std::to_string(i + 1)) +
                  PolyExpr::coordinate(cc, "t" + std::to_string(i + 1));
          else
            rep = PolyExpr::coordinate(cc, (which == 1 ? "s" : "t") + std::to_string(i + 1));
          term = term * rep.pow(e[n_ + i]);
        }
        out += term;
      }
      return out;
    };
    auto pull = [&](int which) {
      GradedElement out(cf, w.degree());
      for (const auto& [t, c] : w.components()) {
        GradedElement term = GradedElement::scalar(cf, lift_coeff(c, which));
        for (auto slot : t) {
          std::size_t i = forms_->label(slot).coordinate;
          GradedElement img(cf, 1);
          if (i < n_) {
            img = GradedElement::basis(cf, "dq" + std::to_string(i + 1));
          } else if (which == 0) {
            img = GradedElement::basis(cf, "ds" + std::to_string(i - n_ + 1)) +
                  GradedElement::basis(cf, "dt" + std::to_string(i - n_ + 1));
          } else {
            img = GradedElement::basis(cf, (which == 1 ? "ds" : "dt") + std::to_string(i - n_ + 1));
          }
          term = wedge(term, img);
          if (term.is_zero()) break;
        }
        out += term;
      }
      return out;
    };
    GradedElement residual = pull(0) - pull(1) - pull(2);
    return residual.is_zero();
  }

  // Random multiplicative k-form: p-linear dq-block plus p-free dq^(k-1)^dp
  // block, coefficient polynomials in q of the given degree.
  GradedElement random_multiplicative_form(Rng& rng, unsigned k, unsigned poly_degree) const {
    GradedElement out(forms_, k);
    for_each_increasing_tuple(n_, k, [&](const std::vector<std::size_t>& I) {
      for (std::size_t j = 0; j < n_; ++j) {
        PolyExpr c = random_q_poly(rng, poly_degree);
        if (c.is_zero()) continue;
        GradedElement::IndexTuple t(I.begin(), I.end());
        out.add_component(t, c * PolyExpr::coordinate(chart_, "p" + std::to_string(j + 1)));
      }
    });
    if (k >= 1) {
      for_each_increasing_tuple(n_, k - 1, [&](const std::vector<std::size_t>& K) {
        for (std::size_t a = 0; a < n_; ++a) {
          PolyExpr c = random_q_poly(rng, poly_degree);
          if (c.is_zero()) continue;
          GradedElement::IndexTuple t(K.begin(), K.end());
          t.push_back(n_ + a);
          out.add_component(t, c);
        }
      });
    }
    return out;
  }

  GradedElement random_multiplicative_multivector(Rng& rng, unsigned k, unsigned poly_degree) const {
    GradedElement form = random_multiplicative_form(rng, k, poly_degree);
    if (form.is_zero()) return GradedElement::zero(vectors_, k);
    return omega_sharp_inverse(form);
  }

  GradedElement random_base_form(Rng& rng, unsigned l, unsigned poly_degree) {
    Rng& r = rng;
    return r.element(base_forms_, l, poly_degree);
  }

  PolyExpr random_q_poly(Rng& rng, unsigned degree) const {
    PolyExpr base = rng.poly(base_chart_, degree);
    return to_model(base);
  }

  // Coefficient chart changes: base x-coordinates <-> model q-coordinates.
  PolyExpr to_model(const PolyExpr& base) const {
    PolyExpr out = PolyExpr::zero(chart_);
    for (const auto& [e, c] : base.monomials()) {
      std::vector<unsigned> exps(2 * n_, 0);
      for (std::size_t i = 0; i < n_; ++i) exps[i] = e[i];
      out += PolyExpr::monomial(chart_, exps, c);
    }
    return out;
  }

  PolyExpr to_base(const PolyExpr& model) const {
    PolyExpr out = PolyExpr::zero(base_chart_);
    for (const auto& [e, c] : model.monomials()) {
      std::vector<unsigned> exps(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        exps[i] = e[i];
        if (e[n_ + i] != 0)
          throw Error(ErrorKind::NotInImage, "coefficient depends on the fiber coordinates");
      }
      out += PolyExpr::monomial(base_chart_, exps, c);
    }
    return out;
  }

  unsigned fiber_degree(const PolyExpr& c) const {
    unsigned d = 0;
    for (const auto& [e, coeff] : c.monomials()) {
      unsigned t = 0;
      for (std::size_t i = 0; i < n_; ++i) t += e[n_ + i];
      d = std::max(d, t);
    }
    return d;
  }

 private:
  Membership check_normal_form(const GradedElement& w, bool fiber_factor_is_dp) const {
    for (const auto& [t, c] : w.components()) {
      std::size_t fiber_factors = 0;
      for (auto slot : t) {
        std::size_t i = w.frame()->label(slot).coordinate;
        bool is_fiber_slot = fiber_factor_is_dp ? (i >= n_) : (i < n_);
        if (is_fiber_slot) ++fiber_factors;
      }
      std::string where;
      for (auto slot : t) where += (where.empty() ? "" : "*") + w.frame()->label(slot).name;
      if (where.empty()) where = "scalar";
      if (fiber_factors >= 2)
        return {false, "component " + where + " has two fiber-type factors"};
      if (fiber_factors == 1) {
        if (fiber_degree(c) != 0)
          return {false, "component " + where + " must be p-independent, got " + c.str()};
      } else {
        for (const auto& [e, coeff] : c.monomials()) {
          unsigned pd = 0;
          for (std::size_t i = 0; i < n_; ++i) pd += e[n_ + i];
          if (pd != 1)
            return {false, "component " + where + " must be homogeneous linear in p, got " + c.str()};
        }
      }
    }
    return {true, ""};
  }

  GradedElement restrict_fiber(const GradedElement& w) const {
    std::map<std::string, PolyExpr> bindings;
    for (std::size_t i = 0; i < n_; ++i)
      bindings.emplace("p" + std::to_string(i + 1), PolyExpr::zero(chart_));
    GradedElement out(w.frame(), w.degree());
    for (const auto& [t, c] : w.components()) {
      PolyExpr cc = c.substitute(bindings);
      if (!cc.is_zero()) out.add_component(t, std::move(cc));
    }
    return out;
  }

  GradedElement map_labels(const GradedElement& w, const FramePtr& target,
                           const std::function<GradedElement(const FrameLabel&)>& image) const {
    GradedElement out(target, w.degree());
    for (const auto& [t, c] : w.components()) {
      GradedElement term = GradedElement::scalar(target, c);
      for (auto slot : t) {
        term = wedge(term, image(w.frame()->label(slot)));
        if (term.is_zero()) break;
      }
      out += term;
    }
    return out;
  }

  std::size_t n_;
  ChartPtr chart_, base_chart_;
  FramePtr forms_, vectors_, base_forms_, base_vectors_;
  AlgebroidPtr vertical_;
};

}  // namespace gpdcalc
