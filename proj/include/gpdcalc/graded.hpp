#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpdcalc/frame.hpp"
#include "gpdcalc/poly.hpp"

namespace gpdcalc {

// Degree-k antisymmetric tensor over a frame: map from strictly increasing
// k-tuples of frame positions to polynomial coefficients, no zero entries.
class GradedElement {
 public:
  using IndexTuple = std::vector<std::size_t>;
  using Components = std::map<IndexTuple, PolyExpr>;

  GradedElement(FramePtr frame, unsigned degree) : frame_(std::move(frame)), degree_(degree) {}

  static GradedElement zero(FramePtr frame, unsigned degree) {
    return GradedElement(std::move(frame), degree);
  }

  static GradedElement scalar(FramePtr frame, PolyExpr f) {
    GradedElement g(std::move(frame), 0);
    if (!f.is_zero()) g.components_.emplace(IndexTuple{}, std::move(f));
    return g;
  }

  static GradedElement basis(FramePtr frame, const std::string& label) {
    GradedElement g(frame, 1);
    g.components_.emplace(IndexTuple{frame->index(label)},
                          PolyExpr::constant(frame->chart(), Rational(1)));
    return g;
  }

  static GradedElement from_component(FramePtr frame, const std::vector<std::string>& labels,
                                      PolyExpr coeff) {
    GradedElement g(frame, static_cast<unsigned>(labels.size()));
    IndexTuple t;
    for (const auto& l : labels) t.push_back(frame->index(l));
    int sign = sort_tuple(t);
    if (sign == 0 || coeff.is_zero()) return g;
    if (sign < 0) coeff = -coeff;
    g.components_.emplace(std::move(t), std::move(coeff));
    return g;
  }

  const FramePtr& frame() const { return frame_; }
  unsigned degree() const { return degree_; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  PolyExpr scalar_value() const {
    if (degree_ != 0) throw Error(ErrorKind::DegreeError, "scalar_value needs degree 0");
    if (components_.empty()) return PolyExpr::zero(frame_->chart());
    return components_.begin()->second;
  }

  void add_component(IndexTuple t, PolyExpr coeff) {
    rescale_add(std::move(t), std::move(coeff));
  }

  GradedElement operator-() const {
    GradedElement r(frame_, degree_);
    for (const auto& [t, c] : components_) r.components_.emplace(t, -c);
    return r;
  }

  // The zero element is degree-polymorphic under addition: summing with an
  // empty element never raises a degree error.
  GradedElement& operator+=(const GradedElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    require_compatible(o);
    for (const auto& [t, c] : o.components_) rescale_add(t, c);
    return *this;
  }
  GradedElement& operator-=(const GradedElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    require_compatible(o);
    for (const auto& [t, c] : o.components_) rescale_add(t, -c);
    return *this;
  }
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }

  friend GradedElement operator*(const GradedElement& a, const PolyExpr& f) {
    GradedElement r(a.frame_, a.degree_);
    if (f.is_zero()) return r;
    for (const auto& [t, c] : a.components_) r.rescale_add(t, c * f);
    return r;
  }
  friend GradedElement operator*(const PolyExpr& f, const GradedElement& a) { return a * f; }
  friend GradedElement operator*(const GradedElement& a, const Rational& c) {
    GradedElement r(a.frame_, a.degree_);
    if (c.is_zero()) return r;
    for (const auto& [t, coeff] : a.components_) r.components_.emplace(t, coeff * c);
    return r;
  }
  friend GradedElement operator*(const Rational& c, const GradedElement& a) { return a * c; }

  friend bool operator==(const GradedElement& a, const GradedElement& b) {
    if (*a.frame_ != *b.frame_) return false;
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.components_ == b.components_;
  }
  friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }

  // Exterior product. Graded-commutative, associative.
  friend GradedElement wedge(const GradedElement& a, const GradedElement& b) {
    a.require_same_frame(b);
    GradedElement r(a.frame_, a.degree_ + b.degree_);
    for (const auto& [ta, ca] : a.components_)
      for (const auto& [tb, cb] : b.components_) {
        IndexTuple merged;
        int sign = merge_tuples(ta, tb, merged);
        if (sign == 0) continue;
        PolyExpr c = ca * cb;
        if (sign < 0) c = -c;
        r.rescale_add(std::move(merged), std::move(c));
      }
    return r;
  }

  // Number of bundle-block factors in a component tuple.
  std::size_t bundle_factors(const IndexTuple& t) const {
    std::size_t n = 0;
    for (auto i : t)
      if (frame_->label(i).block == Block::Bundle) ++n;
    return n;
  }

  // Projection onto the sub-block whose components carry exactly
  // `bundle_count` bundle factors.
  GradedElement block_project(std::size_t bundle_count) const {
    GradedElement r(frame_, degree_);
    for (const auto& [t, c] : components_)
      if (bundle_factors(t) == bundle_count) r.components_.emplace(t, c);
    return r;
  }

  std::string str() const {
    if (components_.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : components_) {
      std::string labels;
      for (auto i : t) {
        if (!labels.empty()) labels += "*";
        labels += frame_->label(i).name;
      }
      bool negate = false;
      std::string coeff;
      if (c.monomials().size() == 1) {
        PolyExpr a = c;
        if (c.monomials().begin()->second.is_negative()) {
          negate = true;
          a = -c;
        }
        coeff = a.str();
        if (labels.empty())
          ;  // plain scalar
        else if (coeff == "1")
          coeff.clear();
      } else {
        coeff = "(" + c.str() + ")";
      }
      if (out.empty())
        out += negate ? "-" : "";
      else
        out += negate ? " - " : " + ";
      if (coeff.empty())
        out += labels;
      else if (labels.empty())
        out += coeff;
      else
        out += coeff + "*" + labels;
    }
    return out;
  }

  // Sorts into strictly increasing order; returns the permutation sign, or 0
  // if an index repeats.
  static int sort_tuple(IndexTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
        if (t[j - 1] == t[j]) return 0;
        std::swap(t[j - 1], t[j]);
        sign = -sign;
      }
    return sign;
  }

  // Merge of two strictly increasing tuples with inversion sign; 0 on overlap.
  static int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return 0;
      if (a[i] < b[j]) {
        out.push_back(a[i++]);
      } else {
        if ((a.size() - i) % 2 == 1) sign = -sign;
        out.push_back(b[j++]);
      }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
  }

 private:
  void require_same_frame(const GradedElement& o) const {
    if (*frame_ != *o.frame_)
      throw Error(ErrorKind::FrameMismatch, "graded operands live over different frames");
  }
  void require_compatible(const GradedElement& o) const {
    require_same_frame(o);
    if (degree_ != o.degree_)
      throw Error(ErrorKind::DegreeError, "graded sum of distinct degrees");
  }

  void rescale_add(IndexTuple t, PolyExpr c) {
    if (c.is_zero()) return;
    auto it = components_.find(t);
    if (it == components_.end()) {
      components_.emplace(std::move(t), std::move(c));
      return;
    }
    it->second += c;
    if (it->second.is_zero()) components_.erase(it);
  }

  FramePtr frame_;
  unsigned degree_;
  Components components_;
};

namespace detail {

inline bool frames_dual(const Frame& fv, const Frame& fc) {
  if (*fv.chart() != *fc.chart() || fv.size() != fc.size()) return false;
  for (std::size_t i = 0; i < fv.size(); ++i)
    if (!fc.find(Frame::dual_name(fv.label(i)))) return false;
  return true;
}

}  // namespace detail

// Signed contraction of a degree-1 element v (over the dual frame) into w:
// the dual of v's label fills the first slot of w.
inline GradedElement interior_product(const GradedElement& v, const GradedElement& w) {
  if (v.degree() != 1) throw Error(ErrorKind::DegreeError, "interior product needs a degree-1 argument");
  if (w.degree() == 0) throw Error(ErrorKind::DegreeError, "cannot contract into degree 0");
  if (!detail::frames_dual(*v.frame(), *w.frame()))
    throw Error(ErrorKind::FrameMismatch, "interior product needs dual frames");
  GradedElement r(w.frame(), w.degree() - 1);
  for (const auto& [tv, cv] : v.components()) {
    std::size_t dual_pos = w.frame()->index(Frame::dual_name(v.frame()->label(tv[0])));
    for (const auto& [tw, cw] : w.components()) {
      auto it = std::find(tw.begin(), tw.end(), dual_pos);
      if (it == tw.end()) continue;
      std::size_t slot = static_cast<std::size_t>(it - tw.begin());
      GradedElement::IndexTuple rest;
      rest.reserve(tw.size() - 1);
      for (auto x : tw)
        if (x != dual_pos) rest.push_back(x);
      PolyExpr c = cv * cw;
      if (slot % 2 == 1) c = -c;
      r.add_component(std::move(rest), std::move(c));
    }
  }
  return r;
}

// Contraction by a decomposable-by-components multivector V = v1 ^ ... ^ vk
// over the dual frame, with the rightmost factor applied first:
// iota_V = iota_{v1} o ... o iota_{vk}. In particular, for a bivector P
// over the vector frame, iota_P(dq ^ dp) = -P(dq, dp).
inline GradedElement interior_by_power(const GradedElement& v, const GradedElement& w) {
  if (v.degree() == 0 || w.degree() < v.degree())
    return GradedElement::zero(w.frame(), w.degree() < v.degree() ? 0 : w.degree());
  GradedElement r = GradedElement::zero(w.frame(), w.degree() - v.degree());
  for (const auto& [tv, cv] : v.components()) {
    GradedElement acc = w;
    for (auto it = tv.rbegin(); it != tv.rend(); ++it) {
      GradedElement unit = GradedElement::basis(v.frame(), v.frame()->label(*it).name);
      acc = interior_product(unit, acc);
      if (acc.is_zero()) break;
    }
    r += acc * cv;
  }
  return r;
}

// Full evaluation w(v1, ..., vk) as a polynomial: v1 fills the first slot.
inline PolyExpr evaluate(const GradedElement& w, const std::vector<GradedElement>& args) {
  if (args.size() != w.degree())
    throw Error(ErrorKind::DegreeError, "evaluation needs exactly degree-many arguments");
  GradedElement acc = w;
  for (const auto& v : args) acc = interior_product(v, acc);
  return acc.scalar_value();
}

}  // namespace gpdcalc
