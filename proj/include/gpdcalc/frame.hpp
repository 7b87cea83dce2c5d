#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpdcalc/chart.hpp"
#include "gpdcalc/errors.hpp"

namespace gpdcalc {

enum class Block { Base, Bundle };
enum class Variance { Vector, Covector };

struct FrameLabel {
  std::string name;
  Block block = Block::Base;
  Variance variance = Variance::Covector;
  // For base labels: the chart coordinate this label differentiates /
  // pairs with. Bundle labels carry their frame index instead.
  std::size_t coordinate = 0;

  friend bool operator==(const FrameLabel& a, const FrameLabel& b) {
    return a.name == b.name && a.block == b.block && a.variance == b.variance &&
           a.coordinate == b.coordinate;
  }
};

// An ordered frame of a split bundle over a chart. Standard shapes:
//   covectors(chart)            dx per coordinate                 (forms)
//   vectors(chart)              @x per coordinate                 (multivectors)
//   split_vectors(chart, r)     @x..., e1..er      (TM (+) A)
//   split_covectors(chart, r)   E1..Er, dx...      (A* (+) T*M)
// Base vector labels are named "@"+coordinate, base covectors "d"+coordinate,
// bundle vectors "e<i>", bundle covectors "E<i>".
class Frame {
 public:
  Frame(ChartPtr chart, std::vector<FrameLabel> labels)
      : chart_(std::move(chart)), labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i].name == labels_[j].name)
          throw Error(ErrorKind::FrameMismatch, "duplicate frame label '" + labels_[i].name + "'");
  }

  static std::shared_ptr<const Frame> covectors(ChartPtr chart) {
    std::vector<FrameLabel> ls;
    for (std::size_t i = 0; i < chart->size(); ++i)
      ls.push_back({"d" + chart->name(i), Block::Base, Variance::Covector, i});
    return std::make_shared<const Frame>(chart, std::move(ls));
  }

  static std::shared_ptr<const Frame> vectors(ChartPtr chart) {
    std::vector<FrameLabel> ls;
    for (std::size_t i = 0; i < chart->size(); ++i)
      ls.push_back({"@" + chart->name(i), Block::Base, Variance::Vector, i});
    return std::make_shared<const Frame>(chart, std::move(ls));
  }

  // TM first, then the bundle block: elements of ^k(TM (+) A).
  static std::shared_ptr<const Frame> split_vectors(ChartPtr chart, std::size_t rank) {
    std::vector<FrameLabel> ls;
    for (std::size_t i = 0; i < chart->size(); ++i)
      ls.push_back({"@" + chart->name(i), Block::Base, Variance::Vector, i});
    for (std::size_t a = 0; a < rank; ++a)
      ls.push_back({"e" + std::to_string(a + 1), Block::Bundle, Variance::Vector, a});
    return std::make_shared<const Frame>(chart, std::move(ls));
  }

  // Bundle block first, then T*M: elements of ^i A* (x) ^j T*M print in the
  // E... dx... order.
  static std::shared_ptr<const Frame> split_covectors(ChartPtr chart, std::size_t rank) {
    std::vector<FrameLabel> ls;
    for (std::size_t a = 0; a < rank; ++a)
      ls.push_back({"E" + std::to_string(a + 1), Block::Bundle, Variance::Covector, a});
    for (std::size_t i = 0; i < chart->size(); ++i)
      ls.push_back({"d" + chart->name(i), Block::Base, Variance::Covector, i});
    return std::make_shared<const Frame>(chart, std::move(ls));
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return labels_.size(); }
  const FrameLabel& label(std::size_t i) const { return labels_[i]; }
  const std::vector<FrameLabel>& labels() const { return labels_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::FrameMismatch, "unknown frame label '" + name + "'");
  }

  bool pure_base() const {
    for (const auto& l : labels_)
      if (l.block != Block::Base) return false;
    return true;
  }

  bool pure_variance(Variance v) const {
    for (const auto& l : labels_)
      if (l.variance != v) return false;
    return true;
  }

  std::size_t bundle_rank() const {
    std::size_t r = 0;
    for (const auto& l : labels_)
      if (l.block == Block::Bundle) ++r;
    return r;
  }

  // Dual label name under @x<->dx, e<i><->E<i>.
  static std::string dual_name(const FrameLabel& l) {
    if (l.block == Block::Base)
      return (l.variance == Variance::Vector ? "d" : "@") + l.name.substr(1);
    std::string idx = l.name.substr(1);
    return (l.variance == Variance::Vector ? "E" : "e") + idx;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return *a.chart_ == *b.chart_ && a.labels_ == b.labels_;
  }
  friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

 private:
  ChartPtr chart_;
  std::vector<FrameLabel> labels_;
};

using FramePtr = std::shared_ptr<const Frame>;

}  // namespace gpdcalc
