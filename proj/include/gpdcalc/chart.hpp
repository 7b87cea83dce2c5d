#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "gpdcalc/errors.hpp"

namespace gpdcalc {

// Ordered list of distinct coordinate names. The order is meaningful: it fixes
// the monomial order, frame order and all canonical printing downstream.
class Chart {
 public:
  explicit Chart(std::vector<std::string> coordinates) : coords_(std::move(coordinates)) {
    if (coords_.empty()) throw Error(ErrorKind::Syntax, "chart needs at least one coordinate");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i].empty())
        throw Error(ErrorKind::Syntax, "chart coordinate names must be nonempty");
      for (std::size_t j = i + 1; j < coords_.size(); ++j)
        if (coords_[i] == coords_[j])
          throw Error(ErrorKind::Syntax, "duplicate chart coordinate '" + coords_[i] + "'");
    }
  }

  std::size_t size() const { return coords_.size(); }
  const std::string& name(std::size_t i) const { return coords_[i]; }
  const std::vector<std::string>& names() const { return coords_; }

  std::size_t index(const std::string& name) const {
    auto it = std::find(coords_.begin(), coords_.end(), name);
    if (it == coords_.end()) throw unknown_coordinate(name);
    return static_cast<std::size_t>(it - coords_.begin());
  }

  bool has(const std::string& name) const {
    return std::find(coords_.begin(), coords_.end(), name) != coords_.end();
  }

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  std::vector<std::string> coords_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> coordinates) {
  return std::make_shared<const Chart>(std::move(coordinates));
}

}  // namespace gpdcalc
