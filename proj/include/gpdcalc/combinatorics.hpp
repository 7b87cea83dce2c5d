#pragma once

#include <cstddef>
#include <vector>

namespace gpdcalc {

// Visit all strictly increasing k-tuples drawn from {0, ..., n-1}.
template <typename Fn>
void for_each_increasing_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] < n - (k - i)) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
    if (k == 0) return;
  }
}

// Visit all k-tuples (with repetition, ordered) from {0, ..., n-1}.
template <typename Fn>
void for_each_ordered_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++idx[i] < n) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace gpdcalc
