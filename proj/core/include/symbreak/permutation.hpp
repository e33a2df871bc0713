#pragma once

#include <compare>
#include <vector>

#include "symbreak/graph.hpp"

namespace symbreak {

/// Bijection on vertex ids 0..n-1, stored as its image array.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> image) : img_(std::move(image)) {
    std::uint64_t seen = 0;
    for (int w : img_) {
      if (w < 0 || w >= static_cast<int>(img_.size()) || ((seen >> w) & 1u))
        throw Error("permutation image is not a bijection");
      seen |= std::uint64_t{1} << w;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int v) const { return img_[static_cast<size_t>(v)]; }
  const std::vector<int>& image() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[static_cast<size_t>(i)] != i) return false;
    return true;
  }

  /// Composition acting as (this_then_after): result(v) = after(this(v)).
  Permutation then(const Permutation& after) const {
    std::vector<int> img(img_.size());
    for (size_t v = 0; v < img_.size(); ++v) img[v] = after(img_[v]);
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(img_.size());
    for (size_t v = 0; v < img_.size(); ++v) img[static_cast<size_t>(img_[v])] = static_cast<int>(v);
    return Permutation(std::move(img));
  }

  VertexSet map_set(VertexSet s) const {
    std::uint64_t out = 0;
    for (std::uint64_t b = s.bits(); b; b &= b - 1) out |= std::uint64_t{1} << img_[static_cast<size_t>(__builtin_ctzll(b))];
    return VertexSet(out);
  }

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> img_;
};

}  // namespace symbreak
