#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "hj/errors.hpp"

namespace hj {

/// A permutation of {1..n} in one-line notation, stored 0-based.
/// Composition is right-to-left: (s * t)(i) = s(t(i)).
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(std::size_t n)
  {
    Permutation p;
    p.image_.resize(n);
    std::iota(p.image_.begin(), p.image_.end(), 0u);
    return p;
  }

  /// From 1-based one-line notation; throws ParseError unless a bijection.
  static Permutation from_one_line(const std::vector<unsigned>& one_based)
  {
    Permutation p;
    p.image_.reserve(one_based.size());
    std::vector<bool> seen(one_based.size(), false);
    for (unsigned v : one_based) {
      if (v < 1 || v > one_based.size() || seen[v - 1])
        throw ParseError("not a permutation of 1.." + std::to_string(one_based.size()));
      seen[v - 1] = true;
      p.image_.push_back(v - 1);
    }
    return p;
  }

  std::size_t degree() const { return image_.size(); }
  unsigned operator[](std::size_t i) const { return image_[i]; }

  Permutation operator*(const Permutation& rhs) const
  {
    Permutation out;
    out.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
      out.image_[i] = image_[rhs.image_[i]];
    return out;
  }

  Permutation inverse() const
  {
    Permutation out;
    out.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
      out.image_[image_[i]] = static_cast<unsigned>(i);
    return out;
  }

  std::size_t cycle_count() const
  {
    std::vector<bool> visited(image_.size(), false);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < image_.size(); ++start) {
      if (visited[start])
        continue;
      ++cycles;
      for (std::size_t i = start; !visited[i]; i = image_[i])
        visited[i] = true;
    }
    return cycles;
  }

  std::size_t fixed_point_count() const
  {
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < image_.size(); ++i)
      fixed += image_[i] == i;
    return fixed;
  }

  std::vector<unsigned> one_line() const
  {
    std::vector<unsigned> out(image_);
    for (auto& v : out)
      ++v;
    return out;
  }

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<unsigned> image_;
};

} // namespace hj
