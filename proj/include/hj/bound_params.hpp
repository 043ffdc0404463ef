#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hj/errors.hpp"
#include "hj/rational.hpp"
#include "hj/semigroup.hpp"

namespace hj {

/// Block structure (k, n_1..n_k, t_1..t_k, s) of the generalized inequality.
/// T is Rational for exact scenarios and double for sampled real ones.
template <class T>
class BoundParams {
public:
  BoundParams() = default;

  BoundParams(std::vector<std::size_t> n_vec, std::vector<T> t_vec, T s)
    : n_vec_{std::move(n_vec)}, t_vec_{std::move(t_vec)}, s_{std::move(s)}
  {
    if (n_vec_.empty())
      throw HypothesisViolated("k must be at least 1");
    if (n_vec_.size() != t_vec_.size())
      throw HypothesisViolated("n_vec and t_vec must have the same length k");
    for (auto ni : n_vec_)
      if (ni < 1)
        throw HypothesisViolated("every n_i must be a positive integer");
    for (const auto& ti : t_vec_)
      if (ti < 0)
        throw HypothesisViolated("every t_i must be nonnegative");
    if (s_ < 0)
      throw HypothesisViolated("s must be nonnegative");
  }

  std::size_t k() const { return n_vec_.size(); }
  const std::vector<std::size_t>& n_vec() const { return n_vec_; }
  const std::vector<T>& t_vec() const { return t_vec_; }
  std::size_t n(std::size_t i) const { return n_vec_[i]; }
  const T& t(std::size_t i) const { return t_vec_[i]; }
  const T& s() const { return s_; }

  std::size_t K() const
  {
    std::size_t sum = 0;
    for (auto ni : n_vec_)
      sum += ni;
    return sum;
  }

  /// Block offset s_i = n_1 + ... + n_{i-1} (0-based block index).
  std::size_t offset(std::size_t i) const
  {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < i; ++j)
      sum += n_vec_[j];
    return sum;
  }

  /// t'_l for 1 <= l <= K: the t_i of the block containing l.
  const T& schedule(std::size_t l) const
  {
    std::size_t upper = 0;
    for (std::size_t i = 0; i < n_vec_.size(); ++i) {
      upper += n_vec_[i];
      if (l <= upper)
        return t_vec_[i];
    }
    throw HypothesisViolated("schedule index " + std::to_string(l) + " exceeds K");
  }

  /// (2 n_1 - 1) t_1 + 2 sum_{i>=2} n_i t_i + (K - 1) s
  T zeta() const
  {
    T z = T(static_cast<long>(2 * n_vec_[0] - 1)) * t_vec_[0];
    for (std::size_t i = 1; i < n_vec_.size(); ++i)
      z += T(static_cast<long>(2 * n_vec_[i])) * t_vec_[i];
    z += T(static_cast<long>(K() - 1)) * s_;
    return z;
  }

  /// Throws unless sum(n_i) <= n + 1.
  void require_applicable(std::size_t n) const
  {
    if (K() > n + 1)
      throw HypothesisViolated("sum of n_i = " + std::to_string(K()) + " exceeds n + 1 = " + std::to_string(n + 1));
  }

private:
  std::vector<std::size_t> n_vec_;
  std::vector<T> t_vec_;
  T s_{};
};

template <class T>
T zeta(const BoundParams<T>& p)
{
  return p.zeta();
}

/// k = 2, n = (1, 1), t = (t, t): recovers P(U > 3t + s) <= P(U > t)^2 + P(M > s).
template <class T>
BoundParams<T> specialize_lt(const T& t, const T& s)
{
  return BoundParams<T>{{1, 1}, {t, t}, s};
}

/// k = 1, n_1 = K, t_1 = t: the threshold becomes (2K - 1) t + (K - 1) s.
template <class T>
BoundParams<T> specialize_hm(std::size_t K, const T& t, const T& s)
{
  return BoundParams<T>{{K}, {t}, s};
}

} // namespace hj
