#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hj/errors.hpp"
#include "hj/permutation.hpp"
#include "hj/rational.hpp"
#include "hj/rng.hpp"
#include "hj/semigroup.hpp"

namespace hj {

namespace detail {

inline std::int64_t parse_int(std::string_view text)
{
  std::string s{text};
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + s + "'");
  }
  if (used != s.size())
    throw ParseError("malformed integer '" + s + "'");
  return v;
}

inline std::vector<std::string> split_list(std::string_view text)
{
  std::string s{text};
  if (!s.empty() && s.front() == '[' && s.back() == ']')
    s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
  }
  return parts;
}

inline Rational abs_diff(std::int64_t a, std::int64_t b)
{
  return Rational{static_cast<long>(a > b ? a - b : b - a)};
}

} // namespace detail

/// (Z, +) with d(a, b) = |a - b|.
class IntLine {
public:
  using element_type = std::int64_t;
  using distance_type = Rational;
  static constexpr bool exact = true;

  element_type op(element_type a, element_type b) const { return a + b; }
  distance_type dist(element_type a, element_type b) const { return detail::abs_diff(a, b); }
  bool contains(element_type) const { return true; }
  element_type parse(std::string_view text) const { return detail::parse_int(text); }
  std::string format(element_type a) const { return std::to_string(a); }
  element_type random_element(CounterRng& rng) const { return rng.uniform_int(-50, 50); }
  std::vector<element_type> probe_elements() const { return {0, 1, -1, 2, -2, 3}; }
  std::string name() const { return "IntLine"; }
  bool has_identity() const { return true; }
};

/// (N+, +) with d(a, b) = |a - b|; a semigroup without identity.
class PosInts {
public:
  using element_type = std::int64_t;
  using distance_type = Rational;
  static constexpr bool exact = true;

  element_type op(element_type a, element_type b) const { return a + b; }
  distance_type dist(element_type a, element_type b) const { return detail::abs_diff(a, b); }
  bool contains(element_type a) const { return a >= 1; }
  element_type parse(std::string_view text) const
  {
    auto v = detail::parse_int(text);
    if (v < 1)
      throw ParseError("PosInts element must be >= 1");
    return v;
  }
  std::string format(element_type a) const { return std::to_string(a); }
  element_type random_element(CounterRng& rng) const { return rng.uniform_int(1, 100); }
  std::vector<element_type> probe_elements() const { return {1, 2, 3, 4}; }
  std::string name() const { return "PosInts"; }
  bool has_identity() const { return false; }
};

/// Z/mZ with the circular distance min(|a-b|, m-|a-b|).
class Cyclic {
public:
  using element_type = std::int64_t;
  using distance_type = Rational;
  static constexpr bool exact = true;

  explicit Cyclic(std::int64_t m) : m_{m}
  {
    if (m < 1)
      throw ParseError("Cyclic modulus must be >= 1");
  }

  std::int64_t modulus() const { return m_; }
  element_type op(element_type a, element_type b) const { return (a + b) % m_; }
  distance_type dist(element_type a, element_type b) const
  {
    std::int64_t d = a > b ? a - b : b - a;
    return Rational{static_cast<long>(std::min(d, m_ - d))};
  }
  bool contains(element_type a) const { return a >= 0 && a < m_; }
  element_type parse(std::string_view text) const
  {
    auto v = detail::parse_int(text);
    if (!contains(v))
      throw ParseError("residue out of range for " + name());
    return v;
  }
  std::string format(element_type a) const { return std::to_string(a); }
  element_type random_element(CounterRng& rng) const { return rng.uniform_int(0, m_ - 1); }
  std::vector<element_type> probe_elements() const
  {
    std::vector<element_type> out;
    for (std::int64_t a = 0; a < std::min<std::int64_t>(m_, 5); ++a)
      out.push_back(a);
    return out;
  }
  std::string name() const { return "Cyclic(" + std::to_string(m_) + ")"; }
  bool has_identity() const { return true; }

private:
  std::int64_t m_;
};

/// Bit strings of length m under XOR with Hamming distance. With
/// m = |V|(|V|-1)/2 this is the group of labelled graphs on V (symmetric
/// difference of edge sets), a 2-torsion group.
class HammingCube {
public:
  struct Bits {
    std::uint64_t mask = 0;
    std::uint32_t width = 0;
    auto operator<=>(const Bits&) const = default;
  };
  using element_type = Bits;
  using distance_type = Rational;
  static constexpr bool exact = true;

  explicit HammingCube(std::uint32_t m) : m_{m}
  {
    if (m < 1 || m > 64)
      throw ParseError("HammingCube length must be in 1..64");
  }

  static HammingCube labelled_graphs(std::uint32_t vertices)
  {
    return HammingCube{vertices * (vertices - 1) / 2};
  }

  std::uint32_t length() const { return m_; }
  element_type op(const Bits& a, const Bits& b) const { return {a.mask ^ b.mask, m_}; }
  distance_type dist(const Bits& a, const Bits& b) const
  {
    return Rational{static_cast<long>(std::popcount(a.mask ^ b.mask))};
  }
  bool contains(const Bits& a) const
  {
    return a.width == m_ && (m_ == 64 || (a.mask >> m_) == 0);
  }
  // Character i of the string is bit i.
  element_type parse(std::string_view text) const
  {
    if (text.size() != m_)
      throw ParseError("bit string length must be " + std::to_string(m_));
    Bits b{0, m_};
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1')
        b.mask |= std::uint64_t{1} << i;
      else if (text[i] != '0')
        throw ParseError("bit string may only contain 0 and 1");
    }
    return b;
  }
  std::string format(const Bits& a) const
  {
    std::string s(a.width, '0');
    for (std::uint32_t i = 0; i < a.width; ++i)
      if ((a.mask >> i) & 1)
        s[i] = '1';
    return s;
  }
  element_type random_element(CounterRng& rng) const
  {
    std::uint64_t mask = rng.next();
    if (m_ < 64)
      mask &= (std::uint64_t{1} << m_) - 1;
    return {mask, m_};
  }
  std::vector<element_type> probe_elements() const
  {
    std::vector<element_type> out;
    const std::uint64_t full = m_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1;
    for (std::uint64_t v : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3}, full})
      out.push_back({v & full, m_});
    return out;
  }
  std::string name() const { return "HammingCube(" + std::to_string(m_) + ")"; }
  bool has_identity() const { return true; }

private:
  std::uint32_t m_;
};

namespace detail {

class PermutationFamily {
public:
  using element_type = Permutation;
  using distance_type = Rational;
  static constexpr bool exact = true;

  explicit PermutationFamily(std::size_t n) : n_{n}
  {
    if (n < 1 || n > 20)
      throw ParseError("permutation degree must be in 1..20");
  }

  std::size_t degree() const { return n_; }
  element_type op(const Permutation& a, const Permutation& b) const { return a * b; }
  bool contains(const Permutation& a) const { return a.degree() == n_; }
  element_type parse(std::string_view text) const
  {
    std::vector<unsigned> line;
    for (const auto& part : split_list(text)) {
      auto v = parse_int(part);
      if (v < 1)
        throw ParseError("permutation entries are 1-based");
      line.push_back(static_cast<unsigned>(v));
    }
    if (line.size() != n_)
      throw ParseError("permutation must have " + std::to_string(n_) + " entries");
    return Permutation::from_one_line(line);
  }
  std::string format(const Permutation& a) const
  {
    std::string s;
    for (unsigned v : a.one_line()) {
      if (!s.empty())
        s += ',';
      s += std::to_string(v);
    }
    return s;
  }
  // Fisher-Yates on the counter generator.
  element_type random_element(CounterRng& rng) const
  {
    std::vector<unsigned> line(n_);
    for (std::size_t i = 0; i < n_; ++i)
      line[i] = static_cast<unsigned>(i + 1);
    for (std::size_t i = n_; i > 1; --i)
      std::swap(line[i - 1], line[rng.below(i)]);
    return Permutation::from_one_line(line);
  }
  std::vector<element_type> probe_elements() const
  {
    std::vector<element_type> out{Permutation::identity(n_)};
    std::vector<unsigned> line(n_);
    for (std::size_t i = 0; i < n_; ++i)
      line[i] = static_cast<unsigned>(i + 1);
    if (n_ >= 2) {
      auto t = line;
      std::swap(t[0], t[1]);
      out.push_back(Permutation::from_one_line(t));
    }
    if (n_ >= 3) {
      auto c = line;
      std::rotate(c.begin(), c.begin() + 1, c.begin() + 3);
      out.push_back(Permutation::from_one_line(c));
    }
    auto r = line;
    std::reverse(r.begin(), r.end());
    out.push_back(Permutation::from_one_line(r));
    return out;
  }

private:
  std::size_t n_;
};

} // namespace detail

/// S_n with the Cayley distance: n minus the number of cycles of s t^-1.
class SymCayley : public detail::PermutationFamily {
public:
  using PermutationFamily::PermutationFamily;
  distance_type dist(const Permutation& a, const Permutation& b) const
  {
    return Rational{static_cast<long>(degree() - (a * b.inverse()).cycle_count())};
  }
  std::string name() const { return "SymCayley(" + std::to_string(degree()) + ")"; }
  bool has_identity() const { return true; }
};

/// S_n with the Hamming distance #{i : s(i) != t(i)}.
class SymHamming : public detail::PermutationFamily {
public:
  using PermutationFamily::PermutationFamily;
  distance_type dist(const Permutation& a, const Permutation& b) const
  {
    long d = 0;
    for (std::size_t i = 0; i < degree(); ++i)
      d += a[i] != b[i];
    return Rational{d};
  }
  std::string name() const { return "SymHamming(" + std::to_string(degree()) + ")"; }
  bool has_identity() const { return true; }
};

/// R^d with vector addition and the Euclidean norm.
class Euclidean {
public:
  using element_type = std::vector<double>;
  using distance_type = double;
  static constexpr bool exact = false;

  explicit Euclidean(std::size_t d) : d_{d}
  {
    if (d < 1)
      throw ParseError("Euclidean dimension must be >= 1");
  }

  std::size_t dimension() const { return d_; }
  element_type op(const element_type& a, const element_type& b) const
  {
    element_type out(d_);
    for (std::size_t i = 0; i < d_; ++i)
      out[i] = a[i] + b[i];
    return out;
  }
  distance_type dist(const element_type& a, const element_type& b) const
  {
    double sq = 0;
    for (std::size_t i = 0; i < d_; ++i)
      sq += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sq);
  }
  bool contains(const element_type& a) const
  {
    if (a.size() != d_)
      return false;
    for (double x : a)
      if (!std::isfinite(x))
        return false;
    return true;
  }
  element_type parse(std::string_view text) const
  {
    element_type out;
    for (const auto& part : detail::split_list(text))
      out.push_back(scalar_from_string<double>(part));
    if (out.size() != d_)
      throw ParseError("vector must have " + std::to_string(d_) + " coordinates");
    return out;
  }
  std::string format(const element_type& a) const
  {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i)
      s += (i ? "," : "") + scalar_to_string(a[i]);
    return s + "]";
  }
  element_type random_element(CounterRng& rng) const
  {
    element_type out(d_);
    for (auto& x : out)
      x = -10.0 + 20.0 * rng.uniform01();
    return out;
  }
  std::vector<element_type> probe_elements() const
  {
    element_type zero(d_, 0.0), e1(d_, 0.0), neg(d_, 0.0), ones(d_, 1.0);
    e1[0] = 1.0;
    neg[0] = -2.5;
    return {zero, e1, neg, ones};
  }
  std::string name() const { return "Euclidean(" + std::to_string(d_) + ")"; }
  bool has_identity() const { return true; }

private:
  std::size_t d_;
};

/// Angles in [0, 2 pi) under addition mod 2 pi with arc-length distance.
class Circle {
public:
  using element_type = double;
  using distance_type = double;
  static constexpr bool exact = false;
  static constexpr double two_pi = 2.0 * std::numbers::pi;

  static double reduce(double a)
  {
    double r = std::fmod(a, two_pi);
    if (r < 0)
      r += two_pi;
    return r >= two_pi ? 0.0 : r;
  }

  element_type op(double a, double b) const { return reduce(a + b); }
  distance_type dist(double a, double b) const
  {
    double d = std::abs(a - b);
    return std::min(d, two_pi - d);
  }
  bool contains(double a) const { return std::isfinite(a) && a >= 0 && a < two_pi; }
  element_type parse(std::string_view text) const { return reduce(scalar_from_string<double>(text)); }
  std::string format(double a) const { return scalar_to_string(a); }
  element_type random_element(CounterRng& rng) const { return two_pi * rng.uniform01(); }
  std::vector<element_type> probe_elements() const { return {0.0, 1.0, std::numbers::pi, 5.0}; }
  std::string name() const { return "Circle"; }
  bool has_identity() const { return true; }
};

static_assert(ExactSemigroup<IntLine>);
static_assert(ExactSemigroup<PosInts>);
static_assert(ExactSemigroup<Cyclic>);
static_assert(ExactSemigroup<HammingCube>);
static_assert(ExactSemigroup<SymCayley>);
static_assert(ExactSemigroup<SymHamming>);
static_assert(MetricSemigroup<Euclidean>);
static_assert(MetricSemigroup<Circle>);

} // namespace hj
