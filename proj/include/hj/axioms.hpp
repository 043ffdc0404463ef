#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hj/rng.hpp"
#include "hj/semigroup.hpp"

namespace hj {

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness; // first failing tuple, empty on pass
};

struct AxiomReport {
  std::string instance;
  std::size_t trial_count = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;

  bool all_passed() const
  {
    for (const auto& r : results)
      if (!r.passed)
        return false;
    return true;
  }

  const AxiomResult* find(const std::string& axiom) const
  {
    for (const auto& r : results)
      if (r.axiom == axiom)
        return &r;
    return nullptr;
  }
};

namespace detail {

template <MetricSemigroup G>
class AxiomChecker {
public:
  using E = element_t<G>;

  explicit AxiomChecker(const G& sg) : sg_{sg}
  {
    for (const char* name : {"associativity", "symmetry", "identity-of-indiscernibles",
                             "left-translation-invariance", "right-translation-invariance",
                             "triangle-product-form", "increment-norm-identity"})
      results_.push_back({name, true, 0, {}});
  }

  void check_pair(const E& a, const E& b)
  {
    auto dab = sg_.dist(a, b);
    auto dba = sg_.dist(b, a);
    record(1, scalar_equal(dab, dba), [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ": d(a,b)=" + scalar_to_string(dab) +
             ", d(b,a)=" + scalar_to_string(dba);
    });
    auto daa = sg_.dist(a, a);
    bool ok = scalar_equal(daa, zero());
    if (ok && !(a == b))
      ok = dab > zero();
    record(2, ok, [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ": d(a,a)=" + scalar_to_string(daa) +
             ", d(a,b)=" + scalar_to_string(dab);
    });
    // d(a, ba) = d(b, b^2) = d(a, ab)
    auto left = sg_.dist(a, sg_.op(b, a));
    auto middle = sg_.dist(b, sg_.op(b, b));
    auto right = sg_.dist(a, sg_.op(a, b));
    record(6, scalar_equal(left, middle) && scalar_equal(middle, right), [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ": d(a,ba)=" + scalar_to_string(left) +
             ", d(b,bb)=" + scalar_to_string(middle) + ", d(a,ab)=" + scalar_to_string(right);
    });
  }

  void check_triple(const E& a, const E& b, const E& c)
  {
    auto ab_c = sg_.op(sg_.op(a, b), c);
    auto a_bc = sg_.op(a, sg_.op(b, c));
    record(0, same(ab_c, a_bc), [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ", c=" + fmt(c) + ": (ab)c=" + fmt(ab_c) +
             ", a(bc)=" + fmt(a_bc);
    });
    auto dab = sg_.dist(a, b);
    auto dca_cb = sg_.dist(sg_.op(c, a), sg_.op(c, b));
    record(3, scalar_equal(dca_cb, dab), [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ", c=" + fmt(c) + ": d(ca,cb)=" +
             scalar_to_string(dca_cb) + ", d(a,b)=" + scalar_to_string(dab);
    });
    auto dac_bc = sg_.dist(sg_.op(a, c), sg_.op(b, c));
    record(4, scalar_equal(dac_bc, dab), [&] {
      return "a=" + fmt(a) + ", b=" + fmt(b) + ", c=" + fmt(c) + ": d(ac,bc)=" +
             scalar_to_string(dac_bc) + ", d(a,b)=" + scalar_to_string(dab);
    });
  }

  // d(y1 y2, z1 z2) <= d(y1, z1) + d(y2, z2)
  void check_quad(const E& y1, const E& y2, const E& z1, const E& z2)
  {
    auto lhs = sg_.dist(sg_.op(y1, y2), sg_.op(z1, z2));
    scalar_t<G> rhs = sg_.dist(y1, z1) + sg_.dist(y2, z2);
    record(5, scalar_le(lhs, rhs), [&] {
      return "y1=" + fmt(y1) + ", y2=" + fmt(y2) + ", z1=" + fmt(z1) + ", z2=" + fmt(z2) +
             ": d(y1y2,z1z2)=" + scalar_to_string(lhs) + " > " + scalar_to_string(rhs);
    });
  }

  std::vector<AxiomResult> take() { return std::move(results_); }

private:
  static scalar_t<G> zero() { return scalar_t<G>{0}; }

  bool same(const E& x, const E& y) const
  {
    if constexpr (G::exact)
      return x == y;
    else
      return scalar_equal(sg_.dist(x, y), 0.0);
  }

  std::string fmt(const E& e) const { return sg_.format(e); }

  template <class Witness>
  void record(std::size_t index, bool ok, Witness&& witness)
  {
    auto& r = results_[index];
    ++r.checked;
    if (!ok && r.passed) {
      r.passed = false;
      r.witness = witness();
    }
  }

  const G& sg_;
  std::vector<AxiomResult> results_;
};

} // namespace detail

/// Checks the metric-semigroup axioms: first exhaustively over the
/// instance's small probe set (so witnesses are deterministic), then on
/// `trial_count` random tuples drawn from the keyed generator. Exact
/// families are compared exactly, real families within real_tolerance.
template <MetricSemigroup G>
AxiomReport check_axioms(const G& sg, std::size_t trial_count, std::uint64_t seed)
{
  if (trial_count < 1)
    throw HypothesisViolated("trial_count must be at least 1");
  detail::AxiomChecker<G> checker{sg};
  const auto probe = sg.probe_elements();
  for (const auto& a : probe)
    for (const auto& b : probe) {
      checker.check_pair(a, b);
      for (const auto& c : probe) {
        checker.check_triple(a, b, c);
        for (const auto& d : probe)
          checker.check_quad(a, b, c, d);
      }
    }
  for (std::size_t i = 0; i < trial_count; ++i) {
    CounterRng rng{seed, 0, i};
    auto a = sg.random_element(rng);
    auto b = sg.random_element(rng);
    auto c = sg.random_element(rng);
    auto d = sg.random_element(rng);
    checker.check_pair(a, b);
    checker.check_triple(a, b, c);
    checker.check_quad(a, b, c, d);
  }
  return AxiomReport{sg.name(), trial_count, seed, checker.take()};
}

} // namespace hj
