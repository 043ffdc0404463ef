#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hj/errors.hpp"
#include "hj/rational.hpp"
#include "hj/semigroup.hpp"

namespace hj {

/// A finitely supported law: distinct support points with positive exact
/// probabilities summing to one.
template <MetricSemigroup G>
class FiniteDistribution {
public:
  using Atom = std::pair<element_t<G>, Rational>;

  FiniteDistribution() = default;

  const std::vector<Atom>& support() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const element_t<G>& element(std::size_t i) const { return atoms_[i].first; }
  const Rational& probability(std::size_t i) const { return atoms_[i].second; }

private:
  template <MetricSemigroup H>
  friend FiniteDistribution<H> make_distribution(const H&, std::vector<std::pair<element_t<H>, Rational>>);

  std::vector<Atom> atoms_;
};

/// Validates and normalizes a list of (element, probability) pairs. Duplicate
/// elements are merged by summing their probabilities; first-seen order is kept.
template <MetricSemigroup G>
FiniteDistribution<G> make_distribution(const G& sg, std::vector<std::pair<element_t<G>, Rational>> pairs)
{
  if (pairs.empty())
    throw ProbabilitiesDoNotSumToOne("empty distribution");
  FiniteDistribution<G> law;
  Rational total{0};
  for (auto& [e, p] : pairs) {
    require_member(sg, e);
    if (p <= 0)
      throw NonPositiveProbability("probability " + to_string(p) + " of " + sg.format(e) + " is not positive");
    total += p;
    bool merged = false;
    for (auto& atom : law.atoms_)
      if (atom.first == e) {
        atom.second += p;
        merged = true;
        break;
      }
    if (!merged)
      law.atoms_.emplace_back(std::move(e), p);
  }
  if (total != 1)
    throw ProbabilitiesDoNotSumToOne("probabilities sum to " + to_string(total));
  return law;
}

template <MetricSemigroup G>
FiniteDistribution<G> point_mass(const G& sg, element_t<G> e)
{
  return make_distribution(sg, {{std::move(e), Rational{1}}});
}

/// n independent finitely supported variables plus anchor points z0, z1.
template <MetricSemigroup G>
struct Scenario {
  G sg;
  std::vector<FiniteDistribution<G>> laws;
  element_t<G> z0;
  element_t<G> z1;

  Scenario(G sg_, std::vector<FiniteDistribution<G>> laws_, element_t<G> z0_, element_t<G> z1_)
    : sg{std::move(sg_)}, laws{std::move(laws_)}, z0{std::move(z0_)}, z1{std::move(z1_)}
  {
    if (laws.empty())
      throw ParseError("a scenario needs at least one variable");
    require_member(sg, z0);
    require_member(sg, z1);
    for (const auto& law : laws)
      for (const auto& [e, p] : law.support())
        require_member(sg, e);
  }

  std::size_t n() const { return laws.size(); }
};

} // namespace hj
