#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hj/bound_params.hpp"
#include "hj/distribution.hpp"
#include "hj/errors.hpp"
#include "hj/families.hpp"
#include "hj/mc_runner.hpp"
#include "hj/testing/broken_square.hpp"

namespace hj {

using json = nlohmann::json;

// Families usable in exact verification, and everything the config accepts.
using ExactFamily = std::variant<IntLine, PosInts, Cyclic, HammingCube, SymCayley, SymHamming>;
using AnyFamily =
    std::variant<IntLine, PosInts, Cyclic, HammingCube, SymCayley, SymHamming, Euclidean, Circle, testing::BrokenSquare>;

namespace detail {

inline std::int64_t positive_param(const json& j, const char* key)
{
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() < 1)
    throw ParseError(std::string("semigroup parameter '") + key + "' must be a positive integer");
  return j.at(key).get<std::int64_t>();
}

} // namespace detail

/// {"family": "Cyclic", "m": 5} and friends.
inline AnyFamily parse_family(const json& j)
{
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ParseError("semigroup must be an object with a string 'family'");
  const auto family = j.at("family").get<std::string>();
  if (family == "IntLine")
    return IntLine{};
  if (family == "PosInts")
    return PosInts{};
  if (family == "Cyclic")
    return Cyclic{detail::positive_param(j, "m")};
  if (family == "HammingCube") {
    if (j.contains("vertices"))
      return HammingCube::labelled_graphs(static_cast<std::uint32_t>(detail::positive_param(j, "vertices")));
    return HammingCube{static_cast<std::uint32_t>(detail::positive_param(j, "m"))};
  }
  if (family == "SymCayley")
    return SymCayley{static_cast<std::size_t>(detail::positive_param(j, "n"))};
  if (family == "SymHamming")
    return SymHamming{static_cast<std::size_t>(detail::positive_param(j, "n"))};
  if (family == "Euclidean")
    return Euclidean{static_cast<std::size_t>(detail::positive_param(j, "d"))};
  if (family == "Circle")
    return Circle{};
  if (family == "BrokenSquare")
    return testing::BrokenSquare{};
  throw ParseError("unknown semigroup family '" + family + "'");
}

template <MetricSemigroup G>
json family_to_json(const G& sg)
{
  if constexpr (std::is_same_v<G, IntLine>)
    return {{"family", "IntLine"}};
  else if constexpr (std::is_same_v<G, PosInts>)
    return {{"family", "PosInts"}};
  else if constexpr (std::is_same_v<G, Cyclic>)
    return {{"family", "Cyclic"}, {"m", sg.modulus()}};
  else if constexpr (std::is_same_v<G, HammingCube>)
    return {{"family", "HammingCube"}, {"m", sg.length()}};
  else if constexpr (std::is_same_v<G, SymCayley>)
    return {{"family", "SymCayley"}, {"n", sg.degree()}};
  else if constexpr (std::is_same_v<G, SymHamming>)
    return {{"family", "SymHamming"}, {"n", sg.degree()}};
  else if constexpr (std::is_same_v<G, Euclidean>)
    return {{"family", "Euclidean"}, {"d", sg.dimension()}};
  else if constexpr (std::is_same_v<G, Circle>)
    return {{"family", "Circle"}};
  else
    return {{"family", sg.name()}};
}

/// Elements are text encodings; JSON numbers and arrays are accepted too.
template <MetricSemigroup G>
element_t<G> element_from_json(const G& sg, const json& j)
{
  if (j.is_string())
    return sg.parse(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_float())
    return sg.parse(j.dump());
  if (j.is_array()) {
    std::string text;
    for (const auto& v : j)
      text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    return sg.parse(text);
  }
  throw ParseError("element must be a string, number or array");
}

inline Rational rational_from_json(const json& j)
{
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational{static_cast<long>(j.get<std::int64_t>())};
  throw ParseError("exact values must be \"num/den\" strings or integers, got " + j.dump());
}

template <class T>
T scalar_from_json(const json& j)
{
  if constexpr (std::is_same_v<T, Rational>) {
    return rational_from_json(j);
  } else {
    if (j.is_number())
      return j.get<double>();
    if (j.is_string())
      return scalar_from_string<double>(j.get<std::string>());
    throw ParseError("expected a number, got " + j.dump());
  }
}

template <class T>
json scalar_to_json(const T& x)
{
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(x);
  else
    return x;
}

template <MetricSemigroup G>
FiniteDistribution<G> finite_law_from_json(const G& sg, const json& j)
{
  if (!j.is_array())
    throw ParseError("a finite law is a list of [element, \"num/den\"] pairs");
  std::vector<std::pair<element_t<G>, Rational>> pairs;
  for (const auto& atom : j) {
    if (!atom.is_array() || atom.size() != 2)
      throw ParseError("law atoms are [element, probability] pairs");
    pairs.emplace_back(element_from_json(sg, atom[0]), rational_from_json(atom[1]));
  }
  return make_distribution(sg, std::move(pairs));
}

template <MetricSemigroup G>
json finite_law_to_json(const G& sg, const FiniteDistribution<G>& law)
{
  json out = json::array();
  for (const auto& [e, p] : law.support())
    out.push_back(json::array({sg.format(e), to_string(p)}));
  return out;
}

/// Either "laws": [law, ...] or "n": N with a shared "law".
inline std::vector<json> law_list(const json& cfg)
{
  if (cfg.contains("laws")) {
    if (!cfg.at("laws").is_array() || cfg.at("laws").empty())
      throw ParseError("'laws' must be a nonempty list");
    return cfg.at("laws").get<std::vector<json>>();
  }
  if (cfg.contains("law") && cfg.contains("n")) {
    if (!cfg.at("n").is_number_integer() || cfg.at("n").get<std::int64_t>() < 1)
      throw ParseError("'n' must be a positive integer");
    return std::vector<json>(cfg.at("n").get<std::size_t>(), cfg.at("law"));
  }
  throw ParseError("config needs 'laws', or 'n' with 'law'");
}

inline const json& require_key(const json& cfg, const char* key)
{
  if (!cfg.contains(key))
    throw ParseError(std::string("config is missing '") + key + "'");
  return cfg.at(key);
}

template <MetricSemigroup G>
Scenario<G> scenario_from_json(const G& sg, const json& cfg)
{
  std::vector<FiniteDistribution<G>> laws;
  for (const auto& law : law_list(cfg))
    laws.push_back(finite_law_from_json(sg, law));
  return Scenario<G>{sg, std::move(laws), element_from_json(sg, require_key(cfg, "z0")),
                     element_from_json(sg, require_key(cfg, "z1"))};
}

template <MetricSemigroup G>
SampledScenario<G> sampled_scenario_from_json(const G& sg, const json& cfg)
{
  std::vector<SamplableLaw<G>> laws;
  for (const auto& law : law_list(cfg)) {
    if (law.is_object() && law.contains("gaussian")) {
      const auto& g = law.at("gaussian");
      GaussianStep step;
      for (const auto& x : require_key(g, "mean"))
        step.mean.push_back(scalar_from_json<double>(x));
      step.scale = g.contains("scale") ? scalar_from_json<double>(g.at("scale")) : 1.0;
      laws.emplace_back(std::move(step));
    } else if (law.is_object() && law.contains("arc")) {
      laws.emplace_back(ArcStep{scalar_from_json<double>(require_key(law.at("arc"), "half_width"))});
    } else if (law.is_object() && law.contains("finite")) {
      laws.emplace_back(finite_law_from_json(sg, law.at("finite")));
    } else {
      laws.emplace_back(finite_law_from_json(sg, law));
    }
  }
  return SampledScenario<G>{sg, std::move(laws), element_from_json(sg, require_key(cfg, "z0")),
                            element_from_json(sg, require_key(cfg, "z1"))};
}

/// The config-format description of a scenario; feeding it back to
/// scenario_from_json reproduces the scenario exactly.
template <MetricSemigroup G>
json scenario_to_json(const Scenario<G>& sc)
{
  json laws = json::array();
  for (const auto& law : sc.laws)
    laws.push_back(finite_law_to_json(sc.sg, law));
  return {{"semigroup", family_to_json(sc.sg)},
          {"laws", laws},
          {"z0", sc.sg.format(sc.z0)},
          {"z1", sc.sg.format(sc.z1)}};
}

template <class T>
BoundParams<T> params_from_json(const json& j)
{
  if (!j.is_object())
    throw ParseError("'params' must be an object");
  const auto& nj = require_key(j, "n_vec");
  const auto& tj = require_key(j, "t_vec");
  if (!nj.is_array() || !tj.is_array())
    throw ParseError("n_vec and t_vec must be lists");
  std::vector<std::size_t> n_vec;
  for (const auto& v : nj) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw HypothesisViolated("n_vec entries must be positive integers");
    n_vec.push_back(v.get<std::size_t>());
  }
  std::vector<T> t_vec;
  for (const auto& v : tj)
    t_vec.push_back(scalar_from_json<T>(v));
  return BoundParams<T>{std::move(n_vec), std::move(t_vec), scalar_from_json<T>(require_key(j, "s"))};
}

template <class T>
json params_to_json(const BoundParams<T>& p)
{
  json t = json::array();
  for (const auto& v : p.t_vec())
    t.push_back(scalar_to_json(v));
  return {{"n_vec", p.n_vec()}, {"t_vec", t}, {"s", scalar_to_json(p.s())}};
}

} // namespace hj
