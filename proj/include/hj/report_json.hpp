#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hj/axioms.hpp"
#include "hj/config.hpp"
#include "hj/hj_engine.hpp"
#include "hj/mc_runner.hpp"
#include "hj/proof_lab.hpp"

namespace hj {

// Exact values are "num/den" strings. Sampled values are JSON numbers;
// nlohmann prints doubles with the shortest representation that reads back
// bit-identically. Infinite ratios become the string "inf".

inline json to_json(const AxiomReport& r)
{
  json results = json::array();
  for (const auto& a : r.results) {
    json e = {{"axiom", a.axiom}, {"passed", a.passed}, {"checked", a.checked}};
    if (!a.passed)
      e["witness"] = a.witness;
    results.push_back(std::move(e));
  }
  return {{"instance", r.instance},
          {"trial_count", r.trial_count},
          {"seed", r.seed},
          {"all_passed", r.all_passed()},
          {"results", results}};
}

inline json index_list(const std::vector<std::size_t>& zero_based)
{
  json out = json::array();
  for (auto i : zero_based)
    out.push_back(i + 1);
  return out;
}

inline json to_json(const EvaluationReport& r)
{
  json blocks = json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"t", to_string(b.t)},
                      {"n", b.n},
                      {"tail", to_string(b.tail)},
                      {"cdf", to_string(b.cdf)},
                      {"in_I0", b.in_I0},
                      {"factor", to_string(b.factor)}});
  return {{"variant", to_string(r.variant)},
          {"K", r.K},
          {"zeta", to_string(r.zeta)},
          {"lhs", to_string(r.lhs)},
          {"I0", index_list(r.I0)},
          {"blocks", blocks},
          {"main_term", to_string(r.main_term)},
          {"main_term_min_form", to_string(r.main_term_min_form)},
          {"tail_term", to_string(r.tail_term)},
          {"rhs", to_string(r.rhs)},
          {"slack", to_string(r.slack)},
          {"holds", r.holds}};
}

inline json to_json(const PriorBoundReport& r)
{
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"applicable", c.applicable}, {"detail", c.detail}});
  return {{"bound", to_string(r.which)},
          {"lhs", to_string(r.lhs)},
          {"rhs", r.rhs ? json(to_string(*r.rhs)) : json("inf")},
          {"holds", r.holds},
          {"degenerate", r.degenerate},
          {"zero_parameter", r.zero_parameter},
          {"checks", checks}};
}

inline json to_json(const ProofCheck& c)
{
  json e = {{"name", c.name}, {"passed", c.passed}, {"applicable", c.applicable}, {"detail", c.detail}};
  if (!c.witness.empty())
    e["witness"] = c.witness;
  return e;
}

inline json tuple_map_json(const std::map<std::vector<std::size_t>, Rational>& m)
{
  json out = json::array();
  for (const auto& [key, value] : m)
    out.push_back({{"m", key}, {"p", to_string(value)}});
  return out;
}

inline json to_json(const DecompositionReport& r)
{
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(to_json(c));
  return {{"zeta", to_string(r.zeta)},
          {"lhs", to_string(r.lhs)},
          {"order_tail", to_string(r.order_tail)},
          {"p_omega1", to_string(r.p_omega1)},
          {"blocks", tuple_map_json(r.blocks)},
          {"S_tilde", to_string(r.S_tilde)},
          {"main_term", to_string(r.main_term)},
          {"anchor_distance", to_string(r.anchor_distance)},
          {"anchor_gap", r.anchor_gap},
          {"all_passed", r.all_passed()},
          {"checks", checks}};
}

inline json number_or_inf(double x)
{
  if (std::isinf(x))
    return "inf";
  return x;
}

inline json to_json(const Interval& iv)
{
  return json::array({number_or_inf(iv.lo), number_or_inf(iv.hi)});
}

inline json to_json(const Estimate& e)
{
  return {{"count", e.count}, {"p_hat", e.p_hat}, {"ci", to_json(e.ci)}};
}

inline json to_json(const McSide& s)
{
  return {{"point", number_or_inf(s.point)}, {"ci", to_json(s.ci)}};
}

inline json to_json(const McReport& r)
{
  json tail = json::array(), cdf = json::array(), product = json::array(), ratio = json::array(),
       variants = json::array();
  for (const auto& e : r.tail)
    tail.push_back(to_json(e));
  for (const auto& e : r.cdf)
    cdf.push_back(to_json(e));
  for (double x : r.branch_product)
    product.push_back(number_or_inf(x));
  for (double x : r.branch_ratio)
    ratio.push_back(number_or_inf(x));
  for (const auto& v : r.variants)
    variants.push_back({{"variant", to_string(v.variant)}, {"rhs", to_json(v.rhs)}, {"verdict", to_string(v.verdict)}});
  return {{"generator", r.generator},
          {"keying", r.keying},
          {"n_samples", r.n_samples},
          {"seed", r.seed},
          {"level", r.level},
          {"zeta", r.zeta},
          {"lhs", to_json(r.lhs)},
          {"tail", tail},
          {"cdf", cdf},
          {"max_tail", to_json(r.max_tail)},
          {"order_tail", to_json(r.order_tail)},
          {"I0", index_list(r.I0)},
          {"branch_product", product},
          {"branch_ratio", ratio},
          {"main_term", to_json(r.main_term)},
          {"variants", variants},
          {"verdict", to_string(mc_verdict(r))}};
}

} // namespace hj
