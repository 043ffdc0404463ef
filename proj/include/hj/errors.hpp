#pragma once

#include <stdexcept>
#include <string>

namespace hj {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An element was used with an instance it does not belong to.
class InstanceMismatch : public Error {
public:
  using Error::Error;
};

class NonPositiveProbability : public Error {
public:
  using Error::Error;
};

class ProbabilitiesDoNotSumToOne : public Error {
public:
  using Error::Error;
};

// Enumeration would visit more outcomes than the configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

// Bound parameters violate sum(n_i) <= n + 1, or are otherwise malformed.
class HypothesisViolated : public Error {
public:
  using Error::Error;
};

class InvalidLevel : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace hj
