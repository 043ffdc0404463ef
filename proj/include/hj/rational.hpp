#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "hj/errors.hpp"

namespace hj {

using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
  if (den == 0)
    throw ParseError("zero denominator");
  Rational q{mpz_class{static_cast<long>(num)}, mpz_class{static_cast<long>(den)}};
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q" and "-p/q".
inline Rational parse_rational(std::string_view text)
{
  std::string s{text};
  if (s.empty())
    throw ParseError("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size())
      return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+')
    num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + s + "'");
  mpz_class n{num, 10};
  mpz_class d{den, 10};
  if (d == 0)
    throw ParseError("zero denominator in '" + s + "'");
  Rational q{n, d};
  q.canonicalize();
  return q;
}

// Always "num/den", including integers ("3/1") and zero ("0/1").
inline std::string to_string(const Rational& q)
{
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational pow(const Rational& base, unsigned exponent)
{
  // 0^0 = 1
  Rational result{1};
  for (unsigned i = 0; i < exponent; ++i)
    result *= base;
  return result;
}

inline Rational factorial(unsigned n)
{
  mpz_class f{1};
  for (unsigned i = 2; i <= n; ++i)
    f *= i;
  return Rational{f};
}

} // namespace hj
