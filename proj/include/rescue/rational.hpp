#pragma once

#include <gmpxx.h>

#include <string>

#include "rescue/errors.hpp"

namespace rescue {

// Exact fraction type carrying all probabilities, odds, and game values.
// Backed by GMP; always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p/q" or a plain integer "p"; q must be positive.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&]() { fail_input("ParseError", "not a fraction: '" + text + "'"); };
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  mpz_class n, d;
  if (num.empty() || den.empty()) bad();
  if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0) bad();
  if (mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0) bad();
  if (d <= 0) fail_input("ParseError", "denominator must be positive: '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace rescue
