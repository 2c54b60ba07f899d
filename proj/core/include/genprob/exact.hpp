#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace genprob {

using BigInt = mpz_class;
using Rational = mpq_class;  // always kept canonical (reduced, positive denominator)

BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Rational from num/den, canonicalised.
Rational make_rational(const BigInt& num, const BigInt& den);

/// "p/q" (or "p" for integers).
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Parses "p/q" or "p"; throws ParseError.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

}  // namespace genprob
