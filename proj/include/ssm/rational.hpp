#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ssm {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p/q", integers, and decimal strings ("3.14", "-0.5e3", "1e-10").
// Decimal strings denote exact rationals; no rounding occurs.
Rat parse_rational(const std::string& s);

// Canonical short form: integers without "/1", otherwise "p/q".
std::string rational_to_string(const Rat& q);

// Decimal rendering with the given number of fractional digits (round to nearest).
std::string rational_to_decimal(const Rat& q, int digits);

std::vector<Rat> parse_rational_list(const std::string& comma_separated);

} // namespace ssm
