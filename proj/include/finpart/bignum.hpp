#pragma once

#include <cstddef>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace finpart {

// Exact integers. Signed underneath; every quantity in this library that is
// typed BigNat is non-negative.
using BigNat = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

BigNat pow2(std::size_t exponent);

bool is_power_of_two(const BigNat& value);

// Parses a non-negative decimal integer; throws std::invalid_argument.
BigNat parse_bignat(const std::string& text);

inline std::string to_string(const BigNat& value) { return value.str(); }

}  // namespace finpart
