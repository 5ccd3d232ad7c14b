#include "finpart/bignum.hpp"

#include <stdexcept>

namespace finpart {

BigNat pow2(std::size_t exponent) {
  BigNat result = 1;
  result <<= exponent;
  return result;
}

bool is_power_of_two(const BigNat& value) {
  if (value <= 0) return false;
  return boost::multiprecision::lsb(value) == boost::multiprecision::msb(value);
}

BigNat parse_bignat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural number: " + text);
  }
  return BigNat(text);
}

}  // namespace finpart
