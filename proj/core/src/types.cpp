#include "prpairs/types.hpp"

#include <algorithm>

#include "prpairs/errors.hpp"

namespace prp {

BigInt to_big_unsigned(u128 v) {
  BigInt r = static_cast<u64>(v >> 64);
  r <<= 64;
  r |= static_cast<u64>(v);
  return r;
}

BigInt to_big(i128 v) {
  if (v >= 0) return to_big_unsigned(static_cast<u128>(v));
  return -to_big_unsigned(abs_u128(v));
}

bool fits_i128(const BigInt& v) {
  if (v == 0) return true;
  BigInt a = abs(v);
  std::size_t bits = boost::multiprecision::msb(a) + 1;
  if (bits < 128) return true;
  // only -2^127 has 128 bits and fits
  return v < 0 && bits == 128 && a == (BigInt(1) << 127);
}

static u128 low_bits(const BigInt& a) {
  u64 lo = static_cast<u64>(a & BigInt(~u64{0}));
  u64 hi = static_cast<u64>((a >> 64) & BigInt(~u64{0}));
  return (static_cast<u128>(hi) << 64) | lo;
}

i128 to_i128(const BigInt& v) {
  if (!fits_i128(v)) throw ResourceError("integer exceeds the 128-bit evaluation cap");
  BigInt a = abs(v);
  u128 m = low_bits(a);
  if (v < 0) return static_cast<i128>(~m + 1);
  return static_cast<i128>(m);
}

u128 to_u128(const BigInt& v) {
  if (v < 0) throw ResourceError("negative value where an unsigned 128-bit value is required");
  if (v != 0 && boost::multiprecision::msb(v) >= 128)
    throw ResourceError("integer exceeds the 128-bit evaluation cap");
  return low_bits(v);
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  u128 m = abs_u128(v);
  std::string s;
  while (m > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (v < 0) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

double to_double(i128 v) { return static_cast<double>(v); }

BigInt expand(const ExponentMap& e) {
  BigInt r = 1;
  for (auto [p, k] : e) r *= boost::multiprecision::pow(BigInt(p), k);
  return r;
}

i64 floor_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

u128 abs_u128(i128 v) {
  return v < 0 ? ~static_cast<u128>(v) + 1 : static_cast<u128>(v);
}

}  // namespace prp
