#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace prp {

using BigInt = boost::multiprecision::cpp_int;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;
using Complex = std::complex<double>;

// prime -> exponent. Folner elements and factored moduli are carried this way
// so that huge products never need to be expanded.
using ExponentMap = std::map<u64, unsigned>;

BigInt to_big(i128 v);
BigInt to_big_unsigned(u128 v);
bool fits_i128(const BigInt& v);
i128 to_i128(const BigInt& v);   // ResourceError when out of range
u128 to_u128(const BigInt& v);   // ResourceError when negative or out of range
std::string to_string(i128 v);
double to_double(i128 v);

BigInt expand(const ExponentMap& e);

i64 floor_mod(i64 a, i64 m);
i128 floor_mod(i128 a, i128 m);
u128 abs_u128(i128 v);

}  // namespace prp
