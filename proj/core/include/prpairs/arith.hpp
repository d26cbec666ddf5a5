#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "prpairs/types.hpp"

namespace prp {

inline constexpr u64 kSieveCap = 100'000'000;
inline constexpr u64 kTrialDivisionLimit = 1'000'000;

struct PrimePower {
  BigInt prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  BigInt value;
  std::vector<PrimePower> factors;
  BigInt reconstruct() const;  // |value|
};

// Fast-path factorization of machine-sized values.
struct WordFactor {
  u128 prime;
  unsigned exponent;
};

struct SquarefreeDecomposition {
  BigInt d;  // squarefree, carries the sign
  BigInt r;  // positive, input = d * r^2
};

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

std::vector<u64> sieve_primes(u64 limit, u64 cap = kSieveCap);
// Like sieve_primes but returns the empty list below 2.
std::vector<u64> primes_up_to(u64 limit);
// Primes up to kTrialDivisionLimit, built once.
const std::vector<u64>& base_primes();

bool is_prime(u64 n);
bool is_prime(u128 n);
bool is_probable_prime(const BigInt& n);

Factorization factorize(const BigInt& n);
std::vector<WordFactor> factorize_word(u128 n);  // n >= 1

int jacobi(i64 a, u64 n);
int jacobi(const BigInt& a, const BigInt& n);
// Kronecker symbol (a/n) for n >= 1.
int kronecker(i64 a, u64 n);

SquarefreeDecomposition squarefree_part(const BigInt& n);

Congruence crt(const std::vector<Congruence>& congruences);

std::optional<u64> find_prime_in_class(i64 a, u64 q, u64 limit);

std::pair<BigInt, BigInt> pell_fundamental(const BigInt& D);

BigInt isqrt(const BigInt& n);
u64 isqrt(u64 n);
u128 isqrt(u128 n);
bool is_square(const BigInt& n);
bool is_square(i128 n);

u64 gcd(u64 a, u64 b);
u128 gcd(u128 a, u128 b);
u64 powmod(u64 a, u64 e, u64 m);
u64 mulmod(u64 a, u64 b, u64 m);
// Inverse of a modulo m; DomainError when not invertible.
u64 invmod(u64 a, u64 m);
BigInt invmod(const BigInt& a, const BigInt& m);
// Square root of a modulo an odd prime p, if one exists.
std::optional<u64> sqrtmod(u64 a, u64 p);

unsigned valuation(u128 n, u64 p);
BigInt factorial(unsigned r);

}  // namespace prp
