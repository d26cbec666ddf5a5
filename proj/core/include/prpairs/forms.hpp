#pragma once

#include <string>
#include <vector>

#include "prpairs/arith.hpp"
#include "prpairs/types.hpp"

namespace prp {

// alpha*m^2 + beta*m*n + gamma*n^2, coefficients used exactly as given.
class BinaryQuadraticForm {
 public:
  BinaryQuadraticForm(i64 alpha, i64 beta, i64 gamma);

  i64 alpha() const { return alpha_; }
  i64 beta() const { return beta_; }
  i64 gamma() const { return gamma_; }

  // D = beta^2 - 4 alpha gamma
  i128 discriminant() const;
  // 4 alpha gamma - beta^2 = r^2 d (DomainError when zero)
  SquarefreeDecomposition squarefree_data() const;
  bool is_irreducible() const;
  bool is_monic() const { return alpha_ == 1; }

  // |m|, |n| must stay below 2^50 for the 128-bit path.
  i128 operator()(i128 m, i128 n) const;
  BigInt eval_big(const BigInt& m, const BigInt& n) const;
  // P(n, 1) mod r, in [0, r)
  u64 eval_mod(u64 n, u64 r) const;

  std::string to_string() const;
  bool operator==(const BinaryQuadraticForm&) const = default;

 private:
  i64 alpha_, beta_, gamma_;
};

struct LinearForm {
  i64 u = 0, v = 0;
  bool nontrivial() const { return u != 0 || v != 0; }
  i128 operator()(i128 m, i128 n) const { return static_cast<i128>(u) * m + static_cast<i128>(v) * n; }
  std::string to_string() const;
  bool operator==(const LinearForm&) const = default;
};

bool independent(const LinearForm& a, const LinearForm& b);

i128 eval_form(const BinaryQuadraticForm& P, i128 m, i128 n);

inline constexpr u64 kOmegaScanLimit = 1'000'000;
inline constexpr std::size_t kRootListCap = 1'000'000;

u64 omega(const BinaryQuadraticForm& P, u64 r);
u64 omega_prime_power(const BinaryQuadraticForm& P, u64 p, unsigned e);
// Roots of P(n,1) modulo p^k, computed by lifting.
std::vector<u64> roots_mod_prime_power(const BinaryQuadraticForm& P, u64 p, unsigned k);
unsigned omega_prime_fast(const BinaryQuadraticForm& P, u64 p);
bool in_script_P(const BinaryQuadraticForm& P, u64 p);
BigInt hensel_lift(const BinaryQuadraticForm& P, u64 p, u64 root, unsigned k);

struct PartnerPrimeSets {
  std::vector<u64> first;   // omega_1(p) = 2, omega_2(p) = 0
  std::vector<u64> second;  // omega_1(p) = 0, omega_2(p) = 2
};

PartnerPrimeSets partner_prime_sets(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2, u64 bound,
                                    const std::vector<u64>& excluded);

// Prime divisors of r! together with those of
// A = 2 b b' (a^2 - 4b)(a'^2 - 4b') P1(b' - b, a - a')
// for P1 = m^2 + a mn + b n^2, P2 = m^2 + a' mn + b' n^2.
std::vector<u64> congruence_exceptional_primes(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                                               unsigned r);

struct LocalSolution {
  BigInt a;        // paired with b = 1
  BigInt modulus;  // p^(l+1)
};

// a with p^l || P_own(a, 1); P_other(a, 1) is then a unit mod p.
LocalSolution local_partner_solution(const BinaryQuadraticForm& P_own, u64 p, unsigned l);

struct CongruencePair {
  BigInt a, b;
  BigInt Q;   // prod_{p <= K} p^(2K)
  BigInt Q1;  // prod over first partner set of p^(l_p)
  BigInt Q2;
  std::vector<u64> exceptional;
  PartnerPrimeSets partners;  // restricted to [K]
};

CongruencePair construct_congruence_pair(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2, unsigned r,
                                         unsigned K, const ExponentMap& l);

}  // namespace prp
