#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prpairs/forms.hpp"
#include "prpairs/types.hpp"

namespace prp {

// e(num/den) = exp(2 pi i num / den), exact at multiples of a quarter turn.
Complex unit_root(i64 num, i64 den);

class DirichletCharacter {
 public:
  struct Component {
    u64 modulus;                 // prime power p^e
    u64 order;                   // order of the cyclic factor
    std::vector<i64> log_table;  // discrete log by residue, -1 when not a unit
  };
  struct Group {
    u64 modulus = 1;
    u64 exponent = 1;  // lcm of component orders
    std::vector<Component> components;
  };

  DirichletCharacter(std::shared_ptr<const Group> group, std::vector<u64> digits);

  u64 modulus() const { return group_->modulus; }
  u64 exponent() const { return group_->exponent; }
  u64 index() const;
  u64 order() const;
  bool principal() const;
  bool real_valued() const { return order() <= 2; }

  // phase in [0, exponent) with chi(n) = e(phase / exponent), or -1 when gcd(n, q) > 1
  i64 phase(u128 n) const;
  Complex operator()(i128 n) const;
  std::vector<Complex> value_table() const;

 private:
  std::shared_ptr<const Group> group_;
  std::vector<u64> digits_;
};

inline constexpr u64 kCharacterModulusCap = 10'000;

std::vector<DirichletCharacter> dirichlet_characters(u64 q, u64 cap = kCharacterModulusCap);
DirichletCharacter dirichlet_character(u64 q, u64 index);

struct TwistData {
  double t = 0.0;
  DirichletCharacter chi;
};

// Value of chi(n) n^{it} at n >= 1; zero where chi vanishes.
Complex twist_value(const TwistData& tw, u128 n);

class MultiplicativeFunction {
 public:
  using PrimePowerRule = std::function<Complex(u128 p, unsigned k)>;
  using DirectRule = std::function<Complex(u128 n)>;
  using PrimeIndex = std::function<unsigned(u128 p)>;

  MultiplicativeFunction(std::string description, PrimePowerRule rule, bool completely_multiplicative);

  // Completely multiplicative with the given prime values.
  static MultiplicativeFunction completely(std::string description, std::function<Complex(u128 p)> at_prime);

  MultiplicativeFunction& with_direct_rule(DirectRule rule);
  // Prime values are order-th roots of unity e(index(p)/order); enables
  // tabulation by sieving. Only for completely multiplicative functions.
  MultiplicativeFunction& with_root_data(unsigned order, PrimeIndex index);
  // f(p^k) = 1 for every prime p > bound.
  MultiplicativeFunction& with_trivial_above(u64 bound);
  // Only primes in this list can have f(p^k) != 1.
  MultiplicativeFunction& with_finite_support(std::vector<u64> primes);

  Complex operator()(i128 n) const { return evaluate(n); }
  Complex evaluate(i128 n) const;
  Complex evaluate(const BigInt& n) const;
  Complex evaluate_unsigned(u128 n) const;  // n >= 1
  Complex at_prime_power(u128 p, unsigned k) const;
  Complex at_prime(u128 p) const { return at_prime_power(p, 1); }
  Complex evaluate_on_exponents(const ExponentMap& e) const;

  const std::string& description() const { return description_; }
  bool completely_multiplicative() const { return completely_; }
  bool has_direct_rule() const { return static_cast<bool>(direct_); }
  bool has_root_data() const { return root_order_ > 0; }
  unsigned root_order() const { return root_order_; }
  unsigned prime_index(u128 p) const { return prime_index_(p); }
  std::optional<u64> trivial_above() const { return trivial_above_; }

  MultiplicativeFunction conj() const;
  MultiplicativeFunction operator*(const MultiplicativeFunction& g) const;

 private:
  std::string description_;
  PrimePowerRule rule_;
  bool completely_;
  DirectRule direct_;
  unsigned root_order_ = 0;
  PrimeIndex prime_index_;
  std::optional<u64> trivial_above_;
  std::shared_ptr<const std::vector<u64>> support_;
};

MultiplicativeFunction liouville();
MultiplicativeFunction principal();
MultiplicativeFunction character_function(const DirichletCharacter& chi);
// chi(p) at primes not dividing q, 1 at primes dividing q.
MultiplicativeFunction character_lift(const DirichletCharacter& chi);
MultiplicativeFunction archimedean(double t);
MultiplicativeFunction twisted(const TwistData& tw);
// value at primes in (lo, hi], 1 elsewhere; completely multiplicative
MultiplicativeFunction prime_patch(u64 lo, u64 hi, Complex value);
// completely multiplicative, f(p) = values[p] when listed, else fallback
MultiplicativeFunction from_prime_values(std::string description, std::map<u64, Complex> values,
                                         Complex fallback = {1.0, 0.0});

// Tabulated evaluation for grid loops. Uses the direct rule when present, a
// sieved table of root-of-unity indices when the function allows it and the
// range is below the cap, and factorization otherwise. Values match
// MultiplicativeFunction::evaluate.
class FunctionEvaluator {
 public:
  static constexpr u64 kTableCap = 200'000'000;
  FunctionEvaluator(const MultiplicativeFunction& f, u128 max_abs_value);
  Complex operator()(i128 n) const;
  bool tabulated() const { return !table_.empty(); }

 private:
  const MultiplicativeFunction& f_;
  std::vector<unsigned char> table_;
  std::vector<Complex> roots_;
};

class AdditiveFunction {
 public:
  using PrimePowerRule = std::function<Complex(u128 p, unsigned k)>;
  AdditiveFunction(std::string description, PrimePowerRule rule, std::optional<std::vector<u64>> support);

  static AdditiveFunction zero();
  // h(p) = values[p], h(p^k) = 0 for k >= 2 and for primes not listed
  static AdditiveFunction on_primes(std::string description, std::map<u64, Complex> values);

  Complex evaluate(i128 n) const;  // 0 at n = 0 and n = +-1
  Complex at_prime_power(u128 p, unsigned k) const { return rule_(p, k); }
  const std::optional<std::vector<u64>>& support() const { return support_; }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  PrimePowerRule rule_;
  std::optional<std::vector<u64>> support_;
};

using PrimeWeight = std::function<double(u64 p)>;

double distance(const MultiplicativeFunction& f, const MultiplicativeFunction& g, double x, double y);
double distance_P(const BinaryQuadraticForm& P, const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                  double x, double y);
double distance_c(const PrimeWeight& c, const MultiplicativeFunction& f, const MultiplicativeFunction& g, double x,
                  double y);

struct DistanceCheckpoint {
  double y;
  double distance;
};
// Finite-window growth report: D(f, g; x, y) at each checkpoint y.
std::vector<DistanceCheckpoint> distance_profile(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                                 double x, const std::vector<double>& checkpoints);

}  // namespace prp
