#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prpairs/types.hpp"

namespace prp {

// a x^2 + b y^2 = c z^2
struct EquationTriple {
  i64 a, b, c;
  EquationTriple(i64 a_, i64 b_, i64 c_);
  bool operator==(const EquationTriple&) const = default;
  std::string to_string() const;
};

enum class Pair { XY, XZ, YZ };
std::string to_string(Pair p);
Pair parse_pair(const std::string& s);

// Equivalent triple whose (x, y) pair is the requested pair of the original.
EquationTriple pair_transform(const EquationTriple& t, Pair p);

enum class Family {
  A,         // ac = d^2
  ASwapped,  // bc = d^2, roles of x and y exchanged
  B,         // (a + b) c = d^2, a + b != 0
  C          // a + b = 0
};
std::string to_string(Family f);
Family parse_family(const std::string& s);

struct Solution {
  BigInt x, y, z;
};

class ParametricFamily {
 public:
  ParametricFamily(EquationTriple t, Family family, i64 d);
  Family family() const { return family_; }
  const EquationTriple& triple() const { return t_; }
  i64 d() const { return d_; }
  // Every emitted triple is checked against the equation; InvariantError otherwise.
  Solution operator()(i64 k, i64 m, i64 n) const;

 private:
  EquationTriple t_;
  Family family_;
  i64 d_;
};

// Auto selection order: C, A, ASwapped, B.
ParametricFamily parametric_family(const EquationTriple& t, std::optional<Family> requested = std::nullopt);

struct Coloring {
  enum class Kind { Rado, TwoAdicSign, Dyadic, Custom };
  Kind kind;
  u64 param = 0;            // p for Rado, l for Dyadic
  std::vector<u64> table;   // Custom: color of n is table[(n - 1) mod size]

  static Coloring rado(u64 p);
  static Coloring two_adic_sign();
  static Coloring dyadic(u64 l);
  static Coloring custom(std::vector<u64> table);
  static Coloring parse(const std::string& s);  // rado:7 | two-adic | dyadic:6 | custom:0,1,1

  u64 color_of(u64 n) const;  // n >= 1
  u64 color_count() const;
  std::string to_string() const;
};

enum class Status { PR_UNCONDITIONAL, PR_CONDITIONAL_ON_C2QUADRATIC, NOT_PR, UNKNOWN };
std::string to_string(Status s);

struct Evidence {
  std::string name;
  std::string value;
};

struct Verdict {
  Status status;
  Pair pair;
  EquationTriple transformed;
  std::vector<Evidence> evidence;
  std::optional<std::variant<Coloring, u64>> witness;  // coloring, or a prime for the Rado coloring
};

Verdict classify(const EquationTriple& t, Pair pair);

std::optional<u64> find_qr_obstruction(const EquationTriple& t, u64 prime_limit);

// Elements are primes or -1.
std::optional<u64> find_split_prime(const std::vector<i64>& F1, const std::vector<i64>& F2, u64 limit);

inline constexpr u64 kSolutionBoundCap = 10'000;

std::vector<Solution> enumerate_solutions(const EquationTriple& t, u64 bound);

struct MonochromaticReport {
  u64 solutions = 0;
  u64 monochromatic = 0;  // solutions with x != y and color(x) = color(y)
  u64 diagonal = 0;       // solutions with x = y
  std::optional<Solution> first_counterexample;
};
MonochromaticReport verify_no_monochromatic(const EquationTriple& t, const Coloring& coloring, u64 bound);

}  // namespace prp
