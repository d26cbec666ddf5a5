#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "prpairs/averaging.hpp"
#include "prpairs/forms.hpp"
#include "prpairs/multfunc.hpp"
#include "prpairs/types.hpp"

namespace prp {

// principal() when chi is principal mod 1 and t = 0, else twisted(tw)
MultiplicativeFunction twist_function(const TwistData& tw);

Complex G_sum(const BinaryQuadraticForm& P, const MultiplicativeFunction& f, const TwistData& twist, u64 K, u64 N);
Complex F_sum(const MultiplicativeFunction& f, const TwistData& twist, u64 K, u64 N);
Complex H_sum(const AdditiveFunction& h, u64 K, u64 N);

// Sum over K < p <= N of |h(p)|^2 / p
double D2_additive(const AdditiveFunction& h, u64 K, u64 N);

inline constexpr double kMonitorConstant = 10.0;

struct ConcentrationSetup {
  BinaryQuadraticForm P;
  MultiplicativeFunction f;
  TwistData twist;
  ExponentMap Q;          // primes <= K only
  i64 a = 1, b = 0;
  std::optional<u64> c;   // defaults to gcd(P(a, b), Q)
  u64 K = 1;
  u64 N = 1;

  BigInt Q_value() const { return expand(Q); }
  u64 c_value() const;
  // Throws DomainError naming the first violated precondition.
  void validate() const;
};

double concentration_lhs(const ConcentrationSetup& setup);

struct ConcentrationReport {
  double lhs;
  Complex G;
  double d_low;    // D_P(f, chi n^it; K, sqrt N)
  double d_high;   // D_P(f, chi n^it; sqrt N, 100 N^2), capped at the sieve cap
  bool d_high_capped;
  double bound;    // 10 (d_low + d_low^2) + 10 d_high + 10 K^(-1/2)
};
ConcentrationReport concentration_report(const ConcentrationSetup& setup);

// Checks the three support conditions on h; DomainError on violation.
void check_tk_conditions(const AdditiveFunction& h, const BinaryQuadraticForm& P, u64 K, u64 N);
double tk_variance(const ConcentrationSetup& setup, const AdditiveFunction& h);

struct TkReport {
  double variance;
  Complex H;
  double d2_low;   // D^2(h; K, sqrt N)
  double d2_high;  // D^2(h; sqrt N, N)
  double bound;    // 10 (d2_low + d2_high + 1/K)
};
TkReport tk_report(const ConcentrationSetup& setup, const AdditiveFunction& h);

struct LDeltaResult {
  Complex value;
  double mu;
};
// mu from the Riemann estimator unless given.
LDeltaResult L_delta(const MultiplicativeFunction& f, const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                     double delta, const BigInt& Q, i64 a, i64 b, u64 N, std::optional<double> mu = std::nullopt);

inline constexpr u64 kNonnegativityKCap = 4;

struct NonnegativityResult {
  double mean_re;
  std::size_t q_count;
  double mu;
};
NonnegativityResult nonnegativity_probe(const MultiplicativeFunction& f, const BinaryQuadraticForm& P1,
                                        const BinaryQuadraticForm& P2, double delta, u64 K, u64 N);

// Intersection of half-planes u x + v y >= 0; empty means the whole quadrant.
struct RegionSpec {
  std::vector<LinearForm> halfplanes;
  bool contains(i128 x, i128 y) const;
};

struct LinearFactor {
  MultiplicativeFunction f;
  LinearForm L;
};
Complex correlation_probe(const std::vector<LinearFactor>& factors, const MultiplicativeFunction& g,
                          const BinaryQuadraticForm& P, const RegionSpec& region, const BigInt& Q, i64 a, i64 b,
                          u64 N);

// E_{m,n in [N]} f1(P1(m,n)) f2(P2(m,n))
Complex pair_correlation(const MultiplicativeFunction& f1, const BinaryQuadraticForm& P1,
                         const MultiplicativeFunction& f2, const BinaryQuadraticForm& P2, u64 N);

struct LevelSetSpec {
  MultiplicativeFunction f;
  double half_width;   // radians, in (0, pi)
  unsigned L_max = 64;

  LevelSetSpec(MultiplicativeFunction f, double half_width, unsigned L_max = 64);
  // c_l for l = 0..L_max of the trapezoid 1 on |theta| <= w/2, 0 beyond w; c_{-l} = c_l.
  std::vector<double> coefficients() const;
  // bound on sum_{|l| > L_max} |c_l|
  double truncation_bound() const;
  bool in_arc(Complex z) const;
};

struct LevelSetHit {
  i64 k, m, n;
  BigInt r, s;  // k P1(m,n), k P2(m,n)
  Complex fr, fs;
  Complex C_surrogate;
};
// Scan order: k outermost, then m, then n, all from 1.
std::optional<LevelSetHit> level_set_search(const LevelSetSpec& spec, const BinaryQuadraticForm& P1,
                                            const BinaryQuadraticForm& P2, i64 k_max, i64 mn_max);

}  // namespace prp
