#include "prpairs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/parallel.hpp"
#include "prpairs/summation.hpp"

namespace prp {

namespace {

double omega_weight(const BinaryQuadraticForm& P, u64 p) {
  if (P.is_irreducible()) return static_cast<double>(omega_prime_fast(P, p));
  return static_cast<double>(omega_prime_power(P, p, 1));
}

// Largest |P(Qm + a, Qn + b)| over m, n in [1, N], as a real upper bound.
long double value_bound(const BinaryQuadraticForm& P, long double Q, i64 a, i64 b, u64 N) {
  long double span = Q * static_cast<long double>(N) + static_cast<long double>(std::max(std::llabs(a), std::llabs(b)));
  long double coef = std::fabs(static_cast<long double>(P.alpha())) + std::fabs(static_cast<long double>(P.beta())) +
                     std::fabs(static_cast<long double>(P.gamma()));
  return coef * span * span;
}

constexpr long double kValueLimit = 1e36L;

u128 evaluator_range(long double bound) {
  if (bound > kValueLimit) throw ResourceError("form values exceed 128-bit range");
  return static_cast<u128>(bound) + 1;
}

std::vector<u64> sorted_support(const AdditiveFunction& h) {
  std::vector<u64> s = *h.support();
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

MultiplicativeFunction twist_function(const TwistData& tw) {
  if (tw.chi.modulus() == 1 && tw.t == 0.0) return principal();
  return twisted(tw);
}

Complex G_sum(const BinaryQuadraticForm& P, const MultiplicativeFunction& f, const TwistData& twist, u64 K, u64 N) {
  if (K >= N) return {0.0, 0.0};
  ComplexSum s;
  for (u64 p : primes_up_to(N)) {
    if (p <= K) continue;
    double w = omega_weight(P, p);
    if (w == 0.0) continue;
    Complex term = f.at_prime(p) * std::conj(twist_value(twist, p)) - Complex{1.0, 0.0};
    s.add(term * (w / static_cast<double>(p)));
  }
  return s.value();
}

Complex F_sum(const MultiplicativeFunction& f, const TwistData& twist, u64 K, u64 N) {
  if (K >= N) return {0.0, 0.0};
  ComplexSum s;
  for (u64 p : primes_up_to(N)) {
    if (p <= K) continue;
    Complex term = f.at_prime(p) * std::conj(twist_value(twist, p)) - Complex{1.0, 0.0};
    s.add(term / static_cast<double>(p));
  }
  return s.value();
}

Complex H_sum(const AdditiveFunction& h, u64 K, u64 N) {
  if (K >= N) return {0.0, 0.0};
  ComplexSum s;
  if (h.support()) {
    for (u64 p : sorted_support(h))
      if (p > K && p <= N) s.add(h.at_prime_power(p, 1) / static_cast<double>(p));
  } else {
    for (u64 p : primes_up_to(N))
      if (p > K) s.add(h.at_prime_power(p, 1) / static_cast<double>(p));
  }
  return 2.0 * s.value();
}

double D2_additive(const AdditiveFunction& h, u64 K, u64 N) {
  if (K >= N) return 0.0;
  CompensatedSum s;
  auto add = [&](u64 p) { s.add(std::norm(h.at_prime_power(p, 1)) / static_cast<double>(p)); };
  if (h.support()) {
    for (u64 p : sorted_support(h))
      if (p > K && p <= N) add(p);
  } else {
    for (u64 p : primes_up_to(N))
      if (p > K) add(p);
  }
  return s.value();
}

u64 ConcentrationSetup::c_value() const {
  if (c) return *c;
  BigInt v = abs(P.eval_big(BigInt(a), BigInt(b)));
  BigInt q = Q_value();
  BigInt g = v == 0 ? q : BigInt(boost::multiprecision::gcd(v, q));
  if (g > BigInt(std::numeric_limits<u64>::max())) throw ResourceError("c = gcd(P(a,b), Q) exceeds 64 bits");
  return static_cast<u64>(g);
}

void ConcentrationSetup::validate() const {
  if (!P.is_irreducible()) throw DomainError("concentration: P must be irreducible");
  if (K < 1 || N < 1) throw DomainError("concentration: K and N must be positive");
  for (auto [p, e] : Q) {
    if (p > K) throw DomainError("concentration: Q may only contain primes <= K");
    if (e < 1) throw DomainError("concentration: exponents of Q must be positive");
  }
  BigInt q = Q_value();
  u64 cv = c_value();
  if (cv < 1) throw DomainError("concentration: c must be positive");
  if (q % cv != 0) throw DomainError("concentration: c must divide Q");
  if (P.eval_big(BigInt(a), BigInt(b)) % cv != 0) throw DomainError("concentration: c must divide P(a, b)");
  BigInt qc = q / cv;
  if (qc % twist.chi.modulus() != 0) throw DomainError("concentration: the character modulus must divide Q/c");
  for (u64 p : primes_up_to(K))
    if (qc % p != 0) throw DomainError("concentration: every prime <= K must divide Q/c");
  if (value_bound(P, static_cast<long double>(q), a, b, N) > kValueLimit)
    throw ResourceError("concentration: form values exceed 128-bit range");
}

double concentration_lhs(const ConcentrationSetup& s) {
  s.validate();
  i128 Q = to_i128(s.Q_value());
  i128 c = static_cast<i128>(s.c_value());
  Complex G = G_sum(s.P, s.f, s.twist, s.K, s.N);
  Complex pred = s.twist.chi(s.P(s.a, s.b) / c) * std::exp(G);
  double t = s.twist.t;
  FunctionEvaluator ev(s.f, evaluator_range(value_bound(s.P, static_cast<long double>(Q), s.a, s.b, s.N) /
                                            static_cast<long double>(c)));
  return grid_mean(s.N, [&](i64 m, i64 n) {
           i128 v = s.P(Q * m + s.a, Q * n + s.b) / c;
           Complex rhs = pred;
           if (t != 0.0) {
             i128 w = Q * Q / c * s.P(m, n);
             double lw = std::log(std::fabs(static_cast<double>(w)));
             rhs *= std::polar(1.0, t * lw);
           }
           return Complex{std::abs(ev(v) - rhs), 0.0};
         })
      .real();
}

ConcentrationReport concentration_report(const ConcentrationSetup& s) {
  ConcentrationReport r{};
  r.lhs = concentration_lhs(s);
  r.G = G_sum(s.P, s.f, s.twist, s.K, s.N);
  MultiplicativeFunction g = twist_function(s.twist);
  double rootN = std::floor(std::sqrt(static_cast<double>(s.N)));
  double x = std::max(1.0, static_cast<double>(s.K));
  r.d_low = rootN > x ? distance_P(s.P, s.f, g, x, rootN) : 0.0;
  double hi = 100.0 * static_cast<double>(s.N) * static_cast<double>(s.N);
  bool truncates = s.f.trivial_above() && g.trivial_above() &&
                   static_cast<double>(std::max(*s.f.trivial_above(), *g.trivial_above())) <= kSieveCap;
  r.d_high_capped = false;
  if (!truncates && hi > static_cast<double>(kSieveCap)) {
    hi = static_cast<double>(kSieveCap);
    r.d_high_capped = true;
  }
  double lo = std::max(1.0, rootN);
  r.d_high = hi > lo ? distance_P(s.P, s.f, g, lo, hi) : 0.0;
  r.bound = kMonitorConstant * (r.d_low + r.d_low * r.d_low) + kMonitorConstant * r.d_high +
            kMonitorConstant / std::sqrt(static_cast<double>(s.K));
  return r;
}

void check_tk_conditions(const AdditiveFunction& h, const BinaryQuadraticForm& P, u64 K, u64 N) {
  if (!P.is_irreducible()) throw DomainError("tk: P must be irreducible");
  if (!h.support()) throw DomainError("tk: h must declare its finite prime support");
  for (u64 p : *h.support()) {
    Complex hp = h.at_prime_power(p, 1);
    if (std::abs(hp) > 1.0 + 1e-12) throw DomainError("tk: |h(p)| must be at most 1");
    if (hp != Complex{0.0, 0.0}) {
      if (p <= K || p > N) throw DomainError("tk: h(p) must vanish for p <= K and p > N (p = " + std::to_string(p) + ")");
      if (!in_script_P(P, p)) throw DomainError("tk: h(p) must vanish off the prime set of P (p = " + std::to_string(p) + ")");
    }
    for (unsigned k = 2; k <= 8; ++k)
      if (h.at_prime_power(p, k) != Complex{0.0, 0.0})
        throw DomainError("tk: h(p^k) must vanish for k >= 2 (p = " + std::to_string(p) + ")");
  }
}

double tk_variance(const ConcentrationSetup& s, const AdditiveFunction& h) {
  check_tk_conditions(h, s.P, s.K, s.N);
  BigInt qv = s.Q_value();
  u64 cv = s.c_value();
  if (qv % cv != 0 || s.P.eval_big(BigInt(s.a), BigInt(s.b)) % cv != 0)
    throw DomainError("tk: c must divide gcd(P(a, b), Q)");
  if (value_bound(s.P, static_cast<long double>(qv), s.a, s.b, s.N) > kValueLimit)
    throw ResourceError("tk: form values exceed 128-bit range");
  i128 Q = to_i128(qv), c = static_cast<i128>(cv);
  Complex H = H_sum(h, s.K, s.N);
  return grid_mean(s.N, [&](i64 m, i64 n) {
           i128 v = s.P(Q * m + s.a, Q * n + s.b) / c;
           return Complex{std::norm(h.evaluate(v) - H), 0.0};
         })
      .real();
}

TkReport tk_report(const ConcentrationSetup& s, const AdditiveFunction& h) {
  TkReport r{};
  r.variance = tk_variance(s, h);
  r.H = H_sum(h, s.K, s.N);
  u64 rootN = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(s.N))));
  r.d2_low = D2_additive(h, s.K, rootN);
  r.d2_high = D2_additive(h, rootN, s.N);
  r.bound = kMonitorConstant * (r.d2_low + r.d2_high + 1.0 / static_cast<double>(s.K));
  return r;
}

LDeltaResult L_delta(const MultiplicativeFunction& f, const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                     double delta, const BigInt& Qbig, i64 a, i64 b, u64 N, std::optional<double> mu) {
  if (N < 1) throw DomainError("L_delta: N must be positive");
  if (Qbig < 1) throw DomainError("L_delta: Q must be positive");
  WeightSpec spec(delta, P1, P2);
  double m0 = mu ? *mu : mu_riemann(spec);
  if (!(m0 > 0.0)) throw DomainError("L_delta: mu must be positive");
  long double Ql = static_cast<long double>(Qbig);
  u128 range = std::max(evaluator_range(value_bound(P1, Ql, a, b, N)), evaluator_range(value_bound(P2, Ql, a, b, N)));
  i128 Q = to_i128(Qbig);
  FunctionEvaluator ev(f, range);
  Complex v = grid_mean(N, [&](i64 m, i64 n) {
    double w = weight(spec, m, n);
    if (w == 0.0) return Complex{0.0, 0.0};
    i128 X = Q * m + a, Y = Q * n + b;
    return (w / m0) * ev(P1(X, Y)) * std::conj(ev(P2(X, Y)));
  });
  return {v, m0};
}

NonnegativityResult nonnegativity_probe(const MultiplicativeFunction& f, const BinaryQuadraticForm& P1,
                                        const BinaryQuadraticForm& P2, double delta, u64 K, u64 N) {
  if (K > kNonnegativityKCap) throw ResourceError("probe-nonneg: K must be at most 4");
  WeightSpec spec(delta, P1, P2);
  double mu = mu_riemann(spec);
  auto elems = folner_enumerate(K);
  CompensatedSum s;
  for (const auto& e : elems) s.add(L_delta(f, P1, P2, delta, e.expand(), 1, 0, N, mu).value.real());
  return {s.value() / static_cast<double>(elems.size()), elems.size(), mu};
}

bool RegionSpec::contains(i128 x, i128 y) const {
  for (const auto& h : halfplanes)
    if (h(x, y) < 0) return false;
  return true;
}

Complex correlation_probe(const std::vector<LinearFactor>& factors, const MultiplicativeFunction& g,
                          const BinaryQuadraticForm& P, const RegionSpec& region, const BigInt& Qbig, i64 a, i64 b,
                          u64 N) {
  if (factors.empty()) throw DomainError("correlate: at least one linear factor is required");
  if (!factors[0].L.nontrivial()) throw DomainError("correlate: L1 must be nontrivial");
  for (std::size_t j = 1; j < factors.size(); ++j)
    if (!independent(factors[0].L, factors[j].L))
      throw DomainError("correlate: L1 and L" + std::to_string(j + 1) + " must be linearly independent");
  if (N < 1) throw DomainError("correlate: N must be positive");
  if (Qbig < 1) throw DomainError("correlate: Q must be positive");
  long double Ql = static_cast<long double>(Qbig);
  long double span = Ql * static_cast<long double>(N) + static_cast<long double>(std::max(std::llabs(a), std::llabs(b)));
  i128 Q = to_i128(Qbig);
  std::vector<std::unique_ptr<FunctionEvaluator>> evs;
  for (const auto& fac : factors) {
    long double lb = (std::fabs(static_cast<long double>(fac.L.u)) + std::fabs(static_cast<long double>(fac.L.v))) * span;
    evs.push_back(std::make_unique<FunctionEvaluator>(fac.f, evaluator_range(lb)));
  }
  FunctionEvaluator gev(g, evaluator_range(value_bound(P, Ql, a, b, N)));
  return grid_mean(N, [&](i64 m, i64 n) {
    i128 X = Q * m + a, Y = Q * n + b;
    if (!region.contains(X, Y)) return Complex{0.0, 0.0};
    Complex prod = gev(P(X, Y));
    for (std::size_t j = 0; j < factors.size() && prod != Complex{0.0, 0.0}; ++j) prod *= (*evs[j])(factors[j].L(X, Y));
    return prod;
  });
}

Complex pair_correlation(const MultiplicativeFunction& f1, const BinaryQuadraticForm& P1,
                         const MultiplicativeFunction& f2, const BinaryQuadraticForm& P2, u64 N) {
  if (N < 1) throw DomainError("pair_correlation: N must be positive");
  FunctionEvaluator e1(f1, evaluator_range(value_bound(P1, 1.0L, 0, 0, N)));
  FunctionEvaluator e2(f2, evaluator_range(value_bound(P2, 1.0L, 0, 0, N)));
  return grid_mean(N, [&](i64 m, i64 n) { return e1(P1(m, n)) * e2(P2(m, n)); });
}

LevelSetSpec::LevelSetSpec(MultiplicativeFunction f_, double half_width_, unsigned L_max_)
    : f(std::move(f_)), half_width(half_width_), L_max(L_max_) {
  if (!(half_width > 0.0 && half_width < std::numbers::pi)) throw DomainError("levelset: arc half-width must lie in (0, pi)");
}

std::vector<double> LevelSetSpec::coefficients() const {
  double A = half_width / 2, B = half_width;
  std::vector<double> c(L_max + 1);
  c[0] = 1.5 * half_width / (2 * std::numbers::pi);
  for (unsigned l = 1; l <= L_max; ++l) {
    double L = l;
    c[l] = (std::cos(L * A) - std::cos(L * B)) / (std::numbers::pi * L * L * (B - A));
  }
  return c;
}

double LevelSetSpec::truncation_bound() const {
  if (L_max == 0) return std::numeric_limits<double>::infinity();
  return 8.0 / (std::numbers::pi * half_width * L_max);
}

bool LevelSetSpec::in_arc(Complex z) const {
  if (std::fabs(std::abs(z) - 1.0) > 1e-9) return false;
  return std::fabs(std::arg(z)) < half_width;
}

std::optional<LevelSetHit> level_set_search(const LevelSetSpec& spec, const BinaryQuadraticForm& P1,
                                            const BinaryQuadraticForm& P2, i64 k_max, i64 mn_max) {
  if (P1 == P2) throw DomainError("levelset: P1 and P2 must differ");
  if (k_max < 1 || mn_max < 1) throw DomainError("levelset: k_max and mn_max must be positive");
  auto coef = spec.coefficients();
  for (i64 k = 1; k <= k_max; ++k) {
    for (i64 m = 1; m <= mn_max; ++m) {
      for (i64 n = 1; n <= mn_max; ++n) {
        i128 p1 = P1(m, n), p2 = P2(m, n);
        if (p1 <= 0 || p2 <= 0 || p1 == p2) continue;
        Complex fr = spec.f.evaluate(k * p1);
        if (!spec.in_arc(fr)) continue;
        Complex fs = spec.f.evaluate(k * p2);
        if (!spec.in_arc(fs)) continue;
        ComplexSum C;
        C.add(Complex{coef[0] * coef[0], 0.0});
        Complex a = fr, b = fs;
        for (unsigned l = 1; l <= spec.L_max; ++l) {
          Complex term = a * std::conj(b);
          C.add(coef[l] * coef[l] * (term + std::conj(term)));
          a *= fr;
          b *= fs;
        }
        return LevelSetHit{k, m, n, to_big(k * p1), to_big(k * p2), fr, fs, C.value()};
      }
    }
  }
  return std::nullopt;
}

}  // namespace prp
