#include "prpairs/averaging.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/parallel.hpp"
#include "prpairs/summation.hpp"

namespace prp {

WeightSpec::WeightSpec(double delta_, BinaryQuadraticForm P1_, BinaryQuadraticForm P2_)
    : delta(delta_), P1(std::move(P1_)), P2(std::move(P2_)) {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("weight: delta must lie in (0, 1/2)");
}

double trapezoid(double delta, double phase) {
  double x = std::fabs(phase);
  if (x <= delta / 2) return 1.0;
  if (x >= delta) return 0.0;
  return (delta - x) / (delta / 2);
}

double weight_phase(double p1, double p2) {
  double phi = (std::log(p1) - std::log(p2)) / (2 * std::numbers::pi);
  return phi - std::floor(phi + 0.5);
}

double weight(const WeightSpec& spec, i128 m, i128 n) {
  if (m == 0 && n == 0) throw DomainError("weight: (m, n) must be nonzero");
  i128 v1 = spec.P1(m, n), v2 = spec.P2(m, n);
  if (v1 <= 0 || v2 <= 0) return 0.0;
  if (v1 == v2) return 1.0;
  return trapezoid(spec.delta, weight_phase(static_cast<double>(v1), static_cast<double>(v2)));
}

double weight_real(const WeightSpec& spec, double x, double y) {
  auto ev = [&](const BinaryQuadraticForm& P) {
    return static_cast<double>(P.alpha()) * x * x + static_cast<double>(P.beta()) * x * y +
           static_cast<double>(P.gamma()) * y * y;
  };
  double v1 = ev(spec.P1), v2 = ev(spec.P2);
  if (v1 <= 0 || v2 <= 0) return 0.0;
  return trapezoid(spec.delta, weight_phase(v1, v2));
}

double mu_grid(const WeightSpec& spec, u64 N) {
  if (N < 100) throw DomainError("mu_estimate: N must be at least 100");
  return grid_mean(N, [&](i64 m, i64 n) { return Complex{weight(spec, m, n), 0.0}; }).real();
}

double mu_riemann(const WeightSpec& spec, u64 resolution) {
  if (resolution == 0) throw DomainError("mu_riemann: resolution must be positive");
  double h = 1.0 / static_cast<double>(resolution);
  return grid_mean(resolution, [&](i64 i, i64 j) {
           return Complex{weight_real(spec, (static_cast<double>(i) - 0.5) * h, (static_cast<double>(j) - 0.5) * h),
                          0.0};
         })
      .real();
}

MuEstimate mu_estimate(const WeightSpec& spec, u64 N, u64 resolution) {
  return {mu_grid(spec, N), mu_riemann(spec, resolution)};
}

bool in_phi_K(const FolnerElement& e, u64 K) {
  auto primes = primes_up_to(K);
  if (e.exponents.size() != primes.size()) return false;
  for (u64 p : primes) {
    auto it = e.exponents.find(p);
    if (it == e.exponents.end() || it->second <= K || it->second > 2 * K) return false;
  }
  return true;
}

namespace {

// All assignments primes[i] -> exponent in [lo, hi], lexicographic in the prime order.
std::vector<FolnerElement> exponent_box(const std::vector<u64>& primes, unsigned lo, unsigned hi) {
  std::vector<FolnerElement> out;
  if (lo > hi) return out;
  std::vector<unsigned> cur(primes.size(), lo);
  while (true) {
    FolnerElement e;
    for (std::size_t i = 0; i < primes.size(); ++i) e.exponents[primes[i]] = cur[i];
    out.push_back(std::move(e));
    std::size_t i = primes.size();
    while (i > 0) {
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        for (std::size_t j = i + 1; j < primes.size(); ++j) cur[j] = lo;
        goto next;
      }
    }
    break;
  next:;
  }
  return out;
}

}  // namespace

std::vector<FolnerElement> folner_enumerate(u64 K) {
  if (K < 1) throw DomainError("folner: K must be positive");
  if (K > kFolnerEnumerationCap) throw ResourceError("folner: full enumeration needs K <= 7; use sampling");
  return exponent_box(primes_up_to(K), static_cast<unsigned>(K + 1), static_cast<unsigned>(2 * K));
}

std::vector<FolnerElement> folner_sample(u64 K, std::size_t count, u64 seed) {
  if (K < 1) throw DomainError("folner: K must be positive");
  if (K > 10'000) throw ResourceError("folner: sampling needs K <= 10^4");
  auto primes = primes_up_to(K);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> dist(static_cast<unsigned>(K + 1), static_cast<unsigned>(2 * K));
  std::vector<FolnerElement> out(count);
  for (auto& e : out)
    for (u64 p : primes) e.exponents[p] = dist(rng);
  return out;
}

std::vector<FolnerElement> folner_partner(u64 K, int j, const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                                          const std::vector<u64>& excluded) {
  if (j != 1 && j != 2) throw DomainError("folner_partner: j must be 1 or 2");
  if (K < 1) throw DomainError("folner: K must be positive");
  auto sets = partner_prime_sets(P1, P2, K, excluded);
  const auto& primes = j == 1 ? sets.first : sets.second;
  unsigned lo = static_cast<unsigned>(K + 1), hi = static_cast<unsigned>(3 * K / 2);
  if (lo <= hi) {
    double count = std::pow(static_cast<double>(hi - lo + 1), static_cast<double>(primes.size()));
    if (count > 1e6) throw ResourceError("folner_partner: more than 10^6 elements");
  }
  return exponent_box(primes, lo, hi);
}

Complex folner_average(const MultiplicativeFunction& f, u64 K) {
  auto elems = folner_enumerate(K);
  ComplexSum s;
  for (const auto& e : elems) s.add(f.evaluate_on_exponents(e.exponents));
  return s.value() / static_cast<double>(elems.size());
}

Complex folner_average_sampled(const MultiplicativeFunction& f, u64 K, std::size_t count, u64 seed) {
  if (count == 0) throw DomainError("folner: sample count must be positive");
  ComplexSum s;
  for (const auto& e : folner_sample(K, count, seed)) s.add(f.evaluate_on_exponents(e.exponents));
  return s.value() / static_cast<double>(count);
}

namespace {

void check_grid_range(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, u64 N) {
  long double span = static_cast<long double>(std::llabs(Q)) * N + std::max(std::llabs(a), std::llabs(b));
  long double coef = std::fabs(static_cast<long double>(P.alpha())) + std::fabs(static_cast<long double>(P.beta())) +
                     std::fabs(static_cast<long double>(P.gamma()));
  if (coef * span * span > 1e36L) throw ResourceError("form values exceed 128-bit range");
}

void require_prime(u64 p, const char* what) {
  if (!is_prime(p)) throw DomainError(std::string(what) + " must be prime");
}

}  // namespace

double divisor_stat_exact(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, u64 p, u64 q, u64 N) {
  if (N < 1) throw DomainError("divisor_stat: N must be positive");
  if (N > kDivisorStatCap) throw ResourceError("divisor_stat: N above 5000");
  if (Q < 1) throw DomainError("divisor_stat: Q must be positive");
  require_prime(p, "p");
  require_prime(q, "q");
  check_grid_range(P, Q, a, b, N);
  i128 p1 = p, p2 = static_cast<i128>(p) * p, q1 = q, q2 = static_cast<i128>(q) * q;
  u64 hits = grid_count(N, [&](i64 m, i64 n) {
    i128 v = P(static_cast<i128>(Q) * m + a, static_cast<i128>(Q) * n + b);
    if (v % p1 != 0 || v % p2 == 0) return false;
    if (q == p) return true;
    return v % q1 == 0 && v % q2 != 0;
  });
  return static_cast<double>(hits) / (static_cast<double>(N) * static_cast<double>(N));
}

bool divisor_exceptional(const BinaryQuadraticForm& P, i64 Q, u64 p) {
  if (p == 2) return true;
  if (Q % static_cast<i64>(p) == 0) return true;
  if (P.discriminant() % static_cast<i128>(p) == 0) return true;
  return P.alpha() % static_cast<i64>(p) == 0;
}

double divisor_stat_predicted(const BinaryQuadraticForm& P, u64 p, u64 q, i64 Q) {
  require_prime(p, "p");
  require_prime(q, "q");
  auto term = [&](u64 r) {
    if (divisor_exceptional(P, Q, r))
      throw DomainError("divisor_stat_predicted: prime " + std::to_string(r) + " divides 2 Q disc(P) P(1,0)");
    double rr = static_cast<double>(r);
    double w1 = static_cast<double>(omega_prime_power(P, r, 1)), w2 = static_cast<double>(omega_prime_power(P, r, 2));
    return (w1 / rr - w2 / (rr * rr)) * (1 - 1 / rr);
  };
  if (p == q) return term(p);
  return term(p) * term(q);
}

DivisorBound divisor_bound_probe(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, u64 l, u64 N) {
  if (l < 2) throw DomainError("divisor_bound_probe: l must be at least 2");
  if (N < 1) throw DomainError("divisor_bound_probe: N must be positive");
  if (N > kDivisorStatCap) throw ResourceError("divisor_bound_probe: N above 5000");
  if (Q < 1) throw DomainError("divisor_bound_probe: Q must be positive");
  unsigned big_omega = 0;
  for (const auto& f : factorize_word(l)) big_omega += f.exponent;
  if (big_omega > 2) throw DomainError("divisor_bound_probe: l must be a product of at most two primes");
  check_grid_range(P, Q, a, b, N);
  i128 L = l;
  u64 hits = grid_count(N, [&](i64 m, i64 n) {
    return P(static_cast<i128>(Q) * m + a, static_cast<i128>(Q) * n + b) % L == 0;
  });
  double cells = static_cast<double>(N) * static_cast<double>(N);
  return {static_cast<double>(hits) / cells, static_cast<double>(Q) * static_cast<double>(Q) / static_cast<double>(l)};
}

double weight_stability(const WeightSpec& spec, u64 N, i64 Q_max, i64 a, i64 b) {
  if (Q_max < 1 || N < 1) throw DomainError("weight_stability: N and Q_max must be positive");
  check_grid_range(spec.P1, Q_max, a, b, N);
  check_grid_range(spec.P2, Q_max, a, b, N);
  return grid_mean(N, [&](i64 m, i64 n) {
           double w0 = weight(spec, m, n), worst = 0.0;
           for (i64 Q = 1; Q <= Q_max; ++Q) {
             i128 X = static_cast<i128>(Q) * m + a, Y = static_cast<i128>(Q) * n + b;
             if (X == 0 && Y == 0) continue;
             worst = std::max(worst, std::fabs(weight(spec, X, Y) - w0));
           }
           return Complex{worst, 0.0};
         })
      .real();
}

}  // namespace prp
