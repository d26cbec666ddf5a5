#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "prpairs/averaging.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/forms.hpp"

using namespace prp;

namespace {

// w at (m, n) with the phase computed from first principles
double weight_oracle(double delta, i64 v1, i64 v2) {
  if (v1 <= 0 || v2 <= 0) return 0.0;
  double phi = std::log(static_cast<double>(v1) / static_cast<double>(v2)) / (2 * std::numbers::pi);
  while (phi >= 0.5) phi -= 1;
  while (phi < -0.5) phi += 1;
  double x = std::fabs(phi);
  if (x <= delta / 2) return 1;
  if (x >= delta) return 0;
  return 2 - 2 * x / delta;
}

// frequency of p || v and q || v over the grid, counted directly
double divisor_oracle(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, i64 p, i64 q, i64 N) {
  i64 hits = 0;
  for (i64 m = 1; m <= N; ++m)
    for (i64 n = 1; n <= N; ++n) {
      i64 v = static_cast<i64>(P(Q * m + a, Q * n + b));
      auto exact = [&](i64 r) { return v % r == 0 && v % (r * r) != 0; };
      if (exact(p) && exact(q)) ++hits;
    }
  return static_cast<double>(hits) / static_cast<double>(N * N);
}

}  // namespace

TEST_SUITE("averaging") {

TEST_CASE("trapezoid shape") {
  double d = 0.2;
  CHECK(trapezoid(d, 0.0) == 1.0);
  CHECK(trapezoid(d, d / 2) == 1.0);
  CHECK(trapezoid(d, -d / 2) == 1.0);
  CHECK(trapezoid(d, 3 * d / 4) == doctest::Approx(0.5));
  CHECK(trapezoid(d, -3 * d / 4) == doctest::Approx(0.5));
  CHECK(trapezoid(d, d) == 0.0);
  CHECK(trapezoid(d, 0.45) == 0.0);
}

TEST_CASE("weight examples") {
  WeightSpec same(0.3, BinaryQuadraticForm(1, 0, 1), BinaryQuadraticForm(1, 0, 1));
  CHECK(weight(same, 3, 7) == 1.0);
  WeightSpec s(0.3, BinaryQuadraticForm(1, 0, -2), BinaryQuadraticForm(0, 1, 0));
  CHECK(weight(s, 1, 1) == 0.0);  // P1(1,1) = -1
  CHECK_THROWS_AS(weight(s, 0, 0), DomainError);
  CHECK_THROWS_AS(WeightSpec(0.5, BinaryQuadraticForm(1, 0, 1), BinaryQuadraticForm(1, 0, 1)), DomainError);
  CHECK_THROWS_AS(WeightSpec(0.0, BinaryQuadraticForm(1, 0, 1), BinaryQuadraticForm(1, 0, 1)), DomainError);
}

TEST_CASE("weight at phase 3 delta / 4 is one half") {
  // P1 / P2 = exp(2 pi * 3 delta / 4) on the real point (x, 1) of P1 = x^2, P2 = 1
  double delta = 0.2;
  double ratio = std::exp(2 * std::numbers::pi * 0.75 * delta);
  WeightSpec s(delta, BinaryQuadraticForm(1, 0, 0), BinaryQuadraticForm(0, 0, 1));
  CHECK(weight_real(s, std::sqrt(ratio), 1.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("weight matches the oracle on a grid") {
  WeightSpec s(0.3, BinaryQuadraticForm(1, 0, 2), BinaryQuadraticForm(0, 2, 0));
  WeightSpec t(0.1, BinaryQuadraticForm(1, 0, -2), BinaryQuadraticForm(0, 1, 0));
  for (i64 m = 1; m <= 80; ++m)
    for (i64 n = 1; n <= 80; ++n) {
      CHECK(weight(s, m, n) == doctest::Approx(weight_oracle(0.3, m * m + 2 * n * n, 2 * m * n)).epsilon(1e-12));
      CHECK(weight(t, m, n) == doctest::Approx(weight_oracle(0.1, m * m - 2 * n * n, m * n)).epsilon(1e-12));
    }
}

TEST_CASE("mu estimates") {
  WeightSpec same(0.3, BinaryQuadraticForm(1, 0, 1), BinaryQuadraticForm(1, 0, 1));
  CHECK(mu_grid(same, 500) == 1.0);
  WeightSpec s(0.3, BinaryQuadraticForm(1, 0, 2), BinaryQuadraticForm(0, 2, 0));
  auto e = mu_estimate(s, 1500);
  CHECK(e.grid >= 0.001);
  CHECK(std::fabs(e.grid - e.riemann) <= 0.01);
  WeightSpec r(0.3, BinaryQuadraticForm(1, 0, -2), BinaryQuadraticForm(0, 1, 0));
  auto f = mu_estimate(r, 1500);
  CHECK(f.grid > 0);
  CHECK(std::fabs(f.grid - f.riemann) <= 0.01);
  CHECK_THROWS_AS(mu_grid(s, 50), DomainError);
}

TEST_CASE("Folner enumeration sizes and membership") {
  auto two = folner_enumerate(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].expand() == 8);
  CHECK(two[1].expand() == 16);
  auto three = folner_enumerate(3);
  CHECK(three.size() == 9);
  for (const auto& e : three) {
    CHECK(in_phi_K(e, 3));
    for (const auto& [p, k] : e.exponents) {
      CHECK((p == 2 || p == 3));
      CHECK(k >= 4);
      CHECK(k <= 6);
    }
  }
  CHECK(folner_enumerate(4).size() == 16);
  CHECK(folner_enumerate(7).size() == 7 * 7 * 7 * 7);
  CHECK_THROWS_AS(folner_enumerate(8), ResourceError);
  FolnerElement bad{{{2, 3}, {3, 4}}};
  CHECK_FALSE(in_phi_K(bad, 3));
}

TEST_CASE("Folner averages in closed form") {
  CHECK(std::abs(folner_average(liouville(), 3) - Complex(1.0 / 9, 0)) <= 1e-12);
  CHECK(std::abs(folner_average(liouville(), 4)) <= 1e-12);
  CHECK(std::abs(folner_average(principal(), 5) - Complex(1, 0)) <= 1e-12);
  // f(2) = e(1/3), f(3) = i, f(5) = -1, f(p) = 1 otherwise: product of per-prime geometric means
  std::map<u64, Complex> vals = {{2, std::polar(1.0, 2 * std::numbers::pi / 3)}, {3, Complex(0, 1)}, {5, Complex(-1, 0)}};
  auto f = from_prime_values("zeta", vals);
  for (u64 K : {3ull, 5ull, 6ull}) {
    Complex expect = 1;
    for (const auto& [p, z] : vals) {
      if (p > K) continue;
      Complex s = 0;
      for (u64 a = K + 1; a <= 2 * K; ++a) s += std::pow(z, static_cast<double>(a));
      expect *= s / static_cast<double>(K);
    }
    CHECK(std::abs(folner_average(f, K) - expect) <= 1e-12);
  }
}

TEST_CASE("Folner sampling is deterministic and lands in Phi_K") {
  auto a = folner_sample(12, 50, 7), b = folner_sample(12, 50, 7), c = folner_sample(12, 50, 8);
  REQUIRE(a.size() == 50);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].exponents == b[i].exponents);
    CHECK(in_phi_K(a[i], 12));
    differs |= a[i].exponents != c[i].exponents;
  }
  CHECK(differs);
  Complex s = folner_average_sampled(liouville(), 12, 2000, 1);
  CHECK(std::abs(s) < 0.1);
}

TEST_CASE("partner Folner sets") {
  BinaryQuadraticForm P1(1, 0, 1), P2(1, 0, 2);
  auto one = folner_partner(5, 1, P1, P2);
  // partner set 1 below 5 is {5}; exponents in (5, 7]
  REQUIRE(one.size() == 2);
  for (const auto& e : one) {
    REQUIRE(e.exponents.size() == 1);
    CHECK(e.exponents.begin()->first == 5);
    CHECK(e.exponents.begin()->second > 5);
    CHECK(e.exponents.begin()->second <= 7);
  }
  auto two = folner_partner(5, 2, P1, P2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].exponents.begin()->first == 3);
  CHECK_THROWS_AS(folner_partner(5, 3, P1, P2), DomainError);
}

TEST_CASE("divisor statistics: examples") {
  BinaryQuadraticForm P(1, 0, 1);
  CHECK(divisor_stat_exact(P, 1, 0, 0, 5, 5, 2000) == doctest::Approx(0.256).epsilon(0.01 / 0.256));
  CHECK(divisor_stat_exact(P, 1, 0, 0, 3, 3, 1000) == 0.0);
  CHECK(std::fabs(divisor_stat_exact(P, 1, 0, 0, 5, 13, 2000) - 0.256 * 0.1311) <= 0.01);
  CHECK(divisor_stat_predicted(P, 5, 5) == doctest::Approx(32.0 / 125));
  CHECK(divisor_stat_predicted(P, 13, 13) == doctest::Approx(288.0 / 2197));
  CHECK(divisor_stat_predicted(P, 5, 13) == doctest::Approx(32.0 / 125 * 288.0 / 2197));
  CHECK_THROWS_AS(divisor_stat_predicted(P, 2, 5), DomainError);
  CHECK_THROWS_AS(divisor_stat_predicted(P, 5, 6), DomainError);
  CHECK_THROWS_AS(divisor_stat_exact(P, 1, 0, 0, 5, 5, 6000), ResourceError);
}

TEST_CASE("divisor statistics match the direct count") {
  BinaryQuadraticForm P(1, 1, 3);
  for (auto [p, q] : {std::pair<i64, i64>{3, 3}, {5, 7}, {11, 13}, {3, 5}})
    CHECK(divisor_stat_exact(P, 2, 1, 0, static_cast<u64>(p), static_cast<u64>(q), 300) ==
          divisor_oracle(P, 2, 1, 0, p, q, 300));
}

TEST_CASE("divisor statistics approach the prediction") {
  BinaryQuadraticForm P(1, 0, 1);
  const u64 primes[] = {5, 13, 17, 29};
  for (i64 Q : {1, 12})
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        double exact = divisor_stat_exact(P, Q, 1, 0, primes[i], primes[j], 2000);
        double pred = divisor_stat_predicted(P, primes[i], primes[j], Q);
        CHECK(std::fabs(exact - pred) <= 0.01);
      }
}

TEST_CASE("divisor bound probe") {
  BinaryQuadraticForm P(1, 0, 1);
  auto a = divisor_bound_probe(P, 1, 0, 0, 5, 1000);
  CHECK(a.reference == doctest::Approx(0.2));
  CHECK(a.exact == doctest::Approx(0.36));
  auto b = divisor_bound_probe(P, 1, 0, 0, 10007ull * 10009ull, 2000);
  CHECK(b.exact == 0.0);
  auto c = divisor_bound_probe(P, 1, 0, 0, 4999, 2000);
  CHECK(c.exact <= 10.0 / 4999);
  CHECK_THROWS_AS(divisor_bound_probe(P, 1, 0, 0, 30, 100), DomainError);
}

TEST_CASE("weight stability shrinks with N") {
  WeightSpec s(0.3, BinaryQuadraticForm(1, 0, 2), BinaryQuadraticForm(0, 2, 0));
  double small = weight_stability(s, 500);
  double large = weight_stability(s, 2000);
  CHECK(large <= 0.05);
  CHECK(large < small);
}

}
