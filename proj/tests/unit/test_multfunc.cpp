#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/multfunc.hpp"

using namespace prp;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Completely multiplicative function with uniformly random unit values at
// primes up to 100 and 1 beyond.
MultiplicativeFunction random_unit_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::map<u64, Complex> values;
  for (i64 p : oracle::primes_up_to(100)) values[static_cast<u64>(p)] = std::polar(1.0, angle(rng));
  return from_prime_values("random", values);
}

// Liouville by counting prime factors with trial division.
int liouville_oracle(i64 n) {
  n = n < 0 ? -n : n;
  int omega = 0;
  for (i64 p = 2; p * p <= n; ++p)
    while (n % p == 0) n /= p, ++omega;
  if (n > 1) ++omega;
  return omega % 2 ? -1 : 1;
}

}  // namespace

TEST_SUITE("multfunc") {

TEST_CASE("liouville and its even extension") {
  auto l = liouville();
  CHECK(l(12) == Complex(-1, 0));
  CHECK(l(-12) == Complex(-1, 0));
  CHECK(l(1) == Complex(1, 0));
  CHECK(l(0) == Complex(0, 0));
  for (i64 n = 1; n <= 3000; ++n) CHECK(l(n).real() == liouville_oracle(n));
}

TEST_CASE("archimedean character uses the direct exponential") {
  auto f = archimedean(1.0);
  Complex v = f(10);
  CHECK(near(v, std::polar(1.0, std::log(10.0))));
  CHECK(v.real() == doctest::Approx(-0.668201).epsilon(1e-5));
  CHECK(near(f(-10), v));
}

TEST_CASE("evaluate_on_exponents examples") {
  auto l = liouville();
  CHECK(l.evaluate_on_exponents({{2, 6}, {3, 6}}) == Complex(1, 0));
  CHECK(l.evaluate_on_exponents({{2, 5}, {3, 4}}) == Complex(-1, 0));
  auto chi = character_function(dirichlet_character(4, 1));
  CHECK(near(chi.evaluate_on_exponents({{3, 2}}), Complex(1, 0)));
}

TEST_CASE("evaluate_on_exponents agrees with evaluation of the expanded integer") {
  std::vector<MultiplicativeFunction> fs = {liouville(), character_function(dirichlet_character(5, 1)),
                                            character_lift(dirichlet_character(3, 1)), archimedean(0.3)};
  const u64 primes[4] = {2, 3, 5, 7};
  for (const auto& f : fs)
    for (int code = 0; code < 256; ++code) {
      ExponentMap e;
      i64 n = 1;
      for (int i = 0; i < 4; ++i) {
        unsigned k = 1 + ((code >> (2 * i)) & 3);
        e[primes[i]] = k;
        for (unsigned j = 0; j < k; ++j) n *= static_cast<i64>(primes[i]);
      }
      CHECK(near(f.evaluate_on_exponents(e), f(n), 1e-9));
    }
}

TEST_CASE("dirichlet characters: counts, orders, real values") {
  auto c4 = dirichlet_characters(4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].principal());
  CHECK(near(c4[1](3), Complex(-1, 0)));

  auto c5 = dirichlet_characters(5);
  REQUIRE(c5.size() == 4);
  std::multiset<u64> orders;
  for (const auto& c : c5) orders.insert(c.order());
  CHECK(orders == std::multiset<u64>{1, 2, 4, 4});
  CHECK(c5[0].principal());

  auto c8 = dirichlet_characters(8);
  REQUIRE(c8.size() == 4);
  for (const auto& c : c8) {
    CHECK(c.real_valued());
    for (int n = 0; n < 8; ++n) CHECK(std::abs(c(n).imag()) < 1e-15);
  }
  CHECK_THROWS_AS(dirichlet_characters(20000), ResourceError);
}

TEST_CASE("characters vanish off units, are periodic and completely multiplicative") {
  for (u64 q : {3ull, 7ull, 12ull, 15ull, 16ull, 45ull}) {
    for (const auto& chi : dirichlet_characters(q)) {
      for (i64 a = 0; a < static_cast<i64>(3 * q); ++a) {
        bool unit = oracle::gcd(a, static_cast<i64>(q)) == 1;
        CHECK((std::abs(chi(a)) > 0.5) == unit);
        if (unit) CHECK(std::abs(std::abs(chi(a)) - 1.0) < 1e-12);
        CHECK(near(chi(a), chi(a + static_cast<i64>(q))));
        for (i64 b = 0; b < static_cast<i64>(q); ++b) CHECK(near(chi(a * b), chi(a) * chi(b), 1e-9));
      }
    }
  }
}

TEST_CASE("character orthogonality for q <= 50") {
  for (u64 q = 1; q <= 50; ++q) {
    auto chars = dirichlet_characters(q);
    u64 phi = 0;
    for (u64 a = 1; a <= q; ++a) phi += oracle::gcd(static_cast<i64>(a), static_cast<i64>(q)) == 1;
    REQUIRE(chars.size() == phi);
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = 0; j < chars.size(); ++j) {
        Complex s = 0;
        for (u64 a = 0; a < q; ++a) s += chars[i](a) * std::conj(chars[j](a));
        CHECK(near(s, Complex(i == j ? static_cast<double>(phi) : 0.0, 0.0), 1e-9));
      }
  }
}

TEST_CASE("character_lift is 1 at primes dividing q") {
  auto f = character_lift(dirichlet_character(4, 1));
  CHECK(f(2) == Complex(1, 0));
  CHECK(near(f(3), Complex(-1, 0)));
  CHECK(near(f(6), Complex(-1, 0)));
  CHECK(near(f(5), Complex(1, 0)));
}

TEST_CASE("twist value is zero where the character vanishes") {
  TwistData tw{1.5, dirichlet_character(4, 1)};
  CHECK(twist_value(tw, 2) == Complex(0, 0));
  CHECK(near(twist_value(tw, 3), -std::polar(1.0, 1.5 * std::log(3.0))));
  auto f = twisted(tw);
  CHECK(near(f(9), std::polar(1.0, 1.5 * std::log(9.0))));
}

TEST_CASE("prime_patch") {
  auto f = prime_patch(10, 100, Complex(-1, 0));
  CHECK(f(7) == Complex(1, 0));
  CHECK(f(11) == Complex(-1, 0));
  CHECK(f(11 * 13) == Complex(1, 0));
  CHECK(f(101) == Complex(1, 0));
  CHECK(f(10) == Complex(1, 0));
}

TEST_CASE("product and conjugate") {
  auto f = archimedean(0.5) * character_function(dirichlet_character(5, 1));
  auto g = f.conj();
  for (i64 n = 1; n < 200; ++n) {
    CHECK(near(g(n), std::conj(f(n)), 1e-12));
    CHECK(near(f(n), std::polar(1.0, 0.5 * std::log(static_cast<double>(n))) * dirichlet_character(5, 1)(n), 1e-9));
  }
}

TEST_CASE("FunctionEvaluator matches direct evaluation") {
  std::vector<MultiplicativeFunction> fs = {liouville(), character_function(dirichlet_character(8, 3)),
                                            archimedean(1.25), prime_patch(3, 50, Complex(0, 1))};
  for (const auto& f : fs) {
    FunctionEvaluator ev(f, 20000);
    for (i64 n = -5000; n <= 5000; n += 7) CHECK(near(ev(n), f(n), 1e-12));
  }
}

TEST_CASE("distance examples") {
  auto l = liouville(), one = principal();
  CHECK(distance(l, l, 1, 100) == doctest::Approx(0.0));
  double expect = std::sqrt(2 * (1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7));
  CHECK(distance(l, one, 1, 10) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(distance(l, one, 1, 10) == doctest::Approx(1.53374).epsilon(1e-5));
  CHECK(distance(l, l, 10, 10000) == doctest::Approx(0.0));
}

TEST_CASE("distance_P examples") {
  BinaryQuadraticForm P(1, 0, 1);
  auto l = liouville(), one = principal();
  CHECK(distance_P(P, l, one, 1, 10) == doctest::Approx(std::sqrt(1.8)).epsilon(1e-12));
  CHECK(distance_P(P, l, l, 1, 1000) == doctest::Approx(0.0));
  CHECK(distance_P(P, l, one, 3, 4) == doctest::Approx(0.0));
}

TEST_CASE("distance_c examples") {
  auto l = liouville(), one = principal();
  CHECK(distance_c([](u64) { return 1.0; }, l, one, 1, 10) == doctest::Approx(distance(l, one, 1, 10)));
  CHECK(distance_c([](u64) { return 0.0; }, l, one, 1, 100) == doctest::Approx(0.0));
  auto c = [](u64 p) { return p % 4 == 1 ? 2.0 : 0.0; };
  CHECK(distance_c(c, l, one, 1, 13) == doctest::Approx(std::sqrt(4 * (1.0 / 5 + 1.0 / 13))).epsilon(1e-12));
  CHECK(distance_c(c, l, one, 1, 13) == doctest::Approx(1.052469).epsilon(1e-5));
}

TEST_CASE("distance_P triangle and product inequalities") {
  std::mt19937_64 rng(2024);
  BinaryQuadraticForm P(1, 1, 3);
  for (int i = 0; i < 50; ++i) {
    auto f = random_unit_function(rng), g = random_unit_function(rng), h = random_unit_function(rng);
    CHECK(distance_P(P, f, g, 1, 100) <= distance_P(P, f, h, 1, 100) + distance_P(P, h, g, 1, 100) + 1e-10);
    auto f2 = random_unit_function(rng), g2 = random_unit_function(rng);
    CHECK(distance_P(P, f * f2, g * g2, 1, 100) <= distance_P(P, f, g, 1, 100) + distance_P(P, f2, g2, 1, 100) + 1e-10);
  }
}

TEST_CASE("distance profile is nondecreasing") {
  auto prof = distance_profile(liouville(), principal(), 1, {10, 100, 1000, 10000});
  REQUIRE(prof.size() == 4);
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].distance >= prof[i - 1].distance);
  CHECK(prof[0].distance == doctest::Approx(distance(liouville(), principal(), 1, 10)));
}

TEST_CASE("additive functions") {
  auto h = AdditiveFunction::on_primes("h", {{5, Complex(1, 0)}, {13, Complex(0.5, 0)}});
  CHECK(h.evaluate(5) == Complex(1, 0));
  CHECK(h.evaluate(65) == Complex(1.5, 0));
  CHECK(h.evaluate(-65) == Complex(1.5, 0));
  CHECK(h.evaluate(25) == Complex(0, 0));
  CHECK(h.evaluate(1) == Complex(0, 0));
  CHECK(h.evaluate(0) == Complex(0, 0));
  for (i64 m = 1; m < 60; ++m)
    for (i64 n = 1; n < 60; ++n)
      if (oracle::gcd(m, n) == 1) CHECK(near(h.evaluate(m * n), h.evaluate(m) + h.evaluate(n)));
  CHECK(AdditiveFunction::zero().evaluate(30) == Complex(0, 0));
}

}
