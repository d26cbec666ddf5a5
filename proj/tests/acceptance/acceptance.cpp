// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prpairs/arith.hpp"
#include "prpairs/averaging.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/experiments.hpp"
#include "prpairs/forms.hpp"
#include "prpairs/multfunc.hpp"
#include "prpairs/parallel.hpp"
#include "prpairs/regularity.hpp"
#include "prpairs/rings.hpp"

using namespace prp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// independent helpers ------------------------------------------------------

i64 omega_scan(const BinaryQuadraticForm& P, i64 r) {
  i64 c = 0;
  for (i64 n = 0; n < r; ++n) {
    i64 v = ((P.alpha() % r) * ((n * n) % r) + (P.beta() % r) * n + P.gamma()) % r;
    if (v == 0) ++c;
  }
  return c;
}

i64 gcd_i(i64 a, i64 b) {
  a = std::abs(a), b = std::abs(b);
  while (b) a = std::exchange(b, a % b);
  return a;
}

bool is_square_i(i64 v) {
  if (v < 0) return false;
  auto r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(v))));
  for (i64 s = std::max<i64>(0, r - 2); s <= r + 2; ++s)
    if (s * s == v) return true;
  return false;
}

int legendre_scan(i64 a, i64 p) {
  i64 x = ((a % p) + p) % p;
  if (x == 0) return 0;
  for (i64 y = 1; y < p; ++y)
    if ((y * y) % p == x) return 1;
  return -1;
}

// sum_{d | k} chi_{-4}(d)
i64 gaussian_ideal_count(i64 k) {
  i64 s = 0;
  for (i64 d = 1; d <= k; ++d)
    if (k % d == 0 && d % 2 == 1) s += (d % 4 == 1) ? 1 : -1;
  return s;
}

// Liouville by smallest-prime-factor sieve
std::vector<signed char> liouville_table(u64 limit) {
  std::vector<u32> spf(limit + 1, 0);
  std::vector<signed char> lam(limit + 1, 1);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf[i] == 0)
      for (u64 j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<u32>(i);
    lam[i] = static_cast<signed char>(-lam[i / spf[i]]);
  }
  return lam;
}

double direct_liouville_corr(u64 N) {
  auto lam = liouville_table(2 * N * N);
  double s = 0;
  for (u64 m = 1; m <= N; ++m)
    for (u64 n = 1; n <= N; ++n) s += lam[m * m + n * n] * lam[2 * m * n];
  return s / static_cast<double>(N * N);
}

}  // namespace

int main() {
  set_thread_count(0);

  criterion(1, "parametric identities", [] {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<EquationTriple> triples = {{1, 2, 1}, {2, 1, 1}, {1, 1, 2}, {1, -1, 1}, {1, 1, 8}, {3, 1, 2}};
    u64 checked = 0, bad = 0, families = 0;
    std::ostringstream which;
    for (const auto& t : triples) {
      which << t.to_string() << ":";
      for (Family fam : {Family::A, Family::ASwapped, Family::B, Family::C}) {
        std::optional<ParametricFamily> pf;
        try {
          pf = parametric_family(t, fam);
        } catch (const DomainError&) {
          continue;
        }
        ++families;
        which << to_string(fam) << " ";
        for (i64 k = 1; k <= 30; ++k)
          for (i64 m = 1; m <= 30; ++m)
            for (i64 n = 1; n <= 30; ++n) {
              Solution s = (*pf)(k, m, n);
              ++checked;
              if (t.a * s.x * s.x + t.b * s.y * s.y != t.c * s.z * s.z) ++bad;
            }
      }
      which << " ";
    }
    double secs = elapsed_since(t0);
    return Outcome{bad == 0 && families > 0 && secs < 1.0,
                   std::to_string(checked) + " triples from " + std::to_string(families) + " families (" +
                       which.str() + "), " + std::to_string(bad) + " failures, " + fmt(secs) + "s"};
  });

  criterion(2, "classifier golden table", [] {
    struct Row {
      EquationTriple t;
      Status want;
    };
    const std::vector<Row> table = {{{1, 2, 1}, Status::PR_UNCONDITIONAL},
                                    {{1, 1, 2}, Status::PR_CONDITIONAL_ON_C2QUADRATIC},
                                    {{1, 2, 6}, Status::NOT_PR},
                                    {{3, 5, 30}, Status::NOT_PR},
                                    {{1, 17, 34}, Status::UNKNOWN},
                                    {{8, 3, 66}, Status::UNKNOWN},
                                    {{5, 7, 105}, Status::UNKNOWN}};
    int bad = 0;
    std::ostringstream d;
    for (const auto& r : table) {
      Status got = classify(r.t, Pair::XY).status;
      if (got != r.want) {
        ++bad;
        d << r.t.to_string() << " gave " << to_string(got) << "; ";
      }
    }
    d << bad << " mismatches of " << table.size();
    return Outcome{bad == 0, d.str()};
  });

  criterion(3, "obstruction soundness", [] {
    auto t0 = std::chrono::steady_clock::now();
    auto r1 = verify_no_monochromatic(EquationTriple(1, 2, 6), Coloring::two_adic_sign(), 2000);
    auto r2 = verify_no_monochromatic(EquationTriple(3, 5, 30), Coloring::dyadic(6), 2000);
    double secs = elapsed_since(t0);
    bool ok = r1.solutions >= 1 && r1.monochromatic == 0 && r2.solutions >= 1 && r2.monochromatic == 0 && secs < 60;
    return Outcome{ok, "(1,2,6) two-adic: " + std::to_string(r1.solutions) + " solutions, " +
                           std::to_string(r1.monochromatic) + " monochromatic; (3,5,30) dyadic:6: " +
                           std::to_string(r2.solutions) + " solutions, " + std::to_string(r2.monochromatic) +
                           " monochromatic; " + fmt(secs) + "s"};
  });

  criterion(4, "omega oracle equivalence", [] {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<i64> c(-20, 20);
    std::vector<BinaryQuadraticForm> forms;
    while (forms.size() < 200) {
      i64 a = c(rng), b = c(rng), g = c(rng);
      if (a == 0 || is_square_i(b * b - 4 * a * g)) continue;
      forms.emplace_back(a, b, g);
    }
    u64 fast_checks = 0, fast_bad = 0;
    for (const auto& P : forms)
      for (u64 p : primes_up_to(100)) {
        ++fast_checks;
        if (static_cast<i64>(omega_prime_fast(P, p)) != omega_scan(P, static_cast<i64>(p))) ++fast_bad;
      }
    u64 mult_checks = 0, mult_bad = 0;
    std::uniform_int_distribution<i64> rs(1, 500);
    for (std::size_t i = 0; i < 40; ++i) {
      const auto& P = forms[i];
      for (int t = 0; t < 25; ++t) {
        i64 r = rs(rng), s = rs(rng);
        if (gcd_i(r, s) != 1) continue;
        ++mult_checks;
        u64 whole = omega(P, static_cast<u64>(r * s));
        if (whole != omega(P, static_cast<u64>(r)) * omega(P, static_cast<u64>(s)) ||
            static_cast<i64>(whole) != omega_scan(P, r * s))
          ++mult_bad;
      }
    }
    return Outcome{fast_bad == 0 && mult_bad == 0,
                   std::to_string(fast_checks) + " prime checks with " + std::to_string(fast_bad) + " failures; " +
                       std::to_string(mult_checks) + " coprime products with " + std::to_string(mult_bad) +
                       " failures"};
  });

  criterion(5, "divisor statistics", [] {
    auto t0 = std::chrono::steady_clock::now();
    BinaryQuadraticForm P(1, 0, 1);
    double w55 = divisor_stat_exact(P, 1, 0, 0, 5, 5, 2000);
    double w1313 = divisor_stat_exact(P, 1, 0, 0, 13, 13, 2000);
    double w513 = divisor_stat_exact(P, 1, 0, 0, 5, 13, 2000);
    double secs = elapsed_since(t0);
    double e1 = std::fabs(w55 - 0.256), e2 = std::fabs(w1313 - 0.13108), e3 = std::fabs(w513 - w55 * w1313);
    bool ok = e1 <= 0.01 && e2 <= 0.01 && e3 <= 0.01 && secs < 30;
    return Outcome{ok, "w(5,5)=" + fmt(w55) + " w(13,13)=" + fmt(w1313) + " w(5,13)=" + fmt(w513) +
                           " product=" + fmt(w55 * w1313) + "; " + fmt(secs) + "s"};
  });

  criterion(6, "Gaussian counting identity", [] {
    u64 id_bad = 0;
    for (i64 k = 1; k <= 1000; ++k) {
      u64 c = count_solutions(1, k, 40);
      i64 oracle = gaussian_ideal_count(k);
      if (c != 4 * count_ideals(1, static_cast<u64>(k)) || static_cast<i64>(c) != 4 * oracle) ++id_bad;
    }
    u64 ineq_bad = 0;
    for (i64 d : {1, 2, 5})
      for (i64 k = 1; k <= 500; ++k)
        if (count_solutions(d, k, 40) > 4 * count_ideals(d, static_cast<u64>(k))) ++ineq_bad;
    return Outcome{id_bad == 0 && ineq_bad == 0, "identity failures " + std::to_string(id_bad) + " of 1000; " +
                                                     "inequality failures " + std::to_string(ineq_bad) + " of 1500"};
  });

  criterion(7, "Folner closed forms", [] {
    Complex a3 = folner_average(liouville(), 3), a4 = folner_average(liouville(), 4);
    double e3 = std::abs(a3 - Complex(1.0 / 9, 0)), e4 = std::abs(a4);
    return Outcome{e3 <= 1e-12 && e4 <= 1e-12, "K=3: " + fmt(a3.real()) + " (err " + fmt(e3) + "); K=4: " +
                                                   fmt(a4.real()) + " (err " + fmt(e4) + ")"};
  });

  criterion(8, "concentration exact zeros", [] {
    BinaryQuadraticForm P(1, 0, 1);
    auto chi = dirichlet_character(4, 1);
    ConcentrationSetup s{P, character_lift(chi), TwistData{0.0, chi}, {{2, 4}, {3, 4}}, 1, 0, 1, 4, 1000};
    double lhs = concentration_lhs(s);
    ExponentMap Q;
    for (u64 p : primes_up_to(3)) Q[p] = 1;
    ConcentrationSetup one{P, principal(), TwistData{0.0, dirichlet_character(1, 0)}, Q, 1, 0, std::nullopt, 3, 1000};
    double lhs1 = concentration_lhs(one);
    return Outcome{lhs <= 1e-12 && lhs1 == 0.0, "chi mod 4 lift: " + fmt(lhs) + "; f = 1: " + fmt(lhs1)};
  });

  criterion(9, "Turan-Kubilius monitored bound", [] {
    BinaryQuadraticForm P(1, 0, 1);
    ExponentMap Q;
    for (u64 p : primes_up_to(10)) Q[p] = 1;
    ConcentrationSetup setup{P, principal(), TwistData{0.0, dirichlet_character(1, 0)}, Q, 1, 0, std::nullopt, 10,
                             2500};
    std::map<u64, Complex> vals;
    for (u64 p : primes_up_to(50))
      if (p > 10 && in_script_P(P, p)) vals[p] = 1.0;
    auto h = AdditiveFunction::on_primes("indicator of split primes in (10, 50]", vals);
    double var = tk_variance(setup, h);
    double rhs = 10 * (D2_additive(h, 10, 50) + 0.1);
    return Outcome{var <= rhs, "variance " + fmt(var) + " <= " + fmt(rhs)};
  });

  criterion(10, "aperiodic decay trends", [] {
    auto t0 = std::chrono::steady_clock::now();
    BinaryQuadraticForm P(1, 0, 1);
    RegionSpec all;
    // lambda(2mn) = lambda(2) lambda(m) lambda(n)
    auto corr = [&](u64 N) {
      return -correlation_probe({{liouville(), {1, 0}}, {liouville(), {0, 1}}}, liouville(), P, all, 1, 0, 0, N);
    };
    Complex c500 = corr(500), c2000 = corr(2000), c4000 = corr(4000);
    double direct = direct_liouville_corr(500);
    Complex conj = pair_correlation(liouville(), P, liouville(), BinaryQuadraticForm(1, 0, 2), 2000);
    double secs = elapsed_since(t0);
    bool ok = std::abs(c4000) <= 0.05 && std::abs(c2000) <= std::max(std::abs(c500), 0.05) &&
              std::fabs(c500.real() - direct) <= 1e-12 && secs < 300;
    return Outcome{ok, "|N=500| " + fmt(std::abs(c500)) + " (direct " + fmt(direct) + "), |N=2000| " +
                           fmt(std::abs(c2000)) + ", |N=4000| " + fmt(std::abs(c4000)) +
                           "; report only: E lambda(m^2+n^2) lambda(m^2+2n^2) at N=2000 = " + fmt(conj.real()) +
                           "; " + fmt(secs) + "s"};
  });

  criterion(11, "congruence pair construction", [] {
    BinaryQuadraticForm P1(1, 0, 1), P2(1, 0, 2);
    auto cp = construct_congruence_pair(P1, P2, 2, 5, {{5, 1}, {3, 1}});
    BigInt Q = 1;
    for (u64 p : {2u, 3u, 5u})
      for (int k = 0; k < 10; ++k) Q *= p;
    BigInt v1 = P1.eval_big(cp.a, cp.b), v2 = P2.eval_big(cp.a, cp.b);
    bool ok = cp.Q == Q && cp.a >= 1 && cp.a <= Q && cp.b >= 1 && cp.b <= Q && (v1 - 1) % 2 == 0 &&
              (v2 - 1) % 2 == 0 && boost::multiprecision::gcd(v1, Q) == 5 && boost::multiprecision::gcd(v2, Q) == 3;
    return Outcome{ok, "a=" + cp.a.str() + " b=" + cp.b.str() + " Q=" + cp.Q.str() + " gcd(P1,Q)=" +
                           BigInt(boost::multiprecision::gcd(v1, Q)).str() + " gcd(P2,Q)=" +
                           BigInt(boost::multiprecision::gcd(v2, Q)).str()};
  });

  criterion(12, "split prime golden values", [] {
    struct Case {
      std::vector<i64> F1, F2;
      u64 want;
    };
    const std::vector<Case> cases = {{{-1}, {2}, 5}, {{2}, {3}, 7}, {{}, {-1}, 3}};
    std::ostringstream d;
    bool ok = true;
    for (const auto& c : cases) {
      auto p = find_split_prime(c.F1, c.F2, 1000);
      bool good = p && *p == c.want;
      if (p)
        for (i64 e : c.F1) good &= jacobi(e, *p) == 1 && legendre_scan(e, static_cast<i64>(*p)) == 1;
      if (p)
        for (i64 e : c.F2) good &= jacobi(e, *p) == -1 && legendre_scan(e, static_cast<i64>(*p)) == -1;
      ok &= good;
      d << (p ? std::to_string(*p) : std::string("none")) << (good ? " ok; " : " WRONG; ");
    }
    return Outcome{ok, d.str()};
  });

  criterion(13, "weight positivity", [] {
    WeightSpec spec(0.3, BinaryQuadraticForm(1, 0, 2), BinaryQuadraticForm(0, 2, 0));
    auto e = mu_estimate(spec, 1500);
    double gap = std::fabs(e.grid - e.riemann);
    return Outcome{e.grid >= 0.001 && gap <= 0.01,
                   "grid " + fmt(e.grid) + ", riemann " + fmt(e.riemann) + ", gap " + fmt(gap)};
  });

  criterion(14, "level-set existence", [] {
    const double t = 0.7, w = 0.3;
    BinaryQuadraticForm P1(1, -2, -1), P2(1, 2, -1);
    LevelSetSpec spec(archimedean(t), w);
    auto hit = level_set_search(spec, P1, P2, 500, 60);
    if (!hit) return Outcome{false, "no hit"};
    i128 r = static_cast<i128>(hit->k) * P1(hit->m, hit->n), s = static_cast<i128>(hit->k) * P2(hit->m, hit->n);
    auto angle = [&](i128 v) { return std::remainder(t * std::log(static_cast<double>(v)), 2 * std::numbers::pi); };
    bool ok = hit->k <= 500 && hit->m <= 60 && hit->n <= 60 && r > 0 && s > 0 && to_big(r) == hit->r &&
              to_big(s) == hit->s && std::fabs(angle(r)) < w && std::fabs(angle(s)) < w;
    return Outcome{ok, "k=" + std::to_string(hit->k) + " m=" + std::to_string(hit->m) + " n=" +
                           std::to_string(hit->n) + " r=" + hit->r.str() + " s=" + hit->s.str() + " arg f(r)=" +
                           fmt(angle(r)) + " arg f(s)=" + fmt(angle(s)) + " half width " + fmt(w)};
  });

  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
