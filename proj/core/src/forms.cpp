#include "prpairs/forms.hpp"

#include <algorithm>
#include <set>

#include "prpairs/errors.hpp"

namespace prp {

namespace bmp = boost::multiprecision;

BinaryQuadraticForm::BinaryQuadraticForm(i64 alpha, i64 beta, i64 gamma) : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (alpha == 0 && beta == 0 && gamma == 0) throw DomainError("quadratic form with all coefficients zero");
}

i128 BinaryQuadraticForm::discriminant() const {
  return static_cast<i128>(beta_) * beta_ - 4 * static_cast<i128>(alpha_) * gamma_;
}

SquarefreeDecomposition BinaryQuadraticForm::squarefree_data() const {
  i128 v = -discriminant();
  if (v == 0) throw DomainError("form has zero discriminant");
  return squarefree_part(to_big(v));
}

bool BinaryQuadraticForm::is_irreducible() const { return alpha_ != 0 && !is_square(discriminant()); }

i128 BinaryQuadraticForm::operator()(i128 m, i128 n) const {
  return static_cast<i128>(alpha_) * m * m + static_cast<i128>(beta_) * m * n + static_cast<i128>(gamma_) * n * n;
}

BigInt BinaryQuadraticForm::eval_big(const BigInt& m, const BigInt& n) const {
  return BigInt(alpha_) * m * m + BigInt(beta_) * m * n + BigInt(gamma_) * n * n;
}

u64 BinaryQuadraticForm::eval_mod(u64 n, u64 r) const {
  if (r == 1) return 0;
  auto red = [r](i64 c) { return static_cast<u64>(floor_mod(static_cast<i128>(c), static_cast<i128>(r))); };
  u64 x = n % r;
  u128 v = static_cast<u128>(red(alpha_)) * mulmod(x, x, r) % r;
  v += static_cast<u128>(red(beta_)) * x % r;
  v += red(gamma_);
  return static_cast<u64>(v % r);
}

std::string BinaryQuadraticForm::to_string() const {
  return "[" + std::to_string(alpha_) + "," + std::to_string(beta_) + "," + std::to_string(gamma_) + "]";
}

std::string LinearForm::to_string() const { return "[" + std::to_string(u) + "," + std::to_string(v) + "]"; }

bool independent(const LinearForm& a, const LinearForm& b) {
  return static_cast<i128>(a.u) * b.v - static_cast<i128>(a.v) * b.u != 0;
}

i128 eval_form(const BinaryQuadraticForm& P, i128 m, i128 n) { return P(m, n); }

namespace {

u64 checked_pow(u64 p, unsigned k) {
  u128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= p;
    if (r >> 63) throw ResourceError("prime power exceeds 63 bits");
  }
  return static_cast<u64>(r);
}

std::vector<u64> roots_mod_prime(const BinaryQuadraticForm& P, u64 p) {
  std::vector<u64> out;
  if (p < 64) {
    for (u64 n = 0; n < p; ++n)
      if (P.eval_mod(n, p) == 0) out.push_back(n);
    return out;
  }
  auto red = [p](i64 c) { return static_cast<u64>(floor_mod(static_cast<i128>(c), static_cast<i128>(p))); };
  u64 a = red(P.alpha()), b = red(P.beta()), c = red(P.gamma());
  if (a == 0) {
    if (b != 0) {
      out.push_back(mulmod((p - c) % p, invmod(b, p), p));
    } else if (c == 0) {
      throw ResourceError("every residue is a root; listing exceeds the root cap");
    }
    return out;
  }
  u64 disc = (mulmod(b, b, p) + p - mulmod(4 % p, mulmod(a, c, p), p)) % p;
  auto s = sqrtmod(disc, p);
  if (!s) return out;
  u64 inv2a = invmod(mulmod(2, a, p), p);
  u64 r1 = mulmod((p - b + *s) % p, inv2a, p);
  u64 r2 = mulmod((2 * p - b - *s) % p, inv2a, p);
  out.push_back(std::min(r1, r2));
  if (r1 != r2) out.push_back(std::max(r1, r2));
  return out;
}

}  // namespace

std::vector<u64> roots_mod_prime_power(const BinaryQuadraticForm& P, u64 p, unsigned k) {
  if (k == 0) return {0};
  checked_pow(p, k);
  std::vector<u64> roots = roots_mod_prime(P, p);
  u64 pj = p;
  for (unsigned j = 1; j < k; ++j) {
    u64 pj1 = pj * p;
    std::vector<u64> next;
    for (u64 x : roots) {
      u64 deriv = static_cast<u64>(floor_mod(2 * static_cast<i128>(P.alpha()) * x + P.beta(), static_cast<i128>(p)));
      u64 val = P.eval_mod(x, pj1);
      if (deriv != 0) {
        u64 q = (val / pj) % p;
        u64 t = mulmod((p - q) % p, invmod(deriv, p), p);
        next.push_back(x + t * pj);
      } else if (val == 0) {
        if (next.size() + p > kRootListCap) throw ResourceError("root list exceeds cap");
        for (u64 t = 0; t < p; ++t) next.push_back(x + t * pj);
      }
    }
    std::sort(next.begin(), next.end());
    roots = std::move(next);
    pj = pj1;
  }
  return roots;
}

u64 omega_prime_power(const BinaryQuadraticForm& P, u64 p, unsigned e) {
  // divide out the p-part of the content first
  unsigned c = 0;
  i64 a = P.alpha(), b = P.beta(), g = P.gamma();
  auto divisible = [p](i64 x) { return static_cast<i128>(x) % static_cast<i128>(p) == 0; };
  while (c < e && divisible(a) && divisible(b) && divisible(g)) {
    a /= static_cast<i64>(p);
    b /= static_cast<i64>(p);
    g /= static_cast<i64>(p);
    ++c;
  }
  if (c == e) return checked_pow(p, e);
  BinaryQuadraticForm reduced(a, b, g);
  return checked_pow(p, c) * roots_mod_prime_power(reduced, p, e - c).size();
}

u64 omega(const BinaryQuadraticForm& P, u64 r) {
  if (r == 0) throw DomainError("omega: r = 0");
  if (r <= kOmegaScanLimit) {
    u64 count = 0;
    for (u64 n = 0; n < r; ++n)
      if (P.eval_mod(n, r) == 0) ++count;
    return count;
  }
  u64 total = 1;
  for (const auto& f : factorize_word(r)) total *= omega_prime_power(P, static_cast<u64>(f.prime), f.exponent);
  return total;
}

unsigned omega_prime_fast(const BinaryQuadraticForm& P, u64 p) {
  if (!P.is_irreducible()) throw DomainError("omega_prime_fast: form is reducible");
  auto sf = P.squarefree_data();
  BigInt bp = p;
  bool exceptional = p == 2 || P.alpha() % static_cast<i128>(p) == 0 || sf.d % bp == 0 || sf.r % bp == 0;
  if (exceptional) {
    if (p <= kOmegaScanLimit) return static_cast<unsigned>(omega(P, p));
    return static_cast<unsigned>(omega_prime_power(P, p, 1));
  }
  // D = -d r^2, so roots exist iff -d is a residue
  return jacobi(BigInt(-sf.d), bp) == 1 ? 2u : 0u;
}

bool in_script_P(const BinaryQuadraticForm& P, u64 p) { return omega_prime_power(P, p, 1) > 0; }

BigInt hensel_lift(const BinaryQuadraticForm& P, u64 p, u64 root, unsigned k) {
  if (k == 0) throw DomainError("hensel_lift: k must be positive");
  BigInt bp = p;
  BigInt x = BigInt(root) % bp;
  auto value = [&](const BigInt& v) { return P.eval_big(v, BigInt(1)); };
  auto fm = [](BigInt a, const BigInt& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
  };
  if (fm(value(x), bp) != 0) throw DomainError("hensel_lift: not a root modulo p");
  BigInt deriv = fm(2 * BigInt(P.alpha()) * x + P.beta(), bp);
  if (deriv == 0) throw DomainError("hensel_lift: singular root");
  BigInt inv = invmod(deriv, bp);
  BigInt pj = bp;
  for (unsigned j = 1; j < k; ++j) {
    BigInt q = fm(value(x) / pj, bp);
    BigInt t = fm(-q * inv, bp);
    x += t * pj;
    pj *= bp;
  }
  return fm(x, pj);
}

PartnerPrimeSets partner_prime_sets(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2, u64 bound,
                                    const std::vector<u64>& excluded) {
  if (P1 == P2) throw DomainError("partner_prime_sets: forms must differ");
  if (!P1.is_irreducible() || !P2.is_irreducible()) throw DomainError("partner_prime_sets: forms must be irreducible");
  std::set<u64> skip(excluded.begin(), excluded.end());
  PartnerPrimeSets out;
  for (u64 p : primes_up_to(bound)) {
    if (skip.count(p)) continue;
    unsigned w1 = omega_prime_fast(P1, p), w2 = omega_prime_fast(P2, p);
    if (w1 == 2 && w2 == 0) out.first.push_back(p);
    if (w1 == 0 && w2 == 2) out.second.push_back(p);
  }
  return out;
}

std::vector<u64> congruence_exceptional_primes(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                                               unsigned r) {
  if (!P1.is_monic() || !P2.is_monic()) throw DomainError("congruence pair: forms must be monic in m");
  BigInt a1 = P1.beta(), b1 = P1.gamma(), a2 = P2.beta(), b2 = P2.gamma();
  BigInt A = 2 * b1 * b2 * (a1 * a1 - 4 * b1) * (a2 * a2 - 4 * b2) * P1.eval_big(b2 - b1, a1 - a2);
  std::set<u64> F;
  for (u64 p : primes_up_to(r)) F.insert(p);
  if (A != 0) {
    for (const auto& f : factorize(A).factors) {
      if (bmp::msb(f.prime) >= 64) throw ResourceError("exceptional prime exceeds 64 bits");
      F.insert(static_cast<u64>(f.prime));
    }
  }
  return {F.begin(), F.end()};
}

LocalSolution local_partner_solution(const BinaryQuadraticForm& P_own, u64 p, unsigned l) {
  if (l == 0) throw DomainError("local_partner_solution: l must be positive");
  u64 root = 0;
  bool found = false;
  for (u64 x : roots_mod_prime_power(P_own, p, 1)) {
    i128 deriv = floor_mod(2 * static_cast<i128>(P_own.alpha()) * x + P_own.beta(), static_cast<i128>(p));
    if (deriv != 0) {
      root = x;
      found = true;
      break;
    }
  }
  if (!found) throw DomainError("local_partner_solution: no nonsingular root modulo p");
  BigInt bp = p;
  BigInt pl = bmp::pow(bp, l);
  BigInt pl1 = pl * bp;
  BigInt a = hensel_lift(P_own, p, root, l);
  if (P_own.eval_big(a, 1) % pl1 == 0) a += pl;
  a %= pl1;
  return {a, pl1};
}

CongruencePair construct_congruence_pair(const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2, unsigned r,
                                         unsigned K, const ExponentMap& l) {
  if (!P1.is_monic() || !P2.is_monic()) throw DomainError("congruence pair: forms must be monic in m");
  if (!P1.is_irreducible() || !P2.is_irreducible()) throw DomainError("congruence pair: forms must be irreducible");
  if (P1 == P2) throw DomainError("congruence pair: forms must differ");
  if (r == 0 || K == 0) throw DomainError("congruence pair: r and K must be positive");

  CongruencePair out;
  out.exceptional = congruence_exceptional_primes(P1, P2, r);
  if (!out.exceptional.empty() && out.exceptional.back() > K)
    throw DomainError("congruence pair: K is below the largest exceptional prime " +
                      std::to_string(out.exceptional.back()));
  out.partners = partner_prime_sets(P1, P2, K, out.exceptional);

  std::set<u64> expected(out.partners.first.begin(), out.partners.first.end());
  expected.insert(out.partners.second.begin(), out.partners.second.end());
  std::set<u64> given;
  for (auto [p, e] : l) {
    given.insert(p);
    if (e < 1 || 2 * e > 3 * K) throw DomainError("congruence pair: l_p outside [1, 3K/2] at p = " + std::to_string(p));
  }
  if (given != expected) throw DomainError("congruence pair: l must assign exactly the partner primes up to K");

  BigInt rf = factorial(r);
  std::vector<Congruence> ca, cb;
  out.Q = 1;
  out.Q1 = 1;
  out.Q2 = 1;
  std::set<u64> first(out.partners.first.begin(), out.partners.first.end());
  std::set<u64> second(out.partners.second.begin(), out.partners.second.end());
  for (u64 p : primes_up_to(K)) {
    BigInt bp = p;
    out.Q *= bmp::pow(bp, 2 * K);
    if (first.count(p) || second.count(p)) {
      unsigned lp = l.at(p);
      auto sol = local_partner_solution(first.count(p) ? P1 : P2, p, lp);
      ca.push_back({sol.a, sol.modulus});
      cb.push_back({1, sol.modulus});
      (first.count(p) ? out.Q1 : out.Q2) *= bmp::pow(bp, lp);
    } else {
      unsigned v = 0;
      for (BigInt t = rf; t % bp == 0; t /= bp) ++v;
      unsigned e = std::max(1u, v);
      if (e > 2 * K) throw DomainError("congruence pair: r! has a prime power beyond p^(2K)");
      BigInt mod = bmp::pow(bp, e);
      ca.push_back({1, mod});
      cb.push_back({0, mod});
    }
  }
  Congruence ra = crt(ca), rb = crt(cb);
  out.a = ra.residue == 0 ? ra.modulus : ra.residue;
  out.b = rb.residue == 0 ? rb.modulus : rb.residue;

  // exact verification of both congruence families
  for (int j = 0; j < 2; ++j) {
    const auto& P = j == 0 ? P1 : P2;
    const BigInt& Qj = j == 0 ? out.Q1 : out.Q2;
    BigInt v = P.eval_big(out.a, out.b);
    BigInt residue = v % rf;
    if (residue < 0) residue += rf;
    if (residue != BigInt(1) % rf)
      throw InvariantError("congruence pair: P_" + std::to_string(j + 1) + "(a,b) is not 1 mod r!");
    if (bmp::gcd(v, out.Q) != Qj) throw InvariantError("congruence pair: gcd(P_j(a,b), Q) != Q_j");
  }
  return out;
}

}  // namespace prp
