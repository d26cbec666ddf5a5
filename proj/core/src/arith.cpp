#include "prpairs/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "prpairs/errors.hpp"

namespace prp {

namespace bmp = boost::multiprecision;
using u256 = bmp::uint256_t;

namespace {

constexpr std::array<u64, 13> kMillerRabinBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
constexpr u64 kRhoIterationCap = 1ull << 26;
constexpr u64 kEarlyPrimalityCheck = 1000;

// Modular arithmetic policies for the generic primality / rho code.
struct Ops64 {
  using T = u64;
  static T mul(T a, T b, T m) { return static_cast<T>(static_cast<u128>(a) * b % m); }
  static T gcd_(T a, T b) { return prp::gcd(a, b); }
};

u256 widen(u128 v) {
  u256 r = static_cast<u64>(v >> 64);
  r <<= 64;
  r |= static_cast<u64>(v);
  return r;
}

u128 narrow(const u256& v) {
  u64 lo = static_cast<u64>(v & u256(~u64{0}));
  u64 hi = static_cast<u64>((v >> 64) & u256(~u64{0}));
  return (static_cast<u128>(hi) << 64) | lo;
}

struct Ops128 {
  using T = u128;
  static T mul(T a, T b, T m) {
    if ((a >> 64) == 0 && (b >> 64) == 0) return a * b % m;
    return narrow(widen(a) * widen(b) % widen(m));
  }
  static T gcd_(T a, T b) { return prp::gcd(a, b); }
};

struct OpsBig {
  using T = BigInt;
  static T mul(const T& a, const T& b, const T& m) { return a * b % m; }
  static T gcd_(const T& a, const T& b) { return bmp::gcd(a, b); }
};

template <class Ops>
typename Ops::T pow_mod(typename Ops::T a, typename Ops::T e, const typename Ops::T& m) {
  using T = typename Ops::T;
  T r = 1 % m;
  a %= m;
  while (e != 0) {
    if ((e & 1) != 0) r = Ops::mul(r, a, m);
    a = Ops::mul(a, a, m);
    e >>= 1;
  }
  return r;
}

template <class Ops>
bool miller_rabin(const typename Ops::T& n) {
  using T = typename Ops::T;
  if (n < 2) return false;
  for (u64 p : kMillerRabinBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  T d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  T nm1 = n - 1;
  for (u64 base : kMillerRabinBases) {
    T x = pow_mod<Ops>(T(base), d, n);
    if (x == 1 || x == nm1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = Ops::mul(x, x, n);
      if (x == nm1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

template <class Ops>
typename Ops::T abs_diff(const typename Ops::T& a, const typename Ops::T& b) {
  return a > b ? a - b : b - a;
}

// Brent's variant, deterministic sequence of increments c = 1, 2, ...
template <class Ops>
typename Ops::T pollard_brent(const typename Ops::T& n) {
  using T = typename Ops::T;
  if (n % 2 == 0) return 2;
  for (u64 c = 1; c < 64; ++c) {
    T cc = T(c) % n;
    auto step = [&](const T& v) {
      T t = Ops::mul(v, v, n);
      return t >= n - cc ? T(t - (n - cc)) : T(t + cc);
    };
    T y = 2, x = 2, ys = 2, q = 1, g = 1;
    u64 r = 1, iterations = 0;
    const u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = Ops::mul(q, abs_diff<Ops>(x, y), n);
        }
        g = Ops::gcd_(q, n);
        k += m;
      }
      iterations += r;
      r <<= 1;
    } while (g == 1 && iterations < kRhoIterationCap);
    if (g == n || g == 0) {
      g = 1;
      u64 guard = 0;
      while (g == 1 && guard++ < kRhoIterationCap) {
        ys = step(ys);
        g = Ops::gcd_(abs_diff<Ops>(x, ys), n);
      }
    }
    if (g != n && g != 1 && g != 0) return g;
  }
  throw ResourceError("Pollard-rho iteration cap reached");
}

template <class Ops>
void split_into_primes(const typename Ops::T& n, std::vector<typename Ops::T>& out) {
  if (n == 1) return;
  if (miller_rabin<Ops>(n)) {
    out.push_back(n);
    return;
  }
  typename Ops::T f = pollard_brent<Ops>(n);
  split_into_primes<Ops>(f, out);
  split_into_primes<Ops>(n / f, out);
}

// Trial division by base primes up to kTrialDivisionLimit, with early exits
// once p^2 exceeds the cofactor or the cofactor is prime; composite cofactors
// without small factors go to Pollard-rho.
template <class Ops>
std::vector<std::pair<typename Ops::T, unsigned>> factor_generic(typename Ops::T n) {
  using T = typename Ops::T;
  std::vector<std::pair<T, unsigned>> out;
  const auto& primes = base_primes();
  bool checked = false;
  for (u64 p : primes) {
    if (T(p) * T(p) > n) break;
    if (!checked && p > kEarlyPrimalityCheck) {
      checked = true;
      if (miller_rabin<Ops>(n)) break;
    }
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(T(p), e);
    }
  }
  if (n > 1) {
    std::vector<T> rest;
    split_into_primes<Ops>(n, rest);
    std::sort(rest.begin(), rest.end());
    for (const T& p : rest) {
      if (!out.empty() && out.back().first == p)
        ++out.back().second;
      else
        out.emplace_back(p, 1u);
    }
  }
  return out;
}

std::vector<u64> eratosthenes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  out.push_back(2);
  u64 half = (limit - 1) / 2;  // index i represents 2i + 1, i in [1, half]
  std::vector<unsigned char> composite(half + 1, 0);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    u64 p = 2 * i + 1;
    out.push_back(p);
    u64 sq = p * p;
    if (sq > limit) continue;
    for (u64 j = (sq - 1) / 2; j <= half; j += p) composite[j] = 1;
  }
  return out;
}

}  // namespace

BigInt Factorization::reconstruct() const {
  BigInt r = 1;
  for (const auto& f : factors) r *= bmp::pow(f.prime, f.exponent);
  return r;
}

std::vector<u64> sieve_primes(u64 limit, u64 cap) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be at least 2");
  if (limit > cap) throw ResourceError("sieve_primes: limit exceeds the sieve cap");
  if (limit <= kTrialDivisionLimit) {
    const auto& b = base_primes();
    return {b.begin(), std::upper_bound(b.begin(), b.end(), limit)};
  }
  return eratosthenes(limit);
}

std::vector<u64> primes_up_to(u64 limit) {
  if (limit < 2) return {};
  return sieve_primes(limit);
}

const std::vector<u64>& base_primes() {
  static const std::vector<u64> table = eratosthenes(kTrialDivisionLimit);
  return table;
}

bool is_prime(u64 n) { return miller_rabin<Ops64>(n); }

bool is_prime(u128 n) {
  if ((n >> 64) == 0) return miller_rabin<Ops64>(static_cast<u64>(n));
  return miller_rabin<Ops128>(n);
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (bmp::msb(n) < 128) return is_prime(to_u128(n));
  return miller_rabin<OpsBig>(n);
}

std::vector<WordFactor> factorize_word(u128 n) {
  if (n == 0) throw DomainError("factorize: n = 0");
  std::vector<WordFactor> out;
  if ((n >> 64) == 0) {
    for (auto [p, e] : factor_generic<Ops64>(static_cast<u64>(n))) out.push_back({p, e});
  } else {
    for (auto [p, e] : factor_generic<Ops128>(n)) out.push_back({p, e});
  }
  return out;
}

Factorization factorize(const BigInt& n) {
  if (n == 0) throw DomainError("factorize: n = 0");
  Factorization f;
  f.value = n;
  BigInt a = abs(n);
  if (bmp::msb(a) < 128) {
    for (const auto& w : factorize_word(to_u128(a))) f.factors.push_back({to_big_unsigned(w.prime), w.exponent});
  } else {
    for (auto& [p, e] : factor_generic<OpsBig>(a)) f.factors.push_back({p, e});
  }
  return f;
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0) throw DomainError("jacobi: n must be odd and positive");
  u64 x = static_cast<u64>(floor_mod(static_cast<i128>(a), static_cast<i128>(n)));
  int t = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      u64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) t = -t;
    x %= n;
  }
  return n == 1 ? t : 0;
}

int jacobi(const BigInt& a, const BigInt& n) {
  if (n <= 0 || (n & 1) == 0) throw DomainError("jacobi: n must be odd and positive");
  BigInt x = a % n;
  if (x < 0) x += n;
  BigInt m = n;
  int t = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      unsigned r = static_cast<unsigned>(m % 8);
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) t = -t;
    x %= m;
  }
  return m == 1 ? t : 0;
}

int kronecker(i64 a, u64 n) {
  if (n == 0) throw DomainError("kronecker: n must be positive");
  int t = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    i64 r = floor_mod(a, 8);
    if (r == 3 || r == 5) t = -t;
  }
  return t * jacobi(a, n);
}

SquarefreeDecomposition squarefree_part(const BigInt& n) {
  if (n == 0) throw DomainError("squarefree_part: n = 0");
  SquarefreeDecomposition out{n < 0 ? BigInt(-1) : BigInt(1), BigInt(1)};
  for (const auto& f : factorize(n).factors) {
    if (f.exponent % 2 == 1) out.d *= f.prime;
    out.r *= bmp::pow(f.prime, f.exponent / 2);
  }
  return out;
}

namespace {
// returns g = gcd(a, b) and x with a*x = g (mod b)
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x) {
  BigInt old_r = a, r = b, old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  x = old_s;
  return old_r;
}

BigInt floor_mod_big(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}
}  // namespace

Congruence crt(const std::vector<Congruence>& congruences) {
  BigInt res = 0, mod = 1;
  for (const auto& c : congruences) {
    if (c.modulus <= 0) throw DomainError("crt: moduli must be positive");
    BigInt r2 = floor_mod_big(c.residue, c.modulus);
    BigInt x;
    BigInt g = ext_gcd(mod, c.modulus, x);
    BigInt diff = r2 - res;
    if (diff % g != 0) throw DomainError("crt: inconsistent congruences for non-coprime moduli");
    BigInt m2g = c.modulus / g;
    BigInt k = floor_mod_big((diff / g) * x, m2g);
    res = res + mod * k;
    mod = mod * m2g;
    res = floor_mod_big(res, mod);
  }
  return {res, mod};
}

std::optional<u64> find_prime_in_class(i64 a, u64 q, u64 limit) {
  if (q == 0) throw DomainError("find_prime_in_class: q must be positive");
  u64 r = static_cast<u64>(floor_mod(a, static_cast<i64>(q)));
  if (gcd(r, q) != 1 && q != 1) throw DomainError("find_prime_in_class: gcd(a, q) != 1");
  const auto& primes = base_primes();
  for (u64 p : primes) {
    if (p > limit) return std::nullopt;
    if (p % q == r % q) return p;
  }
  // beyond the base table: walk the class and test primality
  u64 start = kTrialDivisionLimit + 1;
  u64 n = start + (r + q - start % q) % q;
  for (; n <= limit; n += q)
    if (is_prime(n)) return n;
  return std::nullopt;
}

std::pair<BigInt, BigInt> pell_fundamental(const BigInt& D) {
  if (D < 2) throw DomainError("pell_fundamental: D must be at least 2");
  BigInt a0 = bmp::sqrt(D);
  if (a0 * a0 == D) throw DomainError("pell_fundamental: D is a perfect square");
  BigInt m = 0, den = 1, a = a0;
  BigInt h_prev = 1, h = a0, k_prev = 0, k = 1;
  while (h * h - D * k * k != 1) {
    m = den * a - m;
    den = (D - m * m) / den;
    a = (a0 + m) / den;
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return {h, k};
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt: negative argument");
  return bmp::sqrt(n);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u128 isqrt(u128 n) {
  if ((n >> 64) == 0) return isqrt(static_cast<u64>(n));
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  // r < 2^64 always; refine against overflow-free comparisons
  auto sq_gt = [n](u128 x) { return x != 0 && x > n / x; };
  while (sq_gt(r)) --r;
  while (!sq_gt(r + 1)) ++r;
  return r;
}

bool is_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = bmp::sqrt(n);
  return r * r == n;
}

bool is_square(i128 n) {
  if (n < 0) return false;
  u128 r = isqrt(static_cast<u128>(n));
  return r * r == static_cast<u128>(n);
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 mulmod(u64 a, u64 b, u64 m) { return Ops64::mul(a, b, m); }

u64 powmod(u64 a, u64 e, u64 m) { return pow_mod<Ops64>(a, e, m); }

u64 invmod(u64 a, u64 m) {
  BigInt x;
  BigInt g = ext_gcd(BigInt(a % m), BigInt(m), x);
  if (g != 1) throw DomainError("invmod: not invertible");
  return static_cast<u64>(floor_mod_big(x, BigInt(m)));
}

BigInt invmod(const BigInt& a, const BigInt& m) {
  BigInt x;
  BigInt g = ext_gcd(floor_mod_big(a, m), m, x);
  if (g != 1) throw DomainError("invmod: not invertible");
  return floor_mod_big(x, m);
}

std::optional<u64> sqrtmod(u64 a, u64 p) {
  a %= p;
  if (p == 2) return a;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  u64 q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

unsigned valuation(u128 n, u64 p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigInt factorial(unsigned r) {
  BigInt f = 1;
  for (unsigned i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace prp
