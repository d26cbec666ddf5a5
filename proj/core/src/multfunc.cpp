#include "prpairs/multfunc.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/summation.hpp"

namespace prp {

Complex unit_root(i64 num, i64 den) {
  if (den <= 0) throw DomainError("unit_root: denominator must be positive");
  i64 r = floor_mod(num, den);
  if ((4 * static_cast<i128>(r)) % den == 0) {
    switch (static_cast<int>(4 * static_cast<i128>(r) / den)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

namespace {

Complex ipow(Complex z, unsigned k) {
  Complex r{1.0, 0.0};
  while (k) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::shared_ptr<const DirichletCharacter::Group> build_group(u64 q) {
  auto g = std::make_shared<DirichletCharacter::Group>();
  g->modulus = q;
  if (q > 1) {
    for (const auto& f : factorize_word(q)) {
      u64 p = static_cast<u64>(f.prime);
      unsigned e = f.exponent;
      u64 m = 1;
      for (unsigned i = 0; i < e; ++i) m *= p;
      if (p == 2) {
        if (e == 1) continue;
        if (e == 2) {
          g->components.push_back({4, 2, {-1, 0, -1, 1}});
          continue;
        }
        DirichletCharacter::Component sign{m, 2, std::vector<i64>(m, -1)};
        DirichletCharacter::Component five{m, m / 4, std::vector<i64>(m, -1)};
        u64 x = 1;
        for (u64 k = 0; k < m / 4; ++k) {
          sign.log_table[x] = 0;
          five.log_table[x] = static_cast<i64>(k);
          sign.log_table[m - x] = 1;
          five.log_table[m - x] = static_cast<i64>(k);
          x = x * 5 % m;
        }
        g->components.push_back(std::move(sign));
        g->components.push_back(std::move(five));
        continue;
      }
      u64 phi = m / p * (p - 1);
      std::vector<u64> phi_primes;
      for (const auto& pf : factorize_word(phi)) phi_primes.push_back(static_cast<u64>(pf.prime));
      u64 gen = 2;
      for (;; ++gen) {
        if (gen % p == 0) continue;
        bool ok = true;
        for (u64 l : phi_primes)
          if (powmod(gen, phi / l, m) == 1) {
            ok = false;
            break;
          }
        if (ok) break;
      }
      DirichletCharacter::Component c{m, phi, std::vector<i64>(m, -1)};
      u64 x = 1;
      for (u64 k = 0; k < phi; ++k) {
        c.log_table[x] = static_cast<i64>(k);
        x = mulmod(x, gen, m);
      }
      g->components.push_back(std::move(c));
    }
  }
  u64 ex = 1;
  for (const auto& c : g->components) ex = std::lcm(ex, c.order);
  g->exponent = ex;
  return g;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const Group> group, std::vector<u64> digits)
    : group_(std::move(group)), digits_(std::move(digits)) {
  if (digits_.size() != group_->components.size()) throw DomainError("character digits do not match the group");
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] >= group_->components[i].order) throw DomainError("character digit out of range");
}

u64 DirichletCharacter::index() const {
  u64 idx = 0, radix = 1;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    idx += digits_[i] * radix;
    radix *= group_->components[i].order;
  }
  return idx;
}

u64 DirichletCharacter::order() const {
  u64 o = 1;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    u64 ord = group_->components[i].order;
    o = std::lcm(o, ord / std::gcd(digits_[i], ord));
  }
  return o;
}

bool DirichletCharacter::principal() const {
  for (u64 d : digits_)
    if (d != 0) return false;
  return true;
}

i64 DirichletCharacter::phase(u128 n) const {
  u64 q = group_->modulus;
  u64 r = static_cast<u64>(n % q);
  if (q > 1 && gcd(r, q) != 1) return -1;
  u64 ex = group_->exponent;
  u128 ph = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    const auto& c = group_->components[i];
    i64 lg = c.log_table[r % c.modulus];
    ph += static_cast<u128>(digits_[i]) * static_cast<u64>(lg) % c.order * (ex / c.order);
  }
  return static_cast<i64>(ph % ex);
}

Complex DirichletCharacter::operator()(i128 n) const {
  // reduce the signed value so that chi(-1) is honoured
  u64 q = group_->modulus;
  u64 r = static_cast<u64>(floor_mod(n, static_cast<i128>(q)));
  i64 ph = phase(r);
  if (ph < 0) return {0.0, 0.0};
  return unit_root(ph, static_cast<i64>(group_->exponent));
}

std::vector<Complex> DirichletCharacter::value_table() const {
  std::vector<Complex> t(group_->modulus);
  for (u64 r = 0; r < group_->modulus; ++r) t[r] = (*this)(static_cast<i128>(r));
  return t;
}

std::vector<DirichletCharacter> dirichlet_characters(u64 q, u64 cap) {
  if (q == 0) throw DomainError("dirichlet_characters: q must be positive");
  if (q > cap) throw ResourceError("dirichlet_characters: modulus exceeds cap");
  auto g = build_group(q);
  u64 count = 1;
  for (const auto& c : g->components) count *= c.order;
  std::vector<DirichletCharacter> out;
  out.reserve(count);
  std::vector<u64> digits(g->components.size(), 0);
  for (u64 idx = 0; idx < count; ++idx) {
    out.emplace_back(g, digits);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < g->components[i].order) break;
      digits[i] = 0;
    }
  }
  return out;
}

DirichletCharacter dirichlet_character(u64 q, u64 index) {
  if (q == 0) throw DomainError("dirichlet_character: q must be positive");
  if (q > kCharacterModulusCap) throw ResourceError("dirichlet_character: modulus exceeds cap");
  auto g = build_group(q);
  std::vector<u64> digits;
  u64 rest = index;
  for (const auto& c : g->components) {
    digits.push_back(rest % c.order);
    rest /= c.order;
  }
  if (rest != 0) throw DomainError("dirichlet_character: index out of range");
  return DirichletCharacter(g, digits);
}

Complex twist_value(const TwistData& tw, u128 n) {
  i64 ph = tw.chi.phase(n);
  if (ph < 0) return {0.0, 0.0};
  Complex c = unit_root(ph, static_cast<i64>(tw.chi.exponent()));
  if (tw.t == 0.0) return c;
  double ln = std::log(static_cast<double>(n));
  return c * std::polar(1.0, tw.t * ln);
}

// ---------------------------------------------------------------------------

MultiplicativeFunction::MultiplicativeFunction(std::string description, PrimePowerRule rule,
                                               bool completely_multiplicative)
    : description_(std::move(description)), rule_(std::move(rule)), completely_(completely_multiplicative) {}

MultiplicativeFunction MultiplicativeFunction::completely(std::string description,
                                                          std::function<Complex(u128 p)> at_prime) {
  return MultiplicativeFunction(
      std::move(description), [at_prime](u128 p, unsigned k) { return ipow(at_prime(p), k); }, true);
}

MultiplicativeFunction& MultiplicativeFunction::with_direct_rule(DirectRule rule) {
  direct_ = std::move(rule);
  return *this;
}

MultiplicativeFunction& MultiplicativeFunction::with_root_data(unsigned order, PrimeIndex index) {
  if (!completely_) throw DomainError("root data requires a completely multiplicative function");
  if (order == 0 || order > 255) throw DomainError("root order must be in [1, 255]");
  root_order_ = order;
  prime_index_ = std::move(index);
  return *this;
}

MultiplicativeFunction& MultiplicativeFunction::with_trivial_above(u64 bound) {
  trivial_above_ = bound;
  return *this;
}

MultiplicativeFunction& MultiplicativeFunction::with_finite_support(std::vector<u64> primes) {
  support_ = std::make_shared<const std::vector<u64>>(std::move(primes));
  u64 mx = 0;
  for (u64 p : *support_) mx = std::max(mx, p);
  if (!trivial_above_ || *trivial_above_ > mx) trivial_above_ = mx;
  return *this;
}

Complex MultiplicativeFunction::at_prime_power(u128 p, unsigned k) const {
  if (k == 0) return {1.0, 0.0};
  return rule_(p, k);
}

Complex MultiplicativeFunction::evaluate_unsigned(u128 n) const {
  if (n == 0) return {0.0, 0.0};
  if (n == 1) return {1.0, 0.0};
  if (direct_) return direct_(n);
  Complex r{1.0, 0.0};
  if (support_) {
    for (u64 p : *support_) {
      if (n % p != 0) continue;
      unsigned k = 0;
      while (n % p == 0) {
        n /= p;
        ++k;
      }
      r *= rule_(p, k);
    }
    return r;
  }
  for (const auto& f : factorize_word(n)) r *= rule_(f.prime, f.exponent);
  return r;
}

Complex MultiplicativeFunction::evaluate(i128 n) const { return evaluate_unsigned(abs_u128(n)); }

Complex MultiplicativeFunction::evaluate(const BigInt& n) const {
  if (n == 0) return {0.0, 0.0};
  return evaluate_unsigned(to_u128(abs(n)));
}

Complex MultiplicativeFunction::evaluate_on_exponents(const ExponentMap& e) const {
  Complex r{1.0, 0.0};
  for (auto [p, k] : e) r *= at_prime_power(p, k);
  return r;
}

MultiplicativeFunction MultiplicativeFunction::conj() const {
  auto rule = rule_;
  MultiplicativeFunction g("conj(" + description_ + ")",
                           [rule](u128 p, unsigned k) { return std::conj(rule(p, k)); }, completely_);
  if (direct_) {
    auto d = direct_;
    g.direct_ = [d](u128 n) { return std::conj(d(n)); };
  }
  if (root_order_) {
    unsigned ord = root_order_;
    auto idx = prime_index_;
    g.root_order_ = ord;
    g.prime_index_ = [ord, idx](u128 p) { return (ord - idx(p) % ord) % ord; };
  }
  g.trivial_above_ = trivial_above_;
  g.support_ = support_;
  return g;
}

MultiplicativeFunction MultiplicativeFunction::operator*(const MultiplicativeFunction& other) const {
  auto r1 = rule_;
  auto r2 = other.rule_;
  MultiplicativeFunction g(description_ + "*" + other.description_,
                           [r1, r2](u128 p, unsigned k) { return r1(p, k) * r2(p, k); },
                           completely_ && other.completely_);
  if (direct_ || other.direct_) {
    MultiplicativeFunction a = *this, b = other;
    g.direct_ = [a, b](u128 n) { return a.evaluate_unsigned(n) * b.evaluate_unsigned(n); };
  }
  if (root_order_ && other.root_order_) {
    unsigned L = std::lcm(root_order_, other.root_order_);
    if (L <= 255) {
      unsigned s1 = L / root_order_, s2 = L / other.root_order_;
      auto i1 = prime_index_, i2 = other.prime_index_;
      g.root_order_ = L;
      g.prime_index_ = [=](u128 p) { return (i1(p) * s1 + i2(p) * s2) % L; };
    }
  }
  if (trivial_above_ && other.trivial_above_) g.trivial_above_ = std::max(*trivial_above_, *other.trivial_above_);
  if (support_ && other.support_) {
    std::vector<u64> u(*support_);
    u.insert(u.end(), other.support_->begin(), other.support_->end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    g.support_ = std::make_shared<const std::vector<u64>>(std::move(u));
  }
  return g;
}

MultiplicativeFunction liouville() {
  auto f = MultiplicativeFunction::completely("liouville", [](u128) { return Complex{-1.0, 0.0}; });
  f.with_root_data(2, [](u128) { return 1u; });
  return f;
}

MultiplicativeFunction principal() {
  MultiplicativeFunction f("principal", [](u128, unsigned) { return Complex{1.0, 0.0}; }, true);
  f.with_direct_rule([](u128) { return Complex{1.0, 0.0}; });
  f.with_root_data(1, [](u128) { return 0u; });
  f.with_finite_support({});
  return f;
}

namespace {
std::string char_label(const char* kind, const DirichletCharacter& chi) {
  return std::string(kind) + ":" + std::to_string(chi.modulus()) + ":" + std::to_string(chi.index());
}
}  // namespace

MultiplicativeFunction character_function(const DirichletCharacter& chi) {
  auto table = std::make_shared<const std::vector<Complex>>(chi.value_table());
  u64 q = chi.modulus();
  auto f = MultiplicativeFunction::completely(char_label("char", chi),
                                              [table, q](u128 p) { return (*table)[static_cast<u64>(p % q)]; });
  f.with_direct_rule([table, q](u128 n) { return (*table)[static_cast<u64>(n % q)]; });
  return f;
}

MultiplicativeFunction character_lift(const DirichletCharacter& chi) {
  auto table = std::make_shared<const std::vector<Complex>>(chi.value_table());
  u64 q = chi.modulus();
  std::vector<u64> qprimes;
  if (q > 1)
    for (const auto& w : factorize_word(q)) qprimes.push_back(static_cast<u64>(w.prime));
  auto f = MultiplicativeFunction::completely(char_label("charlift", chi), [table, q](u128 p) {
    if (q > 1 && gcd(static_cast<u64>(p % q), q) != 1) return Complex{1.0, 0.0};
    return (*table)[static_cast<u64>(p % q)];
  });
  f.with_direct_rule([table, q, qprimes](u128 n) {
    for (u64 p : qprimes)
      while (n % p == 0) n /= p;
    return (*table)[static_cast<u64>(n % q)];
  });
  u64 ex = chi.exponent();
  if (ex <= 255) {
    DirichletCharacter c = chi;
    f.with_root_data(static_cast<unsigned>(ex), [c](u128 p) {
      i64 ph = c.phase(p);
      return ph < 0 ? 0u : static_cast<unsigned>(ph);
    });
  }
  return f;
}

MultiplicativeFunction archimedean(double t) {
  MultiplicativeFunction f(
      "arch:" + format_real(t),
      [t](u128 p, unsigned k) { return std::polar(1.0, t * k * std::log(static_cast<double>(p))); }, true);
  f.with_direct_rule([t](u128 n) { return std::polar(1.0, t * std::log(static_cast<double>(n))); });
  return f;
}

MultiplicativeFunction twisted(const TwistData& tw) {
  TwistData copy = tw;
  auto f = MultiplicativeFunction::completely(char_label("twisted", tw.chi) + ":" + format_real(tw.t),
                                              [copy](u128 p) { return twist_value(copy, p); });
  f.with_direct_rule([copy](u128 n) { return twist_value(copy, n); });
  return f;
}

MultiplicativeFunction prime_patch(u64 lo, u64 hi, Complex value) {
  if (std::abs(value) > 1.0 + 1e-12) throw DomainError("prime_patch: |value| must be at most 1");
  std::ostringstream label;
  label << "prime-patch:(" << lo << "," << hi << "," << format_real(value.real());
  if (value.imag() != 0.0) label << "," << format_real(value.imag());
  label << ")";
  auto f = MultiplicativeFunction::completely(label.str(), [lo, hi, value](u128 p) {
    return (p > lo && p <= hi) ? value : Complex{1.0, 0.0};
  });
  std::vector<u64> support;
  for (u64 p : primes_up_to(hi))
    if (p > lo) support.push_back(p);
  f.with_finite_support(std::move(support));
  return f;
}

MultiplicativeFunction from_prime_values(std::string description, std::map<u64, Complex> values, Complex fallback) {
  for (const auto& [p, v] : values)
    if (std::abs(v) > 1.0 + 1e-12) throw DomainError("from_prime_values: |f(p)| must be at most 1");
  auto shared = std::make_shared<const std::map<u64, Complex>>(std::move(values));
  auto f = MultiplicativeFunction::completely(std::move(description), [shared, fallback](u128 p) {
    if ((p >> 64) == 0) {
      auto it = shared->find(static_cast<u64>(p));
      if (it != shared->end()) return it->second;
    }
    return fallback;
  });
  if (fallback == Complex{1.0, 0.0}) {
    std::vector<u64> support;
    for (const auto& kv : *shared) support.push_back(kv.first);
    f.with_finite_support(std::move(support));
  }
  return f;
}

// ---------------------------------------------------------------------------

FunctionEvaluator::FunctionEvaluator(const MultiplicativeFunction& f, u128 max_abs_value) : f_(f) {
  if (f.has_direct_rule() || !f.has_root_data() || max_abs_value > kSieveCap || max_abs_value < 2) return;
  u64 X = static_cast<u64>(max_abs_value);
  unsigned ord = f.root_order();
  table_.assign(X + 1, 0);
  for (u64 p : primes_up_to(X)) {
    unsigned idx = f.prime_index(p) % ord;
    if (idx == 0) continue;
    for (u64 pk = p;; pk *= p) {
      if (ord == 2) {
        for (u64 j = pk; j <= X; j += pk) table_[j] ^= 1;
      } else {
        for (u64 j = pk; j <= X; j += pk) {
          unsigned v = table_[j] + idx;
          table_[j] = static_cast<unsigned char>(v >= ord ? v - ord : v);
        }
      }
      if (pk > X / p) break;
    }
  }
  roots_.resize(ord);
  for (unsigned i = 0; i < ord; ++i) roots_[i] = unit_root(i, ord);
}

Complex FunctionEvaluator::operator()(i128 n) const {
  if (n == 0) return {0.0, 0.0};
  u128 a = abs_u128(n);
  if (!table_.empty() && a < table_.size()) return roots_[table_[static_cast<std::size_t>(a)]];
  return f_.evaluate_unsigned(a);
}

// ---------------------------------------------------------------------------

AdditiveFunction::AdditiveFunction(std::string description, PrimePowerRule rule,
                                   std::optional<std::vector<u64>> support)
    : description_(std::move(description)), rule_(std::move(rule)), support_(std::move(support)) {}

AdditiveFunction AdditiveFunction::zero() {
  return AdditiveFunction("zero", [](u128, unsigned) { return Complex{0.0, 0.0}; }, std::vector<u64>{});
}

AdditiveFunction AdditiveFunction::on_primes(std::string description, std::map<u64, Complex> values) {
  std::vector<u64> support;
  for (const auto& kv : values) support.push_back(kv.first);
  auto shared = std::make_shared<const std::map<u64, Complex>>(std::move(values));
  return AdditiveFunction(
      std::move(description),
      [shared](u128 p, unsigned k) {
        if (k != 1 || (p >> 64) != 0) return Complex{0.0, 0.0};
        auto it = shared->find(static_cast<u64>(p));
        return it == shared->end() ? Complex{0.0, 0.0} : it->second;
      },
      std::move(support));
}

Complex AdditiveFunction::evaluate(i128 n) const {
  if (n == 0) return {0.0, 0.0};
  u128 a = abs_u128(n);
  Complex s{0.0, 0.0};
  if (support_) {
    for (u64 p : *support_) {
      if (a % p != 0) continue;
      unsigned k = 0;
      while (a % p == 0) {
        a /= p;
        ++k;
      }
      s += rule_(p, k);
    }
    return s;
  }
  if (a == 1) return s;
  for (const auto& f : factorize_word(a)) s += rule_(f.prime, f.exponent);
  return s;
}

// ---------------------------------------------------------------------------

double distance_c(const PrimeWeight& c, const MultiplicativeFunction& f, const MultiplicativeFunction& g, double x,
                  double y) {
  if (!(x >= 1.0) || !(y >= x)) throw DomainError("distance: require 1 <= x <= y");
  double top = std::floor(y);
  if (f.trivial_above() && g.trivial_above())
    top = std::min(top, static_cast<double>(std::max(*f.trivial_above(), *g.trivial_above())));
  if (top > static_cast<double>(kSieveCap)) throw ResourceError("distance: y exceeds the sieve cap");
  CompensatedSum s;
  for (u64 p : primes_up_to(static_cast<u64>(top))) {
    if (static_cast<double>(p) <= x) continue;
    double w = c(p);
    if (w == 0.0) continue;
    Complex fg = f.at_prime(p) * std::conj(g.at_prime(p));
    s.add(w / static_cast<double>(p) * (1.0 - fg.real()));
  }
  return std::sqrt(std::max(0.0, s.value()));
}

double distance(const MultiplicativeFunction& f, const MultiplicativeFunction& g, double x, double y) {
  return distance_c([](u64) { return 1.0; }, f, g, x, y);
}

double distance_P(const BinaryQuadraticForm& P, const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                  double x, double y) {
  if (P.is_irreducible()) {
    return distance_c([&P](u64 p) { return static_cast<double>(omega_prime_fast(P, p)); }, f, g, x, y);
  }
  return distance_c([&P](u64 p) { return static_cast<double>(omega_prime_power(P, p, 1)); }, f, g, x, y);
}

std::vector<DistanceCheckpoint> distance_profile(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                                 double x, const std::vector<double>& checkpoints) {
  std::vector<DistanceCheckpoint> out;
  for (double y : checkpoints) out.push_back({y, distance(f, g, x, y)});
  return out;
}

}  // namespace prp
