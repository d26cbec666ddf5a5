#include "prpairs/rings.hpp"

#include <cctype>
#include <cmath>

#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"

namespace prp {

namespace {

TauKind kind_for(i64 d) {
  if (d == 0) throw DomainError("quadratic ring: d must be nonzero");
  if (d == -1) throw DomainError("quadratic ring: d = -1 gives Q(sqrt 1), not a quadratic field");
  if (squarefree_part(BigInt(d)).r != 1) throw DomainError("quadratic ring: d must be squarefree");
  return floor_mod(d, 4) == 3 ? TauKind::Half : TauKind::Sqrt;
}

BinaryQuadraticForm norm_form_for(i64 d, TauKind k) {
  if (k == TauKind::Sqrt) return {1, 0, d};
  return {1, 1, (d + 1) / 4};
}

}  // namespace

QuadraticRing::QuadraticRing(i64 d) : d_(d), kind_(kind_for(d)), norm_form_(norm_form_for(d, kind_)) {}

i64 QuadraticRing::field_discriminant() const { return kind_ == TauKind::Sqrt ? -4 * d_ : -d_; }

RingElement::RingElement(QuadraticRing ring, BigInt m, BigInt n)
    : ring_(std::move(ring)), m_(std::move(m)), n_(std::move(n)) {}

BigInt RingElement::norm() const { return ring_.norm_form().eval_big(m_, n_); }

BigInt norm(const RingElement& z) { return z.norm(); }

RingElement RingElement::conj() const {
  if (ring_.tau_kind() == TauKind::Sqrt) return {ring_, m_, -n_};
  return {ring_, m_ + n_, -n_};
}

RingElement RingElement::operator*(const RingElement& o) const {
  if (!(ring_ == o.ring_)) throw DomainError("ring elements from different rings");
  BigInt s = ring_.tau_trace(), t = ring_.tau_norm();
  BigInt nn = n_ * o.n_;
  return {ring_, m_ * o.m_ - t * nn, m_ * o.n_ + o.m_ * n_ + s * nn};
}

RingElement RingElement::operator-() const { return {ring_, -m_, -n_}; }

RingElement RingElement::pow(i64 k) const {
  RingElement base = *this;
  if (k < 0) {
    BigInt N = norm();
    if (N != 1 && N != -1) throw DomainError("negative power of a non-unit");
    RingElement c = conj();
    base = RingElement(ring_, c.m_ * N, c.n_ * N);
    k = -k;
  }
  RingElement r(ring_, 1, 0);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool RingElement::operator==(const RingElement& o) const { return ring_ == o.ring_ && m_ == o.m_ && n_ == o.n_; }

std::string RingElement::to_string() const {
  std::string s = m_.str();
  if (n_ >= 0)
    s += "+" + n_.str() + "*tau";
  else
    s += "-" + BigInt(-n_).str() + "*tau";
  return s;
}

u64 count_solutions(i64 d, i64 k, i64 N) {
  if (k == 0) throw DomainError("count_solutions: k must be nonzero");
  if (N < 1 || N > kCountBoxCap) throw DomainError("count_solutions: N must be in [1, 10^4]");
  QuadraticRing ring(d);
  u64 count = 0;
  bool half = ring.tau_kind() == TauKind::Half;
  for (i64 n = -N; n <= N; ++n) {
    // Sqrt: m^2 = k - d n^2.  Half: (2m + n)^2 = 4k - d n^2.
    i128 rem = half ? 4 * static_cast<i128>(k) - static_cast<i128>(d) * n * n
                    : static_cast<i128>(k) - static_cast<i128>(d) * n * n;
    if (rem < 0) continue;
    u128 s = isqrt(static_cast<u128>(rem));
    if (s * s != static_cast<u128>(rem)) continue;
    i128 roots[2] = {static_cast<i128>(s), -static_cast<i128>(s)};
    int nroots = s == 0 ? 1 : 2;
    for (int i = 0; i < nroots; ++i) {
      i128 m;
      if (half) {
        i128 X = roots[i] - n;
        if (X % 2 != 0) continue;
        m = X / 2;
      } else {
        m = roots[i];
      }
      if (m >= -N && m <= N) ++count;
    }
  }
  return count;
}

u64 count_ideals(i64 d, u64 k) {
  if (k == 0) throw DomainError("count_ideals: k must be positive");
  QuadraticRing ring(d);
  i64 disc = ring.field_discriminant();
  u64 total = 1;
  for (const auto& f : factorize_word(k)) {
    u64 p = static_cast<u64>(f.prime);
    int s = kronecker(disc, p);
    if (s == 1)
      total *= f.exponent + 1;
    else if (s == -1 && f.exponent % 2 == 1)
      return 0;
  }
  return total;
}

FundamentalUnit fundamental_unit(i64 d) {
  if (d >= 0) throw DomainError("fundamental_unit: requires d < 0 (real quadratic field)");
  QuadraticRing ring(d);
  bool half = ring.tau_kind() == TauKind::Half;
  BigInt D = -d;
  BigInt s = isqrt(D);
  // continued fraction of (P + sqrt D) / Q, starting from tau
  BigInt P = half ? 1 : 0, Q = half ? 2 : 1;
  BigInt h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  for (int step = 0; step < 100000; ++step) {
    BigInt a = (P + s) / Q;
    BigInt h = a * h_prev + h_prev2, k = a * k_prev + k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    // h - k*tau is tiny when h/k approximates tau
    BigInt nrm = ring.norm_form().eval_big(h, -k);
    if (nrm == 1 || nrm == -1) {
      RingElement small(ring, h, -k);
      return {small.conj(), nrm};
    }
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  throw ResourceError("fundamental_unit: continued fraction did not terminate");
}

std::vector<RingElement> torsion_units(const QuadraticRing& ring) {
  std::vector<RingElement> out;
  if (ring.d() < 0) {
    out.emplace_back(ring, 1, 0);
    out.emplace_back(ring, -1, 0);
    return out;
  }
  // imaginary case: units have |m|, |n| <= 2 for every admissible d
  for (i64 m = -2; m <= 2; ++m)
    for (i64 n = -2; n <= 2; ++n)
      if (ring.norm_form()(m, n) == 1) out.emplace_back(ring, m, n);
  return out;
}

bool is_C_regular(const RingElement& z, double C, i64 N_max) {
  if (z.is_zero()) throw DomainError("is_C_regular: z must be nonzero");
  if (!(C > 0.0) || N_max < 1) throw DomainError("is_C_regular: C and N_max must be positive");
  const QuadraticRing& ring = z.ring();
  i128 Nz = to_i128(z.norm());
  RingElement zc = z.conj();
  i128 cm = to_i128(zc.m()), cn = to_i128(zc.n());
  i128 s = ring.tau_trace(), t = ring.tau_norm();
  long double scale = static_cast<long double>(C) / std::sqrt(static_cast<long double>(Nz < 0 ? -Nz : Nz));
  for (i64 A = -N_max; A <= N_max; ++A) {
    for (i64 B = -N_max; B <= N_max; ++B) {
      if (A == 0 && B == 0) continue;
      // u * conj(z) = X + Y tau
      i128 X = A * cm - t * B * cn;
      i128 Y = A * cn + cm * B + s * B * cn;
      if (X % Nz != 0 || Y % Nz != 0) continue;
      i128 wx = X / Nz, wy = Y / Nz;
      i64 M = std::max(A < 0 ? -A : A, B < 0 ? -B : B);
      i128 bound = static_cast<i128>(std::floor(scale * M + 1e-9L));
      i128 aw = std::max(wx < 0 ? -wx : wx, wy < 0 ? -wy : wy);
      if (aw > bound) return false;
    }
  }
  return true;
}

std::optional<RegularAssociate> find_regular_associate(const RingElement& z, double C, i64 N_max, i64 t_range) {
  if (z.ring().d() > 0)
    throw DomainError("find_regular_associate: imaginary field has finitely many units; test z itself");
  if (t_range < 0) throw DomainError("find_regular_associate: t_range must be nonnegative");
  RingElement u = fundamental_unit(z.ring().d()).unit;
  for (i64 step = 0; step <= 2 * t_range; ++step) {
    i64 t = step == 0 ? 0 : (step % 2 == 1 ? (step + 1) / 2 : -(step / 2));
    RingElement cand = z * u.pow(t);
    if (is_C_regular(cand, C, N_max)) return RegularAssociate{t, cand};
  }
  return std::nullopt;
}

CountingDiagnostic fit_counting_constant(i64 d, i64 k_max, i64 N) {
  CountingDiagnostic out{0.0, 0};
  for (i64 k = -k_max; k <= k_max; ++k) {
    if (k == 0 || (d > 0 && k < 0)) continue;
    u64 c = count_solutions(d, k, N);
    if (c == 0) continue;
    u64 ideals = count_ideals(d, static_cast<u64>(k < 0 ? -k : k));
    if (ideals == 0) throw InvariantError("element of norm k without an ideal of norm |k|");
    double need = std::sqrt(static_cast<double>(k < 0 ? -k : k)) / static_cast<double>(N) *
                  std::exp(static_cast<double>(c) / static_cast<double>(ideals));
    out.fitted_c = std::max(out.fitted_c, need);
    ++out.samples;
  }
  return out;
}

RingElement parse_ring_element(const QuadraticRing& ring, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw DomainError("ring element literal is empty");
  BigInt m = 0, n = 0;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (any) {
      throw DomainError("ring element literal: expected + or - in '" + text + "'");
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string digits = s.substr(start, i - start);
    bool tau = false;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) throw DomainError("ring element literal: missing coefficient before '*'");
      ++i;
      if (s.compare(i, 3, "tau") != 0) throw DomainError("ring element literal: expected tau after '*'");
      i += 3;
      tau = true;
    } else if (s.compare(i, 3, "tau") == 0) {
      i += 3;
      tau = true;
    }
    if (digits.empty() && !tau) throw DomainError("ring element literal: malformed term in '" + text + "'");
    BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
    if (sign < 0) coef = -coef;
    (tau ? n : m) += coef;
    any = true;
  }
  return {ring, m, n};
}

}  // namespace prp
