#include "prpairs/regularity.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "prpairs/arith.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/parallel.hpp"

namespace prp {

namespace {

bool perfect_square(i128 v) { return v >= 0 && is_square(v); }

std::string yes_no(bool b) { return b ? "square" : "not square"; }

std::string i128_str(i128 v) { return to_string(v); }

i64 isqrt_exact(i128 v) { return static_cast<i64>(isqrt(static_cast<u128>(v))); }

}  // namespace

EquationTriple::EquationTriple(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {
  if (a == 0 || b == 0 || c == 0) throw DomainError("equation coefficients a, b, c must be nonzero");
}

std::string EquationTriple::to_string() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

std::string to_string(Pair p) {
  switch (p) {
    case Pair::XY: return "xy";
    case Pair::XZ: return "xz";
    case Pair::YZ: return "yz";
  }
  return "?";
}

Pair parse_pair(const std::string& s) {
  if (s == "xy" || s == "yx") return Pair::XY;
  if (s == "xz" || s == "zx") return Pair::XZ;
  if (s == "yz" || s == "zy") return Pair::YZ;
  throw DomainError("pair must be one of xy, xz, yz; got '" + s + "'");
}

EquationTriple pair_transform(const EquationTriple& t, Pair p) {
  switch (p) {
    case Pair::XY: return t;
    // -c z^2 + b y^2 = -a x^2
    case Pair::YZ: return {-t.c, t.b, -t.a};
    // a x^2 - c z^2 = -b y^2
    case Pair::XZ: return {t.a, -t.c, -t.b};
  }
  return t;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::ASwapped: return "A-swapped";
    case Family::B: return "B";
    case Family::C: return "C";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "A-swapped" || s == "a-swapped") return Family::ASwapped;
  if (s == "B" || s == "b") return Family::B;
  if (s == "C" || s == "c") return Family::C;
  throw DomainError("unknown family '" + s + "' (expected A, A-swapped, B, C or auto)");
}

ParametricFamily::ParametricFamily(EquationTriple t, Family family, i64 d) : t_(t), family_(family), d_(d) {}

Solution ParametricFamily::operator()(i64 k, i64 m, i64 n) const {
  BigInt a = t_.a, b = t_.b, c = t_.c, d = d_, K = k, M = m, N = n;
  Solution s;
  switch (family_) {
    case Family::A:
      s.x = K * c * (a * M * M - b * N * N);
      s.y = K * 2 * a * c * M * N;
      s.z = K * d * (a * M * M + b * N * N);
      break;
    case Family::ASwapped:
      s.x = K * 2 * b * c * M * N;
      s.y = K * c * (b * M * M - a * N * N);
      s.z = K * d * (b * M * M + a * N * N);
      break;
    case Family::B:
      s.x = K * c * (M * M - 2 * b * M * N - a * b * N * N);
      s.y = K * c * (M * M + 2 * a * M * N - a * b * N * N);
      s.z = K * d * (M * M + a * b * N * N);
      break;
    case Family::C:
      s.x = K * (M * M + a * c * N * N);
      s.y = K * (M * M - a * c * N * N);
      s.z = K * 2 * a * M * N;
      break;
  }
  if (a * s.x * s.x + b * s.y * s.y != c * s.z * s.z)
    throw InvariantError("parametric family " + to_string(family_) + " emitted a non-solution");
  return s;
}

ParametricFamily parametric_family(const EquationTriple& t, std::optional<Family> requested) {
  i128 a = t.a, b = t.b, c = t.c;
  bool c_ok = a + b == 0;
  bool a_ok = perfect_square(a * c);
  bool as_ok = perfect_square(b * c);
  bool b_ok = a + b != 0 && perfect_square((a + b) * c);
  auto make = [&](Family f) -> ParametricFamily {
    switch (f) {
      case Family::A: return {t, f, isqrt_exact(a * c)};
      case Family::ASwapped: return {t, f, isqrt_exact(b * c)};
      case Family::B: return {t, f, isqrt_exact((a + b) * c)};
      case Family::C: return {t, f, 0};
    }
    return {t, f, 0};
  };
  if (requested) {
    bool ok = *requested == Family::A ? a_ok : *requested == Family::ASwapped ? as_ok
                                          : *requested == Family::B        ? b_ok
                                                                           : c_ok;
    if (!ok)
      throw DomainError("family " + to_string(*requested) + " does not apply to " + t.to_string());
    return make(*requested);
  }
  if (c_ok) return make(Family::C);
  if (a_ok) return make(Family::A);
  if (as_ok) return make(Family::ASwapped);
  if (b_ok) return make(Family::B);
  throw DomainError("no parametric family applies to " + t.to_string() + ": a+b = " + i128_str(a + b) +
                    " != 0, ac = " + i128_str(a * c) + ", bc = " + i128_str(b * c) + ", (a+b)c = " +
                    i128_str((a + b) * c) + " are not squares");
}

Coloring Coloring::rado(u64 p) {
  if (p < 3 || !is_prime(p)) throw DomainError("Rado coloring needs an odd prime");
  return {Kind::Rado, p, {}};
}

Coloring Coloring::two_adic_sign() { return {Kind::TwoAdicSign, 0, {}}; }

Coloring Coloring::dyadic(u64 l) {
  if (l < 1 || l > 62) throw DomainError("dyadic coloring needs 1 <= l <= 62");
  return {Kind::Dyadic, l, {}};
}

Coloring Coloring::custom(std::vector<u64> table) {
  if (table.empty()) throw DomainError("custom coloring table is empty");
  return {Kind::Custom, 0, std::move(table)};
}

Coloring Coloring::parse(const std::string& s) {
  auto num = [&](const std::string& x) -> u64 {
    try {
      std::size_t pos = 0;
      u64 v = std::stoull(x, &pos);
      if (pos != x.size()) throw DomainError("");
      return v;
    } catch (...) {
      throw DomainError("malformed coloring '" + s + "'");
    }
  };
  if (s == "two-adic" || s == "two-adic-sign") return two_adic_sign();
  if (s.rfind("rado:", 0) == 0) return rado(num(s.substr(5)));
  if (s.rfind("dyadic:", 0) == 0) return dyadic(num(s.substr(7)));
  if (s.rfind("custom:", 0) == 0) {
    std::vector<u64> table;
    std::stringstream ss(s.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) table.push_back(num(item));
    return custom(std::move(table));
  }
  throw DomainError("unknown coloring '" + s + "' (rado:p, two-adic, dyadic:l, custom:c1,c2,...)");
}

u64 Coloring::color_of(u64 n) const {
  if (n == 0) throw DomainError("colorings are defined on positive integers");
  switch (kind) {
    case Kind::Rado:
      while (n % param == 0) n /= param;
      return n % param;
    case Kind::TwoAdicSign: return static_cast<u64>(__builtin_ctzll(n) & 1);
    case Kind::Dyadic: {
      n >>= __builtin_ctzll(n);
      return n & ((u64{1} << param) - 1);
    }
    case Kind::Custom: return table[(n - 1) % table.size()];
  }
  return 0;
}

u64 Coloring::color_count() const {
  switch (kind) {
    case Kind::Rado: return param - 1;
    case Kind::TwoAdicSign: return 2;
    case Kind::Dyadic: return u64{1} << (param - 1);
    case Kind::Custom: return std::set<u64>(table.begin(), table.end()).size();
  }
  return 0;
}

std::string Coloring::to_string() const {
  switch (kind) {
    case Kind::Rado: return "rado:" + std::to_string(param);
    case Kind::TwoAdicSign: return "two-adic";
    case Kind::Dyadic: return "dyadic:" + std::to_string(param);
    case Kind::Custom: {
      std::string s = "custom:";
      for (std::size_t i = 0; i < table.size(); ++i) s += (i ? "," : "") + std::to_string(table[i]);
      return s;
    }
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::PR_UNCONDITIONAL: return "PR_UNCONDITIONAL";
    case Status::PR_CONDITIONAL_ON_C2QUADRATIC: return "PR_CONDITIONAL_ON_C2QUADRATIC";
    case Status::NOT_PR: return "NOT_PR";
    case Status::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

namespace {

inline constexpr u64 kWitnessPrimeLimit = 1'000'000;

i128 mod_of(i128 v, i128 m) { return floor_mod(v, m); }

// a = 2 mod 4, b odd, ab(a+b)c square
bool two_adic_applies(i128 a, i128 b) { return mod_of(a, 4) == 2 && mod_of(b, 2) == 1; }

}  // namespace

Verdict classify(const EquationTriple& t, Pair pair) {
  EquationTriple e = pair_transform(t, pair);
  i128 a = e.a, b = e.b, c = e.c;
  i128 ac = a * c, bc = b * c, apbc = (a + b) * c, prod = a * b * (a + b) * c;
  Verdict v{Status::UNKNOWN, pair, e, {}, std::nullopt};
  v.evidence.push_back({"transformed", e.to_string()});
  v.evidence.push_back({"ac", i128_str(ac) + " " + yes_no(perfect_square(ac))});
  v.evidence.push_back({"bc", i128_str(bc) + " " + yes_no(perfect_square(bc))});
  v.evidence.push_back({"(a+b)c", i128_str(apbc) + " " + yes_no(perfect_square(apbc))});
  v.evidence.push_back({"ab(a+b)c", i128_str(prod) + " " + yes_no(perfect_square(prod))});

  if (perfect_square(ac) || perfect_square(bc)) {
    v.status = Status::PR_UNCONDITIONAL;
    v.evidence.push_back({"fired", perfect_square(ac) ? "ac square" : "bc square"});
    return v;
  }
  if (perfect_square(apbc)) {
    v.status = Status::PR_CONDITIONAL_ON_C2QUADRATIC;
    v.evidence.push_back({"fired", apbc == 0 ? "(a+b)c square (zero)" : "(a+b)c square"});
    return v;
  }
  if (!perfect_square(prod)) {
    // none of ac, bc, (a+b)c, ab(a+b)c is a square: a Rado prime exists
    auto p = find_qr_obstruction(e, kWitnessPrimeLimit);
    if (!p) throw ResourceError("no quadratic-residue obstruction prime below 10^6");
    v.status = Status::NOT_PR;
    v.evidence.push_back({"fired", "no square among ac, bc, (a+b)c, ab(a+b)c"});
    v.evidence.push_back({"rado_prime", std::to_string(*p)});
    v.witness = *p;
    return v;
  }
  // ab(a+b)c is a square from here on
  if (two_adic_applies(a, b) || two_adic_applies(b, a)) {
    v.status = Status::NOT_PR;
    v.evidence.push_back({"fired", two_adic_applies(a, b) ? "a = 2 mod 4, b odd, ab(a+b)c square"
                                                          : "b = 2 mod 4, a odd, ab(a+b)c square"});
    v.witness = Coloring::two_adic_sign();
    return v;
  }
  if (mod_of(a, 2) == 1 && mod_of(b, 2) == 1 && mod_of(c, 4) == 2 && prod != 0) {
    i128 ab8 = mod_of(a * b, 8);
    v.evidence.push_back({"ab mod 8", i128_str(ab8)});
    if (ab8 != 1) {
      unsigned dexp = valuation(abs_u128(a + b), 2);
      v.status = Status::NOT_PR;
      v.evidence.push_back({"fired", "a, b odd, c = 2 mod 4, ab(a+b)c square, ab != 1 mod 8"});
      v.evidence.push_back({"dyadic_l", std::to_string(dexp + 3)});
      v.witness = Coloring::dyadic(dexp + 3);
      return v;
    }
  }
  v.evidence.push_back({"necessity", "ab(a+b)c square: necessity passed, sufficiency unknown"});
  return v;
}

std::optional<u64> find_qr_obstruction(const EquationTriple& t, u64 prime_limit) {
  i128 a = t.a, b = t.b, c = t.c;
  i128 terms[3] = {a * c, b * c, (a + b) * c};
  int nterms = a + b == 0 ? 2 : 3;
  for (i128 x : terms)
    if (perfect_square(x) && x != 0) return std::nullopt;
  BigInt abc = BigInt(t.a) * t.b * t.c * 2;
  auto check = [&](u64 p) {
    if (abc % p == 0) return false;
    for (int i = 0; i < nterms; ++i)
      if (jacobi(BigInt(to_big(terms[i])), BigInt(p)) != -1) return false;
    return true;
  };
  for (u64 p : base_primes()) {
    if (p > prime_limit) return std::nullopt;
    if (p == 2) continue;
    if (check(p)) return p;
  }
  for (u64 p = base_primes().back() + 2; p <= prime_limit; p += 2)
    if (is_prime(p) && check(p)) return p;
  return std::nullopt;
}

std::optional<u64> find_split_prime(const std::vector<i64>& F1, const std::vector<i64>& F2, u64 limit) {
  std::set<i64> s1(F1.begin(), F1.end()), s2(F2.begin(), F2.end());
  for (i64 e : s1)
    if (s2.count(e)) throw DomainError("find_split_prime: F1 and F2 must be disjoint");
  for (const auto* s : {&s1, &s2})
    for (i64 e : *s)
      if (e != -1 && (e < 2 || !is_prime(static_cast<u64>(e))))
        throw DomainError("find_split_prime: elements must be primes or -1; got " + std::to_string(e));

  bool minus_one_residue = s1.count(-1) > 0;
  std::vector<Congruence> cong;
  i64 i8;
  if (minus_one_residue)
    i8 = s1.count(2) ? 1 : 5;
  else
    i8 = s1.count(2) ? 7 : 3;
  cong.push_back({BigInt(i8), BigInt(8)});

  auto smallest_with = [](u64 q, int want) -> u64 {
    for (u64 r = 1; r < q; ++r)
      if (jacobi(static_cast<i64>(r), q) == want) return r;
    throw InvariantError("no residue class with the requested symbol");
  };
  for (const auto* s : {&s1, &s2}) {
    bool in_f1 = s == &s1;
    for (i64 e : *s) {
      if (e == -1 || e == 2) continue;
      u64 q = static_cast<u64>(e);
      int want;
      if (minus_one_residue || q % 4 == 1)
        want = in_f1 ? 1 : -1;
      else
        want = in_f1 ? -1 : 1;  // reciprocity flips the symbol for q = 3 mod 4, p = 3 mod 4
      cong.push_back({BigInt(smallest_with(q, want)), BigInt(q)});
    }
  }
  Congruence cls = crt(cong);
  if (cls.modulus > BigInt(std::numeric_limits<i64>::max()))
    throw ResourceError("find_split_prime: combined modulus exceeds 64 bits");
  auto p = find_prime_in_class(static_cast<i64>(cls.residue), static_cast<u64>(cls.modulus), limit);
  if (!p) return std::nullopt;
  for (i64 e : s1)
    if (jacobi(e, *p) != 1) throw InvariantError("find_split_prime: F1 element is not a residue");
  for (i64 e : s2)
    if (jacobi(e, *p) != -1) throw InvariantError("find_split_prime: F2 element is not a nonresidue");
  return p;
}

std::vector<Solution> enumerate_solutions(const EquationTriple& t, u64 bound) {
  if (bound > kSolutionBoundCap) throw ResourceError("enumerate_solutions: bound above 10^4");
  std::size_t stripes = static_cast<std::size_t>((bound + kRowsPerStripe - 1) / kRowsPerStripe);
  std::vector<std::vector<Solution>> partial(stripes);
  i128 a = t.a, b = t.b, c = t.c;
  parallel_for(stripes, [&](std::size_t s) {
    u64 lo = 1 + s * kRowsPerStripe, hi = std::min<u64>(bound, lo + kRowsPerStripe - 1);
    for (u64 x = lo; x <= hi; ++x) {
      for (u64 y = 1; y <= bound; ++y) {
        i128 X = static_cast<i128>(x), Y = static_cast<i128>(y);
        i128 v = a * X * X + b * Y * Y;
        if (v % c != 0) continue;
        i128 zz = v / c;
        if (zz <= 0 || !is_square(zz)) continue;
        partial[s].push_back({BigInt(x), BigInt(y), BigInt(static_cast<u64>(isqrt(static_cast<u128>(zz))))});
      }
    }
  });
  std::vector<Solution> out;
  for (auto& p : partial)
    for (auto& sol : p) out.push_back(std::move(sol));
  return out;
}

MonochromaticReport verify_no_monochromatic(const EquationTriple& t, const Coloring& coloring, u64 bound) {
  MonochromaticReport rep;
  for (const auto& s : enumerate_solutions(t, bound)) {
    ++rep.solutions;
    u64 x = static_cast<u64>(s.x), y = static_cast<u64>(s.y);
    if (x == y) {
      ++rep.diagonal;
      continue;
    }
    if (coloring.color_of(x) == coloring.color_of(y)) {
      ++rep.monochromatic;
      if (!rep.first_counterexample) rep.first_counterexample = s;
    }
  }
  return rep;
}

}  // namespace prp
