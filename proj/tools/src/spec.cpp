#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "prpairs/errors.hpp"
#include "prpairs_cli/cli.hpp"

namespace prp::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> bracket_items(const std::string& raw, std::size_t expected, const char* what) {
  std::string s = trim(raw);
  auto eq = s.find('=');
  if (eq != std::string::npos) s = trim(s.substr(eq + 1));
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw DomainError(std::string("malformed ") + what + " literal '" + raw + "'");
  auto items = split(s.substr(1, s.size() - 2), ',');
  if (items.size() != expected) throw DomainError(std::string("malformed ") + what + " literal '" + raw + "'");
  return items;
}

}  // namespace

i64 parse_int(const std::string& raw) {
  std::string s = trim(raw);
  i64 v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw DomainError("expected an integer, got '" + raw + "'");
  return v;
}

double parse_real(const std::string& raw) {
  std::string s = trim(raw);
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
    throw DomainError("expected a real number, got '" + raw + "'");
  return v;
}

BigInt parse_bigint(const std::string& raw) {
  std::string s = trim(raw);
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw DomainError("expected an integer, got '" + raw + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw DomainError("expected an integer, got '" + raw + "'");
  return BigInt(s);
}

bool parse_bool(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw DomainError("expected true or false, got '" + raw + "'");
}

std::vector<i64> parse_int_list(const std::string& raw) {
  std::vector<i64> out;
  if (trim(raw).empty()) return out;
  for (const auto& item : split(raw, ',')) out.push_back(parse_int(item));
  return out;
}

std::vector<double> parse_real_list(const std::string& raw) {
  std::vector<double> out;
  if (trim(raw).empty()) return out;
  for (const auto& item : split(raw, ',')) out.push_back(parse_real(item));
  return out;
}

ExponentMap parse_exponents(const std::string& raw) {
  ExponentMap out;
  if (trim(raw).empty()) return out;
  for (const auto& item : split(raw, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("exponent entries are p:e, got '" + item + "'");
    i64 p = parse_int(item.substr(0, colon)), e = parse_int(item.substr(colon + 1));
    if (p < 2 || e < 1) throw DomainError("exponent entries need p >= 2 and e >= 1, got '" + item + "'");
    out[static_cast<u64>(p)] += static_cast<unsigned>(e);
  }
  return out;
}

BinaryQuadraticForm parse_form(const std::string& s) {
  auto items = bracket_items(s, 3, "form");
  return {parse_int(items[0]), parse_int(items[1]), parse_int(items[2])};
}

LinearForm parse_linear(const std::string& s) {
  auto items = bracket_items(s, 2, "linear form");
  return {parse_int(items[0]), parse_int(items[1])};
}

TwistData parse_twist(const std::string& chi, double t) {
  auto parts = split(chi, ':');
  if (parts.size() != 2) throw DomainError("character must be q:index, got '" + chi + "'");
  i64 q = parse_int(parts[0]), idx = parse_int(parts[1]);
  if (q < 1 || idx < 0) throw DomainError("character must have q >= 1 and index >= 0");
  return {t, dirichlet_character(static_cast<u64>(q), static_cast<u64>(idx))};
}

namespace {

MultiplicativeFunction parse_single_function(const std::string& s) {
  if (s == "liouville") return liouville();
  if (s == "principal" || s == "1") return principal();
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto parts = split(rest, ':');
  auto chi_of = [&](const std::string& q, const std::string& i) {
    i64 qq = parse_int(q), ii = parse_int(i);
    if (qq < 1 || ii < 0) throw DomainError("character needs q >= 1 and index >= 0 in '" + s + "'");
    return dirichlet_character(static_cast<u64>(qq), static_cast<u64>(ii));
  };
  if (head == "char" && parts.size() == 2) return character_function(chi_of(parts[0], parts[1]));
  if (head == "charlift" && parts.size() == 2) return character_lift(chi_of(parts[0], parts[1]));
  if (head == "arch" && parts.size() == 1) return archimedean(parse_real(parts[0]));
  if (head == "twisted" && parts.size() == 3) return twisted({parse_real(parts[2]), chi_of(parts[0], parts[1])});
  if (head == "prime-patch") {
    std::string r = trim(rest);
    if (r.size() < 2 || r.front() != '(' || r.back() != ')') throw DomainError("prime-patch needs (lo,hi,re[,im])");
    auto v = split(r.substr(1, r.size() - 2), ',');
    if (v.size() != 3 && v.size() != 4) throw DomainError("prime-patch needs (lo,hi,re[,im])");
    i64 lo = parse_int(v[0]), hi = parse_int(v[1]);
    if (lo < 0 || hi < lo) throw DomainError("prime-patch needs 0 <= lo <= hi");
    Complex val{parse_real(v[2]), v.size() == 4 ? parse_real(v[3]) : 0.0};
    return prime_patch(static_cast<u64>(lo), static_cast<u64>(hi), val);
  }
  throw DomainError("unknown function '" + s +
                    "' (liouville, principal, char:q:i, charlift:q:i, arch:t, twisted:q:i:t, prime-patch:(lo,hi,v))");
}

}  // namespace

MultiplicativeFunction parse_function(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw DomainError("empty function name");
  auto parts = split(s, '*');
  MultiplicativeFunction f = parse_single_function(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) f = f * parse_single_function(parts[i]);
  return f;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

// ---------------------------------------------------------------------------

const ParamDef* SubcommandSchema::find(const std::string& key) const {
  for (const auto& p : params)
    if (p.key == key) return &p;
  return nullptr;
}

namespace {

using T = ParamType;

ParamDef req(std::string key, T type, std::string help, bool positional = false) {
  return {std::move(key), type, "", true, positional, std::move(help), {}};
}
ParamDef opt(std::string key, T type, std::string def, std::string help) {
  return {std::move(key), type, std::move(def), false, false, std::move(help), {}};
}
ParamDef choice(std::string key, std::string def, std::vector<std::string> choices, std::string help) {
  return {std::move(key), T::Text, std::move(def), false, false, std::move(help), std::move(choices)};
}
ParamDef coeff(std::string key, bool required = true) {
  ParamDef d{std::move(key), T::Int, required ? "" : "0", required, true, "equation coefficient", {}};
  return d;
}

std::vector<SubcommandSchema> build_schemas() {
  std::vector<SubcommandSchema> s;
  s.push_back({"classify", "pair-regularity verdict for a x^2 + b y^2 = c z^2",
               {coeff("a"), coeff("b"), coeff("c"), choice("pair", "xy", {"xy", "xz", "yz"}, "variable pair")}});
  s.push_back({"solve", "parametric solutions",
               {coeff("a"), coeff("b"), coeff("c"),
                choice("family", "auto", {"auto", "A", "A-swapped", "B", "C"}, "solution family"),
                opt("k", T::Int, "1", "scale"), opt("m", T::Int, "2", "first parameter"),
                opt("n", T::Int, "1", "second parameter"),
                opt("range", T::Int, "0", "if positive, verify all k, m, n in [1, range] and report the count")}});
  s.push_back({"obstruct", "quadratic-residue obstruction prime, or a prime splitting two sets",
               {coeff("a", false), coeff("b", false), coeff("c", false), choice("mode", "qr", {"qr", "split"}, "search"),
                opt("prime-limit", T::Int, "100000", "largest prime scanned"),
                opt("f1", T::IntList, "", "split mode: required residues (primes or -1)"),
                opt("f2", T::IntList, "", "split mode: required nonresidues (primes or -1)")}});
  s.push_back({"verify-coloring", "count monochromatic solutions for a coloring",
               {coeff("a"), coeff("b"), coeff("c"), req("coloring", T::Text, "rado:p | two-adic | dyadic:l | custom:..."),
                opt("bound", T::Int, "2000", "x, y range"), opt("list", T::Bool, "false", "emit each solution")}});
  s.push_back({"omega", "root counts of P(n,1) and related local data",
               {req("P", T::Form, "form [a,b,c]"), choice("mode", "omega", {"omega", "hensel", "partners", "pair"}, "query"),
                opt("r", T::Int, "5", "modulus, or prime p for hensel"), opt("root", T::Int, "0", "hensel root"),
                opt("k", T::Int, "2", "hensel target exponent"), opt("P2", T::Form, "[1,0,2]", "second form"),
                opt("bound", T::Int, "100", "partner-set bound"), opt("K", T::Int, "5", "congruence-pair K"),
                opt("l", T::Exponents, "", "congruence-pair exponents p:l"),
                opt("rr", T::Int, "2", "congruence-pair r")}});
  s.push_back({"distance", "pretentious distance",
               {req("f", T::Function, "function"), opt("g", T::Function, "principal", "function"),
                opt("x", T::Real, "1", "lower limit"), req("y", T::Real, "upper limit"),
                opt("P", T::Form, "", "weight primes by omega_P when given"),
                opt("profile", T::RealList, "", "checkpoints for a growth profile")}});
  s.push_back({"ring", "quadratic ring arithmetic",
               {req("d", T::Int, "squarefree d, ring Z[tau_d]"),
                choice("op", "norm", {"norm", "count", "ideals", "unit", "torsion", "regular", "associate", "fit"}, "query"),
                opt("z", T::Text, "1+0*tau", "element m+n*tau"), opt("k", T::Int, "1", "norm value"),
                opt("N", T::Int, "30", "box size"), opt("C", T::Real, "1", "regularity constant"),
                opt("t-range", T::Int, "5", "unit exponent range"), opt("k-max", T::Int, "100", "fit range")}});
  {
    SubcommandSchema w{"weights", "weight normalization and stability",
                       {req("p1", T::Form, "P1"), req("p2", T::Form, "P2"), req("delta", T::Real, "delta in (0,1/2)"),
                        opt("n", T::Int, "1000", "grid size"), opt("resolution", T::Int, "4096", "Riemann resolution"),
                        opt("at-m", T::Int, "0", "evaluate w at (at-m, at-n) when nonzero"),
                        opt("at-n", T::Int, "0", "see at-m"), opt("stability", T::Bool, "false", "weight stability"),
                        opt("q-max", T::Int, "50", "stability range of Q")}};
    s.push_back(w);
  }
  s.push_back({"divstat", "exact and predicted divisor statistics",
               {req("P", T::Form, "form"), opt("Q", T::Int, "1", "modulus Q"), opt("a", T::Int, "0", "shift a"),
                opt("b", T::Int, "0", "shift b"), opt("primes", T::IntList, "5,13", "primes p, q"),
                opt("N", T::Int, "2000", "grid size"), choice("mode", "exact", {"exact", "bound"}, "statistic"),
                opt("l", T::Int, "5", "bound mode divisor")}});
  s.push_back({"folner", "multiplicative Folner sets and averages",
               {req("k", T::Int, "K"), opt("f", T::Function, "liouville", "function"),
                choice("mode", "average", {"average", "enumerate", "partner", "sample"}, "query"),
                opt("j", T::Int, "1", "partner index"), opt("p1", T::Form, "[1,0,1]", "P1"),
                opt("p2", T::Form, "[1,0,2]", "P2"), opt("samples", T::Int, "1000", "sample count"),
                opt("seed", T::Int, "1", "sample seed")}});
  s.push_back({"concentrate", "concentration deviation with its monitored bound",
               {req("P", T::Form, "irreducible form"), req("f", T::Function, "function"),
                opt("chi", T::Text, "1:0", "character q:index"), opt("t", T::Real, "0", "Archimedean exponent"),
                opt("Q", T::Exponents, "", "Q as p:e list; default product of primes <= K"),
                opt("a", T::Int, "1", "shift a"), opt("b", T::Int, "0", "shift b"),
                opt("c", T::Int, "0", "divisor c; 0 means gcd(P(a,b), Q)"), req("K", T::Int, "cutoff"),
                opt("N", T::Int, "1000", "grid size")}});
  s.push_back({"tk", "additive variance with its monitored bound",
               {req("P", T::Form, "irreducible form"), opt("h-lo", T::Int, "0", "h supported on primes > h-lo"),
                opt("h-hi", T::Int, "0", "and <= h-hi, inside the prime set of P"),
                opt("h-value", T::Real, "1", "h(p) on the support"),
                opt("Q", T::Exponents, "", "Q as p:e list; default product of primes <= K"),
                opt("a", T::Int, "1", "shift a"), opt("b", T::Int, "0", "shift b"),
                opt("c", T::Int, "0", "divisor c; 0 means gcd(P(a,b), Q)"), req("K", T::Int, "cutoff"),
                opt("N", T::Int, "1000", "grid size")}});
  s.push_back({"ldelta", "weighted correlation average",
               {req("f", T::Function, "function"), req("p1", T::Form, "P1"), req("p2", T::Form, "P2"),
                req("delta", T::Real, "delta"), opt("Q", T::BigInt, "1", "modulus Q"), opt("a", T::Int, "1", "shift a"),
                opt("b", T::Int, "0", "shift b"), opt("N", T::Int, "1000", "grid size"),
                opt("mu", T::Real, "0", "normalization; 0 means Riemann estimate"),
                opt("conj", T::Bool, "false", "use the conjugate function")}});
  s.push_back({"probe-nonneg", "Folner-averaged real part of the weighted correlation",
               {req("f", T::Function, "function"), req("p1", T::Form, "P1"), req("p2", T::Form, "P2"),
                req("delta", T::Real, "delta"), opt("K", T::Int, "2", "Folner level, at most 4"),
                opt("N", T::Int, "1000", "grid size")}});
  s.push_back({"correlate", "grid correlations over linear and quadratic forms",
               {choice("mode", "linear", {"linear", "pair"}, "linear factors times g(P), or f1(P1) f2(P2)"),
                opt("f1", T::Function, "liouville", "first function"), opt("l1", T::Linear, "[1,0]", "first linear form"),
                opt("f2", T::Function, "", "second function"), opt("l2", T::Linear, "", "second linear form"),
                opt("f3", T::Function, "", "third function"), opt("l3", T::Linear, "", "third linear form"),
                opt("g", T::Function, "principal", "function on P"), opt("P", T::Form, "[1,0,1]", "quadratic form"),
                opt("region", T::Text, "", "half-planes [u,v];[u,v] with u x + v y >= 0"),
                opt("p1", T::Form, "[1,0,1]", "pair mode P1"), opt("p2", T::Form, "[1,0,2]", "pair mode P2"),
                opt("Q", T::BigInt, "1", "modulus Q"), opt("a", T::Int, "0", "shift a"), opt("b", T::Int, "0", "shift b"),
                opt("N", T::Int, "1000", "grid size")}});
  s.push_back({"levelset", "search for k P1(m,n), k P2(m,n) with values in an arc",
               {req("f", T::Function, "function"), req("width", T::Real, "arc half-width in radians"),
                opt("lmax", T::Int, "64", "Fourier truncation"), req("p1", T::Form, "P1"), req("p2", T::Form, "P2"),
                opt("k-max", T::Int, "500", "largest k"), opt("mn-max", T::Int, "60", "largest m, n")}});
  return s;
}

}  // namespace

const std::vector<SubcommandSchema>& schemas() {
  static const std::vector<SubcommandSchema> s = build_schemas();
  return s;
}

const SubcommandSchema& schema(const std::string& subcommand) {
  for (const auto& s : schemas())
    if (s.name == subcommand) return s;
  throw DomainError("unknown subcommand '" + subcommand + "'");
}

const std::vector<std::pair<std::string, std::string>>& operation_registry() {
  static const std::vector<std::pair<std::string, std::string>> r = {
      {"parametric_family", "solve"},
      {"classify", "classify"},
      {"find_qr_obstruction", "obstruct"},
      {"find_split_prime", "obstruct"},
      {"enumerate_solutions", "verify-coloring"},
      {"verify_no_monochromatic", "verify-coloring"},
      {"weight", "weights"},
      {"mu_estimate", "weights"},
      {"weight_stability", "weights"},
      {"folner_enumerate", "folner"},
      {"folner_partner", "folner"},
      {"folner_average", "folner"},
      {"divisor_stat_exact", "divstat"},
      {"divisor_stat_predicted", "divstat"},
      {"divisor_bound_probe", "divstat"},
      {"G_sum", "concentrate"},
      {"F_sum", "concentrate"},
      {"concentration_lhs", "concentrate"},
      {"H_sum", "tk"},
      {"tk_variance", "tk"},
      {"L_delta", "ldelta"},
      {"nonnegativity_probe", "probe-nonneg"},
      {"correlation_probe", "correlate"},
      {"level_set_search", "levelset"},
  };
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void check_type(const ParamDef& d, const std::string& v) {
  if (v.empty() && !d.required) return;
  switch (d.type) {
    case T::Int: parse_int(v); break;
    case T::BigInt: parse_bigint(v); break;
    case T::Real: parse_real(v); break;
    case T::Bool: parse_bool(v); break;
    case T::Text:
      if (!d.choices.empty() && std::find(d.choices.begin(), d.choices.end(), v) == d.choices.end())
        throw DomainError("invalid value '" + v + "' for " + d.key);
      break;
    case T::Form: parse_form(v); break;
    case T::Linear: parse_linear(v); break;
    case T::Function: parse_function(v); break;
    case T::IntList: parse_int_list(v); break;
    case T::RealList: parse_real_list(v); break;
    case T::Exponents: parse_exponents(v); break;
  }
}

}  // namespace

void ExperimentSpec::validate_and_normalize() {
  const SubcommandSchema& sc = schema(subcommand);
  for (auto& [k, v] : params) {
    const ParamDef* d = sc.find(k);
    if (!d) throw DomainError("unknown key '" + k + "' for subcommand " + subcommand);
    v = trim(v);
    if (v.find('\n') != std::string::npos) throw DomainError("value of " + k + " spans lines");
  }
  for (const auto& d : sc.params) {
    auto it = params.find(d.key);
    if (it == params.end()) {
      if (d.required) throw DomainError("missing required key '" + d.key + "' for subcommand " + subcommand);
      params[d.key] = d.default_value;
      it = params.find(d.key);
    }
    try {
      check_type(d, it->second);
    } catch (const DomainError& e) {
      throw DomainError(d.key + ": " + e.what());
    }
  }
}

std::string ExperimentSpec::serialize() const {
  std::string s = "subcommand = " + subcommand + "\n";
  for (const auto& [k, v] : params) s += k + " = " + v + "\n";
  return s;
}

ExperimentSpec ExperimentSpec::parse(const std::string& text) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string k = trim(t.substr(0, eq)), v = trim(t.substr(eq + 1));
    if (k.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    if (k == "subcommand") {
      spec.subcommand = v;
      continue;
    }
    if (spec.params.count(k)) throw DomainError("config line " + std::to_string(lineno) + ": duplicate key " + k);
    spec.params[k] = v;
  }
  return spec;
}

std::string ExperimentSpec::run_id() const {
  u64 h = 1469598103934665603ull;
  for (unsigned char ch : serialize()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::string& ExperimentSpec::get(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw DomainError("missing key '" + key + "'");
  return it->second;
}

}  // namespace prp::cli
