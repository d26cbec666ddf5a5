#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "prpairs/arith.hpp"
#include "prpairs/averaging.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/experiments.hpp"
#include "prpairs/forms.hpp"
#include "prpairs/regularity.hpp"
#include "prpairs/rings.hpp"
#include "prpairs_cli/cli.hpp"

namespace prp::cli {

namespace {

std::string big(const BigInt& v) { return v.str(); }

std::string join(const std::vector<u64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string exponent_text(const ExponentMap& e) {
  std::string s;
  for (const auto& [p, k] : e) s += (s.empty() ? "" : "*") + std::to_string(p) + "^" + std::to_string(k);
  return s.empty() ? "1" : s;
}

u64 positive(const ExperimentSpec& s, const std::string& key) {
  i64 v = s.get_int(key);
  if (v < 1) throw DomainError(key + " must be positive");
  return static_cast<u64>(v);
}

u64 nonnegative(const ExperimentSpec& s, const std::string& key) {
  i64 v = s.get_int(key);
  if (v < 0) throw DomainError(key + " must be nonnegative");
  return static_cast<u64>(v);
}

u64 grid_size(const ExperimentSpec& s, const std::string& key, const RunOptions& o) {
  u64 v = positive(s, key);
  if (v > o.cap_n) throw ResourceError(key + " = " + std::to_string(v) + " exceeds --cap-n " + std::to_string(o.cap_n));
  return v;
}

void add_complex(ResultRow& r, const std::string& name, Complex z) {
  r.add(name + "_re", z.real()).add(name + "_im", z.imag());
}

EquationTriple triple_of(const ExperimentSpec& s) {
  return EquationTriple(s.get_int("a"), s.get_int("b"), s.get_int("c"));
}

const std::string& nonempty(const ExperimentSpec& s, const std::string& key) {
  const std::string& v = s.get(key);
  if (v.empty()) throw DomainError("missing value for " + key);
  return v;
}

ExponentMap default_Q(const ExperimentSpec& s, u64 K) {
  ExponentMap Q = parse_exponents(s.get("Q"));
  if (Q.empty())
    for (u64 p : primes_up_to(K)) Q[p] = 1;
  return Q;
}

ConcentrationSetup setup_of(const ExperimentSpec& s, MultiplicativeFunction f, TwistData tw) {
  u64 K = positive(s, "K");
  std::optional<u64> c;
  if (s.get_int("c") != 0) c = positive(s, "c");
  return ConcentrationSetup{parse_form(s.get("P")), std::move(f), std::move(tw), default_Q(s, K),
                            s.get_int("a"), s.get_int("b"), c, K, 0};
}

// ---------------------------------------------------------------------------

using Rows = std::vector<ResultRow>;

Rows run_classify(const ExperimentSpec& s, const RunOptions&) {
  auto t = triple_of(s);
  Verdict v = classify(t, parse_pair(s.get("pair")));
  ResultRow r;
  r.add("triple", t.to_string()).add("pair", to_string(v.pair)).add("status", to_string(v.status));
  r.add("transformed", v.transformed.to_string());
  std::string ev;
  for (const auto& e : v.evidence) ev += (ev.empty() ? "" : "; ") + e.name + "=" + e.value;
  r.add("evidence", ev);
  std::string w;
  if (v.witness) {
    if (const auto* col = std::get_if<Coloring>(&*v.witness))
      w = col->to_string();
    else
      w = Coloring::rado(std::get<u64>(*v.witness)).to_string();
  }
  r.add("witness", w);
  r.provenance = "pair-regularity verdict for a x^2 + b y^2 = c z^2";
  return {r};
}

Rows run_solve(const ExperimentSpec& s, const RunOptions&) {
  auto t = triple_of(s);
  std::optional<Family> fam;
  if (s.get("family") != "auto") fam = parse_family(s.get("family"));
  ParametricFamily gen = parametric_family(t, fam);
  i64 range = s.get_int("range");
  ResultRow r;
  r.add("triple", t.to_string()).add("family", to_string(gen.family())).add("d", gen.d());
  if (range > 0) {
    if (range > 1000) throw ResourceError("solve: range above 1000");
    i64 checked = 0;
    for (i64 k = 1; k <= range; ++k)
      for (i64 m = 1; m <= range; ++m)
        for (i64 n = 1; n <= range; ++n) {
          gen(k, m, n);
          ++checked;
        }
    r.add("range", range).add("checked", checked).add("failures", i64{0});
    r.provenance = "parametric family identities, exhaustive over the parameter cube";
    return {r};
  }
  i64 k = s.get_int("k"), m = s.get_int("m"), n = s.get_int("n");
  Solution sol = gen(k, m, n);
  r.add("k", k).add("m", m).add("n", n).add("x", big(sol.x)).add("y", big(sol.y)).add("z", big(sol.z));
  r.provenance = "parametric family solution, checked exactly";
  return {r};
}

Rows run_obstruct(const ExperimentSpec& s, const RunOptions&) {
  u64 limit = positive(s, "prime-limit");
  ResultRow r;
  if (s.get("mode") == "qr") {
    auto t = triple_of(s);
    auto p = find_qr_obstruction(t, limit);
    r.add("triple", t.to_string()).add("prime", p ? Cell(static_cast<i64>(*p)) : Cell(std::string("none")));
    r.provenance = "prime with -ab and (a+b)c nonresidues, giving a Rado coloring";
  } else {
    auto F1 = parse_int_list(s.get("f1")), F2 = parse_int_list(s.get("f2"));
    auto p = find_split_prime(F1, F2, limit);
    r.add("f1", s.get("f1")).add("f2", s.get("f2"));
    r.add("prime", p ? Cell(static_cast<i64>(*p)) : Cell(std::string("none")));
    r.provenance = "prime with prescribed Legendre symbols";
  }
  return {r};
}

Rows run_verify_coloring(const ExperimentSpec& s, const RunOptions& o) {
  auto t = triple_of(s);
  Coloring col = Coloring::parse(s.get("coloring"));
  u64 bound = grid_size(s, "bound", o);
  Rows rows;
  if (s.get_bool("list")) {
    for (const auto& sol : enumerate_solutions(t, bound)) {
      ResultRow r;
      u64 x = static_cast<u64>(sol.x), y = static_cast<u64>(sol.y);
      r.add("x", big(sol.x)).add("y", big(sol.y)).add("z", big(sol.z));
      r.add("color_x", static_cast<i64>(col.color_of(x))).add("color_y", static_cast<i64>(col.color_of(y)));
      r.provenance = "solution with x, y <= bound";
      rows.push_back(std::move(r));
    }
    return rows;
  }
  auto rep = verify_no_monochromatic(t, col, bound);
  ResultRow r;
  r.add("triple", t.to_string()).add("coloring", col.to_string()).add("bound", static_cast<i64>(bound));
  r.add("solutions", static_cast<i64>(rep.solutions)).add("monochromatic", static_cast<i64>(rep.monochromatic));
  r.add("diagonal", static_cast<i64>(rep.diagonal));
  std::string ce;
  if (rep.first_counterexample)
    ce = "(" + big(rep.first_counterexample->x) + "," + big(rep.first_counterexample->y) + "," +
         big(rep.first_counterexample->z) + ")";
  r.add("first_counterexample", ce);
  r.provenance = "exhaustive monochromatic-pair check of a coloring";
  return {r};
}

Rows run_omega(const ExperimentSpec& s, const RunOptions&) {
  auto P = parse_form(s.get("P"));
  const std::string& mode = s.get("mode");
  ResultRow r;
  r.add("P", P.to_string());
  if (mode == "omega") {
    u64 m = positive(s, "r");
    r.add("r", static_cast<i64>(m)).add("omega", static_cast<i64>(omega(P, m)));
    r.provenance = "roots of P(n,1) modulo r";
  } else if (mode == "hensel") {
    u64 p = positive(s, "r"), root = nonnegative(s, "root");
    auto k = static_cast<unsigned>(positive(s, "k"));
    r.add("p", static_cast<i64>(p)).add("root", static_cast<i64>(root)).add("k", static_cast<i64>(k));
    r.add("lift", big(hensel_lift(P, p, root, k)));
    r.provenance = "Hensel lift of a simple root";
  } else if (mode == "partners") {
    auto P2 = parse_form(s.get("P2"));
    auto sets = partner_prime_sets(P, P2, positive(s, "bound"), {});
    r.add("P2", P2.to_string()).add("first", join(sets.first)).add("second", join(sets.second));
    r.provenance = "primes split for one form and inert for the other";
  } else {
    auto P2 = parse_form(s.get("P2"));
    auto cp = construct_congruence_pair(P, P2, static_cast<unsigned>(positive(s, "rr")),
                                        static_cast<unsigned>(positive(s, "K")), parse_exponents(s.get("l")));
    r.add("P2", P2.to_string()).add("a", big(cp.a)).add("b", big(cp.b)).add("Q", big(cp.Q));
    r.add("Q1", big(cp.Q1)).add("Q2", big(cp.Q2)).add("exceptional", join(cp.exceptional)).add("verified", "true");
    r.provenance = "congruence pair (a, b, Q), verified exactly";
  }
  return {r};
}

Rows run_distance(const ExperimentSpec& s, const RunOptions&) {
  auto f = parse_function(s.get("f")), g = parse_function(s.get("g"));
  double x = s.get_real("x"), y = s.get_real("y");
  auto profile = parse_real_list(s.get("profile"));
  Rows rows;
  if (!profile.empty()) {
    for (const auto& cp : distance_profile(f, g, x, profile)) {
      ResultRow r;
      r.add("f", f.description()).add("g", g.description()).add("x", x).add("y", cp.y).add("distance", cp.distance);
      r.provenance = "pretentious distance growth profile";
      rows.push_back(std::move(r));
    }
    return rows;
  }
  ResultRow r;
  r.add("f", f.description()).add("g", g.description()).add("x", x).add("y", y);
  if (s.get("P").empty()) {
    r.add("distance", distance(f, g, x, y));
  } else {
    auto P = parse_form(s.get("P"));
    r.add("P", P.to_string()).add("distance", distance_P(P, f, g, x, y));
  }
  r.provenance = "pretentious distance";
  return {r};
}

Rows run_ring(const ExperimentSpec& s, const RunOptions&) {
  i64 d = s.get_int("d");
  QuadraticRing ring(d);
  const std::string& op = s.get("op");
  ResultRow r;
  r.add("d", d).add("op", op);
  auto elem = [&] { return parse_ring_element(ring, s.get("z")); };
  if (op == "norm") {
    auto z = elem();
    r.add("z", z.to_string()).add("norm", big(z.norm()));
  } else if (op == "count") {
    r.add("k", s.get_int("k")).add("N", s.get_int("N"));
    r.add("count", static_cast<i64>(count_solutions(d, s.get_int("k"), s.get_int("N"))));
  } else if (op == "ideals") {
    u64 k = positive(s, "k");
    r.add("k", static_cast<i64>(k)).add("ideals", static_cast<i64>(count_ideals(d, k)));
  } else if (op == "unit") {
    auto u = fundamental_unit(d);
    r.add("unit", u.unit.to_string()).add("norm", big(u.norm));
  } else if (op == "torsion") {
    auto units = torsion_units(ring);
    std::string list;
    for (const auto& u : units) list += (list.empty() ? "" : ",") + u.to_string();
    r.add("count", static_cast<i64>(units.size())).add("units", list);
  } else if (op == "regular") {
    auto z = elem();
    r.add("z", z.to_string()).add("C", s.get_real("C")).add("N", s.get_int("N"));
    r.add("regular", is_C_regular(z, s.get_real("C"), s.get_int("N")) ? "true" : "false");
  } else if (op == "associate") {
    auto z = elem();
    auto a = find_regular_associate(z, s.get_real("C"), s.get_int("N"), s.get_int("t-range"));
    r.add("z", z.to_string());
    r.add("t", a ? Cell(a->t) : Cell(std::string("none"))).add("associate", a ? a->associate.to_string() : "");
  } else {
    auto fit = fit_counting_constant(d, s.get_int("k-max"), s.get_int("N"));
    r.add("k_max", s.get_int("k-max")).add("N", s.get_int("N"));
    r.add("fitted_c", fit.fitted_c).add("samples", static_cast<i64>(fit.samples));
  }
  r.provenance = "arithmetic in Z[tau_d]";
  return {r};
}

Rows run_weights(const ExperimentSpec& s, const RunOptions& o) {
  WeightSpec spec(s.get_real("delta"), parse_form(s.get("p1")), parse_form(s.get("p2")));
  ResultRow r;
  r.add("p1", spec.P1.to_string()).add("p2", spec.P2.to_string()).add("delta", spec.delta);
  i64 am = s.get_int("at-m"), an = s.get_int("at-n");
  if (am != 0 || an != 0) {
    r.add("m", am).add("n", an).add("w", weight(spec, am, an));
    r.provenance = "weight at a lattice point";
    return {r};
  }
  u64 N = grid_size(s, "n", o);
  auto mu = mu_estimate(spec, N, positive(s, "resolution"));
  r.add("n", static_cast<i64>(N)).add("mu_grid", mu.grid).add("mu_riemann", mu.riemann);
  r.add("abs_diff", std::fabs(mu.grid - mu.riemann));
  if (s.get_bool("stability")) r.add("stability", weight_stability(spec, N, s.get_int("q-max")));
  r.provenance = "normalization of the phase weight";
  return {r};
}

Rows run_divstat(const ExperimentSpec& s, const RunOptions& o) {
  auto P = parse_form(s.get("P"));
  i64 Q = s.get_int("Q"), a = s.get_int("a"), b = s.get_int("b");
  u64 N = grid_size(s, "N", o);
  Rows rows;
  if (s.get("mode") == "bound") {
    u64 l = positive(s, "l");
    auto res = divisor_bound_probe(P, Q, a, b, l, N);
    ResultRow r;
    r.add("l", static_cast<i64>(l)).add("exact", res.exact).add("reference", res.reference);
    r.provenance = "frequency of l | P(Qm+a, Qn+b) against Q^2/l";
    return {r};
  }
  auto primes = parse_int_list(s.get("primes"));
  if (primes.empty()) throw DomainError("divstat: primes list is empty");
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i; j < primes.size(); ++j) {
      if (primes[i] < 2 || primes[j] < 2) throw DomainError("divstat: primes must be at least 2");
      u64 p = static_cast<u64>(primes[i]), q = static_cast<u64>(primes[j]);
      double exact = divisor_stat_exact(P, Q, a, b, p, q, N);
      ResultRow r;
      r.add("p", static_cast<i64>(p)).add("q", static_cast<i64>(q)).add("exact", exact);
      if (divisor_exceptional(P, Q, p) || divisor_exceptional(P, Q, q)) {
        r.add("predicted", "exceptional").add("abs_err", "");
      } else {
        double pred = divisor_stat_predicted(P, p, q, Q);
        r.add("predicted", pred).add("abs_err", std::fabs(exact - pred));
      }
      r.provenance = "exact-divisibility frequency against the local-density prediction";
      rows.push_back(std::move(r));
    }
  return rows;
}

Rows run_folner(const ExperimentSpec& s, const RunOptions&) {
  u64 K = positive(s, "k");
  const std::string& mode = s.get("mode");
  auto f = parse_function(s.get("f"));
  Rows rows;
  auto element_rows = [&](const std::vector<FolnerElement>& elems, const char* prov) {
    for (const auto& e : elems) {
      ResultRow r;
      Complex v = f.evaluate_on_exponents(e.exponents);
      r.add("element", exponent_text(e.exponents));
      add_complex(r, "f", v);
      r.provenance = prov;
      rows.push_back(std::move(r));
    }
  };
  if (mode == "average") {
    ResultRow r;
    r.add("k", static_cast<i64>(K)).add("f", f.description());
    Complex v;
    if (K <= kFolnerEnumerationCap) {
      v = folner_average(f, K);
      r.add("sampled", "false");
    } else {
      v = folner_average_sampled(f, K, positive(s, "samples"), nonnegative(s, "seed"));
      r.add("sampled", "true");
    }
    r.add("mean_re", v.real()).add("mean_im", v.imag());
    r.provenance = "average of f over the multiplicative Folner set";
    rows.push_back(std::move(r));
  } else if (mode == "enumerate") {
    element_rows(folner_enumerate(K), "element of the Folner set");
  } else if (mode == "sample") {
    element_rows(folner_sample(K, positive(s, "samples"), nonnegative(s, "seed")), "sampled Folner element");
  } else {
    i64 j = s.get_int("j");
    element_rows(folner_partner(K, static_cast<int>(j), parse_form(s.get("p1")), parse_form(s.get("p2"))),
                 "element of the partner Folner set");
  }
  return rows;
}

Rows run_concentrate(const ExperimentSpec& s, const RunOptions& o) {
  auto tw = parse_twist(s.get("chi"), s.get_real("t"));
  auto setup = setup_of(s, parse_function(s.get("f")), tw);
  setup.N = grid_size(s, "N", o);
  auto rep = concentration_report(setup);
  Complex F = F_sum(setup.f, setup.twist, setup.K, setup.N);
  ResultRow r;
  r.add("P", setup.P.to_string()).add("f", setup.f.description()).add("K", static_cast<i64>(setup.K));
  r.add("N", static_cast<i64>(setup.N)).add("Q", exponent_text(setup.Q)).add("c", static_cast<i64>(setup.c_value()));
  r.add("lhs", rep.lhs);
  add_complex(r, "G", rep.G);
  add_complex(r, "F", F);
  r.add("d_low", rep.d_low).add("d_high", rep.d_high).add("d_high_capped", rep.d_high_capped ? "true" : "false");
  r.add("bound", rep.bound).add("holds", rep.lhs <= rep.bound ? "true" : "false");
  r.provenance = "concentration deviation with its monitored bound";
  return {r};
}

Rows run_tk(const ExperimentSpec& s, const RunOptions& o) {
  auto P = parse_form(s.get("P"));
  u64 lo = nonnegative(s, "h-lo"), hi = nonnegative(s, "h-hi");
  double hv = s.get_real("h-value");
  std::map<u64, Complex> values;
  for (u64 p : primes_up_to(hi))
    if (p > lo && in_script_P(P, p)) values[p] = Complex{hv, 0.0};
  std::string desc = "h=" + format_double(hv) + " on (" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  auto h = AdditiveFunction::on_primes(desc, values);
  auto setup = setup_of(s, principal(), TwistData{0.0, dirichlet_character(1, 0)});
  setup.N = grid_size(s, "N", o);
  auto rep = tk_report(setup, h);
  ResultRow r;
  r.add("P", P.to_string()).add("h", desc).add("K", static_cast<i64>(setup.K)).add("N", static_cast<i64>(setup.N));
  r.add("variance", rep.variance);
  add_complex(r, "H", rep.H);
  r.add("d2_low", rep.d2_low).add("d2_high", rep.d2_high).add("bound", rep.bound);
  r.add("holds", rep.variance <= rep.bound ? "true" : "false");
  r.provenance = "additive variance with its monitored bound";
  return {r};
}

Rows run_ldelta(const ExperimentSpec& s, const RunOptions& o) {
  auto f = parse_function(s.get("f"));
  if (s.get_bool("conj")) f = f.conj();
  auto P1 = parse_form(s.get("p1")), P2 = parse_form(s.get("p2"));
  double delta = s.get_real("delta");
  BigInt Q = parse_bigint(s.get("Q"));
  u64 N = grid_size(s, "N", o);
  std::optional<double> mu;
  if (s.get_real("mu") != 0.0) mu = s.get_real("mu");
  auto res = L_delta(f, P1, P2, delta, Q, s.get_int("a"), s.get_int("b"), N, mu);
  ResultRow r;
  r.add("f", f.description()).add("p1", P1.to_string()).add("p2", P2.to_string()).add("delta", delta);
  r.add("N", static_cast<i64>(N)).add("re", res.value.real()).add("im", res.value.imag());
  r.add("abs", std::abs(res.value)).add("mu", res.mu).add("abs_minus_one", std::abs(res.value - Complex{1.0, 0.0}));
  r.provenance = "weighted correlation average of f(P1) conj f(P2)";
  return {r};
}

Rows run_probe_nonneg(const ExperimentSpec& s, const RunOptions& o) {
  auto f = parse_function(s.get("f"));
  auto P1 = parse_form(s.get("p1")), P2 = parse_form(s.get("p2"));
  u64 N = grid_size(s, "N", o);
  auto res = nonnegativity_probe(f, P1, P2, s.get_real("delta"), positive(s, "K"), N);
  ResultRow r;
  r.add("f", f.description()).add("K", s.get_int("K")).add("N", static_cast<i64>(N));
  r.add("mean_re", res.mean_re).add("q_count", static_cast<i64>(res.q_count)).add("mu", res.mu);
  r.provenance = "Folner-averaged real part of the weighted correlation";
  return {r};
}

RegionSpec parse_region(const std::string& text) {
  RegionSpec region;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ';'))
    if (cur.find_first_not_of(" \t") != std::string::npos) region.halfplanes.push_back(parse_linear(cur));
  return region;
}

Rows run_correlate(const ExperimentSpec& s, const RunOptions& o) {
  u64 N = grid_size(s, "N", o);
  ResultRow r;
  if (s.get("mode") == "pair") {
    auto f1 = parse_function(s.get("f1"));
    auto f2 = s.get("f2").empty() ? liouville() : parse_function(s.get("f2"));
    auto P1 = parse_form(s.get("p1")), P2 = parse_form(s.get("p2"));
    Complex v = pair_correlation(f1, P1, f2, P2, N);
    r.add("f1", f1.description()).add("p1", P1.to_string()).add("f2", f2.description()).add("p2", P2.to_string());
    r.add("N", static_cast<i64>(N)).add("re", v.real()).add("im", v.imag()).add("abs", std::abs(v));
    r.provenance = "correlation of f1 on P1 with f2 on P2; reported only";
    return {r};
  }
  std::vector<LinearFactor> factors;
  std::string desc;
  for (int i = 1; i <= 3; ++i) {
    std::string fk = "f" + std::to_string(i), lk = "l" + std::to_string(i);
    if (s.get(fk).empty() && s.get(lk).empty()) continue;
    auto f = parse_function(nonempty(s, fk));
    auto L = parse_linear(nonempty(s, lk));
    desc += (desc.empty() ? "" : " ") + f.description() + "(" + L.to_string() + ")";
    factors.push_back({std::move(f), L});
  }
  auto g = parse_function(s.get("g"));
  auto P = parse_form(s.get("P"));
  Complex v = correlation_probe(factors, g, P, parse_region(s.get("region")), parse_bigint(s.get("Q")),
                                s.get_int("a"), s.get_int("b"), N);
  r.add("factors", desc).add("g", g.description()).add("P", P.to_string()).add("N", static_cast<i64>(N));
  r.add("re", v.real()).add("im", v.imag()).add("abs", std::abs(v));
  r.provenance = "grid correlation of linear factors with g on P";
  return {r};
}

Rows run_levelset(const ExperimentSpec& s, const RunOptions&) {
  LevelSetSpec spec(parse_function(s.get("f")), s.get_real("width"), static_cast<unsigned>(positive(s, "lmax")));
  auto P1 = parse_form(s.get("p1")), P2 = parse_form(s.get("p2"));
  auto hit = level_set_search(spec, P1, P2, s.get_int("k-max"), s.get_int("mn-max"));
  ResultRow r;
  r.add("f", spec.f.description()).add("width", spec.half_width).add("truncation_bound", spec.truncation_bound());
  if (!hit) {
    r.add("found", "false");
  } else {
    bool inside = spec.in_arc(spec.f.evaluate(hit->r)) && spec.in_arc(spec.f.evaluate(hit->s));
    r.add("found", "true").add("k", hit->k).add("m", hit->m).add("n", hit->n).add("r", big(hit->r)).add("s", big(hit->s));
    add_complex(r, "fr", hit->fr);
    add_complex(r, "fs", hit->fs);
    add_complex(r, "C", hit->C_surrogate);
    r.add("in_arc", inside ? "true" : "false");
  }
  r.provenance = "level-set search for k P1, k P2 with f-values in the arc";
  return {r};
}

using Runner = Rows (*)(const ExperimentSpec&, const RunOptions&);

Runner runner_for(const std::string& sub) {
  static const std::map<std::string, Runner> table = {
      {"classify", run_classify},       {"solve", run_solve},         {"obstruct", run_obstruct},
      {"verify-coloring", run_verify_coloring}, {"omega", run_omega}, {"distance", run_distance},
      {"ring", run_ring},               {"weights", run_weights},     {"divstat", run_divstat},
      {"folner", run_folner},           {"concentrate", run_concentrate}, {"tk", run_tk},
      {"ldelta", run_ldelta},           {"probe-nonneg", run_probe_nonneg}, {"correlate", run_correlate},
      {"levelset", run_levelset},
  };
  auto it = table.find(sub);
  if (it == table.end()) throw DomainError("unknown subcommand '" + sub + "'");
  return it->second;
}

// ---------------------------------------------------------------------------

std::string json_cell(const Cell& c) {
  if (const auto* i = std::get_if<i64>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
  return nlohmann::json(std::get<std::string>(c)).dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  if (const auto* i = std::get_if<i64>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

std::vector<ResultRow> run(const ExperimentSpec& spec_in, const RunOptions& options) {
  ExperimentSpec spec = spec_in;
  spec.validate_and_normalize();
  Rows rows = runner_for(spec.subcommand)(spec, options);
  std::string id = spec.run_id();
  for (auto& r : rows) r.run_id = id;
  return rows;
}

std::vector<ResultRow> sweep(const ExperimentSpec& templ, const std::string& axis,
                             const std::vector<std::string>& values, const RunOptions& options) {
  if (values.empty()) throw DomainError("sweep: empty value list");
  const ParamDef* def = schema(templ.subcommand).find(axis);
  if (!def) throw DomainError("sweep: '" + axis + "' is not a parameter of " + templ.subcommand);
  if (def->type != ParamType::Int && def->type != ParamType::Real && def->type != ParamType::BigInt)
    throw DomainError("sweep: axis '" + axis + "' is not numeric");
  Rows out;
  for (const auto& v : values) {
    ExperimentSpec point = templ;
    point.params[axis] = v;
    for (auto& r : run(point, options)) {
      ResultRow row;
      row.run_id = r.run_id;
      row.provenance = r.provenance;
      row.add("axis", axis).add("value", v);
      for (auto& c : r.columns) row.columns.push_back(std::move(c));
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::string render(const std::vector<ResultRow>& rows, Format format) {
  std::string out;
  if (format == Format::Json) {
    for (const auto& r : rows) {
      out += "{\"run_id\":" + nlohmann::json(r.run_id).dump();
      for (const auto& [k, v] : r.columns) out += "," + nlohmann::json(k).dump() + ":" + json_cell(v);
      out += ",\"provenance\":" + nlohmann::json(r.provenance).dump() + "}\n";
    }
    return out;
  }
  std::vector<std::string> header;
  for (const auto& r : rows)
    for (const auto& c : r.columns)
      if (std::find(header.begin(), header.end(), c.first) == header.end()) header.push_back(c.first);
  out += "run_id";
  for (const auto& h : header) out += "," + csv_field(h);
  out += ",provenance\n";
  for (const auto& r : rows) {
    out += r.run_id;
    for (const auto& h : header) {
      out += ",";
      auto it = std::find_if(r.columns.begin(), r.columns.end(), [&](const auto& c) { return c.first == h; });
      if (it != r.columns.end()) out += csv_cell(it->second);
    }
    out += "," + csv_field(r.provenance) + "\n";
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw ResourceError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DomainError("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace prp::cli
