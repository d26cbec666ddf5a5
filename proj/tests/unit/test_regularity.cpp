#include "doctest.h"
#include "oracles.hpp"
#include "prpairs/errors.hpp"
#include "prpairs/regularity.hpp"

using namespace prp;

namespace {

bool satisfies(const EquationTriple& t, const Solution& s) {
  return t.a * s.x * s.x + t.b * s.y * s.y == t.c * s.z * s.z;
}

// smallest prime p <= limit, p not dividing 2abc, with ac, bc, (a+b)c all
// nonresidues (the (a+b) term dropped when a + b = 0)
std::optional<u64> qr_oracle(i64 a, i64 b, i64 c, i64 limit) {
  for (i64 p = 3; p <= limit; ++p) {
    if (!oracle::is_prime(p) || (2 * a * b * c) % p == 0) continue;
    if (oracle::legendre(a * c, p) != -1 || oracle::legendre(b * c, p) != -1) continue;
    if (a + b != 0 && oracle::legendre((a + b) * c, p) != -1) continue;
    return static_cast<u64>(p);
  }
  return std::nullopt;
}

// all (x, y, z) with x, y <= bound by scanning z as well
std::vector<Solution> solutions_oracle(const EquationTriple& t, i64 bound) {
  std::vector<Solution> out;
  for (i64 x = 1; x <= bound; ++x)
    for (i64 y = 1; y <= bound; ++y) {
      i64 lhs = t.a * x * x + t.b * y * y;
      if (lhs <= 0 || lhs % t.c != 0) continue;
      i64 q = lhs / t.c;
      if (oracle::is_square(q)) {
        i64 z = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(q))));
        out.push_back({x, y, z});
      }
    }
  return out;
}

}  // namespace

TEST_SUITE("regularity") {

TEST_CASE("equation triples") {
  CHECK_THROWS_AS(EquationTriple(0, 1, 1), DomainError);
  CHECK(EquationTriple(1, 2, 3).to_string() == "(1,2,3)");
  CHECK(pair_transform(EquationTriple(1, 2, 3), Pair::YZ) == EquationTriple(-3, 2, -1));
  CHECK(pair_transform(EquationTriple(1, 2, 3), Pair::XZ) == EquationTriple(1, -3, -2));
  CHECK(pair_transform(EquationTriple(1, 2, 3), Pair::XY) == EquationTriple(1, 2, 3));
  CHECK(parse_pair("yz") == Pair::YZ);
  CHECK_THROWS_AS(parse_pair("zz"), DomainError);
}

TEST_CASE("parametric family examples") {
  auto A = parametric_family(EquationTriple(1, 2, 1));
  CHECK(A.family() == Family::A);
  auto s = A(1, 2, 1);
  CHECK(s.x == 2);
  CHECK(s.y == 4);
  CHECK(s.z == 6);

  auto B = parametric_family(EquationTriple(1, 1, 2));
  CHECK(B.family() == Family::B);
  auto t = B(1, 2, 1);
  CHECK(t.x == -2);
  CHECK(t.y == 14);
  CHECK(t.z == 10);

  auto C = parametric_family(EquationTriple(1, -1, 1));
  CHECK(C.family() == Family::C);
  auto u = C(1, 2, 1);
  CHECK(u.x == 5);
  CHECK(u.y == 3);
  CHECK(u.z == 4);

  CHECK(parametric_family(EquationTriple(2, 1, 1)).family() == Family::ASwapped);
  CHECK_THROWS_AS(parametric_family(EquationTriple(1, 2, 6)), DomainError);
  CHECK_THROWS_AS(parametric_family(EquationTriple(1, 1, 2), Family::A), DomainError);
}

TEST_CASE("parametric identities over the parameter cube") {
  for (auto t : {EquationTriple(1, 2, 1), EquationTriple(2, 1, 1), EquationTriple(1, 1, 2), EquationTriple(1, -1, 1),
                 EquationTriple(1, 1, 8), EquationTriple(3, 1, 2), EquationTriple(-5, 5, 7)}) {
    for (Family f : {Family::A, Family::ASwapped, Family::B, Family::C}) {
      std::optional<ParametricFamily> gen;
      try {
        gen = parametric_family(t, f);
      } catch (const DomainError&) {
        continue;
      }
      for (i64 k = 1; k <= 6; ++k)
        for (i64 m = -8; m <= 8; ++m)
          for (i64 n = -8; n <= 8; ++n) CHECK(satisfies(t, (*gen)(k, m, n)));
    }
  }
}

TEST_CASE("classifier golden table") {
  auto st = [](i64 a, i64 b, i64 c) { return classify(EquationTriple(a, b, c), Pair::XY).status; };
  CHECK(st(1, 2, 1) == Status::PR_UNCONDITIONAL);
  CHECK(st(1, 1, 2) == Status::PR_CONDITIONAL_ON_C2QUADRATIC);
  CHECK(st(1, 2, 6) == Status::NOT_PR);
  CHECK(st(3, 5, 30) == Status::NOT_PR);
  CHECK(st(1, 17, 34) == Status::UNKNOWN);
  CHECK(st(8, 3, 66) == Status::UNKNOWN);
  CHECK(st(5, 7, 105) == Status::UNKNOWN);
  CHECK(st(1, -1, 1) == Status::PR_UNCONDITIONAL);
  CHECK(st(1, -1, 3) == Status::PR_CONDITIONAL_ON_C2QUADRATIC);
}

TEST_CASE("classifier witnesses") {
  auto v = classify(EquationTriple(1, 2, 6), Pair::XY);
  REQUIRE(v.witness.has_value());
  CHECK(std::get<Coloring>(*v.witness).kind == Coloring::Kind::TwoAdicSign);

  auto w = classify(EquationTriple(3, 5, 30), Pair::XY);
  REQUIRE(w.witness.has_value());
  const auto& col = std::get<Coloring>(*w.witness);
  CHECK(col.kind == Coloring::Kind::Dyadic);
  CHECK(col.param == 6);

  auto r = classify(EquationTriple(1, 1, 3), Pair::XY);
  CHECK(r.status == Status::NOT_PR);
  REQUIRE(r.witness.has_value());
  CHECK(std::get<u64>(*r.witness) == 7);

  auto u = classify(EquationTriple(1, 17, 34), Pair::XY);
  bool cited = false;
  for (const auto& e : u.evidence) cited |= e.value.find("necessity passed, sufficiency unknown") != std::string::npos;
  CHECK(cited);

  auto p = classify(EquationTriple(1, 2, 1), Pair::XY);
  CHECK_FALSE(p.evidence.empty());
  CHECK_FALSE(p.witness.has_value());
}

TEST_CASE("every NOT_PR verdict carries a witness") {
  for (i64 a = -6; a <= 6; ++a)
    for (i64 b = -6; b <= 6; ++b)
      for (i64 c = 1; c <= 12; ++c) {
        if (a == 0 || b == 0) continue;
        for (Pair pr : {Pair::XY, Pair::XZ, Pair::YZ}) {
          auto v = classify(EquationTriple(a, b, c), pr);
          if (v.status == Status::NOT_PR) CHECK(v.witness.has_value());
        }
      }
}

TEST_CASE("pair symmetry") {
  for (i64 a = -5; a <= 5; ++a)
    for (i64 b = -5; b <= 5; ++b)
      for (i64 c = -8; c <= 8; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        CHECK(classify(EquationTriple(a, b, c), Pair::XY).status ==
              classify(EquationTriple(b, a, c), Pair::XY).status);
      }
}

TEST_CASE("find_qr_obstruction") {
  CHECK(find_qr_obstruction(EquationTriple(1, 1, 3), 1000) == 7u);
  CHECK_FALSE(find_qr_obstruction(EquationTriple(1, 1, 1), 100000).has_value());
  CHECK(find_qr_obstruction(EquationTriple(1, 1, 7), 1000) == qr_oracle(1, 1, 7, 1000));
  for (i64 a = -4; a <= 4; ++a)
    for (i64 b = -4; b <= 4; ++b)
      for (i64 c = 1; c <= 10; ++c) {
        if (a == 0 || b == 0) continue;
        CHECK(find_qr_obstruction(EquationTriple(a, b, c), 500) == qr_oracle(a, b, c, 500));
      }
}

TEST_CASE("find_split_prime") {
  CHECK(find_split_prime({-1}, {2}, 1000) == 5u);
  CHECK(find_split_prime({2}, {3}, 1000) == 7u);
  CHECK(find_split_prime({}, {-1}, 1000) == 3u);
  CHECK_THROWS_AS(find_split_prime({3}, {3}, 1000), DomainError);
  // every returned prime really splits the sets
  std::vector<std::pair<std::vector<i64>, std::vector<i64>>> cases = {
      {{-1, 3}, {5}}, {{2, 5}, {-1, 7}}, {{}, {2, 3, 5}}, {{3, 5, 7}, {}}, {{-1}, {}}, {{11}, {2, -1}}};
  for (const auto& [F1, F2] : cases) {
    auto p = find_split_prime(F1, F2, 10000000);
    REQUIRE(p.has_value());
    for (i64 e : F1) CHECK(oracle::legendre(e, static_cast<i64>(*p)) == 1);
    for (i64 e : F2) CHECK(oracle::legendre(e, static_cast<i64>(*p)) == -1);
  }
}

TEST_CASE("enumerate_solutions matches a full scan") {
  auto s = enumerate_solutions(EquationTriple(1, 2, 6), 10);
  bool has211 = false;
  for (const auto& x : s) has211 |= (x.x == 2 && x.y == 1 && x.z == 1);
  CHECK(has211);
  auto p = enumerate_solutions(EquationTriple(1, 1, 1), 15);
  int pyth = 0;
  for (const auto& x : p) pyth += (x.x == 3 && x.y == 4 && x.z == 5) + (x.x == 4 && x.y == 3 && x.z == 5);
  CHECK(pyth == 2);
  CHECK(enumerate_solutions(EquationTriple(1, 1, 3), 100).empty());
  for (auto t : {EquationTriple(1, 2, 6), EquationTriple(3, 5, 30), EquationTriple(1, 1, 2), EquationTriple(1, -1, 1),
                 EquationTriple(2, 7, 1)}) {
    auto got = enumerate_solutions(t, 120);
    auto want = solutions_oracle(t, 120);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].x == want[i].x);
      CHECK(got[i].y == want[i].y);
      CHECK(got[i].z == want[i].z);
    }
  }
  CHECK_THROWS_AS(enumerate_solutions(EquationTriple(1, 1, 1), 20000), ResourceError);
}

TEST_CASE("colorings") {
  auto r = Coloring::rado(7);
  CHECK(r.color_of(7 * 7 * 3) == 3);
  CHECK(r.color_of(10) == 3);
  CHECK(r.color_count() == 6);
  auto t = Coloring::two_adic_sign();
  CHECK(t.color_of(1) == t.color_of(4));
  CHECK(t.color_of(2) != t.color_of(1));
  CHECK(t.color_of(24) != t.color_of(3));
  auto d = Coloring::dyadic(6);
  CHECK(d.color_of(3) == 3);
  CHECK(d.color_of(3 * 1024) == 3);
  CHECK(d.color_of(67) == 3);
  auto c = Coloring::custom({0, 1, 1});
  CHECK(c.color_of(1) == 0);
  CHECK(c.color_of(2) == 1);
  CHECK(c.color_of(4) == 0);
  CHECK(Coloring::parse("rado:7").kind == Coloring::Kind::Rado);
  CHECK(Coloring::parse("dyadic:6").param == 6);
  CHECK(Coloring::parse("two-adic").kind == Coloring::Kind::TwoAdicSign);
  CHECK(Coloring::parse("custom:0,1,1").table.size() == 3);
  CHECK_THROWS_AS(Coloring::parse("rado:9"), DomainError);
  CHECK_THROWS_AS(Coloring::parse("stripes"), DomainError);
}

TEST_CASE("verify_no_monochromatic") {
  auto a = verify_no_monochromatic(EquationTriple(1, 2, 6), Coloring::two_adic_sign(), 2000);
  CHECK(a.solutions >= 1);
  CHECK(a.monochromatic == 0);
  CHECK_FALSE(a.first_counterexample.has_value());
  auto b = verify_no_monochromatic(EquationTriple(3, 5, 30), Coloring::dyadic(6), 2000);
  CHECK(b.solutions >= 1);
  CHECK(b.monochromatic == 0);
  auto c = verify_no_monochromatic(EquationTriple(1, 1, 2), Coloring::rado(7), 500);
  CHECK(c.monochromatic > 0);
  REQUIRE(c.first_counterexample.has_value());
  CHECK(Coloring::rado(7).color_of(static_cast<u64>(c.first_counterexample->x)) ==
        Coloring::rado(7).color_of(static_cast<u64>(c.first_counterexample->y)));
}

TEST_CASE("qr obstructions give Rado colorings with no monochromatic pairs") {
  for (auto t : {EquationTriple(1, 1, 3), EquationTriple(1, 1, 7), EquationTriple(1, 3, 5), EquationTriple(2, 3, 5)}) {
    auto p = find_qr_obstruction(t, 1000);
    if (!p) continue;
    auto rep = verify_no_monochromatic(t, Coloring::rado(*p), 1000);
    CHECK(rep.monochromatic == 0);
  }
}

}
