#include "doctest.h"
#include "flagcone/charts.hpp"
#include "flagcone/errors.hpp"

#include <random>

using namespace flagcone;
using namespace flagcone::charts;

namespace {

std::vector<GaussRational> random_rational(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::vector<GaussRational> z;
  for (std::size_t k = 0; k < n; ++k) z.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return z;
}

std::vector<cplx> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> nd;
  std::vector<cplx> z;
  for (std::size_t k = 0; k < n; ++k) z.emplace_back(nd(rng), nd(rng));
  return z;
}

}  // namespace

TEST_CASE("grassmann_h") {
  CHECK(grassmann_h(3, 2, std::vector<cplx>(4, 0.0)) == 1.0);
  const std::vector<GaussRational> z{GaussRational(1), GaussRational(0), GaussRational(0), GaussRational(0)};
  CHECK(grassmann_h(3, 2, z) == Rational(2));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    // Gr(2,4): 1 + sum |z|^2 + |det Z|^2.
    const auto Z = random_rational(rng, 4);
    Rational expect = 1 + (Z[0] * Z[3] - Z[1] * Z[2]).abs2();
    for (const auto& x : Z) expect += x.abs2();
    CHECK(grassmann_h(3, 2, Z) == expect);
    const auto y = random_rational(rng, 3);
    Rational cp = 1;
    for (const auto& x : y) cp += x.abs2();
    CHECK(grassmann_h(3, 1, y) == cp);
  }
  CHECK_THROWS(grassmann_h(3, 2, std::vector<cplx>(3, 0.0)));
}

TEST_CASE("fullflag_h") {
  CHECK(fullflag_h(2, {1, 1}, std::vector<cplx>(3, 0.0)) == 1.0);
  const std::vector<GaussRational> e{GaussRational(1), GaussRational(0), GaussRational(0)};
  CHECK(fullflag_h(2, {1, 1}, e) == Rational(2));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto z = random_rational(rng, 3);  // z21, z31, z32
    const Rational a = 1 + z[0].abs2() + z[1].abs2();
    const Rational b = 1 + z[2].abs2() + (z[0] * z[2] - z[1]).abs2();
    CHECK(fullflag_h(2, {1, 1}, z) == a * b);
    CHECK(fullflag_h(2, {2, 3}, z) == a * a * b * b * b);
  }
}

TEST_CASE("quadric_h") {
  CHECK(quadric_h(5, std::vector<cplx>(3, 0.0)) == 1.0);
  const std::vector<GaussRational> z{GaussRational(1), GaussRational(0), GaussRational(0), GaussRational(0)};
  CHECK(quadric_h(6, z) == Rational(25, 16));
  std::mt19937_64 rng(6);
  const GaussRational I = GaussRational::i();
  for (int t = 0; t < 20; ++t) {
    const auto zeta = random_rational(rng, 4);
    GaussRational q(0);
    for (const auto& x : zeta) q += x * x;
    // v = e1 - i e2 + sum zeta_j e_{j+2} - (q/4)(e1 + i e2)
    std::vector<GaussRational> v(6, GaussRational(0));
    const GaussRational c = q / GaussRational(4);
    v[0] = GaussRational(1) - c;
    v[1] = -I - c * I;
    for (std::size_t j = 0; j < 4; ++j) v[j + 2] = zeta[j];
    GaussRational qv(0);
    Rational n2 = 0;
    for (const auto& x : v) {
      qv += x * x;
      n2 += x.abs2();
    }
    CHECK(qv.is_zero());
    CHECK(quadric_h(6, zeta) == n2 / 2);
  }
}

TEST_CASE("product_h and the conifold") {
  const auto c = parse_case("conifold");
  CHECK(c.chart.h({1, 1}, std::vector<cplx>{0.0, 0.0}) == 1.0);
  CHECK(c.chart.h({1, 1}, std::vector<GaussRational>{GaussRational(1), GaussRational(1)}) == Rational(4));
  CHECK(product_h(Rational(2), Rational(3)) == Rational(6));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto z = random_rational(rng, 2);
    // W = (1 z2; z1 z1 z2)
    const Rational tr = 1 + z[1].abs2() + z[0].abs2() + (z[0] * z[1]).abs2();
    CHECK(c.chart.h({1, 1}, z) == tr);
  }
}

TEST_CASE("potential evaluation") {
  PotentialSpec hopf{parse_case("hopf:cp1").chart, {1}, 1};
  CHECK(hopf.K({0.0}, 1.0) == 1.0);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto z = random_complex(rng, 1);
    const cplx w(0.7, 0.4);
    for (double phi : {0.3, 1.9, -2.5}) CHECK(hopf.K(z, w * std::polar(1.0, phi)) == doctest::Approx(hopf.K(z, w)));
    CHECK(hopf.K(z, w) == doctest::Approx((1 + std::norm(z[0])) * std::norm(w)));
    CHECK(hopf.log_K(z, w) == doctest::Approx(std::log(hopf.K(z, w))));
    CHECK(hopf.K_real(join_real(z, w)) == hopf.K(z, w));
  }
  // Canonical-root bundle on CP^1: K^{1/2} = O(-1).
  const auto& flag = hopf.chart.flag;
  const auto root = lie::canonical_root_bundle(flag, 1);
  CHECK(root[0].exponents.at(0) == 1);
  CHECK_THROWS_AS(hopf.chart.h({0}, std::vector<cplx>{0.0}), DomainError);
  CHECK_THROWS_AS(hopf.chart.h({1, 1}, std::vector<cplx>{0.0}), ConfigurationError);
}

TEST_CASE("generic_h agrees with the closed forms") {
  std::mt19937_64 rng(12);
  struct Case {
    std::string id;
    std::vector<long long> ells;
  };
  const std::vector<Case> cases{{"cp:1", {1}},     {"cp:2", {1}},        {"cp:3", {2}},        {"gr24", {1}},
                                {"grassmann:4:2", {1}}, {"wallach", {1, 1}}, {"fullflag:A:2", {2, 1}}, {"fullflag:A:3", {1, 1, 1}},
                                {"quadric:5", {1}}, {"quadric:6", {1}},   {"quadric:8", {2}},   {"conifold", {1, 1}},
                                {"conifold", {1, 2}}, {"eguchi-hanson", {2}}};
  for (const auto& cs : cases) {
    const auto entry = parse_case(cs.id);
    CAPTURE(cs.id);
    const auto zero = std::vector<GaussRational>(static_cast<std::size_t>(entry.chart.n), GaussRational(0));
    CHECK(generic_h(entry.chart, cs.ells, zero) == 1);
    for (int t = 0; t < 10; ++t) {
      const auto z = random_rational(rng, static_cast<std::size_t>(entry.chart.n));
      CHECK(generic_h(entry.chart, cs.ells, z) == entry.chart.h(cs.ells, z));
      const auto zc = random_complex(rng, static_cast<std::size_t>(entry.chart.n));
      const double a = generic_h(entry.chart, cs.ells, zc), b = entry.chart.h(cs.ells, zc);
      CHECK(std::abs(a - b) / b < 1e-12);
    }
  }
}

TEST_CASE("chart_representation realizes the potential") {
  std::mt19937_64 rng(13);
  for (const std::string id : {"cp:2", "gr24", "wallach", "quadric:5", "conifold"}) {
    const auto entry = parse_case(id);
    const auto cr = chart_representation(entry.chart, entry.default_ells);
    for (int t = 0; t < 5; ++t) {
      const auto z = random_rational(rng, static_cast<std::size_t>(entry.chart.n));
      const auto v = rep::act_exact(cr.rep, cr.exact_word(z), cr.rep.hw_exact());
      CHECK(cr.rep.norm2(v) / cr.rep.hw_norm2() == entry.chart.h(entry.default_ells, z));
    }
  }
}

TEST_CASE("rescaling constants") {
  const auto cp = [](int m) { return parse_case("cp:" + std::to_string(m)).chart.flag; };
  for (int m = 1; m <= 5; ++m) {
    CHECK(dhomothetic_constant(cp(m), 1) == 1);
    CHECK(ricci_flat_exponent(cp(m), 1) == 1);
  }
  const auto coni = parse_case("conifold").chart.flag;
  CHECK(dhomothetic_constant(coni, 1) == Rational(2, 3));
  CHECK(ricci_flat_exponent(coni, 1) == Rational(2, 3));
  CHECK(dhomothetic_constant(cp(1), 2) == 2);
  CHECK(ricci_flat_exponent(cp(1), 2) == Rational(1, 2));
  CHECK(ricci_flat_exponent(parse_case("gr24").chart.flag, 1) == Rational(4, 5));
  CHECK(ricci_flat_exponent(parse_case("wallach").chart.flag, 1) == Rational(1, 2));
}

TEST_CASE("catalog parsing") {
  for (const auto& id : catalog_ids()) CHECK_NOTHROW(parse_case(id));
  CHECK(parse_case("gr24").chart.n == 4);
  CHECK(parse_case("wallach").default_ells == std::vector<long long>{1, 1});
  CHECK(parse_case("quadric:8").chart.n == 6);
  CHECK(parse_case("eguchi-hanson").eguchi_hanson);
  for (const std::string bad : {"cp", "cp:x", "quadric:4", "grassmann:3:4", "nope", "fullflag:B:2"})
    CHECK_THROWS_AS(parse_case(bad), ConfigurationError);
  CHECK(parse_bundle("1,2", 2) == std::vector<long long>{1, 2});
  CHECK_THROWS_AS(parse_bundle("1", 2), ConfigurationError);
  CHECK_THROWS_AS(parse_bundle("1,-1", 2), ConfigurationError);
  CHECK_THROWS_AS(parse_bundle("1,a", 2), ConfigurationError);
}
