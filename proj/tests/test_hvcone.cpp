#include "doctest.h"
#include "flagcone/errors.hpp"
#include "flagcone/hvcone.hpp"

#include <cmath>
#include <random>

using namespace flagcone;
using namespace flagcone::hv;

namespace {

using charts::cplx;

std::vector<cplx> random_z(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> z;
  for (int k = 0; k < n; ++k) z.emplace_back(u(rng), u(rng));
  return z;
}

cplx random_w(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.5, 2.0), a(0.0, 6.283185307179586);
  return std::polar(r(rng), a(rng));
}

std::vector<GaussRational> random_q(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::vector<GaussRational> z;
  for (int k = 0; k < n; ++k) z.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return z;
}

charts::PotentialSpec spec(const std::string& id) {
  const auto e = charts::parse_case(id);
  return charts::PotentialSpec{e.chart, e.default_ells, 1};
}

CVector unit_random(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

// Textbook form of the single Gr(2,4) relation, p_ij in lexicographic order.
cplx plucker_24(const CVector& p) { return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]; }

}  // namespace

TEST_CASE("remmert map") {
  std::mt19937_64 rng(11);
  for (const auto& id : charts::catalog_ids()) {
    if (id == "eguchi-hanson") continue;
    const auto s = spec(id);
    const RemmertMap R(s);
    CAPTURE(id);
    const std::vector<cplx> zero(static_cast<std::size_t>(s.chart.n), 0.0);
    CHECK((R(zero, 1.0) - R.rep().hw()).norm() == 0.0);
    for (int t = 0; t < 50; ++t) {
      const auto z = random_z(rng, s.chart.n);
      const cplx w = random_w(rng);
      const CVector v = R(z, w);
      CHECK(std::abs(R.norm2(v) - s.K(z, w)) < 1e-12 * s.K(z, w));
      CHECK(R.residual(v) < 1e-10);
      // Equivariance under w -> lambda w.
      const cplx lam(0.3, 0.2);
      CHECK((R(z, lam * w) - lam * v).norm() < 1e-13 * v.norm());
    }
    for (int t = 0; t < 5; ++t) {
      const auto z = random_q(rng, s.chart.n);
      const GaussRational w(Rational(3, 2), Rational(-1, 3));
      CHECK(R.exact_norm2(z, w) == s.chart.h(s.ells, z) * w.abs2());
    }
  }
  const auto s = spec("hopf:cp1");
  const RemmertMap R(s);
  CHECK_THROWS_AS(R(std::vector<cplx>{0.5}, 0.0), DomainError);
}

TEST_CASE("plucker residual") {
  CVector e12 = CVector::Zero(6);
  e12[0] = 1.0;
  CHECK(plucker_residual(3, 2, e12) == 0.0);
  CVector p = CVector::Zero(6);
  p[0] = 1.0;
  p[5] = 1.0;
  CHECK(plucker_residual(3, 2, p) == doctest::Approx(1.0));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const CVector v = unit_random(rng, 6);
    CHECK(plucker_residual(3, 2, v) == doctest::Approx(std::abs(plucker_24(v))).epsilon(1e-12));
  }
  const RemmertMap R(spec("grassmann:4:2"));
  CHECK(R.residual_kind() == ResidualKind::Plucker);
  for (int t = 0; t < 20; ++t) CHECK(plucker_residual(4, 2, R(random_z(rng, 6), random_w(rng))) < 1e-12);
  double low = 1.0;
  for (int t = 0; t < 20; ++t) low = std::min(low, plucker_residual(4, 2, unit_random(rng, 10)));
  CHECK(low > 1e-2);
  CHECK_THROWS_AS(plucker_residual(3, 2, CVector::Zero(5)), ConfigurationError);
}

TEST_CASE("quadric and determinant residuals") {
  for (int N : {5, 6, 8}) {
    const RemmertMap R(spec("quadric:" + std::to_string(N)));
    CHECK(R.residual_kind() == ResidualKind::Quadric);
    CHECK(quadric_residual(N, R.rep().hw()) < 1e-15);
    CVector e1 = CVector::Zero(N);
    e1[0] = 1.0;
    CHECK(quadric_residual(N, e1) == 1.0);
  }
  const RemmertMap C(spec("conifold"));
  CHECK(C.residual_kind() == ResidualKind::Determinant);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) CHECK(determinant_residual(C(random_z(rng, 2), random_w(rng))) < 1e-13);
  CVector id = CVector::Zero(4);
  id[0] = id[3] = 1.0;
  CHECK(determinant_residual(id) == 1.0);
}

TEST_CASE("casimir quadric residual") {
  const auto sl2 = [](int ell) { return rep::sl2_module(ell); };
  std::mt19937_64 rng(9);
  for (int ell : {1, 2, 3}) {
    const auto V = sl2(ell);
    CHECK(casimir_quadric_residual(V, V.hw()) < 1e-14);
    rep::GroupWord word{{{"F1", cplx(0.7, -0.4)}, {"E1", cplx(0.2, 0.3)}, {"KX1", cplx(0.5, 0.0)}}};
    const CVector orbit = rep::act(V, word, V.hw());
    CHECK(casimir_quadric_residual(V, orbit) < 1e-10);
  }
  // For l = 1 every vector is a highest weight vector of some Borel.
  CHECK(casimir_quadric_residual(sl2(1), unit_random(rng, 2)) < 1e-14);
  const auto V2 = sl2(2);
  double low = 1.0;
  for (int t = 0; t < 20; ++t) {
    CVector v = unit_random(rng, 3);
    v /= std::sqrt(V2.norm2(v));
    low = std::min(low, casimir_quadric_residual(V2, v));
  }
  CHECK(low > 0.1);
  // c(2 mu) from the weight formula is an eigenvalue of Delta(C).
  const QMatrix op = casimir_quadric_operator(V2);
  QVector hh;
  for (const auto& a : V2.hw_exact())
    for (const auto& b : V2.hw_exact()) hh.push_back(a * b);
  for (const auto& x : mat_vec(op, hh)) CHECK(x.is_zero());

  // Floating-point construction against the exact operator.
  for (const auto& V : {rep::wedge_module(3, 2), rep::inner_tensor(rep::wedge_module(2, 1), rep::wedge_module(2, 2)),
                        rep::so_vector_module(5)}) {
    const rep::CMatrix exact = rep::to_numeric(casimir_quadric_operator(V));
    const CasimirQuadric fast(V);
    for (int t = 0; t < 5; ++t) {
      const CVector v = unit_random(rng, static_cast<Eigen::Index>(V.dim()));
      CVector vv(v.size() * v.size());
      for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j) vv[i * v.size() + j] = v[i] * v[j];
      const CVector r = exact * vv;
      double n = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j)
          n += to_double(V.gram()[static_cast<std::size_t>(i)] * V.gram()[static_cast<std::size_t>(j)]) *
               std::norm(r[i * v.size() + j]);
      CHECK(fast.residual(v) == doctest::Approx(std::sqrt(n)).epsilon(1e-10));
    }
  }

  const RemmertMap W(spec("wallach"));
  CHECK(W.residual_kind() == ResidualKind::Casimir);
  for (int t = 0; t < 10; ++t) CHECK(W.residual(W(random_z(rng, 3), random_w(rng))) < 1e-10);
  double wlow = 1.0;
  for (int t = 0; t < 10; ++t) wlow = std::min(wlow, W.residual(unit_random(rng, static_cast<Eigen::Index>(W.rep().dim()))));
  CHECK(wlow > 1e-2);
}

TEST_CASE("gamma canonicalization") {
  const GammaGroup half(0.5);
  CVector v = CVector::Zero(2);
  v[0] = 1.0;
  CHECK(gamma_canonicalize(half, v).n == 0);
  v[0] = 5.0;
  const HopfPoint h = gamma_canonicalize(half, v);
  CHECK(h.n == 3);
  CHECK(h.representative.norm() == doctest::Approx(5.0 / 8.0));
  // Boundary |v| = |lambda| moves to the closed end.
  v[0] = 0.5;
  CHECK(gamma_canonicalize(half, v).n == -1);
  CHECK(gamma_canonicalize(half, v).representative.norm() == 1.0);

  std::mt19937_64 rng(2);
  for (const cplx lam : {cplx(0.5, 0.0), cplx(0.3, 0.2)}) {
    const GammaGroup g(lam);
    for (int t = 0; t < 20; ++t) {
      const CVector u = 10.0 * unit_random(rng, 3) * std::exp(std::uniform_real_distribution<double>(-3, 3)(rng));
      const HopfPoint a = gamma_canonicalize(g, u), b = gamma_canonicalize(g, lam * u);
      CHECK(hopf_distance(a, b) < 1e-9);
      CHECK(a.representative.norm() > std::abs(lam));
      CHECK(a.representative.norm() <= 1.0);
    }
  }
  CHECK_THROWS_AS(GammaGroup(1.0), ConfigurationError);
  CHECK_THROWS_AS(GammaGroup(0.0), ConfigurationError);
  CHECK_THROWS_AS(gamma_canonicalize(half, CVector::Zero(2)), DomainError);
}

TEST_CASE("kodaira embedding") {
  std::mt19937_64 rng(4);
  for (const cplx lam : {cplx(0.5, 0.0), cplx(0.3, 0.2)}) {
    const GammaGroup g(lam);
    const RemmertMap R(spec("hopf:cp1"));
    std::vector<HopfPoint> seen;
    for (int t = 0; t < 20; ++t) {
      const auto z = random_z(rng, 1);
      const cplx w = random_w(rng);
      const HopfPoint a = kodaira_embedding(R, g, z, w);
      CHECK(hopf_distance(a, kodaira_embedding(R, g, z, lam * w)) < 1e-9);
      for (const auto& b : seen) CHECK(hopf_distance(a, b) > 1e-8);
      seen.push_back(a);
    }
    const RemmertMap Q(spec("quadric:6"));
    for (int t = 0; t < 10; ++t) {
      const HopfPoint a = kodaira_embedding(Q, g, random_z(rng, 4), random_w(rng));
      CHECK(quadric_residual(6, a.representative) < 1e-12);
    }
  }
}

TEST_CASE("stenzel") {
  for (double eps : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(stenzel_fprime(eps, 0.0) - std::pow(eps, -2.0 / 3.0)) < 1e-12);
    CHECK(std::abs(stenzel_fprime(eps, 1e-7) - std::pow(eps, -2.0 / 3.0)) < 1e-10);
    for (double t = 0.1; t <= 3.0 + 1e-12; t += 0.1) {
      CHECK(std::abs(stenzel_ode_residual(eps, t)) < 1e-8);
      CHECK(stenzel_fprime(eps, t) == doctest::Approx(std::pow(eps, -2.0 / 3.0) * stenzel_fprime(1.0, t)).epsilon(1e-13));
    }
  }
  // Continuity across the series/direct switch.
  CHECK(std::abs(stenzel_fprime(1.0, 1.0 - 1e-12) - stenzel_fprime(1.0, 1.0)) < 1e-10);
  // Quadrature against composite Simpson.
  const double T = 2.0;
  const int m = 2000;
  double simpson = stenzel_fprime(1.0, 0.0) + stenzel_fprime(1.0, T);
  for (int k = 1; k < m; ++k) simpson += (k % 2 ? 4.0 : 2.0) * stenzel_fprime(1.0, T * k / m);
  simpson *= T / (3.0 * m);
  CHECK(std::abs(stenzel_potential(1.0, T) - simpson) < 1e-10);
  CHECK_THROWS_AS(stenzel_fprime(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(stenzel_fprime(1.0, -1.0), DomainError);
}

TEST_CASE("singular cone and Eguchi-Hanson functions") {
  // K_0 on the conifold image equals (3/2)^{4/3} times the b = 2/3 potential.
  const auto s = spec("conifold");
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto z = random_z(rng, 2);
    const cplx w = random_w(rng);
    Eigen::Matrix2cd W;
    W << 1.0, z[1], z[0], z[0] * z[1];
    W *= w;
    CHECK(singular_cone_potential(W) ==
          doctest::Approx(std::pow(1.5, 4.0 / 3.0) * std::pow(s.K(z, w), 2.0 / 3.0)).epsilon(1e-13));
  }
  CHECK(eguchi_hanson_upsilon(0.0) == 1.0);
  const auto U = [](double x) { return eguchi_hanson_upsilon(x); };
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    const double h = 1e-3 * std::max(1.0, x);
    // Fourth-order stencils: one-sided at the boundary, central inside.
    const double fd = x == 0.0 ? (-25 * U(x) + 48 * U(x + h) - 36 * U(x + 2 * h) + 16 * U(x + 3 * h) - 3 * U(x + 4 * h)) / (12 * h)
                               : (8 * (U(x + h) - U(x - h)) - (U(x + 2 * h) - U(x - 2 * h))) / (12 * h);
    CHECK(std::abs(fd - eguchi_hanson_upsilon_prime(x)) < 1e-8);
  }
  CHECK_THROWS_AS(eguchi_hanson_upsilon(-1.0), DomainError);
}
