// Acceptance criteria AC1-AC10: one line per criterion, nonzero exit if any fails.

#include "flagcone/charts.hpp"
#include "flagcone/errors.hpp"
#include "flagcone/hvcone.hpp"
#include "flagcone/liecore.hpp"
#include "flagcone/repkit.hpp"
#include "flagcone/structcheck.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#ifndef FLAGCONE_CLI_PATH
#error "FLAGCONE_CLI_PATH must point at the command-line tool"
#endif

using namespace flagcone;
using charts::cplx;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

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
  std::uniform_int_distribution<int> num(-7, 7), den(1, 6);
  std::vector<GaussRational> z;
  for (int k = 0; k < n; ++k) z.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return z;
}

hv::CVector unit_random(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  hv::CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

lie::FlagDescriptor flag_of(lie::Series s, int rank, std::vector<int> theta) {
  const auto rs = lie::RootSystem::build(s, rank);
  return lie::make_flag(rs, lie::ParabolicChoice::make(rank, std::move(theta)));
}

std::vector<int> all_but(int rank, int removed) {
  std::vector<int> t;
  for (int i = 0; i < rank; ++i)
    if (i != removed) t.push_back(i);
  return t;
}

// D_n / P(alpha_1) by hand: roots e_i +- e_j in epsilon coordinates; alpha_1 = e_1 - e_2
// is the only simple root touching e_1, so the complementary roots are e_1 +- e_j.
long long dn_alpha1_index(int n) {
  std::vector<long long> delta(static_cast<std::size_t>(n), 0);
  for (int j = 1; j < n; ++j)
    for (int s : {1, -1}) {
      delta[0] += 1;
      delta[static_cast<std::size_t>(j)] += s;
    }
  // <delta, alpha_1^vee> with alpha_1^vee = alpha_1 (long roots have length^2 2).
  // Sigma \ Theta = {alpha_1}, so the index is this single pairing.
  return delta[0] - delta[1];
}

Outcome ac1() {
  Outcome o;
  int checked = 0;
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto f = flag_of(lie::Series::A, n, all_but(n, k - 1));
      o.require(f.fano_index == n + 1, "Gr(" + std::to_string(k) + "," + std::to_string(n + 1) + ")");
      ++checked;
    }
  o.require(flag_of(lie::Series::A, 3, {0, 2}).fano_index == 4, "Gr(2,4)");
  for (int n = 1; n <= 8; ++n) {
    o.require(flag_of(lie::Series::A, n, {}).fano_index == 2, "full flag A" + std::to_string(n));
    o.require(flag_of(lie::Series::A, n, all_but(n, 0)).fano_index == n + 1, "CP" + std::to_string(n));
    checked += 2;
  }
  const long long d4 = flag_of(lie::Series::D, 4, {1, 2, 3}).fano_index;
  o.require(d4 == dn_alpha1_index(4) && d4 == 6, "D4/{a1} gave " + std::to_string(d4));
  if (o.pass) o.detail = std::to_string(checked + 2) + " flags exact, D4/{a1} = 6";
  return o;
}

Outcome ac2() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int n = 0;
  for (const auto& id : charts::catalog_ids()) {
    const auto e = charts::parse_case(id);
    for (int t = 0; t < 50; ++t) {
      const auto z = random_q(rng, e.chart.n);
      if (charts::generic_h(e.chart, e.default_ells, z) != e.chart.h(e.default_ells, z)) {
        o.require(false, id + " sample " + std::to_string(t));
        break;
      }
      ++n;
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " exact agreements over " + std::to_string(charts::catalog_ids().size()) + " cases";
  return o;
}

const check::SuiteConfig kDefault{};

Outcome ac3() {
  Outcome o;
  double worst_l = 0, worst_v = 0, weakest_control = INFINITY;
  for (const std::string id : {"hopf:cp1", "hopf:cp2", "gr24", "wallach", "quadric:6", "conifold"}) {
    const auto e = charts::parse_case(id);
    const charts::PotentialSpec spec{e.chart, e.default_ells, 1};
    const auto k = check::cone_potential(spec, id);
    const auto s = check::make_samples(e.chart.n, 20, 3);
    const auto l = check::check_lck(k, s, kDefault);
    const auto v = check::check_vaisman(k, s, kDefault);
    const double rl = l.record("d_omega_minus_theta_wedge_omega").max, rv = v.record("nabla_theta").max;
    worst_l = std::max(worst_l, rl);
    worst_v = std::max(worst_v, rv);
    o.require(rl < 1e-5 && l.verdict(), id + " l.c.K. " + sci(rl));
    o.require(rv < 1e-5 && v.verdict(), id + " Vaisman " + sci(rv));
    const double bad = check::check_lck(k, check::make_samples(e.chart.n, 5, 4), kDefault, 1.1)
                           .record("d_omega_minus_theta_wedge_omega")
                           .max;
    weakest_control = std::min(weakest_control, bad / 1e-5);
  }
  const auto probe = check::vaisman_probe();
  const double pv = check::check_vaisman(probe, check::make_samples(1, 20, 3), kDefault).record("nabla_theta").max;
  weakest_control = std::min(weakest_control, pv / 1e-5);
  o.require(weakest_control >= 100, "negative control margin " + sci(weakest_control));
  if (o.pass)
    o.detail = "max l.c.K. " + sci(worst_l) + ", max Vaisman " + sci(worst_v) + ", controls >= " +
               sci(weakest_control) + "x";
  return o;
}

Outcome ac4() {
  Outcome o;
  double worst = 0;
  for (const std::string id : {"cp:1", "gr24", "wallach"}) {
    const auto r = check::run_suite(id, {}, "kahler-einstein", std::nullopt, 5, 20, kDefault);
    const double m = r.residuals.front().max;
    worst = std::max(worst, m);
    o.require(m < 1e-4 && r.verdict(), id + " " + sci(m));
  }
  if (o.pass) o.detail = "max residual " + sci(worst);
  return o;
}

Outcome ac5() {
  Outcome o;
  struct Row {
    std::string id;
    std::vector<long long> ells;
    Rational b;
  };
  double worst = 0;
  for (const Row& row : {Row{"hopf:cp1", {1}, 1}, Row{"hopf:cp2", {1}, 1}, Row{"cp:1", {2}, Rational(1, 2)},
                         Row{"conifold", {1, 1}, Rational(2, 3)}}) {
    const auto r = check::run_suite(row.id, row.ells, "ricci-flat", row.b, 6, 20, kDefault);
    const double m = r.record("scaled_ricci").max;
    worst = std::max(worst, m);
    o.require(m < 1e-4, row.id + " b=" + to_string(row.b) + " " + sci(m));
  }
  const auto bad = check::run_suite("conifold", {}, "ricci-flat", Rational(1), 6, 20, kDefault);
  const double bm = bad.record("scaled_ricci").max;
  o.require(!bad.verdict() && bm >= 100 * 1e-4, "conifold b=1 control " + sci(bm));
  if (o.pass) o.detail = "max residual " + sci(worst) + ", conifold b=1 control " + sci(bm);
  return o;
}

Outcome ac6() {
  Outcome o;
  double worst = 0;
  for (const std::string id : {"hopf:cp2", "conifold"}) {
    const auto r = check::run_suite(id, {}, "einstein-weyl", std::nullopt, 8, 10, kDefault);
    for (const auto& rec : r.residuals) {
      worst = std::max(worst, rec.max);
      o.require(rec.max < 1e-4 && !rec.informational, id + " " + rec.name + " " + sci(rec.max));
    }
  }
  if (o.pass) o.detail = "max residual " + sci(worst) + " over 4 identities";
  return o;
}

// Casimir eigenvalues for the Killing form tr(ad X ad Y), written out by hand:
// sl_N on Lambda^k C^N gives k (N - k)(N + 1) / (2 N^2); so_N on C^N gives (N - 1) / (2 (N - 2)).
Rational hand_casimir_wedge(int N, int k) { return Rational(k * (N - k) * (N + 1), 2 * N * N); }
Rational hand_casimir_vector(int N) { return Rational(N - 1, 2 * (N - 2)); }

bool is_scalar(const QMatrix& m, const Rational& c) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != GaussRational(i == j ? c : Rational(0))) return false;
  return true;
}

Outcome ac7() {
  Outcome o;
  std::mt19937_64 rng(77);
  struct Row {
    std::string id;
    std::vector<long long> ells;
    hv::ResidualKind kind;
  };
  double worst_in = 0, weakest_generic = INFINITY;
  const auto run_row = [&](const hv::RemmertMap& R, const std::string& label,
                           const std::function<double(const hv::CVector&)>& res, bool generic) {
    for (int t = 0; t < 50; ++t) {
      const double r = res(R(random_z(rng, R.chart().n), random_w(rng)));
      worst_in = std::max(worst_in, r);
      if (!(r < 1e-10)) {
        o.require(false, label + " image residual " + sci(r));
        break;
      }
    }
    if (!generic) return;
    double low = INFINITY;
    for (int t = 0; t < 50; ++t) {
      hv::CVector v = unit_random(rng, static_cast<Eigen::Index>(R.rep().dim()));
      v /= std::sqrt(R.norm2(v));
      low = std::min(low, res(v));
    }
    weakest_generic = std::min(weakest_generic, low);
    o.require(low >= 1e-2, label + " generic residual " + sci(low));
  };
  for (const Row& row : {Row{"gr24", {1}, hv::ResidualKind::Plucker}, Row{"grassmann:4:2", {1}, hv::ResidualKind::Plucker},
                         Row{"quadric:5", {1}, hv::ResidualKind::Quadric}, Row{"quadric:6", {1}, hv::ResidualKind::Quadric},
                         Row{"quadric:8", {1}, hv::ResidualKind::Quadric},
                         Row{"conifold", {1, 1}, hv::ResidualKind::Determinant},
                         Row{"cp:1", {2}, hv::ResidualKind::Casimir}}) {
    const hv::RemmertMap R(charts::parse_case(row.id).chart, row.ells);
    o.require(R.residual_kind() == row.kind, row.id + " uses " + hv::to_string(R.residual_kind()));
    run_row(R, row.id, [&](const hv::CVector& v) { return R.residual(v); }, true);
  }
  // sl2 with mu = omega: V (x) V = S^2 V + trivial, so the quadric vanishes on all of V.
  const hv::RemmertMap C1(charts::parse_case("cp:1").chart, {1});
  run_row(C1, "sl2 omega", [&](const hv::CVector& v) { return hv::casimir_quadric_residual(C1.rep(), v); }, false);
  // mu = 2 omega through the Casimir quadric itself rather than the kind dispatch.
  const hv::RemmertMap C2(charts::parse_case("cp:1").chart, {2});
  run_row(C2, "sl2 2omega", [&](const hv::CVector& v) { return hv::casimir_quadric_residual(C2.rep(), v); }, true);

  // Casimir matrix against the weight formula and the hand values.
  int exact = 0;
  for (int l = 1; l <= 4; ++l) {
    const auto V = rep::sl2_module(l);
    const Rational hand(l * (l + 2), 8);
    o.require(is_scalar(rep::casimir_matrix(V), hand) && rep::expected_casimir(V) == hand, "sl2 l=" + std::to_string(l));
    ++exact;
  }
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 2}, {4, 1}}) {
    const auto V = rep::wedge_module(n, k);
    const Rational hand = hand_casimir_wedge(n + 1, k);
    o.require(is_scalar(rep::casimir_matrix(V), hand) && rep::expected_casimir(V) == hand,
              "wedge " + std::to_string(n) + "," + std::to_string(k));
    ++exact;
  }
  for (int N : {5, 6, 8}) {
    const auto V = rep::so_vector_module(N);
    const Rational hand = hand_casimir_vector(N);
    o.require(is_scalar(rep::casimir_matrix(V), hand) && rep::expected_casimir(V) == hand, "so" + std::to_string(N));
    ++exact;
  }
  if (o.pass)
    o.detail = "images <= " + sci(worst_in) + ", generic >= " + sci(weakest_generic) + ", " + std::to_string(exact) +
               " Casimir eigenvalues exact";
  return o;
}

Outcome ac8() {
  Outcome o;
  std::mt19937_64 rng(88);
  int exact = 0;
  for (const auto& id : charts::catalog_ids()) {
    const auto e = charts::parse_case(id);
    const hv::RemmertMap R(e.chart, e.default_ells);
    for (int t = 0; t < 10; ++t) {
      const auto z = random_q(rng, e.chart.n);
      const GaussRational w = random_q(rng, 1)[0] + GaussRational(Rational(1, 3));
      // K_H = h(z) |w|^2, from the closed-form chart.
      if (R.exact_norm2(z, w) != e.chart.h(e.default_ells, z) * w.abs2()) {
        o.require(false, id + " norm mismatch");
        break;
      }
      ++exact;
    }
  }
  double worst_eq = 0, closest = INFINITY;
  for (const cplx lam : {cplx(0.5, 0.0), cplx(0.3, 0.2)}) {
    const hv::GammaGroup g(lam);
    for (const std::string id : {"gr24", "conifold", "quadric:5", "wallach"}) {
      const auto e = charts::parse_case(id);
      const hv::RemmertMap R(e.chart, e.default_ells);
      std::vector<hv::HopfPoint> seen;
      for (int t = 0; t < 20; ++t) {
        const auto z = random_z(rng, e.chart.n);
        const cplx w = random_w(rng);
        const hv::HopfPoint a = hv::kodaira_embedding(R, g, z, w);
        for (int p : {1, 3, -2}) {
          const double d = hv::hopf_distance(a, hv::kodaira_embedding(R, g, z, std::pow(lam, p) * w));
          worst_eq = std::max(worst_eq, d);
        }
        // Not in Gamma: a unit phase that is not a power of lambda.
        closest = std::min(closest, hv::hopf_distance(a, hv::kodaira_embedding(R, g, z, std::polar(1.0, 1.0) * w)));
        for (const auto& b : seen) closest = std::min(closest, hv::hopf_distance(a, b));
        seen.push_back(a);
      }
    }
  }
  o.require(worst_eq < 1e-12, "equivariance " + sci(worst_eq));
  o.require(closest > 1e-6, "injectivity " + sci(closest));
  if (o.pass)
    o.detail = std::to_string(exact) + " exact norms, equivariance " + sci(worst_eq) + ", min separation " + sci(closest);
  return o;
}

Outcome ac9() {
  Outcome o;
  double worst_ode = 0, worst_lim = 0;
  for (double eps : {0.25, 0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 60; ++k) worst_ode = std::max(worst_ode, std::abs(hv::stenzel_ode_residual(eps, 0.05 * k)));
    worst_lim = std::max(worst_lim, std::abs(hv::stenzel_fprime(eps, 1e-6) - std::pow(eps, -2.0 / 3.0)));
  }
  o.require(worst_ode < 1e-8, "ODE residual " + sci(worst_ode));
  o.require(worst_lim < 1e-6, "F'(0+) " + sci(worst_lim));
  o.require(hv::eguchi_hanson_upsilon(0.0) == 1.0, "Upsilon(0) != 1");
  const auto eh = check::run_suite("eguchi-hanson", {}, "ricci-flat", std::nullopt, 9, 20, kDefault);
  const double m = eh.residuals.front().max;
  o.require(m < 1e-4 && eh.verdict(), "Eguchi-Hanson " + sci(m));
  if (o.pass)
    o.detail = "ODE " + sci(worst_ode) + ", F'(0+) " + sci(worst_lim) + ", Eguchi-Hanson " + sci(m) + ", Upsilon(0) = 1";
  return o;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string("\"") + FLAGCONE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome ac10() {
  Outcome o;
  const auto path = std::filesystem::temp_directory_path() / ("flagcone_ac10_" + std::to_string(::getpid()) + ".json");
  const std::string verify = "verify --case gr24 --suite lck --samples 5 --seed 3 --deterministic --json \"" + path.string() + "\"";
  o.require(run_tool(verify) == 0, "first run exit code");
  const std::string first = slurp(path);
  o.require(run_tool(verify) == 0, "second run exit code");
  const std::string second = slurp(path);
  std::filesystem::remove(path);
  o.require(!first.empty() && first == second, "JSON differs between runs");
  o.require(first.find("timestamp") == std::string::npos, "timestamp present");
  o.require(run_tool("verify --case hopf:cp1 --suite vaisman --seed 7") == 0, "pass case exit code");
  o.require(run_tool("verify --case conifold --suite einstein-weyl --b 1 --samples 3") == 1, "fail case exit code");
  o.require(run_tool("lie --series A --rank 3 --theta 7") == 2, "bad theta exit code");
  o.require(run_tool("verify --case nowhere --suite lck") == 2, "bad case exit code");
  if (o.pass) o.detail = std::to_string(first.size()) + " identical bytes, exit codes 0/1/2";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "Fano index table", 1, ac1},
      {"AC2", "potential cross-validation", 10, ac2},
      {"AC3", "l.c.K. and Vaisman suites", 120, ac3},
      {"AC4", "Kahler-Einstein base", 60, ac4},
      {"AC5", "Ricci-flat cones", 120, ac5},
      {"AC6", "Einstein-Weyl", 300, ac6},
      {"AC7", "HV residuals", 30, ac7},
      {"AC8", "embedding", 10, ac8},
      {"AC9", "Stenzel and Eguchi-Hanson", 60, ac9},
      {"AC10", "determinism and exit codes", 60, ac10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.limit_s) o.require(false, "over time limit");
    if (!o.pass) ++failures;
    std::cout << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << c.title << ": " << o.detail << "  ("
              << std::fixed << std::setprecision(2) << dt << " s, limit " << std::setprecision(0) << c.limit_s
              << " s)" << std::defaultfloat << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
