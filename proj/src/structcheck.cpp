#include "flagcone/structcheck.hpp"

#include "flagcone/errors.hpp"
#include "flagcone/hvcone.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace flagcone::check {

using geo::MatrixXd;
using geo::Tensor3;

namespace {

// 53 random bits -> [0, 1); the standard distributions are not portable
// across library implementations, this is.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SampleSet make_samples(int base_dim, int count, std::uint64_t seed, bool with_w) {
  if (count <= 0) throw ConfigurationError("sample count must be positive");
  if (base_dim < 0) throw ConfigurationError("negative chart dimension");
  SampleSet s;
  s.seed = seed;
  s.count = count;
  s.with_w = with_w;
  std::mt19937_64 rng(seed);
  const double tau = 2.0 * std::numbers::pi;
  const int dim = 2 * base_dim + (with_w ? 2 : 0);
  for (int c = 0; c < count; ++c) {
    VectorXd x(dim);
    for (int j = 0; j < base_dim; ++j) {
      const double r = s.z_radius * std::sqrt(unit(rng)), a = tau * unit(rng);
      x[2 * j] = r * std::cos(a);
      x[2 * j + 1] = r * std::sin(a);
    }
    if (with_w) {
      const double r = s.w_min + (s.w_max - s.w_min) * unit(rng), a = tau * unit(rng);
      x[dim - 2] = r * std::cos(a);
      x[dim - 1] = r * std::sin(a);
    }
    s.points.push_back(std::move(x));
  }
  return s;
}

bool VerificationReport::verdict() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const ResidualRecord& r) { return r.informational || r.pass; });
}

const ResidualRecord& VerificationReport::record(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r;
  throw ConfigurationError("report has no residual named '" + name + "'");
}

ConePotential cone_potential(const charts::PotentialSpec& spec, const std::string& id) {
  return {id, spec.real_dim(), [spec](const VectorXd& y) { return spec.log_K_real(y); }};
}

ConePotential vaisman_probe() {
  return {"probe:non-vaisman", 4, [](const VectorXd& y) {
            const double z2 = y[0] * y[0] + y[1] * y[1], w2 = y[2] * y[2] + y[3] * y[3];
            return std::log((1.0 + z2) * w2 + w2 * w2);
          }};
}

std::vector<std::vector<double>> parallel_map(const std::vector<VectorXd>& points,
                                              const std::function<std::vector<double>(const VectorXd&)>& f,
                                              unsigned threads) {
  const std::size_t n = points.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::vector<double>> out(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < n; i += threads) {
      try {
        out[i] = f(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // Report the failure of the lowest index so errors are deterministic too.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

geo::FDConfig fd_for(const SuiteConfig& cfg, int order) { return cfg.fd ? *cfg.fd : geo::default_fd(order); }

VerificationReport new_report(const std::string& id, const std::string& suite, const SampleSet& s,
                              const geo::FDConfig& fd) {
  VerificationReport r;
  r.case_id = id;
  r.suite = suite;
  r.fd = fd;
  r.seed = s.seed;
  r.samples = static_cast<int>(s.points.size());
  return r;
}

ResidualRecord aggregate(const std::string& name, const std::vector<std::vector<double>>& values, std::size_t k,
                         double tol) {
  ResidualRecord r;
  r.name = name;
  r.tolerance = tol;
  double sum = 0.0;
  bool finite = true;
  for (const auto& v : values) {
    finite = finite && std::isfinite(v[k]);
    r.max = std::max(r.max, v[k]);
    sum += v[k];
  }
  r.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  if (!finite) r.max = std::numeric_limits<double>::quiet_NaN();
  r.pass = finite && r.max <= tol;
  return r;
}

ResidualRecord single(const std::string& name, double value, double tol) {
  ResidualRecord r;
  r.name = name;
  r.max = r.mean = value;
  r.tolerance = tol;
  r.pass = std::isfinite(value) && value <= tol;
  return r;
}

void require_dim(const SampleSet& s, int dim) {
  for (const auto& p : s.points)
    if (p.size() != dim) throw ConfigurationError("sample points do not match the chart dimension");
}

MatrixXd d_of_oneform_field(const geo::ScalarField& log_k, const VectorXd& x, const geo::FDConfig& fd) {
  const geo::VectorField theta = [&](const VectorXd& y) { return VectorXd(-geo::d_scalar(log_k, y, fd)); };
  return geo::d_oneform(theta, x, fd);
}

}  // namespace

VerificationReport check_lck(const ConePotential& k, const SampleSet& s, const SuiteConfig& cfg, double theta_scale) {
  require_dim(s, k.real_dim);
  const auto fd = fd_for(cfg, 3);
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const geo::LCKData d = geo::lck_data(k.log_k, x, fd);
        const geo::MatrixField omega = [&](const VectorXd& y) { return geo::lck_data(k.log_k, y, fd).omega; };
        const Tensor3 dom = geo::d_twoform(omega, x, fd);
        const Tensor3 tw = geo::wedge(VectorXd(theta_scale * d.theta), d.omega);
        const double rel = geo::norm(dom - tw, d.metric) / geo::norm(tw, d.metric);
        const double dtheta = geo::norm(d_of_oneform_field(k.log_k, x, fd), d.metric);
        return std::vector<double>{rel, dtheta};
      },
      cfg.threads);
  VerificationReport r = new_report(k.id, "lck", s, fd);
  r.residuals.push_back(aggregate("d_omega_minus_theta_wedge_omega", values, 0, cfg.tol.lck));
  r.residuals.push_back(aggregate("d_theta", values, 1, cfg.tol.first_order));
  return r;
}

VerificationReport check_vaisman(const ConePotential& k, const SampleSet& s, const SuiteConfig& cfg) {
  require_dim(s, k.real_dim);
  const auto fd = fd_for(cfg, 3);
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const geo::MatrixField gt = [&](const VectorXd& y) { return geo::lck_data(k.log_k, y, fd).metric; };
        const geo::MetricJet jet = geo::metric_jet(gt, x, fd, false);
        const VectorXd theta = -geo::d_scalar(k.log_k, x, fd);
        const MatrixXd dtheta = -geo::hessian(k.log_k, x, fd);
        const MatrixXd nt = geo::nabla_oneform(theta, dtheta, geo::christoffel(jet));
        const double tn = geo::norm(theta, jet.g);
        return std::vector<double>{geo::norm(nt, jet.g) / (tn * tn), tn};
      },
      cfg.threads);
  VerificationReport r = new_report(k.id, "vaisman", s, fd);
  r.residuals.push_back(aggregate("nabla_theta", values, 0, cfg.tol.vaisman));
  double lo = values.front()[1], hi = lo, sum = 0.0;
  for (const auto& v : values) {
    lo = std::min(lo, v[1]);
    hi = std::max(hi, v[1]);
    sum += v[1];
  }
  r.residuals.push_back(single("theta_norm_spread", (hi - lo) / (sum / static_cast<double>(values.size())), cfg.tol.vaisman));
  return r;
}

namespace {

std::vector<charts::cplx> base_coordinates(const VectorXd& x) {
  std::vector<charts::cplx> z;
  for (Eigen::Index k = 0; k + 1 < x.size(); k += 2) z.emplace_back(x[k], x[k + 1]);
  return z;
}

std::vector<long long> flatten(const lie::BundleExponents& b) {
  std::vector<long long> out;
  for (const auto& f : b)
    for (const auto& [alpha, l] : f.exponents) out.push_back(l);
  return out;
}

}  // namespace

VerificationReport check_kahler_einstein_base(const charts::Chart& chart, const SampleSet& s, const SuiteConfig& cfg) {
  require_dim(s, 2 * chart.n);
  // h_delta: the canonical bundle itself, l_alpha = <delta_P, h_alpha>.
  const auto ells = flatten(lie::canonical_root_bundle(chart.flag, chart.flag.fano_index()));
  geo::FDConfig fd = fd_for(cfg, 4);
  fd.guard_w = false;
  const geo::ScalarField log_h = [&](const VectorXd& y) { return std::log(chart.h(ells, base_coordinates(y))); };
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const MatrixXd rho = geo::ricci_form(log_h, x, fd);
        const MatrixXd rho0 = geo::i_ddbar_from_hessian(geo::hessian(log_h, x, fd));
        const MatrixXd g0 = geo::metric_from_form(rho0);
        return std::vector<double>{geo::norm(MatrixXd(rho - rho0), g0) / geo::norm(rho0, g0)};
      },
      cfg.threads);
  VerificationReport r = new_report(chart.flag.name(), "kahler-einstein", s, fd);
  r.residuals.push_back(aggregate("ricci_form_minus_rho0", values, 0, cfg.tol.curvature));
  return r;
}

VerificationReport check_cone_ricci_flat(const charts::PotentialSpec& spec, const std::string& id, const SampleSet& s,
                                         const SuiteConfig& cfg) {
  require_dim(s, spec.real_dim());
  const auto fd = fd_for(cfg, 4);
  const geo::ScalarField log_k = [&](const VectorXd& y) { return spec.log_K_real(y); };
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const MatrixXd rho = geo::ricci_form_log(log_k, x, fd);
        // r^2 ||Ric||_g = ||Ric||_{g / r^2} with r^2 = K_b.
        const MatrixXd gt = geo::metric_from_form(geo::kahler_form_over_potential(log_k, x, fd));
        return std::vector<double>{geo::norm(rho, gt)};
      },
      cfg.threads);
  VerificationReport r = new_report(id, "ricci-flat", s, fd);
  r.residuals.push_back(aggregate("scaled_ricci", values, 0, cfg.tol.curvature));
  return r;
}

VerificationReport check_eguchi_hanson(const SampleSet& s, const SuiteConfig& cfg) {
  const charts::PotentialSpec kh{charts::grassmann_chart(1, 1), {2}, 1};
  require_dim(s, kh.real_dim());
  const auto fd = fd_for(cfg, 4);
  const geo::ScalarField f = [&](const VectorXd& y) { return hv::eguchi_hanson_potential(kh.K_real(y)); };
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const MatrixXd rho = geo::ricci_form(f, x, fd);
        const MatrixXd g = geo::metric_from_form(geo::kahler_form(f, x, fd));
        return std::vector<double>{std::sqrt(kh.K_real(x)) * geo::norm(rho, g)};
      },
      cfg.threads);
  VerificationReport r = new_report("eguchi-hanson", "ricci-flat", s, fd);
  r.residuals.push_back(aggregate("scaled_ricci", values, 0, cfg.tol.curvature));
  return r;
}

VerificationReport check_einstein_weyl(const charts::PotentialSpec& spec, const std::string& id, const SampleSet& s,
                                       const SuiteConfig& cfg) {
  require_dim(s, spec.real_dim());
  const auto fd = fd_for(cfg, 4);
  const int n = spec.real_dim();
  const double dn = static_cast<double>(n);
  // Norm of (n-2)(g - theta^ (x) theta^); fixes the scale of the Ricci residuals.
  const double scale = (dn - 2.0) * std::sqrt(dn - 1.0);
  const geo::ScalarField log_k = [&](const VectorXd& y) { return spec.log_K_real(y); };
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        const geo::MatrixField gt = [&](const VectorXd& y) { return geo::lck_data(log_k, y, fd).metric; };
        const geo::MetricJet jet = geo::metric_jet(gt, x, fd, true);
        const VectorXd theta = -geo::d_scalar(log_k, x, fd);
        const MatrixXd dtheta = -geo::hessian(log_k, x, fd);
        const VectorXd unit_theta = theta / geo::norm(theta, jet.g);

        const MatrixXd ric = geo::ricci(jet);
        const MatrixXd eq = ric - (dn - 2.0) * (jet.g - unit_theta * unit_theta.transpose());
        const MatrixXd rd = geo::weyl_ricci_curvature(jet, theta, dtheta);
        const MatrixXd rd_closed = geo::weyl_ricci_closed_form(jet, theta, dtheta);

        const Tensor3 gd = geo::weyl_connection(geo::christoffel(jet), jet.g, jet.ginv, theta);
        Tensor3 dg = geo::nabla_metric(jet, gd);
        Tensor3 tg(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) tg(i, j, k) = theta[i] * jet.g(j, k);
        const double dg_rel = geo::norm(dg - tg, jet.g) / (geo::norm(theta, jet.g) * std::sqrt(dn));

        return std::vector<double>{geo::norm(eq, jet.g) / scale, geo::norm(rd, jet.g) / scale,
                                   geo::norm(MatrixXd(rd - rd_closed), jet.g) / scale, dg_rel};
      },
      cfg.threads);
  VerificationReport r = new_report(id, "einstein-weyl", s, fd);
  r.residuals.push_back(aggregate("ricci_lee_identity", values, 0, cfg.tol.curvature));
  r.residuals.push_back(aggregate("weyl_ricci", values, 1, cfg.tol.curvature));
  r.residuals.push_back(aggregate("weyl_ricci_paths_agreement", values, 2, cfg.tol.curvature));
  r.residuals.push_back(aggregate("weyl_metric_compatibility", values, 3, cfg.tol.curvature));
  if (n < 6) {
    r.residuals.front().informational = true;
    r.warnings.push_back("real dimension " + std::to_string(n) +
                         " is below 6; the Ricci/Lee-form identity is reported without a verdict");
  }
  return r;
}

VerificationReport check_embedding_consistency(const charts::PotentialSpec& spec, const std::string& id,
                                               const SampleSet& s, const SuiteConfig& cfg) {
  require_dim(s, spec.real_dim());
  if (spec.b != 1) throw ConfigurationError("the Remmert map realizes K_H itself; use b = 1");
  const hv::RemmertMap R(spec);
  const charts::cplx lambda(0.3, 0.2);
  const auto fd = fd_for(cfg, 0);  // echoed only; this suite is algebraic
  const auto values = parallel_map(
      s.points,
      [&](const VectorXd& x) {
        std::vector<charts::cplx> z;
        charts::cplx w;
        charts::split_real(x, z, w);
        const hv::CVector v = R(z, w);
        const double k = spec.K(z, w);
        const double eq = (R(z, lambda * w) - lambda * v).norm() / v.norm();
        return std::vector<double>{std::abs(R.norm2(v) - k) / k, R.residual(v), eq};
      },
      cfg.threads);
  VerificationReport r = new_report(id, "embedding", s, fd);
  r.residuals.push_back(aggregate("remmert_norm_vs_potential", values, 0, cfg.tol.algebraic));
  r.residuals.push_back(aggregate(hv::to_string(R.residual_kind()) + "_residual", values, 1, cfg.tol.membership));
  r.residuals.push_back(aggregate("gamma_equivariance", values, 2, cfg.tol.algebraic));
  return r;
}

bool flag_lck_vaisman_consistency(VerificationReport& lck, VerificationReport& vaisman) {
  if (lck.verdict() == vaisman.verdict()) return true;
  const std::string msg = "inconsistent: l.c.K. and Vaisman suites disagree on " + lck.case_id;
  lck.warnings.push_back(msg);
  vaisman.warnings.push_back(msg);
  return false;
}

std::vector<std::string> suite_names() {
  return {"lck", "vaisman", "kahler-einstein", "ricci-flat", "einstein-weyl", "embedding"};
}

lie::BundleExponents to_bundle(const lie::FlagProduct& flag, const std::vector<long long>& ells) {
  lie::BundleExponents out;
  std::size_t k = 0;
  for (const auto& f : flag.factors) {
    lie::LineBundleSpec b;
    for (int alpha : f.parabolic.complement) {
      if (k >= ells.size()) throw ConfigurationError("too few bundle exponents");
      b.exponents[alpha] = ells[k++];
    }
    out.push_back(std::move(b));
  }
  if (k != ells.size()) throw ConfigurationError("too many bundle exponents");
  return out;
}

Rational default_cone_exponent(const charts::Chart& chart, const std::vector<long long>& ells) {
  const auto order = lie::canonical_root_order(chart.flag, to_bundle(chart.flag, ells));
  if (!order) throw ConfigurationError("bundle is not a root of the canonical bundle; pass --b explicitly");
  return charts::ricci_flat_exponent(chart.flag, *order);
}

VerificationReport run_suite(const std::string& case_id, const std::vector<long long>& ells_in, const std::string& suite,
                             const std::optional<Rational>& b, std::uint64_t seed, int count, const SuiteConfig& cfg) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigurationError("unknown suite '" + suite + "'");
  const auto entry = charts::parse_case(case_id);
  const std::vector<long long> ells = ells_in.empty() ? entry.default_ells : ells_in;
  if (ells.size() != entry.chart.bundle_rank()) throw ConfigurationError("wrong number of bundle exponents");
  for (long long l : ells)
    if (l <= 0) throw ConfigurationError("bundle exponents must be positive");
  if (b && *b <= 0) throw ConfigurationError("outer exponent b must be positive");
  const int base = entry.chart.n;

  if (suite == "kahler-einstein") {
    auto r = check_kahler_einstein_base(entry.chart, make_samples(base, count, seed, false), cfg);
    r.case_id = case_id;
    return r;
  }
  const SampleSet s = make_samples(base, count, seed, true);
  if (suite == "ricci-flat" && entry.eguchi_hanson) return check_eguchi_hanson(s, cfg);

  const bool cone = suite == "ricci-flat" || suite == "einstein-weyl";
  const Rational exponent = b ? *b : (cone ? default_cone_exponent(entry.chart, ells) : Rational(1));
  const charts::PotentialSpec spec{entry.chart, ells, exponent};
  VerificationReport r;
  if (suite == "lck")
    r = check_lck(cone_potential(spec, case_id), s, cfg);
  else if (suite == "vaisman")
    r = check_vaisman(cone_potential(spec, case_id), s, cfg);
  else if (suite == "ricci-flat")
    r = check_cone_ricci_flat(spec, case_id, s, cfg);
  else if (suite == "einstein-weyl")
    r = check_einstein_weyl(spec, case_id, s, cfg);
  else if (suite == "embedding")
    r = check_embedding_consistency(spec, case_id, s, cfg);
  else
    throw ConfigurationError("unknown suite '" + suite + "'");
  r.exponent = exponent;
  return r;
}

}  // namespace flagcone::check
