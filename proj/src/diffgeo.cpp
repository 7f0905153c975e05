#include "flagcone/diffgeo.hpp"

#include "flagcone/errors.hpp"

#include <algorithm>
#include <cmath>

namespace flagcone::geo {

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (auto& x : a_) x *= s;
  return *this;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }

namespace {

// Richardson tableau over halvings of the step scale; stencils are even in t.
template <typename T, typename Stencil>
T richardson(Stencil&& stencil, int levels) {
  std::vector<T> row;
  for (int k = 0; k <= levels; ++k) row.push_back(stencil(std::ldexp(1.0, -k)));
  double p = 1.0;
  for (int j = 1; j <= levels; ++j) {
    p *= 4.0;
    for (int k = 0; k + j <= levels; ++k) row[static_cast<std::size_t>(k)] =
        (p * row[static_cast<std::size_t>(k + 1)] - row[static_cast<std::size_t>(k)]) / (p - 1.0);
  }
  return row[0];
}

VectorXd shifted(const VectorXd& x, int i, double hi) {
  VectorXd y = x;
  y[i] += hi;
  return y;
}

VectorXd shifted(const VectorXd& x, int i, double hi, int j, double hj) {
  VectorXd y = x;
  y[i] += hi;
  y[j] += hj;
  return y;
}

template <typename T, typename Field>
T first_partial(const Field& f, const VectorXd& x, int i, const VectorXd& h, int levels) {
  return richardson<T>(
      [&](double t) {
        const double hi = h[i] * t;
        return T((f(shifted(x, i, hi)) - f(shifted(x, i, -hi))) / (2.0 * hi));
      },
      levels);
}

template <typename T, typename Field>
T second_partial(const Field& f, const VectorXd& x, const T& f0, int i, int j, const VectorXd& h, int levels) {
  if (i == j)
    return richardson<T>(
        [&](double t) {
          const double hi = h[i] * t;
          return T((f(shifted(x, i, hi)) - 2.0 * f0 + f(shifted(x, i, -hi))) / (hi * hi));
        },
        levels);
  return richardson<T>(
      [&](double t) {
        const double hi = h[i] * t, hj = h[j] * t;
        return T((f(shifted(x, i, hi, j, hj)) - f(shifted(x, i, hi, j, -hj)) - f(shifted(x, i, -hi, j, hj)) +
                  f(shifted(x, i, -hi, j, -hj))) /
                 (4.0 * hi * hj));
      },
      levels);
}

}  // namespace

FDConfig default_fd(int order) {
  FDConfig c;
  if (order >= 4) c.step = 0.08;
  return c;
}

VectorXd axis_steps(const VectorXd& x, const FDConfig& cfg) {
  if (!(cfg.step > 0.0)) throw ConfigurationError("FD step must be positive");
  if (cfg.richardson < 0) throw ConfigurationError("Richardson level must be nonnegative");
  VectorXd h(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) h[i] = cfg.step * std::max(1.0, std::abs(x[i]));
  if (cfg.guard_w && x.size() >= 2) {
    const double w = std::hypot(x[x.size() - 2], x[x.size() - 1]);
    if (w < cfg.min_w) throw ChartDegeneracyError("|w| below threshold: point lies on the zero section");
    for (Eigen::Index i = x.size() - 2; i < x.size(); ++i) h[i] = std::min(h[i], w / 4.0);
  }
  return h;
}

VectorXd d_scalar(const ScalarField& f, const VectorXd& x, const FDConfig& cfg) {
  const VectorXd h = axis_steps(x, cfg);
  VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) g[i] = first_partial<double>(f, x, i, h, cfg.richardson);
  return g;
}

MatrixXd hessian(const ScalarField& f, const VectorXd& x, const FDConfig& cfg) {
  const VectorXd h = axis_steps(x, cfg);
  const double f0 = f(x);
  const int n = static_cast<int>(x.size());
  MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      H(i, j) = second_partial<double>(f, x, f0, i, j, h, cfg.richardson);
      H(j, i) = H(i, j);
    }
  return H;
}

std::vector<MatrixXd> d_matrix(const MatrixField& f, const VectorXd& x, const FDConfig& cfg) {
  const VectorXd h = axis_steps(x, cfg);
  std::vector<MatrixXd> out;
  for (int i = 0; i < x.size(); ++i) out.push_back(first_partial<MatrixXd>(f, x, i, h, cfg.richardson));
  return out;
}

std::vector<std::vector<MatrixXd>> dd_matrix(const MatrixField& f, const VectorXd& x, const FDConfig& cfg) {
  const VectorXd h = axis_steps(x, cfg);
  const MatrixXd f0 = f(x);
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<MatrixXd>> out(static_cast<std::size_t>(n), std::vector<MatrixXd>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      out[i][j] = second_partial<MatrixXd>(f, x, f0, i, j, h, cfg.richardson);
      out[j][i] = out[i][j];
    }
  return out;
}

MatrixXd d_oneform(const VectorField& alpha, const VectorXd& x, const FDConfig& cfg) {
  const MatrixField as_matrix = [&](const VectorXd& y) -> MatrixXd { return alpha(y); };
  const auto d = d_matrix(as_matrix, x, cfg);
  const int n = static_cast<int>(x.size());
  MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = d[i](j, 0) - d[j](i, 0);
  return out;
}

Tensor3 d_twoform(const MatrixField& beta, const VectorXd& x, const FDConfig& cfg) {
  const auto d = d_matrix(beta, x, cfg);
  const int n = static_cast<int>(x.size());
  Tensor3 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = d[i](j, k) + d[j](k, i) + d[k](i, j);
  return out;
}

Tensor3 wedge(const VectorXd& a, const MatrixXd& b) {
  const int n = static_cast<int>(a.size());
  Tensor3 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = a[i] * b(j, k) + a[j] * b(k, i) + a[k] * b(i, j);
  return out;
}

MatrixXd complex_structure(int real_dim) {
  MatrixXd J = MatrixXd::Zero(real_dim, real_dim);
  for (int k = 0; k + 1 < real_dim; k += 2) {
    J(k + 1, k) = 1.0;
    J(k, k + 1) = -1.0;
  }
  return J;
}

VectorXd apply_J(const VectorXd& v) { return complex_structure(static_cast<int>(v.size())) * v; }

VectorXd dc_scalar(const ScalarField& f, const VectorXd& x, const FDConfig& cfg) {
  const MatrixXd J = complex_structure(static_cast<int>(x.size()));
  return -J.transpose() * d_scalar(f, x, cfg);
}

MatrixXd kahler_form_from_hessian(const MatrixXd& H) {
  const MatrixXd J = complex_structure(static_cast<int>(H.rows()));
  return 0.25 * (J.transpose() * H - H * J);
}

MatrixXd i_ddbar_from_hessian(const MatrixXd& H) { return 2.0 * kahler_form_from_hessian(H); }

MatrixXd kahler_form(const ScalarField& f, const VectorXd& x, const FDConfig& cfg) {
  return kahler_form_from_hessian(hessian(f, x, cfg));
}

MatrixXd kahler_form_over_potential(const ScalarField& log_f, const VectorXd& x, const FDConfig& cfg) {
  // Hess(e^L) / e^L = Hess L + dL dL^T
  const VectorXd dl = d_scalar(log_f, x, cfg);
  return kahler_form_from_hessian(hessian(log_f, x, cfg) + dl * dl.transpose());
}

MatrixXd metric_from_form(const MatrixXd& omega) {
  const MatrixXd g = omega * complex_structure(static_cast<int>(omega.rows()));
  return 0.5 * (g + g.transpose());
}

LCKData lck_data(const ScalarField& log_k, const VectorXd& x, const FDConfig& cfg) {
  LCKData d;
  const MatrixXd J = complex_structure(static_cast<int>(x.size()));
  const VectorXd dl = d_scalar(log_k, x, cfg);
  d.theta = -dl;
  d.theta_dual = -J.transpose() * d.theta;
  d.omega = kahler_form_from_hessian(hessian(log_k, x, cfg) + dl * dl.transpose());
  d.metric = metric_from_form(d.omega);
  return d;
}

LCKData lck_data(const charts::PotentialSpec& spec, const VectorXd& x, const FDConfig& cfg) {
  return lck_data([&spec](const VectorXd& y) { return spec.log_K_real(y); }, x, cfg);
}

MetricJet metric_jet(const MatrixField& metric, const VectorXd& x, const FDConfig& cfg, bool second) {
  MetricJet j;
  j.g = metric(x);
  j.ginv = j.g.inverse();
  j.dg = d_matrix(metric, x, cfg);
  if (second) j.ddg = dd_matrix(metric, x, cfg);
  return j;
}

Tensor3 christoffel(const MetricJet& jet) {
  const int n = static_cast<int>(jet.g.rows());
  Tensor3 lower(n);  // [i j l] = (1/2)(d_i g_jl + d_j g_il - d_l g_ij)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) lower(i, j, l) = 0.5 * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
  Tensor3 out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += jet.ginv(k, l) * lower(i, j, l);
        out(k, i, j) = s;
      }
  return out;
}

std::vector<Tensor3> christoffel_derivative(const MetricJet& jet) {
  if (jet.ddg.empty()) throw InternalError("christoffel_derivative needs a second-order jet");
  const int n = static_cast<int>(jet.g.rows());
  Tensor3 lower(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) lower(i, j, l) = 0.5 * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
  std::vector<Tensor3> out;
  for (int m = 0; m < n; ++m) {
    const MatrixXd dginv = -jet.ginv * jet.dg[m] * jet.ginv;
    Tensor3 t(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            const double dlow = 0.5 * (jet.ddg[m][i](j, l) + jet.ddg[m][j](i, l) - jet.ddg[m][l](i, j));
            s += dginv(k, l) * lower(i, j, l) + jet.ginv(k, l) * dlow;
          }
          t(k, i, j) = s;
        }
    out.push_back(std::move(t));
  }
  return out;
}

MatrixXd ricci_from_connection(const Tensor3& G, const std::vector<Tensor3>& dG) {
  const int n = G.dim();
  MatrixXd ric = MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        s += dG[i](i, j, k) - dG[j](i, i, k);
        for (int m = 0; m < n; ++m) s += G(i, i, m) * G(m, j, k) - G(i, j, m) * G(m, i, k);
      }
      ric(j, k) = s;
    }
  return ric;
}

MatrixXd ricci(const MetricJet& jet) {
  const MatrixXd r = ricci_from_connection(christoffel(jet), christoffel_derivative(jet));
  return 0.5 * (r + r.transpose());
}

MatrixXd ricci(const MatrixField& metric, const VectorXd& x, const FDConfig& cfg) {
  return ricci(metric_jet(metric, x, cfg, true));
}

MatrixXd nabla_oneform(const VectorXd& theta, const MatrixXd& dtheta, const Tensor3& gamma) {
  const int n = static_cast<int>(theta.size());
  MatrixXd out = dtheta;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j) -= gamma(k, i, j) * theta[k];
  return out;
}

Tensor3 nabla_metric(const MetricJet& jet, const Tensor3& gamma) {
  const int n = static_cast<int>(jet.g.rows());
  Tensor3 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = jet.dg[i](j, k);
        for (int l = 0; l < n; ++l) s -= gamma(l, i, j) * jet.g(l, k) + gamma(l, i, k) * jet.g(j, l);
        out(i, j, k) = s;
      }
  return out;
}

namespace {

double half_log_det(const MatrixXd& g) {
  Eigen::LLT<MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  double s = 0.0;
  for (Eigen::Index k = 0; k < g.rows(); ++k) s += std::log(llt.matrixL()(k, k));
  return s;
}

}  // namespace

MatrixXd ricci_form(const ScalarField& f, const VectorXd& x, const FDConfig& cfg) {
  const ScalarField l = [&](const VectorXd& y) { return half_log_det(metric_from_form(kahler_form(f, y, cfg))); };
  return -i_ddbar_from_hessian(hessian(l, x, cfg));
}

MatrixXd ricci_form_log(const ScalarField& log_f, const VectorXd& x, const FDConfig& cfg) {
  const double half_dim = 0.5 * static_cast<double>(x.size());
  const ScalarField l = [&](const VectorXd& y) {
    return half_log_det(metric_from_form(kahler_form_over_potential(log_f, y, cfg))) + half_dim * log_f(y);
  };
  return -i_ddbar_from_hessian(hessian(l, x, cfg));
}

Tensor3 weyl_connection(const Tensor3& gamma, const MatrixXd& g, const MatrixXd& ginv, const VectorXd& theta) {
  const int n = static_cast<int>(theta.size());
  const VectorXd sharp = ginv * theta;
  Tensor3 out = gamma;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double c = -g(i, j) * sharp[k];
        if (k == j) c += theta[i];
        if (k == i) c += theta[j];
        out(k, i, j) -= 0.5 * c;
      }
  return out;
}

MatrixXd weyl_ricci_curvature(const MetricJet& jet, const VectorXd& theta, const MatrixXd& dtheta) {
  const int n = static_cast<int>(theta.size());
  const Tensor3 gamma = christoffel(jet);
  const Tensor3 gd = weyl_connection(gamma, jet.g, jet.ginv, theta);
  std::vector<Tensor3> dgd = christoffel_derivative(jet);
  const VectorXd sharp = jet.ginv * theta;
  for (int m = 0; m < n; ++m) {
    const MatrixXd dginv = -jet.ginv * jet.dg[m] * jet.ginv;
    const VectorXd dsharp = dginv * theta + jet.ginv * dtheta.row(m).transpose();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double c = -jet.dg[m](i, j) * sharp[k] - jet.g(i, j) * dsharp[k];
          if (k == j) c += dtheta(m, i);
          if (k == i) c += dtheta(m, j);
          dgd[static_cast<std::size_t>(m)](k, i, j) -= 0.5 * c;
        }
  }
  return ricci_from_connection(gd, dgd);
}

MatrixXd weyl_ricci_closed_form(const MetricJet& jet, const VectorXd& theta, const MatrixXd& dtheta) {
  const double n = static_cast<double>(theta.size());
  const Tensor3 gamma = christoffel(jet);
  const MatrixXd ric = ricci(jet);
  const MatrixXd nt = nabla_oneform(theta, dtheta, gamma);
  const double div = (jet.ginv.cwiseProduct(nt)).sum();
  const double t2 = theta.dot(jet.ginv * theta);
  return ric + 0.5 * n * nt - 0.5 * (nt + nt.transpose()) + 0.5 * div * jet.g +
         0.25 * (n - 2.0) * (theta * theta.transpose() - t2 * jet.g);
}

namespace {

// L^{-1} with g = L L^T, so invariant norms become Frobenius norms.
MatrixXd inverse_cholesky(const MatrixXd& g) {
  Eigen::LLT<MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  const MatrixXd L = llt.matrixL();
  return L.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(g.rows(), g.cols()));
}

}  // namespace

double norm(const VectorXd& v, const MatrixXd& g) { return (inverse_cholesky(g) * v).norm(); }

double norm(const MatrixXd& t, const MatrixXd& g) {
  const MatrixXd li = inverse_cholesky(g);
  return (li * t * li.transpose()).norm();
}

double norm(const Tensor3& t, const MatrixXd& g) {
  const MatrixXd li = inverse_cholesky(g);
  const int n = t.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int i = 0; i <= a; ++i)
          for (int j = 0; j <= b; ++j)
            for (int k = 0; k <= c; ++k) v += li(a, i) * li(b, j) * li(c, k) * t(i, j, k);
        s += v * v;
      }
  return std::sqrt(s);
}

}  // namespace flagcone::geo
