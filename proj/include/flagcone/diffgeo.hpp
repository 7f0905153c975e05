#pragma once

// Pointwise tensor calculus on real chart coordinates
// x = (Re z_1, Im z_1, ..., Re w, Im w) by central differences with
// Richardson extrapolation.

#include "flagcone/charts.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace flagcone::geo {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using ScalarField = std::function<double(const VectorXd&)>;
using VectorField = std::function<VectorXd(const VectorXd&)>;
using MatrixField = std::function<MatrixXd(const VectorXd&)>;

struct FDConfig {
  double step = 0.05;
  int richardson = 2;
  /// Treat the last two coordinates as w: reject |w| < min_w and keep steps
  /// well inside |w| so no stencil crosses w = 0.
  bool guard_w = true;
  double min_w = 1e-6;
};

/// Default configuration for a computation nesting derivatives up to the given
/// order. Round-off in fourth-order nests favours a longer base step (0.08)
/// than the third-order ones (0.05), whose truncation error dominates.
FDConfig default_fd(int order);

/// Dense 3-index array, a(i, j, k).
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), a_(static_cast<std::size_t>(n * n * n), 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return a_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);
  double max_abs() const;

private:
  std::size_t idx(int i, int j, int k) const { return static_cast<std::size_t>((i * n_ + j) * n_ + k); }
  int n_ = 0;
  std::vector<double> a_;
};
Tensor3 operator-(Tensor3 a, const Tensor3& b);

/// Per-axis steps at x; throws ChartDegeneracyError when |w| < min_w.
VectorXd axis_steps(const VectorXd& x, const FDConfig& cfg);

// Differentiation of fields.
VectorXd d_scalar(const ScalarField& f, const VectorXd& x, const FDConfig& cfg);
MatrixXd hessian(const ScalarField& f, const VectorXd& x, const FDConfig& cfg);
/// out[m] = d_m M(x).
std::vector<MatrixXd> d_matrix(const MatrixField& f, const VectorXd& x, const FDConfig& cfg);
/// out[m][n] = d_m d_n M(x).
std::vector<std::vector<MatrixXd>> dd_matrix(const MatrixField& f, const VectorXd& x, const FDConfig& cfg);
/// (d alpha)_{ij} = d_i alpha_j - d_j alpha_i.
MatrixXd d_oneform(const VectorField& alpha, const VectorXd& x, const FDConfig& cfg);
/// (d beta)_{ijk} = d_i beta_jk + d_j beta_ki + d_k beta_ij.
Tensor3 d_twoform(const MatrixField& beta, const VectorXd& x, const FDConfig& cfg);
/// (a ^ b)_{ijk} for a 1-form a and 2-form b.
Tensor3 wedge(const VectorXd& a, const MatrixXd& b);

// Complex structure.
/// J d/dx_j = d/dy_j, J d/dy_j = -d/dx_j.
MatrixXd complex_structure(int real_dim);
VectorXd apply_J(const VectorXd& v);
/// d^c F = -dF o J.
VectorXd dc_scalar(const ScalarField& f, const VectorXd& x, const FDConfig& cfg);
/// (i/2) d d-bar F = (1/4) d d^c F from the real Hessian.
MatrixXd kahler_form_from_hessian(const MatrixXd& H);
/// i d d-bar F.
MatrixXd i_ddbar_from_hessian(const MatrixXd& H);
MatrixXd kahler_form(const ScalarField& f, const VectorXd& x, const FDConfig& cfg);
/// kahler_form(e^L) / e^L, computed from L for conditioning.
MatrixXd kahler_form_over_potential(const ScalarField& log_f, const VectorXd& x, const FDConfig& cfg);
/// g(X, Y) = omega(X, J Y).
MatrixXd metric_from_form(const MatrixXd& omega);

struct LCKData {
  VectorXd theta;       // -d log K
  VectorXd theta_dual;  // -theta o J
  MatrixXd omega;       // kahler_form(K) / K
  MatrixXd metric;      // omega(., J .)
};
LCKData lck_data(const charts::PotentialSpec& spec, const VectorXd& x, const FDConfig& cfg);
LCKData lck_data(const ScalarField& log_k, const VectorXd& x, const FDConfig& cfg);

// Riemannian quantities from a metric jet.
struct MetricJet {
  MatrixXd g, ginv;
  std::vector<MatrixXd> dg;                 // dg[m] = d_m g
  std::vector<std::vector<MatrixXd>> ddg;   // ddg[m][n] = d_m d_n g (empty if not requested)
};
MetricJet metric_jet(const MatrixField& metric, const VectorXd& x, const FDConfig& cfg, bool second);

/// Gamma^k_{ij} stored as (k, i, j).
Tensor3 christoffel(const MetricJet& jet);
/// dGamma[m](k, i, j) = d_m Gamma^k_{ij}.
std::vector<Tensor3> christoffel_derivative(const MetricJet& jet);
/// Ric_{jk} = d_i G^i_{jk} - d_j G^i_{ik} + G^i_{im} G^m_{jk} - G^i_{jm} G^m_{ik}.
MatrixXd ricci_from_connection(const Tensor3& gamma, const std::vector<Tensor3>& dgamma);
MatrixXd ricci(const MetricJet& jet);
MatrixXd ricci(const MatrixField& metric, const VectorXd& x, const FDConfig& cfg);
/// (nabla theta)_{ij} = d_i theta_j - Gamma^k_{ij} theta_k, with dtheta(i, j) = d_i theta_j.
MatrixXd nabla_oneform(const VectorXd& theta, const MatrixXd& dtheta, const Tensor3& gamma);
/// (nabla_i g)_{jk} for a connection gamma.
Tensor3 nabla_metric(const MetricJet& jet, const Tensor3& gamma);

/// Ricci form -i d d-bar log det(g_{a b-bar}) of the Kahler metric of F.
MatrixXd ricci_form(const ScalarField& f, const VectorXd& x, const FDConfig& cfg);
/// Same from log F.
MatrixXd ricci_form_log(const ScalarField& log_f, const VectorXd& x, const FDConfig& cfg);

// Weyl connection D = nabla - (1/2)(theta (.) id - g (x) theta^#).
Tensor3 weyl_connection(const Tensor3& gamma, const MatrixXd& g, const MatrixXd& ginv, const VectorXd& theta);
/// Ric^D from the curvature of D; dtheta(i, j) = d_i theta_j.
MatrixXd weyl_ricci_curvature(const MetricJet& jet, const VectorXd& theta, const MatrixXd& dtheta);
/// Ric^D = Ric + (n/2) nabla theta - sym(nabla theta) - (1/2) delta(theta) g
///       + ((n-2)/4)(theta (x) theta - |theta|^2 g).
MatrixXd weyl_ricci_closed_form(const MetricJet& jet, const VectorXd& theta, const MatrixXd& dtheta);

// Invariant norms with respect to a metric.
double norm(const VectorXd& v, const MatrixXd& g);
double norm(const MatrixXd& t, const MatrixXd& g);
double norm(const Tensor3& t, const MatrixXd& g);

}  // namespace flagcone::geo
