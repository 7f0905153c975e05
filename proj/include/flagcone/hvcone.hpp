#pragma once

// Highest-weight orbit cones: the Remmert map into V(mu), the quadratic
// equations cutting out the cone, the cyclic Hopf quotient, and the special
// cone potentials (Stenzel, Eguchi-Hanson).

#include "flagcone/charts.hpp"
#include "flagcone/repkit.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace flagcone::hv {

using cplx = std::complex<double>;
using rep::CVector;

/// Which quadratic equations are used to test membership of an ambient vector.
enum class ResidualKind { None, Plucker, Quadric, Determinant, Casimir };
std::string to_string(ResidualKind k);

class CasimirQuadric;

/// Remmert map of a catalog potential: (z, w) -> w s(z) v+ in V(mu(L)), with
/// v+ unit-normalized so that the squared norm is K_H.
class RemmertMap {
public:
  RemmertMap(charts::Chart chart, std::vector<long long> ells);
  explicit RemmertMap(const charts::PotentialSpec& spec) : RemmertMap(spec.chart, spec.ells) {}

  const rep::RepSpace& rep() const { return rep_.rep; }
  const charts::Chart& chart() const { return chart_; }
  const std::vector<long long>& ells() const { return ells_; }

  /// DomainError for w = 0 (the apex).
  CVector operator()(const std::vector<cplx>& z, cplx w) const;
  /// Unnormalized exact image w s(z) hw_exact; its norm2 divided by
  /// rep().hw_norm2() is K_H(z, w).
  QVector exact(const std::vector<GaussRational>& z, const GaussRational& w) const;
  Rational exact_norm2(const std::vector<GaussRational>& z, const GaussRational& w) const;

  double norm2(const CVector& v) const { return rep_.rep.norm2(v); }
  /// The equations appropriate for this case; None when the cone is all of V.
  ResidualKind residual_kind() const { return kind_; }
  /// Residual of those equations divided by ||v||^2, so it is scale invariant.
  double residual(const CVector& v) const;

private:
  charts::Chart chart_;
  std::vector<long long> ells_;
  charts::ChartRepresentation rep_;
  ResidualKind kind_ = ResidualKind::None;
  std::shared_ptr<const CasimirQuadric> casimir_;  // only for ResidualKind::Casimir
};

/// Max |Plucker relation| for v in Lambda^k C^{n+1}, coordinates indexed by
/// increasing k-subsets in lexicographic order.
double plucker_residual(int n, int k, const CVector& v);
/// |sum v_k^2|.
double quadric_residual(int N, const CVector& v);
/// |det W| for v = (W_11, W_12, W_21, W_22) in C^2 (x) C^2.
double determinant_residual(const CVector& v);
/// Sum of the liecore Casimir eigenvalues c(2 mu_f) over the factors.
Rational casimir_of_double(const rep::RepSpace& rep);
/// Delta(C) - c(2 mu) on V (x) V as an exact matrix (small modules only).
QMatrix casimir_quadric_operator(const rep::RepSpace& rep);

/// v -> (Delta(C) - c(2 mu))(v (x) v), evaluated factor-wise as
/// Cv (x) v + v (x) Cv + 2 sum kappa^{ab} X_a v (x) X_b v - c v (x) v,
/// never forming the dim^2 x dim^2 operator.
class CasimirQuadric {
public:
  explicit CasimirQuadric(const rep::RepSpace& rep);
  /// Norm in the invariant product of V (x) V.
  double residual(const CVector& v) const;

private:
  std::vector<double> gram_;
  rep::CMatrix casimir_;
  std::vector<rep::CMatrix> basis_;
  rep::CMatrix killing_inverse_;
  double c2_ = 0.0;
};

/// ||(Delta(C) - c(2 mu))(v (x) v)||.
double casimir_quadric_residual(const rep::RepSpace& rep, const CVector& v);

/// Gamma = {lambda^n}, 0 < |lambda| < 1.
struct GammaGroup {
  cplx lambda;
  explicit GammaGroup(cplx l);
};

struct HopfPoint {
  CVector representative;
  long long n = 0;  // representative = lambda^n v
};

/// Unique n with ||lambda^n v|| in (|lambda|, 1]. The norm uses the diagonal
/// Gram weights when given, else the Euclidean norm. DomainError for v = 0.
HopfPoint gamma_canonicalize(const GammaGroup& gamma, const CVector& v, const std::vector<double>& gram = {});
/// Distance between representatives (the equality test for Hopf points).
double hopf_distance(const HopfPoint& a, const HopfPoint& b);

HopfPoint kodaira_embedding(const RemmertMap& map, const GammaGroup& gamma, const std::vector<cplx>& z, cplx w);
HopfPoint kodaira_embedding(const charts::PotentialSpec& spec, const GammaGroup& gamma, const std::vector<cplx>& z,
                            cplx w);

/// F'_eps(t) = (3/(4 eps^2))^{1/3} (sinh 2t - 2t)^{1/3} / sinh t, continuous at t = 0.
double stenzel_fprime(double eps, double t);
/// eps^2 cosh(t) F'^3 + (eps^2 sinh(t) / 3) d/dt F'^3 - 1, with d/dt by finite differences.
double stenzel_ode_residual(double eps, double t);
/// int_0^t F'_eps by adaptive Gauss-Kronrod quadrature.
double stenzel_potential(double eps, double t);

/// (3/2)^{4/3} (Tr W W^H)^{2/3} for a 2x2 complex W.
double singular_cone_potential(const Eigen::Matrix2cd& W);
/// sqrt(1 + 4x) - log((1 + sqrt(1 + 4x)) / 2).
double eguchi_hanson_upsilon(double x);
/// 2 / (1 + sqrt(1 + 4x)).
double eguchi_hanson_upsilon_prime(double x);
/// log K_H / 2 + Upsilon(K_H).
double eguchi_hanson_potential(double k_h);

}  // namespace flagcone::hv
