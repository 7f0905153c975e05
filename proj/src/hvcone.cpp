#include "flagcone/hvcone.hpp"

#include "flagcone/diffgeo.hpp"
#include "flagcone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace flagcone::hv {

std::string to_string(ResidualKind k) {
  switch (k) {
    case ResidualKind::None: return "none";
    case ResidualKind::Plucker: return "plucker";
    case ResidualKind::Quadric: return "quadric";
    case ResidualKind::Determinant: return "determinant";
    case ResidualKind::Casimir: return "casimir";
  }
  return "none";
}

namespace {

bool all_ones(const std::vector<long long>& ells) {
  return std::all_of(ells.begin(), ells.end(), [](long long l) { return l == 1; });
}

ResidualKind pick_kind(const charts::Chart& c, const std::vector<long long>& ells) {
  using charts::ChartKind;
  if (all_ones(ells)) {
    if (c.kind == ChartKind::Grassmann) {
      // Lambda^1 and Lambda^n of C^{n+1}: every nonzero vector is decomposable.
      if (c.param2 == 1 || c.param2 == c.param1) return ResidualKind::None;
      return ResidualKind::Plucker;
    }
    if (c.kind == ChartKind::Quadric) return ResidualKind::Quadric;
    if (c.kind == ChartKind::Product && c.factors.size() == 2 &&
        std::all_of(c.factors.begin(), c.factors.end(), [](const charts::Chart& f) {
          return f.kind == ChartKind::Grassmann && f.param1 == 1;
        }))
      return ResidualKind::Determinant;
  }
  return ResidualKind::Casimir;
}

}  // namespace

RemmertMap::RemmertMap(charts::Chart chart, std::vector<long long> ells)
    : chart_(std::move(chart)), ells_(std::move(ells)), rep_(charts::chart_representation(chart_, ells_)) {
  kind_ = pick_kind(chart_, ells_);
  if (kind_ == ResidualKind::Casimir) casimir_ = std::make_shared<const CasimirQuadric>(rep_.rep);
}

CVector RemmertMap::operator()(const std::vector<cplx>& z, cplx w) const {
  if (w == cplx(0.0)) throw DomainError("w = 0 maps to the apex of the cone");
  return w * rep::act(rep_.rep, rep_.word(z), rep_.rep.hw());
}

QVector RemmertMap::exact(const std::vector<GaussRational>& z, const GaussRational& w) const {
  if (w.is_zero()) throw DomainError("w = 0 maps to the apex of the cone");
  QVector v = rep::act_exact(rep_.rep, rep_.exact_word(z), rep_.rep.hw_exact());
  for (auto& x : v) x *= w;
  return v;
}

Rational RemmertMap::exact_norm2(const std::vector<GaussRational>& z, const GaussRational& w) const {
  return rep_.rep.norm2(exact(z, w)) / rep_.rep.hw_norm2();
}

double RemmertMap::residual(const CVector& v) const {
  const double n2 = norm2(v);
  if (n2 == 0.0) throw DomainError("residual of the zero vector");
  switch (kind_) {
    case ResidualKind::None: return 0.0;
    case ResidualKind::Plucker: return plucker_residual(chart_.param1, chart_.param2, v) / n2;
    case ResidualKind::Quadric: return quadric_residual(chart_.param1, v) / n2;
    case ResidualKind::Determinant: return determinant_residual(v) / n2;
    case ResidualKind::Casimir: return casimir_->residual(v) / n2;
  }
  return 0.0;
}

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.begin(), mask.begin() + k, 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask[static_cast<std::size_t>(i)]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

double plucker_residual(int n, int k, const CVector& v) {
  const int N = n + 1;
  if (k < 1 || k > N) throw ConfigurationError("plucker_residual: need 1 <= k <= n + 1");
  const auto basis = subsets(N, k);
  if (static_cast<std::size_t>(v.size()) != basis.size())
    throw ConfigurationError("plucker_residual: vector length does not match Lambda^k");
  std::map<std::vector<int>, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<Eigen::Index>(i);

  // p(I + {j}) with I sorted; sign from moving j into place.
  auto p_with = [&](const std::vector<int>& I, int j) -> cplx {
    if (std::find(I.begin(), I.end(), j) != I.end()) return 0.0;
    std::vector<int> s = I;
    const auto above = std::count_if(I.begin(), I.end(), [j](int a) { return a > j; });
    s.insert(std::upper_bound(s.begin(), s.end(), j), j);
    const cplx x = v[index.at(s)];
    return above % 2 == 0 ? x : -x;
  };

  double worst = 0.0;
  if (k == 1 || k == N) return 0.0;
  for (const auto& I : subsets(N, k - 1))
    for (const auto& J : subsets(N, k + 1)) {
      cplx s = 0.0;
      for (std::size_t l = 0; l < J.size(); ++l) {
        std::vector<int> rest = J;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(l));
        const cplx term = p_with(I, J[l]) * v[index.at(rest)];
        s += (l % 2 == 0) ? term : -term;
      }
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double quadric_residual(int N, const CVector& v) {
  if (v.size() != N) throw ConfigurationError("quadric_residual: vector length must be N");
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v[i] * v[i];
  return std::abs(s);
}

double determinant_residual(const CVector& v) {
  if (v.size() != 4) throw ConfigurationError("determinant_residual: needs a vector in C^2 (x) C^2");
  return std::abs(v[0] * v[3] - v[1] * v[2]);
}

Rational casimir_of_double(const rep::RepSpace& rep) {
  Rational c = 0;
  for (const auto& f : rep.factors()) c += lie::casimir_eigenvalue(f.root_system, f.highest_weight + f.highest_weight);
  return c;
}

QMatrix casimir_quadric_operator(const rep::RepSpace& rep) {
  QMatrix op = rep::casimir_tensor_matrix(rep);
  const GaussRational c(casimir_of_double(rep));
  for (std::size_t i = 0; i < op.rows(); ++i) op(i, i) -= c;
  return op;
}

namespace {

using rep::CMatrix;

Eigen::VectorXcd flatten(const CMatrix& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

// Floating-point bracket closure of the represented algebra. The exact
// closure in repkit is too slow on the large tensor modules of the catalog.
struct NumericSpan {
  std::vector<CMatrix> basis;
  std::vector<Eigen::VectorXcd> ortho;

  bool add(const CMatrix& x) {
    Eigen::VectorXcd r = flatten(x);
    const double n0 = r.norm();
    if (n0 == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) r -= q.dot(r) * q;
    if (r.norm() < 1e-9 * n0) return false;
    ortho.push_back(r / r.norm());
    basis.push_back(x);
    return true;
  }
};

}  // namespace

CasimirQuadric::CasimirQuadric(const rep::RepSpace& rep) {
  NumericSpan span;
  for (const auto& f : rep.chevalley())
    for (const auto& t : f) {
      span.add(rep::to_numeric(t.e));
      span.add(rep::to_numeric(t.f));
    }
  for (std::size_t i = 0; i < span.basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const CMatrix a = span.basis[i], b = span.basis[j];
      span.add(a * b - b * a);
    }
  const auto m = static_cast<Eigen::Index>(span.basis.size());
  CMatrix cols(span.ortho.empty() ? 0 : span.ortho[0].size(), m);
  for (Eigen::Index a = 0; a < m; ++a) cols.col(a) = flatten(span.basis[static_cast<std::size_t>(a)]);
  const Eigen::ColPivHouseholderQR<CMatrix> qr(cols);
  std::vector<CMatrix> ad;
  for (Eigen::Index a = 0; a < m; ++a) {
    CMatrix x(m, m);
    const CMatrix& A = span.basis[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < m; ++b) {
      const CMatrix& B = span.basis[static_cast<std::size_t>(b)];
      x.col(b) = qr.solve(flatten(CMatrix(A * B - B * A)));
    }
    ad.push_back(std::move(x));
  }
  CMatrix killing(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) killing(a, b) = (ad[static_cast<std::size_t>(a)] * ad[static_cast<std::size_t>(b)]).trace();
  const Eigen::FullPivLU<CMatrix> lu(killing);
  if (!lu.isInvertible()) throw InternalError("Killing form of the represented algebra is degenerate");
  killing_inverse_ = lu.inverse();
  basis_ = span.basis;
  const auto d = static_cast<Eigen::Index>(rep.dim());
  casimir_ = CMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      casimir_ += killing_inverse_(a, b) * span.basis[static_cast<std::size_t>(a)] * span.basis[static_cast<std::size_t>(b)];
  for (const auto& g : rep.gram()) gram_.push_back(to_double(g));
  c2_ = to_double(casimir_of_double(rep));
}

double CasimirQuadric::residual(const CVector& v) const {
  const Eigen::Index d = v.size();
  if (static_cast<std::size_t>(d) != gram_.size()) throw ConfigurationError("casimir residual: vector length mismatch");
  // Accumulate the result as a d x d matrix R(i, j) ~ e_i (x) e_j.
  const CVector cv = casimir_ * v;
  rep::CMatrix r = cv * v.transpose() + v * cv.transpose() - c2_ * v * v.transpose();
  std::vector<CVector> xv;
  for (const auto& x : basis_) xv.push_back(x * v);
  const std::size_t m = basis_.size();
  for (std::size_t a = 0; a < m; ++a) {
    CVector y = CVector::Zero(d);
    for (std::size_t b = 0; b < m; ++b) {
      const cplx k = killing_inverse_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (std::abs(k) > 1e-14) y += k * xv[b];
    }
    r += 2.0 * xv[a] * y.transpose();
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s += gram_[static_cast<std::size_t>(i)] * gram_[static_cast<std::size_t>(j)] * std::norm(r(i, j));
  return std::sqrt(s);
}

double casimir_quadric_residual(const rep::RepSpace& rep, const CVector& v) { return CasimirQuadric(rep).residual(v); }

GammaGroup::GammaGroup(cplx l) : lambda(l) {
  const double a = std::abs(l);
  if (!(a > 0.0 && a < 1.0)) throw ConfigurationError("Gamma needs 0 < |lambda| < 1");
}

namespace {

cplx ipow(cplx x, long long n) {
  if (n < 0) {
    x = 1.0 / x;
    n = -n;
  }
  cplx out = 1.0;
  while (n > 0) {
    if (n & 1) out *= x;
    x *= x;
    n >>= 1;
  }
  return out;
}

double weighted_norm(const CVector& v, const std::vector<double>& gram) {
  if (gram.empty()) return v.norm();
  if (gram.size() != static_cast<std::size_t>(v.size())) throw ConfigurationError("Gram weights have the wrong length");
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += gram[static_cast<std::size_t>(i)] * std::norm(v[i]);
  return std::sqrt(s);
}

}  // namespace

HopfPoint gamma_canonicalize(const GammaGroup& gamma, const CVector& v, const std::vector<double>& gram) {
  const double nv = weighted_norm(v, gram);
  if (nv == 0.0) throw DomainError("the zero vector has no Hopf representative");
  const double a = std::abs(gamma.lambda);
  long long n = static_cast<long long>(std::ceil(std::log(nv) / -std::log(a)));
  // Settle floating-point edge cases against the annulus directly.
  auto radius = [&](long long k) { return std::pow(a, static_cast<double>(k)) * nv; };
  while (radius(n) > 1.0) ++n;
  while (radius(n) <= a) --n;
  return HopfPoint{ipow(gamma.lambda, n) * v, n};
}

double hopf_distance(const HopfPoint& a, const HopfPoint& b) {
  if (a.representative.size() != b.representative.size()) throw ConfigurationError("Hopf points live in different spaces");
  return (a.representative - b.representative).norm();
}

HopfPoint kodaira_embedding(const RemmertMap& map, const GammaGroup& gamma, const std::vector<cplx>& z, cplx w) {
  std::vector<double> gram;
  for (const auto& g : map.rep().gram()) gram.push_back(to_double(g));
  return gamma_canonicalize(gamma, map(z, w), gram);
}

HopfPoint kodaira_embedding(const charts::PotentialSpec& spec, const GammaGroup& gamma, const std::vector<cplx>& z,
                            cplx w) {
  return kodaira_embedding(RemmertMap(spec), gamma, z, w);
}

namespace {

// (sinh 2t - 2t) / t^3, by its series near zero.
double stenzel_core(double t) {
  if (t >= 1.0) return (std::sinh(2.0 * t) - 2.0 * t) / (t * t * t);
  double term = 8.0 / 6.0, sum = term;
  const double x = 4.0 * t * t;
  for (int k = 2; k < 40; ++k) {
    term *= x / static_cast<double>((2 * k) * (2 * k + 1));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

void check_eps(double eps, double t) {
  if (!(eps > 0.0)) throw DomainError("Stenzel: eps must be positive");
  if (!(t >= 0.0)) throw DomainError("Stenzel: t must be nonnegative");
}

}  // namespace

double stenzel_fprime(double eps, double t) {
  check_eps(eps, t);
  const double t_over_sinh = t == 0.0 ? 1.0 : t / std::sinh(t);
  return std::cbrt(3.0 / (4.0 * eps * eps)) * std::cbrt(stenzel_core(t)) * t_over_sinh;
}

double stenzel_ode_residual(double eps, double t) {
  check_eps(eps, t);
  const geo::ScalarField cube = [eps](const Eigen::VectorXd& s) {
    const double f = stenzel_fprime(eps, std::abs(s[0]));
    return f * f * f;
  };
  const geo::FDConfig cfg{1e-2, 3, false};
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(1, t);
  const double du = geo::d_scalar(cube, p, cfg)[0];
  const double u = cube(p);
  return eps * eps * std::cosh(t) * u + eps * eps * std::sinh(t) / 3.0 * du - 1.0;
}

double stenzel_potential(double eps, double t) {
  check_eps(eps, t);
  if (t == 0.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate([eps](double s) { return stenzel_fprime(eps, s); }, 0.0, t, 15, 1e-13);
}

double singular_cone_potential(const Eigen::Matrix2cd& W) {
  const double tr = (W * W.adjoint()).trace().real();
  return std::pow(1.5, 4.0 / 3.0) * std::cbrt(tr * tr);
}

double eguchi_hanson_upsilon(double x) {
  if (x < 0.0) throw DomainError("Upsilon is defined for x >= 0");
  const double s = std::sqrt(1.0 + 4.0 * x);
  return s - std::log((1.0 + s) / 2.0);
}

double eguchi_hanson_upsilon_prime(double x) {
  if (x < 0.0) throw DomainError("Upsilon is defined for x >= 0");
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * x));
}

double eguchi_hanson_potential(double k_h) {
  if (!(k_h > 0.0)) throw DomainError("Eguchi-Hanson potential needs K_H > 0");
  return 0.5 * std::log(k_h) + eguchi_hanson_upsilon(k_h);
}

}  // namespace flagcone::hv
