#include "flagcone/liecore.hpp"

#include "flagcone/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace flagcone::lie {

char to_char(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

Series parse_series(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return Series::A;
      case 'B': return Series::B;
      case 'C': return Series::C;
      case 'D': return Series::D;
      case 'E':
      case 'F':
      case 'G': throw ConfigurationError("exceptional series '" + std::string(text) + "' is not supported");
      default: break;
    }
  }
  throw ConfigurationError("unknown Lie series '" + std::string(text) + "'");
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InternalError("epsilon vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Weight& Weight::operator+=(const Weight& o) {
  if (coeffs.size() != o.coeffs.size()) throw ConfigurationError("weights from different root systems");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

bool Weight::is_dominant_integral() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rational& c) { return c >= 0 && boost::multiprecision::denominator(c) == 1; });
}

bool Weight::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
    if (i) s += ",";
    s += flagcone::to_string(w.coeffs[i]);
  }
  return s + ")";
}

namespace {

RationalVector unit(std::size_t dim, std::size_t i, long long scale = 1) {
  RationalVector v(dim, Rational(0));
  v[i] = scale;
  return v;
}

RationalVector combine(const RationalVector& a, long long sa, const RationalVector& b, long long sb) {
  RationalVector v(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) v[k] = sa * a[k] + sb * b[k];
  return v;
}

}  // namespace

RootSystem RootSystem::build(Series series, int rank) {
  const int min_rank = series == Series::A ? 1 : (series == Series::D ? 3 : 2);
  if (rank < min_rank)
    throw ConfigurationError(std::string(1, to_char(series)) + std::to_string(rank) +
                             " is not a supported classical root system");

  RootSystem rs;
  rs.series_ = series;
  rs.rank_ = rank;
  const std::size_t n = static_cast<std::size_t>(rank);
  rs.ambient_dim_ = series == Series::A ? n + 1 : n;
  const std::size_t dim = rs.ambient_dim_;

  auto e = [&](std::size_t i) { return unit(dim, i); };

  // Simple roots alpha_l = eps_l - eps_{l+1}, closed off per series.
  const std::size_t chain = series == Series::A ? n : n - 1;
  for (std::size_t l = 0; l < chain; ++l) rs.simple_.push_back(combine(e(l), 1, e(l + 1), -1));
  switch (series) {
    case Series::A: break;
    case Series::B: rs.simple_.push_back(e(n - 1)); break;
    case Series::C: rs.simple_.push_back(unit(dim, n - 1, 2)); break;
    case Series::D: rs.simple_.push_back(combine(e(n - 2), 1, e(n - 1), 1)); break;
  }

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      rs.positive_.push_back(combine(e(i), 1, e(j), -1));
      if (series != Series::A) rs.positive_.push_back(combine(e(i), 1, e(j), 1));
    }
  if (series == Series::B)
    for (std::size_t i = 0; i < dim; ++i) rs.positive_.push_back(e(i));
  if (series == Series::C)
    for (std::size_t i = 0; i < dim; ++i) rs.positive_.push_back(unit(dim, i, 2));

  rs.cartan_.assign(n, std::vector<long long>(n, 0));
  RationalMatrix cartan(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational c = dot(rs.simple_[i], rs.coroot(rs.simple_[j]));
      rs.cartan_[i][j] = to_integer(c);
      cartan(i, j) = c;
    }

  // omega_i = sum_j M_ij alpha_j with M = C^{-1}, since <alpha_j, h_k^vee> = C_jk.
  const RationalMatrix m = inverse(cartan);
  rs.rho_.assign(dim, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector w(dim, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < dim; ++k) w[k] += m(i, j) * rs.simple_[j][k];
    for (std::size_t k = 0; k < dim; ++k) rs.rho_[k] += w[k];
    rs.fundamental_.push_back(std::move(w));
  }
  return rs;
}

std::string RootSystem::name() const { return std::string(1, to_char(series_)) + std::to_string(rank_); }

Weight RootSystem::fundamental(int i) const {
  if (i < 0 || i >= rank_) throw ConfigurationError("simple root index out of range");
  Weight w = zero_weight();
  w.coeffs[static_cast<std::size_t>(i)] = 1;
  return w;
}

Weight RootSystem::rho_weight() const { return Weight{std::vector<Rational>(static_cast<std::size_t>(rank_), Rational(1))}; }

Weight RootSystem::zero_weight() const { return Weight{std::vector<Rational>(static_cast<std::size_t>(rank_), Rational(0))}; }

RationalVector RootSystem::coroot(const RationalVector& alpha) const {
  const Rational n2 = dot(alpha, alpha);
  RationalVector c(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) c[k] = 2 * alpha[k] / n2;
  return c;
}

RationalVector RootSystem::to_epsilon(const Weight& w) const {
  if (w.coeffs.size() != static_cast<std::size_t>(rank_)) throw ConfigurationError("weight has wrong rank");
  RationalVector v(ambient_dim_, Rational(0));
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    for (std::size_t k = 0; k < ambient_dim_; ++k) v[k] += w.coeffs[i] * fundamental_[i][k];
  return v;
}

Weight RootSystem::from_epsilon(const RationalVector& v) const {
  if (v.size() != ambient_dim_) throw ConfigurationError("epsilon vector has wrong length");
  Weight w = zero_weight();
  for (std::size_t i = 0; i < simple_.size(); ++i) w.coeffs[i] = dot(v, coroot(simple_[i]));
  return w;
}

std::vector<long long> RootSystem::simple_coordinates(const RationalVector& root) const {
  std::vector<long long> c(simple_.size());
  for (std::size_t j = 0; j < simple_.size(); ++j)
    c[j] = to_integer(2 * dot(root, fundamental_[j]) / dot(simple_[j], simple_[j]));
  return c;
}

Rational pairing(const RootSystem& rs, const Weight& w, int simple_index) {
  if (simple_index < 0 || simple_index >= rs.rank()) throw ConfigurationError("simple root index out of range");
  const auto& alpha = rs.simple_roots()[static_cast<std::size_t>(simple_index)];
  return dot(rs.to_epsilon(w), rs.coroot(alpha));
}

ParabolicChoice ParabolicChoice::make(int rank, std::vector<int> theta) {
  std::set<int> seen;
  for (int t : theta) {
    if (t < 0 || t >= rank)
      throw ConfigurationError("theta index " + std::to_string(t + 1) + " outside 1.." + std::to_string(rank));
    if (!seen.insert(t).second) throw ConfigurationError("duplicate theta index " + std::to_string(t + 1));
  }
  ParabolicChoice p;
  p.theta.assign(seen.begin(), seen.end());
  for (int i = 0; i < rank; ++i)
    if (!seen.count(i)) p.complement.push_back(i);
  if (p.complement.empty()) throw ConfigurationError("Theta = Sigma gives a point, not a flag manifold");
  return p;
}

ParabolicChoice ParabolicChoice::maximal(int rank, int removed) {
  std::vector<int> theta;
  for (int i = 0; i < rank; ++i)
    if (i != removed) theta.push_back(i);
  if (removed < 0 || removed >= rank) throw ConfigurationError("simple root index out of range");
  return make(rank, theta);
}

std::string FlagDescriptor::name() const {
  std::string s = root_system.name() + "/{";
  for (std::size_t i = 0; i < parabolic.complement.size(); ++i) {
    if (i) s += ",";
    s += "a" + std::to_string(parabolic.complement[i] + 1);
  }
  return s + "}";
}

std::vector<RationalVector> complementary_positive_roots(const RootSystem& rs, const ParabolicChoice& p) {
  std::vector<RationalVector> out;
  for (const auto& alpha : rs.positive_roots()) {
    const auto c = rs.simple_coordinates(alpha);
    const bool outside = std::any_of(p.complement.begin(), p.complement.end(),
                                     [&](int i) { return c[static_cast<std::size_t>(i)] != 0; });
    if (outside) out.push_back(alpha);
  }
  return out;
}

Weight delta_p(const RootSystem& rs, const ParabolicChoice& p) {
  RationalVector sum(rs.ambient_dim(), Rational(0));
  for (const auto& alpha : complementary_positive_roots(rs, p))
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += alpha[k];
  return rs.from_epsilon(sum);
}

long long fano_index(const FlagDescriptor& flag) {
  long long g = 0;
  for (int a : flag.parabolic.complement) g = std::gcd(g, to_integer(pairing(flag.root_system, flag.delta_p, a)));
  return g;
}

FlagDescriptor make_flag(const RootSystem& rs, const ParabolicChoice& p) {
  for (int t : p.theta)
    if (t >= rs.rank()) throw ConfigurationError("parabolic choice does not match the root system rank");
  FlagDescriptor f{rs, p, 0, delta_p(rs, p), 0};
  f.dim_complex = static_cast<int>(complementary_positive_roots(rs, p).size());
  f.fano_index = fano_index(f);
  return f;
}

bool LineBundleSpec::negative() const {
  return !exponents.empty() &&
         std::all_of(exponents.begin(), exponents.end(), [](const auto& kv) { return kv.second > 0; });
}

Weight mu_of_bundle(const FlagDescriptor& flag, const LineBundleSpec& bundle) {
  std::vector<int> keys;
  for (const auto& kv : bundle.exponents) keys.push_back(kv.first);
  if (keys != flag.parabolic.complement)
    throw ConfigurationError("bundle exponents must be indexed exactly by Sigma \\ Theta");
  if (!bundle.negative()) throw DomainError("bundle is not negative: every exponent must be positive");
  Weight mu = flag.root_system.zero_weight();
  for (const auto& [alpha, ell] : bundle.exponents) mu.coeffs[static_cast<std::size_t>(alpha)] = ell;
  return mu;
}

LineBundleSpec canonical_bundle(const FlagDescriptor& flag) {
  LineBundleSpec k;
  for (int a : flag.parabolic.complement) k.exponents[a] = to_integer(pairing(flag.root_system, flag.delta_p, a));
  return k;
}

Rational killing_dual_pairing(const RootSystem& rs, const Weight& w1, const Weight& w2) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  if (w1.coeffs.size() != n || w2.coeffs.size() != n) throw ConfigurationError("weights do not match the root system");
  // kappa(h_i, h_j) = sum over all roots of alpha(h_i) alpha(h_j), h_i the simple coroots.
  RationalMatrix gram(n, n);
  for (const auto& alpha : rs.positive_roots()) {
    std::vector<Rational> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = dot(alpha, rs.coroot(rs.simple_roots()[i]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) += 2 * a[i] * a[j];
  }
  const RationalMatrix inv = inverse(gram);
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += w1.coeffs[i] * inv(i, j) * w2.coeffs[j];
  return s;
}

Rational casimir_eigenvalue(const RootSystem& rs, const Weight& lambda) {
  Weight shifted = lambda;
  shifted += Rational(2) * rs.rho_weight();
  return killing_dual_pairing(rs, lambda, shifted);
}

int FlagProduct::dim_complex() const {
  int d = 0;
  for (const auto& f : factors) d += f.dim_complex;
  return d;
}

long long FlagProduct::fano_index() const {
  long long g = 0;
  for (const auto& f : factors) g = std::gcd(g, f.fano_index);
  return g;
}

std::string FlagProduct::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += factors[i].name();
  }
  return s;
}

std::optional<Rational> canonical_root_order(const FlagProduct& flag, const BundleExponents& bundle) {
  if (bundle.size() != flag.factors.size()) throw ConfigurationError("one bundle spec per flag factor expected");
  const Rational index = flag.fano_index();
  std::optional<Rational> ell;
  for (std::size_t f = 0; f < flag.factors.size(); ++f) {
    const auto canonical = canonical_bundle(flag.factors[f]);
    for (const auto& [alpha, k] : canonical.exponents) {
      const auto it = bundle[f].exponents.find(alpha);
      if (it == bundle[f].exponents.end()) throw ConfigurationError("bundle exponents must be indexed by Sigma \\ Theta");
      const Rational candidate = Rational(it->second) * index / Rational(k);
      if (ell && *ell != candidate) return std::nullopt;
      ell = candidate;
    }
  }
  return ell;
}

BundleExponents canonical_root_bundle(const FlagProduct& flag, long long ell) {
  BundleExponents out;
  const long long index = flag.fano_index();
  for (const auto& f : flag.factors) {
    LineBundleSpec spec;
    for (const auto& [alpha, k] : canonical_bundle(f).exponents) {
      if ((ell * k) % index != 0) throw ConfigurationError("K^{l/I} is not an integral bundle for this l");
      spec.exponents[alpha] = ell * k / index;
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace flagcone::lie
