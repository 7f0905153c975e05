#pragma once

// Exact combinatorics of the classical simple Lie algebras A_n, B_n, C_n, D_n:
// roots in epsilon coordinates, Cartan data, parabolic subsets, the weight
// delta_P of the anticanonical bundle, Fano indices and Casimir eigenvalues.
//
// Everything in this header is exact rational arithmetic.

#include "flagcone/exact.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagcone::lie {

enum class Series { A, B, C, D };

char to_char(Series s);
/// Accepts "A".."D" (case-insensitive); exceptional letters raise ConfigurationError.
Series parse_series(std::string_view text);

using RationalVector = std::vector<Rational>;

Rational dot(const RationalVector& a, const RationalVector& b);

/// Weight in the fundamental-weight basis: coeffs[i] = <w, h_i^vee>.
struct Weight {
  std::vector<Rational> coeffs;

  Weight& operator+=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator*(const Rational& s, Weight w) {
    for (auto& c : w.coeffs) c *= s;
    return w;
  }
  friend bool operator==(const Weight& a, const Weight& b) { return a.coeffs == b.coeffs; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

  bool is_dominant_integral() const;
  bool is_zero() const;
};

std::string to_string(const Weight& w);

class RootSystem {
public:
  /// rank >= 1 for A, >= 2 for B and C, >= 3 for D.
  static RootSystem build(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::string name() const;

  const std::vector<RationalVector>& simple_roots() const { return simple_; }
  const std::vector<RationalVector>& positive_roots() const { return positive_; }
  /// cartan_matrix()[i][j] = <alpha_i, h_{alpha_j}^vee>.
  const std::vector<std::vector<long long>>& cartan_matrix() const { return cartan_; }
  /// Fundamental weights in epsilon coordinates (inside the span of the roots).
  const std::vector<RationalVector>& fundamental_weights() const { return fundamental_; }
  const RationalVector& rho() const { return rho_; }

  Weight fundamental(int i) const;
  Weight rho_weight() const;
  Weight zero_weight() const;

  RationalVector coroot(const RationalVector& alpha) const;
  RationalVector to_epsilon(const Weight& w) const;
  /// Projects onto the root span first, so A-series vectors may carry a trace part.
  Weight from_epsilon(const RationalVector& v) const;
  /// Integer coefficients of a root in the simple-root basis.
  std::vector<long long> simple_coordinates(const RationalVector& root) const;

  friend bool operator==(const RootSystem& a, const RootSystem& b) {
    return a.series_ == b.series_ && a.rank_ == b.rank_;
  }

private:
  Series series_ = Series::A;
  int rank_ = 0;
  std::size_t ambient_dim_ = 0;
  std::vector<RationalVector> simple_;
  std::vector<RationalVector> positive_;
  std::vector<std::vector<long long>> cartan_;
  std::vector<RationalVector> fundamental_;
  RationalVector rho_;
};

/// <w, h_{alpha_i}^vee>, evaluated through epsilon coordinates.
Rational pairing(const RootSystem& rs, const Weight& w, int simple_index);

struct ParabolicChoice {
  std::vector<int> theta;       // sorted, 0-based simple-root indices
  std::vector<int> complement;  // Sigma \ Theta, sorted

  /// Throws ConfigurationError on out-of-range or duplicate indices, or when
  /// Sigma \ Theta is empty.
  static ParabolicChoice make(int rank, std::vector<int> theta);
  static ParabolicChoice maximal(int rank, int removed);
};

struct FlagDescriptor {
  RootSystem root_system;
  ParabolicChoice parabolic;
  int dim_complex = 0;
  Weight delta_p;
  long long fano_index = 0;

  std::string name() const;
};

/// Positive roots with some simple root of Sigma \ Theta in their support.
std::vector<RationalVector> complementary_positive_roots(const RootSystem& rs, const ParabolicChoice& p);
Weight delta_p(const RootSystem& rs, const ParabolicChoice& p);
long long fano_index(const FlagDescriptor& flag);
FlagDescriptor make_flag(const RootSystem& rs, const ParabolicChoice& p);

/// L = (x)_{alpha in Sigma\Theta} O_alpha(-l_alpha).
struct LineBundleSpec {
  std::map<int, long long> exponents;

  bool negative() const;
};

/// mu(L) = sum l_alpha omega_alpha. DomainError unless every l_alpha > 0,
/// ConfigurationError unless the keys are exactly Sigma \ Theta.
Weight mu_of_bundle(const FlagDescriptor& flag, const LineBundleSpec& bundle);
/// K_{X_P}: l_alpha = <delta_P, h_alpha^vee>.
LineBundleSpec canonical_bundle(const FlagDescriptor& flag);

/// kappa^*(w1, w2) for the ad-trace Killing form kappa(X,Y) = tr(ad X ad Y).
Rational killing_dual_pairing(const RootSystem& rs, const Weight& w1, const Weight& w2);
/// c(lambda) = kappa^*(lambda, lambda + 2 rho).
Rational casimir_eigenvalue(const RootSystem& rs, const Weight& lambda);

/// Product of flag manifolds G_1/P_1 x ... x G_r/P_r.
struct FlagProduct {
  std::vector<FlagDescriptor> factors;

  int dim_complex() const;
  /// gcd of <delta_P, h_alpha^vee> over every factor's Sigma \ Theta.
  long long fano_index() const;
  std::string name() const;
};

/// One LineBundleSpec per factor.
using BundleExponents = std::vector<LineBundleSpec>;

/// The rational l with L = K^{l / I}, or nullopt when L is not a rational
/// power of the canonical bundle.
std::optional<Rational> canonical_root_order(const FlagProduct& flag, const BundleExponents& bundle);
/// Bundle K^{l / I}; ConfigurationError when the exponents are not integral.
BundleExponents canonical_root_bundle(const FlagProduct& flag, long long ell);

}  // namespace flagcone::lie
