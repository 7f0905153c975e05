#pragma once

// Opposite big-cell charts and the catalog of cone potentials
// K(z, w) = (h_L(z) |w|^2)^b.

#include "flagcone/exact.hpp"
#include "flagcone/liecore.hpp"
#include "flagcone/repkit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace flagcone::charts {

using cplx = std::complex<double>;

namespace detail {

inline double abs2(const cplx& z) { return std::norm(z); }
inline Rational abs2(const GaussRational& z) { return z.abs2(); }

template <typename F>
struct RealOf;
template <>
struct RealOf<cplx> {
  using type = double;
};
template <>
struct RealOf<GaussRational> {
  using type = Rational;
};

template <typename R>
R ipow(R x, long long e) {
  R out(1);
  for (long long k = 0; k < e; ++k) out *= x;
  return out;
}

template <typename F>
F det(std::vector<F> a, std::size_t n) {
  F d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c; r < n; ++r)
      if (abs2(a[r * n + c]) > abs2(a[piv * n + c])) piv = r;
    if (abs2(a[piv * n + c]) == 0) return F(0);
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      d = -d;
    }
    d *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const F f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return d;
}

/// Sum over k-row subsets of |det|^2 for the first k columns of an
/// (rows x cols) row-major matrix.
template <typename F>
typename RealOf<F>::type minor_sum(const std::vector<F>& m, std::size_t rows, std::size_t cols, std::size_t k) {
  using R = typename RealOf<F>::type;
  R total(0);
  std::vector<int> mask(rows, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 1);
  do {
    std::vector<F> sub;
    sub.reserve(k * k);
    for (std::size_t r = 0; r < rows; ++r)
      if (mask[r])
        for (std::size_t c = 0; c < k; ++c) sub.push_back(m[r * cols + c]);
    total += abs2(det(sub, k));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return total;
}

}  // namespace detail

/// Sum of |k x k minors|^2 of [1_k; Z]; Z is (n+1-k) x k, row-major.
template <typename F>
typename detail::RealOf<F>::type grassmann_h(int n, int k, const std::vector<F>& Z) {
  const std::size_t rows = static_cast<std::size_t>(n + 1), kk = static_cast<std::size_t>(k);
  if (Z.size() != (rows - kk) * kk) throw std::invalid_argument("grassmann_h: Z has the wrong shape");
  std::vector<F> m(rows * kk, F(0));
  for (std::size_t i = 0; i < kk; ++i) m[i * kk + i] = F(1);
  for (std::size_t i = 0; i < Z.size(); ++i) m[kk * kk + i] = Z[i];
  return detail::minor_sum(m, rows, kk, kk);
}

/// Number of strictly-lower entries of an (n+1) x (n+1) matrix.
inline std::size_t fullflag_dim(int n) { return static_cast<std::size_t>(n * (n + 1) / 2); }

/// Lower unitriangular matrix from z listed column by column
/// (z_21, ..., z_{n+1,1}, z_32, ...), row-major.
template <typename F>
std::vector<F> lower_unipotent(int n, const std::vector<F>& z) {
  const std::size_t N = static_cast<std::size_t>(n + 1);
  if (z.size() != fullflag_dim(n)) throw std::invalid_argument("fullflag: wrong number of coordinates");
  std::vector<F> m(N * N, F(0));
  std::size_t idx = 0;
  for (std::size_t j = 0; j < N; ++j) {
    m[j * N + j] = F(1);
    for (std::size_t i = j + 1; i < N; ++i) m[i * N + j] = z[idx++];
  }
  return m;
}

/// prod_k (sum of |k x k minors of the first k columns|^2)^{ells[k-1]}.
template <typename F>
typename detail::RealOf<F>::type fullflag_h(int n, const std::vector<long long>& ells, const std::vector<F>& z) {
  using R = typename detail::RealOf<F>::type;
  if (ells.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("fullflag_h: one exponent per k");
  const auto m = lower_unipotent(n, z);
  const std::size_t N = static_cast<std::size_t>(n + 1);
  R out(1);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k)
    out *= detail::ipow(detail::minor_sum(m, N, N, k), ells[k - 1]);
  return out;
}

/// 1 + |zeta|^2/2 + |q(zeta)|^2/16 with q(zeta) = sum zeta_j^2.
template <typename F>
typename detail::RealOf<F>::type quadric_h(int N, const std::vector<F>& zeta) {
  using R = typename detail::RealOf<F>::type;
  if (zeta.size() != static_cast<std::size_t>(N - 2)) throw std::invalid_argument("quadric_h: needs N-2 coordinates");
  R n2(0);
  F q(0);
  for (const auto& x : zeta) {
    n2 += detail::abs2(x);
    q += x * x;
  }
  return R(1) + n2 / R(2) + detail::abs2(q) / R(16);
}

template <typename R>
R product_h(const R& h1, const R& h2) {
  return h1 * h2;
}

enum class ChartKind { Grassmann, FullFlag, Quadric, Product };

/// Big-cell chart of a (product of) flag manifold(s); coordinates are
/// concatenated over factors.
struct Chart {
  ChartKind kind = ChartKind::Grassmann;
  lie::FlagProduct flag;
  int n = 0;       // complex dimension
  int param1 = 0;  // Grassmann: n, FullFlag: n, Quadric: N
  int param2 = 0;  // Grassmann: k
  std::vector<Chart> factors;  // Product only
  std::string provenance = "closed-form";

  /// Number of line-bundle exponents (|Sigma \ Theta| summed over factors).
  std::size_t bundle_rank() const;
  /// ||s(z) v_alpha^+||^2 for each exponent slot, closed forms.
  std::vector<double> fundamental_norms(const std::vector<cplx>& z) const;
  std::vector<Rational> fundamental_norms(const std::vector<GaussRational>& z) const;
  /// prod_alpha fundamental_norm_alpha^{l_alpha}.
  double h(const std::vector<long long>& ells, const std::vector<cplx>& z) const;
  Rational h(const std::vector<long long>& ells, const std::vector<GaussRational>& z) const;
};

Chart grassmann_chart(int n, int k);
Chart fullflag_chart(int n);
Chart quadric_chart(int N);
Chart product_chart(std::vector<Chart> factors);

/// Module of highest weight mu(L) (as a tensor product when needed) with the
/// unipotent section s(z) as a group word.
struct ChartRepresentation {
  rep::RepSpace rep;
  std::function<rep::GroupWord(const std::vector<cplx>&)> word;
  std::function<rep::ExactGroupWord(const std::vector<GaussRational>&)> exact_word;
};
ChartRepresentation chart_representation(const Chart& chart, const std::vector<long long>& ells);

/// h via the representation path: prod over alpha of ||s(z) v_alpha^+||^{2 l_alpha}
/// computed by acting on fundamental modules.
double generic_h(const Chart& chart, const std::vector<long long>& ells, const std::vector<cplx>& z);
Rational generic_h(const Chart& chart, const std::vector<long long>& ells, const std::vector<GaussRational>& z);

/// K_b(z, w) = (h_L(z) |w|^2)^b.
struct PotentialSpec {
  Chart chart;
  std::vector<long long> ells;
  Rational b = 1;

  int complex_dim() const { return chart.n + 1; }
  int real_dim() const { return 2 * complex_dim(); }
  double h(const std::vector<cplx>& z) const { return chart.h(ells, z); }
  double K(const std::vector<cplx>& z, cplx w) const;
  double log_K(const std::vector<cplx>& z, cplx w) const;
  /// Real coordinates (Re z_1, Im z_1, ..., Re w, Im w).
  double K_real(const Eigen::VectorXd& x) const;
  double log_K_real(const Eigen::VectorXd& x) const;
  /// Same spec with a different outer exponent.
  PotentialSpec with_b(const Rational& nb) const;
};

void split_real(const Eigen::VectorXd& x, std::vector<cplx>& z, cplx& w);
Eigen::VectorXd join_real(const std::vector<cplx>& z, cplx w);

/// a = l I / (dim + 1).
Rational dhomothetic_constant(const lie::FlagProduct& flag, const Rational& ell_ord);
/// b = I / (l (dim + 1)) for L = K^{l/I}.
Rational ricci_flat_exponent(const lie::FlagProduct& flag, const Rational& ell);

/// Catalog identifiers: cp:m, hopf:cpm, grassmann:n:k, gr24, fullflag:A:n,
/// wallach, quadric:N, conifold, eguchi-hanson.
struct CatalogEntry {
  std::string id;
  Chart chart;
  std::vector<long long> default_ells;
  bool eguchi_hanson = false;
};
CatalogEntry parse_case(const std::string& id);
std::vector<std::string> catalog_ids();
/// Parses "1,2,..." into exponents; ConfigurationError on a count mismatch.
std::vector<long long> parse_bundle(const std::string& text, std::size_t expected);

}  // namespace flagcone::charts
