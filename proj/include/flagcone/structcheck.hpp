#pragma once

// Verification suites: pointwise residuals of the structural identities over
// seeded sample sets, aggregated into reports.

#include "flagcone/charts.hpp"
#include "flagcone/diffgeo.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flagcone::check {

using Eigen::VectorXd;

/// Uniform points with |z_j| <= z_radius (uniform in each disk) and, when
/// with_w, |w| uniform in [w_min, w_max] with a uniform phase. Points are real
/// coordinates (Re z_1, Im z_1, ..., Re w, Im w).
struct SampleSet {
  std::uint64_t seed = 0;
  int count = 0;
  double z_radius = 1.5;
  double w_min = 0.5, w_max = 2.0;
  bool with_w = true;
  std::vector<VectorXd> points;
};
/// ConfigurationError for count <= 0 or base_dim < 0.
SampleSet make_samples(int base_dim, int count, std::uint64_t seed, bool with_w = true);

struct ResidualRecord {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Reported without entering the verdict.
  bool informational = false;
};

struct VerificationReport {
  std::string case_id;
  std::string suite;
  std::vector<ResidualRecord> residuals;
  geo::FDConfig fd;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<std::string> warnings;
  /// Outer exponent b of the potential under test, when the suite has one.
  std::optional<Rational> exponent;

  /// Conjunction of the non-informational records.
  bool verdict() const;
  const ResidualRecord& record(const std::string& name) const;
};

/// Default tolerances per residual family; a global override replaces all.
struct Tolerances {
  double algebraic = 1e-12;
  double first_order = 1e-8;
  double membership = 1e-10;
  double lck = 1e-6;
  double vaisman = 1e-5;
  double curvature = 1e-4;

  static Tolerances uniform(double t) { return {t, t, t, t, t, t}; }
};

struct SuiteConfig {
  /// Unset: each suite uses geo::default_fd for its derivative order.
  std::optional<geo::FDConfig> fd;
  Tolerances tol{};
  /// Worker threads for the sample loop; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// A cone potential given through log K on real coordinates with w last.
struct ConePotential {
  std::string id;
  int real_dim = 0;
  geo::ScalarField log_k;
};
ConePotential cone_potential(const charts::PotentialSpec& spec, const std::string& id);
/// Non-product probe K = (1 + |z|^2)|w|^2 + |w|^4 on C^2; l.c.K. but not Vaisman.
ConePotential vaisman_probe();

/// f(points[i]) for all i on a fixed partition of the index range; results
/// land by index, so reductions over them are order independent.
std::vector<std::vector<double>> parallel_map(const std::vector<VectorXd>& points,
                                              const std::function<std::vector<double>(const VectorXd&)>& f,
                                              unsigned threads);

/// d Omega - theta ^ Omega relative to theta ^ Omega, and d theta.
/// theta_scale != 1 corrupts theta before the comparison (negative control).
VerificationReport check_lck(const ConePotential& k, const SampleSet& s, const SuiteConfig& cfg,
                             double theta_scale = 1.0);
/// ||nabla theta|| / ||theta||^2 for the Levi-Civita connection of g~, and the
/// spread of ||theta|| over the samples.
VerificationReport check_vaisman(const ConePotential& k, const SampleSet& s, const SuiteConfig& cfg);
/// ricci_form(log h_delta) against rho_0 = i d d-bar log h_delta, relative in
/// the metric of rho_0, on base samples (no w).
VerificationReport check_kahler_einstein_base(const charts::Chart& chart, const SampleSet& s, const SuiteConfig& cfg);
/// r^2 ||Ric|| of the Kahler metric of K_b, with r^2 = K_b.
VerificationReport check_cone_ricci_flat(const charts::PotentialSpec& spec, const std::string& id, const SampleSet& s,
                                         const SuiteConfig& cfg);
/// Same for log K_H / 2 + Upsilon(K_H) on the cp1, l = 2 chart, with r^2 = sqrt(K_H).
VerificationReport check_eguchi_hanson(const SampleSet& s, const SuiteConfig& cfg);
/// Residuals of Ric(g~) = (n-2)(g~ - theta^ (x) theta^), Ric^D = 0 (both
/// computations and their agreement), and D g~ = theta (x) g~ on the rescaled
/// cone. Real dimension below 6 makes the first residual informational.
VerificationReport check_einstein_weyl(const charts::PotentialSpec& spec, const std::string& id, const SampleSet& s,
                                       const SuiteConfig& cfg);
/// ||remmert||^2 against K_H and the case's quadratic equations on the images.
VerificationReport check_embedding_consistency(const charts::PotentialSpec& spec, const std::string& id,
                                               const SampleSet& s, const SuiteConfig& cfg);

/// Adds a warning to both reports when exactly one of them passes.
bool flag_lck_vaisman_consistency(VerificationReport& lck, VerificationReport& vaisman);

/// Suites addressable by name: lck, vaisman, kahler-einstein, ricci-flat,
/// einstein-weyl, embedding.
std::vector<std::string> suite_names();
/// Flat exponents -> one LineBundleSpec per factor, keyed by Sigma \ Theta.
lie::BundleExponents to_bundle(const lie::FlagProduct& flag, const std::vector<long long>& ells);
/// Ricci-flat exponent for L = K^{l/I}; ConfigurationError when L is not a
/// rational power of the canonical bundle.
Rational default_cone_exponent(const charts::Chart& chart, const std::vector<long long>& ells);

/// Runs a named suite on a catalog case with freshly drawn samples. Empty ells
/// means the catalog default. b defaults to 1 for the l.c.K., Vaisman and
/// embedding suites and to the Ricci-flat exponent for the cone suites.
VerificationReport run_suite(const std::string& case_id, const std::vector<long long>& ells, const std::string& suite,
                             const std::optional<Rational>& b, std::uint64_t seed, int count, const SuiteConfig& cfg);

}  // namespace flagcone::check
