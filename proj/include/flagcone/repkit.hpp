#pragma once

// Explicit finite-dimensional modules of classical Lie algebras with exact
// generator matrices over Q(i), a diagonal invariant Hermitian product, group
// words and Casimir operators.

#include "flagcone/exact.hpp"
#include "flagcone/liecore.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace flagcone::rep {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct RepFactor {
  lie::RootSystem root_system;
  lie::Weight highest_weight;
};

/// A named Lie algebra element acting on the module.
struct Element {
  QMatrix exact;
  CMatrix numeric;
  /// Smallest k with X^k = 0, or 0 when X is not nilpotent.
  int nilpotency = 0;
};

struct ChevalleyTriple {
  QMatrix e, f, h;
};

/// Module over g_1 + ... + g_r (one factor for a simple algebra). Immutable
/// after construction.
class RepSpace;
RepSpace sl2_module(int ell);
RepSpace wedge_module(int n, int k);
RepSpace so_vector_module(int N);
RepSpace outer_tensor(const RepSpace& a, const RepSpace& b);
RepSpace inner_tensor(const RepSpace& a, const RepSpace& b);

class RepSpace {
public:
  std::size_t dim() const { return gram_.size(); }
  const std::vector<RepFactor>& factors() const { return factors_; }
  /// chevalley()[factor][i] for simple index i (0-based).
  const std::vector<std::vector<ChevalleyTriple>>& chevalley() const { return chevalley_; }
  /// Highest weight vector before normalization and its squared norm.
  const QVector& hw_exact() const { return hw_; }
  const Rational& hw_norm2() const { return hw_norm2_; }
  /// Unit highest weight vector.
  CVector hw() const;
  /// Diagonal of the invariant Hermitian product in the module basis.
  const std::vector<Rational>& gram() const { return gram_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  /// Tags: E<i>, F<i>, H<i>, compact KX<i> = E-F, KY<i> = i(E+F), KH<i> = iH
  /// (1-based i), module-specific extras, and "<f>:" prefixes on outer tensors.
  bool has(const std::string& tag) const { return elements_.count(tag) != 0; }
  const Element& element(const std::string& tag) const;
  std::vector<std::string> tags() const;

  /// All generators E_i, F_i, H_i of all factors.
  std::vector<QMatrix> generators() const;

  double norm2(const CVector& v) const;
  Rational norm2(const QVector& v) const;
  cplx inner(const CVector& u, const CVector& v) const;

  // Construction helpers used by the module builders.
  struct Builder;

private:
  friend struct Builder;
  friend RepSpace sl2_module(int);
  friend RepSpace wedge_module(int, int);
  friend RepSpace so_vector_module(int);
  friend RepSpace outer_tensor(const RepSpace&, const RepSpace&);
  friend RepSpace inner_tensor(const RepSpace&, const RepSpace&);
  std::vector<RepFactor> factors_;
  std::vector<std::vector<ChevalleyTriple>> chevalley_;
  QVector hw_;
  Rational hw_norm2_;
  std::vector<Rational> gram_;
  std::vector<std::string> labels_;
  std::map<std::string, Element> elements_;
};

/// V(l omega) of sl2 on binary forms X^{l-k} Y^k.
RepSpace sl2_module(int ell);
/// Lambda^k C^{n+1} for sl(n+1); extras "e<a>_<b>" are the gl matrix units (1-based).
RepSpace wedge_module(int n, int k);
/// C^N for so(N), N = 3 or N >= 5; extras "A<j>" (j = 1..N-2) span the abelian
/// nilradical opposite to v+ = e_1 - i e_2.
RepSpace so_vector_module(int N);
/// V_1 (x) V_2 for g_1 + g_2.
RepSpace outer_tensor(const RepSpace& a, const RepSpace& b);
/// V_1 (x) V_2 for the diagonal action of one algebra; keeps extras present in both.
RepSpace inner_tensor(const RepSpace& a, const RepSpace& b);

/// Ordered product exp(t_1 X_1) exp(t_2 X_2) ... .
struct GroupWord {
  std::vector<std::pair<std::string, cplx>> letters;
};
struct ExactGroupWord {
  std::vector<std::pair<std::string, GaussRational>> letters;
};

struct ActDiagnostics {
  bool used_dense_exponential = false;
  /// max ||exp(tX) exp(-tX) - 1|| over dense letters.
  double dense_tolerance = 0.0;
};

/// Nilpotent letters use the terminating series; other letters fall back to
/// a dense matrix exponential, recorded in diagnostics.
CVector act(const RepSpace& rep, const GroupWord& word, const CVector& v, ActDiagnostics* diag = nullptr);
CMatrix word_matrix(const RepSpace& rep, const GroupWord& word, ActDiagnostics* diag = nullptr);
/// Exact action; every letter must be nilpotent (DomainError otherwise).
QVector act_exact(const RepSpace& rep, const ExactGroupWord& word, const QVector& v);

CVector to_numeric(const QVector& v);
CMatrix to_numeric(const QMatrix& m);

struct CasimirData {
  std::vector<QMatrix> basis;   // basis of the image of g in End(V)
  QMatrix killing;              // tr(ad X_a ad X_b)
  QMatrix killing_inverse;
  QMatrix casimir;              // sum kappa^{ab} X_a X_b
};

/// InternalError when the Killing Gram matrix is singular.
CasimirData casimir_data(const RepSpace& rep);
QMatrix casimir_matrix(const RepSpace& rep);
/// Delta(C) = C (x) 1 + 1 (x) C + 2 sum kappa^{ab} X_a (x) X_b on V (x) V.
QMatrix casimir_tensor_matrix(const RepSpace& rep);
/// Sum of liecore Casimir eigenvalues over the factors.
Rational expected_casimir(const RepSpace& rep);

}  // namespace flagcone::rep
