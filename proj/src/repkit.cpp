#include "flagcone/repkit.hpp"

#include "flagcone/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flagcone::rep {

struct RepSpace::Builder {
  RepSpace r;
  std::map<std::string, QMatrix> extras;

  static std::string prefix(std::size_t factor, std::size_t nfactors) {
    return nfactors > 1 ? std::to_string(factor + 1) + ":" : std::string();
  }

  static Element make_element(const QMatrix& m) {
    Element e;
    e.exact = m;
    e.numeric = to_numeric(m);
    if (m.rows() > 0) {
      // Cheap spectral screen before the exact power test.
      Eigen::ComplexEigenSolver<CMatrix> es(e.numeric, false);
      if (es.eigenvalues().cwiseAbs().maxCoeff() > 0.25) return e;
    }
    QMatrix p = m;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
      if (p.is_zero()) {
        e.nilpotency = static_cast<int>(k);
        break;
      }
      p = p * m;
    }
    if (m.rows() == 0) e.nilpotency = 1;
    return e;
  }

  RepSpace build() {
    const std::size_t nf = r.chevalley_.size();
    const GaussRational I = GaussRational::i();
    for (std::size_t f = 0; f < nf; ++f) {
      const std::string pre = prefix(f, nf);
      for (std::size_t i = 0; i < r.chevalley_[f].size(); ++i) {
        const auto& t = r.chevalley_[f][i];
        const std::string idx = std::to_string(i + 1);
        r.elements_[pre + "E" + idx] = make_element(t.e);
        r.elements_[pre + "F" + idx] = make_element(t.f);
        r.elements_[pre + "H" + idx] = make_element(t.h);
        r.elements_[pre + "KX" + idx] = make_element(t.e - t.f);
        r.elements_[pre + "KY" + idx] = make_element(I * (t.e + t.f));
        r.elements_[pre + "KH" + idx] = make_element(I * t.h);
      }
    }
    for (const auto& [tag, m] : extras) r.elements_[tag] = make_element(m);
    return std::move(r);
  }
};

CVector RepSpace::hw() const { return to_numeric(hw_) / std::sqrt(to_double(hw_norm2_)); }

const Element& RepSpace::element(const std::string& tag) const {
  const auto it = elements_.find(tag);
  if (it == elements_.end()) throw ConfigurationError("unknown generator tag '" + tag + "'");
  return it->second;
}

std::vector<std::string> RepSpace::tags() const {
  std::vector<std::string> out;
  for (const auto& kv : elements_) out.push_back(kv.first);
  return out;
}

std::vector<QMatrix> RepSpace::generators() const {
  std::vector<QMatrix> out;
  for (const auto& factor : chevalley_)
    for (const auto& t : factor) {
      out.push_back(t.e);
      out.push_back(t.f);
      out.push_back(t.h);
    }
  return out;
}

double RepSpace::norm2(const CVector& v) const {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s += to_double(gram_[static_cast<std::size_t>(k)]) * std::norm(v[k]);
  return s;
}

Rational RepSpace::norm2(const QVector& v) const {
  Rational s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += gram_[k] * v[k].abs2();
  return s;
}

cplx RepSpace::inner(const CVector& u, const CVector& v) const {
  cplx s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    s += to_double(gram_[static_cast<std::size_t>(k)]) * std::conj(u[k]) * v[k];
  return s;
}

CVector to_numeric(const QVector& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out[static_cast<Eigen::Index>(k)] = v[k].to_complex();
  return out;
}

CMatrix to_numeric(const QMatrix& m) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return out;
}

namespace {

Integer binomial(int n, int k) {
  Integer b = 1;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

QMatrix zeros(std::size_t n) { return QMatrix(n, n); }

}  // namespace

RepSpace sl2_module(int ell) {
  if (ell < 0) throw ConfigurationError("sl2 module needs ell >= 0");
  const std::size_t d = static_cast<std::size_t>(ell) + 1;
  RepSpace::Builder b;
  auto& r = b.r;
  const auto a1 = lie::RootSystem::build(lie::Series::A, 1);
  r.factors_.push_back({a1, Rational(ell) * a1.fundamental(0)});
  ChevalleyTriple t{zeros(d), zeros(d), zeros(d)};
  for (std::size_t k = 0; k < d; ++k) {
    const int kk = static_cast<int>(k);
    t.h(k, k) = GaussRational(Rational(ell - 2 * kk));
    if (k >= 1) t.e(k - 1, k) = GaussRational(Rational(kk));
    if (k + 1 < d) t.f(k + 1, k) = GaussRational(Rational(ell - kk));
    r.gram_.push_back(Rational(1) / Rational(binomial(ell, kk)));
    r.labels_.push_back("X^" + std::to_string(ell - kk) + "Y^" + std::to_string(kk));
  }
  r.chevalley_.push_back({t});
  r.hw_.assign(d, GaussRational(0));
  r.hw_[0] = GaussRational(1);
  r.hw_norm2_ = 1;
  return b.build();
}

RepSpace wedge_module(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw ConfigurationError("wedge module needs 1 <= k <= n");
  const int N = n + 1;
  std::vector<std::vector<int>> subsets;
  std::vector<int> mask(static_cast<std::size_t>(N), 0);
  std::fill(mask.begin(), mask.begin() + k, 1);
  do {
    std::vector<int> s;
    for (int j = 0; j < N; ++j)
      if (mask[static_cast<std::size_t>(j)]) s.push_back(j);
    subsets.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = i;
  const std::size_t d = subsets.size();

  // Matrix unit e_{ab} acting by derivations of the exterior algebra.
  auto unit = [&](int a, int bb) {
    QMatrix m(d, d);
    for (std::size_t col = 0; col < d; ++col) {
      const auto& s = subsets[col];
      if (!std::binary_search(s.begin(), s.end(), bb)) continue;
      if (a == bb) {
        m(col, col) = GaussRational(1);
        continue;
      }
      if (std::binary_search(s.begin(), s.end(), a)) continue;
      int between = 0;
      for (int x : s)
        if ((x > std::min(a, bb)) && (x < std::max(a, bb))) ++between;
      std::vector<int> t = s;
      std::replace(t.begin(), t.end(), bb, a);
      std::sort(t.begin(), t.end());
      m(index.at(t), col) = GaussRational(between % 2 ? -1 : 1);
    }
    return m;
  };

  RepSpace::Builder b;
  auto& r = b.r;
  const auto rs = lie::RootSystem::build(lie::Series::A, n);
  r.factors_.push_back({rs, rs.fundamental(k - 1)});
  std::vector<ChevalleyTriple> triples;
  for (int i = 0; i < n; ++i) triples.push_back({unit(i, i + 1), unit(i + 1, i), unit(i, i) - unit(i + 1, i + 1)});
  r.chevalley_.push_back(triples);
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c)
      if (a != c) b.extras["e" + std::to_string(a + 1) + "_" + std::to_string(c + 1)] = unit(a, c);
  for (const auto& s : subsets) {
    std::string label;
    for (int x : s) label += (label.empty() ? "e" : "^e") + std::to_string(x + 1);
    r.labels_.push_back(label);
  }
  r.gram_.assign(d, Rational(1));
  r.hw_.assign(d, GaussRational(0));
  r.hw_[0] = GaussRational(1);
  r.hw_norm2_ = 1;
  return b.build();
}

RepSpace so_vector_module(int N) {
  if (N == 4) throw ConfigurationError("so(4) is not simple; use the product construction");
  if (N < 3) throw ConfigurationError("so(N) vector module needs N = 3 or N >= 5");
  const std::size_t d = static_cast<std::size_t>(N);
  const int m = N / 2;
  const bool odd = N % 2 == 1;
  const GaussRational I = GaussRational::i();

  auto basis = [&](int j) {  // 0-based
    QVector v(d, GaussRational(0));
    v[static_cast<std::size_t>(j)] = GaussRational(1);
    return v;
  };
  auto f = [&](int k) {  // 1-based, e_{2k-1} - i e_{2k}
    QVector v(d, GaussRational(0));
    v[static_cast<std::size_t>(2 * k - 2)] = GaussRational(1);
    v[static_cast<std::size_t>(2 * k - 1)] = -I;
    return v;
  };
  auto conj = [](QVector v) {
    for (auto& x : v) x = x.conj();
    return v;
  };
  auto outer = [&](const QVector& a, const QVector& bv) {
    QMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out(i, j) = a[i] * bv[j];
    return out;
  };
  auto wedge = [&](const QVector& a, const QVector& bv) { return outer(a, bv) - outer(bv, a); };
  const GaussRational half(Rational(1, 2));

  std::vector<QMatrix> es;
  for (int i = 1; i < m; ++i) es.push_back(half * wedge(f(i), conj(f(i + 1))));
  if (odd)
    es.push_back(wedge(f(m), basis(N - 1)));
  else
    es.push_back(half * wedge(f(m - 1), f(m)));

  RepSpace::Builder b;
  auto& r = b.r;
  if (N == 3) {
    const auto a1 = lie::RootSystem::build(lie::Series::A, 1);
    r.factors_.push_back({a1, Rational(2) * a1.fundamental(0)});
  } else {
    const auto rs = lie::RootSystem::build(odd ? lie::Series::B : lie::Series::D, m);
    r.factors_.push_back({rs, rs.fundamental(0)});
  }
  std::vector<ChevalleyTriple> triples;
  for (const auto& e : es) {
    const QMatrix fm = conjugate_transpose(e);
    triples.push_back({e, fm, commutator(e, fm)});
  }
  r.chevalley_.push_back(triples);
  const QVector fbar1 = conj(f(1));
  for (int j = 1; j <= N - 2; ++j) b.extras["A" + std::to_string(j)] = wedge(basis(j + 1), fbar1);
  for (int j = 0; j < N; ++j) r.labels_.push_back("e" + std::to_string(j + 1));
  r.gram_.assign(d, Rational(1));
  r.hw_ = f(1);
  r.hw_norm2_ = 2;
  return b.build();
}

namespace {

std::string retag(const std::string& tag, std::size_t offset, std::size_t nfactors) {
  if (nfactors == 1) return std::to_string(offset + 1) + ":" + tag;
  const auto colon = tag.find(':');
  const std::size_t f = std::stoul(tag.substr(0, colon));
  return std::to_string(f + offset) + ":" + tag.substr(colon + 1);
}

bool is_chevalley_tag(const std::string& tag) {
  const auto colon = tag.find(':');
  const std::string t = colon == std::string::npos ? tag : tag.substr(colon + 1);
  for (const char* p : {"KX", "KY", "KH"})
    if (t.rfind(p, 0) == 0) return true;
  return !t.empty() && (t[0] == 'E' || t[0] == 'F' || t[0] == 'H') && t.size() > 1 && std::isdigit(t[1]);
}

}  // namespace

RepSpace outer_tensor(const RepSpace& a, const RepSpace& b) {
  RepSpace::Builder bld;
  auto& r = bld.r;
  const QMatrix ia = QMatrix::identity(a.dim());
  const QMatrix ib = QMatrix::identity(b.dim());
  r.factors_ = a.factors();
  r.factors_.insert(r.factors_.end(), b.factors().begin(), b.factors().end());
  for (const auto& fac : a.chevalley()) {
    std::vector<ChevalleyTriple> ts;
    for (const auto& t : fac) ts.push_back({kronecker(t.e, ib), kronecker(t.f, ib), kronecker(t.h, ib)});
    r.chevalley_.push_back(ts);
  }
  for (const auto& fac : b.chevalley()) {
    std::vector<ChevalleyTriple> ts;
    for (const auto& t : fac) ts.push_back({kronecker(ia, t.e), kronecker(ia, t.f), kronecker(ia, t.h)});
    r.chevalley_.push_back(ts);
  }
  for (const auto& tag : a.tags())
    if (!is_chevalley_tag(tag)) bld.extras[retag(tag, 0, a.factors().size())] = kronecker(a.element(tag).exact, ib);
  for (const auto& tag : b.tags())
    if (!is_chevalley_tag(tag))
      bld.extras[retag(tag, a.factors().size(), b.factors().size())] = kronecker(ia, b.element(tag).exact);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) {
      r.gram_.push_back(a.gram()[i] * b.gram()[k]);
      r.labels_.push_back(a.basis_labels()[i] + "|" + b.basis_labels()[k]);
      r.hw_.push_back(a.hw_exact()[i] * b.hw_exact()[k]);
    }
  r.hw_norm2_ = a.hw_norm2() * b.hw_norm2();
  return bld.build();
}

RepSpace inner_tensor(const RepSpace& a, const RepSpace& b) {
  if (a.factors().size() != b.factors().size())
    throw ConfigurationError("inner tensor product needs modules of the same algebra");
  for (std::size_t f = 0; f < a.factors().size(); ++f)
    if (!(a.factors()[f].root_system == b.factors()[f].root_system))
      throw ConfigurationError("inner tensor product needs modules of the same algebra");
  RepSpace::Builder bld;
  auto& r = bld.r;
  const QMatrix ia = QMatrix::identity(a.dim());
  const QMatrix ib = QMatrix::identity(b.dim());
  auto diag = [&](const QMatrix& x, const QMatrix& y) { return kronecker(x, ib) + kronecker(ia, y); };
  for (std::size_t f = 0; f < a.factors().size(); ++f) {
    r.factors_.push_back({a.factors()[f].root_system, a.factors()[f].highest_weight + b.factors()[f].highest_weight});
    std::vector<ChevalleyTriple> ts;
    for (std::size_t i = 0; i < a.chevalley()[f].size(); ++i) {
      const auto& x = a.chevalley()[f][i];
      const auto& y = b.chevalley()[f][i];
      ts.push_back({diag(x.e, y.e), diag(x.f, y.f), diag(x.h, y.h)});
    }
    r.chevalley_.push_back(ts);
  }
  for (const auto& tag : a.tags())
    if (!is_chevalley_tag(tag) && b.has(tag)) bld.extras[tag] = diag(a.element(tag).exact, b.element(tag).exact);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) {
      r.gram_.push_back(a.gram()[i] * b.gram()[k]);
      r.labels_.push_back(a.basis_labels()[i] + "|" + b.basis_labels()[k]);
      r.hw_.push_back(a.hw_exact()[i] * b.hw_exact()[k]);
    }
  r.hw_norm2_ = a.hw_norm2() * b.hw_norm2();
  return bld.build();
}

namespace {

CMatrix letter_matrix(const Element& e, cplx t, ActDiagnostics* diag) {
  const Eigen::Index n = e.numeric.rows();
  if (e.nilpotency > 0) {
    CMatrix out = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (int k = 1; k < e.nilpotency; ++k) {
      term = (t / static_cast<double>(k)) * (e.numeric * term);
      out += term;
    }
    return out;
  }
  const CMatrix x = t * e.numeric;
  const CMatrix out = x.exp();
  if (diag) {
    const CMatrix back = (-x).exp();
    diag->used_dense_exponential = true;
    diag->dense_tolerance =
        std::max(diag->dense_tolerance, (out * back - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace

CVector act(const RepSpace& rep, const GroupWord& word, const CVector& v, ActDiagnostics* diag) {
  if (static_cast<std::size_t>(v.size()) != rep.dim()) throw std::invalid_argument("vector dimension mismatch");
  CVector out = v;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    const Element& e = rep.element(it->first);
    if (e.nilpotency > 0) {
      CVector term = out;
      for (int k = 1; k < e.nilpotency; ++k) {
        term = (it->second / static_cast<double>(k)) * (e.numeric * term);
        out += term;
      }
    } else {
      out = letter_matrix(e, it->second, diag) * out;
    }
  }
  return out;
}

CMatrix word_matrix(const RepSpace& rep, const GroupWord& word, ActDiagnostics* diag) {
  const auto n = static_cast<Eigen::Index>(rep.dim());
  CMatrix out = CMatrix::Identity(n, n);
  for (const auto& [tag, t] : word.letters) out = out * letter_matrix(rep.element(tag), t, diag);
  return out;
}

QVector act_exact(const RepSpace& rep, const ExactGroupWord& word, const QVector& v) {
  if (v.size() != rep.dim()) throw std::invalid_argument("vector dimension mismatch");
  QVector out = v;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    const Element& e = rep.element(it->first);
    if (e.nilpotency == 0) throw DomainError("exact action needs nilpotent letters; '" + it->first + "' is not");
    QVector term = out;
    for (int k = 1; k < e.nilpotency; ++k) {
      term = mat_vec(e.exact, term);
      const GaussRational s = it->second / GaussRational(Rational(k));
      for (auto& x : term) x *= s;
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += term[j];
    }
  }
  return out;
}

namespace {

// Span of matrices kept in reduced echelon form on flattened entries.
class EchelonSpan {
public:
  explicit EchelonSpan(std::size_t n) : n_(n) {}

  bool insert(const QMatrix& m) {
    std::vector<GaussRational> v = m.data();
    reduce(v);
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const GaussRational inv = GaussRational(1) / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      if (row[p].is_zero()) continue;
      const GaussRational c = row[p];
      for (std::size_t k = 0; k < row.size(); ++k) row[k] -= c * v[k];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

  QMatrix matrix(std::size_t a) const {
    QMatrix m(n_, n_);
    for (std::size_t k = 0; k < rows_[a].size(); ++k) m(k / n_, k % n_) = rows_[a][k];
    return m;
  }

  std::vector<GaussRational> coordinates(const QMatrix& m) const {
    std::vector<GaussRational> c;
    std::vector<GaussRational> v = m.data();
    for (std::size_t a = 0; a < rows_.size(); ++a) c.push_back(v[pivots_[a]]);
    reduce(v);
    for (const auto& x : v)
      if (!x.is_zero()) throw InternalError("bracket left the generated span");
    return c;
  }

private:
  void reduce(std::vector<GaussRational>& v) const {
    for (std::size_t a = 0; a < rows_.size(); ++a) {
      const GaussRational c = v[pivots_[a]];
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!rows_[a][k].is_zero()) v[k] -= c * rows_[a][k];
    }
  }

  std::size_t n_;
  std::vector<std::vector<GaussRational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

CasimirData casimir_data(const RepSpace& rep) {
  const std::size_t n = rep.dim();
  EchelonSpan span(n);
  for (const auto& g : rep.generators()) span.insert(g);
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t s = span.size();
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = a + 1; b < s; ++b) grew |= span.insert(commutator(span.matrix(a), span.matrix(b)));
  }
  CasimirData out;
  const std::size_t dg = span.size();
  for (std::size_t a = 0; a < dg; ++a) out.basis.push_back(span.matrix(a));
  std::vector<QMatrix> ad;
  for (std::size_t a = 0; a < dg; ++a) {
    QMatrix m(dg, dg);
    for (std::size_t b = 0; b < dg; ++b) {
      const auto c = span.coordinates(commutator(out.basis[a], out.basis[b]));
      for (std::size_t k = 0; k < dg; ++k) m(k, b) = c[k];
    }
    ad.push_back(m);
  }
  out.killing = QMatrix(dg, dg);
  for (std::size_t a = 0; a < dg; ++a)
    for (std::size_t b = a; b < dg; ++b) {
      GaussRational tr(0);
      for (std::size_t i = 0; i < dg; ++i)
        for (std::size_t k = 0; k < dg; ++k) tr += ad[a](i, k) * ad[b](k, i);
      out.killing(a, b) = tr;
      out.killing(b, a) = tr;
    }
  try {
    out.killing_inverse = inverse(out.killing);
  } catch (const std::domain_error&) {
    throw InternalError("Killing form of the represented algebra is degenerate");
  }
  out.casimir = QMatrix(n, n);
  for (std::size_t a = 0; a < dg; ++a)
    for (std::size_t b = 0; b < dg; ++b)
      if (!out.killing_inverse(a, b).is_zero()) out.casimir += out.killing_inverse(a, b) * (out.basis[a] * out.basis[b]);
  return out;
}

QMatrix casimir_matrix(const RepSpace& rep) { return casimir_data(rep).casimir; }

QMatrix casimir_tensor_matrix(const RepSpace& rep) {
  const CasimirData cd = casimir_data(rep);
  const QMatrix id = QMatrix::identity(rep.dim());
  QMatrix out = kronecker(cd.casimir, id) + kronecker(id, cd.casimir);
  const GaussRational two(2);
  for (std::size_t a = 0; a < cd.basis.size(); ++a)
    for (std::size_t b = 0; b < cd.basis.size(); ++b)
      if (!cd.killing_inverse(a, b).is_zero())
        out += (two * cd.killing_inverse(a, b)) * kronecker(cd.basis[a], cd.basis[b]);
  return out;
}

Rational expected_casimir(const RepSpace& rep) {
  Rational s = 0;
  for (const auto& f : rep.factors()) s += lie::casimir_eigenvalue(f.root_system, f.highest_weight);
  return s;
}

}  // namespace flagcone::rep
