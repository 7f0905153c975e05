#include "flagcone/charts.hpp"

#include "flagcone/errors.hpp"

#include <numeric>
#include <optional>
#include <sstream>

namespace flagcone::charts {

namespace {

using lie::Series;

template <typename F>
std::vector<typename detail::RealOf<F>::type> norms_impl(const Chart& c, const std::vector<F>& z) {
  using R = typename detail::RealOf<F>::type;
  if (z.size() != static_cast<std::size_t>(c.n)) throw std::invalid_argument("chart: wrong number of coordinates");
  switch (c.kind) {
    case ChartKind::Grassmann:
      return {grassmann_h(c.param1, c.param2, z)};
    case ChartKind::FullFlag: {
      const auto m = lower_unipotent(c.param1, z);
      const std::size_t N = static_cast<std::size_t>(c.param1 + 1);
      std::vector<R> out;
      for (std::size_t k = 1; k < N; ++k) out.push_back(detail::minor_sum(m, N, N, k));
      return out;
    }
    case ChartKind::Quadric:
      return {quadric_h(c.param1, z)};
    case ChartKind::Product: {
      std::vector<R> out;
      std::size_t off = 0;
      for (const auto& f : c.factors) {
        const std::vector<F> part(z.begin() + static_cast<std::ptrdiff_t>(off),
                                  z.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(f.n)));
        const auto sub = norms_impl(f, part);
        out.insert(out.end(), sub.begin(), sub.end());
        off += static_cast<std::size_t>(f.n);
      }
      return out;
    }
  }
  throw InternalError("unknown chart kind");
}

void check_ells(const Chart& c, const std::vector<long long>& ells) {
  if (ells.size() != c.bundle_rank())
    throw ConfigurationError("expected " + std::to_string(c.bundle_rank()) + " bundle exponents, got " +
                             std::to_string(ells.size()));
  for (auto l : ells)
    if (l <= 0) throw DomainError("bundle exponents must be positive (negative line bundle)");
}

// Unipotent section letters for a simple chart; parameters are the chart
// coordinates, halved on the quadric.
template <typename F>
std::vector<std::pair<std::string, F>> section_letters(const Chart& c, const std::vector<F>& z) {
  std::vector<std::pair<std::string, F>> out;
  switch (c.kind) {
    case ChartKind::Grassmann: {
      const int n = c.param1, k = c.param2;
      if (n == 1) {
        out.push_back({"F1", z[0]});
        break;
      }
      for (int i = 1; i <= n + 1 - k; ++i)
        for (int j = 1; j <= k; ++j)
          out.push_back({"e" + std::to_string(k + i) + "_" + std::to_string(j), z[static_cast<std::size_t>((i - 1) * k + (j - 1))]});
      break;
    }
    case ChartKind::FullFlag: {
      if (c.param1 == 1) {
        out.push_back({"F1", z[0]});
        break;
      }
      std::size_t idx = 0;
      for (int j = 1; j <= c.param1 + 1; ++j)
        for (int i = j + 1; i <= c.param1 + 1; ++i)
          out.push_back({"e" + std::to_string(i) + "_" + std::to_string(j), z[idx++]});
      break;
    }
    case ChartKind::Quadric:
      for (std::size_t j = 0; j < z.size(); ++j) out.push_back({"A" + std::to_string(j + 1), z[j] / F(2)});
      break;
    case ChartKind::Product: {
      std::size_t off = 0;
      for (std::size_t f = 0; f < c.factors.size(); ++f) {
        const auto& fc = c.factors[f];
        const std::vector<F> part(z.begin() + static_cast<std::ptrdiff_t>(off),
                                  z.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(fc.n)));
        for (auto& [tag, t] : section_letters(fc, part)) out.push_back({std::to_string(f + 1) + ":" + tag, t});
        off += static_cast<std::size_t>(fc.n);
      }
      break;
    }
  }
  return out;
}

// Fundamental module for each exponent slot of a simple chart.
std::vector<rep::RepSpace> fundamental_modules(const Chart& c) {
  switch (c.kind) {
    case ChartKind::Grassmann:
      if (c.param1 == 1) return {rep::sl2_module(1)};
      return {rep::wedge_module(c.param1, c.param2)};
    case ChartKind::FullFlag: {
      std::vector<rep::RepSpace> out;
      for (int k = 1; k <= c.param1; ++k)
        out.push_back(c.param1 == 1 ? rep::sl2_module(1) : rep::wedge_module(c.param1, k));
      return out;
    }
    case ChartKind::Quadric:
      return {rep::so_vector_module(c.param1)};
    case ChartKind::Product:
      break;
  }
  throw InternalError("fundamental_modules called on a product chart");
}

rep::RepSpace tensor_power(const rep::RepSpace& base, long long ell) {
  rep::RepSpace out = base;
  for (long long k = 1; k < ell; ++k) out = rep::inner_tensor(out, base);
  return out;
}

rep::RepSpace simple_chart_module(const Chart& c, const std::vector<long long>& ells) {
  if (c.kind == ChartKind::Grassmann && c.param1 == 1) return rep::sl2_module(static_cast<int>(ells[0]));
  if (c.kind == ChartKind::FullFlag && c.param1 == 1) return rep::sl2_module(static_cast<int>(ells[0]));
  const auto fund = fundamental_modules(c);
  std::optional<rep::RepSpace> out;
  for (std::size_t s = 0; s < fund.size(); ++s) {
    auto p = tensor_power(fund[s], ells[s]);
    out = out ? rep::inner_tensor(*out, p) : p;
  }
  return *out;
}

}  // namespace

std::size_t Chart::bundle_rank() const {
  switch (kind) {
    case ChartKind::Grassmann:
    case ChartKind::Quadric:
      return 1;
    case ChartKind::FullFlag:
      return static_cast<std::size_t>(param1);
    case ChartKind::Product: {
      std::size_t r = 0;
      for (const auto& f : factors) r += f.bundle_rank();
      return r;
    }
  }
  return 0;
}

std::vector<double> Chart::fundamental_norms(const std::vector<cplx>& z) const { return norms_impl(*this, z); }
std::vector<Rational> Chart::fundamental_norms(const std::vector<GaussRational>& z) const {
  return norms_impl(*this, z);
}

double Chart::h(const std::vector<long long>& ells, const std::vector<cplx>& z) const {
  check_ells(*this, ells);
  const auto norms = fundamental_norms(z);
  double out = 1.0;
  for (std::size_t s = 0; s < norms.size(); ++s) out *= std::pow(norms[s], static_cast<double>(ells[s]));
  return out;
}

Rational Chart::h(const std::vector<long long>& ells, const std::vector<GaussRational>& z) const {
  check_ells(*this, ells);
  const auto norms = fundamental_norms(z);
  Rational out = 1;
  for (std::size_t s = 0; s < norms.size(); ++s) out *= detail::ipow(norms[s], ells[s]);
  return out;
}

Chart grassmann_chart(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw ConfigurationError("grassmann chart needs 1 <= k <= n");
  Chart c;
  c.kind = ChartKind::Grassmann;
  c.param1 = n;
  c.param2 = k;
  c.n = k * (n + 1 - k);
  c.flag.factors.push_back(lie::make_flag(lie::RootSystem::build(Series::A, n), lie::ParabolicChoice::maximal(n, k - 1)));
  return c;
}

Chart fullflag_chart(int n) {
  if (n < 1) throw ConfigurationError("full flag chart needs n >= 1");
  Chart c;
  c.kind = ChartKind::FullFlag;
  c.param1 = n;
  c.n = static_cast<int>(fullflag_dim(n));
  c.flag.factors.push_back(lie::make_flag(lie::RootSystem::build(Series::A, n), lie::ParabolicChoice::make(n, {})));
  return c;
}

Chart quadric_chart(int N) {
  if (N < 5) throw ConfigurationError("quadric chart needs N >= 5");
  Chart c;
  c.kind = ChartKind::Quadric;
  c.param1 = N;
  c.n = N - 2;
  const int m = N / 2;
  c.flag.factors.push_back(
      lie::make_flag(lie::RootSystem::build(N % 2 ? Series::B : Series::D, m), lie::ParabolicChoice::maximal(m, 0)));
  return c;
}

Chart product_chart(std::vector<Chart> factors) {
  Chart c;
  c.kind = ChartKind::Product;
  for (const auto& f : factors) {
    if (f.kind == ChartKind::Product) throw ConfigurationError("nested product charts are not supported");
    c.n += f.n;
    c.flag.factors.insert(c.flag.factors.end(), f.flag.factors.begin(), f.flag.factors.end());
  }
  c.factors = std::move(factors);
  return c;
}

ChartRepresentation chart_representation(const Chart& chart, const std::vector<long long>& ells) {
  check_ells(chart, ells);
  std::optional<rep::RepSpace> module;
  if (chart.kind == ChartKind::Product) {
    std::size_t off = 0;
    for (const auto& f : chart.factors) {
      const std::vector<long long> part(ells.begin() + static_cast<std::ptrdiff_t>(off),
                                        ells.begin() + static_cast<std::ptrdiff_t>(off + f.bundle_rank()));
      auto m = simple_chart_module(f, part);
      module = module ? rep::outer_tensor(*module, m) : m;
      off += f.bundle_rank();
    }
  } else {
    module = simple_chart_module(chart, ells);
  }
  ChartRepresentation out{*module, {}, {}};
  out.word = [chart](const std::vector<cplx>& z) {
    if (z.size() != static_cast<std::size_t>(chart.n)) throw std::invalid_argument("chart: wrong number of coordinates");
    return rep::GroupWord{section_letters(chart, z)};
  };
  out.exact_word = [chart](const std::vector<GaussRational>& z) {
    if (z.size() != static_cast<std::size_t>(chart.n)) throw std::invalid_argument("chart: wrong number of coordinates");
    return rep::ExactGroupWord{section_letters(chart, z)};
  };
  return out;
}

namespace {

template <typename F, typename Eval>
void for_each_slot(const Chart& chart, const std::vector<F>& z, Eval&& eval) {
  if (z.size() != static_cast<std::size_t>(chart.n)) throw std::invalid_argument("chart: wrong number of coordinates");
  if (chart.kind != ChartKind::Product) {
    for (const auto& m : fundamental_modules(chart)) eval(m, section_letters(chart, z));
    return;
  }
  std::size_t off = 0;
  for (const auto& f : chart.factors) {
    const std::vector<F> part(z.begin() + static_cast<std::ptrdiff_t>(off),
                              z.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(f.n)));
    for (const auto& m : fundamental_modules(f)) eval(m, section_letters(f, part));
    off += static_cast<std::size_t>(f.n);
  }
}

}  // namespace

double generic_h(const Chart& chart, const std::vector<long long>& ells, const std::vector<cplx>& z) {
  check_ells(chart, ells);
  double out = 1.0;
  std::size_t slot = 0;
  for_each_slot(chart, z, [&](const rep::RepSpace& m, const auto& letters) {
    const double n2 = m.norm2(rep::act(m, rep::GroupWord{letters}, m.hw()));
    out *= std::pow(n2, static_cast<double>(ells[slot++]));
  });
  return out;
}

Rational generic_h(const Chart& chart, const std::vector<long long>& ells, const std::vector<GaussRational>& z) {
  check_ells(chart, ells);
  Rational out = 1;
  std::size_t slot = 0;
  for_each_slot(chart, z, [&](const rep::RepSpace& m, const auto& letters) {
    const Rational n2 = m.norm2(rep::act_exact(m, rep::ExactGroupWord{letters}, m.hw_exact())) / m.hw_norm2();
    out *= detail::ipow(n2, ells[slot++]);
  });
  return out;
}

double PotentialSpec::K(const std::vector<cplx>& z, cplx w) const {
  return std::pow(h(z) * std::norm(w), to_double(b));
}

double PotentialSpec::log_K(const std::vector<cplx>& z, cplx w) const {
  return to_double(b) * (std::log(h(z)) + std::log(std::norm(w)));
}

double PotentialSpec::K_real(const Eigen::VectorXd& x) const {
  std::vector<cplx> z;
  cplx w;
  split_real(x, z, w);
  return K(z, w);
}

double PotentialSpec::log_K_real(const Eigen::VectorXd& x) const {
  std::vector<cplx> z;
  cplx w;
  split_real(x, z, w);
  return log_K(z, w);
}

PotentialSpec PotentialSpec::with_b(const Rational& nb) const {
  PotentialSpec out = *this;
  out.b = nb;
  return out;
}

void split_real(const Eigen::VectorXd& x, std::vector<cplx>& z, cplx& w) {
  const Eigen::Index m = x.size() / 2 - 1;
  z.resize(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) z[static_cast<std::size_t>(j)] = cplx(x[2 * j], x[2 * j + 1]);
  w = cplx(x[2 * m], x[2 * m + 1]);
}

Eigen::VectorXd join_real(const std::vector<cplx>& z, cplx w) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(2 * z.size() + 2));
  for (std::size_t j = 0; j < z.size(); ++j) {
    x[static_cast<Eigen::Index>(2 * j)] = z[j].real();
    x[static_cast<Eigen::Index>(2 * j + 1)] = z[j].imag();
  }
  x[x.size() - 2] = w.real();
  x[x.size() - 1] = w.imag();
  return x;
}

Rational dhomothetic_constant(const lie::FlagProduct& flag, const Rational& ell_ord) {
  return ell_ord * Rational(flag.fano_index()) / Rational(flag.dim_complex() + 1);
}

Rational ricci_flat_exponent(const lie::FlagProduct& flag, const Rational& ell) {
  if (ell <= 0) throw DomainError("canonical root order must be positive");
  return Rational(flag.fano_index()) / (ell * Rational(flag.dim_complex() + 1));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

int parse_int(const std::string& s, const std::string& id) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigurationError("malformed case id '" + id + "'");
  }
}

}  // namespace

CatalogEntry parse_case(const std::string& id) {
  CatalogEntry e;
  e.id = id;
  const auto parts = split(id, ':');
  auto ones = [](const Chart& c) { return std::vector<long long>(c.bundle_rank(), 1); };
  if (id == "gr24") {
    e.chart = grassmann_chart(3, 2);
  } else if (id == "wallach") {
    e.chart = fullflag_chart(2);
  } else if (id == "conifold") {
    e.chart = product_chart({grassmann_chart(1, 1), grassmann_chart(1, 1)});
  } else if (id == "eguchi-hanson") {
    e.chart = grassmann_chart(1, 1);
    e.default_ells = {2};
    e.eguchi_hanson = true;
    return e;
  } else if (parts.size() == 2 && parts[0] == "cp") {
    e.chart = grassmann_chart(parse_int(parts[1], id), 1);
  } else if (parts.size() == 2 && parts[0] == "hopf" && parts[1].rfind("cp", 0) == 0) {
    e.chart = grassmann_chart(parse_int(parts[1].substr(2), id), 1);
  } else if (parts.size() == 3 && parts[0] == "grassmann") {
    e.chart = grassmann_chart(parse_int(parts[1], id), parse_int(parts[2], id));
  } else if (parts.size() == 3 && parts[0] == "fullflag" && (parts[1] == "A" || parts[1] == "a")) {
    e.chart = fullflag_chart(parse_int(parts[2], id));
  } else if (parts.size() == 2 && parts[0] == "quadric") {
    e.chart = quadric_chart(parse_int(parts[1], id));
  } else {
    throw ConfigurationError("unknown case id '" + id + "'");
  }
  e.default_ells = ones(e.chart);
  return e;
}

std::vector<std::string> catalog_ids() {
  return {"cp:1",      "cp:2",          "hopf:cp1",  "hopf:cp2", "gr24",    "grassmann:4:2", "fullflag:A:2",
          "wallach",   "fullflag:A:3",  "quadric:5", "quadric:6", "quadric:8", "conifold",      "eguchi-hanson"};
}

std::vector<long long> parse_bundle(const std::string& text, std::size_t expected) {
  std::vector<long long> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(part, &pos));
      if (pos != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigurationError("malformed bundle exponent list '" + text + "'");
    }
  }
  if (out.size() != expected)
    throw ConfigurationError("expected " + std::to_string(expected) + " bundle exponents, got " +
                             std::to_string(out.size()));
  for (auto l : out)
    if (l <= 0) throw ConfigurationError("bundle exponents must be positive");
  return out;
}

}  // namespace flagcone::charts
