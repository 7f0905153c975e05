#include "cli.hpp"

#include "flagcone/charts.hpp"
#include "flagcone/errors.hpp"
#include "flagcone/hvcone.hpp"
#include "flagcone/liecore.hpp"
#include "flagcone/structcheck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace flagcone::cli {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigurationError("malformed complex number '" + whole + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<cplx>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(complex_json(z));
  return a;
}

std::string iso_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Shared by every subcommand that emits a document.
struct OutputOptions {
  std::string json_path;
  bool deterministic = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--json", o.json_path, "Write the JSON document to this path ('-' for stdout)");
  cmd->add_flag("--deterministic", o.deterministic, "Omit the timestamp so identical runs give identical bytes");
}

json envelope(const std::string& command, const OutputOptions& o) {
  json doc;
  doc["artifact"] = "flagcone";
  doc["artifact_version"] = kReportSchemaVersion;
  doc["tool_version"] = kToolVersion;
  if (!o.deterministic) doc["timestamp"] = iso_timestamp();
  doc["command"] = command;
  return doc;
}

std::string format_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(6) << v.get<double>();
    return s.str();
  }
  return v.dump();
}

// Text rendering of a document: one line per top-level field.
void render_plain(const json& doc, std::ostream& out) {
  for (const auto& [k, v] : doc.items()) {
    if (k == "artifact" || k == "artifact_version" || k == "tool_version" || k == "timestamp") continue;
    out << k << ": " << format_value(v) << '\n';
  }
}

void render_report(const json& doc, std::ostream& out) {
  const auto& c = doc["config"];
  out << "case " << c["case_id"].get<std::string>() << "  suite " << c["suite"].get<std::string>() << "  seed "
      << c["seed"] << "  samples " << c["samples"] << '\n';
  std::size_t width = 4;
  for (const auto& r : doc["residuals"]) width = std::max(width, r["name"].get<std::string>().size());
  for (const auto& r : doc["residuals"]) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << r["name"].get<std::string>() << std::right
        << "  max " << std::setw(11) << format_value(r["max"]) << "  mean " << std::setw(11) << format_value(r["mean"])
        << "  tol " << std::setw(7) << format_value(r["tolerance"]) << "  "
        << (r["informational"].get<bool>() ? "info" : (r["pass"].get<bool>() ? "pass" : "FAIL")) << '\n';
  }
  for (const auto& w : doc["warnings"]) out << "warning: " << w.get<std::string>() << '\n';
  out << "verdict: " << doc["verdict"].get<std::string>() << '\n';
}

void emit(const json& doc, const OutputOptions& o, std::ostream& out, void (*render)(const json&, std::ostream&)) {
  const std::string text = doc.dump(2) + "\n";
  if (o.json_path == "-") {
    out << text;
    return;
  }
  if (!o.json_path.empty()) {
    std::ofstream f(o.json_path, std::ios::binary);
    if (!f) throw ConfigurationError("cannot write '" + o.json_path + "'");
    f << text;
    if (!f) throw ConfigurationError("cannot write '" + o.json_path + "'");
  }
  render(doc, out);
}

std::vector<int> parse_theta(const std::string& text, int rank) {
  std::vector<int> theta;
  if (text.empty()) return theta;
  for (const auto& part : split(text, ',')) {
    int v = 0;
    try {
      std::size_t pos = 0;
      v = std::stoi(part, &pos);
      if (pos != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigurationError("malformed theta entry '" + part + "'");
    }
    if (v < 1 || v > rank)
      throw ConfigurationError("theta index " + part + " outside 1.." + std::to_string(rank));
    theta.push_back(v - 1);
  }
  return theta;
}

json rational_list(const std::vector<Rational>& qs) {
  json a = json::array();
  for (const auto& q : qs) a.push_back(to_string(q));
  return a;
}

json bundle_json(const std::vector<long long>& ells) {
  json a = json::array();
  for (auto l : ells) a.push_back(l);
  return a;
}

std::optional<Rational> cone_exponent_or_none(const charts::CatalogEntry& e) {
  try {
    return check::default_cone_exponent(e.chart, e.default_ells);
  } catch (const ConfigurationError&) {
    return std::nullopt;
  }
}

struct CaseOptions {
  std::string case_id;
  std::string bundle;
  std::string b;
};

void add_case_options(CLI::App* cmd, CaseOptions& o, bool with_b) {
  cmd->add_option("--case", o.case_id, "Catalog case id")->required();
  cmd->add_option("--bundle", o.bundle, "Bundle exponents, comma separated (default: the catalog bundle)");
  if (with_b) cmd->add_option("--b", o.b, "Outer exponent b as p/q");
}

charts::PotentialSpec resolve(const CaseOptions& o, charts::CatalogEntry& entry, Rational b_default) {
  entry = charts::parse_case(o.case_id);
  std::vector<long long> ells =
      o.bundle.empty() ? entry.default_ells : charts::parse_bundle(o.bundle, entry.chart.bundle_rank());
  Rational b = o.b.empty() ? b_default : parse_rational(o.b);
  if (b <= 0) throw ConfigurationError("outer exponent b must be positive");
  return charts::PotentialSpec{entry.chart, std::move(ells), b};
}

struct PointOptions {
  std::string z;
  std::string w = "1";
};

void add_point_options(CLI::App* cmd, PointOptions& p) {
  cmd->add_option("--z", p.z, "Chart coordinates, comma separated complex numbers (a+bi)");
  cmd->add_option("--w", p.w, "Fibre coordinate (default 1)");
}

std::vector<cplx> resolve_z(const PointOptions& p, int n) {
  auto z = parse_complex_list(p.z);
  if (static_cast<int>(z.size()) != n)
    throw ConfigurationError("expected " + std::to_string(n) + " chart coordinates, got " + std::to_string(z.size()));
  return z;
}

// ---- lie ----

struct LieOptions {
  std::string series;
  int rank = 0;
  std::string theta;
  OutputOptions out;
};

json cmd_lie(const LieOptions& o) {
  const auto rs = lie::RootSystem::build(lie::parse_series(o.series), o.rank);
  const auto p = lie::ParabolicChoice::make(rs.rank(), parse_theta(o.theta, rs.rank()));
  const auto flag = lie::make_flag(rs, p);
  json doc = envelope("lie", o.out);
  doc["root_system"] = rs.name();
  json theta = json::array(), comp = json::array();
  for (int i : p.theta) theta.push_back(i + 1);
  for (int i : p.complement) comp.push_back(i + 1);
  doc["theta"] = theta;
  doc["complement"] = comp;
  doc["flag"] = flag.name();
  doc["dim_complex"] = flag.dim_complex;
  doc["positive_roots"] = rs.positive_roots().size();
  json cart = json::array();
  for (const auto& row : rs.cartan_matrix()) cart.push_back(row);
  doc["cartan_matrix"] = cart;
  doc["delta_p"] = rational_list(flag.delta_p.coeffs);
  json pair = json::object();
  for (int i : p.complement) pair[std::to_string(i + 1)] = to_string(lie::pairing(rs, flag.delta_p, i));
  doc["pairings"] = pair;
  doc["fano_index"] = flag.fano_index;
  return doc;
}

// ---- catalog ----

json cmd_catalog(const OutputOptions& o) {
  json doc = envelope("catalog", o);
  json cases = json::array();
  for (const auto& id : charts::catalog_ids()) {
    const auto e = charts::parse_case(id);
    json c;
    c["id"] = id;
    c["flag"] = e.chart.flag.name();
    c["dim_complex"] = e.chart.n;
    c["default_bundle"] = bundle_json(e.default_ells);
    c["fano_index"] = e.chart.flag.fano_index();
    const auto b = cone_exponent_or_none(e);
    c["ricci_flat_b"] = b ? json(to_string(*b)) : json(nullptr);
    c["potential"] = e.eguchi_hanson ? "eguchi-hanson" : "cone";
    cases.push_back(c);
  }
  doc["cases"] = cases;
  return doc;
}

void render_catalog(const json& doc, std::ostream& out) {
  out << std::left << std::setw(16) << "id" << std::setw(26) << "flag" << std::setw(5) << "dim" << std::setw(10)
      << "bundle" << std::setw(6) << "fano" << "ricci-flat b\n";
  for (const auto& c : doc["cases"]) {
    out << std::setw(16) << c["id"].get<std::string>() << std::setw(26) << c["flag"].get<std::string>()
        << std::setw(5) << c["dim_complex"].dump() << std::setw(10) << c["default_bundle"].dump() << std::setw(6)
        << c["fano_index"].dump() << (c["ricci_flat_b"].is_null() ? "-" : c["ricci_flat_b"].get<std::string>())
        << '\n';
  }
  out << std::right;
}

// ---- potential ----

struct PotentialOptions {
  CaseOptions c;
  PointOptions p;
  OutputOptions out;
};

json cmd_potential(const PotentialOptions& o) {
  charts::CatalogEntry entry;
  const auto spec = resolve(o.c, entry, 1);
  const auto z = resolve_z(o.p, spec.chart.n);
  const cplx w = parse_complex(o.p.w);
  if (w == cplx(0)) throw DomainError("w = 0 is the cone apex");
  json doc = envelope("potential", o.out);
  doc["case_id"] = entry.id;
  doc["bundle"] = bundle_json(spec.ells);
  doc["b"] = to_string(spec.b);
  doc["z"] = complex_list_json(z);
  doc["w"] = complex_json(w);
  doc["h"] = spec.h(z);
  doc["h_representation"] = charts::generic_h(spec.chart, spec.ells, z);
  doc["k"] = spec.K(z, w);
  doc["log_k"] = spec.log_K(z, w);
  if (entry.eguchi_hanson) doc["eguchi_hanson_potential"] = hv::eguchi_hanson_potential(spec.h(z) * std::norm(w));
  return doc;
}

// ---- verify ----

struct VerifyOptions {
  CaseOptions c;
  std::string suite;
  std::uint64_t seed = 1;
  int samples = 20;
  std::optional<double> fd_step;
  std::optional<int> richardson;
  std::optional<double> tol;
  unsigned threads = 0;
  OutputOptions out;
};

json cmd_verify(const VerifyOptions& o) {
  charts::CatalogEntry entry = charts::parse_case(o.c.case_id);
  const std::vector<long long> ells =
      o.c.bundle.empty() ? entry.default_ells : charts::parse_bundle(o.c.bundle, entry.chart.bundle_rank());
  std::optional<Rational> b;
  if (!o.c.b.empty()) b = parse_rational(o.c.b);

  check::SuiteConfig cfg;
  if (o.fd_step || o.richardson) {
    geo::FDConfig fd;
    if (o.fd_step) fd.step = *o.fd_step;
    if (o.richardson) fd.richardson = *o.richardson;
    cfg.fd = fd;
  }
  if (o.tol) cfg.tol = check::Tolerances::uniform(*o.tol);
  cfg.threads = o.threads;

  const auto r = check::run_suite(o.c.case_id, ells, o.suite, b, o.seed, o.samples, cfg);

  json doc = envelope("verify", o.out);
  json c;
  c["case_id"] = entry.id;
  c["suite"] = o.suite;
  c["bundle"] = bundle_json(ells);
  c["b"] = b ? json(to_string(*b)) : json(nullptr);
  c["seed"] = o.seed;
  c["samples"] = o.samples;
  c["fd_step"] = o.fd_step ? json(*o.fd_step) : json(nullptr);
  c["richardson"] = o.richardson ? json(*o.richardson) : json(nullptr);
  c["tolerance"] = o.tol ? json(*o.tol) : json(nullptr);
  c["output"] = o.out.json_path.empty() ? json(nullptr) : json(o.out.json_path);
  doc["config"] = c;
  doc["exponent"] = r.exponent ? json(to_string(*r.exponent)) : json(nullptr);
  doc["fd"] = {{"step", r.fd.step}, {"richardson", r.fd.richardson}, {"guard_w", r.fd.guard_w}, {"min_w", r.fd.min_w}};
  json res = json::array();
  for (const auto& rec : r.residuals)
    res.push_back({{"name", rec.name},
                   {"max", rec.max},
                   {"mean", rec.mean},
                   {"tolerance", rec.tolerance},
                   {"pass", rec.pass},
                   {"informational", rec.informational}});
  doc["residuals"] = res;
  doc["warnings"] = r.warnings;
  doc["verdict"] = r.verdict() ? "pass" : "fail";
  return doc;
}

// ---- embed ----

struct EmbedOptions {
  CaseOptions c;
  std::string lambda = "0.5";
  PointOptions p;
  OutputOptions out;
};

json cmd_embed(const EmbedOptions& o) {
  charts::CatalogEntry entry;
  const auto spec = resolve(o.c, entry, 1);
  const auto z = resolve_z(o.p, spec.chart.n);
  const cplx w = parse_complex(o.p.w);
  const hv::GammaGroup gamma(parse_complex(o.lambda));
  const hv::RemmertMap map(spec.chart, spec.ells);
  const auto hp = hv::kodaira_embedding(map, gamma, z, w);
  json doc = envelope("embed", o.out);
  doc["case_id"] = entry.id;
  doc["bundle"] = bundle_json(spec.ells);
  doc["lambda"] = complex_json(gamma.lambda);
  doc["z"] = complex_list_json(z);
  doc["w"] = complex_json(w);
  doc["module_dim"] = map.rep().dim();
  doc["n"] = hp.n;
  json rep = json::array();
  for (Eigen::Index i = 0; i < hp.representative.size(); ++i) rep.push_back(complex_json(hp.representative[i]));
  doc["representative"] = rep;
  doc["k_h"] = spec.with_b(1).K(z, w);
  doc["norm2"] = map.norm2(hp.representative);
  doc["residual_kind"] = hv::to_string(map.residual_kind());
  doc["residual"] = map.residual(hp.representative);
  return doc;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ConfigurationError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, raw), 0.0};
  s.pop_back();
  // Split before the last sign that is not leading and not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, raw), parse_real(im, raw)};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  for (const auto& part : split(text, ',')) out.push_back(parse_complex(part));
  return out;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cone potentials over flag manifolds: evaluation and numerical verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  LieOptions lie;
  auto* c_lie = app.add_subcommand("lie", "Root data, delta_P, pairings and Fano index of G/P");
  c_lie->add_option("--series", lie.series, "A, B, C or D")->required();
  c_lie->add_option("--rank", lie.rank, "Rank")->required()->check(CLI::PositiveNumber);
  c_lie->add_option("--theta", lie.theta, "Simple roots kept in the Levi factor, 1-based, comma separated");
  add_output_options(c_lie, lie.out);

  OutputOptions cat;
  auto* c_cat = app.add_subcommand("catalog", "List the catalog cases");
  add_output_options(c_cat, cat);

  PotentialOptions pot;
  auto* c_pot = app.add_subcommand("potential", "Evaluate h and K at a point");
  add_case_options(c_pot, pot.c, true);
  add_point_options(c_pot, pot.p);
  add_output_options(c_pot, pot.out);

  VerifyOptions ver;
  auto* c_ver = app.add_subcommand("verify", "Run a verification suite and report residuals");
  add_case_options(c_ver, ver.c, true);
  c_ver->add_option("--suite", ver.suite, "lck, vaisman, kahler-einstein, ricci-flat, einstein-weyl or embedding")
      ->required();
  c_ver->add_option("--seed", ver.seed, "Sample seed");
  c_ver->add_option("--samples", ver.samples, "Number of samples")->check(CLI::PositiveNumber);
  c_ver->add_option("--fd-step", ver.fd_step, "Relative FD step (default depends on derivative order)")
      ->check(CLI::PositiveNumber);
  c_ver->add_option("--richardson", ver.richardson, "Richardson levels")->check(CLI::PositiveNumber);
  c_ver->add_option("--tol", ver.tol, "Replace every tolerance by this value")->check(CLI::PositiveNumber);
  c_ver->add_option("--threads", ver.threads, "Worker threads (0: hardware concurrency)");
  add_output_options(c_ver, ver.out);

  EmbedOptions emb;
  auto* c_emb = app.add_subcommand("embed", "Kodaira embedding into the Hopf manifold (V \\ 0)/<lambda>");
  add_case_options(c_emb, emb.c, false);
  c_emb->add_option("--lambda", emb.lambda, "Generator, 0 < |lambda| < 1 (default 0.5)");
  add_point_options(c_emb, emb.p);
  add_output_options(c_emb, emb.out);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigurationError;
  }

  try {
    if (c_lie->parsed()) {
      emit(cmd_lie(lie), lie.out, out, render_plain);
    } else if (c_cat->parsed()) {
      emit(cmd_catalog(cat), cat, out, render_catalog);
    } else if (c_pot->parsed()) {
      emit(cmd_potential(pot), pot.out, out, render_plain);
    } else if (c_emb->parsed()) {
      emit(cmd_embed(emb), emb.out, out, render_plain);
    } else if (c_ver->parsed()) {
      const json doc = cmd_verify(ver);
      emit(doc, ver.out, out, render_report);
      return doc["verdict"] == "pass" ? kPass : kVerificationFailure;
    }
    return kPass;
  } catch (const std::invalid_argument& e) {  // ConfigurationError and malformed literals
    err << "configuration error: " << e.what() << '\n';
    return kConfigurationError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kConfigurationError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace flagcone::cli
