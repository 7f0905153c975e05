#include "cli.hpp"
#include "doctest.h"
#include "flagcone/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using flagcone::ConfigurationError;
using nlohmann::json;
namespace cli = flagcone::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--json");
  args.push_back("-");
  const Run r = run(std::move(args));
  REQUIRE(r.code == expected_code);
  return json::parse(r.out);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(cli::parse_complex("0.3") == std::complex<double>(0.3, 0));
  CHECK(cli::parse_complex("0.3+0.2i") == std::complex<double>(0.3, 0.2));
  CHECK(cli::parse_complex(" -1e-2 - 2i") == std::complex<double>(-0.01, -2));
  CHECK(cli::parse_complex("1e+1-1e-1i") == std::complex<double>(10, -0.1));
  CHECK(cli::parse_complex("-i") == std::complex<double>(0, -1));
  CHECK(cli::parse_complex("2.5j") == std::complex<double>(0, 2.5));
  CHECK_THROWS_AS(cli::parse_complex("1+"), ConfigurationError);
  CHECK_THROWS_AS(cli::parse_complex("abc"), ConfigurationError);
  CHECK_THROWS_AS(cli::parse_complex(""), ConfigurationError);
  CHECK(cli::parse_complex_list("").empty());
  CHECK(cli::parse_complex_list("1,2i,3-i").size() == 3);
  CHECK_THROWS_AS(cli::parse_complex_list("1,,2"), ConfigurationError);
}

TEST_CASE("lie subcommand") {
  const json gr = run_json({"lie", "--series", "A", "--rank", "3", "--theta", "1,3"});
  CHECK(gr["fano_index"] == 4);
  CHECK(gr["dim_complex"] == 4);
  CHECK(gr["complement"] == json::array({2}));
  CHECK(gr["delta_p"] == json::array({"0", "4", "0"}));
  CHECK(run_json({"lie", "--series", "A", "--rank", "2", "--theta", ""})["fano_index"] == 2);
  CHECK(run_json({"lie", "--series", "D", "--rank", "4", "--theta", "2,3,4"})["fano_index"] == 6);

  for (const auto& theta : {"0", "4", "1,x", "1,2,3"}) {
    const Run r = run({"lie", "--series", "A", "--rank", "3", "--theta", theta});
    CAPTURE(theta);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }
  CHECK(run({"lie", "--series", "E", "--rank", "6"}).code == 2);
  CHECK(run({"lie", "--series", "A"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("catalog and potential") {
  const json cat = run_json({"catalog"});
  CHECK(cat["cases"].size() == 14);
  CHECK(cat["cases"][4]["id"] == "gr24");
  CHECK(cat["cases"][4]["ricci_flat_b"] == "4/5");
  CHECK(run({"catalog"}).out.find("conifold") != std::string::npos);

  // gr24 at Z = [[1, 0], [0, 1]]: 1 + |Z|^2 + |det Z|^2 = 1 + 2 + 1.
  const json p = run_json({"potential", "--case", "gr24", "--z", "1,0,0,1", "--w", "2i", "--b", "1/2"});
  CHECK(p["h"].get<double>() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p["h_representation"].get<double>() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p["k"].get<double>() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p["b"] == "1/2");
  CHECK(run({"potential", "--case", "gr24", "--z", "1,2"}).code == 2);
  CHECK(run({"potential", "--case", "cp:1", "--z", "1", "--w", "0"}).code == 2);
  CHECK(run({"potential", "--case", "cp:1", "--z", "1", "--b", "-1"}).code == 2);
  CHECK(run({"potential", "--case", "conifold", "--z", "1,1", "--bundle", "1"}).code == 2);
}

TEST_CASE("verify exit codes") {
  const json pass = run_json({"verify", "--case", "hopf:cp1", "--suite", "vaisman", "--seed", "7"});
  CHECK(pass["verdict"] == "pass");
  CHECK(pass["config"]["seed"] == 7);
  CHECK(pass["config"]["samples"] == 20);
  CHECK(pass.contains("timestamp"));
  for (const auto& r : pass["residuals"]) CHECK(r["pass"] == true);

  const json fail = run_json({"verify", "--case", "conifold", "--suite", "einstein-weyl", "--b", "1", "--samples", "3"}, 1);
  CHECK(fail["verdict"] == "fail");
  CHECK(fail["exponent"] == "1");

  CHECK(run({"verify", "--case", "conifold", "--suite", "einstein-weyl", "--samples", "2"}).code == 0);
  CHECK(run({"verify", "--case", "nope", "--suite", "lck"}).code == 2);
  CHECK(run({"verify", "--case", "gr24", "--suite", "nope"}).code == 2);
  CHECK(run({"verify", "--case", "gr24", "--suite", "lck", "--samples", "0"}).code == 2);
  CHECK(run({"verify", "--case", "gr24", "--suite", "lck", "--fd-step", "-1"}).code == 2);
  CHECK(run({"verify", "--case", "gr24", "--suite", "lck", "--b", "x"}).code == 2);
  CHECK(run({"verify", "--case", "wallach", "--suite", "ricci-flat", "--bundle", "1,2"}).code == 2);

  // Overrides are echoed and applied.
  const json o = run_json({"verify", "--case", "hopf:cp1", "--suite", "lck", "--samples", "2", "--fd-step", "0.02",
                           "--richardson", "1", "--tol", "1e-30"},
                          1);
  CHECK(o["fd"]["step"] == 0.02);
  CHECK(o["fd"]["richardson"] == 1);
  CHECK(o["config"]["tolerance"] == 1e-30);
  for (const auto& r : o["residuals"]) CHECK(r["tolerance"] == 1e-30);
}

TEST_CASE("deterministic reports are byte identical") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "flagcone_cli_a.json", b = dir / "flagcone_cli_b.json";
  const std::vector<std::string> base = {"verify", "--case", "gr24", "--suite", "lck", "--samples", "3",
                                         "--seed", "11", "--deterministic", "--json"};
  auto args_a = base, args_b = base;
  args_a.push_back(a.string());
  args_b.push_back(b.string());
  args_b.push_back("--threads");
  args_b.push_back("2");
  REQUIRE(run(args_a).code == 0);
  REQUIRE(run(args_b).code == 0);
  const std::string ja = slurp(a), jb = slurp(b);
  CHECK_FALSE(ja.empty());
  // The output path is part of the echoed config, so compare with it masked.
  json da = json::parse(ja), db = json::parse(jb);
  CHECK_FALSE(da.contains("timestamp"));
  da["config"]["output"] = db["config"]["output"] = nullptr;
  CHECK(da.dump() == db.dump());

  auto again = args_a;
  REQUIRE(run(again).code == 0);
  CHECK(slurp(a) == ja);
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  CHECK(run({"verify", "--case", "gr24", "--suite", "lck", "--samples", "1", "--json", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("embed") {
  const json e = run_json({"embed", "--case", "gr24", "--lambda", "0.5", "--z", "0.3+0.1i,0.2,-0.5i,1", "--w", "7"});
  CHECK(e["residual_kind"] == "plucker");
  CHECK(e["residual"].get<double>() < 1e-12);
  // |lambda| < |representative| <= 1 in the fundamental annulus.
  const double n2 = e["norm2"].get<double>();
  CHECK(n2 <= 1.0);
  CHECK(n2 > 0.25);
  CHECK(e["n"] == 4);
  CHECK(run({"embed", "--case", "gr24", "--lambda", "1.5", "--z", "0,0,0,0"}).code == 2);
  CHECK(run({"embed", "--case", "gr24", "--lambda", "0.3+0.2i", "--z", "0,0,0,0", "--w", "0"}).code == 2);
  const json c = run_json({"embed", "--case", "conifold", "--lambda", "0.3+0.2i", "--z", "1,i", "--w", "0.01"});
  CHECK(c["residual_kind"] == "determinant");
  CHECK(c["residual"].get<double>() < 1e-12);
}
