#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "natanzon/cli.hpp"

using namespace natanzon;
using nlohmann::json;

namespace {

const std::string kF1 = R"({"f":8,"h0":0,"h1":-1,"a":0,"c0":0,"c1":1})";
const std::string kF3 = R"({"f":40,"h0":0,"h1":-1,"a":1,"c0":0,"c1":2})";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<double> energies(const json& list, const char* key) {
  std::vector<double> e;
  for (const auto& item : list) e.push_back(item.at(key).get<double>());
  return e;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("spectrum of the constructed family") {
    const auto r = invoke({"spectrum", "--params", kF1});
    REQUIRE(r.code == cli::ok);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["levels"].size() == 1);
    CHECK(doc["levels"][0]["nu"] == 0);
    CHECK(doc["levels"][0]["E"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  }

  TEST_CASE("validation failure exit code") {
    const auto r = invoke({"validate", "--params", R"({"f":0,"h0":0,"h1":-1,"a":0,"c0":0,"c1":-1})"});
    CHECK(r.code == cli::validation_failure);
    CHECK(r.err.find("c1 must be positive") != std::string::npos);
    CHECK(invoke({"validate", "--params", kF1}).code == cli::ok);
    CHECK(invoke({"validate", "--scattering", "--params", R"({"f":8,"h0":0,"h1":0,"a":0,"c0":0,"c1":1})"}).code ==
          cli::validation_failure);
    CHECK(invoke({"smatrix", "--params", R"({"f":8,"h0":0,"h1":0,"a":0,"c0":0,"c1":1})"}).code ==
          cli::validation_failure);
  }

  TEST_CASE("poles and spectrum agree") {
    const auto poles = invoke({"poles", "--params", kF3});
    const auto spectrum = invoke({"spectrum", "--params", kF3});
    REQUIRE(poles.code == cli::ok);
    REQUIRE(spectrum.code == cli::ok);
    const auto pe = energies(json::parse(poles.out)["poles"], "E");
    const auto se = energies(json::parse(spectrum.out)["levels"], "E");
    REQUIRE(pe.size() == 3);
    REQUIRE(pe.size() == se.size());
    for (std::size_t i = 0; i < pe.size(); ++i) CHECK(std::abs(pe[i] - se[i]) <= 1e-10 * std::abs(se[i]));
  }

  TEST_CASE("usage errors") {
    CHECK(invoke({}).code == cli::usage_error);
    CHECK(invoke({"frobnicate"}).code == cli::usage_error);
    CHECK(invoke({"spectrum"}).code == cli::usage_error);
    CHECK(invoke({"spectrum", "--params", R"({"f":8,"h0":0,"h1":-1,"a":0,"c0":0,"c1":1,"x":2})"}).code ==
          cli::usage_error);
    CHECK(invoke({"spectrum", "--params", R"({"f":8})"}).code == cli::usage_error);
    CHECK(invoke({"spectrum", "--params", "not json"}).code == cli::usage_error);
    CHECK(invoke({"map", "--params", kF1, "--grid", "1:0:10"}).code == cli::usage_error);
    CHECK(invoke({"map", "--params", kF1, "--grid", "0:1:1"}).code == cli::usage_error);
    CHECK(invoke({"smatrix", "--params", kF1, "--mode", "sideways"}).code == cli::usage_error);
    CHECK(invoke({"spectrum", "--params", kF1, "--format", "xml"}).code == cli::usage_error);
    CHECK(invoke({"validate", "--params", kF1, "--format", "csv"}).code == cli::usage_error);
  }

  TEST_CASE("grid parsing") {
    const auto g = cli::parse_grid("0.5:2.5:5");
    CHECK(g.count == 5);
    const auto pts = g.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.5);
    CHECK(pts.back() == 2.5);
    CHECK(pts[1] == 1.0);
    CHECK_THROWS_AS(cli::parse_grid("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_grid("1:2:x"), std::invalid_argument);
  }

  TEST_CASE("params from a file") {
    const auto path = std::filesystem::temp_directory_path() / "natanzon_cli_params.json";
    std::ofstream(path) << kF1;
    const auto r = invoke({"spectrum", "--params", "@" + path.string()});
    CHECK(r.code == cli::ok);
    CHECK(cli::parse_params("@" + path.string()).f == 8.0);
    std::filesystem::remove(path);
    CHECK(invoke({"spectrum", "--params", "@/nonexistent/params.json"}).code == cli::usage_error);
  }

  TEST_CASE("csv output with header and 17 digits") {
    const auto r = invoke({"smatrix", "--params", kF3, "--grid", "0.1:1:4", "--format", "csv"});
    REQUIRE(r.code == cli::ok);
    std::istringstream lines(r.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "k,m_used,re_S,im_S,phase");
    CHECK(first.rfind("0.10000000000000001,", 0) == 0);
    int rows = 1;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 4);
  }

  TEST_CASE("determinism and JSON round trip") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"map", "--params", kF3}, {"potential", "--params", kF3},
          {"smatrix", "--params", kF3, "--mode", "fixed:0.5"}, {"poles", "--params", kF3},
          {"algebra-check", "--params", kF3}}) {
      const auto a = invoke(args);
      const auto b = invoke(args);
      REQUIRE(a.code == cli::ok);
      CHECK(a.out == b.out);
      const auto doc = json::parse(a.out);
      CHECK(doc.contains("params"));
      // Reading the echoed params back reproduces the input.
      CHECK(cli::parse_params(doc["params"].dump()).c1 == 2.0);
    }
  }

  TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "natanzon_cli_out.csv";
    CHECK(invoke({"spectrum", "--params", kF1, "--format", "csv", "--out", path.string()}).code == cli::ok);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "nu,E,alpha,beta,delta,m,p,q");
    std::filesystem::remove(path);
  }

  TEST_CASE("oracle-compare and algebra-check reports") {
    const auto oracle = invoke({"oracle-compare", "--params", kF1});
    REQUIRE(oracle.code == cli::ok);
    const auto doc = json::parse(oracle.out);
    CHECK(doc["level_count_match"] == true);
    CHECK(doc["max_abs_difference"].get<double>() < 1e-6);
    CHECK(invoke({"oracle-compare", "--params", R"({"f":5,"h0":1,"h1":-1,"a":0.5,"c0":1,"c1":3})"}).code ==
          cli::validation_failure);
    CHECK(invoke({"oracle-compare", "--params", kF1, "--tolerance", "1e-15"}).code == cli::numerical_diagnostic);

    const auto algebra = json::parse(invoke({"algebra-check", "--params", kF3}).out);
    CHECK(algebra["so21"]["casimir_convention"].is_string());
    CHECK(algebra["connection"]["residual"].get<double>() < 1e-7);
  }
}
