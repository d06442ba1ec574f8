#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace oscx {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Oscx(std::vector<std::string> args) {
  args.insert(args.begin(), "oscx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("OSCX_FORMAT"); }
  void TearDown() override { unsetenv("OSCX_FORMAT"); }
};

TEST_F(CliTest, ShiftedOscillatorJson) {
  const Result r = Oscx({"complexity", "--metric", "1,-1,2", "--shifted-oscillator", "--lam2-over-omega4", "10",
                        "--omega-t", "10", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["C"].get<double>(), 26.391, 1e-3);
  EXPECT_NEAR(j["nu_tilde"].get<double>(), -4.621, 1e-3);
  EXPECT_GT(j["certified_bound"].get<double>(), j["C"].get<double>());
  int winners = 0;
  for (const auto& c : j["candidates"]) winners += c["winner"].get<bool>();
  EXPECT_EQ(winners, 1);
}

TEST_F(CliTest, DisplacementAndIdentity) {
  const json d = json::parse(Oscx({"complexity", "--metric", "1,0,2", "--displacement", "3,4", "--format", "json"}).out);
  EXPECT_NEAR(d["C"].get<double>(), 5.0, 1e-12);
  const json id = json::parse(Oscx({"complexity", "--target", "0,0,0,0", "--format", "json"}).out);
  EXPECT_EQ(id["C"].get<double>(), 0.0);
}

TEST_F(CliTest, CsvAgreesWithJson) {
  const std::vector<std::string> base{"complexity", "--metric", "1,-1,2", "--target", "0.3,-0.8,1.2,-0.5"};
  auto json_args = base, csv_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const json j = json::parse(Oscx(json_args).out);
  const auto rows = ParseCsv(Oscx(csv_args).out);
  ASSERT_EQ(rows.size(), j["candidates"].size() + 1);
  EXPECT_EQ(rows[0][0], "kind");
  EXPECT_EQ(rows[0][3], "length");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = j["candidates"][i - 1];
    EXPECT_EQ(rows[i][0], c["kind"].get<std::string>());
    EXPECT_EQ(std::stod(rows[i][1]), c["nu_tilde"].get<double>());
    EXPECT_EQ(std::stod(rows[i][3]), c["length"].get<double>());
  }
}

TEST_F(CliTest, TextOutputMentionsC) {
  const Result r = Oscx({"complexity", "--target", "1,0.5,0.3,0.2"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("C = "), std::string::npos);
}

TEST_F(CliTest, QuotientSawtooth) {
  const json j = json::parse(Oscx({"complexity", "--metric", "1,0,2", "--oscillator-evolution", "--omega-t", "11",
                                  "--h", "0", "--rational", "1,2", "--quotient", "--format", "json"})
                                 .out);
  EXPECT_NEAR(j["C"].get<double>(), std::sqrt(2.0) * (4.0 * M_PI - 11.0), 1e-8);
  EXPECT_EQ(j["kernel_shift"]["alpha"].get<long>(), 1);
}

TEST_F(CliTest, InvalidInputExitsTwo) {
  EXPECT_EQ(Oscx({"complexity", "--metric", "1,2,1", "--target", "0,0,1,0"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"complexity"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"complexity", "--target", "0,0,1,0", "--displacement", "1,1"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"complexity", "--target", "0,0,1"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"verify", "--trials", "0"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"complexity", "--format", "xml", "--target", "0,0,1,0"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"nonsense"}).code, kInvalidInput);
  EXPECT_EQ(Oscx({"complexity", "--oscillator-evolution", "--omega-t", "1", "--rational", "1,2", "--h", "0.1"}).code,
            kInvalidInput);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(Oscx({"--help"}).code, kOk); }

TEST_F(CliTest, WindowCapFailureExitsOne) {
  const Result r = Oscx({"complexity", "--metric", "1,-1,2", "--shifted-oscillator", "--lam2-over-omega4", "50",
                        "--omega-t", "50", "--window-cap", "1"});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("not certified"), std::string::npos);
}

TEST_F(CliTest, ConfigFileAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "oscx_cli_test.ini";
  {
    std::ofstream f(path);
    f << "metric=1,-1,2\nshifted-oscillator=true\nlam2-over-omega4=50\nomega-t=1\nformat=json\n";
  }
  const Result r = Oscx({"complexity", "--config", path.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["C"].get<double>(), 7.2111, 1e-4);

  // command line beats the file
  const Result csv = Oscx({"complexity", "--config", path.string(), "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("kind,", 0), 0u);
  std::filesystem::remove(path);

  setenv("OSCX_FORMAT", "csv", 1);
  EXPECT_EQ(Oscx({"complexity", "--target", "0,0,1,0"}).out.rfind("kind,", 0), 0u);
  EXPECT_EQ(Oscx({"complexity", "--target", "0,0,1,0", "--format", "json"}).out.rfind("{", 0), 0u);
}

TEST_F(CliTest, PlotFIsOddWithMarkers) {
  const Result r = Oscx({"plot-f", "--delta", "0.45", "--nu-min", "-20", "--nu-max", "20", "--samples", "401"});
  ASSERT_EQ(r.code, kOk);
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"kind", "nu", "f", "asymptote"}));
  std::vector<std::pair<double, double>> samples;
  int maxima = 0, minima = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == "sample") samples.emplace_back(std::stod(rows[i][1]), std::stod(rows[i][2]));
    maxima += rows[i][0] == "branch_max";
    minima += rows[i][0] == "branch_min";
  }
  EXPECT_EQ(maxima, minima);
  EXPECT_GE(maxima, 3);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [x, f] = samples[i];
    const auto& [mx, mf] = samples[samples.size() - 1 - i];
    EXPECT_NEAR(x, -mx, 1e-12);
    EXPECT_NEAR(f, -mf, 1e-9 * (1.0 + std::abs(f)));
  }
  EXPECT_EQ(Oscx({"plot-f", "--nu-min", "1", "--nu-max", "0"}).code, kInvalidInput);
}

TEST_F(CliTest, ReproducePasses) {
  const Result r = Oscx({"reproduce", "--format", "json"});
  EXPECT_EQ(r.code, kOk) << r.out;
  const json j = json::parse(r.out);
  EXPECT_GT(j["checks"].size(), 20u);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST_F(CliTest, VerifyIsDeterministic) {
  const Result a = Oscx({"verify", "--trials", "5", "--seed", "3", "--format", "csv"});
  const Result b = Oscx({"verify", "--trials", "5", "--seed", "3", "--format", "csv"});
  EXPECT_EQ(a.code, kOk) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("name,computed,expected,tolerance,relation,pass\n", 0), 0u);
}

}  // namespace
}  // namespace oscx
