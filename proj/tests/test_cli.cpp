#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using wsnlink::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wsnlink");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "wsnlink_cli_test" / name;
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

/// SNR of the first row of a response CSV at or above 0.9.
double crossing(const fs::path& csv) {
  const auto ls = lines(slurp(csv));
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    if (std::stod(ls[i].substr(comma + 1)) >= 0.9) return std::stod(ls[i].substr(0, comma));
  }
  return NAN;
}

}  // namespace

TEST(CliResponse, WritesOneCsvPerModulation) {
  const fs::path dir = fresh_dir("response");
  const auto r = invoke({"response", "--mod", "ncfsk,cfsk", "--frame", "50", "--snr-min", "0",
                         "--snr-max", "30", "--step", "0.1", "--out-dir", dir.string(), "--svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"response_ncfsk_f50.csv", "response_cfsk_f50.csv", "response.svg"})
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  const auto ls = lines(slurp(dir / "response_ncfsk_f50.csv"));
  ASSERT_EQ(ls.size(), 302u);
  EXPECT_EQ(ls.front(), "snr_db,prr");
  EXPECT_NE(slurp(dir / "response.svg").find("<polyline"), std::string::npos);
}

TEST(CliResponse, FrameSweepShiftsRight) {
  const fs::path dir = fresh_dir("frames");
  ASSERT_EQ(invoke({"response", "--mod", "bpsk", "--frame", "25,50,100", "--step", "0.01",
                    "--out-dir", dir.string()})
                .code,
            0);
  const double c25 = crossing(dir / "response_bpsk_f25.csv");
  const double c50 = crossing(dir / "response_bpsk_f50.csv");
  const double c100 = crossing(dir / "response_bpsk_f100.csv");
  EXPECT_LT(c25, c50);
  EXPECT_LT(c50, c100);
}

TEST(CliResponse, FlagErrorsExitTwo) {
  EXPECT_EQ(invoke({"response", "--mod", "", "--out-dir", fresh_dir("e1").string()}).code, 2);
  EXPECT_EQ(invoke({"response", "--out-dir", fresh_dir("e2").string()}).code, 2);
  EXPECT_EQ(invoke({"response", "--mod", "qam"}).code, 2);
  EXPECT_EQ(invoke({"response", "--mod", "bpsk", "--snr-min", "5", "--snr-max", "1"}).code, 2);
  EXPECT_EQ(invoke({"response", "--mod", "bpsk", "--step", "-1"}).code, 2);
  EXPECT_EQ(invoke({"response", "--mod", "bpsk", "--frame", "0"}).code, 2);
  EXPECT_EQ(invoke({"response", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  const auto r = invoke({"response", "--mod", ""});
  EXPECT_NE(r.err.find("--mod"), std::string::npos);
}

TEST(CliCurve, DistanceCsv) {
  const fs::path dir = fresh_dir("curve");
  ASSERT_EQ(invoke({"curve", "--radio", "mica2", "--d-min", "1", "--d-max", "50", "--d-step", "1",
                    "--out-dir", dir.string()})
                .code,
            0);
  const auto ls = lines(slurp(dir / "curve_mica2_ncfsk_f50.csv"));
  ASSERT_EQ(ls.size(), 51u);
  EXPECT_EQ(ls.front(), "distance_m,prr");
  EXPECT_EQ(invoke({"curve", "--radio", "mica3"}).code, 2);
  EXPECT_EQ(invoke({"curve", "--d-min", "0"}).code, 2);
}

TEST(CliRegions, Mica2ReportAndCsv) {
  const fs::path dir = fresh_dir("regions");
  const auto r = invoke({"regions", "--radio", "mica2", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("deterministic: connected 0-11.3"), std::string::npos) << r.out;
  const auto ls = lines(slurp(dir / "regions_mica2_ncfsk_f50.csv"));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "radio,modulation,frame_bytes,view,d_connected_end_m,d_transitional_end_m");
  EXPECT_EQ(ls[1].rfind("mica2,ncfsk,50,deterministic,11.3", 0), 0u) << ls[1];
}

TEST(CliRegions, UnboundedRegionExitsThree) {
  const fs::path dir = fresh_dir("unbounded");
  fs::create_directories(dir);
  const fs::path radio = dir / "loud.json";
  std::ofstream(radio) << R"({"name": "loud", "pt_dbm": 300.0, "pn_dbm": -104.0, "modulation": "bpsk", "frame_bytes": 50, "preamble_bytes": 2})";
  EXPECT_EQ(invoke({"regions", "--radio", radio.string(), "--out-dir", dir.string()}).code, 3);
}

TEST(CliRegions, BadConfigExitsTwo) {
  const fs::path dir = fresh_dir("badcfg");
  fs::create_directories(dir);
  const fs::path ch = dir / "ch.json";
  std::ofstream(ch) << R"({"d0_m": 1.0, "pl_d0_db": 55.0, "n": 4.0, "sigma_db": -1.0})";
  EXPECT_EQ(invoke({"regions", "--channel", ch.string(), "--out-dir", dir.string()}).code, 2);
  EXPECT_EQ(invoke({"regions", "--confidence", "1.5", "--out-dir", dir.string()}).code, 2);
}

TEST(CliCompare, TinyNodeBeatsMica2) {
  const fs::path dir = fresh_dir("compare_radios");
  const auto r = invoke({"compare", "--radios", "mica2,tinynode", "--out-dir", dir.string(), "--svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(slurp(dir / "compare_regions.csv"));
  ASSERT_EQ(ls.size(), 3u);
  auto connected = [](const std::string& row) {
    std::vector<std::string> f;
    std::istringstream in(row);
    for (std::string c; std::getline(in, c, ',');) f.push_back(c);
    return std::stod(f.at(4));
  };
  EXPECT_GT(connected(ls[2]), connected(ls[1]));
  EXPECT_EQ(lines(slurp(dir / "compare.csv")).front(),
            "distance_m,mica2_ncfsk_f50,tinynode_ncfsk_f50");
  EXPECT_TRUE(fs::exists(dir / "compare.svg"));
}

TEST(CliCompare, BpskBeatsDpsk) {
  const fs::path dir = fresh_dir("compare_mods");
  ASSERT_EQ(invoke({"compare", "--mods", "bpsk,dpsk", "--frame", "50", "--out-dir", dir.string()}).code,
            0);
  const auto ls = lines(slurp(dir / "compare_regions.csv"));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[1].rfind("mica2,bpsk", 0), 0u);
  const double bpsk = std::stod(ls[1].substr(ls[1].find("deterministic,") + 14));
  const double dpsk = std::stod(ls[2].substr(ls[2].find("deterministic,") + 14));
  EXPECT_GE(bpsk, dpsk);
}

TEST(CliCompare, NeedsTwoEntries) {
  EXPECT_EQ(invoke({"compare", "--radios", "mica2"}).code, 2);
  EXPECT_EQ(invoke({"compare", "--mods", "bpsk"}).code, 2);
  EXPECT_EQ(invoke({"compare", "--radios", "mica2,tinynode", "--mods", "bpsk,dpsk"}).code, 2);
}

TEST(CliSimulate, WithinBinomialBandAndByteStable) {
  const fs::path a = fresh_dir("sim_a"), b = fresh_dir("sim_b");
  const std::vector<std::string> base{"simulate", "--mod", "ncfsk", "--snr-db", "11.79", "--frame",
                                      "50", "--trials", "100000", "--seed", "42"};
  auto with_dir = [&](const fs::path& d) {
    auto v = base;
    v.push_back("--out-dir");
    v.push_back(d.string());
    return v;
  };
  ASSERT_EQ(invoke(with_dir(a)).code, 0);
  ASSERT_EQ(invoke(with_dir(b)).code, 0);
  const std::string text = slurp(a / "simulate_ncfsk_f50.csv");
  EXPECT_EQ(text, slurp(b / "simulate_ncfsk_f50.csv"));
  const auto ls = lines(text);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "trials,successes,empirical_prr,seed");
  const double p = std::stod(ls[1].substr(ls[1].find(',', ls[1].find(',') + 1) + 1));
  EXPECT_NEAR(p, 0.9, 0.0038 + 1e-4);  // 11.79 dB is 1e-4 above the exact crossing
}

TEST(CliSimulate, SeedIsRequired) {
  EXPECT_EQ(invoke({"simulate", "--mod", "ncfsk", "--snr-db", "11.79"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--mod", "ncfsk", "--snr-db", "11.79", "--seed", "1", "--trials", "0"}).code,
            2);
}

TEST(CliEnsemble, ShadowingSpansTheTransition) {
  const fs::path dir = fresh_dir("ensemble");
  const auto r = invoke({"ensemble", "--radio", "mica2", "--distance", "11.4", "--draws", "10000",
                         "--seed", "7", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(slurp(dir / "ensemble_mica2_ncfsk_f50.csv"));
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "distance_m,mean_prr,std_prr,p05,p25,p50,p75,p95");
  std::vector<double> f;
  std::istringstream in(ls[1]);
  for (std::string c; std::getline(in, c, ',');) f.push_back(std::stod(c));
  ASSERT_EQ(f.size(), 8u);
  EXPECT_LT(f[3], 0.01);
  EXPECT_GT(f[7], 0.99);
  EXPECT_EQ(invoke({"ensemble", "--radio", "mica2", "--distance", "11.4"}).code, 2);
}
