#include <gtest/gtest.h>

#include <filesystem>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wlocc/figures.hpp"
#include "wlocc/protocol_json.hpp"
#include "wlocc/protocols.hpp"

using namespace wlocc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("wlocc_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(ProtocolJson, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto p = oracle::random_protocol(w_state(), 3, t % 2 == 0, rng);
    const auto back = protocol_from_json(protocol_to_json(p));
    EXPECT_EQ(back, p);
    EXPECT_EQ(protocol_to_json(back), protocol_to_json(p));
  }
  const auto t1 = theorem1_protocol<double>(4);
  EXPECT_EQ(protocol_from_json(protocol_to_json(t1, 2)), t1);
  EXPECT_EQ(broadcast_rounds(protocol_from_json(protocol_to_json(t1))), 4);
}

TEST(ProtocolJson, LeafAndDefaults) {
  EXPECT_TRUE(protocol_from_json("{}").is_leaf());
  const auto p = protocol_from_json(R"({"party":"B","elements":[{"a":0.5,"c":1},{"a":0.5,"c":0}]})");
  ASSERT_TRUE(p.measurement);
  EXPECT_EQ(p.measurement->party, Party::B);
  EXPECT_EQ(p.children.size(), 2u);
  EXPECT_TRUE(p.children[0].is_leaf());
  EXPECT_FALSE(p.joins_broadcast);
}

TEST(ProtocolJson, SchemaErrors) {
  auto code_of = [](const char* text) {
    try {
      protocol_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::NumericalFailure;
  };
  EXPECT_EQ(code_of("[1,2"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of("[]"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of(R"({"party":"D","elements":[{"a":1,"c":1}]})"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of(R"({"party":"A","elements":[]})"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of(R"({"party":"A","elements":[{"c":1}]})"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of(R"({"party":"A","elements":[{"a":1,"c":1}],"children":[{},{}]})"), Errc::MalformedProtocol);
  EXPECT_EQ(code_of(R"({"party":"A","elements":[{"a":0.5,"c":1}]})"), Errc::IncompleteMeasurement);
}

TEST(Figures, Fig4MatchesBoundFormula) {
  const auto t = fig4_table();
  ASSERT_EQ(t.rows.size(), 100u);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const double p = k / 100.0;
    const int expected = std::max(0, static_cast<int>(std::ceil(1.0 / (1.0 - p) - 2.0 - 1e-9)));
    EXPECT_EQ(std::stoi(t.rows[k][1]), expected) << p;
    EXPECT_EQ(std::stoi(t.rows[k][2]), static_cast<int>(std::ceil(1.0 / (3.0 * (1.0 - p)) - 1e-9))) << p;
  }
}

TEST(Figures, Fig5Columns) {
  const auto t = fig5_table(10);
  ASSERT_EQ(t.rows.size(), 9u);
  EXPECT_EQ(t.header[0], "N");
  for (const auto& r : t.rows) {
    EXPECT_GE(std::stod(r[1]), std::stod(r[2]));
    EXPECT_LE(std::stod(r[1]), std::stod(r[3]));
    EXPECT_EQ(r[4], "0");
  }
}

TEST(Figures, Fig6FlagsOneBestPerDiagonal) {
  const auto t = fig6_table({make_state(0.6, 0.25, 0.15)}, 6);
  ASSERT_EQ(t.rows.size(), 36u);
  std::map<int, int> flags;
  std::map<int, double> best;
  for (const auto& r : t.rows) {
    const int d = std::stoi(r[3]) + std::stoi(r[4]);
    best[d] = std::max(best.count(d) ? best[d] : -1.0, std::stod(r[5]));
    flags[d] += std::stoi(r[6]);
  }
  for (const auto& [d, f] : flags) EXPECT_EQ(f, 1) << d;
  for (const auto& r : t.rows) {
    if (r[6] == "1") EXPECT_EQ(std::stod(r[5]), best[std::stoi(r[3]) + std::stoi(r[4])]);
  }
}

TEST(Figures, Fig7RowsMatchSplitSearch) {
  const auto t = fig7_table(12);
  ASSERT_EQ(t.rows.size(), 10u);
  for (const auto& r : t.rows) {
    EXPECT_LE(std::stod(r[3]), std::stod(r[4]));
    const int used = std::stoi(r[1]) + std::stoi(r[2]);
    EXPECT_TRUE(used == std::stoi(r[0]) || used == std::stoi(r[0]) - 1) << r[0];
  }
}

TEST(Figures, WriteAllIsDeterministic) {
  const auto a = scratch("figs_a"), b = scratch("figs_b");
  const auto pa = write_all_figures(a);
  const auto pb = write_all_figures(b);
  ASSERT_EQ(pa.size(), 5u);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(pa[i].filename(), pb[i].filename());
    const std::string sa = slurp(pa[i]);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(pb[i])) << pa[i];
  }
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(Figures, FormatUsesTwelveDigits) {
  EXPECT_EQ(format_value(1.0 / 3), "0.333333333333");
  EXPECT_EQ(format_value(7), "7");
}

TEST(PptCurve, AggregatesFixture) {
  std::ifstream in(std::string(WLOCC_FIXTURE_DIR) + "/ppt_curve.csv");
  ASSERT_TRUE(in);
  const auto t = aggregate_ppt_curve(in);
  ASSERT_FALSE(t.rows.empty());
  EXPECT_EQ(t.header, (std::vector<std::string>{"s", "P_ppt", "P_locc", "P_locc_kappa", "gap", "locc_residual",
                                                 "solver_status"}));
  for (const auto& r : t.rows) {
    const double s = std::stod(r[0]);
    const double curve = 2 * (1 - s) - (1 - s) * (1 - s) / (4 * s);
    EXPECT_NEAR(std::stod(r[3]), curve, 1e-11) << s;
    EXPECT_NEAR(std::stod(r[5]), std::stod(r[2]) - std::stod(r[3]), 1e-11);
  }
}

TEST(PptCurve, ProductEndpointAndErrors) {
  std::istringstream ok("s,P_ppt,P_locc,gap,solver_status\n1.0,0,0,0,optimal\n");
  const auto t = aggregate_ppt_curve(ok);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][3], "0");

  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      aggregate_ppt_curve(in);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::NumericalFailure;
  };
  EXPECT_EQ(code_of(""), Errc::MalformedInput);
  EXPECT_EQ(code_of("s,P_ppt,gap,solver_status\n"), Errc::MalformedInput);
  EXPECT_EQ(code_of("s,P_ppt,P_locc,gap,solver_status\n0.5,1,x,0,optimal\n"), Errc::MalformedInput);
  EXPECT_EQ(code_of("s,P_ppt,P_locc,gap,solver_status\n0.5,1,0.8\n"), Errc::MalformedInput);
  EXPECT_EQ(code_of("s,P_ppt,P_locc,gap,solver_status\n0.2,1,1,0,optimal\n"), Errc::ParameterOutOfRange);
}
