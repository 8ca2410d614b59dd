// Copyright 2026 The nashseek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "nashseek/cournot.h"
#include "nashseek/error.h"
#include "nashseek/io.h"
#include "nashseek/plot.h"

namespace nashseek {
namespace {

TEST(CournotJson, RoundTripsExactly) {
  const CournotSpec s = SampleCournot(CournotSampling{}, 12);
  const CournotSpec r = CournotFromJson(CournotToJson(s));
  EXPECT_EQ(r.num_firms(), s.num_firms());
  EXPECT_EQ(r.JointIncidence(), s.JointIncidence());
  EXPECT_EQ(r.price_intercept, s.price_intercept);
  EXPECT_EQ(r.price_slope, s.price_slope);
  EXPECT_EQ(r.seed, 12U);
  for (int i = 0; i < s.num_firms(); ++i) {
    EXPECT_EQ(r.cost_quad[i], s.cost_quad[i]);
    EXPECT_EQ(r.cost_lin[i], s.cost_lin[i]);
    EXPECT_EQ(r.capacity[i], s.capacity[i]);
  }
  const auto j = nlohmann::json::parse(CournotToJson(s));
  for (const char* key : {"m", "N", "B", "Q_diag", "q", "P_bar", "chi", "C", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(CournotJson, RejectsMismatchedShapes) {
  const CournotSpec s = SampleCournot(CournotSampling{}, 3);
  auto j = nlohmann::json::parse(CournotToJson(s));
  j["m"] = 19;
  EXPECT_THROW(CournotFromJson(j.dump()), SpecError);
  j = nlohmann::json::parse(CournotToJson(s));
  j["chi"].erase(0);
  EXPECT_THROW(CournotFromJson(j.dump()), SpecError);
  j = nlohmann::json::parse(CournotToJson(s));
  j["q"][0].push_back(1.0);
  EXPECT_THROW(CournotFromJson(j.dump()), SpecError);
  EXPECT_THROW(CournotFromJson("{not json"), SpecError);
}

TEST(EdgeList, RoundTripAndErrors) {
  std::vector<DirectedGraph> rounds{MakeCycle(4), MakeStar(4, 1)};
  std::stringstream ss;
  WriteEdgeList(ss, rounds);
  EXPECT_EQ(ReadEdgeList(ss), rounds);

  std::istringstream bad("0 1 x\n");
  EXPECT_THROW(ReadEdgeList(bad), InputError);
  std::istringstream neg("# nodes 3\n0 -1 2\n");
  EXPECT_THROW(ReadEdgeList(neg), InputError);
  std::istringstream big("# nodes 3\n0 1 5\n");
  EXPECT_THROW(ReadEdgeList(big), InputError);
  std::istringstream plain("0 0 1\n0 1 2\n0 2 0\n");
  const auto g = ReadEdgeList(plain);
  ASSERT_EQ(g.size(), 1U);
  EXPECT_EQ(g[0], MakeCycle(3));
}

TEST(Weights, RoundTrip) {
  std::vector<Matrix> ws{BuildWeights(MakeCycle(3), 0.5).w,
                         BuildWeights(MakeComplete(3), 0.25).w};
  std::stringstream ss;
  WriteWeights(ss, ws);
  const auto back = ReadWeights(ss);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0], ws[0]);
  EXPECT_EQ(back[1], ws[1]);
}

TEST(RunCsv, SchemaAndRoundTrip) {
  RunRecord r;
  r.rounds.push_back({0.5, 0.25, 0.1, std::numeric_limits<double>::quiet_NaN(), 0.01});
  r.rounds.push_back({1.0 / 3.0, 1e-300, 2.5e-7, 4.0, 0.02});
  std::stringstream ss;
  WriteRunCsv(ss, r);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "k,dx_inf,dz_inf,err_inf,weighted_err,eta_k");
  ss.seekg(0);
  const auto back = ReadRunCsv(ss);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[1].dx_inf, 1.0 / 3.0);
  EXPECT_EQ(back[1].dz_inf, 1e-300);
  EXPECT_TRUE(std::isnan(back[0].weighted_err));

  std::istringstream wrong("k,dx,dz\n0,1,2\n");
  EXPECT_THROW(ReadRunCsv(wrong), InputError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::quiet_NaN()), "nan");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(FormatDouble(v)), v);
}

TEST(FuzzCsv, Header) {
  std::ostringstream out;
  WriteFuzzCsv(out, {FuzzRow{7, 1.0, 2.0, 1.0}});
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "seed,lhs,rhs,slack");
}

TEST(PiCsv, OneRowPerVector) {
  PiSequence pi;
  pi.pi = {Vector::Constant(2, 0.5), Vector::Constant(2, 0.5)};
  std::ostringstream out;
  WritePiCsv(out, pi);
  std::istringstream in(out.str());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 3);
}

TEST(Certificate, JsonHasReportFields) {
  GameConstants k{{4, 4}, {5, 5}, {1, 1}};
  const StepsizeCertificate c =
      Certify(k, Vector::Constant(2, 0.5), 0.05, {0.01, 0.01});
  const auto j = nlohmann::json::parse(CertificateToJson(c));
  for (const char* key : {"L", "mono_delta", "L_alpha", "beta_alpha", "eta",
                          "Qbar", "lambda_max", "verdict", "region"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], c.certified ? "certified" : "uncertified");
}

TEST(Plot, SvgHasOneCurvePerSeriesAndRejectsEmpty) {
  const std::string svg =
      LogPlotSvg({{"a", {1.0, 0.1, 0.01}}, {"b", {2.0, 0.0, 0.5}}}, "t", "y");
  std::size_t count = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) ++count, ++pos;
  EXPECT_EQ(count, 2U);
  EXPECT_NE(svg.find(">a</text>"), std::string::npos);
  EXPECT_THROW(LogPlotSvg({}, "t", "y"), InputError);
  EXPECT_THROW(LogPlotSvg({{"z", {0.0, -1.0}}}, "t", "y"), InputError);

  const auto dir = std::filesystem::temp_directory_path() / "nashseek_plot_test";
  std::filesystem::create_directories(dir);
  const std::string empty = (dir / "empty.csv").string();
  WriteTextFile(empty, "k,dx_inf,dz_inf,err_inf,weighted_err,eta_k\n");
  EXPECT_THROW(EmitErrorPlots({{"e", empty}}, (dir / "p").string(), "t"),
               InputError);
}

}  // namespace
}  // namespace nashseek
