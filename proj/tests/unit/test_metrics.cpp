/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The vranscale contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include <json.hpp>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vran/deployment/deployment.hpp"
#include "vran/metrics/report.hpp"
#include "vran/metrics/stats.hpp"

using namespace vran;
using namespace vran::metrics;

namespace {

void expect_matches_oracle(const std::vector<double>& v) {
  const LatencyDistribution d = summarize(v);
  EXPECT_EQ(d.count, static_cast<int64_t>(v.size()));
  EXPECT_EQ(d.min, oracle::nearest_rank(v, 0));
  EXPECT_EQ(d.p10, oracle::nearest_rank(v, 10));
  EXPECT_EQ(d.q1, oracle::nearest_rank(v, 25));
  EXPECT_EQ(d.median, oracle::nearest_rank(v, 50));
  EXPECT_EQ(d.q3, oracle::nearest_rank(v, 75));
  EXPECT_EQ(d.p90, oracle::nearest_rank(v, 90));
  EXPECT_EQ(d.max, oracle::nearest_rank(v, 100));
  double sum = 0.0;
  for (double x : v) sum += x;
  EXPECT_NEAR(d.mean, sum / static_cast<double>(v.size()), 1e-9 * std::max(1.0, std::abs(d.mean)));
  EXPECT_LE(d.min, d.p10);
  EXPECT_LE(d.p10, d.q1);
  EXPECT_LE(d.q1, d.median);
  EXPECT_LE(d.median, d.q3);
  EXPECT_LE(d.q3, d.p90);
  EXPECT_LE(d.p90, d.max);
}

std::vector<double> lognormal(std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> d(5.0, 0.6);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

deployment::MetricsBundle small_run(int n, int64_t slots) {
  deployment::DeploymentConfig c;
  c.n_instances = n;
  c.duration_slots = slots;
  return deployment::run_deployment(c);
}

}  // namespace

TEST(Summarize, Singleton) {
  const LatencyDistribution d = summarize(std::vector<double>{5.0});
  for (double f : {d.min, d.p10, d.q1, d.median, d.q3, d.p90, d.max, d.mean}) EXPECT_EQ(f, 5.0);
  EXPECT_EQ(d.count, 1);
}

TEST(Summarize, OneToHundred) {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  const LatencyDistribution d = summarize(v);
  EXPECT_EQ(d.median, 50);
  EXPECT_EQ(d.p10, 10);
  EXPECT_EQ(d.p90, 90);
  EXPECT_EQ(d.q1, 25);
  EXPECT_EQ(d.q3, 75);
  EXPECT_EQ(d.min, 1);
  EXPECT_EQ(d.max, 100);
  EXPECT_EQ(d.mean, 50.5);
}

TEST(Summarize, MatchesSortOracle) {
  expect_matches_oracle(lognormal(10000, 17));
  for (std::size_t n = 1; n <= 300; ++n) expect_matches_oracle(lognormal(n, n));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng() % 10000;
    expect_matches_oracle(lognormal(n, rng()));
  }
}

TEST(Summarize, Errors) {
  expect_error([] { summarize(std::vector<double>{}); }, ErrorCode::EmptyInput);
  expect_error([] { summarize(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}); },
               ErrorCode::InvalidConfig);
}

TEST(Report, EmptyBundleIsHeaderOnly) {
  const deployment::MetricsBundle empty;
  const auto j = nlohmann::json::parse(export_report(empty, ReportFormat::JSON));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_TRUE(j["instances"].empty());
  EXPECT_EQ(export_report(empty, ReportFormat::CSV),
            "instance,direction,metric,count,min,p10,q1,median,q3,p90,max,mean\n");
  EXPECT_EQ(export_records_jsonl(empty), "");
}

TEST(Report, JsonRoundTripAndStableBytes) {
  const deployment::MetricsBundle b = small_run(2, 60);
  const std::string json = export_report(b, ReportFormat::JSON);
  const std::string lines = export_records_jsonl(b);
  EXPECT_EQ(json, export_report(b, ReportFormat::JSON));
  const deployment::MetricsBundle back = bundle_from_json(json, lines);
  EXPECT_TRUE(back == b);
  EXPECT_EQ(export_report(back, ReportFormat::JSON), json);
  EXPECT_EQ(export_report(back, ReportFormat::CSV), export_report(b, ReportFormat::CSV));
  EXPECT_EQ(export_records_jsonl(back), lines);
}

TEST(Report, SevenInstanceBlocks) {
  const deployment::MetricsBundle b = small_run(7, 10);
  const auto j = nlohmann::json::parse(export_report(b, ReportFormat::JSON));
  ASSERT_EQ(j["instances"].size(), 7u);
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(j["instances"][static_cast<std::size_t>(i)]["instance_id"], i);
    EXPECT_EQ(j["instances"][static_cast<std::size_t>(i)]["distributions"]["ul_decode_us"]["count"], 2);
  }
  const std::string csv = export_report(b, ReportFormat::CSV);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 7 * 4);
}

TEST(Report, RejectsBadInput) {
  expect_error([] { bundle_from_json("not json"); }, ErrorCode::Io);
  expect_error([] { bundle_from_json(R"({"schema_version": 2})"); }, ErrorCode::Io);
  expect_error([] { parse_format("xml"); }, ErrorCode::InvalidConfig);
  EXPECT_EQ(parse_format("csv"), ReportFormat::CSV);
}

TEST(Report, FileIo) {
  const auto path = std::filesystem::temp_directory_path() / "vranscale_report_test.txt";
  write_file(path.string(), "abc\n");
  EXPECT_EQ(read_file(path.string()), "abc\n");
  std::filesystem::remove(path);
  expect_error([] { read_file("/nonexistent/x"); }, ErrorCode::Io);
  expect_error([] { write_file("/nonexistent/dir/x", "y"); }, ErrorCode::Io);
}
