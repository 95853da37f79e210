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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "test_util.hpp"
#include "vran/backends/calibration.hpp"
#include "vran/backends/coding_kernel.hpp"
#include "vran/backends/emulated_device.hpp"
#include "vran/backends/event_engine.hpp"
#include "vran/backends/nnls.hpp"
#include "vran/backends/profiles.hpp"
#include "vran/backends/software_device.hpp"
#include "vran/nr/transport_block.hpp"

using namespace vran;
using namespace vran::backends;
using lpu::InterfaceGeneration;
using lpu::OpKind;

namespace {

constexpr InterfaceGeneration kGens[] = {InterfaceGeneration::PER_CB, InterfaceGeneration::PER_TB,
                                         InterfaceGeneration::PER_SLOT};

// Brute force over every passive set: the NNLS optimum is the best
// feasible unconstrained solution restricted to some column subset.
double nnls_oracle_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) cols.push_back(j);
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
    const Eigen::VectorXd z = sub.colPivHouseholderQr().solve(b);
    if ((z.array() < -1e-12).any()) continue;
    best = std::min(best, (sub * z - b).norm());
  }
  return best;
}

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> r(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)].push_back(m(i, j));
  return r;
}

EmulatedDeviceConfig plain_config(int servers, JitterModel jitter = {}) {
  EmulatedDeviceConfig cfg;
  cfg.caps = {"test", true, false, false, true, 16, 35.0, 12.0};
  for (auto* m : {&cfg.model_encode, &cfg.model_decode}) {
    for (auto& c : m->by_generation) c = {20.0, 10.0, 3.0, 0.5};
    m->parallel_servers = servers;
    m->jitter = jitter;
  }
  cfg.functional = false;
  return cfg;
}

lpu::CodingOpDescriptor op(OpKind k, uint64_t call, int n_cb, int64_t bits, bool tb_start = true) {
  lpu::CodingOpDescriptor d;
  d.kind = k;
  d.call_id = call;
  d.n_cb = n_cb;
  d.payload_bits = bits;
  d.tb_start = tb_start;
  return d;
}

}  // namespace

TEST(ServerPool, FcfsOnEarliestFreeEngine) {
  ServerPool p(2);
  EXPECT_DOUBLE_EQ(p.schedule(0, 0.0, 3, 10.0), 20.0);  // two in parallel, third after
  EXPECT_DOUBLE_EQ(p.schedule(1, 5.0, 1, 10.0), 20.0);  // second engine frees at 10
  EXPECT_EQ(p.occupancy(6.0, 0), 1);
  EXPECT_EQ(p.occupancy(6.0, 1), 3);
  EXPECT_EQ(p.occupancy(6.0, 7), 4);
  EXPECT_EQ(p.occupancy(25.0, 7), 0);
  expect_error([] { ServerPool bad(0); }, ErrorCode::InvalidConfig);
}

TEST(Nnls, RecoversPositiveSolutionExactly) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd a(12, 4);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
  const Eigen::Vector4d x{1.5, 0.25, 3.0, 7.0};
  const Eigen::VectorXd b = a * x;
  const NnlsResult r = nnls(rows_of(a), std::vector<double>(b.data(), b.data() + b.size()));
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(r.x[static_cast<std::size_t>(j)], x(j), 1e-9);
  EXPECT_LT(r.residual_norm, 1e-9);
}

TEST(Nnls, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 4 + trial % 6, cols = 2 + trial % 4;
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd b(rows);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = n01(rng);
    const NnlsResult r = nnls(rows_of(a), std::vector<double>(b.data(), b.data() + b.size()));
    for (double v : r.x) ASSERT_GE(v, 0.0);
    ASSERT_NEAR(r.residual_norm, nnls_oracle_residual(a, b), 1e-8) << "trial " << trial;
  }
}

TEST(Calibration, BenchRequestUsesFloorSplit) {
  EXPECT_EQ(split_prbs(273, 8), (std::vector<int>{35, 34, 34, 34, 34, 34, 34, 34}));
  EXPECT_EQ(split_prbs(273, 1), (std::vector<int>{273}));
  int sum = 0;
  for (int v : split_prbs(273, 7)) sum += v;
  EXPECT_EQ(sum, 273);
  expect_error([] { split_prbs(3, 4); }, ErrorCode::InvalidConfig);
  const auto one = bench_request({}, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].tbs, 217128);
  EXPECT_EQ(one[0].num_cbs, 26);
}

TEST(Calibration, ParsesShippedTable) {
  const auto& pts = reference_calibration_points();
  ASSERT_EQ(pts.size(), 48u);
  for (OpKind d : {OpKind::ENCODE, OpKind::DECODE})
    for (InterfaceGeneration g : kGens)
      for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(std::count_if(pts.begin(), pts.end(),
                                [&](const CalibrationPoint& p) {
                                  return p.direction == d && p.generation == g && p.n_tb == n;
                                }),
                  1);
}

TEST(Calibration, RejectsMalformedCsv) {
  expect_error([] { parse_calibration_csv("a,b\n"); }, ErrorCode::Io);
  expect_error([] { parse_calibration_csv("direction,generation,n_tb,mean_us\ndecode,PER_XX,1,3\n"); },
               ErrorCode::Io);
  expect_error([] { parse_calibration_csv("direction,generation,n_tb,mean_us\ndecode,PER_CB,1,-3\n"); },
               ErrorCode::Io);
  expect_error([] { parse_calibration_csv("# only comments\n"); }, ErrorCode::Io);
  EXPECT_EQ(parse_calibration_csv("# c\ndirection,generation,n_tb,mean_us\r\nencode,PER_TB,2,1.5\r\n").size(), 1u);
}

TEST(Calibration, RecoversKnownModelFromExactData) {
  // Coefficients on columns the bench design can identify: for PER_TB the
  // call count equals n_tb, for decode PER_CB it equals the CB count.
  ServiceTimeModel truth;
  truth.coefficients(InterfaceGeneration::PER_CB) = {12.5, 40.0, 0.0, 0.75};
  truth.coefficients(InterfaceGeneration::PER_TB) = {90.0, 0.0, 4.0, 1.25};
  truth.coefficients(InterfaceGeneration::PER_SLOT) = {30.0, 60.0, 2.5, 0.5};
  std::vector<CalibrationPoint> pts;
  for (InterfaceGeneration g : kGens)
    for (int n = 1; n <= 8; ++n) {
      const CallFeatures f = request_features(OpKind::DECODE, g, bench_request({}, n));
      pts.push_back({OpKind::DECODE, g, n, truth.coefficients(g).evaluate(f.calls, f.n_tb, f.n_cb, f.kbits)});
    }
  const CalibrationResult r = calibrate_model(pts, OpKind::DECODE);
  EXPECT_LT(r.max_relative_residual, 1e-9);
  for (InterfaceGeneration g : kGens) {
    const CostCoefficients& want = truth.coefficients(g);
    const CostCoefficients& got = r.model.coefficients(g);
    const double w[] = {want.fixed_per_call_us, want.per_tb_us, want.per_cb_us, want.per_kbit_us};
    const double h[] = {got.fixed_per_call_us, got.per_tb_us, got.per_cb_us, got.per_kbit_us};
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(h[j], w[j], 1e-6 * std::max(1.0, w[j])) << j;
  }
}

TEST(Calibration, ReferenceTableWithinTenPercent) {
  for (OpKind d : {OpKind::DECODE, OpKind::ENCODE}) {
    const CalibrationResult r = calibrate_model(reference_calibration_points(), d);
    EXPECT_EQ(r.points.size(), 24u);
    EXPECT_LE(r.max_relative_residual, 0.10);
    for (const FittedPoint& p : r.points) EXPECT_LE(std::abs(p.relative_residual), 0.10);
  }
}

TEST(Calibration, UnderdeterminedInputFails) {
  const std::vector<CalibrationPoint> one{{OpKind::DECODE, InterfaceGeneration::PER_CB, 1, 655.72}};
  expect_error([&] { calibrate_model(one, OpKind::DECODE); }, ErrorCode::CalibrationFailed);
  std::vector<CalibrationPoint> single_gen;
  for (int n = 1; n <= 6; ++n) single_gen.push_back({OpKind::DECODE, InterfaceGeneration::PER_TB, n, 100.0 * n});
  expect_error([&] { calibrate_model(single_gen, OpKind::DECODE); }, ErrorCode::CalibrationFailed);
  // Enough rows overall, but only two for the requested direction.
  std::vector<CalibrationPoint> mixed = single_gen;
  mixed.push_back({OpKind::ENCODE, InterfaceGeneration::PER_CB, 1, 50.0});
  mixed.push_back({OpKind::ENCODE, InterfaceGeneration::PER_SLOT, 1, 50.0});
  expect_error([&] { calibrate_model(mixed, OpKind::ENCODE); }, ErrorCode::CalibrationFailed);
}

TEST(Calibration, JsonDumpCarriesEveryPoint) {
  std::vector<CalibrationResult> rs{calibrate_model(reference_calibration_points(), OpKind::DECODE)};
  const std::string js = calibration_to_json(rs);
  EXPECT_NE(js.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(js.find("\"PER_SLOT\""), std::string::npos);
  EXPECT_EQ(std::count(js.begin(), js.end(), '{'), 1 + 1 + 1 + 3 + 24);
}

TEST(EmulatedTiming, ZeroCbsIsFree) {
  EmulatedDevice dev(plain_config(8));
  EXPECT_EQ(emulated_service_time(dev, {OpKind::DECODE, InterfaceGeneration::PER_SLOT, 1, 0, 0}), 0.0);
}

TEST(EmulatedTiming, SingleRequesterSeesNoQueueing) {
  // One owner on an idle device: elapsed equals the summed call costs.
  const auto dev = std::static_pointer_cast<EmulatedDevice>(make_device("t2"));
  for (OpKind k : {OpKind::ENCODE, OpKind::DECODE})
    for (InterfaceGeneration g : kGens)
      for (int n = 1; n <= 8; ++n) {
        const auto tbs = bench_request({}, n);
        const CallFeatures f = request_features(k, g, tbs);
        const auto& m = k == OpKind::ENCODE ? dev->config().model_encode : dev->config().model_decode;
        const double want = m.coefficients(g).evaluate(f.calls, f.n_tb, f.n_cb, f.kbits);
        const double got = emulated_service_time(
            *dev, {k, g, n, static_cast<int>(f.n_cb), static_cast<int64_t>(std::llround(f.kbits * 1000))});
        EXPECT_NEAR(got, want, 1e-6 * want);
      }
}

TEST(EmulatedTiming, PublishedPointsForT2) {
  const auto dev = std::static_pointer_cast<EmulatedDevice>(make_device("t2-emulated"));
  const double dec = emulated_service_time(*dev, {OpKind::DECODE, InterfaceGeneration::PER_SLOT, 8, 26, 218176});
  EXPECT_NEAR(dec, 1062.92, 0.10 * 1062.92);
  const double enc = emulated_service_time(*dev, {OpKind::ENCODE, InterfaceGeneration::PER_TB, 8, 32, 218176});
  EXPECT_NEAR(enc, 205.44, 0.10 * 205.44);
  EXPECT_EQ(dev->config().model_decode.parallel_servers, 8);
  EXPECT_EQ(dev->config().model_encode.parallel_servers, 8);
}

TEST(EmulatedTiming, MonotoneInCbsAndBits) {
  const auto dev = std::static_pointer_cast<EmulatedDevice>(make_device("t2"));
  for (OpKind k : {OpKind::ENCODE, OpKind::DECODE})
    for (InterfaceGeneration g : kGens)
      for (int n_tb : {1, 4}) {
        double prev = 0;
        for (int c = n_tb; c <= 132; c += 3) {
          const double t = emulated_service_time(*dev, {k, g, n_tb, c, 200000});
          EXPECT_GE(t, prev * (1 - 1e-12));
          prev = t;
        }
        prev = 0;
        for (int64_t bits = 1000; bits <= 1200000; bits += 37000) {
          const double t = emulated_service_time(*dev, {k, g, n_tb, 40, bits});
          EXPECT_GE(t, prev * (1 - 1e-12));
          prev = t;
        }
      }
}

TEST(EmulatedDevice, FixedChargeOncePerCall) {
  EmulatedDevice dev(plain_config(8));
  // Same call split over two bursts: one fixed charge.
  dev.submit(0, 0, {op(OpKind::DECODE, 7, 1, 0)}, 0.0);
  dev.submit(0, 0, {op(OpKind::DECODE, 7, 1, 0, false)}, 0.0);
  auto c = dev.poll(0, 10);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0].complete_time_us, 20.0 + 10.0 + 3.0);
  EXPECT_DOUBLE_EQ(c[1].complete_time_us, c[0].complete_time_us + 3.0);
}

TEST(EmulatedDevice, ContentionJitterOnlyWhenOversubscribed) {
  const JitterModel j{JitterKind::LOGNORMAL, 50.0, 0.5};
  EmulatedDevice solo(plain_config(2, j));
  for (int i = 0; i < 20; ++i) solo.submit(0, 0, {op(OpKind::DECODE, static_cast<uint64_t>(i), 8, 1000000)}, i * 1.0);
  EXPECT_EQ(solo.contended_bursts(), 0u);

  EmulatedDevice shared(plain_config(2, j));
  shared.submit(0, 0, {op(OpKind::DECODE, 0, 8, 1000000)}, 0.0);
  shared.submit(1, 1, {op(OpKind::DECODE, 0, 1, 1000)}, 1.0);
  EXPECT_EQ(shared.contended_bursts(), 1u);
  const auto c = shared.poll(1, 1);
  ASSERT_EQ(c.size(), 1u);
  // Base cost 20+10+3+0.5; queueing behind 8 units plus a strictly positive draw.
  EXPECT_GT(c[0].complete_time_us, 1.0 + 33.5);
}

TEST(EmulatedDevice, VirtualRunsReproducibleAndSeeded) {
  auto run = [](uint64_t seed) {
    EmulatedDeviceConfig cfg = plain_config(2, {JitterKind::LOGNORMAL, 50.0, 1.0});
    cfg.model_decode.seed = seed;
    EmulatedDevice dev(cfg);
    std::vector<double> t;
    for (int i = 0; i < 50; ++i)
      for (int o = 0; o < 3; ++o) dev.submit(o, o, {op(OpKind::DECODE, static_cast<uint64_t>(i), 6, 300000)}, i * 40.0);
    for (int o = 0; o < 3; ++o)
      for (const auto& c : dev.poll(o, 1000)) t.push_back(c.complete_time_us);
    return t;
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

TEST(EmulatedDevice, PerOwnerPoolsNeverContend) {
  const auto dev = make_device("hpp_cpu", {});
  for (int o = 0; o < 5; ++o) dev->submit(o, o, {op(OpKind::DECODE, 0, 36, 303240)}, 0.0);
  for (int o = 0; o < 5; ++o) {
    const auto c = dev->poll(o, 10);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0].complete_time_us, 485.96, 1e-6);
  }
}

TEST(EmulatedDevice, WallClockHoldsCompletionsUntilDue) {
  EmulatedDeviceConfig cfg = plain_config(8);
  cfg.clock = ClockMode::WALL;
  for (auto& c : cfg.model_decode.by_generation) c = {3000.0, 0, 0, 0};
  EmulatedDevice dev(cfg);
  dev.submit(0, 0, {op(OpKind::DECODE, 1, 1, 100)}, 0.0);
  EXPECT_TRUE(dev.poll(0, 1).empty());
  std::this_thread::sleep_for(std::chrono::milliseconds(6));
  EXPECT_EQ(dev.poll(0, 1).size(), 1u);
}

namespace {

struct CodingCase {
  std::shared_ptr<const nr::TbShape> shape;
  BitVec payload;
};

CodingCase coding_case(int prbs, int layers, int mcs, nr::McsTable t, uint64_t seed) {
  CodingCase c;
  c.shape = std::make_shared<nr::TbShape>(nr::make_tb_shape(nr::TbsInputs{prbs, 12, layers, mcs, t, 0}));
  std::mt19937_64 rng(seed);
  c.payload = random_bits(static_cast<std::size_t>(c.shape->tbs), rng);
  return c;
}

std::vector<lpu::CodingOpDescriptor> cb_encode_ops(const CodingCase& c) {
  std::vector<lpu::CodingOpDescriptor> ops;
  const auto cbs = nr::build_code_blocks(c.payload, c.shape->plan);
  for (std::size_t i = 0; i < cbs.size(); ++i) {
    auto d = op(OpKind::ENCODE, 0, 1, 0, i == 0);
    d.work = std::make_shared<lpu::CodingWork>();
    d.work->shape = c.shape;
    d.work->cb_index = static_cast<int>(i);
    d.work->cb = cbs[i];
    ops.push_back(std::move(d));
  }
  return ops;
}

BitVec concat(const std::vector<lpu::Completion>& done) {
  BitVec out;
  for (const auto& c : done) out.insert(out.end(), c.work->encoded.begin(), c.work->encoded.end());
  return out;
}

}  // namespace

TEST(Software, MatchesSequentialCodingForAnyWorkerCount) {
  const CodingCase c = coding_case(60, 2, 20, nr::McsTable::T2, 4);
  ASSERT_GT(c.shape->plan.num_cbs, 3);
  const BitVec want = nr::encode_tb(c.payload, *c.shape, 0);
  const BitVec one = concat(software_process(cb_encode_ops(c), 1));
  const BitVec four = concat(software_process(cb_encode_ops(c), 4));
  EXPECT_EQ(one, want);
  EXPECT_EQ(four, want);
  EXPECT_TRUE(software_process({}, 3).empty());
  expect_error([] { software_process({}, 0); }, ErrorCode::InvalidConfig);
}

TEST(Software, FourWorkersScaleOnFourCores) {
  if (std::thread::hardware_concurrency() < 4) GTEST_SKIP() << "needs at least 4 cores";
  const CodingCase c = coding_case(273, 1, 28, nr::McsTable::T1, 9);
  ASSERT_EQ(c.shape->plan.num_cbs, 26);
  auto time_with = [&](int w) {
    double best = 1e18;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      software_process(cb_encode_ops(c), w);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  EXPECT_LE(time_with(4), 0.7 * time_with(1));
}

TEST(CodingKernel, TbDecodeOnDeviceHarqCombines) {
  const CodingCase c = coding_case(8, 2, 16, nr::McsTable::T2, 21);
  const auto dev = make_device("t2");
  const BitVec coded = nr::encode_tb(c.payload, *c.shape, 0);
  std::vector<float> llrs = nr::bits_to_llrs(coded, 4.0f);
  // Erase the first half of every value: a single pass cannot decode.
  for (std::size_t i = 0; i < llrs.size(); i += 2) llrs[i] = 0.0f;

  auto decode_cbs = [&](bool combine) {
    std::vector<lpu::CodingOpDescriptor> ops;
    std::size_t off = 0;
    for (int r = 0; r < c.shape->plan.num_cbs; ++r) {
      const auto e = static_cast<std::size_t>(c.shape->e[static_cast<std::size_t>(r)]);
      auto d = op(OpKind::DECODE, combine ? 2 : 1, 1, 0, r == 0);
      d.harq = {true, nr::BufferLocation::DEVICE, 77, nullptr, combine};
      d.work = std::make_shared<lpu::CodingWork>();
      d.work->shape = c.shape;
      d.work->cb_index = r;
      d.work->llrs.assign(llrs.begin() + static_cast<std::ptrdiff_t>(off),
                          llrs.begin() + static_cast<std::ptrdiff_t>(off + e));
      off += e;
      ops.push_back(std::move(d));
    }
    dev->submit(0, 3, std::move(ops), 0.0);
    bool ok = true;
    for (const auto& done : dev->poll(0, 100)) ok = ok && done.work->crc_ok;
    return ok;
  };
  EXPECT_FALSE(dev->has_harq_buffer(3, 77));
  decode_cbs(false);
  EXPECT_TRUE(dev->has_harq_buffer(3, 77));
  EXPECT_FALSE(dev->has_harq_buffer(4, 77));
  // Flip the erasure pattern and combine: together the passes see every bit.
  llrs = nr::bits_to_llrs(coded, 4.0f);
  for (std::size_t i = 1; i < llrs.size(); i += 2) llrs[i] = 0.0f;
  EXPECT_TRUE(decode_cbs(true));
}
