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

#include <random>

#include "test_util.hpp"
#include "vran/backends/emulated_device.hpp"
#include "vran/backends/profiles.hpp"
#include "vran/slot/interface_bench.hpp"
#include "vran/slot/slot_coding.hpp"

using namespace vran;
using namespace vran::slot;
using lpu::InterfaceGeneration;

namespace {

constexpr InterfaceGeneration kGens[] = {InterfaceGeneration::PER_CB, InterfaceGeneration::PER_TB,
                                         InterfaceGeneration::PER_SLOT};

struct Rig {
  lpu::Lpu l;
  HarqPool pool;
  SlotExecutor exec;

  explicit Rig(std::shared_ptr<lpu::Device> dev) {
    l.register_device("d", std::move(dev));
    exec = SlotExecutor{&l, l.open_queue("d", 0), &pool, {}, CodingMode::FUNCTIONAL};
  }
  explicit Rig(const std::string& backend) : Rig(backends::make_device(backend)) {}
};

SlotCodingRequest request(Direction d, std::vector<TransportBlockJob> jobs, InterfaceGeneration g) {
  SlotCodingRequest r;
  r.direction = d;
  r.jobs = std::move(jobs);
  r.generation = g;
  return r;
}

void attach_noiseless_llrs(std::vector<TransportBlockJob>& jobs) {
  for (auto& j : jobs) {
    const nr::TbShape s = nr::make_tb_shape(j.tbs_inputs());
    j.llrs = nr::bits_to_llrs(nr::encode_tb(j.payload, s, j.rv), 8.0f);
  }
}

int total_cbs(const std::vector<TransportBlockJob>& jobs) {
  int c = 0;
  for (const auto& j : jobs) c += nr::make_tb_shape(j.tbs_inputs()).plan.num_cbs;
  return c;
}

}  // namespace

TEST(SlotApi, RejectsDegenerateRequests) {
  Rig rig("t2");
  expect_error([&] { encode_slot(request(Direction::DL, {}, InterfaceGeneration::PER_SLOT), rig.exec); },
               ErrorCode::InvalidConfig);
  auto jobs = make_jobs(20, 1, 10, nr::McsTable::T1, 1, 3);
  expect_error([&] { decode_slot(request(Direction::DL, jobs, InterfaceGeneration::PER_SLOT), rig.exec); },
               ErrorCode::InvalidConfig);
  jobs[0].payload.pop_back();
  expect_error([&] { encode_slot(request(Direction::DL, jobs, InterfaceGeneration::PER_SLOT), rig.exec); },
               ErrorCode::InvalidConfig);
  auto wide = make_jobs(273, 2, 10, nr::McsTable::T1, 1, 3);
  wide[0].prb_share += 1;
  expect_error([&] { encode_slot(request(Direction::DL, wide, InterfaceGeneration::PER_SLOT), rig.exec); },
               ErrorCode::InvalidConfig);
}

TEST(SlotApi, EncodedBitsIdenticalAcrossGenerationsAndBackends) {
  for (int n_jobs : {1, 3}) {
    const auto jobs = make_jobs(100, n_jobs, 20, nr::McsTable::T2, 2, 17);
    std::vector<BitVec> want;
    for (const auto& j : jobs) want.push_back(nr::encode_tb(j.payload, nr::make_tb_shape(j.tbs_inputs()), 0));
    for (const std::string backend : {"t2", "vran_boost", "software"})
      for (InterfaceGeneration g : kGens) {
        Rig rig(backend);
        const SlotCodingResult r = encode_slot(request(Direction::DL, jobs, g), rig.exec);
        ASSERT_EQ(r.jobs.size(), jobs.size());
        for (std::size_t i = 0; i < jobs.size(); ++i) EXPECT_EQ(r.jobs[i].encoded, want[i]) << backend;
      }
  }
}

TEST(SlotApi, SingleCbTbOnVranBoostUsesTheTbInterface) {
  auto jobs = make_jobs(4, 1, 5, nr::McsTable::T1, 1, 2);
  ASSERT_EQ(total_cbs(jobs), 1);
  attach_noiseless_llrs(jobs);
  for (InterfaceGeneration g : kGens) {
    Rig rig("vran_boost");
    const SlotCodingResult e = encode_slot(request(Direction::DL, jobs, g), rig.exec);
    EXPECT_EQ(e.jobs[0].encoded, nr::encode_tb(jobs[0].payload, nr::make_tb_shape(jobs[0].tbs_inputs()), 0));
    const SlotCodingResult d = decode_slot(request(Direction::UL, jobs, g), rig.exec);
    EXPECT_TRUE(d.jobs[0].tb_crc_ok);
    EXPECT_EQ(d.jobs[0].payload, jobs[0].payload);
    EXPECT_EQ(d.jobs[0].cb_crc_ok, std::vector<bool>{true});
    EXPECT_EQ(d.calls_made, 1);
  }
}

TEST(SlotApi, EightJobsShareTheCarrierEqually) {
  const auto jobs = make_jobs(273, 8, 28, nr::McsTable::T1, 1, 5);
  Rig rig("t2");
  const SlotCodingResult r = encode_slot(request(Direction::DL, jobs, InterfaceGeneration::PER_SLOT), rig.exec);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(jobs[i].prb_share, i == 0 ? 35 : 34);
    const int64_t g = nr::available_coded_bits(jobs[i].tbs_inputs());
    EXPECT_EQ(static_cast<int64_t>(r.jobs[i].encoded.size()), g);
  }
}

TEST(SlotApi, NoiselessDecodeAndCallCounts) {
  auto jobs = make_jobs(273, 1, 28, nr::McsTable::T1, 1, 8);
  attach_noiseless_llrs(jobs);
  for (InterfaceGeneration g : kGens) {
    Rig rig("t2");
    const SlotCodingResult r = decode_slot(request(Direction::UL, jobs, g), rig.exec);
    ASSERT_EQ(r.jobs[0].cb_crc_ok.size(), 26u);
    for (bool ok : r.jobs[0].cb_crc_ok) EXPECT_TRUE(ok);
    EXPECT_TRUE(r.jobs[0].tb_crc_ok);
    EXPECT_EQ(r.jobs[0].payload, jobs[0].payload);
    EXPECT_EQ(r.calls_made, g == InterfaceGeneration::PER_CB ? 26 : 1);
  }
}

TEST(SlotApi, CallsMadeContract) {
  for (int n : {1, 2, 5, 8}) {
    const auto jobs = make_jobs(273, n, 27, nr::McsTable::T2, 2, 40 + static_cast<uint64_t>(n));
    const int cbs = total_cbs(jobs);
    for (InterfaceGeneration g : kGens) {
      Rig rig("t2");
      rig.exec.mode = CodingMode::TIMING_ONLY;
      const int enc = encode_slot(request(Direction::DL, jobs, g), rig.exec).calls_made;
      const int dec = decode_slot(request(Direction::UL, jobs, g), rig.exec).calls_made;
      switch (g) {
        case InterfaceGeneration::PER_CB:
          EXPECT_EQ(dec, cbs);
          EXPECT_EQ(enc, (cbs + 7) / 8);
          break;
        case InterfaceGeneration::PER_TB:
          EXPECT_EQ(dec, n);
          EXPECT_EQ(enc, n);
          break;
        case InterfaceGeneration::PER_SLOT:
          EXPECT_EQ(dec, 1);
          EXPECT_EQ(enc, 1);
          break;
      }
    }
  }
}

TEST(SlotApi, PerCallOverheadSeparatesGenerations) {
  // A device whose only difference between calls is a fixed per-call cost.
  const double c = 17.0;
  backends::EmulatedDeviceConfig cfg;
  cfg.caps = backends::discover("t2");
  for (auto* m : {&cfg.model_encode, &cfg.model_decode}) {
    for (auto& k : m->by_generation) k = {c, 3.0, 2.0, 0.1};
    m->parallel_servers = 8;
  }
  for (int n : {1, 3, 8}) {
    auto jobs = make_jobs(273, n, 28, nr::McsTable::T1, 1, 70);
    for (auto dir : {Direction::DL, Direction::UL}) {
      double elapsed[3];
      int calls[3];
      for (InterfaceGeneration g : kGens) {
        Rig rig(std::make_shared<backends::EmulatedDevice>(cfg));
        rig.exec.mode = CodingMode::TIMING_ONLY;
        const auto r = dir == Direction::DL ? encode_slot(request(dir, jobs, g), rig.exec)
                                            : decode_slot(request(dir, jobs, g), rig.exec);
        elapsed[static_cast<int>(g)] = r.total_elapsed_us;
        calls[static_cast<int>(g)] = r.calls_made;
      }
      EXPECT_GE(elapsed[0] - elapsed[2], (calls[0] - 1) * c - 1e-9);
    }
  }
}

TEST(SlotApi, PerTbElapsedGrowsWithTbCount) {
  for (auto dir : {Direction::DL, Direction::UL}) {
    double prev = 0;
    for (int n = 1; n <= 8; ++n) {
      Rig rig("t2-emulated");
      rig.exec.mode = CodingMode::TIMING_ONLY;
      const auto jobs = make_jobs(273, n, 28, nr::McsTable::T1, 1, 1);
      const auto req = request(dir, jobs, InterfaceGeneration::PER_TB);
      const double t = (dir == Direction::DL ? encode_slot(req, rig.exec) : decode_slot(req, rig.exec)).total_elapsed_us;
      EXPECT_GE(t, prev) << n;
      prev = t;
    }
  }
}

TEST(SlotApi, CombiningWithoutABufferIsAnError) {
  auto jobs = make_jobs(20, 1, 10, nr::McsTable::T1, 1, 3);
  jobs[0].rv = 2;
  attach_noiseless_llrs(jobs);
  Rig host("software");
  expect_error([&] { decode_slot(request(Direction::UL, jobs, InterfaceGeneration::PER_SLOT), host.exec); },
               ErrorCode::HarqBufferMissing);
  host.exec.harq = nullptr;
  expect_error([&] { decode_slot(request(Direction::UL, jobs, InterfaceGeneration::PER_SLOT), host.exec); },
               ErrorCode::HarqBufferMissing);
  Rig dev("t2");
  expect_error([&] { decode_slot(request(Direction::UL, jobs, InterfaceGeneration::PER_SLOT), dev.exec); },
               ErrorCode::HarqBufferMissing);
}

TEST(SlotApi, HarqCombiningOnHostAndDevice) {
  const double sigma = 0.60;
  for (const std::string backend : {"software", "t2"}) {
    int ok0 = 0, ok2 = 0;
    for (int trial = 0; trial < 12; ++trial) {
      Rig rig(backend);
      std::mt19937_64 rng(900 + static_cast<uint64_t>(trial));
      auto jobs = make_jobs(8, 1, 16, nr::McsTable::T2, 2, 300 + static_cast<uint64_t>(trial));
      const nr::TbShape s = nr::make_tb_shape(jobs[0].tbs_inputs());
      jobs[0].llrs = nr::awgn_llrs(nr::encode_tb(jobs[0].payload, s, 0), sigma, rng);
      ok0 += decode_slot(request(Direction::UL, jobs, InterfaceGeneration::PER_SLOT), rig.exec).jobs[0].tb_crc_ok;
      jobs[0].rv = 2;
      jobs[0].llrs = nr::awgn_llrs(nr::encode_tb(jobs[0].payload, s, 2), sigma, rng);
      const auto r = decode_slot(request(Direction::UL, jobs, InterfaceGeneration::PER_SLOT), rig.exec);
      ok2 += r.jobs[0].tb_crc_ok && r.jobs[0].payload == jobs[0].payload;
    }
    EXPECT_EQ(ok2, 12) << backend;
    EXPECT_LT(ok0, ok2) << backend;
  }
}

TEST(SlotApi, TimingOnlyReturnsNoOutputs) {
  Rig rig("t2");
  rig.exec.mode = CodingMode::TIMING_ONLY;
  const auto jobs = make_jobs(50, 2, 10, nr::McsTable::T1, 1, 3);
  const auto r = encode_slot(request(Direction::DL, jobs, InterfaceGeneration::PER_TB), rig.exec);
  EXPECT_TRUE(r.jobs[0].encoded.empty());
  EXPECT_EQ(r.calls_made, 2);
  EXPECT_GT(r.total_elapsed_us, 0.0);
}

TEST(InterfaceBench, EmulatedT2ReproducesReferencePoints) {
  InterfaceBenchConfig cfg;
  cfg.repetitions = 3;
  cfg.tb_counts = {1, 8};
  const auto rows = run_interface_bench(cfg);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.outputs_verified);
    EXPECT_EQ(r.samples.size(), 3u);
    EXPECT_DOUBLE_EQ(r.p50_us, r.mean_us);  // single requester, virtual time
  }
  EXPECT_NEAR(rows[0].mean_us, 655.72, 65.572);
  EXPECT_EQ(rows[0].calls_made, 26);
  EXPECT_NEAR(rows[4].mean_us, 284.73, 28.473);
  EXPECT_GE(rows[0].mean_us, 2.2 * rows[4].mean_us);
  const std::string csv = bench_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "generation,n_tb,mean_us,p50_us,p90_us,calls_made");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(bench_to_json(cfg, rows).find("\"outputs_verified\": true"), std::string::npos);
}

TEST(InterfaceBench, SoftwareBackendRunsFunctionally) {
  InterfaceBenchConfig cfg;
  cfg.backend = "software";
  cfg.direction = lpu::OpKind::ENCODE;
  cfg.repetitions = 2;
  cfg.tb_counts = {2};
  cfg.generations = {InterfaceGeneration::PER_SLOT};
  cfg.worker_count = 2;
  const auto rows = run_interface_bench(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].outputs_verified);
  EXPECT_GT(rows[0].mean_us, 0.0);
}
