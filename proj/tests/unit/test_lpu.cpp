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

#include <set>

#include "test_util.hpp"
#include "vran/backends/emulated_device.hpp"
#include "vran/backends/profiles.hpp"
#include "vran/lpu/call_plan.hpp"
#include "vran/lpu/lpu.hpp"

using namespace vran;
using namespace vran::lpu;

namespace {

std::shared_ptr<backends::EmulatedDevice> fifo_device(LpuCapabilities caps) {
  backends::EmulatedDeviceConfig cfg;
  cfg.caps = std::move(caps);
  for (auto* m : {&cfg.model_encode, &cfg.model_decode}) {
    for (auto& c : m->by_generation) c = {5.0, 1.0, 2.0, 0.0};
    m->parallel_servers = 1;
  }
  cfg.functional = false;
  return std::make_shared<backends::EmulatedDevice>(cfg);
}

std::vector<CodingOpDescriptor> ops_n(int n) {
  std::vector<CodingOpDescriptor> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)].kind = OpKind::DECODE;
    v[static_cast<std::size_t>(i)].call_id = static_cast<uint64_t>(i);
  }
  return v;
}

}  // namespace

TEST(Discover, ShippedProfiles) {
  const LpuCapabilities t2 = backends::discover("t2");
  EXPECT_TRUE(t2.supports_cb_interface);
  EXPECT_FALSE(t2.supports_tb_interface);
  EXPECT_FALSE(t2.tb_required_when_single_cb);
  EXPECT_TRUE(t2.internal_harq_memory);
  EXPECT_EQ(t2.rated_ul_gbps, 12.0);
  EXPECT_EQ(t2.rated_dl_gbps, 35.0);

  const LpuCapabilities vb = backends::discover("vran_boost");
  EXPECT_TRUE(vb.supports_cb_interface);
  EXPECT_TRUE(vb.supports_tb_interface);
  EXPECT_TRUE(vb.tb_required_when_single_cb);
  EXPECT_FALSE(vb.internal_harq_memory);

  const LpuCapabilities sw = backends::discover("software");
  EXPECT_TRUE(sw.supports_cb_interface && sw.supports_tb_interface);
  EXPECT_FALSE(sw.tb_required_when_single_cb);
  EXPECT_FALSE(sw.internal_harq_memory);

  const LpuCapabilities acc = backends::discover("acc100");
  EXPECT_EQ(acc.supports_tb_interface, vb.supports_tb_interface);
  EXPECT_EQ(acc.tb_required_when_single_cb, vb.tb_required_when_single_cb);
  EXPECT_TRUE(acc.internal_harq_memory);
  EXPECT_FALSE(backends::backend_profile("acc100").published);
}

TEST(Discover, UnknownBackend) {
  expect_error([] { backends::discover("fpga9000"); }, ErrorCode::UnknownBackend);
  Lpu l;
  expect_error([&] { l.discover("nope"); }, ErrorCode::UnknownBackend);
}

TEST(Capabilities, InvariantsEnforced) {
  LpuCapabilities none{"x", false, false, false, false, 4, 0, 0};
  expect_error([&] { none.validate(); }, ErrorCode::InvalidConfig);
  LpuCapabilities bad{"x", true, false, true, false, 4, 0, 0};
  expect_error([&] { bad.validate(); }, ErrorCode::InvalidConfig);
  for (const auto& n : backends::backend_names()) EXPECT_NO_THROW(backends::discover(n).validate()) << n;
}

TEST(Routing, TruthTable) {
  EXPECT_EQ(route_interface(backends::discover("t2"), 1), Granularity::CB);
  EXPECT_EQ(route_interface(backends::discover("vran_boost"), 1), Granularity::TB);
  EXPECT_EQ(route_interface(backends::discover("vran_boost"), 26), Granularity::CB);
  expect_error([] { route_interface(backends::discover("t2"), 0); }, ErrorCode::InvalidConfig);
}

TEST(Routing, TotalOverShippedProfilesAndAllCbCounts) {
  for (const auto& name : backends::backend_names()) {
    const LpuCapabilities caps = backends::discover(name);
    for (int c = 1; c <= 132; ++c) {
      const Granularity g = route_interface(caps, c);
      EXPECT_TRUE(caps.allows(g)) << name << " " << c;
      if (c == 1 && caps.tb_required_when_single_cb) {
        EXPECT_EQ(g, Granularity::TB);
      } else if (caps.supports_cb_interface) {
        EXPECT_EQ(g, Granularity::CB);
      }
    }
  }
  // A TB-only device with the single-CB quirk still routes; a device that
  // requires TB without offering it reports a mismatch.
  const LpuCapabilities tb_only{"tb", false, true, false, false, 1, 0, 0};
  EXPECT_EQ(route_interface(tb_only, 7), Granularity::TB);
  const LpuCapabilities broken{"broken", true, false, true, false, 1, 0, 0};
  expect_error([&] { route_interface(broken, 1); }, ErrorCode::CapabilityMismatch);
  EXPECT_EQ(route_interface(broken, 2), Granularity::CB);
}

TEST(Queues, OpenCloseAndExhaustion) {
  Lpu l;
  l.register_device("t2", backends::make_device("t2"));
  const QueueHandle first = l.open_queue("t2", 0);
  EXPECT_EQ(first.queue_index, 0);
  EXPECT_EQ(first.depth, kDefaultQueueDepth);
  std::set<int> seen{first.queue_index};
  for (int i = 1; i < 16; ++i) EXPECT_TRUE(seen.insert(l.open_queue("t2", i).queue_index).second);
  expect_error([&] { l.open_queue("t2", 16); }, ErrorCode::ResourceExhausted);
  l.close_queue(first);
  EXPECT_EQ(l.open_queue("t2", 99).queue_index, 0);
  expect_error([&] { l.in_flight(first); }, ErrorCode::InvalidConfig);
}

TEST(Queues, TwoInstancesGetDistinctQueues) {
  Lpu l;
  l.register_device("d", backends::make_device("t2"));
  EXPECT_NE(l.open_queue("d", 1).queue_index, l.open_queue("d", 2).queue_index);
}

TEST(Enqueue, EmptyAndBackpressure) {
  Lpu l;
  l.register_device("d", fifo_device(backends::discover("software")));
  const QueueHandle h = l.open_queue("d", 0, 4);
  std::vector<CodingOpDescriptor> none;
  EXPECT_EQ(l.enqueue(h, none), 0);
  EXPECT_TRUE(l.dequeue(h, 10).empty());
  auto six = ops_n(6);
  EXPECT_EQ(l.enqueue(h, six), 4);
  EXPECT_EQ(l.in_flight(h), 4);
  auto more = ops_n(1);
  EXPECT_EQ(l.enqueue(h, more), 0);
  EXPECT_EQ(l.dequeue(h, 100).size(), 4u);
  EXPECT_EQ(l.in_flight(h), 0);
}

TEST(Enqueue, DeviceHarqTokenNeedsInternalMemory) {
  Lpu l;
  l.register_device("vb", backends::make_device("vran_boost"));
  l.register_device("t2", backends::make_device("t2"));
  auto ops = ops_n(1);
  ops[0].harq.present = true;
  ops[0].harq.location = nr::BufferLocation::DEVICE;
  const QueueHandle vb = l.open_queue("vb", 0);
  expect_error([&] { l.enqueue(vb, ops); }, ErrorCode::CapabilityMismatch);
  EXPECT_EQ(l.in_flight(vb), 0);
  const QueueHandle t2 = l.open_queue("t2", 0);
  EXPECT_EQ(l.enqueue(t2, ops), 1);
}

TEST(Enqueue, GranularityMustBeOffered) {
  Lpu l;
  l.register_device("t2", backends::make_device("t2"));
  const QueueHandle h = l.open_queue("t2", 0);
  auto ops = ops_n(2);
  ops[1].granularity = Granularity::TB;
  expect_error([&] { l.enqueue(h, ops); }, ErrorCode::CapabilityMismatch);
}

TEST(Dequeue, ConservationAndFifoOrder) {
  Lpu l;
  l.register_device("d", fifo_device(backends::discover("t2")));
  const QueueHandle h = l.open_queue("d", 3, 16);
  std::vector<uint64_t> ids;
  int accepted = 0;
  std::vector<Completion> got;
  for (int round = 0; round < 5; ++round) {
    auto ops = ops_n(7);
    const int n = l.enqueue(h, ops);
    accepted += n;
    for (int i = 0; i < n; ++i) ids.push_back(ops[static_cast<std::size_t>(i)].op_id);
    for (auto& c : l.dequeue(h, 3)) got.push_back(std::move(c));
  }
  while (l.in_flight(h) > 0)
    for (auto& c : l.dequeue(h, 2)) got.push_back(std::move(c));
  ASSERT_EQ(static_cast<int>(got.size()), accepted);
  std::set<uint64_t> uniq;
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].op_id, ids[i]);
    EXPECT_EQ(got[i].status, OpStatus::OK);
    EXPECT_TRUE(uniq.insert(got[i].op_id).second);
    if (i > 0) {
      EXPECT_GE(got[i].complete_time_us, got[i - 1].complete_time_us);
    }
  }
}

TEST(CallPlan, CountsMatchTheContract) {
  const std::vector<int> cbs{26, 3, 1, 9};
  const int total = 39;
  EXPECT_EQ(group_calls(OpKind::DECODE, InterfaceGeneration::PER_CB, cbs).size(), 39u);
  EXPECT_EQ(group_calls(OpKind::ENCODE, InterfaceGeneration::PER_CB, cbs).size(), (total + 7) / 8u);
  EXPECT_EQ(group_calls(OpKind::ENCODE, InterfaceGeneration::PER_TB, cbs).size(), 4u);
  EXPECT_EQ(group_calls(OpKind::DECODE, InterfaceGeneration::PER_SLOT, cbs).size(), 1u);
  // Encode batches run across TB boundaries and keep slot order.
  const auto enc = group_calls(OpKind::ENCODE, InterfaceGeneration::PER_CB, cbs);
  std::vector<CbRef> flat;
  for (const auto& c : enc) {
    EXPECT_LE(c.size(), 8u);
    flat.insert(flat.end(), c.begin(), c.end());
  }
  ASSERT_EQ(flat.size(), 39u);
  EXPECT_EQ(enc[3][0].tb, 0);
  EXPECT_EQ(enc[3][2].tb, 1);
  EXPECT_TRUE(group_calls(OpKind::DECODE, InterfaceGeneration::PER_SLOT, std::vector<int>{}).empty());
}
