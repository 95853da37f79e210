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

#pragma once

#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "vran/backends/event_engine.hpp"
#include "vran/backends/service_time_model.hpp"
#include "vran/lpu/device.hpp"

namespace vran::backends {

enum class ClockMode { VIRTUAL, WALL };

struct EmulatedDeviceConfig {
  lpu::LpuCapabilities caps;
  ServiceTimeModel model_encode;
  ServiceTimeModel model_decode;
  ClockMode clock = ClockMode::VIRTUAL;
  // Run the nr_coding chain for ops that carry work. Timing never depends
  // on it.
  bool functional = true;
  // Each owner gets private engines (a CPU core pool rather than a shared
  // card), so owners never contend.
  bool per_owner_servers = false;
};

// Hardware accelerator stand-in. Each enqueue is one burst whose cost is
//   fixed (first burst of a call on this queue) + per_tb * TB starts
//   + per_cb * CBs + per_kbit * kbits
// using the coefficients of the ops' interface generation. The part of that
// cost bounded by the rated throughput runs on the engine pool, one unit per
// CB; the rest is added after the engines finish. Bursts on a queue are
// served in order. A burst that arrives while other owners hold more units
// in the device than there are engines gets a jitter draw added.
class EmulatedDevice : public lpu::Device {
 public:
  explicit EmulatedDevice(EmulatedDeviceConfig cfg);

  const lpu::LpuCapabilities& capabilities() const override { return cfg_.caps; }
  bool virtual_time() const override { return cfg_.clock == ClockMode::VIRTUAL; }
  void submit(int queue, int owner, std::vector<lpu::CodingOpDescriptor> ops, double now_us) override;
  std::vector<lpu::Completion> poll(int queue, std::size_t max) override;
  bool has_harq_buffer(int owner, uint64_t id) const override;
  double now_us() const override;

  const EmulatedDeviceConfig& config() const { return cfg_; }

  // Bursts that received a contention jitter draw, for diagnostics.
  uint64_t contended_bursts() const;

 private:
  struct QueueState {
    double busy_until = 0.0;
    bool any_call = false;
    uint64_t last_call_id = 0;
    std::deque<lpu::Completion> done;
  };

  QueueState& queue_state(int q);
  ServerPool& pool_for(int owner);
  std::mt19937_64& rng_for(int owner);
  std::vector<nr::SoftBuffer>* device_harq(int owner, const lpu::HarqToken& t);

  EmulatedDeviceConfig cfg_;
  mutable std::mutex mu_;
  std::vector<QueueState> queues_;
  std::map<int, ServerPool> pools_;
  std::map<int, std::mt19937_64> rngs_;
  std::map<std::pair<int, uint64_t>, std::vector<nr::SoftBuffer>> harq_;
  std::chrono::steady_clock::time_point epoch_;
  double latest_arrival_ = 0.0;
  uint64_t bursts_ = 0;
  uint64_t contended_ = 0;
};

struct RequestShape {
  lpu::OpKind kind = lpu::OpKind::DECODE;
  lpu::InterfaceGeneration generation = lpu::InterfaceGeneration::PER_SLOT;
  int n_tb = 1;
  int n_cb = 0;            // total over the slot
  int64_t total_bits = 0;  // payload bits over the slot
};

// Virtual elapsed time of one request issued call after call by a single
// owner on an otherwise idle copy of the device. CBs and bits are spread
// evenly over the TBs.
double emulated_service_time(const EmulatedDevice& device, const RequestShape& shape);

}  // namespace vran::backends
