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

#include <cstdint>
#include <string>
#include <vector>

#include "vran/backends/emulated_device.hpp"
#include "vran/deployment/topology.hpp"
#include "vran/highphy/slot_pipeline.hpp"
#include "vran/lpu/types.hpp"
#include "vran/nr/tbs.hpp"

namespace vran::deployment {

// phy-test traffic: one UE, the whole carrier, D and U slots fully loaded,
// nothing on S.
struct TrafficConfig {
  int dl_layers = 4;
  int dl_mcs = 27;
  nr::McsTable dl_table = nr::McsTable::T2;
  int dl_overhead = 12;
  int ul_layers = 2;
  int ul_mcs = 16;
  nr::McsTable ul_table = nr::McsTable::T2;
  int ul_overhead = 0;
  int symbols = 12;
  int tbs_per_slot = 1;
  // LLR noise deviation of the channel; 0 is noiseless. Negative means
  // pure noise (no signal at all).
  double ul_noise_sigma = 0.0;
  double dl_noise_sigma = 0.0;
};

struct DeploymentConfig {
  TopologyProfile topology = TopologyProfile::EP_RFSOC;
  int n_instances = 1;
  std::string backend;  // empty: the profile's default
  TrafficConfig traffic;
  int64_t duration_slots = 2000;
  uint64_t seed = 1;
  backends::ClockMode clock = backends::ClockMode::VIRTUAL;
  lpu::InterfaceGeneration generation = lpu::InterfaceGeneration::PER_SLOT;
  highphy::PipelineConfig pipeline = default_pipeline();
  // Extra time before coding in UL slots: max(0, N(0, 1)) times this, drawn
  // per slot. Median 0, upper quartile about 0.67 of it.
  double ul_arrival_jitter_us = 254.0;
  // Slots per (direction, shape) that run the full coding chain; later
  // slots of that shape reuse those outcomes in turn.
  int functional_samples = 2;
  int queue_depth = 256;
  // Consecutive UL deadline misses that stop an instance.
  int failure_run = 8;

  static highphy::PipelineConfig default_pipeline();
  std::string resolved_backend() const { return backend.empty() ? default_backend(topology) : backend; }
  void validate() const;
};

struct FailureEvent {
  int64_t slot_id = -1;
  std::string reason;

  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

struct InstanceMetrics {
  int instance_id = 0;
  bool failed = false;
  FailureEvent failure;
  std::vector<double> ul_decode_us, dl_encode_us, ul_total_us, dl_total_us;
  int64_t ul_slots = 0, dl_slots = 0;
  int64_t ul_deadline_misses = 0, dl_deadline_misses = 0;
  int64_t ul_ok_bits = 0, dl_ok_bits = 0;
  double ul_goodput_mbps = 0.0, dl_goodput_mbps = 0.0;
  std::vector<highphy::SlotTimingRecord> records;

  friend bool operator==(const InstanceMetrics&, const InstanceMetrics&) = default;
};

struct MetricsBundle {
  std::string profile;
  std::string backend;
  int n_instances = 0;
  int64_t duration_slots = 0;
  uint64_t seed = 0;
  double duration_us = 0.0;
  std::vector<InstanceMetrics> instances;

  friend bool operator==(const MetricsBundle&, const MetricsBundle&) = default;
};

// Runs duration_slots TTIs of DDDSU traffic on every instance of the
// default plan, all sharing one device through their own queues. Instance
// i starts its slot grid at a seeded phase in [0, 500) us; instance 0 has
// phase 0. Throws Capacity when the plan does not fit.
MetricsBundle run_deployment(const DeploymentConfig& cfg);

struct ThroughputTargets {
  double dl_mbps = 1200.0;
  double ul_mbps = 90.0;
};

struct InstanceVerdict {
  int instance_id = 0;
  double dl_mbps = 0.0, ul_mbps = 0.0;
  bool dl_pass = false, ul_pass = false;
  bool pass() const { return dl_pass && ul_pass; }
};

std::vector<InstanceVerdict> check_throughput(const MetricsBundle& bundle, ThroughputTargets targets = {});

// JSON config file. Every key is optional; unknown keys are an error.
DeploymentConfig load_config(const std::string& path);
DeploymentConfig config_from_json(const std::string& text);
std::string config_to_json(const DeploymentConfig& cfg);

}  // namespace vran::deployment
