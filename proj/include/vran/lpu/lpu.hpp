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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vran/lpu/device.hpp"
#include "vran/lpu/types.hpp"

namespace vran::lpu {

inline constexpr int kDefaultQueueDepth = 128;

// AAL-style front end: capability discovery, queue lifecycle and the
// enqueue/dequeue contract. Each handle is single-producer/single-consumer;
// the registry itself is internally synchronized.
class Lpu {
 public:
  void register_device(const std::string& device_id, std::shared_ptr<Device> dev);
  bool has_device(const std::string& device_id) const;
  std::shared_ptr<Device> device(const std::string& device_id) const;

  LpuCapabilities discover(const std::string& device_id) const;

  QueueHandle open_queue(const std::string& device_id, int instance_id, int depth = kDefaultQueueDepth);
  void close_queue(const QueueHandle& h);

  // Accepts a prefix of ops up to the free depth and returns its length.
  // Assigns op ids. Rejects the whole call with CapabilityMismatch when an op
  // uses a granularity or HARQ placement the device does not support.
  int enqueue(const QueueHandle& h, std::vector<CodingOpDescriptor>& ops);

  std::vector<Completion> dequeue(const QueueHandle& h, std::size_t max);

  // Submitter clock of a queue. Virtual-time devices stamp bursts with it.
  void set_time(const QueueHandle& h, double t_us);
  double time(const QueueHandle& h) const;

  int in_flight(const QueueHandle& h) const;
  bool has_harq_buffer(const QueueHandle& h, uint64_t id) const;
  bool virtual_time(const QueueHandle& h) const;

 private:
  struct QueueState {
    int owner = -1;
    int depth = 0;
    int in_flight = 0;
    double now_us = 0.0;
  };
  struct DeviceEntry {
    std::shared_ptr<Device> dev;
    std::vector<QueueState> queues;  // owner < 0 means free
  };

  DeviceEntry& entry(const std::string& id);
  const DeviceEntry& entry(const std::string& id) const;
  QueueState& queue(const QueueHandle& h);
  const QueueState& queue(const QueueHandle& h) const;

  mutable std::mutex mu_;
  std::map<std::string, DeviceEntry> devices_;
  uint64_t next_op_id_ = 1;
};

// Interface choice for one TB; prefers CB when both are legal.
Granularity route_interface(const LpuCapabilities& caps, int num_cbs_in_tb);

}  // namespace vran::lpu
