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

#include "vran/lpu/lpu.hpp"

#include <algorithm>
#include <string>

#include "vran/common/error.hpp"

namespace vran::lpu {

void Lpu::register_device(const std::string& device_id, std::shared_ptr<Device> dev) {
  require(dev != nullptr, ErrorCode::InvalidConfig, "null device");
  dev->capabilities().validate();
  std::lock_guard<std::mutex> lk(mu_);
  require(!devices_.count(device_id), ErrorCode::InvalidConfig,
          "device '" + device_id + "' already registered");
  DeviceEntry e;
  e.queues.resize(static_cast<std::size_t>(dev->capabilities().num_queues));
  e.dev = std::move(dev);
  devices_.emplace(device_id, std::move(e));
}

bool Lpu::has_device(const std::string& device_id) const {
  std::lock_guard<std::mutex> lk(mu_);
  return devices_.count(device_id) != 0;
}

Lpu::DeviceEntry& Lpu::entry(const std::string& id) {
  auto it = devices_.find(id);
  if (it == devices_.end()) fail(ErrorCode::UnknownBackend, "no device '" + id + "'");
  return it->second;
}

const Lpu::DeviceEntry& Lpu::entry(const std::string& id) const {
  auto it = devices_.find(id);
  if (it == devices_.end()) fail(ErrorCode::UnknownBackend, "no device '" + id + "'");
  return it->second;
}

Lpu::QueueState& Lpu::queue(const QueueHandle& h) {
  DeviceEntry& e = entry(h.device_id);
  require(h.queue_index >= 0 && h.queue_index < static_cast<int>(e.queues.size()),
          ErrorCode::InvalidConfig, "queue index out of range");
  QueueState& q = e.queues[static_cast<std::size_t>(h.queue_index)];
  require(q.owner >= 0 && q.owner == h.owner_instance, ErrorCode::InvalidConfig,
          "queue handle is not open or not owned by this instance");
  return q;
}

const Lpu::QueueState& Lpu::queue(const QueueHandle& h) const {
  return const_cast<Lpu*>(this)->queue(h);
}

std::shared_ptr<Device> Lpu::device(const std::string& device_id) const {
  std::lock_guard<std::mutex> lk(mu_);
  return entry(device_id).dev;
}

LpuCapabilities Lpu::discover(const std::string& device_id) const {
  std::lock_guard<std::mutex> lk(mu_);
  return entry(device_id).dev->capabilities();
}

QueueHandle Lpu::open_queue(const std::string& device_id, int instance_id, int depth) {
  require(instance_id >= 0, ErrorCode::InvalidConfig, "instance id must be >= 0");
  require(depth >= 1, ErrorCode::InvalidConfig, "queue depth must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  DeviceEntry& e = entry(device_id);
  for (std::size_t i = 0; i < e.queues.size(); ++i) {
    if (e.queues[i].owner >= 0) continue;
    e.queues[i] = QueueState{instance_id, depth, 0, 0.0};
    return QueueHandle{device_id, static_cast<int>(i), depth, instance_id};
  }
  fail(ErrorCode::ResourceExhausted,
       "device '" + device_id + "' has no free queue (" + std::to_string(e.queues.size()) + " in use)");
}

void Lpu::close_queue(const QueueHandle& h) {
  std::lock_guard<std::mutex> lk(mu_);
  QueueState& q = queue(h);
  q = QueueState{};
}

int Lpu::enqueue(const QueueHandle& h, std::vector<CodingOpDescriptor>& ops) {
  std::shared_ptr<Device> dev;
  std::vector<CodingOpDescriptor> accepted;
  double now = 0.0;
  {
    std::lock_guard<std::mutex> lk(mu_);
    DeviceEntry& e = entry(h.device_id);
    QueueState& q = queue(h);
    const LpuCapabilities& caps = e.dev->capabilities();
    for (const auto& op : ops) {
      if (!caps.allows(op.granularity))
        fail(ErrorCode::CapabilityMismatch, caps.name + " does not offer the " +
                                                std::string(granularity_name(op.granularity)) +
                                                " interface");
      if (op.harq.present && op.harq.location == nr::BufferLocation::DEVICE &&
          !caps.internal_harq_memory)
        fail(ErrorCode::CapabilityMismatch,
             caps.name + " has no internal HARQ memory; soft buffers must stay in host memory");
      if (op.harq.present && op.harq.location == nr::BufferLocation::HOST && op.harq.host == nullptr)
        fail(ErrorCode::InvalidConfig, "host HARQ token without a buffer");
    }
    const int free_slots = std::max(0, q.depth - q.in_flight);
    const int n = std::min<int>(free_slots, static_cast<int>(ops.size()));
    if (n == 0) return 0;
    for (int i = 0; i < n; ++i) {
      ops[static_cast<std::size_t>(i)].op_id = next_op_id_++;
      accepted.push_back(ops[static_cast<std::size_t>(i)]);
    }
    q.in_flight += n;
    now = q.now_us;
    dev = e.dev;
  }
  const int n = static_cast<int>(accepted.size());
  dev->submit(h.queue_index, h.owner_instance, std::move(accepted), now);
  return n;
}

std::vector<Completion> Lpu::dequeue(const QueueHandle& h, std::size_t max) {
  std::shared_ptr<Device> dev;
  {
    std::lock_guard<std::mutex> lk(mu_);
    queue(h);
    dev = entry(h.device_id).dev;
  }
  std::vector<Completion> out = dev->poll(h.queue_index, max);
  std::lock_guard<std::mutex> lk(mu_);
  queue(h).in_flight -= static_cast<int>(out.size());
  return out;
}

void Lpu::set_time(const QueueHandle& h, double t_us) {
  std::lock_guard<std::mutex> lk(mu_);
  queue(h).now_us = t_us;
}

double Lpu::time(const QueueHandle& h) const {
  std::lock_guard<std::mutex> lk(mu_);
  return queue(h).now_us;
}

int Lpu::in_flight(const QueueHandle& h) const {
  std::lock_guard<std::mutex> lk(mu_);
  return queue(h).in_flight;
}

bool Lpu::has_harq_buffer(const QueueHandle& h, uint64_t id) const {
  std::shared_ptr<Device> dev;
  {
    std::lock_guard<std::mutex> lk(mu_);
    queue(h);
    dev = entry(h.device_id).dev;
  }
  return dev->has_harq_buffer(h.owner_instance, id);
}

bool Lpu::virtual_time(const QueueHandle& h) const {
  std::lock_guard<std::mutex> lk(mu_);
  return entry(h.device_id).dev->virtual_time();
}

Granularity route_interface(const LpuCapabilities& caps, int num_cbs_in_tb) {
  require(num_cbs_in_tb >= 1, ErrorCode::InvalidConfig, "a TB has at least one CB");
  if (num_cbs_in_tb == 1 && caps.tb_required_when_single_cb) {
    if (caps.supports_tb_interface) return Granularity::TB;
    fail(ErrorCode::CapabilityMismatch, caps.name + " requires the TB interface it does not offer");
  }
  if (caps.supports_cb_interface) return Granularity::CB;
  if (caps.supports_tb_interface) return Granularity::TB;
  fail(ErrorCode::CapabilityMismatch, caps.name + " offers neither CB nor TB interface");
}

}  // namespace vran::lpu
