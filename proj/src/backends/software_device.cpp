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

#include "vran/backends/software_device.hpp"

#include "vran/backends/coding_kernel.hpp"
#include "vran/common/error.hpp"

namespace vran::backends {

std::vector<lpu::Completion> software_process(std::vector<lpu::CodingOpDescriptor> ops, ThreadPool& pool) {
  std::vector<lpu::Completion> out(ops.size());
  if (ops.empty()) return out;
  const auto t0 = std::chrono::steady_clock::now();
  pool.parallel_for(ops.size(), [&](std::size_t i) {
    lpu::Completion& c = out[i];
    c.op_id = ops[i].op_id;
    c.work = ops[i].work;
    try {
      execute_op(ops[i]);
    } catch (const std::exception& e) {
      c.status = lpu::OpStatus::FAILED;
      c.error = e.what();
    }
  });
  const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  for (lpu::Completion& c : out) c.service_time_us = us;
  return out;
}

std::vector<lpu::Completion> software_process(std::vector<lpu::CodingOpDescriptor> ops, int worker_count) {
  require(worker_count >= 1, ErrorCode::InvalidConfig, "worker_count must be >= 1");
  if (ops.empty()) return {};
  ThreadPool pool(static_cast<std::size_t>(worker_count));
  return software_process(std::move(ops), pool);
}

SoftwareDevice::SoftwareDevice(lpu::LpuCapabilities caps, int worker_count)
    : caps_(std::move(caps)),
      pool_(static_cast<std::size_t>(std::max(1, worker_count))),
      epoch_(std::chrono::steady_clock::now()) {
  require(worker_count >= 1, ErrorCode::InvalidConfig, "worker_count must be >= 1");
  require(!caps_.internal_harq_memory, ErrorCode::InvalidConfig, "the software backend has no device memory");
  caps_.validate();
  done_.resize(static_cast<std::size_t>(caps_.num_queues));
}

double SoftwareDevice::now_us() const {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - epoch_).count();
}

void SoftwareDevice::submit(int queue, int, std::vector<lpu::CodingOpDescriptor> ops, double) {
  require(queue >= 0 && queue < static_cast<int>(done_.size()), ErrorCode::InvalidConfig,
          "queue index out of range");
  std::vector<lpu::Completion> out = software_process(std::move(ops), pool_);
  const double t = now_us();
  std::lock_guard<std::mutex> lk(mu_);
  for (lpu::Completion& c : out) {
    c.complete_time_us = t;
    done_[static_cast<std::size_t>(queue)].push_back(std::move(c));
  }
}

std::vector<lpu::Completion> SoftwareDevice::poll(int queue, std::size_t max) {
  require(queue >= 0 && queue < static_cast<int>(done_.size()), ErrorCode::InvalidConfig,
          "queue index out of range");
  std::lock_guard<std::mutex> lk(mu_);
  auto& q = done_[static_cast<std::size_t>(queue)];
  std::vector<lpu::Completion> out;
  while (!q.empty() && out.size() < max) {
    out.push_back(std::move(q.front()));
    q.pop_front();
  }
  return out;
}

}  // namespace vran::backends
