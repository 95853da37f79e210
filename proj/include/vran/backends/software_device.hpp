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
#include <memory>
#include <mutex>
#include <vector>

#include "vran/common/thread_pool.hpp"
#include "vran/lpu/device.hpp"

namespace vran::backends {

// Runs ops on a worker pool and stamps each completion with the wall time
// of its burst. Results do not depend on the worker count.
std::vector<lpu::Completion> software_process(std::vector<lpu::CodingOpDescriptor> ops, ThreadPool& pool);
std::vector<lpu::Completion> software_process(std::vector<lpu::CodingOpDescriptor> ops, int worker_count);

// General-purpose-processor backend. Bursts execute inside submit; there
// is no device memory, so HARQ buffers always live on the host.
class SoftwareDevice : public lpu::Device {
 public:
  SoftwareDevice(lpu::LpuCapabilities caps, int worker_count);

  const lpu::LpuCapabilities& capabilities() const override { return caps_; }
  bool virtual_time() const override { return false; }
  void submit(int queue, int owner, std::vector<lpu::CodingOpDescriptor> ops, double now_us) override;
  std::vector<lpu::Completion> poll(int queue, std::size_t max) override;
  double now_us() const override;

  int worker_count() const { return static_cast<int>(pool_.size()); }

 private:
  lpu::LpuCapabilities caps_;
  ThreadPool pool_;
  std::mutex mu_;
  std::vector<std::deque<lpu::Completion>> done_;
  std::chrono::steady_clock::time_point epoch_;
};

}  // namespace vran::backends
