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

#include "vran/backends/emulated_device.hpp"

#include <algorithm>
#include <cmath>

#include "vran/backends/coding_kernel.hpp"
#include "vran/common/error.hpp"
#include "vran/lpu/call_plan.hpp"

namespace vran::backends {

namespace {

// Unit bookkeeping older than this behind the newest arrival cannot affect
// occupancy queries any more.
constexpr double kForgetHorizonUs = 20000.0;

}  // namespace

EmulatedDevice::EmulatedDevice(EmulatedDeviceConfig cfg)
    : cfg_(std::move(cfg)), epoch_(std::chrono::steady_clock::now()) {
  cfg_.caps.validate();
  cfg_.model_encode.validate();
  cfg_.model_decode.validate();
  queues_.resize(static_cast<std::size_t>(cfg_.caps.num_queues));
}

double EmulatedDevice::now_us() const {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - epoch_).count();
}

EmulatedDevice::QueueState& EmulatedDevice::queue_state(int q) {
  require(q >= 0 && q < static_cast<int>(queues_.size()), ErrorCode::InvalidConfig, "queue index out of range");
  return queues_[static_cast<std::size_t>(q)];
}

ServerPool& EmulatedDevice::pool_for(int owner) {
  const int key = cfg_.per_owner_servers ? owner : -1;
  auto it = pools_.find(key);
  if (it == pools_.end())
    it = pools_.emplace(key, ServerPool(std::max(cfg_.model_encode.parallel_servers,
                                                 cfg_.model_decode.parallel_servers)))
             .first;
  return it->second;
}

std::mt19937_64& EmulatedDevice::rng_for(int owner) {
  auto it = rngs_.find(owner);
  if (it == rngs_.end()) {
    std::seed_seq seq{static_cast<uint32_t>(cfg_.model_decode.seed),
                      static_cast<uint32_t>(cfg_.model_decode.seed >> 32),
                      static_cast<uint32_t>(owner), 0x5eedu};
    it = rngs_.emplace(owner, std::mt19937_64(seq)).first;
  }
  return it->second;
}

std::vector<nr::SoftBuffer>* EmulatedDevice::device_harq(int owner, const lpu::HarqToken& t) {
  std::lock_guard<std::mutex> lk(mu_);
  return &harq_[{owner, t.id}];
}

bool EmulatedDevice::has_harq_buffer(int owner, uint64_t id) const {
  std::lock_guard<std::mutex> lk(mu_);
  return harq_.count({owner, id}) != 0;
}

uint64_t EmulatedDevice::contended_bursts() const {
  std::lock_guard<std::mutex> lk(mu_);
  return contended_;
}

void EmulatedDevice::submit(int queue, int owner, std::vector<lpu::CodingOpDescriptor> ops, double now) {
  if (ops.empty()) return;
  double complete = 0.0;
  double arrival_clock = now;
  {
    std::lock_guard<std::mutex> lk(mu_);
    QueueState& q = queue_state(queue);
    if (cfg_.clock == ClockMode::WALL) arrival_clock = now_us();

    const ServiceTimeModel& lead =
        ops.front().kind == lpu::OpKind::ENCODE ? cfg_.model_encode : cfg_.model_decode;
    double total = 0.0;
    double engine = 0.0;
    int units = 0;
    for (const lpu::CodingOpDescriptor& op : ops) {
      const bool enc = op.kind == lpu::OpKind::ENCODE;
      const ServiceTimeModel& m = enc ? cfg_.model_encode : cfg_.model_decode;
      const CostCoefficients& c = m.coefficients(op.generation);
      double cost = c.per_cb_us * op.n_cb + c.per_kbit_us * static_cast<double>(op.payload_bits) / 1000.0;
      if (op.tb_start) cost += c.per_tb_us;
      if (!q.any_call || op.call_id != q.last_call_id) cost += c.fixed_per_call_us;
      q.any_call = true;
      q.last_call_id = op.call_id;
      total += cost;
      const double rated = enc ? cfg_.caps.rated_dl_gbps : cfg_.caps.rated_ul_gbps;
      engine += rated > 0 ? static_cast<double>(op.payload_bits) / (rated * 1000.0) : cost;
      units += std::max(1, op.n_cb);
    }
    engine = std::min(engine, total);

    const double arrival = std::max(arrival_clock, q.busy_until);
    ServerPool& pool = pool_for(owner);
    const int servers = lead.parallel_servers;
    const bool contended = !cfg_.per_owner_servers && pool.occupancy(arrival, owner) > servers;

    double jitter = 0.0;
    if (lead.jitter.kind == JitterKind::LOGNORMAL && lead.jitter.scale_us > 0) {
      std::lognormal_distribution<double> dist(std::log(lead.jitter.scale_us), lead.jitter.sigma);
      jitter = dist(rng_for(owner));  // drawn every burst so streams stay aligned
    }
    if (contended) ++contended_;
    if (!contended) jitter = 0.0;

    const int rounds = (units + servers - 1) / servers;
    const double engine_end = pool.schedule(owner, arrival, units, engine / rounds);
    complete = engine_end + (total - engine) + jitter;
    q.busy_until = complete;

    latest_arrival_ = std::max(latest_arrival_, arrival);
    if (++bursts_ % 512 == 0)
      for (auto& [k, p] : pools_) p.forget_before(latest_arrival_ - kForgetHorizonUs);
  }

  std::vector<lpu::Completion> done;
  done.reserve(ops.size());
  const DeviceHarqResolver resolver = [this, owner](const lpu::HarqToken& t, int) {
    return device_harq(owner, t);
  };
  for (lpu::CodingOpDescriptor& op : ops) {
    lpu::Completion c;
    c.op_id = op.op_id;
    c.work = op.work;
    c.complete_time_us = complete;
    c.service_time_us = complete - arrival_clock;
    if (cfg_.functional) {
      try {
        execute_op(op, resolver);
      } catch (const std::exception& e) {
        c.status = lpu::OpStatus::FAILED;
        c.error = e.what();
      }
    } else if (op.harq.present && op.harq.location == nr::BufferLocation::DEVICE) {
      device_harq(owner, op.harq);
    }
    done.push_back(std::move(c));
  }
  std::lock_guard<std::mutex> lk(mu_);
  QueueState& q = queue_state(queue);
  for (auto& c : done) q.done.push_back(std::move(c));
}

std::vector<lpu::Completion> EmulatedDevice::poll(int queue, std::size_t max) {
  std::lock_guard<std::mutex> lk(mu_);
  QueueState& q = queue_state(queue);
  std::vector<lpu::Completion> out;
  const double now = cfg_.clock == ClockMode::WALL ? now_us() : 0.0;
  while (!q.done.empty() && out.size() < max) {
    if (cfg_.clock == ClockMode::WALL && q.done.front().complete_time_us > now) break;
    out.push_back(std::move(q.done.front()));
    q.done.pop_front();
  }
  return out;
}

double emulated_service_time(const EmulatedDevice& device, const RequestShape& shape) {
  require(shape.n_tb >= 1 && shape.n_cb >= 0 && shape.total_bits >= 0, ErrorCode::InvalidConfig,
          "request shape needs n_tb >= 1 and non-negative sizes");
  if (shape.n_cb == 0) return 0.0;
  require(shape.n_cb >= shape.n_tb, ErrorCode::InvalidConfig, "every TB has at least one CB");

  EmulatedDeviceConfig cfg = device.config();
  cfg.clock = ClockMode::VIRTUAL;
  cfg.functional = false;
  EmulatedDevice idle(cfg);

  std::vector<int> cbs(static_cast<std::size_t>(shape.n_tb), shape.n_cb / shape.n_tb);
  for (int i = 0; i < shape.n_cb % shape.n_tb; ++i) ++cbs[static_cast<std::size_t>(i)];
  // Bits spread evenly over CBs; the remainder goes to the first CBs.
  const int64_t per_cb = shape.total_bits / shape.n_cb;
  int64_t extra = shape.total_bits % shape.n_cb;

  double t = 0.0;
  uint64_t call_id = 0;
  for (const auto& call : lpu::group_calls(shape.kind, shape.generation, cbs)) {
    std::vector<lpu::CodingOpDescriptor> ops;
    for (const lpu::CbRef& r : call) {
      lpu::CodingOpDescriptor op;
      op.kind = shape.kind;
      op.granularity = lpu::Granularity::CB;
      op.generation = shape.generation;
      op.call_id = call_id;
      op.tb_start = r.cb == 0;
      op.n_cb = 1;
      op.payload_bits = per_cb + (extra > 0 ? 1 : 0);
      if (extra > 0) --extra;
      ops.push_back(std::move(op));
    }
    ++call_id;
    idle.submit(0, 0, std::move(ops), t);
    for (const lpu::Completion& c : idle.poll(0, call.size())) t = std::max(t, c.complete_time_us);
  }
  return t;
}

}  // namespace vran::backends
