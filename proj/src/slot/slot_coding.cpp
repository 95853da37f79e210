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

#include "vran/slot/slot_coding.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>

#include "vran/backends/calibration.hpp"
#include "vran/common/error.hpp"
#include "vran/lpu/call_plan.hpp"
#include "vran/nr/segmentation.hpp"

namespace vran::slot {

namespace {

using lpu::Granularity;
using lpu::OpKind;

constexpr int kMaxSlotPrbs = 273;

// Call ids only need to differ between consecutive calls on a queue.
std::atomic<uint64_t> g_next_call_id{1};

struct PreparedJob {
  std::shared_ptr<const nr::TbShape> shape;
  Granularity granularity = Granularity::CB;
  std::vector<nr::CodeBlock> cbs;       // DL functional
  std::vector<std::size_t> llr_offset;  // UL functional, per CB
  std::vector<int64_t> cb_bits;
  lpu::HarqToken harq;
};

struct IssuedOp {
  int job = 0;
  int cb = 0;  // -1 for TB ops
  std::shared_ptr<lpu::CodingWork> work;
};

void validate(const SlotCodingRequest& req, const SlotExecutor& exec, Direction want) {
  require(exec.lpu != nullptr && exec.queue.valid(), ErrorCode::InvalidConfig, "slot executor has no queue");
  require(req.direction == want, ErrorCode::InvalidConfig,
          want == Direction::DL ? "encode_slot needs a DL request" : "decode_slot needs a UL request");
  require(!req.jobs.empty(), ErrorCode::InvalidConfig, "a processed slot needs at least one job");
  int prbs = 0;
  for (const TransportBlockJob& j : req.jobs) {
    require(j.prb_share >= 1, ErrorCode::InvalidConfig, "prb_share must be >= 1");
    require(j.rv >= 0 && j.rv <= 3, ErrorCode::InvalidConfig, "rv must be 0..3");
    prbs += j.prb_share;
  }
  require(prbs <= kMaxSlotPrbs, ErrorCode::InvalidConfig, "jobs use more than 273 PRBs");
}

lpu::HarqToken harq_for(const TransportBlockJob& j, const lpu::LpuCapabilities& caps, SlotExecutor& exec) {
  lpu::HarqToken t;
  t.present = true;
  t.combine = j.rv != 0;
  if (caps.internal_harq_memory) {
    t.location = nr::BufferLocation::DEVICE;
    t.id = harq_token_id(j.ue_id, j.harq_pid);
    if (t.combine && !exec.lpu->has_harq_buffer(exec.queue, t.id))
      fail(ErrorCode::HarqBufferMissing, "no device soft buffer for ue " + std::to_string(j.ue_id) +
                                             " pid " + std::to_string(j.harq_pid));
    return t;
  }
  if (exec.harq == nullptr) {
    require(!t.combine, ErrorCode::HarqBufferMissing, "combining requested without a HARQ pool");
    t.present = false;
    return t;
  }
  if (t.combine && !exec.harq->contains(j.ue_id, j.harq_pid))
    fail(ErrorCode::HarqBufferMissing, "no host soft buffer for ue " + std::to_string(j.ue_id) + " pid " +
                                           std::to_string(j.harq_pid));
  t.location = nr::BufferLocation::HOST;
  t.host = &exec.harq->at(j.ue_id, j.harq_pid);
  return t;
}

// Enqueues a call (in as many bursts as the queue depth allows) and waits
// for all of it. Returns the call's elapsed time.
double run_call(std::vector<lpu::CodingOpDescriptor> ops, SlotExecutor& exec) {
  lpu::Lpu& l = *exec.lpu;
  const bool virt = l.virtual_time(exec.queue);
  const double t0 = l.time(exec.queue);
  const auto w0 = std::chrono::steady_clock::now();
  const std::size_t total = ops.size();
  std::size_t got = 0;
  double last_complete = t0;

  auto drain = [&] {
    for (const lpu::Completion& c : l.dequeue(exec.queue, total)) {
      ++got;
      last_complete = std::max(last_complete, c.complete_time_us);
      if (c.status != lpu::OpStatus::OK)
        fail(ErrorCode::BackendUnavailable, "coding op " + std::to_string(c.op_id) + " failed: " + c.error);
    }
  };

  while (!ops.empty()) {
    int n = 0;
    try {
      n = l.enqueue(exec.queue, ops);
    } catch (const Error& e) {
      fail(ErrorCode::BackendUnavailable, e.what());
    }
    ops.erase(ops.begin(), ops.begin() + n);
    if (n == 0) drain();
  }
  while (got < total) drain();

  if (virt) {
    l.set_time(exec.queue, last_complete);
    return last_complete - t0;
  }
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - w0).count();
}

SlotCodingResult run_slot(const SlotCodingRequest& req, SlotExecutor& exec, OpKind kind) {
  validate(req, exec, kind == OpKind::ENCODE ? Direction::DL : Direction::UL);
  const bool functional = exec.mode == CodingMode::FUNCTIONAL;
  const lpu::LpuCapabilities caps = exec.lpu->discover(exec.queue.device_id);

  std::vector<PreparedJob> prep(req.jobs.size());
  std::vector<int> cbs_per_tb;
  for (std::size_t i = 0; i < req.jobs.size(); ++i) {
    const TransportBlockJob& j = req.jobs[i];
    PreparedJob& p = prep[i];
    p.shape = std::make_shared<nr::TbShape>(nr::make_tb_shape(j.tbs_inputs()));
    const nr::TbShape& s = *p.shape;
    p.granularity = lpu::route_interface(caps, s.plan.num_cbs);
    p.cb_bits = nr::cb_payload_share(s.plan);
    if (kind == OpKind::DECODE) p.harq = harq_for(j, caps, exec);
    if (functional && kind == OpKind::ENCODE) {
      require(static_cast<int64_t>(j.payload.size()) == s.tbs, ErrorCode::InvalidConfig,
              "job payload length " + std::to_string(j.payload.size()) + " != TBS " + std::to_string(s.tbs));
      if (p.granularity == Granularity::CB) p.cbs = nr::build_code_blocks(j.payload, s.plan);
    }
    if (functional && kind == OpKind::DECODE) {
      require(static_cast<int64_t>(j.llrs.size()) == s.total_e(), ErrorCode::InvalidConfig,
              "job carries " + std::to_string(j.llrs.size()) + " LLRs, expected " + std::to_string(s.total_e()));
      std::size_t off = 0;
      for (int e : s.e) {
        p.llr_offset.push_back(off);
        off += static_cast<std::size_t>(e);
      }
    }
    cbs_per_tb.push_back(s.plan.num_cbs);
  }

  SlotCodingResult res;
  std::vector<IssuedOp> issued;
  for (const auto& call : lpu::group_calls(kind, req.generation, cbs_per_tb)) {
    const uint64_t call_id = g_next_call_id.fetch_add(1);
    std::vector<lpu::CodingOpDescriptor> ops;
    for (const lpu::CbRef& r : call) {
      const TransportBlockJob& j = req.jobs[static_cast<std::size_t>(r.tb)];
      const PreparedJob& p = prep[static_cast<std::size_t>(r.tb)];
      const nr::TbShape& s = *p.shape;
      const bool tb_op = p.granularity == Granularity::TB;
      if (tb_op && r.cb != 0) continue;  // the TB op went out with CB 0

      lpu::CodingOpDescriptor op;
      op.kind = kind;
      op.granularity = p.granularity;
      op.generation = req.generation;
      op.call_id = call_id;
      op.tb_start = r.cb == 0;
      op.n_cb = tb_op ? s.plan.num_cbs : 1;
      op.payload_bits = tb_op ? s.tbs : p.cb_bits[static_cast<std::size_t>(r.cb)];
      op.harq = p.harq;
      if (functional) {
        auto w = std::make_shared<lpu::CodingWork>();
        w->shape = p.shape;
        w->cb_index = tb_op ? 0 : r.cb;
        w->rv = j.rv;
        w->decoder = exec.decoder;
        if (kind == OpKind::ENCODE) {
          if (tb_op) w->tb_payload = j.payload;
          else w->cb = p.cbs[static_cast<std::size_t>(r.cb)];
        } else if (tb_op) {
          w->llrs = j.llrs;
        } else {
          const std::size_t off = p.llr_offset[static_cast<std::size_t>(r.cb)];
          const auto e = static_cast<std::size_t>(s.e[static_cast<std::size_t>(r.cb)]);
          w->llrs.assign(j.llrs.begin() + static_cast<std::ptrdiff_t>(off),
                         j.llrs.begin() + static_cast<std::ptrdiff_t>(off + e));
        }
        op.work = w;
        issued.push_back({r.tb, tb_op ? -1 : r.cb, w});
      }
      ops.push_back(std::move(op));
    }
    if (ops.empty()) continue;
    res.call_elapsed_us.push_back(run_call(std::move(ops), exec));
    ++res.calls_made;
  }
  res.total_elapsed_us = std::accumulate(res.call_elapsed_us.begin(), res.call_elapsed_us.end(), 0.0);

  res.jobs.resize(req.jobs.size());
  for (std::size_t i = 0; i < req.jobs.size(); ++i) res.jobs[i].num_cbs = prep[i].shape->plan.num_cbs;
  if (!functional) return res;

  // Issued ops are in slot order, so CB outputs arrive in CB order per job.
  std::vector<std::vector<BitVec>> cb_out(req.jobs.size());
  for (const IssuedOp& o : issued) {
    JobResult& jr = res.jobs[static_cast<std::size_t>(o.job)];
    const lpu::CodingWork& w = *o.work;
    jr.iterations = std::max(jr.iterations, w.iterations);
    if (kind == OpKind::ENCODE) {
      jr.encoded.insert(jr.encoded.end(), w.encoded.begin(), w.encoded.end());
    } else if (o.cb < 0) {
      jr.payload = w.decoded;
      jr.tb_crc_ok = w.crc_ok;
      jr.cb_crc_ok = w.cb_crc_ok;
    } else {
      cb_out[static_cast<std::size_t>(o.job)].push_back(w.decoded);
      jr.cb_crc_ok.push_back(w.crc_ok);
    }
  }
  if (kind == OpKind::DECODE)
    for (std::size_t i = 0; i < req.jobs.size(); ++i) {
      if (prep[i].granularity != Granularity::CB) continue;
      const nr::SegmentationPlan& plan = prep[i].shape->plan;
      nr::Desegmented d = nr::desegment(cb_out[i], plan);
      JobResult& jr = res.jobs[i];
      jr.payload = std::move(d.payload);
      jr.tb_crc_ok = d.tb_crc_ok;
      if (plan.num_cbs == 1) jr.cb_crc_ok = {d.tb_crc_ok};
    }
  return res;
}

}  // namespace

uint64_t harq_token_id(int ue, int pid) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(ue)) << 32) | static_cast<uint32_t>(pid);
}

SlotCodingResult encode_slot(const SlotCodingRequest& request, SlotExecutor& exec) {
  return run_slot(request, exec, OpKind::ENCODE);
}

SlotCodingResult decode_slot(const SlotCodingRequest& request, SlotExecutor& exec) {
  return run_slot(request, exec, OpKind::DECODE);
}

std::vector<TransportBlockJob> make_jobs(int total_prbs, int n_jobs, int mcs_index, nr::McsTable table,
                                         int layers, uint64_t seed, int symbols, int overhead) {
  std::vector<TransportBlockJob> jobs;
  const std::vector<int> shares = backends::split_prbs(total_prbs, n_jobs);
  for (int i = 0; i < n_jobs; ++i) {
    TransportBlockJob j;
    j.ue_id = i;
    j.mcs_index = mcs_index;
    j.mcs_table = table;
    j.layers = layers;
    j.prb_share = shares[static_cast<std::size_t>(i)];
    j.symbols = symbols;
    j.overhead = overhead;
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<uint64_t>(i));
    j.payload = random_bits(static_cast<std::size_t>(nr::compute_tbs(j.tbs_inputs())), rng);
    jobs.push_back(std::move(j));
  }
  return jobs;
}

}  // namespace vran::slot
