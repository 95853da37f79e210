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
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/lpu/lpu.hpp"
#include "vran/nr/ldpc_decoder.hpp"
#include "vran/nr/rate_matching.hpp"
#include "vran/nr/tbs.hpp"
#include "vran/nr/transport_block.hpp"

namespace vran::slot {

enum class Direction { UL, DL };

// FUNCTIONAL runs the coding chain; TIMING_ONLY sends the same call
// pattern without payloads and returns no outputs.
enum class CodingMode { FUNCTIONAL, TIMING_ONLY };

struct TransportBlockJob {
  int ue_id = 0;
  BitVec payload;             // DL: bits to encode, length compute_tbs(job)
  std::vector<float> llrs;    // UL: received soft values, one per coded bit
  int mcs_index = 0;
  nr::McsTable mcs_table = nr::McsTable::T1;
  int layers = 1;
  int rv = 0;                 // rv > 0 combines into the HARQ buffer of (ue_id, harq_pid)
  int harq_pid = 0;
  int prb_share = 1;
  int symbols = 12;
  int overhead = 0;

  nr::TbsInputs tbs_inputs() const { return {prb_share, symbols, layers, mcs_index, mcs_table, overhead}; }
};

struct SlotCodingRequest {
  int64_t slot_id = 0;
  Direction direction = Direction::DL;
  std::vector<TransportBlockJob> jobs;
  lpu::InterfaceGeneration generation = lpu::InterfaceGeneration::PER_SLOT;
};

struct JobResult {
  BitVec encoded;              // DL: every CB's rate-matched bits in CB order
  BitVec payload;              // UL: decoded TB payload
  std::vector<bool> cb_crc_ok; // UL: one per CB
  bool tb_crc_ok = false;      // UL
  int num_cbs = 0;
  int iterations = 0;
};

struct SlotCodingResult {
  std::vector<JobResult> jobs;
  std::vector<double> call_elapsed_us;
  double total_elapsed_us = 0.0;
  int calls_made = 0;
};

// Host-side soft buffers keyed by (ue, harq pid), one buffer per CB.
class HarqPool {
 public:
  bool contains(int ue, int pid) const { return buffers_.count({ue, pid}) != 0; }
  std::vector<nr::SoftBuffer>& at(int ue, int pid) { return buffers_[{ue, pid}]; }
  void release(int ue, int pid) { buffers_.erase({ue, pid}); }
  std::size_t size() const { return buffers_.size(); }

 private:
  std::map<std::pair<int, int>, std::vector<nr::SoftBuffer>> buffers_;
};

// What a slot call runs on: one queue of an Lpu plus the instance's HARQ
// state. In virtual time every call is stamped with the queue clock, which
// advances to each call's completion.
struct SlotExecutor {
  lpu::Lpu* lpu = nullptr;
  lpu::QueueHandle queue;
  HarqPool* harq = nullptr;
  nr::DecoderConfig decoder;
  CodingMode mode = CodingMode::FUNCTIONAL;
};

// Device-side HARQ id of a (ue, pid) pair.
uint64_t harq_token_id(int ue, int pid);

SlotCodingResult encode_slot(const SlotCodingRequest& request, SlotExecutor& exec);
SlotCodingResult decode_slot(const SlotCodingRequest& request, SlotExecutor& exec);

// Jobs for one slot: total_prbs split evenly, seeded random payloads.
std::vector<TransportBlockJob> make_jobs(int total_prbs, int n_jobs, int mcs_index, nr::McsTable table,
                                         int layers, uint64_t seed, int symbols = 12, int overhead = 0);

}  // namespace vran::slot
