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

#include "vran/highphy/slot_pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include <json.hpp>

#include "vran/common/error.hpp"

namespace vran::highphy {

namespace {

void advance(slot::SlotExecutor& exec, double us) {
  if (exec.lpu != nullptr && exec.lpu->virtual_time(exec.queue))
    exec.lpu->set_time(exec.queue, exec.lpu->time(exec.queue) + us);
}

double measured_precoding(const PipelineConfig& cfg, const slot::SlotCodingRequest& request,
                          const slot::SlotCodingResult& coded, ThreadPool* pool) {
  int layers = 1;
  for (const auto& j : request.jobs) layers = std::max(layers, j.layers);
  std::vector<uint8_t> bits;
  for (const auto& j : coded.jobs) bits.insert(bits.end(), j.encoded.begin(), j.encoded.end());

  std::mt19937_64 rng(cfg.weight_seed);
  const ComplexMatrix w = ComplexMatrix::random(cfg.cell.tx_antennas, layers, rng);
  const auto t0 = std::chrono::steady_clock::now();
  ResourceGrid grid(layers, cfg.cell.prbs);
  fill_qpsk(grid, bits);
  const ResourceGrid out = precode_and_map(grid, w, cfg.precode_mode, pool);
  const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  require(out.all_finite(), ErrorCode::InvalidConfig, "precoding produced non-finite values");
  return us;
}

void count_tbs(SlotTimingRecord& r, const slot::SlotCodingRequest& request, const slot::SlotCodingResult& coded) {
  r.num_tbs = static_cast<int>(request.jobs.size());
  for (const auto& j : coded.jobs) r.num_cbs += j.num_cbs;
}

}  // namespace

void finalize(SlotTimingRecord& r) {
  r.total_us = r.coding_us + r.precoding_us + r.other_us;
  r.deadline_met = r.total_us <= r.budget_us;
}

SlotTimingRecord run_dl_slot(const PipelineConfig& cfg, const slot::SlotCodingRequest& request,
                             slot::SlotExecutor& exec, double extra_other_us, ThreadPool* pool,
                             slot::SlotCodingResult* coded_out) {
  const SlotKind kind = tdd_slot_kind(request.slot_id, cfg.cell.tdd_pattern);
  require(kind != SlotKind::U, ErrorCode::WrongSlotKind, "run_dl_slot on an uplink slot");
  require(request.direction == slot::Direction::DL, ErrorCode::InvalidConfig, "run_dl_slot needs a DL request");

  SlotTimingRecord r;
  r.slot_id = request.slot_id;
  r.kind = kind;
  r.budget_us = cfg.dl_budget_us;
  r.other_us = cfg.costs.dl_other_us + extra_other_us;
  advance(exec, r.other_us);

  const slot::SlotCodingResult coded = slot::encode_slot(request, exec);
  r.coding_us = coded.total_elapsed_us;
  count_tbs(r, request, coded);
  r.cbs_ok = r.num_cbs;
  r.tbs_ok = r.num_tbs;
  for (const auto& j : request.jobs) r.ok_bits += nr::compute_tbs(j.tbs_inputs());

  r.precoding_us = cfg.precoding == PrecodingTiming::MODELED ? cfg.costs.modeled_precoding_us
                                                             : measured_precoding(cfg, request, coded, pool);
  advance(exec, r.precoding_us);
  finalize(r);
  if (coded_out != nullptr) *coded_out = coded;
  return r;
}

SlotTimingRecord run_ul_slot(const PipelineConfig& cfg, const slot::SlotCodingRequest& request,
                             slot::SlotExecutor& exec, double extra_other_us) {
  const SlotKind kind = tdd_slot_kind(request.slot_id, cfg.cell.tdd_pattern);
  require(kind == SlotKind::U, ErrorCode::WrongSlotKind,
          std::string("run_ul_slot on a ") + slot_kind_char(kind) + " slot");
  require(request.direction == slot::Direction::UL, ErrorCode::InvalidConfig, "run_ul_slot needs a UL request");

  SlotTimingRecord r;
  r.slot_id = request.slot_id;
  r.kind = kind;
  r.budget_us = cfg.ul_budget_us;
  r.other_us = cfg.costs.ul_other_us + extra_other_us;
  advance(exec, r.other_us);

  const slot::SlotCodingResult coded = slot::decode_slot(request, exec);
  r.coding_us = coded.total_elapsed_us;
  count_tbs(r, request, coded);
  for (std::size_t i = 0; i < coded.jobs.size(); ++i) {
    const auto& j = coded.jobs[i];
    r.cbs_ok += static_cast<int>(std::count(j.cb_crc_ok.begin(), j.cb_crc_ok.end(), true));
    if (j.tb_crc_ok) {
      ++r.tbs_ok;
      r.ok_bits += nr::compute_tbs(request.jobs[i].tbs_inputs());
    }
  }
  finalize(r);
  return r;
}

std::string to_jsonl(const SlotTimingRecord& r) {
  nlohmann::ordered_json j;
  j["slot_id"] = r.slot_id;
  j["kind"] = std::string(1, slot_kind_char(r.kind));
  j["coding_us"] = r.coding_us;
  j["precoding_us"] = r.precoding_us;
  j["other_us"] = r.other_us;
  j["total_us"] = r.total_us;
  j["budget_us"] = r.budget_us;
  j["deadline_met"] = r.deadline_met;
  j["num_tbs"] = r.num_tbs;
  j["num_cbs"] = r.num_cbs;
  j["cbs_ok"] = r.cbs_ok;
  j["tbs_ok"] = r.tbs_ok;
  j["ok_bits"] = r.ok_bits;
  return j.dump();
}

}  // namespace vran::highphy
