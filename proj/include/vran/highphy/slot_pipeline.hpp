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

#include "vran/highphy/cell.hpp"
#include "vran/highphy/precoding.hpp"
#include "vran/slot/slot_coding.hpp"

namespace vran::highphy {

// Per-slot cost of the stages we do not implement (FFTs, channel
// estimation, equalization, demapping). Defaults put single-instance
// totals on the measured medians for the phy-test shapes on the T2 model:
// UL 1237.7 + decode 399.2 + arrival jitter, DL 256.6 + encode 138.2 +
// precoding 150.
struct StageCosts {
  double dl_other_us = 256.6;
  double ul_other_us = 1237.7;
  double modeled_precoding_us = 150.0;
};

// MEASURED runs the precoder and charges its wall time. MODELED charges
// modeled_precoding_us and skips the computation, which keeps virtual-time
// runs independent of the host.
enum class PrecodingTiming { MEASURED, MODELED };

struct PipelineConfig {
  CellConfig cell;
  StageCosts costs;
  double dl_budget_us = 1000.0;  // 2 TTIs
  double ul_budget_us = 2000.0;  // 4 TTIs
  PrecodingTiming precoding = PrecodingTiming::MEASURED;
  PrecodeMode precode_mode = PrecodeMode::workers_n(4);
  uint64_t weight_seed = 7;
};

struct SlotTimingRecord {
  int64_t slot_id = 0;
  SlotKind kind = SlotKind::D;
  double coding_us = 0.0;
  double precoding_us = 0.0;
  double other_us = 0.0;
  double total_us = 0.0;
  double budget_us = 0.0;
  bool deadline_met = false;
  int num_tbs = 0;
  int num_cbs = 0;
  // UL only; DL records report every TB as ok since the receiver is not run.
  int cbs_ok = 0;
  int tbs_ok = 0;
  int64_t ok_bits = 0;

  friend bool operator==(const SlotTimingRecord&, const SlotTimingRecord&) = default;
};

// Fills total and deadline_met from the stage fields.
void finalize(SlotTimingRecord& r);

// extra_other_us is added to the synthetic stage, e.g. arrival jitter.
// With a virtual-time queue the synthetic stage advances the queue clock
// before coding, and precoding advances it after. coded, when given,
// receives the encode result.
SlotTimingRecord run_dl_slot(const PipelineConfig& cfg, const slot::SlotCodingRequest& request,
                             slot::SlotExecutor& exec, double extra_other_us = 0.0, ThreadPool* pool = nullptr,
                             slot::SlotCodingResult* coded = nullptr);
SlotTimingRecord run_ul_slot(const PipelineConfig& cfg, const slot::SlotCodingRequest& request,
                             slot::SlotExecutor& exec, double extra_other_us = 0.0);

// One JSON object, no trailing newline.
std::string to_jsonl(const SlotTimingRecord& r);

}  // namespace vran::highphy
