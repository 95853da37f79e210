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

#include <span>
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/nr/rate_matching.hpp"
#include "vran/nr/segmentation.hpp"

namespace vran::nr {

enum class LlrMode { FLOAT, QUANTIZED_8BIT };

struct DecoderConfig {
  int max_iters = 8;
  float alpha = 0.75f;
  LlrMode mode = LlrMode::FLOAT;
};

struct CbDecodeResult {
  BitVec bits;              // K' decoded bits (payload + CB CRC when present)
  bool parity_ok = false;   // zero syndrome over the active rows
  bool crc_ok = false;      // CB CRC when check_cb_crc, else parity_ok
  int iterations_used = 0;
};

// Flooding normalized min-sum on one circular buffer. Only check rows whose
// parity column received soft information take part.
CbDecodeResult ldpc_decode_cb(const SoftBuffer& buffer, const CbLayout& cb, bool check_cb_crc,
                              const DecoderConfig& cfg = {});

struct TbDecodeResult {
  BitVec payload;
  bool crc_ok = false;            // TB CRC
  std::vector<bool> cb_crc_ok;    // CRC24B per CB when C > 1, else the TB CRC
  int iterations_used = 0;        // max over CBs
};

TbDecodeResult ldpc_decode(std::span<const SoftBuffer> buffers, const SegmentationPlan& plan,
                           const DecoderConfig& cfg = {});

}  // namespace vran::nr
