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
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/nr/base_graph.hpp"
#include "vran/nr/crc.hpp"

namespace vran::nr {

struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Geometry of one code block: everything rate matching and decoding need.
struct CbLayout {
  BaseGraphId bg = BaseGraphId::BG1;
  int z = 0;
  int k_prime = 0;  // payload + CB CRC bits (without filler)

  int k() const { return (bg == BaseGraphId::BG1 ? 22 : 10) * z; }
  int n() const { return (bg == BaseGraphId::BG1 ? 66 : 50) * z; }
  int filler() const { return k() - k_prime; }
  // Filler positions in the rate-matching circular buffer (d indexing).
  int filler_begin() const { return k_prime - 2 * z; }
  int filler_end() const { return k() - 2 * z; }
};

struct SegmentationPlan {
  int64_t tb_size_bits = 0;  // A, TB payload before the TB CRC
  int tb_crc_bits = 0;       // 16 or 24
  int num_cbs = 1;           // C
  BaseGraphId base_graph = BaseGraphId::BG1;
  int lifting_size = 0;
  int k_prime = 0;
  int filler_per_cb = 0;
  bool cb_crc_present = false;
  int kb = 0;
  // Zero for every TBS the standard can produce. Arbitrary sizes whose
  // B' is not a multiple of C get this many leading zero bits in CB 0.
  int padding_bits = 0;

  CrcKind tb_crc_kind() const { return tb_crc_bits == 16 ? CrcKind::CRC16 : CrcKind::CRC24A; }
  int cb_crc_bits() const { return cb_crc_present ? 24 : 0; }
  int k() const { return (base_graph == BaseGraphId::BG1 ? 22 : 10) * lifting_size; }
  CbLayout layout() const { return {base_graph, lifting_size, k_prime}; }
  // Payload bits carried by CB r in the TB bit stream (A + TB CRC + padding split).
  int cb_data_bits() const { return k_prime - cb_crc_bits(); }
};

BaseGraphId select_base_graph(int64_t tb_size_bits, Rational code_rate);

SegmentationPlan segment_tb(int64_t tb_size_bits, Rational code_rate);

struct CodeBlock {
  BitVec bits;  // K bits: payload, CB CRC when present, then zero filler
  int index = 0;
  int lifting_size = 0;
  BaseGraphId base_graph = BaseGraphId::BG1;
  int filler_count = 0;
};

// Attaches the TB CRC, splits, attaches CB CRCs and appends filler.
std::vector<CodeBlock> build_code_blocks(BitSpan tb_payload, const SegmentationPlan& plan);

// Inverse of build_code_blocks for decoded CB payloads (k_prime bits each).
// Returns the TB payload and whether the TB CRC verifies.
struct Desegmented {
  BitVec payload;
  bool tb_crc_ok = false;
};
Desegmented desegment(const std::vector<BitVec>& cb_kprime_bits, const SegmentationPlan& plan);

// Payload bits attributed to each CB for accounting: an integer split of A.
std::vector<int64_t> cb_payload_share(const SegmentationPlan& plan);

}  // namespace vran::nr
