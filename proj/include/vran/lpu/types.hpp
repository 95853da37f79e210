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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/nr/ldpc_decoder.hpp"
#include "vran/nr/rate_matching.hpp"
#include "vran/nr/segmentation.hpp"
#include "vran/nr/transport_block.hpp"

namespace vran::lpu {

enum class OpKind { ENCODE, DECODE };
enum class Granularity { CB, TB };
enum class InterfaceGeneration { PER_CB, PER_TB, PER_SLOT };

std::string_view op_kind_name(OpKind k);
std::string_view granularity_name(Granularity g);
std::string_view generation_name(InterfaceGeneration g);
InterfaceGeneration parse_generation(std::string_view s);
OpKind parse_op_kind(std::string_view s);  // "encode"/"decode"

struct LpuCapabilities {
  std::string name;
  bool supports_cb_interface = true;
  bool supports_tb_interface = false;
  bool tb_required_when_single_cb = false;
  bool internal_harq_memory = false;
  int num_queues = 16;
  double rated_dl_gbps = 0.0;
  double rated_ul_gbps = 0.0;

  // Throws InvalidConfig when the descriptor breaks its own invariants.
  void validate() const;
  bool allows(Granularity g) const {
    return g == Granularity::CB ? supports_cb_interface : supports_tb_interface;
  }
};

// Where the soft buffers for a decode live. Host buffers are owned by the
// caller and referenced through `host`; device buffers are addressed by id
// inside the backend.
struct HarqToken {
  bool present = false;
  nr::BufferLocation location = nr::BufferLocation::HOST;
  uint64_t id = 0;
  std::vector<nr::SoftBuffer>* host = nullptr;  // one buffer per CB of the TB
  bool combine = false;                         // false: reset before use
};

// Functional payload of one op. Absent in timing-only runs.
struct CodingWork {
  std::shared_ptr<const nr::TbShape> shape;
  int cb_index = 0;  // CB granularity only
  int rv = 0;
  nr::CodeBlock cb;                // encode, CB granularity
  BitVec tb_payload;               // encode, TB granularity
  std::vector<float> llrs;         // decode: E values (CB) or all CBs (TB)
  nr::DecoderConfig decoder;

  BitVec encoded;                  // E bits (CB) or every CB's E bits (TB)
  BitVec decoded;                  // K' bits (CB) or the TB payload (TB)
  std::vector<bool> cb_crc_ok;
  bool crc_ok = false;             // CB: CB CRC or parity; TB: TB CRC
  int iterations = 0;
};

struct CodingOpDescriptor {
  uint64_t op_id = 0;  // assigned on enqueue
  OpKind kind = OpKind::ENCODE;
  Granularity granularity = Granularity::CB;
  // Accounting tags used by timing models: which caller-level call this op
  // belongs to and whether it starts a new TB within that call.
  InterfaceGeneration generation = InterfaceGeneration::PER_SLOT;
  uint64_t call_id = 0;
  bool tb_start = true;
  int n_cb = 1;
  int64_t payload_bits = 0;
  HarqToken harq;
  std::shared_ptr<CodingWork> work;
};

enum class OpStatus { OK, FAILED };

struct Completion {
  uint64_t op_id = 0;
  OpStatus status = OpStatus::OK;
  std::string error;
  std::shared_ptr<CodingWork> work;
  double service_time_us = 0.0;   // submit to completion
  double complete_time_us = 0.0;  // device clock
};

struct QueueHandle {
  std::string device_id;
  int queue_index = -1;
  int depth = 0;
  int owner_instance = -1;

  bool valid() const { return queue_index >= 0; }
  friend bool operator==(const QueueHandle&, const QueueHandle&) = default;
};

}  // namespace vran::lpu
