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

#include "vran/lpu/types.hpp"

#include <string>

#include "vran/common/error.hpp"

namespace vran::lpu {

std::string_view op_kind_name(OpKind k) { return k == OpKind::ENCODE ? "encode" : "decode"; }

std::string_view granularity_name(Granularity g) { return g == Granularity::CB ? "CB" : "TB"; }

std::string_view generation_name(InterfaceGeneration g) {
  switch (g) {
    case InterfaceGeneration::PER_CB: return "PER_CB";
    case InterfaceGeneration::PER_TB: return "PER_TB";
    case InterfaceGeneration::PER_SLOT: return "PER_SLOT";
  }
  return "?";
}

InterfaceGeneration parse_generation(std::string_view s) {
  if (s == "PER_CB" || s == "per_cb" || s == "cb") return InterfaceGeneration::PER_CB;
  if (s == "PER_TB" || s == "per_tb" || s == "tb") return InterfaceGeneration::PER_TB;
  if (s == "PER_SLOT" || s == "per_slot" || s == "slot") return InterfaceGeneration::PER_SLOT;
  fail(ErrorCode::InvalidConfig, "unknown interface generation '" + std::string(s) + "'");
}

OpKind parse_op_kind(std::string_view s) {
  if (s == "encode" || s == "ENCODE" || s == "dl" || s == "DL") return OpKind::ENCODE;
  if (s == "decode" || s == "DECODE" || s == "ul" || s == "UL") return OpKind::DECODE;
  fail(ErrorCode::InvalidConfig, "unknown direction '" + std::string(s) + "'");
}

void LpuCapabilities::validate() const {
  require(supports_cb_interface || supports_tb_interface, ErrorCode::InvalidConfig,
          name + ": at least one of the CB and TB interfaces is required");
  require(!tb_required_when_single_cb || supports_tb_interface, ErrorCode::InvalidConfig,
          name + ": TB-required-for-single-CB needs the TB interface");
  require(num_queues >= 1, ErrorCode::InvalidConfig, name + ": num_queues must be >= 1");
  require(rated_dl_gbps >= 0 && rated_ul_gbps >= 0, ErrorCode::InvalidConfig,
          name + ": rated throughput must be >= 0");
}

}  // namespace vran::lpu
