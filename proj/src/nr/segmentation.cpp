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

#include "vran/nr/segmentation.hpp"

#include <string>

#include "vran/common/error.hpp"

namespace vran::nr {

namespace {

bool rate_le(Rational r, int64_t num, int64_t den) { return r.num * den <= num * r.den; }

}  // namespace

BaseGraphId select_base_graph(int64_t a, Rational r) {
  if (a <= 292 || (a <= 3824 && rate_le(r, 67, 100)) || rate_le(r, 1, 4)) return BaseGraphId::BG2;
  return BaseGraphId::BG1;
}

SegmentationPlan segment_tb(int64_t a, Rational r) {
  require(a >= 1, ErrorCode::InvalidConfig, "TB size must be >= 1 bit");
  require(r.num > 0 && r.den > 0 && r.num <= r.den, ErrorCode::InvalidConfig,
          "code rate must be in (0, 1]");
  SegmentationPlan p;
  p.tb_size_bits = a;
  p.tb_crc_bits = a > 3824 ? 24 : 16;
  p.base_graph = select_base_graph(a, r);
  const int64_t b = a + p.tb_crc_bits;
  const int64_t kcb = p.base_graph == BaseGraphId::BG1 ? 8448 : 3840;

  int64_t c = 1;
  int64_t b_prime = b;
  if (b > kcb) {
    c = ceil_div(b, kcb - 24);
    b_prime = b + c * 24;
  }
  const int64_t k_prime = ceil_div(b_prime, c);
  p.num_cbs = static_cast<int>(c);
  p.cb_crc_present = c > 1;
  p.k_prime = static_cast<int>(k_prime);
  p.padding_bits = static_cast<int>(k_prime * c - b_prime);

  if (p.base_graph == BaseGraphId::BG1) {
    p.kb = 22;
  } else if (b > 640) {
    p.kb = 10;
  } else if (b > 560) {
    p.kb = 9;
  } else if (b > 192) {
    p.kb = 8;
  } else {
    p.kb = 6;
  }
  for (int z : lifting_sizes()) {
    if (static_cast<int64_t>(p.kb) * z >= k_prime) {
      p.lifting_size = z;
      break;
    }
  }
  require(p.lifting_size > 0, ErrorCode::UnsupportedConfig,
          "no lifting size for K'=" + std::to_string(k_prime));
  p.filler_per_cb = p.k() - p.k_prime;
  return p;
}

std::vector<CodeBlock> build_code_blocks(BitSpan tb_payload, const SegmentationPlan& plan) {
  require(static_cast<int64_t>(tb_payload.size()) == plan.tb_size_bits, ErrorCode::InvalidConfig,
          "payload length does not match the segmentation plan");
  BitVec stream(static_cast<std::size_t>(plan.padding_bits), 0);
  stream.insert(stream.end(), tb_payload.begin(), tb_payload.end());
  {
    const BitVec crc = crc_compute(tb_payload, plan.tb_crc_kind());
    stream.insert(stream.end(), crc.begin(), crc.end());
  }
  const auto data = static_cast<std::size_t>(plan.cb_data_bits());
  const auto k = static_cast<std::size_t>(plan.k());
  std::vector<CodeBlock> cbs(static_cast<std::size_t>(plan.num_cbs));
  for (std::size_t r = 0; r < cbs.size(); ++r) {
    CodeBlock& cb = cbs[r];
    cb.index = static_cast<int>(r);
    cb.lifting_size = plan.lifting_size;
    cb.base_graph = plan.base_graph;
    cb.filler_count = plan.filler_per_cb;
    cb.bits.assign(stream.begin() + static_cast<std::ptrdiff_t>(r * data),
                   stream.begin() + static_cast<std::ptrdiff_t>((r + 1) * data));
    if (plan.cb_crc_present) crc_attach(cb.bits, CrcKind::CRC24B);
    cb.bits.resize(k, 0);
  }
  return cbs;
}

Desegmented desegment(const std::vector<BitVec>& cbs, const SegmentationPlan& plan) {
  require(static_cast<int>(cbs.size()) == plan.num_cbs, ErrorCode::InvalidConfig,
          "code block count does not match the plan");
  const auto data = static_cast<std::size_t>(plan.cb_data_bits());
  BitVec stream;
  stream.reserve(data * cbs.size());
  for (const auto& cb : cbs) {
    require(cb.size() >= data, ErrorCode::InvalidConfig, "decoded code block too short");
    stream.insert(stream.end(), cb.begin(), cb.begin() + static_cast<std::ptrdiff_t>(data));
  }
  Desegmented out;
  const BitSpan tb_with_crc =
      BitSpan(stream).subspan(static_cast<std::size_t>(plan.padding_bits));
  out.tb_crc_ok = crc_check(tb_with_crc, plan.tb_crc_kind());
  out.payload.assign(tb_with_crc.begin(),
                     tb_with_crc.begin() + static_cast<std::ptrdiff_t>(plan.tb_size_bits));
  return out;
}

std::vector<int64_t> cb_payload_share(const SegmentationPlan& plan) {
  std::vector<int64_t> out(static_cast<std::size_t>(plan.num_cbs));
  const int64_t c = plan.num_cbs;
  for (int64_t r = 0; r < c; ++r)
    out[static_cast<std::size_t>(r)] = plan.tb_size_bits * (r + 1) / c - plan.tb_size_bits * r / c;
  return out;
}

}  // namespace vran::nr
