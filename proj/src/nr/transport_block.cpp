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

#include "vran/nr/transport_block.hpp"

#include <numeric>

#include "vran/common/error.hpp"
#include "vran/nr/ldpc_encoder.hpp"

namespace vran::nr {

int64_t TbShape::total_e() const { return std::accumulate(e.begin(), e.end(), int64_t{0}); }

TbShape make_tb_shape(const TbsInputs& in) {
  TbShape s;
  s.tbs = compute_tbs(in);
  s.mcs = mcs_entry(in.table, in.mcs_index);
  s.layers = in.layers;
  s.coded_bits = available_coded_bits(in);
  s.plan = segment_tb(s.tbs, Rational{s.mcs.rate_x2048, 2048});
  s.ncb = s.plan.layout().n();
  s.e = cb_output_lengths(s.coded_bits, s.plan.num_cbs, s.mcs.qm, s.layers);
  return s;
}

TbShape make_tb_shape_for_size(int64_t tbs, McsEntry mcs, int layers, int64_t coded_bits) {
  TbShape s;
  s.tbs = tbs;
  s.mcs = mcs;
  s.layers = layers;
  s.plan = segment_tb(tbs, Rational{mcs.rate_x2048, 2048});
  const CbLayout cb = s.plan.layout();
  s.ncb = cb.n();
  if (coded_bits > 0) {
    s.coded_bits = coded_bits;
    s.e = cb_output_lengths(coded_bits, s.plan.num_cbs, mcs.qm, layers);
  } else {
    const int full = static_cast<int>(ceil_div(cb.n() - cb.filler(), mcs.qm) * mcs.qm);
    s.e.assign(static_cast<std::size_t>(s.plan.num_cbs), full);
    s.coded_bits = s.total_e();
  }
  return s;
}

BitVec encode_code_block(const CodeBlock& cb, const TbShape& shape, int rv) {
  const BitVec d = ldpc_encode(cb);
  return rate_match(d, shape.rm(cb.index, rv), shape.plan.layout());
}

BitVec encode_tb(BitSpan payload, const TbShape& shape, int rv) {
  const std::vector<CodeBlock> cbs = build_code_blocks(payload, shape.plan);
  BitVec out;
  out.reserve(static_cast<std::size_t>(shape.total_e()));
  for (const auto& cb : cbs) {
    const BitVec f = encode_code_block(cb, shape, rv);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::vector<float> bits_to_llrs(BitSpan bits, float magnitude) {
  std::vector<float> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -magnitude : magnitude;
  return out;
}

TbDecodeResult decode_tb(std::span<const float> llrs, const TbShape& shape, int rv,
                         std::vector<SoftBuffer>* harq, const DecoderConfig& cfg) {
  require(static_cast<int64_t>(llrs.size()) == shape.total_e(), ErrorCode::InvalidConfig,
          "LLR count does not match the TB's coded bits");
  const CbLayout cb = shape.plan.layout();
  std::vector<SoftBuffer> local;
  std::vector<SoftBuffer>& bufs = harq ? *harq : local;
  if (bufs.empty())
    for (int r = 0; r < shape.plan.num_cbs; ++r) bufs.push_back(make_soft_buffer(cb, shape.ncb));
  require(static_cast<int>(bufs.size()) == shape.plan.num_cbs, ErrorCode::InvalidConfig,
          "HARQ buffer count does not match the CB count");
  std::size_t off = 0;
  for (int r = 0; r < shape.plan.num_cbs; ++r) {
    const auto e = static_cast<std::size_t>(shape.e[static_cast<std::size_t>(r)]);
    rate_recover_and_combine_into(llrs.subspan(off, e), shape.rm(r, rv), cb,
                                  bufs[static_cast<std::size_t>(r)]);
    off += e;
  }
  return ldpc_decode(bufs, shape.plan, cfg);
}

std::vector<float> awgn_llrs(BitSpan bits, double sigma, std::mt19937_64& rng) {
  require(sigma > 0, ErrorCode::InvalidConfig, "noise deviation must be positive");
  std::normal_distribution<double> n(0.0, sigma);
  std::vector<float> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    out[i] = static_cast<float>(2.0 * ((bits[i] ? -1.0 : 1.0) + n(rng)) / (sigma * sigma));
  return out;
}

}  // namespace vran::nr
