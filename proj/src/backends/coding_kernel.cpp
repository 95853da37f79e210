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

#include "vran/backends/coding_kernel.hpp"

#include "vran/common/error.hpp"
#include "vran/nr/ldpc_decoder.hpp"

namespace vran::backends {

namespace {

std::vector<nr::SoftBuffer>* resolve(const lpu::HarqToken& t, int num_cbs,
                                     const DeviceHarqResolver& device_harq) {
  if (!t.present) return nullptr;
  if (t.location == nr::BufferLocation::HOST) return t.host;
  require(static_cast<bool>(device_harq), ErrorCode::CapabilityMismatch,
          "device HARQ token on a backend without device memory");
  return device_harq(t, num_cbs);
}

nr::SoftBuffer& prepare(std::vector<nr::SoftBuffer>* bufs, std::vector<nr::SoftBuffer>& local,
                        int cb, const nr::TbShape& s, const lpu::HarqToken& t) {
  std::vector<nr::SoftBuffer>& v = bufs ? *bufs : local;
  const auto c = static_cast<std::size_t>(s.plan.num_cbs);
  const nr::BufferLocation loc = t.present ? t.location : nr::BufferLocation::HOST;
  if (v.size() != c) v.assign(c, nr::make_soft_buffer(s.plan.layout(), s.ncb, loc));
  nr::SoftBuffer& b = v[static_cast<std::size_t>(cb)];
  if (!t.combine || static_cast<int>(b.llrs.size()) != s.ncb)
    b = nr::make_soft_buffer(s.plan.layout(), s.ncb, loc);
  return b;
}

}  // namespace

void execute_op(lpu::CodingOpDescriptor& op, const DeviceHarqResolver& device_harq) {
  if (!op.work) return;
  lpu::CodingWork& w = *op.work;
  require(w.shape != nullptr, ErrorCode::InvalidConfig, "coding work without a TB shape");
  const nr::TbShape& s = *w.shape;

  if (op.kind == lpu::OpKind::ENCODE) {
    if (op.granularity == lpu::Granularity::CB)
      w.encoded = nr::encode_code_block(w.cb, s, w.rv);
    else
      w.encoded = nr::encode_tb(w.tb_payload, s, w.rv);
    return;
  }

  std::vector<nr::SoftBuffer>* bufs = resolve(op.harq, s.plan.num_cbs, device_harq);
  std::vector<nr::SoftBuffer> local;
  const nr::CbLayout layout = s.plan.layout();

  if (op.granularity == lpu::Granularity::CB) {
    const int r = w.cb_index;
    nr::SoftBuffer& b = prepare(bufs, local, r, s, op.harq);
    nr::rate_recover_and_combine_into(w.llrs, s.rm(r, w.rv), layout, b);
    nr::CbDecodeResult res = nr::ldpc_decode_cb(b, layout, s.plan.cb_crc_present, w.decoder);
    w.decoded = std::move(res.bits);
    w.crc_ok = res.crc_ok;
    w.cb_crc_ok = {res.crc_ok};
    w.iterations = res.iterations_used;
    return;
  }

  require(static_cast<int64_t>(w.llrs.size()) == s.total_e(), ErrorCode::InvalidConfig,
          "TB decode needs every CB's LLRs");
  std::size_t off = 0;
  for (int r = 0; r < s.plan.num_cbs; ++r) {
    nr::SoftBuffer& b = prepare(bufs, local, r, s, op.harq);
    const auto e = static_cast<std::size_t>(s.e[static_cast<std::size_t>(r)]);
    nr::rate_recover_and_combine_into(std::span<const float>(w.llrs).subspan(off, e), s.rm(r, w.rv), layout, b);
    off += e;
  }
  const std::vector<nr::SoftBuffer>& all = bufs ? *bufs : local;
  nr::TbDecodeResult res = nr::ldpc_decode(all, s.plan, w.decoder);
  w.decoded = std::move(res.payload);
  w.crc_ok = res.crc_ok;
  w.cb_crc_ok = std::move(res.cb_crc_ok);
  w.iterations = res.iterations_used;
}

}  // namespace vran::backends
