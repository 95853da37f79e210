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

#include "vran/nr/rate_matching.hpp"

#include <algorithm>
#include <string>

#include "vran/common/error.hpp"

namespace vran::nr {

int rate_match_k0(BaseGraphId bg, int rv, int ncb, int z) {
  require(rv >= 0 && rv <= 3, ErrorCode::InvalidConfig, "rv must be 0..3");
  if (rv == 0) return 0;
  static constexpr int kBg1[4] = {0, 17, 33, 56};
  static constexpr int kBg2[4] = {0, 13, 25, 43};
  const int64_t num = bg == BaseGraphId::BG1 ? kBg1[rv] : kBg2[rv];
  const int64_t den = (bg == BaseGraphId::BG1 ? 66 : 50) * static_cast<int64_t>(z);
  return static_cast<int>((num * ncb / den) * z);
}

void validate_rate_match(const RateMatchParams& p, const CbLayout& cb) {
  require(p.qm == 2 || p.qm == 4 || p.qm == 6 || p.qm == 8, ErrorCode::InvalidConfig,
          "Qm must be 2, 4, 6 or 8");
  require(p.rv >= 0 && p.rv <= 3, ErrorCode::InvalidConfig, "rv must be 0..3");
  require(p.e > 0 && p.e % p.qm == 0, ErrorCode::InvalidConfig, "E must be a positive multiple of Qm");
  require(p.ncb > 0 && p.ncb <= cb.n(), ErrorCode::InvalidConfig, "Ncb must be in 1..N");
  require(p.ncb > cb.filler_end(), ErrorCode::InvalidConfig, "Ncb must cover the systematic part");
  require(static_cast<int64_t>(p.e) <= static_cast<int64_t>(kMaxBufferPasses) * p.ncb,
          ErrorCode::InvalidConfig,
          "E=" + std::to_string(p.e) + " exceeds " + std::to_string(kMaxBufferPasses) + " x Ncb");
}

std::vector<int> rate_match_positions(const RateMatchParams& p, const CbLayout& cb) {
  validate_rate_match(p, cb);
  std::vector<int> pos;
  pos.reserve(static_cast<std::size_t>(p.e));
  const int fb = cb.filler_begin();
  const int fe = cb.filler_end();
  int j = rate_match_k0(cb.bg, p.rv, p.ncb, cb.z);
  while (static_cast<int>(pos.size()) < p.e) {
    const int idx = j % p.ncb;
    if (idx < fb || idx >= fe) pos.push_back(idx);
    ++j;
  }
  return pos;
}

BitVec bit_interleave(BitSpan e, int qm) {
  const std::size_t rows = e.size() / static_cast<std::size_t>(qm);
  BitVec f(e.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(qm); ++i)
    for (std::size_t j = 0; j < rows; ++j) f[i + j * static_cast<std::size_t>(qm)] = e[i * rows + j];
  return f;
}

std::vector<float> bit_deinterleave(std::span<const float> f, int qm) {
  const std::size_t rows = f.size() / static_cast<std::size_t>(qm);
  std::vector<float> e(f.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(qm); ++i)
    for (std::size_t j = 0; j < rows; ++j) e[i * rows + j] = f[i + j * static_cast<std::size_t>(qm)];
  return e;
}

BitVec rate_match(BitSpan d, const RateMatchParams& p, const CbLayout& cb) {
  require(static_cast<int>(d.size()) == cb.n(), ErrorCode::InvalidConfig,
          "codeword length does not match N");
  const std::vector<int> pos = rate_match_positions(p, cb);
  BitVec e(pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k) e[k] = d[static_cast<std::size_t>(pos[k])];
  return bit_interleave(e, p.qm);
}

SoftBuffer make_soft_buffer(const CbLayout& cb, int ncb, BufferLocation loc, int harq_pid) {
  SoftBuffer b;
  b.llrs.assign(static_cast<std::size_t>(ncb), 0.0f);
  b.location = loc;
  b.harq_pid = harq_pid;
  for (int i = std::max(0, cb.filler_begin()); i < std::min(ncb, cb.filler_end()); ++i)
    b.llrs[static_cast<std::size_t>(i)] = kLlrMax;
  return b;
}

void rate_recover_and_combine_into(std::span<const float> llrs, const RateMatchParams& p,
                                   const CbLayout& cb, SoftBuffer& buffer) {
  require(static_cast<int>(llrs.size()) == p.e, ErrorCode::InvalidConfig,
          "LLR count does not match E");
  require(static_cast<int>(buffer.llrs.size()) == p.ncb, ErrorCode::InvalidConfig,
          "soft buffer length does not match Ncb");
  const std::vector<int> pos = rate_match_positions(p, cb);
  const std::vector<float> e = bit_deinterleave(llrs, p.qm);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    float& v = buffer.llrs[static_cast<std::size_t>(pos[k])];
    v = std::clamp(v + e[k], -kLlrMax, kLlrMax);
  }
  for (int i = std::max(0, cb.filler_begin()); i < std::min(p.ncb, cb.filler_end()); ++i)
    buffer.llrs[static_cast<std::size_t>(i)] = kLlrMax;
}

SoftBuffer rate_recover_and_combine(std::span<const float> llrs, const RateMatchParams& p,
                                    const CbLayout& cb, SoftBuffer buffer) {
  rate_recover_and_combine_into(llrs, p, cb, buffer);
  return buffer;
}

std::vector<int> cb_output_lengths(int64_t g, int num_cbs, int qm, int n_layers) {
  require(num_cbs >= 1 && qm > 0 && n_layers > 0, ErrorCode::InvalidConfig, "bad E split inputs");
  const int64_t unit = static_cast<int64_t>(n_layers) * qm;
  const int64_t c = num_cbs;
  const int64_t q = g / unit;
  std::vector<int> e(static_cast<std::size_t>(num_cbs));
  for (int64_t r = 0; r < c; ++r) {
    const int64_t v = (r <= c - (q % c) - 1) ? unit * (q / c) : unit * ceil_div(q, c);
    e[static_cast<std::size_t>(r)] = static_cast<int>(v);
  }
  return e;
}

}  // namespace vran::nr
