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

#include "vran/nr/ldpc_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vran/common/error.hpp"
#include "vran/nr/base_graph.hpp"
#include "vran/nr/crc.hpp"
#include "vran/nr/ldpc_encoder.hpp"

namespace vran::nr {

namespace {

struct ActiveRow {
  int row;
  int edge_begin;  // index into edge list of the expanded graph
  int degree;
  int msg_offset;  // first edge's message block
};

}  // namespace

CbDecodeResult ldpc_decode_cb(const SoftBuffer& buffer, const CbLayout& cb, bool check_cb_crc,
                              const DecoderConfig& cfg) {
  const int z = cb.z;
  const ExpandedGraph& g = expanded_graph(cb.bg, z);
  const int info_cols = cb.bg == BaseGraphId::BG1 ? 22 : 10;
  const auto zz = static_cast<std::size_t>(z);
  const int ncb = static_cast<int>(buffer.llrs.size());
  require(ncb > 0 && ncb <= cb.n(), ErrorCode::InvalidConfig, "soft buffer length must be in 1..N");
  const bool quant = cfg.mode == LlrMode::QUANTIZED_8BIT;

  const std::size_t n_var = static_cast<std::size_t>(g.cols) * zz;
  std::vector<float> ch(n_var, 0.0f);
  for (int k = 0; k < ncb; ++k) {
    float v = std::clamp(buffer.llrs[static_cast<std::size_t>(k)], -kLlrMax, kLlrMax);
    if (quant) v = std::nearbyint(v);
    ch[2 * zz + static_cast<std::size_t>(k)] = v;
  }
  for (int k = std::max(0, cb.filler_begin()); k < cb.filler_end(); ++k)
    ch[2 * zz + static_cast<std::size_t>(k)] = kLlrMax;

  // A row takes part when its own parity column carries information.
  auto column_has_info = [&](int col) {
    const float* p = ch.data() + static_cast<std::size_t>(col) * zz;
    for (std::size_t i = 0; i < zz; ++i)
      if (p[i] != 0.0f) return true;
    return false;
  };
  std::vector<ActiveRow> rows;
  int n_msgs = 0;
  for (int r = 0; r < g.rows; ++r) {
    if (r >= 4 && !column_has_info(info_cols + r)) continue;
    const int b = g.row_start[static_cast<std::size_t>(r)];
    const int d = g.row_start[static_cast<std::size_t>(r) + 1] - b;
    rows.push_back({r, b, d, n_msgs});
    n_msgs += d;
  }

  std::vector<float> c2v(static_cast<std::size_t>(n_msgs) * zz, 0.0f);
  std::vector<float> total = ch;
  std::vector<float> acc(n_var);
  int max_deg = 0;
  for (const auto& r : rows) max_deg = std::max(max_deg, r.degree);
  std::vector<float> t(static_cast<std::size_t>(max_deg) * zz);
  std::vector<float> min1(zz), min2(zz), sgn(zz);
  std::vector<int> arg(zz);
  std::vector<uint8_t> hard(n_var), syn(zz);

  const float big = std::numeric_limits<float>::max();
  CbDecodeResult res;
  const auto k_prime = static_cast<std::size_t>(cb.k_prime);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    std::copy(ch.begin(), ch.end(), acc.begin());
    for (const auto& r : rows) {
      std::fill(min1.begin(), min1.end(), big);
      std::fill(min2.begin(), min2.end(), big);
      std::fill(sgn.begin(), sgn.end(), 1.0f);
      std::fill(arg.begin(), arg.end(), -1);
      for (int e = 0; e < r.degree; ++e) {
        const ExpandedEntry& ent = g.edges[static_cast<std::size_t>(r.edge_begin + e)];
        const float* l = total.data() + static_cast<std::size_t>(ent.col) * zz;
        const float* m = c2v.data() + static_cast<std::size_t>(r.msg_offset + e) * zz;
        float* te = t.data() + static_cast<std::size_t>(e) * zz;
        const std::size_t s = static_cast<std::size_t>(ent.shift);
        for (std::size_t i = 0; i < zz - s; ++i) te[i] = l[i + s] - m[i];
        for (std::size_t i = zz - s; i < zz; ++i) te[i] = l[i + s - zz] - m[i];
        if (quant)
          for (std::size_t i = 0; i < zz; ++i) te[i] = std::clamp(te[i], -kLlrMax, kLlrMax);
        for (std::size_t i = 0; i < zz; ++i) {
          const float a = std::fabs(te[i]);
          const bool lower = a < min1[i];
          min2[i] = lower ? min1[i] : std::min(min2[i], a);
          min1[i] = lower ? a : min1[i];
          arg[i] = lower ? e : arg[i];
          sgn[i] = te[i] < 0.0f ? -sgn[i] : sgn[i];
        }
      }
      for (int e = 0; e < r.degree; ++e) {
        const ExpandedEntry& ent = g.edges[static_cast<std::size_t>(r.edge_begin + e)];
        float* m = c2v.data() + static_cast<std::size_t>(r.msg_offset + e) * zz;
        const float* te = t.data() + static_cast<std::size_t>(e) * zz;
        for (std::size_t i = 0; i < zz; ++i) {
          float mag = (arg[i] == e ? min2[i] : min1[i]) * cfg.alpha;
          if (quant) mag = std::floor(mag);
          const float sign = te[i] < 0.0f ? -sgn[i] : sgn[i];
          m[i] = sign * mag;
        }
        float* out = acc.data() + static_cast<std::size_t>(ent.col) * zz;
        const std::size_t s = static_cast<std::size_t>(ent.shift);
        for (std::size_t i = 0; i < zz - s; ++i) out[i + s] += m[i];
        for (std::size_t i = zz - s; i < zz; ++i) out[i + s - zz] += m[i];
      }
    }
    total.swap(acc);
    res.iterations_used = it;

    for (std::size_t v = 0; v < n_var; ++v) hard[v] = total[v] < 0.0f ? 1 : 0;
    bool parity = true;
    for (const auto& r : rows) {
      std::fill(syn.begin(), syn.end(), 0);
      for (int e = 0; e < r.degree; ++e) {
        const ExpandedEntry& ent = g.edges[static_cast<std::size_t>(r.edge_begin + e)];
        circulant_xor(syn.data(), hard.data() + static_cast<std::size_t>(ent.col) * zz, z, ent.shift);
      }
      if (std::any_of(syn.begin(), syn.end(), [](uint8_t b) { return b != 0; })) {
        parity = false;
        break;
      }
    }
    res.parity_ok = parity;
    if (!parity) continue;
    if (!check_cb_crc || crc_check(BitSpan(hard.data(), k_prime), CrcKind::CRC24B)) break;
  }

  res.bits.assign(hard.begin(), hard.begin() + static_cast<std::ptrdiff_t>(k_prime));
  res.crc_ok = check_cb_crc ? (res.parity_ok && crc_check(res.bits, CrcKind::CRC24B)) : res.parity_ok;
  return res;
}

TbDecodeResult ldpc_decode(std::span<const SoftBuffer> buffers, const SegmentationPlan& plan,
                           const DecoderConfig& cfg) {
  require(static_cast<int>(buffers.size()) == plan.num_cbs, ErrorCode::InvalidConfig,
          "one soft buffer per code block required");
  std::vector<BitVec> cbs;
  TbDecodeResult out;
  for (const auto& b : buffers) {
    CbDecodeResult r = ldpc_decode_cb(b, plan.layout(), plan.cb_crc_present, cfg);
    out.iterations_used = std::max(out.iterations_used, r.iterations_used);
    out.cb_crc_ok.push_back(r.crc_ok);
    cbs.push_back(std::move(r.bits));
  }
  Desegmented d = desegment(cbs, plan);
  out.payload = std::move(d.payload);
  out.crc_ok = d.tb_crc_ok;
  if (!plan.cb_crc_present) out.cb_crc_ok.assign(1, out.crc_ok);
  return out;
}

}  // namespace vran::nr
