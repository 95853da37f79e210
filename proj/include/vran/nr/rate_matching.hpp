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
#include <span>
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/nr/segmentation.hpp"

namespace vran::nr {

struct RateMatchParams {
  int e = 0;    // output bits for this CB
  int rv = 0;   // 0..3
  int qm = 2;   // 2, 4, 6 or 8
  int ncb = 0;  // circular buffer length, <= N
};

// Upper bound on E: eight passes over the circular buffer.
inline constexpr int kMaxBufferPasses = 8;

// LLR magnitude limit shared by float and quantized modes.
inline constexpr float kLlrMax = 127.0f;

int rate_match_k0(BaseGraphId bg, int rv, int ncb, int z);

// Validates params against the layout; throws InvalidConfig.
void validate_rate_match(const RateMatchParams& p, const CbLayout& cb);

// Circular-buffer positions (d indexing) read for E output bits, before
// interleaving, filler skipped.
std::vector<int> rate_match_positions(const RateMatchParams& p, const CbLayout& cb);

// f[i + j*Qm] = e[i*E/Qm + j].
BitVec bit_interleave(BitSpan e, int qm);
std::vector<float> bit_deinterleave(std::span<const float> f, int qm);

BitVec rate_match(BitSpan d, const RateMatchParams& p, const CbLayout& cb);

enum class BufferLocation { HOST, DEVICE };

struct SoftBuffer {
  std::vector<float> llrs;  // Ncb values; positive favors bit 0
  BufferLocation location = BufferLocation::HOST;
  int harq_pid = 0;
};

// Fresh buffer: zeros, filler pinned to +kLlrMax.
SoftBuffer make_soft_buffer(const CbLayout& cb, int ncb, BufferLocation loc = BufferLocation::HOST,
                            int harq_pid = 0);

// De-interleaves, maps to buffer positions, saturating-adds. Untouched
// positions keep their value; filler positions are forced to +kLlrMax.
void rate_recover_and_combine_into(std::span<const float> llrs, const RateMatchParams& p,
                                   const CbLayout& cb, SoftBuffer& buffer);
SoftBuffer rate_recover_and_combine(std::span<const float> llrs, const RateMatchParams& p,
                                    const CbLayout& cb, SoftBuffer buffer);

// Per-CB E values for a TB with G coded bits on n_layers layers.
std::vector<int> cb_output_lengths(int64_t g, int num_cbs, int qm, int n_layers);

}  // namespace vran::nr
