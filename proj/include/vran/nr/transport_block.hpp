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
#include <random>
#include <span>
#include <vector>

#include "vran/common/bits.hpp"
#include "vran/nr/ldpc_decoder.hpp"
#include "vran/nr/rate_matching.hpp"
#include "vran/nr/segmentation.hpp"
#include "vran/nr/tbs.hpp"

namespace vran::nr {

// Everything needed to code one TB: size, segmentation and per-CB E.
struct TbShape {
  int64_t tbs = 0;
  McsEntry mcs;
  int layers = 1;
  int64_t coded_bits = 0;  // G
  SegmentationPlan plan;
  std::vector<int> e;      // per CB
  int ncb = 0;

  int64_t total_e() const;
  RateMatchParams rm(int cb, int rv) const { return {e[static_cast<std::size_t>(cb)], rv, mcs.qm, ncb}; }
};

TbShape make_tb_shape(const TbsInputs& in);

// Shape for an arbitrary TB size. When coded_bits is 0, every CB gets the
// whole non-filler buffer rounded up to a multiple of Qm.
TbShape make_tb_shape_for_size(int64_t tbs, McsEntry mcs, int layers, int64_t coded_bits = 0);

// Encodes and rate-matches one CB that already carries CRC and filler.
BitVec encode_code_block(const CodeBlock& cb, const TbShape& shape, int rv);

// Full TB chain. Output is the concatenation of every CB's E bits.
BitVec encode_tb(BitSpan payload, const TbShape& shape, int rv);

// Noiseless BPSK-style LLRs: bit 0 -> +magnitude, bit 1 -> -magnitude.
std::vector<float> bits_to_llrs(BitSpan bits, float magnitude);

// BPSK over AWGN with noise deviation sigma: LLR = 2 (s + n) / sigma^2,
// s = +1 for bit 0.
std::vector<float> awgn_llrs(BitSpan bits, double sigma, std::mt19937_64& rng);

// Rate recovery, optional combining into harq (one buffer per CB; created
// when empty) and decoding.
TbDecodeResult decode_tb(std::span<const float> llrs, const TbShape& shape, int rv,
                         std::vector<SoftBuffer>* harq = nullptr, const DecoderConfig& cfg = {});

}  // namespace vran::nr
