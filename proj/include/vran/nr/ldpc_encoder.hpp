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

#include "vran/common/bits.hpp"
#include "vran/nr/base_graph.hpp"
#include "vran/nr/segmentation.hpp"

namespace vran::nr {

// Codeword without the two punctured leading columns: N = 66Z (BG1) or 50Z
// (BG2) bits, systematic bits first.
BitVec ldpc_encode(const CodeBlock& cb);

// Full codeword of cols*Z bits, including the punctured columns. Throws
// UnsupportedConfig for a Z outside the lifting table and InvalidConfig when
// the block length does not match (BG, Z).
BitVec ldpc_encode_full(BitSpan info_bits, BaseGraphId bg, int z);

// H * c over every row of the expanded graph.
bool ldpc_syndrome_zero(BitSpan full_codeword, BaseGraphId bg, int z);

// c = P^s x accumulated: acc[i] ^= x[(i + s) mod z].
void circulant_xor(uint8_t* acc, const uint8_t* x, int z, int s);

}  // namespace vran::nr
