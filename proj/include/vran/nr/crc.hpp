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

namespace vran::nr {

enum class CrcKind { CRC24A, CRC24B, CRC16 };

int crc_length(CrcKind kind);
uint32_t crc_polynomial(CrcKind kind);  // without the leading x^L term

// MSB-first, zero initial register, no output inversion.
BitVec crc_compute(BitSpan payload, CrcKind kind);

// True when payload_with_crc (payload followed by its checksum) leaves a zero
// remainder.
bool crc_check(BitSpan payload_with_crc, CrcKind kind);

// Appends the checksum of bits[0, size) to bits.
void crc_attach(BitVec& bits, CrcKind kind);

}  // namespace vran::nr
