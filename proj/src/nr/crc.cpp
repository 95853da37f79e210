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

#include "vran/nr/crc.hpp"

#include <array>

namespace vran::nr {

namespace {

struct CrcTable {
  std::array<uint32_t, 256> t{};
  int len = 0;
};

CrcTable make_table(uint32_t poly, int len) {
  CrcTable tab;
  tab.len = len;
  const uint32_t top = 1u << (len - 1);
  const uint32_t mask = (len == 32) ? 0xffffffffu : ((1u << len) - 1u);
  for (uint32_t b = 0; b < 256; ++b) {
    uint32_t reg = b << (len - 8);
    for (int i = 0; i < 8; ++i) reg = (reg & top) ? ((reg << 1) ^ poly) : (reg << 1);
    tab.t[b] = reg & mask;
  }
  return tab;
}

const CrcTable& table_for(CrcKind kind) {
  static const CrcTable a = make_table(crc_polynomial(CrcKind::CRC24A), 24);
  static const CrcTable b = make_table(crc_polynomial(CrcKind::CRC24B), 24);
  static const CrcTable c = make_table(crc_polynomial(CrcKind::CRC16), 16);
  switch (kind) {
    case CrcKind::CRC24A: return a;
    case CrcKind::CRC24B: return b;
    case CrcKind::CRC16: return c;
  }
  return a;
}

uint32_t remainder(BitSpan bits, CrcKind kind) {
  const CrcTable& tab = table_for(kind);
  const int len = tab.len;
  const uint32_t mask = (1u << len) - 1u;
  const uint32_t top = 1u << (len - 1);
  const uint32_t poly = crc_polynomial(kind);
  uint32_t reg = 0;
  std::size_t i = 0;
  const std::size_t n = bits.size();
  for (; i + 8 <= n; i += 8) {
    uint32_t byte = 0;
    for (int k = 0; k < 8; ++k) byte = (byte << 1) | (bits[i + k] & 1u);
    reg = ((reg << 8) & mask) ^ tab.t[((reg >> (len - 8)) ^ byte) & 0xffu];
  }
  for (; i < n; ++i) {
    const uint32_t in = (bits[i] & 1u) ? top : 0u;
    reg = ((reg ^ in) & top) ? (((reg << 1) ^ poly) & mask) : ((reg << 1) & mask);
  }
  return reg;
}

}  // namespace

int crc_length(CrcKind kind) { return kind == CrcKind::CRC16 ? 16 : 24; }

uint32_t crc_polynomial(CrcKind kind) {
  switch (kind) {
    case CrcKind::CRC24A: return 0x864CFBu;
    case CrcKind::CRC24B: return 0x800063u;
    case CrcKind::CRC16: return 0x1021u;
  }
  return 0;
}

BitVec crc_compute(BitSpan payload, CrcKind kind) {
  const int len = crc_length(kind);
  const uint32_t reg = remainder(payload, kind);
  BitVec out(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = (reg >> (len - 1 - i)) & 1u;
  return out;
}

bool crc_check(BitSpan payload_with_crc, CrcKind kind) {
  const auto len = static_cast<std::size_t>(crc_length(kind));
  if (payload_with_crc.size() < len) return false;
  const BitSpan payload = payload_with_crc.first(payload_with_crc.size() - len);
  const uint32_t reg = remainder(payload, kind);
  for (std::size_t i = 0; i < len; ++i) {
    const uint32_t bit = (reg >> (len - 1 - i)) & 1u;
    if (bit != payload_with_crc[payload.size() + i]) return false;
  }
  return true;
}

void crc_attach(BitVec& bits, CrcKind kind) {
  const BitVec crc = crc_compute(bits, kind);
  bits.insert(bits.end(), crc.begin(), crc.end());
}

}  // namespace vran::nr
