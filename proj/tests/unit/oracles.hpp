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

// Slow, obviously-correct reference implementations used only by tests.
// None of them share code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Bits = std::vector<uint8_t>;

// Polynomial long division of payload * x^L by the generator (with x^L term).
inline Bits crc_long_division(const Bits& payload, const Bits& generator) {
  const std::size_t l = generator.size() - 1;
  Bits work = payload;
  work.resize(payload.size() + l, 0);
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (!work[i]) continue;
    for (std::size_t k = 0; k < generator.size(); ++k) work[i + k] ^= generator[k];
  }
  return Bits(work.end() - static_cast<std::ptrdiff_t>(l), work.end());
}

// Generator polynomials written out term by term.
inline Bits poly_from_exponents(int degree, const std::vector<int>& exps) {
  Bits g(static_cast<std::size_t>(degree) + 1, 0);
  for (int e : exps) g[static_cast<std::size_t>(degree - e)] = 1;
  return g;
}
inline Bits crc24a_generator() {
  return poly_from_exponents(24, {24, 23, 18, 17, 14, 11, 10, 7, 6, 5, 4, 3, 1, 0});
}
inline Bits crc24b_generator() { return poly_from_exponents(24, {24, 23, 6, 5, 1, 0}); }
inline Bits crc16_generator() { return poly_from_exponents(16, {16, 12, 5, 0}); }

struct Frac {
  __int128 n, d;
  Frac(__int128 num = 0, __int128 den = 1) : n(num), d(den) { norm(); }
  void norm() {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
  }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Frac operator+(Frac a, Frac b) { return Frac(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
  friend bool operator<=(Frac a, Frac b) { return a.n * b.d <= b.n * a.d; }
  friend bool operator<(Frac a, Frac b) { return a.n * b.d < b.n * a.d; }
  __int128 floor() const { return n >= 0 ? n / d : -((-n + d - 1) / d); }
  __int128 ceil() const { return -Frac(-n, d).floor(); }
};

inline int flog2(Frac x) {  // floor(log2 x) for x > 0
  int k = 0;
  while (Frac(__int128{1} << (k + 1)) <= x) ++k;
  while (x < Frac(__int128{1} << k) && k > -60) --k;
  return k;
}

// 38.214 5.1.3.2 read literally. rate is R x 1024 given as a fraction.
inline int64_t tbs(int prbs, int symbols, int layers, int qm, Frac rate1024, int overhead) {
  static const int table[] = {
      24,   32,   40,   48,   56,   64,   72,   80,   88,   96,   104,  112,  120,  128,
      136,  144,  152,  160,  168,  176,  184,  192,  208,  224,  240,  256,  272,  288,
      304,  320,  336,  352,  368,  384,  408,  432,  456,  480,  504,  528,  552,  576,
      608,  640,  672,  704,  736,  768,  808,  848,  888,  928,  984,  1032, 1064, 1128,
      1160, 1192, 1224, 1256, 1288, 1320, 1352, 1416, 1480, 1544, 1608, 1672, 1736, 1800,
      1864, 1928, 2024, 2088, 2152, 2216, 2280, 2408, 2472, 2536, 2600, 2664, 2728, 2792,
      2856, 2976, 3104, 3240, 3368, 3496, 3624, 3752, 3824};
  const int nre_p = 12 * symbols - overhead;
  const int nre = std::min(156, nre_p) * prbs;
  const Frac r = rate1024 / Frac(1024);
  const Frac ninfo = Frac(nre) * r * Frac(qm) * Frac(layers);
  if (ninfo <= Frac(3824)) {
    const int n = std::max(3, flog2(ninfo) - 6);
    const Frac p2 = Frac(__int128{1} << n);
    const __int128 np = std::max<__int128>(24, (p2 * Frac((ninfo / p2).floor())).floor());
    for (int t : table)
      if (t >= np) return t;
    throw std::logic_error("table exhausted");
  }
  const int n = flog2(ninfo - Frac(24)) - 5;
  const Frac p2 = Frac(__int128{1} << n);
  const __int128 rounded = ((ninfo - Frac(24)) / p2 + Frac(1, 2)).floor();
  const __int128 np = std::max<__int128>(3840, (p2 * Frac(rounded)).floor());
  if (r <= Frac(1, 4)) {
    const __int128 c = Frac(np + 24, 3816).ceil();
    return static_cast<int64_t>(8 * c * Frac(np + 24, 8 * c).ceil() - 24);
  }
  if (np > 8424) {
    const __int128 c = Frac(np + 24, 8424).ceil();
    return static_cast<int64_t>(8 * c * Frac(np + 24, 8 * c).ceil() - 24);
  }
  return static_cast<int64_t>(8 * Frac(np + 24, 8).ceil() - 24);
}

struct Segmentation {
  int bg;
  int c;
  int k_prime;
  int z;
  int kb;
};

// 38.212 5.2.2 and 7.2.2 / 6.2.2 base graph selection.
inline Segmentation segment(int64_t a, double rate) {
  const int64_t b = a + (a > 3824 ? 24 : 16);
  const bool bg2 = a <= 292 || (a <= 3824 && rate <= 0.67) || rate <= 0.25;
  const int64_t kcb = bg2 ? 3840 : 8448;
  int64_t c = 1, bp = b;
  if (b > kcb) {
    c = (b + (kcb - 24) - 1) / (kcb - 24);
    bp = b + 24 * c;
  }
  const int64_t kp = (bp + c - 1) / c;
  int kb;
  if (!bg2) kb = 22;
  else if (b > 640) kb = 10;
  else if (b > 560) kb = 9;
  else if (b > 192) kb = 8;
  else kb = 6;
  static const int zs[] = {2,   3,   4,   5,   6,   7,   8,   9,   10,  11,  12,  13,  14,
                           15,  16,  18,  20,  22,  24,  26,  28,  30,  32,  36,  40,  44,
                           48,  52,  56,  60,  64,  72,  80,  88,  96,  104, 112, 120, 128,
                           144, 160, 176, 192, 208, 224, 240, 256, 288, 320, 352, 384};
  int z = -1;
  for (int v : zs)
    if (kb * v >= kp) { z = v; break; }
  return {bg2 ? 2 : 1, static_cast<int>(c), static_cast<int>(kp), z, kb};
}

// Dense GF(2) elimination: solve H [info; parity] = 0 for parity.
// h is rows x cols, info occupies the first k columns.
inline Bits gf2_parity_solve(std::vector<Bits> h, const Bits& info) {
  const std::size_t rows = h.size();
  const std::size_t cols = h[0].size();
  const std::size_t k = info.size();
  const std::size_t m = cols - k;
  // rhs = H_info * info
  Bits rhs(rows, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < k; ++c) rhs[r] ^= h[r][c] & info[c];
  // Eliminate on the parity sub-matrix.
  std::vector<int> pivot_col_row(m, -1);
  std::size_t row = 0;
  for (std::size_t pc = 0; pc < m && row < rows; ++pc) {
    std::size_t sel = row;
    while (sel < rows && !h[sel][k + pc]) ++sel;
    if (sel == rows) continue;
    std::swap(h[sel], h[row]);
    std::swap(rhs[sel], rhs[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != row && h[r][k + pc]) {
        for (std::size_t c = k; c < cols; ++c) h[r][c] ^= h[row][c];
        rhs[r] ^= rhs[row];
      }
    }
    pivot_col_row[pc] = static_cast<int>(row);
    ++row;
  }
  Bits parity(m, 0);
  for (std::size_t pc = 0; pc < m; ++pc) {
    if (pivot_col_row[pc] < 0) throw std::logic_error("parity matrix not full rank");
    parity[pc] = rhs[static_cast<std::size_t>(pivot_col_row[pc])];
  }
  return parity;
}

// 38.212 Table 5.4.2.1-2 evaluated with floating point floor.
inline int k0(int bg, int rv, int ncb, int z) {
  static const double num1[] = {0, 17, 33, 56};
  static const double num2[] = {0, 13, 25, 43};
  const double num = bg == 1 ? num1[rv] : num2[rv];
  const double den = (bg == 1 ? 66.0 : 50.0) * z;
  return static_cast<int>(std::floor(num * ncb / den)) * z;
}

// Write E values row-wise into a Qm x (E/Qm) matrix, read column-wise.
template <typename T>
std::vector<T> reshape_transpose(const std::vector<T>& e, int qm) {
  const std::size_t cols = e.size() / static_cast<std::size_t>(qm);
  std::vector<std::vector<T>> m(static_cast<std::size_t>(qm), std::vector<T>(cols));
  std::size_t idx = 0;
  for (auto& r : m)
    for (auto& v : r) v = e[idx++];
  std::vector<T> out;
  for (std::size_t c = 0; c < cols; ++c)
    for (auto& r : m) out.push_back(r[c]);
  return out;
}

// Circular buffer positions touched by one transmission.
inline std::set<int> touched_positions(int k0v, int e, int ncb, int filler_lo, int filler_hi) {
  std::set<int> out;
  int count = 0;
  for (long j = k0v; count < e; ++j) {
    const int p = static_cast<int>(j % ncb);
    if (p >= filler_lo && p < filler_hi) continue;
    out.insert(p);
    ++count;
  }
  return out;
}

// Nearest-rank percentile on a sorted copy.
inline double nearest_rank(std::vector<double> v, double pct) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  if (rank < 1) rank = 1;
  return v[rank - 1];
}

}  // namespace oracle
