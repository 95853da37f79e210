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

#include "vran/highphy/precoding.hpp"

#include <cmath>
#include <cstring>
#include <memory>

#include "vran/common/error.hpp"

namespace vran::highphy {

namespace {

constexpr int kChunkPrbs = 24;
constexpr int kLanes = 4;
typedef float v4f __attribute__((vector_size(kLanes * sizeof(float))));

v4f load(const float* p) {
  v4f v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

void store(float* p, v4f v) { std::memcpy(p, &v, sizeof v); }

struct Span {
  int symbol, sc0, sc1;
};

void kernel_scalar(const ResourceGrid& in, const ComplexMatrix& w, ResourceGrid& out, const Span& s) {
  for (int p = 0; p < out.planes; ++p)
    for (int k = s.sc0; k < s.sc1; ++k) {
      float acc_re = 0.0f, acc_im = 0.0f;
      for (int l = 0; l < in.planes; ++l) {
        const float wr = w.re[w.index(p, l)], wi = w.im[w.index(p, l)];
        const std::size_t i = in.index(l, s.symbol, k);
        const float xr = in.re[i], xi = in.im[i];
        acc_re = acc_re + (wr * xr - wi * xi);
        acc_im = acc_im + (wr * xi + wi * xr);
      }
      const std::size_t o = out.index(p, s.symbol, k);
      out.re[o] = acc_re;
      out.im[o] = acc_im;
    }
}

void kernel_vector(const ResourceGrid& in, const ComplexMatrix& w, ResourceGrid& out, const Span& s) {
  const int vec_end = s.sc0 + (s.sc1 - s.sc0) / kLanes * kLanes;
  for (int p = 0; p < out.planes; ++p) {
    for (int k = s.sc0; k < vec_end; k += kLanes) {
      v4f acc_re = {}, acc_im = {};
      for (int l = 0; l < in.planes; ++l) {
        const float wr = w.re[w.index(p, l)], wi = w.im[w.index(p, l)];
        const std::size_t i = in.index(l, s.symbol, k);
        const v4f xr = load(&in.re[i]), xi = load(&in.im[i]);
        acc_re = acc_re + (wr * xr - wi * xi);
        acc_im = acc_im + (wr * xi + wi * xr);
      }
      const std::size_t o = out.index(p, s.symbol, k);
      store(&out.re[o], acc_re);
      store(&out.im[o], acc_im);
    }
  }
  if (vec_end < s.sc1) kernel_scalar(in, w, out, {s.symbol, vec_end, s.sc1});
}

}  // namespace

ResourceGrid::ResourceGrid(int planes_, int prbs, int symbols_)
    : planes(planes_), symbols(symbols_), subcarriers(prbs * kSubcarriersPerPrb) {
  require(planes_ >= 1 && prbs >= 1 && symbols_ >= 1, ErrorCode::InvalidConfig, "grid dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(planes) * static_cast<std::size_t>(symbols) * static_cast<std::size_t>(subcarriers);
  re.assign(n, 0.0f);
  im.assign(n, 0.0f);
}

bool ResourceGrid::all_finite() const {
  for (std::size_t i = 0; i < re.size(); ++i)
    if (!std::isfinite(re[i]) || !std::isfinite(im[i])) return false;
  return true;
}

ComplexMatrix::ComplexMatrix(int r, int c) : rows(r), cols(c) {
  require(r >= 1 && c >= 1, ErrorCode::InvalidConfig, "matrix dimensions must be positive");
  re.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0f);
  im = re;
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.re[m.index(i, i)] = 1.0f;
  return m;
}

ComplexMatrix ComplexMatrix::random(int rows, int cols, std::mt19937_64& rng) {
  ComplexMatrix m(rows, cols);
  std::normal_distribution<float> n(0.0f, 0.5f);
  for (std::size_t i = 0; i < m.re.size(); ++i) {
    m.re[i] = n(rng);
    m.im[i] = n(rng);
  }
  return m;
}

ResourceGrid precode_and_map(const ResourceGrid& in, const ComplexMatrix& w, PrecodeMode mode, ThreadPool* pool) {
  require(w.cols == in.planes, ErrorCode::InvalidConfig,
          "weight matrix has " + std::to_string(w.cols) + " columns for " + std::to_string(in.planes) + " layers");
  require(in.re.size() == in.index(in.planes, 0, 0) && in.im.size() == in.re.size(), ErrorCode::InvalidConfig,
          "layer grid storage does not match its dimensions");
  ResourceGrid out;
  out.planes = w.rows;
  out.symbols = in.symbols;
  out.subcarriers = in.subcarriers;
  out.re.assign(out.index(out.planes, 0, 0), 0.0f);
  out.im = out.re;

  switch (mode.kind) {
    case PrecodeKind::SCALAR:
      for (int s = 0; s < in.symbols; ++s) kernel_scalar(in, w, out, {s, 0, in.subcarriers});
      break;
    case PrecodeKind::VECTOR:
      for (int s = 0; s < in.symbols; ++s) kernel_vector(in, w, out, {s, 0, in.subcarriers});
      break;
    case PrecodeKind::WORKERS: {
      require(mode.workers >= 1, ErrorCode::InvalidConfig, "WORKERS needs at least one worker");
      std::vector<Span> spans;
      const int chunk = mode.workers > in.symbols ? kChunkPrbs * kSubcarriersPerPrb : in.subcarriers;
      for (int s = 0; s < in.symbols; ++s)
        for (int k = 0; k < in.subcarriers; k += chunk) spans.push_back({s, k, std::min(in.subcarriers, k + chunk)});
      std::unique_ptr<ThreadPool> own;
      if (pool == nullptr) {
        own = std::make_unique<ThreadPool>(static_cast<std::size_t>(mode.workers));
        pool = own.get();
      }
      pool->parallel_for(spans.size(), [&](std::size_t i) { kernel_vector(in, w, out, spans[i]); });
      break;
    }
  }
  return out;
}

void fill_qpsk(ResourceGrid& grid, const std::vector<uint8_t>& bits) {
  const float a = 1.0f / std::sqrt(2.0f);
  if (bits.empty()) {
    std::fill(grid.re.begin(), grid.re.end(), a);
    std::fill(grid.im.begin(), grid.im.end(), a);
    return;
  }
  std::size_t b = 0;
  for (std::size_t i = 0; i < grid.re.size(); ++i) {
    grid.re[i] = bits[b] ? -a : a;
    b = (b + 1) % bits.size();
    grid.im[i] = bits[b] ? -a : a;
    b = (b + 1) % bits.size();
  }
}

}  // namespace vran::highphy
