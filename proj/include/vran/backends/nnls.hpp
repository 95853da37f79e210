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

#include <vector>

namespace vran::backends {

struct NnlsResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
};

// min ||A x - b||_2 subject to x >= 0 (Lawson-Hanson active set).
// a is row-major, rows x cols.
NnlsResult nnls(const std::vector<std::vector<double>>& a, const std::vector<double>& b);

// Numerical rank of a (column-pivoted QR, relative tolerance).
int matrix_rank(const std::vector<std::vector<double>>& a);

}  // namespace vran::backends
