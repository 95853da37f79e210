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

#include "vran/backends/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vran/backends/nnls.hpp"
#include "vran/common/error.hpp"
#include "vran/nr/transport_block.hpp"
#include "vran/embedded_data.hpp"

namespace vran::backends {

using lpu::InterfaceGeneration;
using lpu::OpKind;

std::vector<int> split_prbs(int total_prbs, int n_jobs) {
  require(n_jobs >= 1, ErrorCode::InvalidConfig, "at least one job is needed");
  require(total_prbs >= n_jobs, ErrorCode::InvalidConfig, "every job needs at least one PRB");
  std::vector<int> out(static_cast<std::size_t>(n_jobs), total_prbs / n_jobs);
  for (int i = 0; i < total_prbs % n_jobs; ++i) ++out[static_cast<std::size_t>(i)];
  return out;
}

std::vector<TbSummary> bench_request(const BenchSlotConfig& cfg, int n_tb) {
  std::vector<TbSummary> out;
  for (int prbs : split_prbs(cfg.total_prbs, n_tb)) {
    const nr::TbShape s = nr::make_tb_shape(
        nr::TbsInputs{prbs, cfg.symbols, cfg.layers, cfg.mcs_index, cfg.table, cfg.overhead});
    out.push_back({s.tbs, s.plan.num_cbs});
  }
  return out;
}

int calls_for(OpKind kind, InterfaceGeneration g, int n_tb, int total_cbs) {
  if (total_cbs == 0) return 0;
  switch (g) {
    case InterfaceGeneration::PER_CB:
      return kind == OpKind::DECODE ? total_cbs : (total_cbs + kEncodeCbsPerCall - 1) / kEncodeCbsPerCall;
    case InterfaceGeneration::PER_TB:
      return n_tb;
    case InterfaceGeneration::PER_SLOT:
      return 1;
  }
  return 0;
}

CallFeatures request_features(OpKind kind, InterfaceGeneration g, std::span<const TbSummary> tbs) {
  CallFeatures f;
  int64_t bits = 0;
  int cbs = 0;
  for (const TbSummary& t : tbs) {
    bits += t.tbs;
    cbs += t.num_cbs;
  }
  f.n_tb = static_cast<double>(tbs.size());
  f.n_cb = cbs;
  f.kbits = static_cast<double>(bits) / 1000.0;
  f.calls = calls_for(kind, g, static_cast<int>(tbs.size()), cbs);
  return f;
}

std::vector<CalibrationPoint> parse_calibration_csv(std::string_view text) {
  std::vector<CalibrationPoint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    const std::string where = "calibration csv line " + std::to_string(lineno);
    if (!header) {
      require(f == std::vector<std::string>{"direction", "generation", "n_tb", "mean_us"}, ErrorCode::Io,
              where + ": expected header direction,generation,n_tb,mean_us");
      header = true;
      continue;
    }
    require(f.size() == 4, ErrorCode::Io, where + ": expected 4 fields");
    CalibrationPoint p;
    try {
      p.direction = lpu::parse_op_kind(f[0]);
      p.generation = lpu::parse_generation(f[1]);
      std::size_t used = 0;
      p.n_tb = std::stoi(f[2], &used);
      require(used == f[2].size(), ErrorCode::Io, where + ": bad n_tb");
      p.mean_us = std::stod(f[3], &used);
      require(used == f[3].size(), ErrorCode::Io, where + ": bad mean_us");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Io) throw;
      fail(ErrorCode::Io, where + ": " + e.what());
    } catch (const std::logic_error&) {
      fail(ErrorCode::Io, where + ": unparsable field");
    }
    require(p.n_tb >= 1 && p.mean_us > 0 && std::isfinite(p.mean_us), ErrorCode::Io,
            where + ": n_tb and mean_us must be positive");
    out.push_back(p);
  }
  require(header, ErrorCode::Io, "calibration csv has no header");
  return out;
}

const std::vector<CalibrationPoint>& reference_calibration_points() {
  static const std::vector<CalibrationPoint> pts = parse_calibration_csv(embedded::kInterfaceCalibration);
  return pts;
}

namespace {

std::array<double, 4> as_array(const CallFeatures& f) { return {f.calls, f.n_tb, f.n_cb, f.kbits}; }

CostCoefficients from_array(const std::array<double, 4>& x) { return {x[0], x[1], x[2], x[3]}; }

}  // namespace

CalibrationResult calibrate_model(std::span<const CalibrationPoint> all, OpKind direction,
                                  const BenchSlotConfig& bench) {
  std::vector<CalibrationPoint> pts;
  std::set<InterfaceGeneration> gens;
  for (const CalibrationPoint& p : all)
    if (p.direction == direction) {
      pts.push_back(p);
      gens.insert(p.generation);
    }
  require(pts.size() >= 4 && gens.size() >= 2, ErrorCode::CalibrationFailed,
          "calibration needs at least 4 observations spanning 2 generations, got " +
              std::to_string(pts.size()) + " over " + std::to_string(gens.size()));

  CalibrationResult res;
  res.direction = direction;

  for (InterfaceGeneration g : gens) {
    std::vector<std::array<double, 4>> feats;
    std::vector<double> y;
    for (const CalibrationPoint& p : pts) {
      if (p.generation != g) continue;
      feats.push_back(as_array(request_features(direction, g, bench_request(bench, p.n_tb))));
      y.push_back(p.mean_us);
    }

    // Relative weighting: each row divided by its measurement. Columns are
    // normalized and kept greedily only when they add rank, so duplicated or
    // constant-zero features drop out.
    std::array<double, 4> norm{};
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t r = 0; r < y.size(); ++r) norm[j] += std::pow(feats[r][j] / y[r], 2);
      norm[j] = std::sqrt(norm[j]);
    }
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> a(y.size());
    for (std::size_t j = 0; j < 4; ++j) {
      if (norm[j] == 0.0) continue;
      auto trial = a;
      for (std::size_t r = 0; r < y.size(); ++r) trial[r].push_back(feats[r][j] / y[r] / norm[j]);
      if (matrix_rank(trial) > static_cast<int>(kept.size())) {
        a = std::move(trial);
        kept.push_back(j);
      }
    }
    require(!kept.empty(), ErrorCode::CalibrationFailed,
            std::string("degenerate design matrix for ") + std::string(lpu::generation_name(g)));

    const NnlsResult sol = nnls(a, std::vector<double>(y.size(), 1.0));
    std::array<double, 4> x{};
    for (std::size_t k = 0; k < kept.size(); ++k) x[kept[k]] = sol.x[k] / norm[kept[k]];
    res.model.coefficients(g) = from_array(x);
  }

  for (const CalibrationPoint& p : pts) {
    const CallFeatures f = request_features(direction, p.generation, bench_request(bench, p.n_tb));
    FittedPoint fp{p, res.model.coefficients(p.generation).evaluate(f.calls, f.n_tb, f.n_cb, f.kbits), 0.0};
    fp.relative_residual = (fp.predicted_us - p.mean_us) / p.mean_us;
    res.max_relative_residual = std::max(res.max_relative_residual, std::abs(fp.relative_residual));
    res.points.push_back(fp);
  }
  return res;
}

std::string calibration_to_json(std::span<const CalibrationResult> results) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["models"] = nlohmann::ordered_json::array();
  for (const CalibrationResult& r : results) {
    nlohmann::ordered_json m;
    m["direction"] = lpu::op_kind_name(r.direction);
    m["max_relative_residual"] = r.max_relative_residual;
    nlohmann::ordered_json gens = nlohmann::ordered_json::object();
    for (InterfaceGeneration g : {InterfaceGeneration::PER_CB, InterfaceGeneration::PER_TB,
                                  InterfaceGeneration::PER_SLOT}) {
      const CostCoefficients& c = r.model.coefficients(g);
      gens[std::string(lpu::generation_name(g))] = {{"fixed_per_call_us", c.fixed_per_call_us},
                                                     {"per_tb_us", c.per_tb_us},
                                                     {"per_cb_us", c.per_cb_us},
                                                     {"per_kbit_us", c.per_kbit_us}};
    }
    m["coefficients"] = gens;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const FittedPoint& p : r.points)
      pts.push_back({{"generation", lpu::generation_name(p.point.generation)},
                     {"n_tb", p.point.n_tb},
                     {"measured_us", p.point.mean_us},
                     {"predicted_us", p.predicted_us},
                     {"relative_residual", p.relative_residual}});
    m["points"] = pts;
    doc["models"].push_back(m);
  }
  return doc.dump(2) + "\n";
}

}  // namespace vran::backends
