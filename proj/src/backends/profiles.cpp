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

#include "vran/backends/profiles.hpp"

#include <map>

#include "vran/backends/calibration.hpp"
#include "vran/backends/software_device.hpp"
#include "vran/common/error.hpp"

namespace vran::backends {

namespace {

using lpu::InterfaceGeneration;
using lpu::OpKind;

// Contention tail of a shared card. Fixed after a calibration run of the
// seven-instance deployment.
constexpr JitterModel kSharedCardJitter{JitterKind::LOGNORMAL, 40.0, 1.0};

ServiceTimeModel fitted(OpKind dir, int servers, JitterModel jitter) {
  ServiceTimeModel m = calibrate_model(reference_calibration_points(), dir).model;
  m.parallel_servers = servers;
  m.jitter = jitter;
  return m;
}

ServiceTimeModel per_cb_only(double per_cb_us, int servers) {
  ServiceTimeModel m;
  for (CostCoefficients& c : m.by_generation) c.per_cb_us = per_cb_us;
  m.parallel_servers = servers;
  return m;
}

std::map<std::string, BackendProfile, std::less<>> build_registry() {
  std::map<std::string, BackendProfile, std::less<>> reg;

  BackendProfile t2;
  t2.name = "t2";
  t2.caps = {"t2", true, false, false, true, 16, 35.0, 12.0};
  t2.model_encode = fitted(OpKind::ENCODE, 8, kSharedCardJitter);
  t2.model_decode = fitted(OpKind::DECODE, 8, kSharedCardJitter);
  t2.note = "CB interface only, internal HARQ memory, 8 SD-FEC engines; timing fitted to the EP-RFSoC table";
  reg["t2"] = t2;
  t2.name = "t2-emulated";
  reg["t2-emulated"] = t2;

  BackendProfile vb;
  vb.name = "vran_boost";
  vb.caps = {"vran_boost", true, true, true, false, 16, 35.0, 12.0};
  vb.model_encode = fitted(OpKind::ENCODE, 32, kSharedCardJitter);
  vb.model_decode = fitted(OpKind::DECODE, 32, kSharedCardJitter);
  vb.published = false;
  vb.note = "interface flags published; engine count, rates and timing are assumptions (T2 timing, 32 engines)";
  reg["vran_boost"] = vb;

  BackendProfile acc = vb;
  acc.name = "acc100";
  acc.caps.name = "acc100";
  acc.caps.internal_harq_memory = true;
  acc.model_encode.parallel_servers = 8;
  acc.model_decode.parallel_servers = 8;
  acc.note = "coarse: vran_boost interface flags plus internal HARQ memory; timing borrowed from t2";
  reg["acc100"] = acc;

  BackendProfile sw;
  sw.name = "software";
  sw.kind = BackendKind::SOFTWARE;
  sw.caps = {"software", true, true, false, false, 16, 0.0, 0.0};
  sw.note = "nr_coding on a worker pool";
  reg["software"] = sw;

  // LDPC on the instance's own thread pool. Per-CB costs reproduce the
  // single-instance medians of the CPU-only server (486 us for the 36-CB UL
  // slot, 101 us for the 129-CB DL slot).
  BackendProfile cpu;
  cpu.name = "hpp_cpu";
  cpu.caps = {"hpp_cpu", true, true, false, false, 16, 0.0, 0.0};
  cpu.model_encode = per_cb_only(101.27 / 129.0, 4);
  cpu.model_decode = per_cb_only(485.96 / 36.0, 4);
  cpu.per_owner_servers = true;
  cpu.note = "emulated CPU coding, 4 pool cores per instance, no shared device";
  reg["hpp_cpu"] = cpu;
  return reg;
}

const std::map<std::string, BackendProfile, std::less<>>& registry() {
  static const auto reg = build_registry();
  return reg;
}

}  // namespace

std::vector<std::string> backend_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

const BackendProfile& backend_profile(std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::UnknownBackend, "unknown backend '" + std::string(name) + "'");
  return it->second;
}

lpu::LpuCapabilities discover(std::string_view name) { return backend_profile(name).caps; }

std::shared_ptr<lpu::Device> make_device(std::string_view name, const DeviceOptions& opts) {
  const BackendProfile& p = backend_profile(name);
  if (p.kind == BackendKind::SOFTWARE) return std::make_shared<SoftwareDevice>(p.caps, opts.worker_count);
  EmulatedDeviceConfig cfg;
  cfg.caps = p.caps;
  cfg.model_encode = p.model_encode;
  cfg.model_decode = p.model_decode;
  cfg.model_encode.seed = opts.seed;
  cfg.model_decode.seed = opts.seed;
  cfg.clock = opts.clock;
  cfg.functional = opts.functional;
  cfg.per_owner_servers = p.per_owner_servers;
  return std::make_shared<EmulatedDevice>(std::move(cfg));
}

}  // namespace vran::backends
