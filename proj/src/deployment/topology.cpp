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

#include "vran/deployment/topology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "vran/common/error.hpp"

namespace vran::deployment {

TopologyProfile parse_profile(const std::string& name) {
  if (name == "hpp") return TopologyProfile::HPP;
  if (name == "ep-rfsoc") return TopologyProfile::EP_RFSOC;
  if (name == "vranp") return TopologyProfile::VRANP;
  fail(ErrorCode::InvalidConfig, "unknown topology profile '" + name + "' (hpp, ep-rfsoc, vranp)");
}

std::string profile_name(TopologyProfile p) {
  switch (p) {
    case TopologyProfile::HPP: return "hpp";
    case TopologyProfile::EP_RFSOC: return "ep-rfsoc";
    case TopologyProfile::VRANP: return "vranp";
  }
  return "?";
}

std::string default_backend(TopologyProfile p) {
  switch (p) {
    case TopologyProfile::HPP: return "hpp_cpu";
    case TopologyProfile::EP_RFSOC: return "t2";
    case TopologyProfile::VRANP: return "vran_boost";
  }
  return "software";
}

void CoreTopology::validate() const {
  require(total_cores >= 1, ErrorCode::InvalidConfig, "topology needs cores");
  require(!complexes.empty(), ErrorCode::InvalidConfig, "topology needs at least one complex");
  std::vector<int> owner(static_cast<std::size_t>(total_cores), -1);
  for (std::size_t c = 0; c < complexes.size(); ++c) {
    const CoreRange& r = complexes[c];
    require(r.size == complexes[0].size && r.size >= 1, ErrorCode::InvalidConfig, "complex sizes must be uniform");
    require(r.first >= 0 && r.first + r.size <= total_cores, ErrorCode::InvalidConfig, "complex outside the core range");
    for (int k = r.first; k < r.first + r.size; ++k) {
      require(owner[static_cast<std::size_t>(k)] < 0, ErrorCode::InvalidConfig, "complexes overlap");
      owner[static_cast<std::size_t>(k)] = static_cast<int>(c);
    }
  }
  std::vector<int> on_die(complexes.size(), 0);
  for (const auto& d : dies)
    for (int c : d) {
      require(c >= 0 && c < static_cast<int>(complexes.size()), ErrorCode::InvalidConfig, "die lists unknown complex");
      ++on_die[static_cast<std::size_t>(c)];
    }
  for (int n : on_die) require(n == 1, ErrorCode::InvalidConfig, "every complex must sit on exactly one die");
}

namespace {

CoreTopology blocks(std::string name, int total, int complexes_per_die, bool flat) {
  CoreTopology t;
  t.name = std::move(name);
  t.total_cores = total;
  t.flat = flat;
  const int n = total / kCoresPerInstance;
  for (int c = 0; c < n; ++c) t.complexes.push_back({c * kCoresPerInstance, kCoresPerInstance});
  for (int c = 0; c < n; c += complexes_per_die) {
    std::vector<int> die;
    for (int k = c; k < std::min(n, c + complexes_per_die); ++k) die.push_back(k);
    t.dies.push_back(die);
  }
  return t;
}

}  // namespace

CoreTopology topology_profile(TopologyProfile p) {
  switch (p) {
    case TopologyProfile::HPP: return blocks("hpp", 64, 1, false);
    case TopologyProfile::EP_RFSOC: return blocks("ep-rfsoc", 64, 2, false);
    case TopologyProfile::VRANP: return blocks("vranp", 32, 4, true);
  }
  fail(ErrorCode::InvalidConfig, "unknown topology profile");
}

std::vector<int> InstancePlan::cores() const {
  std::set<int> s(roles.pool.begin(), roles.pool.end());
  for (int c : {roles.io, roles.worker, roles.l1_tx, roles.l1_rx, roles.system, roles.ru}) s.insert(c);
  return {s.begin(), s.end()};
}

std::vector<InstancePlan> default_core_plan(const CoreTopology& topo, int n_instances) {
  topo.validate();
  require(n_instances >= 1, ErrorCode::InvalidConfig, "need at least one instance");
  std::vector<CoreRange> usable;
  for (std::size_t c = 1; c < topo.complexes.size(); ++c)
    if (topo.complexes[c].size >= kCoresPerInstance) usable.push_back(topo.complexes[c]);
  require(n_instances <= static_cast<int>(usable.size()), ErrorCode::Capacity,
          std::to_string(n_instances) + " instances need " + std::to_string(n_instances) + " free " +
              std::to_string(kCoresPerInstance) + "-core blocks, " + topo.name + " has " +
              std::to_string(usable.size()) + " after the OS block");
  std::vector<InstancePlan> plans;
  for (int i = 0; i < n_instances; ++i) {
    const int b = usable[static_cast<std::size_t>(i)].first;
    InstancePlan p;
    p.instance_id = i;
    p.roles.io = b;
    p.roles.worker = b + 1;
    p.roles.l1_tx = b + 2;
    p.roles.l1_rx = b + 3;
    p.roles.pool = {b + 4, b + 5, b + 6, b + 7};
    p.roles.system = b + 4;
    p.roles.ru = b + 5;
    plans.push_back(p);
  }
  return plans;
}

std::string violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::OUT_OF_RANGE: return "out_of_range";
    case ViolationKind::DIE_CROSSING: return "die_crossing";
    case ViolationKind::COMPLEX_CROSSING: return "complex_crossing";
    case ViolationKind::CORE_OVERLAP: return "core_overlap";
    case ViolationKind::ROLE_MAP: return "role_map";
  }
  return "?";
}

namespace {

void check_roles(const InstancePlan& p, std::vector<Violation>& out) {
  auto breach = [&](const std::string& what) { out.push_back({ViolationKind::ROLE_MAP, p.instance_id, -1, -1, what}); };
  const RoleMap& r = p.roles;
  const std::set<int> exclusive = {r.io, r.worker, r.l1_tx, r.l1_rx};
  const std::set<int> pool(r.pool.begin(), r.pool.end());
  if (exclusive.size() != 4) breach("exclusive roles share a core");
  for (int c : exclusive)
    if (pool.count(c) != 0) {
      breach("exclusive role core is in the pool");
      break;
    }
  if (static_cast<int>(pool.size()) < kMinPoolCores) breach("pool has fewer than 4 cores");
  if (pool.count(r.system) == 0) breach("system core is not in the pool");
  if (pool.count(r.ru) == 0) breach("ru core is not in the pool");
  if (static_cast<int>(p.cores().size()) != kCoresPerInstance) breach("instance does not use exactly 8 cores");
}

}  // namespace

PlacementReport validate_placement(const CoreTopology& topo, const std::vector<InstancePlan>& plans) {
  std::vector<int> complex_of(static_cast<std::size_t>(std::max(0, topo.total_cores)), -1);
  for (std::size_t c = 0; c < topo.complexes.size(); ++c)
    for (int k = topo.complexes[c].first; k < topo.complexes[c].first + topo.complexes[c].size; ++k)
      if (k >= 0 && k < topo.total_cores) complex_of[static_cast<std::size_t>(k)] = static_cast<int>(c);
  std::map<int, int> die_of;
  for (std::size_t d = 0; d < topo.dies.size(); ++d)
    for (int c : topo.dies[d]) die_of[c] = static_cast<int>(d);

  std::vector<Violation> out;
  std::map<int, std::vector<int>> users;  // core -> instances
  for (const InstancePlan& p : plans) {
    std::set<int> complexes, dies;
    for (int core : p.cores()) {
      const bool in_range = core >= 0 && core < topo.total_cores && complex_of[static_cast<std::size_t>(core)] >= 0;
      if (!in_range) {
        out.push_back({ViolationKind::OUT_OF_RANGE, p.instance_id, -1, core, "core outside every complex"});
        continue;
      }
      const int c = complex_of[static_cast<std::size_t>(core)];
      complexes.insert(c);
      dies.insert(die_of.count(c) != 0 ? die_of[c] : -1);
      users[core].push_back(p.instance_id);
    }
    if (!topo.flat && complexes.size() > 1) {
      const bool die = dies.size() > 1;
      out.push_back({die ? ViolationKind::DIE_CROSSING : ViolationKind::COMPLEX_CROSSING, p.instance_id, -1, -1,
                     "instance spans " + std::to_string(complexes.size()) + " complexes" +
                         (die ? " on " + std::to_string(dies.size()) + " dies" : "")});
    }
    check_roles(p, out);
  }
  for (const auto& [core, ids] : users)
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        out.push_back({ViolationKind::CORE_OVERLAP, std::min(ids[a], ids[b]), std::max(ids[a], ids[b]), core,
                       "core " + std::to_string(core) + " assigned twice"});

  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.kind, x.instance, x.other, x.core, x.detail) < std::tie(y.kind, y.instance, y.other, y.core, y.detail);
  });
  return {out};
}

}  // namespace vran::deployment
