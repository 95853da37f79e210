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

#include <string>
#include <vector>

#include "vran/highphy/cell.hpp"

namespace vran::deployment {

enum class TopologyProfile { HPP, EP_RFSOC, VRANP };

// "hpp", "ep-rfsoc", "vranp". Unknown names throw InvalidConfig.
TopologyProfile parse_profile(const std::string& name);
std::string profile_name(TopologyProfile p);
// Coding backend each server ships with.
std::string default_backend(TopologyProfile p);

// Cores [first, first + size).
struct CoreRange {
  int first = 0;
  int size = 0;

  bool contains(int core) const { return core >= first && core < first + size; }
  friend bool operator==(const CoreRange&, const CoreRange&) = default;
};

// complexes are L3 domains. dies[d] lists the complex indices on die d. On a
// flat topology complexes are only the 8-core planning blocks and crossing
// them costs nothing.
struct CoreTopology {
  std::string name;
  int total_cores = 0;
  std::vector<CoreRange> complexes;
  std::vector<std::vector<int>> dies;
  bool flat = false;

  // Throws InvalidConfig on overlapping or out-of-range complexes, uneven
  // complex sizes or a complex on no die (or two).
  void validate() const;
};

CoreTopology topology_profile(TopologyProfile p);

struct RoleMap {
  int io = -1, worker = -1, l1_tx = -1, l1_rx = -1;
  int system = -1, ru = -1;  // shared with the pool
  std::vector<int> pool;

  friend bool operator==(const RoleMap&, const RoleMap&) = default;
};

struct InstancePlan {
  int instance_id = 0;
  RoleMap roles;
  highphy::CellConfig cell;

  // Distinct cores in ascending order.
  std::vector<int> cores() const;
};

inline constexpr int kCoresPerInstance = 8;
inline constexpr int kMinPoolCores = 4;

// Instance i gets block i + 1: io, worker, l1_tx, l1_rx on its first four
// cores, the pool on the last four with system and ru on the first two of
// those. Block 0 stays with the OS. Capacity error when blocks run out.
std::vector<InstancePlan> default_core_plan(const CoreTopology& topo, int n_instances);

enum class ViolationKind { OUT_OF_RANGE, DIE_CROSSING, COMPLEX_CROSSING, CORE_OVERLAP, ROLE_MAP };

std::string violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::ROLE_MAP;
  int instance = -1;
  int other = -1;  // CORE_OVERLAP: the second instance
  int core = -1;   // OUT_OF_RANGE, CORE_OVERLAP
  std::string detail;
};

struct PlacementReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// One violation per out-of-range core, one crossing per instance (the worse
// of die and complex), one overlap per (instance pair, shared core) and one
// per broken role rule. Violations come sorted by kind, instance, other,
// core.
PlacementReport validate_placement(const CoreTopology& topo, const std::vector<InstancePlan>& plans);

}  // namespace vran::deployment
