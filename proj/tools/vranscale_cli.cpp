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

// vranscale command-line entry point.
//
// Exit codes: 0 success, 1 a deploy run missed its throughput targets or a
// plan has violations, 2 usage, config, capacity or I/O errors.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vran/backends/calibration.hpp"
#include "vran/common/error.hpp"
#include "vran/deployment/deployment.hpp"
#include "vran/deployment/topology.hpp"
#include "vran/metrics/report.hpp"
#include "vran/metrics/stats.hpp"
#include "vran/slot/interface_bench.hpp"

using namespace vran;
using nlohmann::ordered_json;

namespace {

constexpr int kExitTargets = 1;
constexpr int kExitUsage = 2;

struct Globals {
  uint64_t seed = 1;
  bool seed_set = false;
  std::string config;
  std::string format;
};

metrics::ReportFormat format_or(const Globals& g, metrics::ReportFormat fallback) {
  return g.format.empty() ? fallback : metrics::parse_format(g.format);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    metrics::write_file(out_path, text);
  }
}

// bench-interfaces

struct BenchArgs {
  std::string backend = "t2-emulated";
  std::string direction = "decode";
  int repetitions = 100;
  std::string out;
};

int run_bench(const Globals& g, const BenchArgs& a) {
  slot::InterfaceBenchConfig cfg;
  cfg.backend = a.backend;
  cfg.direction = lpu::parse_op_kind(a.direction);
  cfg.repetitions = a.repetitions;
  cfg.seed = g.seed;
  const auto rows = slot::run_interface_bench(cfg);
  const bool csv = format_or(g, metrics::ReportFormat::CSV) == metrics::ReportFormat::CSV;
  emit(csv ? slot::bench_to_csv(rows) : slot::bench_to_json(cfg, rows), a.out);
  for (const auto& r : rows)
    if (!r.outputs_verified) {
      std::cerr << "coding outputs did not verify for " << lpu::generation_name(r.generation) << " n_tb=" << r.n_tb
                << "\n";
      return kExitTargets;
    }
  return 0;
}

// calibrate

struct CalibrateArgs {
  std::string csv;
  std::string out;
};

int run_calibrate(const Globals& g, const CalibrateArgs& a) {
  const std::vector<backends::CalibrationPoint> points =
      a.csv.empty() ? backends::reference_calibration_points()
                    : backends::parse_calibration_csv(metrics::read_file(a.csv));
  std::vector<backends::CalibrationResult> results;
  for (lpu::OpKind k : {lpu::OpKind::DECODE, lpu::OpKind::ENCODE}) results.push_back(backends::calibrate_model(points, k));
  if (format_or(g, metrics::ReportFormat::JSON) == metrics::ReportFormat::JSON) {
    emit(backends::calibration_to_json(results), a.out);
    return 0;
  }
  std::string csv = "direction,generation,n_tb,measured_us,fitted_us,relative_residual\n";
  char buf[256];
  for (const auto& r : results)
    for (const auto& p : r.points) {
      std::snprintf(buf, sizeof buf, "%s,%s,%d,%.2f,%.2f,%.4f\n", std::string(lpu::op_kind_name(r.direction)).c_str(),
                    std::string(lpu::generation_name(p.point.generation)).c_str(), p.point.n_tb, p.point.mean_us,
                    p.predicted_us, p.relative_residual);
      csv += buf;
    }
  emit(csv, a.out);
  return 0;
}

// plan

struct PlanArgs {
  std::string profile = "ep-rfsoc";
  int instances = 7;
  std::string validate;
  std::string out;
};

ordered_json plans_json(const std::vector<deployment::InstancePlan>& plans) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : plans) {
    ordered_json j;
    j["instance_id"] = p.instance_id;
    j["io"] = p.roles.io;
    j["worker"] = p.roles.worker;
    j["l1_tx"] = p.roles.l1_tx;
    j["l1_rx"] = p.roles.l1_rx;
    j["system"] = p.roles.system;
    j["ru"] = p.roles.ru;
    j["pool"] = p.roles.pool;
    arr.push_back(j);
  }
  return arr;
}

std::vector<deployment::InstancePlan> plans_from_json(const std::string& text) {
  std::vector<deployment::InstancePlan> plans;
  try {
    const ordered_json doc = ordered_json::parse(text);
    const ordered_json& arr = doc.is_array() ? doc : doc.at("plans");
    for (const auto& j : arr) {
      deployment::InstancePlan p;
      p.instance_id = j.at("instance_id").get<int>();
      p.roles.io = j.at("io").get<int>();
      p.roles.worker = j.at("worker").get<int>();
      p.roles.l1_tx = j.at("l1_tx").get<int>();
      p.roles.l1_rx = j.at("l1_rx").get<int>();
      p.roles.system = j.at("system").get<int>();
      p.roles.ru = j.at("ru").get<int>();
      p.roles.pool = j.at("pool").get<std::vector<int>>();
      plans.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("bad plan file: ") + e.what());
  }
  return plans;
}

int run_plan(const Globals& g, const PlanArgs& a) {
  const deployment::CoreTopology topo = deployment::topology_profile(deployment::parse_profile(a.profile));
  const std::vector<deployment::InstancePlan> plans =
      a.validate.empty() ? deployment::default_core_plan(topo, a.instances)
                         : plans_from_json(metrics::read_file(a.validate));
  const deployment::PlacementReport rep = deployment::validate_placement(topo, plans);

  if (format_or(g, metrics::ReportFormat::JSON) == metrics::ReportFormat::JSON) {
    ordered_json j;
    j["schema_version"] = metrics::kReportSchemaVersion;
    j["profile"] = a.profile;
    j["plans"] = plans_json(plans);
    j["violations"] = ordered_json::array();
    for (const auto& v : rep.violations) {
      ordered_json x;
      x["kind"] = deployment::violation_name(v.kind);
      x["instance"] = v.instance;
      x["other"] = v.other;
      x["core"] = v.core;
      x["detail"] = v.detail;
      j["violations"].push_back(x);
    }
    emit(j.dump(2) + "\n", a.out);
  } else {
    std::ostringstream os;
    os << "instance,io,worker,l1_tx,l1_rx,system,ru,pool\n";
    for (const auto& p : plans) {
      os << p.instance_id << ',' << p.roles.io << ',' << p.roles.worker << ',' << p.roles.l1_tx << ','
         << p.roles.l1_rx << ',' << p.roles.system << ',' << p.roles.ru << ',';
      for (std::size_t i = 0; i < p.roles.pool.size(); ++i) os << (i ? ";" : "") << p.roles.pool[i];
      os << '\n';
    }
    emit(os.str(), a.out);
  }
  for (const auto& v : rep.violations)
    std::cerr << deployment::violation_name(v.kind) << ": instance " << v.instance << ": " << v.detail << "\n";
  return rep.ok() ? 0 : kExitTargets;
}

// deploy

struct DeployArgs {
  std::optional<std::string> profile;
  std::optional<int> instances;
  std::optional<int64_t> slots;
  std::optional<std::string> backend;
  std::string out;
  std::string records;
};

int run_deploy(const Globals& g, const DeployArgs& a) {
  deployment::DeploymentConfig cfg = g.config.empty() ? deployment::DeploymentConfig{} : deployment::load_config(g.config);
  if (a.profile) cfg.topology = deployment::parse_profile(*a.profile);
  if (a.instances) cfg.n_instances = *a.instances;
  if (a.slots) cfg.duration_slots = *a.slots;
  if (a.backend) cfg.backend = *a.backend;
  if (g.seed_set || g.config.empty()) cfg.seed = g.seed;
  cfg.validate();

  const deployment::MetricsBundle bundle = deployment::run_deployment(cfg);
  emit(metrics::export_report(bundle, format_or(g, metrics::ReportFormat::JSON)), a.out);
  if (!a.records.empty()) metrics::write_file(a.records, metrics::export_records_jsonl(bundle));

  bool all = true;
  for (const auto& v : deployment::check_throughput(bundle)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "instance %d: DL %.1f Mbps %s, UL %.1f Mbps %s\n", v.instance_id, v.dl_mbps,
                  v.dl_pass ? "pass" : "FAIL", v.ul_mbps, v.ul_pass ? "pass" : "FAIL");
    std::cerr << buf;
    all = all && v.pass();
  }
  return all ? 0 : kExitTargets;
}

// report

struct ReportArgs {
  std::string input;
  std::string field = "coding_us";
  std::string out;
};

int run_report(const Globals& g, const ReportArgs& a) {
  const std::string text = metrics::read_file(a.input);
  // Plain files hold one number per line; JSON-lines slot records are
  // grouped by instance and slot kind.
  std::map<std::string, std::vector<double>> groups;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      if (line[line.find_first_not_of(" \t")] == '{') {
        const ordered_json j = ordered_json::parse(line);
        const std::string key =
            "instance=" + std::to_string(j.value("instance", 0)) + " kind=" + j.at("kind").get<std::string>();
        groups[key].push_back(j.at(a.field).get<double>());
      } else {
        std::size_t used = 0;
        const double v = std::stod(line, &used);
        if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("trailing text");
        groups["samples"].push_back(v);
      }
    } catch (const std::exception& e) {
      fail(ErrorCode::InvalidConfig, a.input + ":" + std::to_string(lineno) + ": cannot read sample (" + e.what() + ")");
    }
  }
  require(!groups.empty(), ErrorCode::EmptyInput, a.input + " holds no samples");

  const bool csv = format_or(g, metrics::ReportFormat::JSON) == metrics::ReportFormat::CSV;
  std::string out = csv ? "group,count,min,p10,q1,median,q3,p90,max,mean\n" : "";
  ordered_json j;
  j["schema_version"] = metrics::kReportSchemaVersion;
  j["field"] = a.field;
  j["groups"] = ordered_json::object();
  for (const auto& [key, v] : groups) {
    const metrics::LatencyDistribution d = metrics::summarize(v);
    if (csv) {
      char buf[320];
      std::snprintf(buf, sizeof buf, "%s,%lld,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f\n", key.c_str(),
                    static_cast<long long>(d.count), d.min, d.p10, d.q1, d.median, d.q3, d.p90, d.max, d.mean);
      out += buf;
    } else {
      j["groups"][key] = {{"count", d.count}, {"min", d.min},       {"p10", d.p10}, {"q1", d.q1},    {"median", d.median},
                          {"q3", d.q3},       {"p90", d.p90},       {"max", d.max}, {"mean", d.mean}};
    }
  }
  emit(csv ? out : j.dump(2) + "\n", a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vranscale: slot-batched LDPC coding, accelerator emulation and multi-instance vRAN deployment"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--config", g.config, "deployment config file (JSON)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  BenchArgs bench;
  auto* b = app.add_subcommand("bench-interfaces", "interface-generation timing table per TB count");
  b->add_option("--backend", bench.backend, "backend profile")->capture_default_str();
  b->add_option("--direction", bench.direction, "decode or encode")->capture_default_str();
  b->add_option("--repetitions", bench.repetitions, "repetitions per point")->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "output file (default stdout)");

  CalibrateArgs cal;
  auto* c = app.add_subcommand("calibrate", "fit call-cost models from a measurement CSV");
  c->add_option("--csv", cal.csv, "direction,generation,n_tb,mean_us CSV (default: shipped reference)");
  c->add_option("--out", cal.out, "output file (default stdout)");

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "emit or validate per-instance core plans");
  p->add_option("--profile", plan.profile, "hpp, ep-rfsoc or vranp")->capture_default_str();
  p->add_option("--instances", plan.instances, "instance count")->capture_default_str();
  p->add_option("--validate", plan.validate, "check a plan file instead of emitting the default plan");
  p->add_option("--out", plan.out, "output file (default stdout)");

  DeployArgs dep;
  auto* d = app.add_subcommand("deploy", "run a multi-instance deployment and report");
  d->add_option("--profile", dep.profile, "hpp, ep-rfsoc or vranp");
  d->add_option("--instances", dep.instances, "instance count");
  d->add_option("--slots", dep.slots, "duration in slots");
  d->add_option("--backend", dep.backend, "coding backend (default: the profile's)");
  d->add_option("--out", dep.out, "report file (default stdout)");
  d->add_option("--records", dep.records, "write slot records as JSON lines");

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "summarize raw latency samples");
  r->add_option("--input", rep.input, "one number per line, or slot-record JSON lines")->required();
  r->add_option("--field", rep.field, "record field to summarize")->capture_default_str();
  r->add_option("--out", rep.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*b) return run_bench(g, bench);
    if (*c) return run_calibrate(g, cal);
    if (*p) return run_plan(g, plan);
    if (*d) return run_deploy(g, dep);
    if (*r) return run_report(g, rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
