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

#include "vran/metrics/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vran/common/error.hpp"
#include "vran/metrics/stats.hpp"

namespace vran::metrics {

using deployment::InstanceMetrics;
using deployment::MetricsBundle;
using nlohmann::ordered_json;

ReportFormat parse_format(std::string_view s) {
  if (s == "json") return ReportFormat::JSON;
  if (s == "csv") return ReportFormat::CSV;
  fail(ErrorCode::InvalidConfig, "format must be json or csv, got '" + std::string(s) + "'");
}

namespace {

struct Series {
  const char* direction;
  const char* metric;
  const char* key;
  std::vector<double> InstanceMetrics::*samples;
};

constexpr Series kSeries[] = {
    {"ul", "coding_us", "ul_decode_us", &InstanceMetrics::ul_decode_us},
    {"ul", "total_us", "ul_total_us", &InstanceMetrics::ul_total_us},
    {"dl", "coding_us", "dl_encode_us", &InstanceMetrics::dl_encode_us},
    {"dl", "total_us", "dl_total_us", &InstanceMetrics::dl_total_us},
};

ordered_json distribution_json(const std::vector<double>& v) {
  if (v.empty()) return nullptr;
  const LatencyDistribution d = summarize(v);
  ordered_json j;
  j["count"] = d.count;
  j["min"] = d.min;
  j["p10"] = d.p10;
  j["q1"] = d.q1;
  j["median"] = d.median;
  j["q3"] = d.q3;
  j["p90"] = d.p90;
  j["max"] = d.max;
  j["mean"] = d.mean;
  return j;
}

std::string export_json(const MetricsBundle& b) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["profile"] = b.profile;
  j["backend"] = b.backend;
  j["n_instances"] = b.n_instances;
  j["duration_slots"] = b.duration_slots;
  j["seed"] = b.seed;
  j["duration_us"] = b.duration_us;
  j["instances"] = ordered_json::array();
  for (const InstanceMetrics& m : b.instances) {
    ordered_json x;
    x["instance_id"] = m.instance_id;
    x["failed"] = m.failed;
    x["failure_slot"] = m.failure.slot_id;
    x["failure_reason"] = m.failure.reason;
    x["ul_slots"] = m.ul_slots;
    x["dl_slots"] = m.dl_slots;
    x["ul_deadline_misses"] = m.ul_deadline_misses;
    x["dl_deadline_misses"] = m.dl_deadline_misses;
    x["ul_ok_bits"] = m.ul_ok_bits;
    x["dl_ok_bits"] = m.dl_ok_bits;
    x["ul_goodput_mbps"] = m.ul_goodput_mbps;
    x["dl_goodput_mbps"] = m.dl_goodput_mbps;
    ordered_json dist, samples;
    for (const Series& s : kSeries) {
      dist[s.key] = distribution_json(m.*s.samples);
      samples[s.key] = m.*s.samples;
    }
    x["distributions"] = dist;
    x["samples"] = samples;
    j["instances"].push_back(x);
  }
  return j.dump(2) + "\n";
}

std::string export_csv(const MetricsBundle& b) {
  std::string out = "instance,direction,metric,count,min,p10,q1,median,q3,p90,max,mean\n";
  char buf[512];
  for (const InstanceMetrics& m : b.instances)
    for (const Series& s : kSeries) {
      const std::vector<double>& v = m.*s.samples;
      if (v.empty()) continue;
      const LatencyDistribution d = summarize(v);
      std::snprintf(buf, sizeof buf, "%d,%s,%s,%lld,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f\n", m.instance_id,
                    s.direction, s.metric, static_cast<long long>(d.count), d.min, d.p10, d.q1, d.median, d.q3,
                    d.p90, d.max, d.mean);
      out += buf;
    }
  return out;
}

highphy::SlotKind kind_from(const std::string& s) {
  if (s == "D") return highphy::SlotKind::D;
  if (s == "S") return highphy::SlotKind::S;
  if (s == "U") return highphy::SlotKind::U;
  fail(ErrorCode::Io, "bad slot kind '" + s + "'");
}

}  // namespace

std::string export_report(const MetricsBundle& bundle, ReportFormat format) {
  return format == ReportFormat::JSON ? export_json(bundle) : export_csv(bundle);
}

std::string export_records_jsonl(const MetricsBundle& bundle) {
  std::string out;
  for (const InstanceMetrics& m : bundle.instances)
    for (const highphy::SlotTimingRecord& r : m.records) {
      ordered_json j;
      j["instance"] = m.instance_id;
      const ordered_json fields = ordered_json::parse(highphy::to_jsonl(r));
      for (const auto& [k, v] : fields.items()) j[k] = v;
      out += j.dump();
      out += '\n';
    }
  return out;
}

MetricsBundle bundle_from_json(std::string_view report, std::string_view records_jsonl) {
  MetricsBundle b;
  try {
    const ordered_json j = ordered_json::parse(report);
    const int version = j.at("schema_version").get<int>();
    if (version != kReportSchemaVersion)
      fail(ErrorCode::Io, "report schema version " + std::to_string(version) + " is not " +
                              std::to_string(kReportSchemaVersion));
    b.profile = j.at("profile").get<std::string>();
    b.backend = j.at("backend").get<std::string>();
    b.n_instances = j.at("n_instances").get<int>();
    b.duration_slots = j.at("duration_slots").get<int64_t>();
    b.seed = j.at("seed").get<uint64_t>();
    b.duration_us = j.at("duration_us").get<double>();
    for (const ordered_json& x : j.at("instances")) {
      InstanceMetrics m;
      m.instance_id = x.at("instance_id").get<int>();
      m.failed = x.at("failed").get<bool>();
      m.failure.slot_id = x.at("failure_slot").get<int64_t>();
      m.failure.reason = x.at("failure_reason").get<std::string>();
      m.ul_slots = x.at("ul_slots").get<int64_t>();
      m.dl_slots = x.at("dl_slots").get<int64_t>();
      m.ul_deadline_misses = x.at("ul_deadline_misses").get<int64_t>();
      m.dl_deadline_misses = x.at("dl_deadline_misses").get<int64_t>();
      m.ul_ok_bits = x.at("ul_ok_bits").get<int64_t>();
      m.dl_ok_bits = x.at("dl_ok_bits").get<int64_t>();
      m.ul_goodput_mbps = x.at("ul_goodput_mbps").get<double>();
      m.dl_goodput_mbps = x.at("dl_goodput_mbps").get<double>();
      for (const Series& s : kSeries) m.*s.samples = x.at("samples").at(s.key).get<std::vector<double>>();
      b.instances.push_back(std::move(m));
    }
    std::istringstream lines{std::string(records_jsonl)};
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      const ordered_json r = ordered_json::parse(line);
      const int id = r.at("instance").get<int>();
      InstanceMetrics* owner = nullptr;
      for (auto& m : b.instances)
        if (m.instance_id == id) owner = &m;
      if (owner == nullptr) fail(ErrorCode::Io, "record for unknown instance " + std::to_string(id));
      highphy::SlotTimingRecord t;
      t.slot_id = r.at("slot_id").get<int64_t>();
      t.kind = kind_from(r.at("kind").get<std::string>());
      t.coding_us = r.at("coding_us").get<double>();
      t.precoding_us = r.at("precoding_us").get<double>();
      t.other_us = r.at("other_us").get<double>();
      t.total_us = r.at("total_us").get<double>();
      t.budget_us = r.at("budget_us").get<double>();
      t.deadline_met = r.at("deadline_met").get<bool>();
      t.num_tbs = r.at("num_tbs").get<int>();
      t.num_cbs = r.at("num_cbs").get<int>();
      t.cbs_ok = r.at("cbs_ok").get<int>();
      t.tbs_ok = r.at("tbs_ok").get<int>();
      t.ok_bits = r.at("ok_bits").get<int64_t>();
      owner->records.push_back(t);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Io, std::string("malformed report: ") + e.what());
  }
  return b;
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::Io, "write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace vran::metrics
