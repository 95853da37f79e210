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
#include <string_view>

#include "vran/deployment/deployment.hpp"

namespace vran::metrics {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { JSON, CSV };

// "json" or "csv"; anything else is InvalidConfig.
ReportFormat parse_format(std::string_view s);

// JSON: run header, then one block per instance with counters, boxplot
// distributions and the raw coding/total samples.
// CSV: header line, then one row per (instance, direction, metric) that has
// samples:
//   instance,direction,metric,count,min,p10,q1,median,q3,p90,max,mean
// Both are byte-stable for a given bundle.
std::string export_report(const deployment::MetricsBundle& bundle, ReportFormat format);

// Slot records, one JSON object per line, each tagged with its instance.
std::string export_records_jsonl(const deployment::MetricsBundle& bundle);

// Inverse of the JSON report, with records restored from the JSON-lines
// stream when given. Throws Io on malformed input or another schema version.
deployment::MetricsBundle bundle_from_json(std::string_view report, std::string_view records_jsonl = {});

// Writes text to path; Io on failure.
void write_file(const std::string& path, std::string_view text);
std::string read_file(const std::string& path);

}  // namespace vran::metrics
