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

#include "vran/deployment/deployment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "vran/backends/profiles.hpp"
#include "vran/common/error.hpp"
#include "vran/lpu/lpu.hpp"
#include "vran/nr/transport_block.hpp"
#include "vran/slot/slot_coding.hpp"

namespace vran::deployment {

using highphy::SlotKind;
using highphy::SlotTimingRecord;
using nlohmann::ordered_json;

highphy::PipelineConfig DeploymentConfig::default_pipeline() {
  highphy::PipelineConfig p;
  p.precoding = highphy::PrecodingTiming::MODELED;
  return p;
}

void DeploymentConfig::validate() const {
  require(n_instances >= 1, ErrorCode::InvalidConfig, "n_instances must be >= 1");
  require(duration_slots >= 1, ErrorCode::InvalidConfig, "duration_slots must be >= 1");
  require(traffic.tbs_per_slot >= 1, ErrorCode::InvalidConfig, "tbs_per_slot must be >= 1");
  require(ul_arrival_jitter_us >= 0.0, ErrorCode::InvalidConfig, "ul_arrival_jitter_us must be >= 0");
  require(functional_samples >= 1, ErrorCode::InvalidConfig, "functional_samples must be >= 1");
  require(queue_depth >= 1, ErrorCode::InvalidConfig, "queue_depth must be >= 1");
  require(failure_run >= 1, ErrorCode::InvalidConfig, "failure_run must be >= 1");
  pipeline.cell.validate();
}

namespace {

constexpr const char* kDeviceId = "shared";

struct Outcome {
  int cbs_ok = 0;
  int tbs_ok = 0;
  int64_t ok_bits = 0;
};

std::vector<float> channel(BitSpan bits, double sigma, std::mt19937_64& rng) {
  if (sigma == 0.0) return nr::bits_to_llrs(bits, 8.0f);
  if (sigma > 0.0) return nr::awgn_llrs(bits, sigma, rng);
  std::normal_distribution<float> n(0.0f, 2.0f);
  std::vector<float> out(bits.size());
  for (float& v : out) v = n(rng);
  return out;
}

// Per direction, the first functional_samples slots run the whole chain and
// later slots replay those outcomes round robin. Every slot of a direction
// has the same shape, so only the payload would differ.
class OutcomeCache {
 public:
  explicit OutcomeCache(int samples) : samples_(samples) {}

  // Index of a functional sample to fill, or -1 to replay.
  int claim(slot::Direction d) {
    std::lock_guard<std::mutex> lk(mu_);
    Slot& s = slot_for(d);
    if (s.claimed < samples_) return s.claimed++;
    return -1;
  }
  void store(slot::Direction d, int index, Outcome o) {
    std::lock_guard<std::mutex> lk(mu_);
    Slot& s = slot_for(d);
    if (s.done.size() <= static_cast<std::size_t>(index)) s.done.resize(static_cast<std::size_t>(index) + 1);
    s.done[static_cast<std::size_t>(index)] = o;
  }
  // Replay; waits in wall mode until a sample exists.
  Outcome replay(slot::Direction d) {
    for (;;) {
      {
        std::lock_guard<std::mutex> lk(mu_);
        Slot& s = slot_for(d);
        if (!s.done.empty()) return s.done[s.next++ % s.done.size()];
      }
      std::this_thread::yield();
    }
  }

 private:
  struct Slot {
    int claimed = 0;
    std::vector<Outcome> done;
    std::size_t next = 0;
  };
  Slot& slot_for(slot::Direction d) { return d == slot::Direction::UL ? ul_ : dl_; }

  int samples_;
  std::mutex mu_;
  Slot ul_, dl_;
};

struct Event {
  double time_us = 0.0;  // coding arrival
  double start_us = 0.0;
  int instance = 0;
  int64_t slot = 0;
  SlotKind kind = SlotKind::D;
  double jitter_us = 0.0;
};

struct Instance {
  int id = 0;
  slot::HarqPool harq;
  slot::SlotExecutor ul, dl;
  int consecutive_misses = 0;
  InstanceMetrics metrics;
};

class Runner {
 public:
  explicit Runner(const DeploymentConfig& cfg) : cfg_(cfg), cache_(cfg.functional_samples) {
    cfg_.validate();
    const CoreTopology topo = topology_profile(cfg_.topology);
    const std::vector<InstancePlan> plans = default_core_plan(topo, cfg_.n_instances);
    const PlacementReport rep = validate_placement(topo, plans);
    if (!rep.ok()) fail(ErrorCode::InvalidConfig, "default plan does not validate: " + rep.violations.front().detail);

    backends::DeviceOptions opts;
    opts.seed = cfg_.seed;
    opts.clock = cfg_.clock;
    lpu_.register_device(kDeviceId, backends::make_device(cfg_.resolved_backend(), opts));

    const highphy::CellConfig& cell = cfg_.pipeline.cell;
    const TrafficConfig& t = cfg_.traffic;
    dl_template_ = slot::make_jobs(cell.prbs, t.tbs_per_slot, t.dl_mcs, t.dl_table, t.dl_layers, 0, t.symbols,
                                   t.dl_overhead);
    ul_template_ = slot::make_jobs(cell.prbs, t.tbs_per_slot, t.ul_mcs, t.ul_table, t.ul_layers, 0, t.symbols,
                                   t.ul_overhead);
    for (auto* jobs : {&dl_template_, &ul_template_})
      for (auto& j : *jobs) j.payload.clear();

    instances_.resize(static_cast<std::size_t>(cfg_.n_instances));
    for (int i = 0; i < cfg_.n_instances; ++i) {
      Instance& in = instances_[static_cast<std::size_t>(i)];
      in.id = i;
      in.metrics.instance_id = i;
      try {
        in.ul = {&lpu_, lpu_.open_queue(kDeviceId, i, cfg_.queue_depth), &in.harq, {}, slot::CodingMode::TIMING_ONLY};
        in.dl = {&lpu_, lpu_.open_queue(kDeviceId, i, cfg_.queue_depth), &in.harq, {}, slot::CodingMode::TIMING_ONLY};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ResourceExhausted) throw;
        fail(ErrorCode::Capacity, std::string("device queues exhausted: ") + e.what());
      }
    }
  }

  MetricsBundle run() {
    std::vector<Event> events = make_events();
    if (cfg_.clock == backends::ClockMode::VIRTUAL) {
      for (const Event& ev : events) process(ev);
    } else {
      run_wall(events);
    }
    return bundle();
  }

 private:
  std::vector<Event> make_events() const {
    std::vector<Event> events;
    const highphy::StageCosts& costs = cfg_.pipeline.costs;
    const double tti = cfg_.pipeline.cell.tti_us;
    for (int i = 0; i < cfg_.n_instances; ++i) {
      std::seed_seq seq{cfg_.seed, static_cast<uint64_t>(i), uint64_t{0x51075}};
      std::mt19937_64 rng(seq);
      const double phase = i == 0 ? 0.0 : std::uniform_real_distribution<double>(0.0, tti)(rng);
      std::normal_distribution<double> jitter(0.0, 1.0);
      for (int64_t s = 0; s < cfg_.duration_slots; ++s) {
        const SlotKind kind = highphy::tdd_slot_kind(s, cfg_.pipeline.cell.tdd_pattern);
        if (kind == SlotKind::S) continue;
        Event ev;
        ev.start_us = phase + static_cast<double>(s) * tti;
        ev.instance = i;
        ev.slot = s;
        ev.kind = kind;
        if (kind == SlotKind::U) ev.jitter_us = std::max(0.0, jitter(rng)) * cfg_.ul_arrival_jitter_us;
        ev.time_us = ev.start_us + ev.jitter_us + (kind == SlotKind::U ? costs.ul_other_us : costs.dl_other_us);
        events.push_back(ev);
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return std::tie(a.time_us, a.instance, a.slot) < std::tie(b.time_us, b.instance, b.slot);
    });
    return events;
  }

  void run_wall(const std::vector<Event>& events) {
    std::vector<std::vector<Event>> per(instances_.size());
    for (const Event& ev : events) per[static_cast<std::size_t>(ev.instance)].push_back(ev);
    const auto epoch = std::chrono::steady_clock::now();
    std::vector<std::thread> threads;
    for (auto& list : per)
      threads.emplace_back([&, list] {
        for (const Event& ev : list) {
          std::this_thread::sleep_until(epoch + std::chrono::duration<double, std::micro>(ev.time_us));
          process(ev);
        }
      });
    for (auto& t : threads) t.join();
  }

  slot::SlotCodingRequest request(const Event& ev, slot::Direction d, int sample) const {
    slot::SlotCodingRequest r;
    r.slot_id = ev.slot;
    r.direction = d;
    r.generation = cfg_.generation;
    r.jobs = d == slot::Direction::DL ? dl_template_ : ul_template_;
    if (sample < 0) return r;
    const TrafficConfig& t = cfg_.traffic;
    const uint64_t payload_seed = cfg_.seed * 7919ULL + static_cast<uint64_t>(sample) * 2 + (d == slot::Direction::UL);
    r.jobs = d == slot::Direction::DL
                 ? slot::make_jobs(cfg_.pipeline.cell.prbs, t.tbs_per_slot, t.dl_mcs, t.dl_table, t.dl_layers,
                                   payload_seed, t.symbols, t.dl_overhead)
                 : slot::make_jobs(cfg_.pipeline.cell.prbs, t.tbs_per_slot, t.ul_mcs, t.ul_table, t.ul_layers,
                                   payload_seed, t.symbols, t.ul_overhead);
    if (d == slot::Direction::UL) {
      std::mt19937_64 rng(payload_seed);
      for (auto& j : r.jobs) {
        const nr::TbShape s = nr::make_tb_shape(j.tbs_inputs());
        j.llrs = channel(nr::encode_tb(j.payload, s, j.rv), t.ul_noise_sigma, rng);
      }
    }
    return r;
  }

  // What a UE would recover from the DL slot.
  Outcome dl_receiver(const slot::SlotCodingRequest& r, const slot::SlotCodingResult& coded, uint64_t seed) const {
    Outcome o;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < r.jobs.size(); ++i) {
      const nr::TbShape s = nr::make_tb_shape(r.jobs[i].tbs_inputs());
      const std::vector<float> llrs = channel(coded.jobs[i].encoded, cfg_.traffic.dl_noise_sigma, rng);
      const nr::TbDecodeResult d = nr::decode_tb(llrs, s, 0);
      o.cbs_ok += static_cast<int>(std::count(d.cb_crc_ok.begin(), d.cb_crc_ok.end(), true));
      if (d.crc_ok && d.payload == r.jobs[i].payload) {
        ++o.tbs_ok;
        o.ok_bits += s.tbs;
      }
    }
    return o;
  }

  void process(const Event& ev) {
    Instance& in = instances_[static_cast<std::size_t>(ev.instance)];
    if (in.metrics.failed) return;
    const bool ul = ev.kind == SlotKind::U;
    const slot::Direction d = ul ? slot::Direction::UL : slot::Direction::DL;
    slot::SlotExecutor& exec = ul ? in.ul : in.dl;
    const int sample = cache_.claim(d);
    exec.mode = sample >= 0 ? slot::CodingMode::FUNCTIONAL : slot::CodingMode::TIMING_ONLY;
    const slot::SlotCodingRequest req = request(ev, d, sample);
    if (cfg_.clock == backends::ClockMode::VIRTUAL) lpu_.set_time(exec.queue, ev.start_us);

    SlotTimingRecord r;
    Outcome o;
    try {
      if (ul) {
        r = highphy::run_ul_slot(cfg_.pipeline, req, exec, ev.jitter_us);
        o = {r.cbs_ok, r.tbs_ok, r.ok_bits};
      } else {
        slot::SlotCodingResult coded;
        r = highphy::run_dl_slot(cfg_.pipeline, req, exec, ev.jitter_us, nullptr, &coded);
        if (sample >= 0) o = dl_receiver(req, coded, cfg_.seed * 31 + static_cast<uint64_t>(sample));
      }
    } catch (const Error& e) {
      if (sample >= 0) cache_.store(d, sample, {});
      mark_failed(in, ev.slot, e.what());
      return;
    }
    if (sample >= 0) {
      cache_.store(d, sample, o);
    } else {
      o = cache_.replay(d);
    }
    r.cbs_ok = o.cbs_ok;
    r.tbs_ok = o.tbs_ok;
    r.ok_bits = o.ok_bits;
    record(in, r);
  }

  void record(Instance& in, const SlotTimingRecord& r) {
    InstanceMetrics& m = in.metrics;
    if (r.kind == SlotKind::U) {
      ++m.ul_slots;
      m.ul_decode_us.push_back(r.coding_us);
      m.ul_total_us.push_back(r.total_us);
      m.ul_ok_bits += r.ok_bits;
      if (!r.deadline_met) ++m.ul_deadline_misses;
      in.consecutive_misses = r.deadline_met ? 0 : in.consecutive_misses + 1;
    } else {
      ++m.dl_slots;
      m.dl_encode_us.push_back(r.coding_us);
      m.dl_total_us.push_back(r.total_us);
      m.dl_ok_bits += r.ok_bits;
      if (!r.deadline_met) ++m.dl_deadline_misses;
    }
    m.records.push_back(r);
    if (in.consecutive_misses >= cfg_.failure_run)
      mark_failed(in, r.slot_id, std::to_string(cfg_.failure_run) + " consecutive UL deadline misses");
  }

  static void mark_failed(Instance& in, int64_t slot_id, const std::string& reason) {
    in.metrics.failed = true;
    in.metrics.failure = {slot_id, reason};
  }

  MetricsBundle bundle() {
    MetricsBundle b;
    b.profile = profile_name(cfg_.topology);
    b.backend = cfg_.resolved_backend();
    b.n_instances = cfg_.n_instances;
    b.duration_slots = cfg_.duration_slots;
    b.seed = cfg_.seed;
    b.duration_us = static_cast<double>(cfg_.duration_slots) * cfg_.pipeline.cell.tti_us;
    for (Instance& in : instances_) {
      InstanceMetrics& m = in.metrics;
      m.dl_goodput_mbps = static_cast<double>(m.dl_ok_bits) / b.duration_us;
      m.ul_goodput_mbps = static_cast<double>(m.ul_ok_bits) / b.duration_us;
      b.instances.push_back(std::move(m));
    }
    return b;
  }

  DeploymentConfig cfg_;
  OutcomeCache cache_;
  lpu::Lpu lpu_;
  std::vector<slot::TransportBlockJob> dl_template_, ul_template_;
  std::vector<Instance> instances_;
};

}  // namespace

MetricsBundle run_deployment(const DeploymentConfig& cfg) { return Runner(cfg).run(); }

std::vector<InstanceVerdict> check_throughput(const MetricsBundle& bundle, ThroughputTargets targets) {
  std::vector<InstanceVerdict> out;
  for (const InstanceMetrics& m : bundle.instances) {
    InstanceVerdict v;
    v.instance_id = m.instance_id;
    v.dl_mbps = m.dl_goodput_mbps;
    v.ul_mbps = m.ul_goodput_mbps;
    v.dl_pass = !m.failed && v.dl_mbps >= targets.dl_mbps;
    v.ul_pass = !m.failed && v.ul_mbps >= targets.ul_mbps;
    out.push_back(v);
  }
  return out;
}

namespace {

std::string clock_name(backends::ClockMode c) { return c == backends::ClockMode::VIRTUAL ? "virtual" : "wall"; }

backends::ClockMode parse_clock(const std::string& s) {
  if (s == "virtual") return backends::ClockMode::VIRTUAL;
  if (s == "wall") return backends::ClockMode::WALL;
  fail(ErrorCode::InvalidConfig, "clock must be virtual or wall, got '" + s + "'");
}

std::string precoding_name(highphy::PrecodingTiming p) {
  return p == highphy::PrecodingTiming::MODELED ? "modeled" : "measured";
}

highphy::PrecodingTiming parse_precoding(const std::string& s) {
  if (s == "modeled") return highphy::PrecodingTiming::MODELED;
  if (s == "measured") return highphy::PrecodingTiming::MEASURED;
  fail(ErrorCode::InvalidConfig, "precoding must be modeled or measured, got '" + s + "'");
}

// Reads only keys listed in `known`, rejecting the rest.
class Reader {
 public:
  Reader(const ordered_json& j, std::string where, std::set<std::string> known) : j_(j), where_(std::move(where)) {
    require(j.is_object(), ErrorCode::InvalidConfig, where_ + " must be an object");
    for (const auto& [k, v] : j.items())
      require(known.count(k) != 0, ErrorCode::InvalidConfig, "unknown key '" + k + "' in " + where_);
  }

  template <typename T>
  void get(const char* key, T& out) const {
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::InvalidConfig, where_ + "." + key + ": " + e.what());
    }
  }
  bool has(const char* key) const { return j_.contains(key); }
  const ordered_json& at(const char* key) const { return j_.at(key); }
  std::string str(const char* key) const {
    std::string s;
    get(key, s);
    return s;
  }

 private:
  const ordered_json& j_;
  std::string where_;
};

}  // namespace

std::string config_to_json(const DeploymentConfig& c) {
  ordered_json t;
  t["dl_layers"] = c.traffic.dl_layers;
  t["dl_mcs"] = c.traffic.dl_mcs;
  t["dl_table"] = std::string(nr::mcs_table_name(c.traffic.dl_table));
  t["dl_overhead"] = c.traffic.dl_overhead;
  t["ul_layers"] = c.traffic.ul_layers;
  t["ul_mcs"] = c.traffic.ul_mcs;
  t["ul_table"] = std::string(nr::mcs_table_name(c.traffic.ul_table));
  t["ul_overhead"] = c.traffic.ul_overhead;
  t["symbols"] = c.traffic.symbols;
  t["tbs_per_slot"] = c.traffic.tbs_per_slot;
  t["ul_noise_sigma"] = c.traffic.ul_noise_sigma;
  t["dl_noise_sigma"] = c.traffic.dl_noise_sigma;
  ordered_json p;
  p["dl_budget_us"] = c.pipeline.dl_budget_us;
  p["ul_budget_us"] = c.pipeline.ul_budget_us;
  p["dl_other_us"] = c.pipeline.costs.dl_other_us;
  p["ul_other_us"] = c.pipeline.costs.ul_other_us;
  p["modeled_precoding_us"] = c.pipeline.costs.modeled_precoding_us;
  p["precoding"] = precoding_name(c.pipeline.precoding);
  ordered_json j;
  j["topology"] = profile_name(c.topology);
  j["n_instances"] = c.n_instances;
  j["backend"] = c.backend;
  j["duration_slots"] = c.duration_slots;
  j["seed"] = c.seed;
  j["clock"] = clock_name(c.clock);
  j["generation"] = std::string(lpu::generation_name(c.generation));
  j["ul_arrival_jitter_us"] = c.ul_arrival_jitter_us;
  j["functional_samples"] = c.functional_samples;
  j["queue_depth"] = c.queue_depth;
  j["failure_run"] = c.failure_run;
  j["traffic"] = t;
  j["pipeline"] = p;
  return j.dump(2) + "\n";
}

DeploymentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  DeploymentConfig c;
  const Reader r(j, "config",
                 {"topology", "n_instances", "backend", "duration_slots", "seed", "clock", "generation",
                  "ul_arrival_jitter_us", "functional_samples", "queue_depth", "failure_run", "traffic", "pipeline"});
  if (r.has("topology")) c.topology = parse_profile(r.str("topology"));
  r.get("n_instances", c.n_instances);
  r.get("backend", c.backend);
  r.get("duration_slots", c.duration_slots);
  r.get("seed", c.seed);
  if (r.has("clock")) c.clock = parse_clock(r.str("clock"));
  if (r.has("generation")) c.generation = lpu::parse_generation(r.str("generation"));
  r.get("ul_arrival_jitter_us", c.ul_arrival_jitter_us);
  r.get("functional_samples", c.functional_samples);
  r.get("queue_depth", c.queue_depth);
  r.get("failure_run", c.failure_run);
  if (r.has("traffic")) {
    const Reader t(r.at("traffic"), "traffic",
                   {"dl_layers", "dl_mcs", "dl_table", "dl_overhead", "ul_layers", "ul_mcs", "ul_table", "ul_overhead",
                    "symbols", "tbs_per_slot", "ul_noise_sigma", "dl_noise_sigma"});
    TrafficConfig& x = c.traffic;
    t.get("dl_layers", x.dl_layers);
    t.get("dl_mcs", x.dl_mcs);
    t.get("dl_overhead", x.dl_overhead);
    t.get("ul_layers", x.ul_layers);
    t.get("ul_mcs", x.ul_mcs);
    t.get("ul_overhead", x.ul_overhead);
    t.get("symbols", x.symbols);
    t.get("tbs_per_slot", x.tbs_per_slot);
    t.get("ul_noise_sigma", x.ul_noise_sigma);
    t.get("dl_noise_sigma", x.dl_noise_sigma);
    if (t.has("dl_table")) x.dl_table = nr::parse_mcs_table(t.str("dl_table"));
    if (t.has("ul_table")) x.ul_table = nr::parse_mcs_table(t.str("ul_table"));
  }
  if (r.has("pipeline")) {
    const Reader p(r.at("pipeline"), "pipeline",
                   {"dl_budget_us", "ul_budget_us", "dl_other_us", "ul_other_us", "modeled_precoding_us", "precoding"});
    p.get("dl_budget_us", c.pipeline.dl_budget_us);
    p.get("ul_budget_us", c.pipeline.ul_budget_us);
    p.get("dl_other_us", c.pipeline.costs.dl_other_us);
    p.get("ul_other_us", c.pipeline.costs.ul_other_us);
    p.get("modeled_precoding_us", c.pipeline.costs.modeled_precoding_us);
    if (p.has("precoding")) c.pipeline.precoding = parse_precoding(p.str("precoding"));
  }
  c.validate();
  return c;
}

DeploymentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

}  // namespace vran::deployment
