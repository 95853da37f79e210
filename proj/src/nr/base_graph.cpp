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

#include "vran/nr/base_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "vran/common/error.hpp"
#include "vran/embedded_data.hpp"

namespace vran::nr {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long to_long(std::string_view tok, std::string_view what) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(ErrorCode::Io, "bad number '" + std::string(tok) + "' in " + std::string(what));
  return v;
}

uint64_t parse_hex(std::string_view tok) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(ErrorCode::Io, "bad checksum '" + std::string(tok) + "'");
  return v;
}

// Header keywords come first, then numeric body lines. Body lines are
// re-serialized with single spaces before hashing so the checksum covers
// values, not formatting.
struct ParsedFile {
  std::map<std::string, std::vector<std::string_view>> header;
  std::vector<std::vector<long>> body;
  std::string canonical;
};

ParsedFile parse_file(std::string_view text, std::string_view what) {
  ParsedFile f;
  for (std::string_view line : split_lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    auto toks = tokens(line);
    if (toks.empty()) continue;
    const char c0 = toks[0].front();
    if ((c0 >= '0' && c0 <= '9') || c0 == '-') {
      std::vector<long> row;
      for (auto t : toks) row.push_back(to_long(t, what));
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) f.canonical += ' ';
        f.canonical += std::to_string(row[i]);
      }
      f.canonical += '\n';
      f.body.push_back(std::move(row));
    } else {
      f.header[std::string(toks[0])] = toks;
    }
  }
  return f;
}

void verify_common(const ParsedFile& f, std::string_view what) {
  auto v = f.header.find("version");
  if (v == f.header.end() || v->second.size() != 2 || v->second[1] != "1")
    fail(ErrorCode::Io, std::string(what) + ": missing or unsupported version line");
  auto c = f.header.find("checksum");
  if (c == f.header.end() || c->second.size() != 3 || c->second[1] != "fnv1a64")
    fail(ErrorCode::Io, std::string(what) + ": missing checksum line");
  const uint64_t expect = parse_hex(c->second[2]);
  const uint64_t got = fnv1a64(f.canonical);
  if (expect != got) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(got));
    fail(ErrorCode::Io, std::string(what) + ": checksum mismatch (computed " + buf + ")");
  }
}

const LiftingTable& load_lifting() {
  static const LiftingTable t = parse_lifting_table(embedded::kLiftingSizes);
  return t;
}

}  // namespace

std::string_view base_graph_name(BaseGraphId bg) { return bg == BaseGraphId::BG1 ? "BG1" : "BG2"; }

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

BaseGraph parse_base_graph(std::string_view text) {
  const ParsedFile f = parse_file(text, "base graph");
  verify_common(f, "base graph");
  auto g = f.header.find("graph");
  if (g == f.header.end() || g->second.size() != 8)
    fail(ErrorCode::Io, "base graph: missing 'graph' header");
  const auto& h = g->second;
  BaseGraph bg;
  const long id = to_long(h[1], "graph id");
  if (id != 1 && id != 2) fail(ErrorCode::Io, "base graph: id must be 1 or 2");
  bg.id = static_cast<BaseGraphId>(id);
  bg.rows = static_cast<int>(to_long(h[3], "rows"));
  bg.cols = static_cast<int>(to_long(h[5], "cols"));
  const long n_entries = to_long(h[7], "entries");
  if (static_cast<long>(f.body.size()) != n_entries)
    fail(ErrorCode::Io, "base graph: entry count does not match header");
  const int expect_rows = bg.id == BaseGraphId::BG1 ? 46 : 42;
  const int expect_cols = bg.id == BaseGraphId::BG1 ? 68 : 52;
  if (bg.rows != expect_rows || bg.cols != expect_cols)
    fail(ErrorCode::Io, "base graph: dimensions do not match the graph id");
  for (const auto& row : f.body) {
    if (row.size() != 10) fail(ErrorCode::Io, "base graph: entry needs row, col and 8 shifts");
    BaseGraphEntry e;
    e.row = static_cast<int>(row[0]);
    e.col = static_cast<int>(row[1]);
    if (e.row < 0 || e.row >= bg.rows || e.col < 0 || e.col >= bg.cols)
      fail(ErrorCode::Io, "base graph: entry outside the matrix");
    for (int s = 0; s < 8; ++s) {
      e.shift[static_cast<std::size_t>(s)] = static_cast<int>(row[static_cast<std::size_t>(s) + 2]);
      if (e.shift[static_cast<std::size_t>(s)] < 0) fail(ErrorCode::Io, "base graph: negative shift");
    }
    bg.entries.push_back(e);
  }
  std::sort(bg.entries.begin(), bg.entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < bg.entries.size(); ++i)
    if (bg.entries[i].row == bg.entries[i - 1].row && bg.entries[i].col == bg.entries[i - 1].col)
      fail(ErrorCode::Io, "base graph: duplicate entry");
  return bg;
}

LiftingTable parse_lifting_table(std::string_view text) {
  const ParsedFile f = parse_file(text, "lifting table");
  verify_common(f, "lifting table");
  auto s = f.header.find("sets");
  if (s == f.header.end() || s->second.size() != 4)
    fail(ErrorCode::Io, "lifting table: missing 'sets' header");
  const long n_sets = to_long(s->second[1], "sets");
  const long n_sizes = to_long(s->second[3], "sizes");
  if (static_cast<long>(f.body.size()) != n_sets || n_sets != 8)
    fail(ErrorCode::Io, "lifting table: expected 8 sets");
  LiftingTable t;
  t.sets.resize(8);
  for (const auto& row : f.body) {
    if (row.size() < 2 || row[0] < 0 || row[0] >= 8) fail(ErrorCode::Io, "lifting table: bad set row");
    auto& set = t.sets[static_cast<std::size_t>(row[0])];
    if (!set.empty()) fail(ErrorCode::Io, "lifting table: set listed twice");
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] < 2 || row[i] > 384) fail(ErrorCode::Io, "lifting table: size out of range");
      set.push_back(static_cast<int>(row[i]));
      t.all.push_back(static_cast<int>(row[i]));
    }
  }
  std::sort(t.all.begin(), t.all.end());
  if (static_cast<long>(t.all.size()) != n_sizes ||
      std::adjacent_find(t.all.begin(), t.all.end()) != t.all.end())
    fail(ErrorCode::Io, "lifting table: size count mismatch or duplicates");
  return t;
}

const BaseGraph& base_graph(BaseGraphId bg) {
  static const BaseGraph g1 = parse_base_graph(embedded::kBaseGraph1);
  static const BaseGraph g2 = parse_base_graph(embedded::kBaseGraph2);
  return bg == BaseGraphId::BG1 ? g1 : g2;
}

const LiftingTable& lifting_table() { return load_lifting(); }

std::span<const int> lifting_sizes() { return load_lifting().all; }

bool is_supported_lifting_size(int z) {
  const auto& all = load_lifting().all;
  return std::binary_search(all.begin(), all.end(), z);
}

int lifting_set_index(int z) {
  const auto& sets = load_lifting().sets;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (std::find(sets[i].begin(), sets[i].end(), z) != sets[i].end()) return static_cast<int>(i);
  fail(ErrorCode::UnsupportedConfig, "lifting size " + std::to_string(z) + " is not supported");
}

const ExpandedGraph& expanded_graph(BaseGraphId bg, int z) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<ExpandedGraph>> cache;
  const int set = lifting_set_index(z);
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(static_cast<int>(bg), z);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const BaseGraph& g = base_graph(bg);
  auto eg = std::make_unique<ExpandedGraph>();
  eg->bg = bg;
  eg->z = z;
  eg->rows = g.rows;
  eg->cols = g.cols;
  eg->row_start.assign(static_cast<std::size_t>(g.rows) + 1, 0);
  for (const auto& e : g.entries) ++eg->row_start[static_cast<std::size_t>(e.row) + 1];
  for (int r = 0; r < g.rows; ++r)
    eg->row_start[static_cast<std::size_t>(r) + 1] += eg->row_start[static_cast<std::size_t>(r)];
  eg->edges.reserve(g.entries.size());
  for (const auto& e : g.entries)
    eg->edges.push_back({e.col, e.shift[static_cast<std::size_t>(set)] % z});
  auto& ref = *eg;
  cache.emplace(key, std::move(eg));
  return ref;
}

}  // namespace vran::nr
