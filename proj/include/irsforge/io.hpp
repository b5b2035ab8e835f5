// SPDX-License-Identifier: Apache-2.0
//
// irs-forge  Numerical toolkit for intelligent reflecting surfaces
// Copyright (C) 2026 the irs-forge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Plumbing for the experiment runner: sectioned key-value configs with
// command-line overrides, deterministic CSV output, channel-realization
// snapshots, and the per-run manifest.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "irsforge/channel.hpp"

namespace irsforge {

// Flat key-value configuration.  Files use INI-style sections; a key inside
// `[surface]` is addressed as "surface.tau".  Values are kept verbatim and
// converted on access, so overrides are order-independent.
class Config
{
  public:
    Config() = default;

    static Config from_file(const std::string &path);
    static Config from_string(const std::string &text);

    // "key=value" as given on the command line.
    void apply_override(const std::string &assignment);
    void set(const std::string &key, const std::string &value);

    bool has(const std::string &key) const;
    std::string get_str(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key, double fallback) const;
    int get_int(const std::string &key, int fallback) const;
    std::uint64_t get_u64(const std::string &key, std::uint64_t fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;
    // Comma-separated list of numbers.
    std::vector<double> get_list(const std::string &key,
                                 const std::vector<double> &fallback) const;

    // Sorted "key=value" lines; equal configs hash equal regardless of file
    // layout or override order.
    std::string canonical() const;
    std::uint64_t hash() const;

  private:
    std::map<std::string, std::string> values_;
};

// System parameters from a config, on top of the built-in defaults.  The
// recognized keys are listed in the README schema table.
SystemConfig system_config_from(const Config &cfg);

// Shortest round-trip decimal form of a double (to_chars), "inf"/"nan" spelled
// out.  Used for every numeric cell so reruns are byte-identical.
std::string format_double(double v);

// Line-oriented CSV writer.  The header is written on construction; rows are
// joined with commas, no quoting (cells must not contain commas).
class CsvWriter
{
  public:
    CsvWriter(const std::string &path, const std::vector<std::string> &header);

    void row(const std::vector<std::string> &cells);
    const std::string &path() const { return path_; }
    std::size_t rows() const { return rows_; }

  private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

// Text snapshot of one multipath draw; load(dump(r)) reproduces r bit-exactly.
void dump_realization(const std::string &path, const ChannelRealization &real);
ChannelRealization load_realization(const std::string &path);

// Per-run record written next to the CSVs.
struct RunManifest
{
    std::string scenario;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    int realizations = 0;
    std::string version;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, double>> timings_s;
    std::vector<std::string> notes;

    void write(const std::string &path) const;
};

// Create `path` (and parents) if missing; error if it exists as a file.
void ensure_directory(const std::string &path);

} // namespace irsforge
