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

#include "irsforge/io.hpp"

#include <charconv>
#include <climits>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

std::string trim(const std::string &s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value)
{
    throw std::runtime_error("config key '" + key + "' has unusable value '" + value + "'");
}

double parse_double(const std::string &key, const std::string &value)
{
    const char *begin = value.c_str();
    char *end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        bad_value(key, value);
    return v;
}

} // namespace

Config Config::from_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return from_string(text.str());
}

Config Config::from_string(const std::string &text)
{
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (t.front() == '[')
        {
            if (t.back() != ']' || t.size() < 3)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

void Config::apply_override(const std::string &assignment)
{
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty())
        throw std::runtime_error("override '" + assignment + "' is not of the form key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string &key, const std::string &value)
{
    values_[key] = value;
}

bool Config::has(const std::string &key) const
{
    return values_.count(key) != 0;
}

std::string Config::get_str(const std::string &key, const std::string &fallback) const
{
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string &key, double fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    return parse_double(key, it->second);
}

int Config::get_int(const std::string &key, int fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const char *begin = it->second.c_str();
    char *end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || v < INT_MIN || v > INT_MAX)
        bad_value(key, it->second);
    return static_cast<int>(v);
}

std::uint64_t Config::get_u64(const std::string &key, std::uint64_t fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const char *begin = it->second.c_str();
    char *end = nullptr;
    unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0')
        bad_value(key, it->second);
    return static_cast<std::uint64_t>(v);
}

bool Config::get_bool(const std::string &key, bool fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string &v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    bad_value(key, v);
}

std::vector<double> Config::get_list(const std::string &key,
                                     const std::vector<double> &fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(parse_double(key, trim(item)));
    if (out.empty())
        bad_value(key, it->second);
    return out;
}

std::string Config::canonical() const
{
    std::string out;
    for (const auto &[k, v] : values_)
    {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::uint64_t Config::hash() const
{
    return fnv1a(canonical());
}

SystemConfig system_config_from(const Config &cfg)
{
    SystemConfig sys;
    sys.bs_nx = cfg.get_int("bs.nx", sys.bs_nx);
    sys.bs_ny = cfg.get_int("bs.ny", sys.bs_ny);
    sys.bs_pitch = cfg.get_double("bs.pitch", sys.bs_pitch);
    sys.num_users = cfg.get_int("users.count", sys.num_users);

    sys.tile = TileGeometry::from_counts(cfg.get_int("surface.cells_x", sys.tile.qx),
                                         cfg.get_int("surface.cells_y", sys.tile.qy),
                                         cfg.get_double("surface.dx", sys.tile.dx),
                                         cfg.get_double("surface.dy", sys.tile.dy),
                                         cfg.get_double("surface.cell_size", sys.tile.l_uc));
    sys.tiles = SystemConfig::tile_grid(cfg.get_int("surface.tiles_x", 3),
                                        cfg.get_int("surface.tiles_y", 3));
    sys.tau = cfg.get_double("surface.tau", sys.tau);

    sys.paths_direct = cfg.get_int("paths.direct", sys.paths_direct);
    sys.paths_bs_irs = cfg.get_int("paths.bs_irs", sys.paths_bs_irs);
    sys.paths_irs_user = cfg.get_int("paths.irs_user", sys.paths_irs_user);
    std::string fading = cfg.get_str("paths.fading", "rayleigh");
    if (fading == "rayleigh")
        sys.fading = FadingModel::rayleigh;
    else if (fading == "phase_only")
        sys.fading = FadingModel::phase_only;
    else
        throw std::runtime_error("paths.fading must be rayleigh or phase_only");

    sys.dist_direct = cfg.get_double("geometry.dist_direct", sys.dist_direct);
    sys.dist_bs_irs = cfg.get_double("geometry.dist_bs_irs", sys.dist_bs_irs);
    sys.dist_irs_user = cfg.get_double("geometry.dist_irs_user", sys.dist_irs_user);
    sys.shadow_direct_db = cfg.get_double("geometry.shadow_direct_db", sys.shadow_direct_db);
    sys.shadow_bs_irs_db = cfg.get_double("geometry.shadow_bs_irs_db", sys.shadow_bs_irs_db);
    sys.shadow_irs_user_db = cfg.get_double("geometry.shadow_irs_user_db", sys.shadow_irs_user_db);
    sys.theta_max = deg2rad(cfg.get_double("geometry.theta_max_deg", 90.0));
    sys.phi_min_bs_irs = deg2rad(cfg.get_double("geometry.phi_min_bs_irs_deg", 0.0));
    sys.phi_max_bs_irs = deg2rad(cfg.get_double("geometry.phi_max_bs_irs_deg", 360.0));
    sys.phi_min_irs_user = deg2rad(cfg.get_double("geometry.phi_min_irs_user_deg", 0.0));
    sys.phi_max_irs_user = deg2rad(cfg.get_double("geometry.phi_max_irs_user_deg", 360.0));

    sys.bandwidth_hz = cfg.get_double("link.bandwidth_hz", sys.bandwidth_hz);
    sys.noise_psd_dbm_hz = cfg.get_double("link.noise_psd_dbm_hz", sys.noise_psd_dbm_hz);
    sys.noise_figure_db = cfg.get_double("link.noise_figure_db", sys.noise_figure_db);
    sys.sinr_threshold_db = cfg.get_double("link.sinr_threshold_db", sys.sinr_threshold_db);
    return sys;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string &path, const std::vector<std::string> &header)
    : path_(path), out_(path), columns_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open output file '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string> &cells)
{
    if (cells.size() != columns_)
        throw std::logic_error("CSV row width does not match the header of " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    ++rows_;
}

namespace {

constexpr const char *realization_magic = "# irs-forge channel realization v1";

void put_complex(std::ostream &out, const std::complex<double> &z)
{
    out << ' ' << format_double(z.real()) << ' ' << format_double(z.imag());
}

double take_double(std::istringstream &in, const std::string &what)
{
    std::string tok;
    if (!(in >> tok))
        throw std::runtime_error("realization file: missing " + what);
    const char *begin = tok.c_str();
    char *end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::runtime_error("realization file: bad " + what + " '" + tok + "'");
    return v;
}

int take_index(std::istringstream &in, int bound, const std::string &what)
{
    double v = take_double(in, what);
    int i = static_cast<int>(v);
    if (i < 0 || i >= bound || static_cast<double>(i) != v)
        throw std::runtime_error("realization file: " + what + " out of range");
    return i;
}

std::complex<double> take_complex(std::istringstream &in)
{
    double re = take_double(in, "gain");
    double im = take_double(in, "gain");
    return {re, im};
}

} // namespace

void dump_realization(const std::string &path, const ChannelRealization &real)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << realization_magic << '\n';
    out << "seed " << real.seed << '\n';
    out << "users " << real.direct.size() << '\n';
    for (std::size_t k = 0; k < real.direct.size(); ++k)
        for (const auto &p : real.direct[k])
        {
            out << "direct " << k << ' ' << format_double(p.bs_theta) << ' '
                << format_double(p.bs_phi);
            put_complex(out, p.gain);
            out << '\n';
        }
    for (const auto &p : real.bs_irs)
    {
        out << "bs_irs " << format_double(p.bs_theta) << ' ' << format_double(p.bs_phi) << ' '
            << format_double(p.irs_aoa.theta) << ' ' << format_double(p.irs_aoa.phi) << ' '
            << format_double(p.irs_aoa.pol);
        put_complex(out, p.gain);
        out << '\n';
    }
    for (std::size_t k = 0; k < real.irs_user.size(); ++k)
        for (const auto &p : real.irs_user[k])
        {
            out << "irs_user " << k << ' ' << format_double(p.irs_aod.theta) << ' '
                << format_double(p.irs_aod.phi);
            put_complex(out, p.gain);
            out << '\n';
        }
}

ChannelRealization load_realization(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open realization file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != realization_magic)
        throw std::runtime_error("'" + path + "' is not a realization snapshot");

    ChannelRealization real;
    int users = -1;
    while (std::getline(in, line))
    {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::istringstream row(t);
        std::string tag;
        row >> tag;
        if (tag == "seed")
        {
            std::string tok;
            if (!(row >> tok))
                throw std::runtime_error("realization file: missing seed");
            const char *begin = tok.c_str();
            char *end = nullptr;
            real.seed = std::strtoull(begin, &end, 10);
            if (end == begin || *end != '\0')
                throw std::runtime_error("realization file: bad seed '" + tok + "'");
        }
        else if (tag == "users")
        {
            users = take_index(row, 1 << 20, "user count");
            real.direct.resize(users);
            real.irs_user.resize(users);
        }
        else if (tag == "direct")
        {
            if (users < 0)
                throw std::runtime_error("realization file: 'direct' before 'users'");
            int k = take_index(row, users, "user index");
            PathDirect p;
            p.bs_theta = take_double(row, "angle");
            p.bs_phi = take_double(row, "angle");
            p.gain = take_complex(row);
            real.direct[k].push_back(p);
        }
        else if (tag == "bs_irs")
        {
            PathBsIrs p;
            p.bs_theta = take_double(row, "angle");
            p.bs_phi = take_double(row, "angle");
            p.irs_aoa.theta = take_double(row, "angle");
            p.irs_aoa.phi = take_double(row, "angle");
            p.irs_aoa.pol = take_double(row, "angle");
            p.gain = take_complex(row);
            real.bs_irs.push_back(p);
        }
        else if (tag == "irs_user")
        {
            if (users < 0)
                throw std::runtime_error("realization file: 'irs_user' before 'users'");
            int k = take_index(row, users, "user index");
            PathIrsUser p;
            p.irs_aod.theta = take_double(row, "angle");
            p.irs_aod.phi = take_double(row, "angle");
            p.gain = take_complex(row);
            real.irs_user[k].push_back(p);
        }
        else
        {
            throw std::runtime_error("realization file: unknown record '" + tag + "'");
        }
    }
    if (users < 0)
        throw std::runtime_error("realization file: missing 'users' record");
    return real;
}

void RunManifest::write(const std::string &path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config_hash));
    out << "# irs-forge run manifest\n";
    out << "scenario " << scenario << '\n';
    out << "version " << version << '\n';
    out << "config_hash " << hash_hex << '\n';
    out << "seed " << seed << '\n';
    out << "realizations " << realizations << '\n';
    for (const auto &f : outputs)
        out << "output " << f << '\n';
    for (const auto &[label, seconds] : timings_s)
        out << "timing " << label << ' ' << format_double(seconds) << '\n';
    for (const auto &n : notes)
        out << "note " << n << '\n';
}

void ensure_directory(const std::string &path)
{
    namespace fs = std::filesystem;
    if (fs::exists(path))
    {
        if (!fs::is_directory(path))
            throw std::runtime_error("'" + path + "' exists and is not a directory");
        return;
    }
    fs::create_directories(path);
}

} // namespace irsforge
