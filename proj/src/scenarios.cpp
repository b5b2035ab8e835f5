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

#include "irsforge/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "irsforge/angles.hpp"
#include "irsforge/codebook.hpp"
#include "irsforge/common.hpp"
#include "irsforge/tile.hpp"

namespace irsforge {

std::vector<double> gradient_grid(int size, double support)
{
    if (size < 1)
        throw std::invalid_argument("gradient grid needs at least one entry");
    if (support < 0.0 || support > 0.5)
        throw std::invalid_argument("gradient support must lie in [0, 1/2]");
    if (support >= 0.5 - 1.0e-12)
        return build_wavefront_codebook(size);
    if (size == 1)
        return {0.0};
    return build_reflection_codebook(size, -support, support);
}

OfflineCodebook default_codebook(const SystemConfig &cfg, int nx, int ny, int n0)
{
    OfflineCodebook book;
    book.bx = gradient_grid(nx, effective_support(cfg.tile.dx));
    book.by = gradient_grid(ny, effective_support(cfg.tile.dy));
    book.b0 = build_wavefront_codebook(n0);
    return book;
}

std::vector<TransmissionMode> preselect_transmission_modes(const SystemConfig &cfg,
                                                           const ChannelRealization &real,
                                                           const OfflineCodebook &book,
                                                           int top_per_user)
{
    Eigen::MatrixXd strength = reflection_strength(cfg, real, book);
    std::vector<int> idx = preselect_top_k(book, strength, top_per_user);
    std::vector<TransmissionMode> modes;
    modes.reserve(idx.size());
    for (int i : idx)
        modes.push_back(book.mode(i));
    return modes;
}

PipelineResult greedy_then_ao(const EffectiveChannelSet &set, const Eigen::VectorXd &gamma,
                              double noise_mw, const AoOptions &opts, int restarts,
                              std::uint64_t restart_seed)
{
    PipelineResult out;
    out.greedy = greedy(set, gamma, noise_mw);
    if (out.greedy.status != OptStatus::ok)
    {
        out.refined = out.greedy;
        return out;
    }
    out.refined = alternating_optimization(set, gamma, noise_mw, out.greedy.selection,
                                           out.greedy.precoder, opts);

    if (set.num_tiles == 0)
        return out;
    Rng rng(restart_seed);
    for (int rep = 0; rep < restarts; ++rep)
    {
        ModeSelection sel(set.num_tiles);
        for (int &m : sel)
            m = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(set.num_modes));
        PrecoderDesign d = solve_p2(set, sel, gamma, noise_mw);
        if (!d.ok)
            continue;
        OptimizationResult res = alternating_optimization(set, gamma, noise_mw, sel, d.precoder, opts);
        if (res.status == OptStatus::ok && res.power_mw < out.refined.power_mw)
            out.refined = res;
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void default_key(Config &cfg, const std::string &key, const std::string &value)
{
    if (!cfg.has(key))
        cfg.set(key, value);
}

double median(std::vector<double> v)
{
    if (v.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Observation direction at signed elevation x on the vertical cut through
// azimuth phi_cut; negative x lands on the opposite half-plane.
ReflectionAngle cut_angle(double x_deg, double phi_cut_deg)
{
    if (x_deg >= 0.0)
        return ReflectionAngle::from_degrees(x_deg, phi_cut_deg);
    return ReflectionAngle::from_degrees(-x_deg, std::fmod(phi_cut_deg + 180.0, 360.0));
}

// Near-square factorization a x b = count with a >= b.
std::pair<int, int> tile_layout(int count)
{
    for (int b = static_cast<int>(std::sqrt(static_cast<double>(count))); b >= 2; --b)
        if (count % b == 0)
            return {count / b, b};
    return {count, 1};
}

std::string dbm_cell(double mw)
{
    return format_double(mw2dbm(mw));
}

std::string db_cell(double linear)
{
    return format_double(10.0 * std::log10(linear));
}

struct ScenarioContext
{
    Config cfg;
    std::uint64_t seed = 1;
    int realizations = 1;
    std::string dir;
    RunManifest *manifest = nullptr;

    CsvWriter open(const std::string &file, const std::vector<std::string> &header) const
    {
        manifest->outputs.push_back(file);
        return CsvWriter(dir + "/" + file, header);
    }

    void note(const std::string &text) const { manifest->notes.push_back(text); }
};

std::vector<std::string> power_header(int users)
{
    std::vector<std::string> h = {"realization_id", "scheme", "tiles", "p_dbm", "iterations"};
    for (int k = 1; k <= users; ++k)
        h.push_back("sinr_db_u" + std::to_string(k));
    return h;
}

void power_row(CsvWriter &out, int realization, const std::string &scheme, int tiles,
               const OptimizationResult &res, int users)
{
    std::vector<std::string> cells = {std::to_string(realization), scheme,
                                      std::to_string(tiles), format_double(res.power_dbm()),
                                      std::to_string(res.iterations)};
    for (int k = 0; k < users; ++k)
        cells.push_back(res.sinr.size() == users ? db_cell(res.sinr(k)) : "nan");
    out.row(cells);
}

// ---------------------------------------------------------------- scenarios

void scenario_tile_pattern(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "pattern.sizes", "4,10,20");
    default_key(c, "pattern.points", "1441");
    default_key(c, "pattern.inc_theta_deg", "15");
    default_key(c, "pattern.inc_phi_deg", "225");
    default_key(c, "pattern.pol_deg", "22.5");
    default_key(c, "pattern.steer_theta_deg", "45");
    default_key(c, "pattern.steer_phi_deg", "45");
    default_key(c, "pattern.obs_phi_deg", "45");
    default_key(c, "pattern.tau", "0.8");
    default_key(c, "pattern.kind", "continuous");
    default_key(c, "pattern.cell_pitch", "0.5");
    default_key(c, "pattern.cell_size", "0.5");
    default_key(c, "pattern.quant_bits", "0");

    IncidentAngle inc = IncidentAngle::from_degrees(c.get_double("pattern.inc_theta_deg", 0),
                                                    c.get_double("pattern.inc_phi_deg", 0),
                                                    c.get_double("pattern.pol_deg", 0));
    SteeringTarget target{inc,
                          ReflectionAngle::from_degrees(
                              c.get_double("pattern.steer_theta_deg", 0),
                              c.get_double("pattern.steer_phi_deg", 0)),
                          0.0};
    double phi_cut = c.get_double("pattern.obs_phi_deg", 0);
    double tau = c.get_double("pattern.tau", 0.8);
    int points = c.get_int("pattern.points", 1441);
    std::string kind = c.get_str("pattern.kind", "continuous");
    PhaseQuantizer quant{c.get_int("pattern.quant_bits", 0)};

    for (double size : c.get_list("pattern.sizes", {}))
    {
        CsvWriter out = ctx.open("tile_pattern_L" + format_double(size) + ".csv",
                                 {"theta_r_deg", "phi_r_deg", "g_over_lambda_db",
                                  "g_phase_rad"});
        TileGeometry geom = TileGeometry::from_size(size, size,
                                                    c.get_double("pattern.cell_pitch", 0.5),
                                                    c.get_double("pattern.cell_size", 0.5));
        for (int i = 0; i < points; ++i)
        {
            double x = -90.0 + 180.0 * i / (points - 1);
            ReflectionAngle obs = cut_angle(x, phi_cut);
            TileResponse g;
            if (kind == "continuous")
                g = continuous_response(size, size, target, inc, obs, tau);
            else if (kind == "discrete")
                g = discrete_response(geom, target, inc, obs, tau, quant);
            else
                throw std::runtime_error("pattern.kind must be continuous or discrete");
            out.row({format_double(rad2deg(obs.theta)), format_double(rad2deg(obs.phi)),
                     format_double(g.magnitude_db()), format_double(g.phase())});
        }
    }
}

void scenario_codebook_beams(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "beams.size", "10");
    default_key(c, "beams.cell_pitch", "0.5");
    default_key(c, "beams.cell_size", "0.5");
    default_key(c, "beams.tau", "0.8");
    default_key(c, "beams.bx", "9");
    default_key(c, "beams.by", "9");
    default_key(c, "beams.b0", "4");
    default_key(c, "beams.support_x", format_double(std::sqrt(2.0) / 4.0));
    default_key(c, "beams.support_y", format_double(std::sqrt(6.0) / 8.0));
    default_key(c, "beams.points", "1441");
    default_key(c, "beams.obs_phi_deg", "180");

    double size = c.get_double("beams.size", 10.0);
    TileGeometry geom = TileGeometry::from_size(size, size, c.get_double("beams.cell_pitch", 0.5),
                                                c.get_double("beams.cell_size", 0.5));
    double tau = c.get_double("beams.tau", 0.8);
    OfflineCodebook book;
    book.bx = gradient_grid(c.get_int("beams.bx", 9), c.get_double("beams.support_x", 0.0));
    book.by = gradient_grid(c.get_int("beams.by", 9), c.get_double("beams.support_y", 0.0));
    book.b0 = build_wavefront_codebook(c.get_int("beams.b0", 4));

    CsvWriter listing = ctx.open("codebook_modes.csv", {"index", "beta_x", "beta_y", "beta_0"});
    for (int i = 0; i < book.size(); ++i)
    {
        TransmissionMode m = book.mode(i);
        listing.row({std::to_string(i), format_double(m.beta_x), format_double(m.beta_y),
                     format_double(m.beta_0)});
    }

    // Elevation cuts of the beams with beta_y = 0 steering into the
    // observation half-plane, evaluated by direct summation over unit cells.
    IncidentAngle inc;
    double phi_cut = c.get_double("beams.obs_phi_deg", 180.0);
    int points = c.get_int("beams.points", 1441);
    CsvWriter beams = ctx.open("codebook_beams.csv",
                               {"index", "theta_r_deg", "phi_r_deg", "g_over_lambda_db"});
    for (int ix = 0; ix < static_cast<int>(book.bx.size()); ++ix)
    {
        if (book.bx[ix] < 0.0)
            continue;
        for (int iy = 0; iy < static_cast<int>(book.by.size()); ++iy)
        {
            if (book.by[iy] != 0.0)
                continue;
            int idx = book.index(ix, iy, 0);
            TransmissionMode m = book.mode(idx);
            Eigen::MatrixXd beta(geom.qx, geom.qy);
            for (int nx = 0; nx < geom.qx; ++nx)
                for (int ny = 0; ny < geom.qy; ++ny)
                    beta(nx, ny) = two_pi * (m.beta_x * nx + m.beta_y * ny + m.beta_0);
            for (int i = 0; i < points; ++i)
            {
                double x = -90.0 + 180.0 * i / (points - 1);
                ReflectionAngle obs = cut_angle(x, phi_cut);
                TileResponse g = brute_force_discrete(geom, beta, inc, obs, tau);
                beams.row({std::to_string(idx), format_double(rad2deg(obs.theta)),
                           format_double(rad2deg(obs.phi)), format_double(g.magnitude_db())});
            }
        }
    }
}

void scenario_mode_reduction(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "bs.nx", "1");
    default_key(c, "bs.ny", "1");
    default_key(c, "surface.tiles_x", "1");
    default_key(c, "surface.tiles_y", "1");
    default_key(c, "surface.cells_x", "20");
    default_key(c, "surface.cells_y", "20");
    default_key(c, "surface.cell_size", "0.5");
    default_key(c, "paths.fading", "phase_only");
    default_key(c, "geometry.dist_bs_irs", "1000");
    default_key(c, "geometry.dist_irs_user", "1000");
    default_key(c, "geometry.theta_max_deg", "45");
    default_key(c, "geometry.phi_min_bs_irs_deg", "0");
    default_key(c, "geometry.phi_max_bs_irs_deg", "60");
    default_key(c, "geometry.phi_min_irs_user_deg", "180");
    default_key(c, "geometry.phi_max_irs_user_deg", "240");
    default_key(c, "modes.bx", "9");
    default_key(c, "modes.by", "9");
    default_key(c, "modes.support_x", format_double(std::sqrt(2.0) / 4.0));
    default_key(c, "modes.support_y", format_double(std::sqrt(6.0) / 8.0));
    default_key(c, "modes.threshold_db", "20");

    SystemConfig sys = system_config_from(c);
    OfflineCodebook book;
    book.bx = gradient_grid(c.get_int("modes.bx", 9), c.get_double("modes.support_x", 0.0));
    book.by = gradient_grid(c.get_int("modes.by", 9), c.get_double("modes.support_y", 0.0));
    book.b0 = {0.0};
    double threshold_db = c.get_double("modes.threshold_db", 20.0);

    CsvWriter out = ctx.open("mode_reduction.csv",
                             {"realization_id", "selected_modes", "total_modes",
                              "peak_gain_db", "threshold_db"});
    CsvWriter detail = ctx.open("mode_strengths.csv", {"mode_index", "user", "gain_db"});

    std::vector<double> counts;
    for (int r = 0; r < ctx.realizations; ++r)
    {
        ChannelRealization real = sample_realization(sys, ctx.seed + r);
        Eigen::MatrixXd strength = reflection_strength(sys, real, book);
        Eigen::VectorXd best = strength.rowwise().maxCoeff();
        double peak = best.maxCoeff();
        double gate = peak * std::pow(10.0, -threshold_db / 20.0);
        int selected = static_cast<int>((best.array() >= gate).count());
        counts.push_back(selected);
        out.row({std::to_string(r), std::to_string(selected),
                 std::to_string(book.num_reflection()), format_double(20.0 * std::log10(peak)),
                 format_double(threshold_db)});
        if (r == 0)
            for (int m = 0; m < strength.rows(); ++m)
                for (int k = 0; k < strength.cols(); ++k)
                    detail.row({std::to_string(m), std::to_string(k + 1),
                                format_double(20.0 * std::log10(strength(m, k)))});
    }
    ctx.note("median_selected_modes " + format_double(median(counts)));
}

// Shared setup of the multi-tile power scenarios: Table-style system plus an
// offline codebook and per-user pre-selection depth.
struct PowerSetup
{
    SystemConfig sys;
    OfflineCodebook book;
    int top_per_user = 4;
    Eigen::VectorXd gamma;
    double noise_mw = 0.0;
};

PowerSetup power_setup(Config &c)
{
    default_key(c, "codebook.bx", "10");
    default_key(c, "codebook.by", "10");
    default_key(c, "codebook.b0", "4");
    default_key(c, "codebook.top_per_user", "4");
    PowerSetup s;
    s.sys = system_config_from(c);
    s.book = default_codebook(s.sys, c.get_int("codebook.bx", 10), c.get_int("codebook.by", 10),
                              c.get_int("codebook.b0", 4));
    s.top_per_user = c.get_int("codebook.top_per_user", 4);
    s.gamma = Eigen::VectorXd::Constant(s.sys.num_users, s.sys.sinr_threshold());
    s.noise_mw = s.sys.noise_mw();
    return s;
}

OptimizationResult run_greedy_once(const PowerSetup &s, const SystemConfig &sys,
                                   const ChannelRealization &real)
{
    std::vector<TransmissionMode> modes =
        preselect_transmission_modes(sys, real, s.book, s.top_per_user);
    EffectiveChannelSet set = assemble_all(sys, real, modes);
    return greedy(set, s.gamma, s.noise_mw);
}

void scenario_convergence_ao(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "ao.max_outer", "8");
    default_key(c, "ao.rel_tol", "1e-6");
    default_key(c, "ao.init", "random");
    PowerSetup s = power_setup(c);
    AoOptions opts;
    opts.max_outer = c.get_int("ao.max_outer", 8);
    opts.rel_tol = c.get_double("ao.rel_tol", 1.0e-6);
    std::string init = c.get_str("ao.init", "random");
    if (init != "random" && init != "greedy")
        throw std::runtime_error("ao.init must be random or greedy");

    CsvWriter trace = ctx.open("convergence_ao.csv", {"realization_id", "step", "p_dbm"});
    CsvWriter summary = ctx.open("convergence_ao_summary.csv",
                                 {"realization_id", "iterations", "final_p_dbm", "feasible"});
    int infeasible = 0;
    for (int r = 0; r < ctx.realizations; ++r)
    {
        ChannelRealization real = sample_realization(s.sys, ctx.seed + r);
        std::vector<TransmissionMode> modes =
            preselect_transmission_modes(s.sys, real, s.book, s.top_per_user);
        EffectiveChannelSet set = assemble_all(s.sys, real, modes);

        OptimizationResult res;
        if (init == "greedy")
        {
            res = greedy_then_ao(set, s.gamma, s.noise_mw, opts).refined;
        }
        else
        {
            Rng rng(derive_seed(ctx.seed + r, 0x616f696eULL));
            ModeSelection sel(set.num_tiles);
            for (int &m : sel)
                m = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(set.num_modes));
            Eigen::MatrixXcd q0(s.sys.num_bs_antennas(), s.sys.num_users);
            for (Eigen::Index i = 0; i < q0.size(); ++i)
                q0.data()[i] = rng.cgauss();
            res = alternating_optimization(set, s.gamma, s.noise_mw, sel, q0, opts);
        }

        for (std::size_t step = 0; step < res.trace_mw.size(); ++step)
            trace.row({std::to_string(r), std::to_string(step), dbm_cell(res.trace_mw[step])});
        summary.row({std::to_string(r), std::to_string(res.iterations),
                     format_double(res.power_dbm()),
                     res.status == OptStatus::ok ? "1" : "0"});
        if (res.status != OptStatus::ok)
            ++infeasible;
    }
    ctx.note("unsatisfied_realizations " + std::to_string(infeasible));
}

void scenario_greedy_trace(ScenarioContext &ctx)
{
    PowerSetup s = power_setup(ctx.cfg);
    CsvWriter trace = ctx.open("greedy_trace.csv",
                               {"realization_id", "configured_tiles", "p_dbm"});
    int infeasible = 0;
    for (int r = 0; r < ctx.realizations; ++r)
    {
        ChannelRealization real = sample_realization(s.sys, ctx.seed + r);
        OptimizationResult res = run_greedy_once(s, s.sys, real);
        for (std::size_t n = 0; n < res.trace_mw.size(); ++n)
            trace.row({std::to_string(r), std::to_string(n), dbm_cell(res.trace_mw[n])});
        if (res.status != OptStatus::ok)
            ++infeasible;
    }
    ctx.note("unsatisfied_realizations " + std::to_string(infeasible));
}

void scenario_power_cdf(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "cdf.tile_counts", "0,2,4,6,9");
    default_key(c, "cdf.benchmarks", "true");
    default_key(c, "cdf.refine_ao", "true");
    default_key(c, "cdf.restarts", "8");
    PowerSetup s = power_setup(c);
    std::vector<double> counts = c.get_list("cdf.tile_counts", {});
    bool benchmarks = c.get_bool("cdf.benchmarks", true);
    bool refine = c.get_bool("cdf.refine_ao", true);
    int restarts = c.get_int("cdf.restarts", 8);

    CsvWriter out = ctx.open("power_cdf.csv", power_header(s.sys.num_users));
    std::map<std::pair<std::string, int>, std::vector<double>> powers;
    std::map<std::pair<std::string, int>, int> feasible;

    auto record = [&](int r, const std::string &scheme, int tiles,
                      const OptimizationResult &res) {
        power_row(out, r, scheme, tiles, res, s.sys.num_users);
        powers[{scheme, tiles}].push_back(res.power_mw);
        if (res.status == OptStatus::ok)
            ++feasible[{scheme, tiles}];
    };

    for (int r = 0; r < ctx.realizations; ++r)
    {
        ChannelRealization real = sample_realization(s.sys, ctx.seed + r);
        for (double count_d : counts)
        {
            int count = static_cast<int>(count_d);
            SystemConfig sys = s.sys;
            if (count == 0)
                sys.tiles.clear();
            else
            {
                auto [a, b] = tile_layout(count);
                sys.tiles = SystemConfig::tile_grid(a, b);
            }
            std::vector<TransmissionMode> modes =
                preselect_transmission_modes(sys, real, s.book, s.top_per_user);
            EffectiveChannelSet set = assemble_all(sys, real, modes);
            if (refine)
            {
                std::uint64_t rs = derive_seed(ctx.seed + r, 0x72737472ULL + count);
                PipelineResult pipe = greedy_then_ao(set, s.gamma, s.noise_mw, {}, restarts, rs);
                record(r, "greedy", count, pipe.greedy);
                record(r, "ao", count, pipe.refined);
            }
            else
            {
                record(r, "greedy", count, greedy(set, s.gamma, s.noise_mw));
            }
        }
        if (benchmarks)
        {
            BenchmarkOptions opts;
            opts.phase_seed = ctx.seed + r;
            int tiles = s.sys.num_tiles();
            record(r, "no_irs", 0,
                   benchmark(BenchmarkKind::no_irs_optimal, s.sys, real, opts));
            record(r, "zf", 0, benchmark(BenchmarkKind::no_irs_zf, s.sys, real, opts));
            record(r, "random_phase", tiles,
                   benchmark(BenchmarkKind::irs_random_phase, s.sys, real, opts));
            record(r, "specular", tiles,
                   benchmark(BenchmarkKind::irs_specular_tiles, s.sys, real, opts));
        }
    }

    CsvWriter summary = ctx.open("power_cdf_summary.csv",
                                 {"scheme", "tiles", "realizations", "feasible",
                                  "median_p_dbm"});
    for (const auto &[key, vals] : powers)
        summary.row({key.first, std::to_string(key.second), std::to_string(vals.size()),
                     std::to_string(feasible[key]), dbm_cell(median(vals))});
}

void scenario_power_vs_distance(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "sweep.fracs", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9");
    default_key(c, "sweep.shadow_db", "-40");
    PowerSetup s = power_setup(c);
    std::vector<double> fracs = c.get_list("sweep.fracs", {});
    std::vector<double> shadows = c.get_list("sweep.shadow_db", {});

    CsvWriter out = ctx.open("power_vs_distance.csv",
                             {"shadow_direct_db", "frac", "bs_irs_dist", "irs_user_dist",
                              "realization_id", "p_dbm"});
    CsvWriter summary = ctx.open("power_vs_distance_summary.csv",
                                 {"shadow_direct_db", "frac", "median_p_dbm", "feasible",
                                  "realizations"});
    for (double shadow : shadows)
        for (double frac : fracs)
        {
            SystemConfig sys = s.sys;
            sys.shadow_direct_db = shadow;
            sys.dist_bs_irs = frac * sys.dist_direct;
            sys.dist_irs_user = (1.0 - frac) * sys.dist_direct;
            std::vector<double> powers;
            int ok = 0;
            for (int r = 0; r < ctx.realizations; ++r)
            {
                ChannelRealization real = sample_realization(sys, ctx.seed + r);
                OptimizationResult res = run_greedy_once(s, sys, real);
                powers.push_back(res.power_mw);
                if (res.status == OptStatus::ok)
                    ++ok;
                out.row({format_double(shadow), format_double(frac),
                         format_double(sys.dist_bs_irs), format_double(sys.dist_irs_user),
                         std::to_string(r), dbm_cell(res.power_mw)});
            }
            summary.row({format_double(shadow), format_double(frac), dbm_cell(median(powers)),
                         std::to_string(ok), std::to_string(ctx.realizations)});
        }
}

void scenario_power_vs_codebook(ScenarioContext &ctx)
{
    Config &c = ctx.cfg;
    default_key(c, "sweep.bx_sizes", "4,6,8,10,14");
    default_key(c, "sweep.b0", "4");
    default_key(c, "sweep.top_per_user", "4");
    PowerSetup s = power_setup(c);
    std::vector<double> sizes = c.get_list("sweep.bx_sizes", {});
    int b0 = c.get_int("sweep.b0", 4);
    int top = c.get_int("sweep.top_per_user", 4);

    CsvWriter out = ctx.open("power_vs_codebook.csv",
                             {"bx", "by", "b0", "num_modes", "realization_id", "p_dbm"});
    CsvWriter summary = ctx.open("power_vs_codebook_summary.csv",
                                 {"bx", "by", "b0", "median_p_dbm", "feasible",
                                  "realizations"});
    for (double size_d : sizes)
    {
        int size = static_cast<int>(size_d);
        OfflineCodebook book = default_codebook(s.sys, size, size, b0);
        std::vector<double> powers;
        int ok = 0;
        for (int r = 0; r < ctx.realizations; ++r)
        {
            ChannelRealization real = sample_realization(s.sys, ctx.seed + r);
            std::vector<TransmissionMode> modes =
                preselect_transmission_modes(s.sys, real, book, top);
            EffectiveChannelSet set = assemble_all(s.sys, real, modes);
            OptimizationResult res = greedy(set, s.gamma, s.noise_mw);
            powers.push_back(res.power_mw);
            if (res.status == OptStatus::ok)
                ++ok;
            out.row({std::to_string(size), std::to_string(size), std::to_string(b0),
                     std::to_string(modes.size()), std::to_string(r), dbm_cell(res.power_mw)});
        }
        summary.row({std::to_string(size), std::to_string(size), std::to_string(b0),
                     dbm_cell(median(powers)), std::to_string(ok),
                     std::to_string(ctx.realizations)});
    }
}

struct ScenarioEntry
{
    const char *name;
    void (*fn)(ScenarioContext &);
    int default_realizations;
};

constexpr ScenarioEntry scenario_table[] = {
    {"tile-pattern", scenario_tile_pattern, 1},
    {"codebook-beams", scenario_codebook_beams, 1},
    {"mode-reduction", scenario_mode_reduction, 50},
    {"convergence-ao", scenario_convergence_ao, 20},
    {"greedy-trace", scenario_greedy_trace, 20},
    {"power-cdf", scenario_power_cdf, 200},
    {"power-vs-distance", scenario_power_vs_distance, 20},
    {"power-vs-codebook", scenario_power_vs_codebook, 20},
};

} // namespace

std::vector<std::string> scenario_names()
{
    std::vector<std::string> names;
    for (const auto &e : scenario_table)
        names.push_back(e.name);
    return names;
}

RunManifest run_scenario(const ScenarioRequest &req)
{
    const ScenarioEntry *entry = nullptr;
    for (const auto &e : scenario_table)
        if (req.name == e.name)
            entry = &e;
    if (!entry)
        throw std::invalid_argument("unknown scenario '" + req.name + "'");

    RunManifest manifest;
    manifest.scenario = req.name;
    manifest.seed = req.seed;
    manifest.version = toolkit_version;
    manifest.realizations =
        req.realizations > 0 ? req.realizations : entry->default_realizations;

    ensure_directory(req.out_dir);
    ScenarioContext ctx{req.config, req.seed, manifest.realizations, req.out_dir, &manifest};

    Clock::time_point t0 = Clock::now();
    entry->fn(ctx);
    manifest.timings_s.emplace_back("total", seconds_since(t0));
    manifest.config_hash = ctx.cfg.hash();
    manifest.write(req.out_dir + "/manifest.txt");
    return manifest;
}

} // namespace irsforge
