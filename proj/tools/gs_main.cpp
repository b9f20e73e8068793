// gs: command-line front end for the Grad-Shafranov closed-form equilibrium
// catalog. Subcommands classify profile pairs, emit verified solution grids,
// run symmetry reductions and maps, compute field/pressure/safety-factor
// outputs, and reproduce the reference figure data.
//
// Exit codes: 0 ok, 2 parse error, 3 no symmetry class, 4 verification
// failure, 5 numeric failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gs/catalog.hpp"
#include "gs/contour.hpp"
#include "gs/errors.hpp"
#include "gs/fields.hpp"
#include "gs/linear.hpp"
#include "gs/profiles.hpp"
#include "gs/reductions.hpp"
#include "gs/residual.hpp"
#include "gs/symmetry.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoClass = 3;
constexpr int kExitVerify = 4;
constexpr int kExitNumeric = 5;

constexpr double kResidualGate = 1e-9;

struct GridArgs {
    double rmin = 0.2, rmax = 2.0, zmin = -1.5, zmax = 1.5;
    int nr = 129, nz = 129;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-rmin", rmin, "grid lower r bound");
        cmd->add_option("--grid-rmax", rmax, "grid upper r bound");
        cmd->add_option("--grid-zmin", zmin, "grid lower z bound");
        cmd->add_option("--grid-zmax", zmax, "grid upper z bound");
        cmd->add_option("--nr", nr, "grid points in r");
        cmd->add_option("--nz", nz, "grid points in z");
    }
    gs::GridSpec spec() const { return {rmin, rmax, zmin, zmax, nr, nz}; }

    void validate(bool is_axis_regular) const {
        if (nr < 5 || nr > 4096 || nz < 5 || nz > 4096)
            throw CLI::ValidationError("grid", "nr, nz must lie in [5, 4096]");
        if (rmax <= rmin || zmax <= zmin)
            throw CLI::ValidationError("grid", "empty grid extent");
        if (rmin < 0 || (rmin == 0 && !is_axis_regular))
            throw CLI::ValidationError("grid", "r_min must be positive for this family");
    }
};

// family parameters gathered from explicitly-set CLI flags
struct ParamArgs {
    std::map<std::string, double> values;
    bool shift_z0 = false;

    void attach(CLI::App* cmd) {
        for (const char* name : {"lambda", "A", "sigma", "a", "b", "q", "c", "c0", "kappa",
                                 "beta", "alpha", "sign", "I0", "psi0"}) {
            const std::string key = name;
            cmd->add_option_function<double>(
                "--" + key, [this, key](const double& v) { values[key] = v; },
                "family parameter " + key);
        }
        cmd->add_flag("--shift-z0", shift_z0,
                      "shift the D-shape frame so the circle centers sit at z = 0");
    }
    std::map<std::string, double> family_params() const {
        auto p = values;
        p.erase("I0");
        p.erase("psi0");
        if (shift_z0) p["shift_z0"] = 1.0;
        return p;
    }
};

bool axis_regular(gs::Family f) {
    switch (f) {
        case gs::Family::CylQuartic:
        case gs::Family::TrivialWeak:
        case gs::Family::WeakQuad:
        case gs::Family::WeakCubic:
            return true;
        default:
            return false;
    }
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("GS_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json residual_json(const gs::ResidualReport& rep) {
    json j;
    j["n_points"] = rep.n_points;
    j["max_abs"] = rep.max_abs;
    j["rms"] = rep.rms;
    j["scale"] = rep.scale;
    j["max_rel"] = rep.max_rel;
    j["relative"] = rep.relative();
    j["excluded_low_psi"] = rep.excluded_low_psi;
    j["n_failures"] = rep.failures.size();
    return j;
}

json class_json(const gs::SymmetryClass& cls) {
    json tags = json::array();
    for (const auto& t : cls.tags) {
        json tj;
        tj["tag"] = gs::to_string(t.tag);
        for (const auto& [k, v] : t.params) tj[k] = v;
        tags.push_back(tj);
    }
    json out;
    out["tag"] = gs::to_string(cls.primary().tag);
    for (const auto& [k, v] : cls.primary().params) out[k] = v;
    out["tags"] = tags;
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gs::numeric_error("cannot open output file '" + path + "'");
    out << content;
}

void write_meta(const std::string& out_path, const json& meta) {
    write_file(out_path + ".meta.json", meta.dump(2) + "\n");
}

// grid CSV with optional p and I columns
std::string grid_csv(const gs::GridField& f, const gs::PIProfiles* pi, double plasma_floor) {
    std::string csv = pi ? "r,z,psi,p,i,valid\n" : "r,z,psi,valid\n";
    const gs::GridSpec& g = f.spec;
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const bool ok = f.is_valid(i, j);
            csv += fmt17(g.r_at(i));
            csv += ',';
            csv += fmt17(g.z_at(j));
            csv += ',';
            csv += ok ? fmt17(f.at(i, j)) : "nan";
            if (pi) {
                const bool in_plasma = ok && f.at(i, j) > plasma_floor;
                csv += ',';
                csv += in_plasma ? fmt17(pi->pressure(f.at(i, j))) : "nan";
                csv += ',';
                csv += in_plasma ? fmt17(pi->current(f.at(i, j))) : "nan";
                csv += ',';
                csv += in_plasma ? '1' : '0';
            } else {
                csv += ',';
                csv += ok ? '1' : '0';
            }
            csv += '\n';
        }
    }
    return csv;
}

gs::GridField sample_solution(const gs::ClosedFormSolution& s, const gs::GridSpec& g) {
    gs::GridField f(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double r = g.r_at(i), z = g.z_at(j);
            if (r <= 0 || !s.in_domain(r, z)) continue;
            try {
                f.set(i, j, s.value(r, z));
            } catch (const gs::domain_error&) {
            }
        }
    return f;
}

json grid_json(const gs::GridSpec& g) {
    json j;
    j["rmin"] = g.r0;
    j["rmax"] = g.r1;
    j["zmin"] = g.z0;
    j["zmax"] = g.z1;
    j["nr"] = g.nr;
    j["nz"] = g.nz;
    return j;
}

// Apply a flat JSON config as defaults for options the user did not pass.
void apply_config(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    json cfg;
    in >> cfg;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string name = "--" + it.key();
        CLI::Option* opt = cmd->get_option_no_throw(name);
        if (!opt) throw CLI::ValidationError("--config", "unknown option '" + it.key() + "'");
        if (opt->count() > 0) continue; // explicit flags win
        if (it.value().is_boolean()) {
            if (it.value().get<bool>()) opt->add_result("true");
        } else if (it.value().is_string()) {
            opt->add_result(it.value().get<std::string>());
        } else {
            opt->add_result(it.value().dump());
        }
        opt->run_callback();
    }
}

// ---------------------------------------------------------------------------
// subcommand payloads
// ---------------------------------------------------------------------------

int run_classify(const std::string& f_text, const std::string& g_text) {
    const gs::ProfileSpec F = gs::parse_profile(f_text, gs::ProfileRole::F);
    const gs::ProfileSpec G = gs::parse_profile(g_text, gs::ProfileRole::G);
    const gs::SymmetryClass cls = gs::classify(F, G);
    std::cout << class_json(cls).dump(2) << "\n";
    return cls.is_none() ? kExitNoClass : kExitOk;
}

gs::ClosedFormSolution build_solution(const std::string& family_name, const ParamArgs& params) {
    const gs::Family fam = gs::family_from_string(family_name);
    return gs::instantiate(fam, params.family_params());
}

int emit_solution_grid(const gs::ClosedFormSolution& s, const GridArgs& grid,
                       const std::string& out, std::uint64_t seed, const std::string& command,
                       const std::optional<std::string>& override_F,
                       const std::optional<std::string>& override_G) {
    gs::ClosedFormSolution checked = s;
    if (override_F) checked.F = gs::parse_profile(*override_F, gs::ProfileRole::F);
    if (override_G) checked.G = gs::parse_profile(*override_G, gs::ProfileRole::G);

    gs::SampleSpec spec;
    spec.n = 1000;
    spec.seed = seed;
    const gs::ResidualReport rep = gs::residual(checked, spec);
    if (rep.max_rel > kResidualGate) {
        std::cerr << "verification failure: residual " << rep.to_json() << "\n";
        return kExitVerify;
    }

    const gs::GridField f = sample_solution(checked, grid.spec());
    write_file(out, grid_csv(f, nullptr, 0));

    json meta;
    meta["command"] = command;
    meta["family"] = gs::to_string(checked.family);
    meta["form"] = checked.form;
    if (!checked.derivation.empty()) meta["derivation"] = checked.derivation;
    json pj;
    for (const auto& [k, v] : checked.params) pj[k] = v;
    meta["params"] = pj;
    meta["profiles"] = {{"F", checked.F.print()}, {"G", checked.G.print()}};
    meta["grid"] = grid_json(grid.spec());
    meta["seed"] = seed;
    meta["residual"] = residual_json(rep);
    write_meta(out, meta);
    return kExitOk;
}

std::string table_csv(const gs::OdeSolutionTable& table) {
    std::string csv = "y,w,wp\n";
    for (const auto& smp : table.samples) {
        csv += fmt17(smp.y);
        csv += ',';
        csv += fmt17(smp.w);
        csv += ',';
        csv += fmt17(smp.wp);
        csv += '\n';
    }
    return csv;
}

std::string qtable_csv(const std::vector<gs::SafetyFactorRow>& rows) {
    std::string csv = "psi,q_line,q_flux\n";
    for (const auto& row : rows) {
        csv += fmt17(row.psi);
        csv += ',';
        csv += fmt17(row.q_line);
        csv += ',';
        csv += fmt17(row.q_flux);
        csv += '\n';
    }
    return csv;
}

int emit_reduction(const gs::ReducedODE& ode, const gs::OdeSolutionTable& table,
                   const GridArgs& grid, const std::string& out, const std::string& command) {
    write_file(out, table_csv(table));

    json meta;
    meta["command"] = command;
    meta["kind"] = gs::to_string(ode.kind);
    json pj;
    for (const auto& [k, v] : ode.params) pj[k] = v;
    meta["params"] = pj;
    meta["profiles"] = {{"F", ode.F.print()}, {"G", ode.G.print()}};
    meta["steps"] = table.meta.steps;
    meta["rejected"] = table.meta.rejected;
    meta["tol"] = table.meta.tol;
    meta["max_dense_defect"] = table.meta.max_dense_defect;
    meta["truncated_blowup"] = table.meta.truncated_blowup;

    // reconstructed grid, gated on second-order convergence of the FD residual
    const gs::GridSpec g = grid.spec();
    const gs::GridSpec coarse_spec{g.r0, g.r1, g.z0, g.z1, (g.nr + 1) / 2, (g.nz + 1) / 2};
    const gs::GridField coarse = gs::reconstruct(ode, table, coarse_spec);
    const gs::GridField fine = gs::reconstruct(ode, table, g);
    const double order = gs::grid_convergence_order(coarse, fine, ode.F, ode.G);
    meta["fd_convergence_order"] = order;
    if (order < 1.7 || order > 2.3) {
        std::cerr << "verification failure: reconstruction order " << order
                  << " outside [1.7, 2.3]\n";
        return kExitVerify;
    }
    const std::string grid_path = out.substr(0, out.find_last_of('.')) + "_grid.csv";
    write_file(grid_path, grid_csv(fine, nullptr, 0));
    meta["grid"] = grid_json(g);
    meta["grid_csv"] = grid_path;
    write_meta(out, meta);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

int run_figure(const std::string& which, const std::string& outdir, std::uint64_t seed) {
    fs::create_directories(outdir);
    const std::string base = outdir + "/";

    if (which == "fig1") {
        // similarity reduction with q = 1, a = -1, b = 1; branch start at
        // eps = 1e-3, span to y = 5
        gs::TagInfo tag{gs::SymTag::A, {{"q", 1.0}, {"a", -1.0}, {"b", 1.0}, {"c", 0.0}}};
        const gs::ProfileSpec F = gs::ProfileSpec::power_shifted(-1, 0, 3);
        const gs::ProfileSpec G = gs::ProfileSpec::power_shifted(1, 0, 2);
        const gs::ReducedODE ode = gs::reduce(tag, F, G);
        gs::OdeOptions opts;
        opts.tol = 1e-12;
        opts.max_step = 5.0 / 4000;
        const auto table = gs::integrate_similarity_branch(ode, 1e-3, 5.0, opts);

        GridArgs grid;
        grid.rmin = 0.15;
        grid.rmax = 1.8;
        grid.zmin = -2.0;
        grid.zmax = 2.0;
        grid.nr = grid.nz = 161;
        return emit_reduction(ode, table, grid, base + "fig1_ode.csv", "figure fig1");
    }

    if (which == "fig2") {
        // linear case with mu = alpha = 1: psi = R1(r) cos z via the numeric
        // regular radial branch (a1 = -1, mu = 1, so b1 = h - mu = -2)
        const gs::SeparableSolution s =
            gs::separable(-1.0, -2.0, -1.0, gs::SeparableSolution::ZKind::Osc, 1.0, 0.0, 1.0, 12.0);
        const gs::GridSpec g{0.05, 12.0, -6.2831853071795862, 6.2831853071795862, 241, 161};
        const gs::GridField f = s.sample(g);
        const gs::GridSpec gc{g.r0, g.r1, g.z0, g.z1, 121, 81};
        const double order =
            gs::grid_convergence_order(s.sample(gc), f, gs::ProfileSpec::affine(0, s.a1),
                                       gs::ProfileSpec::affine(0, s.b1));
        if (order < 1.7 || order > 2.3) {
            std::cerr << "verification failure: fig2 residual order " << order << "\n";
            return kExitVerify;
        }
        write_file(base + "fig2_grid.csv", grid_csv(f, nullptr, 0));
        json meta;
        meta["command"] = "figure fig2";
        meta["form"] = "psi = R1(r) cos z, mu = 1, a1 = -1 (numeric regular branch)";
        meta["fd_convergence_order"] = order;
        meta["grid"] = grid_json(g);
        write_meta(base + "fig2_grid.csv", meta);
        return kExitOk;
    }

    if (which == "fig3") {
        for (auto [sig, name] : {std::pair{-0.5, "fig3_left.csv"}, {-5.0, "fig3_right.csv"}}) {
            const auto s = gs::instantiate(
                gs::Family::DShape,
                {{"lambda", 1.0}, {"A", -1.0}, {"sigma", sig}, {"shift_z0", 1.0}});
            const auto [right, left] = gs::dshape_boundary(s);
            GridArgs grid;
            grid.rmin = std::max(1e-3, right.cr - 1.05 * right.radius);
            grid.rmax = right.cr + 1.05 * right.radius;
            grid.zmin = -1.05 * right.radius;
            grid.zmax = 1.05 * right.radius;
            grid.nr = grid.nz = 201;
            const int rc = emit_solution_grid(s, grid, base + name, seed,
                                              std::string("figure fig3 sigma=") + fmt17(sig),
                                              std::nullopt, std::nullopt);
            if (rc != kExitOk) return rc;
        }
        return kExitOk;
    }

    if (which == "fig4") {
        const auto s = gs::instantiate(gs::Family::DShape,
                                       {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
        const double psi0 = 0.4;
        const double p0 = gs::PIProfiles::boundary_p0(s.param("a"), psi0);
        const gs::PIProfiles pi = gs::p_and_i_maps(s.param("a"), s.param("b"), p0, 0.0);

        gs::SampleSpec spec;
        spec.n = 1000;
        spec.seed = seed;
        const gs::ResidualReport rep = gs::residual(s, spec);
        if (rep.max_rel > kResidualGate) {
            std::cerr << "verification failure: residual " << rep.to_json() << "\n";
            return kExitVerify;
        }

        const gs::GridSpec g{s.box.r0, s.box.r1, s.box.z0, s.box.z1, 201, 201};
        gs::GridField f = sample_solution(s, g);
        // restrict to the plasma region psi > psi0
        for (std::size_t k = 0; k < f.psi.size(); ++k)
            if (f.valid[k] && f.psi[k] <= psi0) f.valid[k] = 0;
        write_file(base + "fig4_fields.csv", grid_csv(f, &pi, psi0));

        const gs::AxisResult axis = gs::find_magnetic_axis(s);
        std::vector<double> levels;
        const int nlev = 10;
        for (int k = 0; k < nlev; ++k)
            levels.push_back(psi0 + (axis.psi - psi0) * (0.05 + 0.90 * k / (nlev - 1)));
        const auto rows =
            gs::safety_factor(s, [&](double psi) { return pi.current(psi); }, levels, {});
        write_file(base + "fig4_q.csv", qtable_csv(rows));

        json meta;
        meta["command"] = "figure fig4";
        meta["family"] = gs::to_string(s.family);
        meta["form"] = s.form;
        meta["psi0"] = psi0;
        meta["p0"] = p0;
        meta["I0"] = 0.0;
        meta["axis"] = {{"r", axis.r}, {"z", axis.z}, {"psi", axis.psi}};
        meta["seed"] = seed;
        meta["residual"] = residual_json(rep);
        meta["grid"] = grid_json(g);
        write_meta(base + "fig4_fields.csv", meta);
        return kExitOk;
    }

    std::cerr << "unknown figure '" << which << "' (expected fig1..fig4)\n";
    return kExitParse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form Grad-Shafranov equilibria: classification, verified solution "
                 "grids, symmetry reductions and maps, field outputs, figure data"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name

    std::uint64_t seed = 12345;
    app.add_option("--seed", seed, "random seed for residual sampling (env GS_SEED overrides)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify a profile pair (F, G)");
    std::string f_text, g_text;
    classify_cmd->add_option("--F", f_text, "F(psi) expression")->required();
    classify_cmd->add_option("--G", g_text, "G(psi) expression")->required();

    // solution
    auto* sol_cmd = app.add_subcommand("solution", "emit a verified closed-form solution grid");
    std::string sol_family, sol_out = "solution.csv", sol_config;
    std::string sol_override_F, sol_override_G;
    ParamArgs sol_params;
    GridArgs sol_grid;
    sol_cmd->add_option("--family", sol_family, "catalog family name")->required();
    sol_cmd->add_option("--out", sol_out, "output CSV path");
    sol_cmd->add_option("--config", sol_config, "JSON config mirroring the flags");
    sol_cmd->add_option("--override-profile-F", sol_override_F,
                        "replace F before verification (negative-control/debug aid)");
    sol_cmd->add_option("--override-profile-G", sol_override_G,
                        "replace G before verification (negative-control/debug aid)");
    sol_params.attach(sol_cmd);
    sol_grid.attach(sol_cmd);

    // reduce
    auto* red_cmd = app.add_subcommand("reduce", "build and integrate a symmetry reduction");
    std::string red_class, red_out = "reduction.csv";
    std::string red_F, red_G;
    double red_eps = 1e-3, red_tol = 1e-10, red_y0 = 0, red_w0 = 0, red_wp0 = 0, red_end = 5.0;
    ParamArgs red_params;
    GridArgs red_grid;
    red_cmd->add_option("--class", red_class,
                        "classification tag (a, a', a'', b, conditional-kappa, "
                        "conditional-rotation, weak-sigma)")
        ->required();
    red_cmd->add_option("--F", red_F, "F(psi) expression (general-profile reductions)");
    red_cmd->add_option("--G", red_G, "G(psi) expression");
    red_cmd->add_option("--eps", red_eps, "similarity branch start");
    red_cmd->add_option("--tol", red_tol, "integrator tolerance");
    red_cmd->add_option("--y0", red_y0, "explicit initial point");
    red_cmd->add_option("--w0", red_w0, "explicit initial value");
    red_cmd->add_option("--wp0", red_wp0, "explicit initial slope");
    red_cmd->add_option("--span-end", red_end, "integration end");
    red_params.attach(red_cmd);
    red_grid.attach(red_cmd);
    red_cmd->add_option("--out", red_out, "output table CSV (grid lands next to it)");

    // map
    auto* map_cmd = app.add_subcommand("map", "apply a finite symmetry map to a catalog solution");
    std::string map_family, map_out = "mapped.csv";
    bool map_exceptional = false, map_scaling = false, map_expcase = false;
    double map_lambda = 0, map_q = 0, map_c = 0;
    ParamArgs map_params;
    GridArgs map_grid;
    map_cmd->add_option("--family", map_family, "seed solution family")->required();
    map_cmd->add_flag("--exceptional", map_exceptional, "apply the exceptional-case map");
    map_cmd->add_flag("--scaling", map_scaling, "apply the power-family scaling map");
    map_cmd->add_flag("--exp-case", map_expcase, "apply the exponential-case map");
    map_cmd->add_option("--map-lambda", map_lambda, "group parameter lambda")->required();
    map_cmd->add_option("--map-q", map_q, "q of the scaling map");
    map_cmd->add_option("--map-c", map_c, "c of the scaling map");
    map_cmd->add_option("--out", map_out, "output CSV path");
    map_params.attach(map_cmd);
    map_grid.attach(map_cmd);

    // fields
    auto* fields_cmd = app.add_subcommand("fields", "emit psi, p, I grids and the q(psi) table");
    std::string fields_family = "dshape", fields_out = "fields.csv";
    int fields_nlevels = 10;
    ParamArgs fields_params;
    GridArgs fields_grid;
    fields_cmd->add_option("--family", fields_family, "catalog family (q = -1/4 profiles)");
    fields_cmd->add_option("--out", fields_out, "output CSV path");
    fields_cmd->add_option("--n-levels", fields_nlevels, "number of q(psi) surfaces");
    fields_params.attach(fields_cmd);
    fields_grid.attach(fields_cmd);

    // figure
    auto* fig_cmd = app.add_subcommand("figure", "reproduce reference figure data");
    std::string fig_which, fig_outdir = "figures";
    fig_cmd->add_option("which", fig_which, "fig1 | fig2 | fig3 | fig4")->required();
    fig_cmd->add_option("--outdir", fig_outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    const std::uint64_t run_seed = effective_seed(seed);

    try {
        if (classify_cmd->parsed()) return run_classify(f_text, g_text);

        if (sol_cmd->parsed()) {
            if (!sol_config.empty()) apply_config(sol_cmd, sol_config);
            const auto s = build_solution(sol_family, sol_params);
            sol_grid.validate(axis_regular(s.family));
            return emit_solution_grid(
                s, sol_grid, sol_out, run_seed, "solution",
                sol_override_F.empty() ? std::nullopt : std::optional<std::string>(sol_override_F),
                sol_override_G.empty() ? std::nullopt : std::optional<std::string>(sol_override_G));
        }

        if (red_cmd->parsed()) {
            gs::ProfileSpec F, G;
            gs::TagInfo tag;
            const bool explicit_init = red_cmd->count("--y0") > 0;
            if (!red_F.empty() && !red_G.empty()) {
                F = gs::parse_profile(red_F, gs::ProfileRole::F);
                G = gs::parse_profile(red_G, gs::ProfileRole::G);
                const gs::SymmetryClass cls = gs::classify(F, G);
                if (cls.is_none()) {
                    std::cerr << "no symmetry class for the given profiles\n";
                    return kExitNoClass;
                }
                const gs::TagInfo* found = nullptr;
                for (const auto& t : cls.tags)
                    if (gs::to_string(t.tag) == red_class) found = &t;
                if (!found) {
                    std::cerr << "profiles do not admit class '" << red_class << "'\n";
                    return kExitNoClass;
                }
                tag = *found;
            } else {
                const auto& pv = red_params.values;
                auto need = [&](const char* k) {
                    if (!pv.count(k))
                        throw CLI::ValidationError("--" + std::string(k), "required for this class");
                    return pv.at(k);
                };
                if (red_class == "a" || red_class == "a'" || red_class == "a''") {
                    const double q = need("q"), a = need("a"), b = need("b");
                    tag.tag = (red_class == "a''") ? gs::SymTag::ASecond : gs::SymTag::A;
                    tag.params = {{"q", q}, {"a", a}, {"b", b}, {"c", 0.0}};
                    F = gs::ProfileSpec::power_shifted(a, 0, 1 + 2 / q);
                    G = gs::ProfileSpec::power_shifted(b, 0, 1 + 1 / q);
                } else if (red_class == "b") {
                    const double a = need("a"), b = need("b"), c = need("c");
                    tag.tag = gs::SymTag::B;
                    tag.params = {{"a", a}, {"b", b}, {"c", c}};
                    F = gs::ProfileSpec::exponential(a, 2 * c);
                    G = gs::ProfileSpec::exponential(b, c);
                } else if (red_class == "weak-sigma") {
                    const double q = need("q"), A = need("A"), sig = need("sigma");
                    const gs::WeakFamily wf = gs::weak_family(q, A, sig);
                    tag.tag = gs::SymTag::WeakSigma;
                    tag.params = {{"q", q}, {"A", A}, {"sigma", sig}, {"a", wf.a}, {"b", wf.b}};
                    F = wf.F;
                    G = wf.G;
                } else {
                    throw CLI::ValidationError(
                        "--class", "pass --F/--G expressions for class '" + red_class + "'");
                }
            }
            const gs::ReducedODE ode = gs::reduce(tag, F, G);
            gs::OdeOptions opts;
            opts.tol = red_tol;
            const double start = explicit_init ? red_y0 : red_eps;
            opts.max_step = std::abs(red_end - start) / 2000;
            gs::OdeSolutionTable table =
                (!explicit_init && ode.kind == gs::ReductionKind::X1Similarity)
                    ? gs::integrate_similarity_branch(ode, red_eps, red_end, opts)
                    : gs::integrate_reduced(ode, red_y0, red_w0, red_wp0, red_end, opts);
            return emit_reduction(ode, table, red_grid, red_out, "reduce " + red_class);
        }

        if (map_cmd->parsed()) {
            const auto seed_solution = build_solution(map_family, map_params);
            gs::ClosedFormSolution mapped = seed_solution;
            if (map_exceptional)
                mapped = gs::exceptional_map(seed_solution, map_lambda);
            else if (map_scaling)
                mapped = gs::scaling_map(seed_solution, map_lambda, map_q, map_c);
            else if (map_expcase)
                mapped = gs::exp_case_map(seed_solution, map_lambda);
            else
                throw CLI::ValidationError("map",
                                           "pick one of --exceptional, --scaling, --exp-case");
            map_grid.validate(false);
            return emit_solution_grid(mapped, map_grid, map_out, run_seed, "map", std::nullopt,
                                      std::nullopt);
        }

        if (fields_cmd->parsed()) {
            const auto s = build_solution(fields_family, fields_params);
            const double psi0 =
                fields_params.values.count("psi0") ? fields_params.values.at("psi0") : 0.4;
            const double I0 = fields_params.values.count("I0") ? fields_params.values.at("I0") : 0.0;
            if (!s.has_param("a") || !s.has_param("b"))
                throw CLI::ValidationError("--family",
                                           "fields needs the psi^-7/psi^-3 profile family");
            const double p0 = gs::PIProfiles::boundary_p0(s.param("a"), psi0);
            const gs::PIProfiles pi = gs::p_and_i_maps(s.param("a"), s.param("b"), p0, I0);

            gs::SampleSpec spec;
            spec.n = 1000;
            spec.seed = run_seed;
            const gs::ResidualReport rep = gs::residual(s, spec);
            if (rep.max_rel > kResidualGate) {
                std::cerr << "verification failure: residual " << rep.to_json() << "\n";
                return kExitVerify;
            }

            fields_grid.validate(axis_regular(s.family));
            gs::GridField f = sample_solution(s, fields_grid.spec());
            for (std::size_t k = 0; k < f.psi.size(); ++k)
                if (f.valid[k] && f.psi[k] <= psi0) f.valid[k] = 0;
            write_file(fields_out, grid_csv(f, &pi, psi0));

            const gs::AxisResult axis = gs::find_magnetic_axis(s);
            std::vector<double> levels;
            for (int k = 0; k < fields_nlevels; ++k)
                levels.push_back(psi0 +
                                 (axis.psi - psi0) * (0.05 + 0.90 * k / (fields_nlevels - 1)));
            const auto rows =
                gs::safety_factor(s, [&](double psi) { return pi.current(psi); }, levels, {});
            const std::string qpath =
                fields_out.substr(0, fields_out.find_last_of('.')) + "_q.csv";
            write_file(qpath, qtable_csv(rows));

            json meta;
            meta["command"] = "fields";
            meta["family"] = gs::to_string(s.family);
            meta["form"] = s.form;
            meta["psi0"] = psi0;
            meta["p0"] = p0;
            meta["I0"] = I0;
            meta["axis"] = {{"r", axis.r}, {"z", axis.z}, {"psi", axis.psi}};
            meta["seed"] = run_seed;
            meta["residual"] = residual_json(rep);
            meta["grid"] = grid_json(fields_grid.spec());
            meta["q_table"] = qpath;
            write_meta(fields_out, meta);
            return kExitOk;
        }

        if (fig_cmd->parsed()) return run_figure(fig_which, fig_outdir, run_seed);
    } catch (const gs::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParse;
    } catch (const gs::class_mismatch& e) {
        std::cerr << "class mismatch: " << e.what() << "\n";
        return kExitNoClass;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParse;
    } catch (const gs::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const gs::domain_error& e) {
        std::cerr << "numeric failure (domain): " << e.what() << "\n";
        return kExitNumeric;
    }

    return kExitOk;
}
