// Command line front end for the spectral studies.  Every subcommand builds a
// SweepConfig (defaults, optionally replaced by --config JSON, then overridden
// by flags), runs the study and writes report.json / rows.csv into --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magspec/studies.hpp"

using magspec::SweepConfig;
using magspec::StudyReport;

// --h accepts either "a:b:c" (c values of 1/h linearly spaced from a to b)
// or a comma separated list of h values, largest first.
static std::vector<double> parse_h_spec(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b;
        int c;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b >> c2 >> c) || c1 != ':' || c2 != ':' || c < 1 ||
            !(b > a) || !(a > 0))
            throw CLI::ValidationError("--h", "expected start:stop:count in 1/h, start < stop");
        for (int i = 0; i < c; ++i) {
            double inv = (c == 1) ? a : a + (b - a) * i / (c - 1);
            out.push_back(1.0 / inv);
        }
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    }
    return out;
}

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for 2D magnetic Schrodinger spectral asymptotics"};
    app.set_help_flag("--help", "print help");   // frees -h / --h for the sweep flag
    app.require_subcommand(1);

    std::string config_path, out_dir, h_spec;
    std::vector<int> grid;
    int eigs = 0;
    std::uint64_t seed = 0;
    bool emit_plots = false, have_seed = false;
    int k_flag = -1;
    int bumps = 1;
    double camel_c = 0.0;
    bool dump = false;

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", config_path, "JSON config; flags override its fields");
        sub->add_option("--out", out_dir, "output directory for report.json / rows.csv");
        sub->add_option("--h", h_spec, "semiclassical values: 'a:b:c' (1/h range) or 'h1,h2,...'");
        sub->add_option("--grid", grid, "grid nodes NX NY")->expected(2);
        sub->add_option("--eigs", eigs, "number of eigenvalues per solve");
        sub->add_option("--seed", seed, "RNG seed for the Lanczos start vector")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_flag("--emit-plots", emit_plots, "also write gnuplot scripts");
    };

    CLI::App* band = app.add_subcommand("band", "1D band function table and its minimum");
    band->add_option("--k", k_flag, "fiber operator index k");
    add_common(band);

    CLI::App* simple = app.add_subcommand("simple-well", "single-well h-sweep against the expansion");
    simple->add_option("--k", k_flag, "fiber operator index k");
    add_common(simple);

    CLI::App* dwell = app.add_subcommand("double-well", "symmetric double-well tunneling sweep");
    dwell->add_option("--k", k_flag, "fiber operator index k");
    dwell->add_flag("--dump-eigenvectors", dump, "dump the ground doublet at the smallest h");
    add_common(dwell);

    CLI::App* camel = app.add_subcommand("camel", "curvature-well boundary model sweep");
    camel->add_option("--bumps", bumps, "1 (parabola) or 2 (two-bump boundary)")
        ->check(CLI::Range(1, 2));
    camel->add_option("--c", camel_c, "parabola coefficient (one-bump)");
    add_common(camel);

    CLI::App* agmon = app.add_subcommand("agmon", "decay-rate check against the Agmon weight");
    std::string in_dir;
    agmon->add_option("--in", in_dir, "directory with the psi_1 eigenvector dump (default: --out)");
    add_common(agmon);

    CLI::App* dconv = app.add_subcommand("domain-conv", "nested-rectangle convergence check");
    dconv->add_option("--k", k_flag, "fiber operator index k");
    add_common(dconv);

    CLI11_PARSE(app, argc, argv);

    std::string kind;
    if (band->parsed()) kind = "band-table";
    else if (simple->parsed()) kind = "simple-well";
    else if (dwell->parsed()) kind = "double-well";
    else if (camel->parsed()) kind = (bumps == 2) ? "camel-2bump" : "camel-1bump";
    else if (agmon->parsed()) kind = "agmon";
    else kind = "domain-convergence";

    try {
        SweepConfig cfg;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw std::runtime_error("cannot open config " + config_path);
            nlohmann::json j;
            f >> j;
            if (!j.contains("study_kind")) j["study_kind"] = kind;
            cfg = SweepConfig::from_json(j);
        } else {
            cfg = SweepConfig::defaults(kind, k_flag >= 0 ? k_flag : (kind == "simple-well" ? 1 : 0));
        }
        if (k_flag >= 0) cfg.k = k_flag;
        if (!h_spec.empty()) cfg.h_list = parse_h_spec(h_spec);
        if (grid.size() == 2) { cfg.nx = grid[0]; cfg.ny = grid[1]; }
        if (eigs > 0) cfg.n_eigs = eigs;
        if (have_seed) cfg.seed = seed;
        if (emit_plots) cfg.emit_plots = true;
        if (dump) cfg.dump_eigenvectors = true;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!in_dir.empty()) cfg.input_dir = in_dir;
        if (camel->parsed() && camel_c > 0.0) cfg.camel_c = camel_c;
        cfg.validate();

        StudyReport rep = magspec::run_study(cfg);

        std::cout << "study: " << cfg.study_kind << "  (k = " << cfg.k << ", "
                  << cfg.h_list.size() << " h values)\n";
        for (const auto& f : rep.fits) {
            std::cout << "fit " << f.model << ":";
            for (double p : f.params) std::printf(" %.8g", p);
            std::printf("   R^2 = %.6f\n", f.r_squared);
        }
        for (const auto& v : rep.verdicts)
            std::printf("%-34s %-14.8g %-44s %s\n", v["name"].get<std::string>().c_str(),
                        v["measured"].get<double>(),
                        v["expected"].get<std::string>().c_str(),
                        v["pass"].get<bool>() ? "pass" : "FAIL");
        if (!cfg.output_dir.empty())
            std::cout << "wrote " << cfg.output_dir << "/report.json\n";
        return rep.all_passed() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
