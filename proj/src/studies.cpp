#include "magspec/studies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "magspec/assemble2d.hpp"
#include "magspec/band1d.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/wkb.hpp"

namespace magspec {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

SweepConfig SweepConfig::defaults(const std::string& study_kind, int k) {
    SweepConfig c;
    c.study_kind = study_kind;
    c.k = k;
    auto inv = [](std::initializer_list<double> l) {
        std::vector<double> v;
        for (double x : l) v.push_back(1.0 / x);
        return v;
    };
    if (study_kind == "band-table") {
        c.h_list = {1.0};
        c.n_eigs = 1;
    } else if (study_kind == "simple-well") {
        c.k = 1;
        c.gamma_coeffs = {1.0, 0.0, 4.0};
        c.h_list = inv({10, 15, 20, 25, 30, 40, 50, 60});
        c.a = 1.25;
        c.b = 6.0;
        c.nx = 201;
        c.ny = 151;
        c.n_eigs = 1;
    } else if (study_kind == "double-well") {
        c.gamma_coeffs = {2.0, 0.0, -2.0, 0.0, 1.0};   // 1 + (s^2 - 1)^2
        c.a = 2.0;
        c.nx = 321;
        c.n_eigs = 2;
        if (k == 0) {
            c.h_list = inv({6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
            c.b = 7.0;
            c.ny = 211;
        } else {
            c.h_list = inv({8, 10, 12, 14, 16, 18, 20, 22, 24});
            c.b = 6.0;
            c.ny = 241;
        }
    } else if (study_kind == "camel-1bump") {
        c.k = 0;
        c.camel_c = 4.0;
        c.h_list = inv({150, 200, 280, 400, 560});
        c.nx = 271;   // fine companion grid is derived (spacing ratio 1.5)
        c.ny = 271;
        c.n_eigs = 2;
    } else if (study_kind == "camel-2bump") {
        c.k = 0;
        c.h_list = inv({6, 7, 8, 9, 10, 11, 12, 14});
        c.nx = 281;
        c.ny = 121;
        c.n_eigs = 2;
    } else if (study_kind == "agmon") {
        c.k = 0;
        c.gamma_coeffs = {2.0, 0.0, -2.0, 0.0, 1.0};
        c.h_list = {1.0 / 15};
    } else if (study_kind == "domain-convergence") {
        c.k = 1;
        c.gamma_coeffs = {1.0, 0.0, 4.0};
        c.h_list = {1.0 / 20};
        c.n_eigs = 1;
    } else {
        throw std::invalid_argument("unknown study kind: " + study_kind);
    }
    return c;
}

void SweepConfig::validate() const {
    if (h_list.empty()) throw std::invalid_argument("SweepConfig: empty h list");
    for (size_t i = 0; i < h_list.size(); ++i) {
        if (!(h_list[i] > 0.0)) throw std::invalid_argument("SweepConfig: h <= 0");
        if (i > 0 && !(h_list[i] < h_list[i - 1]))
            throw std::invalid_argument("SweepConfig: h list must be strictly decreasing");
    }
    bool needs_gamma = study_kind == "simple-well" || study_kind == "double-well" ||
                       study_kind == "agmon" || study_kind == "domain-convergence";
    if (needs_gamma && gamma_coeffs.empty())
        throw std::invalid_argument("SweepConfig: " + study_kind + " requires gamma coefficients");
}

json SweepConfig::to_json() const {
    json j;
    j["study_kind"] = study_kind;
    j["k"] = k;
    j["h_list"] = h_list;
    j["a"] = a;
    j["b"] = b;
    j["nx"] = nx;
    j["ny"] = ny;
    j["n_eigs"] = n_eigs;
    j["gamma_coeffs"] = gamma_coeffs;
    j["camel_c"] = camel_c;
    j["solver_tol"] = solver_tol;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["input_dir"] = input_dir;
    j["emit_plots"] = emit_plots;
    j["dump_eigenvectors"] = dump_eigenvectors;
    return j;
}

SweepConfig SweepConfig::from_json(const json& j) {
    SweepConfig c = defaults(j.at("study_kind").get<std::string>(), j.value("k", 1));
    if (j.contains("k")) c.k = j["k"];
    if (j.contains("h_list")) c.h_list = j["h_list"].get<std::vector<double>>();
    if (j.contains("a")) c.a = j["a"];
    if (j.contains("b")) c.b = j["b"];
    if (j.contains("nx")) c.nx = j["nx"];
    if (j.contains("ny")) c.ny = j["ny"];
    if (j.contains("n_eigs")) c.n_eigs = j["n_eigs"];
    if (j.contains("gamma_coeffs")) c.gamma_coeffs = j["gamma_coeffs"].get<std::vector<double>>();
    if (j.contains("camel_c")) c.camel_c = j["camel_c"];
    if (j.contains("solver_tol")) c.solver_tol = j["solver_tol"];
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"];
    if (j.contains("input_dir")) c.input_dir = j["input_dir"];
    if (j.contains("emit_plots")) c.emit_plots = j["emit_plots"];
    if (j.contains("dump_eigenvectors")) c.dump_eigenvectors = j["dump_eigenvectors"];
    c.validate();
    return c;
}

// ---------------------------------------------------------------- report io

bool StudyReport::all_passed() const {
    for (const auto& v : verdicts)
        if (!v.value("pass", false)) return false;
    return true;
}

void StudyReport::write(const std::string& dir) const {
    if (dir.empty()) return;
    fs::create_directories(dir);
    {
        std::ofstream f(fs::path(dir) / "rows.csv");
        f << "study,k,h,n,lambda,residual,nx,ny,a,b\n";
        f.precision(16);
        for (const auto& r : rows)
            f << r.study << ',' << r.k << ',' << r.h << ',' << r.n << ',' << r.lambda << ','
              << r.residual << ',' << r.nx << ',' << r.ny << ',' << r.a << ',' << r.b << '\n';
    }
    {
        json j;
        j["config"] = config.to_json();
        j["fits"] = json::array();
        for (const auto& f : fits)
            j["fits"].push_back({{"model", f.model},
                                 {"params", f.params},
                                 {"r_squared", f.r_squared},
                                 {"window", {f.window_lo, f.window_hi}}});
        j["predictions"] = predictions;
        j["verdicts"] = verdicts;
        j["extra"] = extra;
        json jr = json::array();
        for (const auto& r : rows)
            jr.push_back({{"study", r.study}, {"k", r.k}, {"h", r.h}, {"n", r.n},
                          {"lambda", r.lambda}, {"residual", r.residual}, {"nx", r.nx},
                          {"ny", r.ny}, {"a", r.a}, {"b", r.b}, {"significant", r.significant}});
        j["rows"] = jr;
        std::ofstream f(fs::path(dir) / "report.json");
        f << j.dump(2) << '\n';
    }
    if (config.emit_plots) {
        std::ofstream f(fs::path(dir) / "rows.gp");
        f << "set datafile separator ','\n"
          << "set key autotitle columnhead\n"
          << "set logscale x\n"
          << "plot 'rows.csv' using (1/$3):5 with linespoints title 'lambda vs 1/h'\n";
    }
}

// ---------------------------------------------------------------- helpers

static Grid2D montgomery_grid(int k, double a, double b, int nx, int ny) {
    Grid2D g;
    g.s_min = -a;
    g.s_max = a;
    g.nx = nx;
    g.ny = ny;
    if (k == 0) {
        g.t_min = 0.0;
        g.t_max = b;
        g.bc_t_min = Bc::neumann;
    } else {
        g.t_min = -b;
        g.t_max = b;
        g.bc_t_min = Bc::dirichlet;
    }
    return g;
}

struct BandCache {
    BandMinimum bm[2];
    bool have[2] = {false, false};
    const BandMinimum& get(int k) {
        if (!have[k]) {
            bm[k] = band_minimum(k, default_band_grid(k));
            have[k] = true;
        }
        return bm[k];
    }
};

// t-section norms ||psi(s_i, .)||_{L^2(t)} of a solved eigenvector.  With the
// symmetrized Neumann row the plain dt-weighted Euclidean sum is the correct
// quadrature at t = 0 as well.
static std::vector<double> t_profile(const std::vector<cplx>& v, const Grid2D& g) {
    std::vector<double> rho(g.nx, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        double s = 0.0;
        for (int j = 0; j < g.ny; ++j) s += std::norm(v[g.index(i, j)]);
        rho[i] = std::sqrt(s * g.dt());
    }
    return rho;
}

static void dump_eigenvector(const std::string& dir, const std::string& name,
                             const std::vector<cplx>& v, const Grid2D& g, double h, int k) {
    fs::create_directories(dir);
    fs::path p = fs::path(dir) / (name + ".bin");
    std::ofstream f(p, std::ios::binary);
    for (const cplx& z : v) {
        double re = z.real(), im = z.imag();
        f.write(reinterpret_cast<const char*>(&re), sizeof(double));
        f.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
    json hdr;
    hdr["dim"] = static_cast<int>(v.size());
    hdr["nx"] = g.nx;
    hdr["ny"] = g.ny;
    hdr["s_min"] = g.s_min;
    hdr["s_max"] = g.s_max;
    hdr["t_min"] = g.t_min;
    hdr["t_max"] = g.t_max;
    hdr["neumann_t_min"] = (g.bc_t_min == Bc::neumann);
    hdr["h"] = h;
    hdr["k"] = k;
    std::ofstream fh(p.string() + ".json");
    fh << hdr.dump(2) << '\n';
}

static void add_verdict(json& verdicts, const std::string& name, double measured,
                        const std::string& expected, bool pass) {
    verdicts.push_back(
        {{"name", name}, {"measured", measured}, {"expected", expected}, {"pass", pass}});
}

// ---------------------------------------------------------------- band table

StudyReport run_band_table(const SweepConfig& config) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();
    const int k = config.k;
    Grid1D g = default_band_grid(k);
    const int npts = 81;
    std::vector<std::array<double, 4>> table;
    for (int i = 0; i < npts; ++i) {
        double zeta = 2.0 * i / (npts - 1);
        BandPoint bp = band_value(k, zeta, g);
        table.push_back({static_cast<double>(k), zeta, bp.nu, bp.residual});
        StudyRow r;
        r.study = "band-table";
        r.k = k;
        r.h = 0.0;
        r.n = 1;
        r.lambda = bp.nu;
        r.residual = bp.residual;
        r.nx = g.n;
        r.ny = 1;
        r.a = g.x_min;
        r.b = g.x_max;
        rep.rows.push_back(r);
    }
    BandMinimum bm = band_minimum(k, g);
    rep.predictions["band_minimum"] = {{"k", k}, {"zeta0", bm.zeta0}, {"nu0", bm.nu0},
                                       {"nu2", bm.nu2}};
    if (k == 0) rep.predictions["band_minimum"]["C1"] = moment_C1(bm.ground);
    add_verdict(rep.verdicts, "nu_prime_at_minimum",
                band_derivative_fh(k, bm.ground), "|nu'(zeta0)| <= 1e-5",
                std::abs(band_derivative_fh(k, bm.ground)) <= 1e-5);
    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        std::ofstream f(fs::path(config.output_dir) / "band.csv");
        f << "k,zeta,nu,residual\n";
        f.precision(16);
        for (const auto& row : table)
            f << static_cast<int>(row[0]) << ',' << row[1] << ',' << row[2] << ',' << row[3]
              << '\n';
        std::ofstream fm(fs::path(config.output_dir) / "band_minimum.json");
        fm << rep.predictions["band_minimum"].dump(2) << '\n';
    }
    rep.write(config.output_dir);
    return rep;
}

// ---------------------------------------------------------------- simple well

StudyReport run_simple_well(const SweepConfig& config) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();
    const int k = config.k;
    WellProfile well = WellProfile::analyze(Polynomial(config.gamma_coeffs), -config.a, config.a);
    if (well.minima.size() != 1)
        throw std::invalid_argument("run_simple_well: needs a single-minimum profile");

    BandCache cache;
    const BandMinimum& bm = cache.get(k);
    WkbExpansion wkb = montgomery_expansion(k, well, bm, 4);
    rep.predictions["lambda0"] = wkb.lambda0;
    rep.predictions["phi2"] = wkb.phi2;
    rep.predictions["lambda_1_1"] = wkb.lambda1_of_n[1];
    const double shift = bm.zeta0 * std::pow(well.gamma0, 1.0 / (k + 2));

    std::vector<double> hs, lams;
    for (double h : config.h_list) {
        double lam2 = 0.0;
        double lam_pair[2] = {0.0, 0.0};
        int grids[2][2] = {{config.nx, config.ny},
                           {(config.nx - 1) * 3 / 2 + 1, (config.ny - 1) * 3 / 2 + 1}};
        for (int gi = 0; gi < 2; ++gi) {
            Grid2D g = montgomery_grid(k, config.a, config.b, grids[gi][0], grids[gi][1]);
            HermitianSparse A = assemble_montgomery(k, well, h, g, shift);
            EigenResult er = sparse_smallest(A, 1, 0.0, config.solver_tol, 300, config.seed);
            lam_pair[gi] = er.eigenvalues[0];
            StudyRow r;
            r.study = "simple-well";
            r.k = k;
            r.h = h;
            r.n = 1;
            r.lambda = er.eigenvalues[0];
            r.residual = er.residuals[0];
            r.nx = g.nx;
            r.ny = g.ny;
            r.a = config.a;
            r.b = config.b;
            rep.rows.push_back(r);
        }
        // Richardson extrapolation, spacing ratio 1.5
        lam2 = lam_pair[1] + (lam_pair[1] - lam_pair[0]) / (1.5 * 1.5 - 1.0);
        StudyRow r;
        r.study = "simple-well-extrap";
        r.k = k;
        r.h = h;
        r.n = 1;
        r.lambda = lam2;
        r.residual = 0.0;
        r.nx = 0;
        r.ny = 0;
        r.a = config.a;
        r.b = config.b;
        rep.rows.push_back(r);
        hs.push_back(h);
        lams.push_back(lam2);
    }

    FitResult quad = fit_basis(hs, lams,
                               {[](double) { return 1.0; }, [](double h) { return h; },
                                [](double h) { return h * h; }});
    quad.model = "h-expansion";
    rep.fits.push_back(quad);
    std::vector<double> excess;
    for (double l : lams) excess.push_back(l - wkb.lambda0);
    FitResult pw = fit_power(hs, excess);
    rep.fits.push_back(pw);

    double c_fit = quad.params[1];
    double c_pred = wkb.lambda1_of_n[1];
    add_verdict(rep.verdicts, "limit_intercept", quad.params[0],
                "nu_bar within 1e-3", std::abs(quad.params[0] - wkb.lambda0) <= 1e-3);
    add_verdict(rep.verdicts, "h_linear_coefficient", c_fit,
                "lambda_{1,1} within 5%", std::abs(c_fit - c_pred) <= 0.05 * c_pred);
    add_verdict(rep.verdicts, "power_law_exponent", pw.params[1], "1 +/- 0.1",
                std::abs(pw.params[1] - 1.0) <= 0.1);
    rep.write(config.output_dir);
    return rep;
}

// ---------------------------------------------------------------- double well

StudyReport run_double_well(const SweepConfig& config) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();
    const int k = config.k;
    WellProfile well = WellProfile::analyze(Polynomial(config.gamma_coeffs), -config.a, config.a);
    if (well.minima.size() != 2)
        throw std::invalid_argument("run_double_well: needs a symmetric double-minimum profile");

    BandCache cache;
    const BandMinimum& bm = cache.get(k);
    const double shift = bm.zeta0 * std::pow(well.gamma0, 1.0 / (k + 2));
    const double noise_floor = 100.0 * config.solver_tol;

    Grid2D g = montgomery_grid(k, config.a, config.b, config.nx, config.ny);
    std::vector<double> hs_ok, gaps_ok, plateau;
    double parity_rho[2] = {-1.0, -1.0};
    for (double h : config.h_list) {
        HermitianSparse A = assemble_montgomery(k, well, h, g, shift);
        EigenResult er = sparse_smallest(A, 2, 0.0, config.solver_tol, 300, config.seed);
        double gap = er.eigenvalues[1] - er.eigenvalues[0];
        bool sig = gap >= noise_floor;
        for (int n = 0; n < 2; ++n) {
            StudyRow r;
            r.study = "double-well";
            r.k = k;
            r.h = h;
            r.n = n + 1;
            r.lambda = er.eigenvalues[n];
            r.residual = er.residuals[n];
            r.nx = g.nx;
            r.ny = g.ny;
            r.a = config.a;
            r.b = config.b;
            r.significant = sig;
            rep.rows.push_back(r);
        }
        if (sig) {
            hs_ok.push_back(h);
            gaps_ok.push_back(gap);
            plateau.push_back(-h * std::log(gap));
        }
        // parity signature at 1/h = 10: node line of the excited state
        if (std::abs(1.0 / h - 10.0) < 0.5 && parity_rho[0] < 0.0) {
            int i0 = (g.nx - 1) / 2;   // s = 0 column (symmetric grid, odd nx)
            for (int n = 0; n < 2; ++n) {
                auto rho = t_profile(er.eigenvectors[n], g);
                parity_rho[n] = rho[i0] / *std::max_element(rho.begin(), rho.end());
            }
        }
        if (config.dump_eigenvectors && h == config.h_list.back() && !config.output_dir.empty()) {
            dump_eigenvector(config.output_dir, "psi_1", er.eigenvectors[0], g, h, k);
            dump_eigenvector(config.output_dir, "psi_2", er.eigenvectors[1], g, h, k);
        }
    }

    FitResult rate = fit_exp_rate(hs_ok, gaps_ok, 1.0);
    rep.fits.push_back(rate);
    rep.extra["plateau_minus_h_ln_gap"] = plateau;
    rep.extra["noise_floor"] = noise_floor;
    double c = rate.params[1];
    double lo = (k == 0) ? 1.15 : 0.78, hi = (k == 0) ? 1.40 : 0.98;
    add_verdict(rep.verdicts, "tunneling_rate_c", c,
                "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                c >= lo && c <= hi);
    if (parity_rho[0] >= 0.0) {
        rep.extra["parity_rho0_over_max"] = {parity_rho[0], parity_rho[1]};
        // both profiles are exponentially small at the barrier midpoint, so
        // their ratio is the only robust discriminant: the odd state carries a
        // genuine node on top of the tunneling suppression shared by both
        add_verdict(rep.verdicts, "ground_even_excited_odd", parity_rho[1],
                    "excited-state node line at s=0",
                    parity_rho[1] < 0.5 * parity_rho[0] && parity_rho[1] < 0.02);
    }
    rep.write(config.output_dir);
    return rep;
}

// ---------------------------------------------------------------- camel

StudyReport run_camel(const SweepConfig& config, int bumps) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();

    BandCache cache;
    const BandMinimum& bm = cache.get(0);
    double C1 = moment_C1(bm.ground);
    CurvatureProfile prof =
        (bumps == 1) ? curvature_parabola(config.camel_c) : curvature_two_bump();
    CamelExpansion ce = camel_expansion(bm, C1, prof.kappa_max, prof.k2, 2, &prof, {});
    rep.predictions = {{"theta0", ce.theta0},
                       {"C1", C1},
                       {"kappa_max", prof.kappa_max},
                       {"k2", prof.k2},
                       {"lambda2", ce.lambda_terms[1].lambda2},
                       {"lambda3_1", ce.lambda_terms[1].lambda3}};
    const double phi2 = std::sqrt(prof.k2 * C1 / bm.nu2);
    const double noise_floor = 100.0 * config.solver_tol;
    const std::string label = (bumps == 1) ? "camel-1bump" : "camel-2bump";

    std::vector<double> hs, lam1, gaps;
    std::vector<bool> sig;
    for (double h : config.h_list) {
        double sa, tb;
        std::vector<std::array<int, 2>> grids;
        double mass_floor;
        if (bumps == 1) {
            // the longitudinal states spread like (h / (C1 k2 / 2))^{1/4} in
            // arclength (~0.06 at the small end of the window); the excited
            // state needs many widths before the Dirichlet wall, and clipping
            // it distorts the doublet gap long before it distorts lambda_1
            sa = std::max(0.6, 14.0 * std::sqrt(h / phi2));
            tb = std::min(0.9 / (prof.kappa_max * h), 7.0);
            mass_floor = 0.1;
            grids = {{config.nx, config.ny},
                     {(config.nx - 1) * 3 / 2 + 1, (config.ny - 1) * 3 / 2 + 1}};
        } else {
            sa = prof.max_locations.back() + 1.2;
            tb = 0.92 / (prof.kappa_max * h);
            mass_floor = 0.0;
            grids = {{config.nx, config.ny}};
        }
        std::vector<double> l1g, l2g;
        for (auto [gnx, gny] : grids) {
            Grid2D g;
            g.s_min = -sa;
            g.s_max = sa;
            g.t_min = 0.0;
            g.t_max = tb;
            g.nx = gnx;
            g.ny = gny;
            g.bc_t_min = Bc::neumann;
            HermitianSparse A = assemble_camel(prof.kappa, bm.zeta0, h, g, mass_floor);
            EigenResult er = sparse_smallest(A, 2, 0.0, config.solver_tol, 300, config.seed);
            l1g.push_back(er.eigenvalues[0]);
            l2g.push_back(er.eigenvalues[1]);
            for (int n = 0; n < 2; ++n) {
                StudyRow r;
                r.study = label;
                r.k = 0;
                r.h = h;
                r.n = n + 1;
                r.lambda = er.eigenvalues[n];
                r.residual = er.residuals[n];
                r.nx = gnx;
                r.ny = gny;
                r.a = sa;
                r.b = tb;
                rep.rows.push_back(r);
            }
        }
        double e1 = l1g.back(), e2 = l2g.back();
        if (l1g.size() == 2) {   // Richardson, spacing ratio 1.5
            e1 = l1g[1] + (l1g[1] - l1g[0]) / 1.25;
            e2 = l2g[1] + (l2g[1] - l2g[0]) / 1.25;
        }
        hs.push_back(h);
        lam1.push_back(e1);
        gaps.push_back(e2 - e1);
        sig.push_back(e2 - e1 >= noise_floor);
    }

    if (bumps == 1 && hs.size() < 4) {
        // keep the rows even when the sweep is too short to fit
        add_verdict(rep.verdicts, "sqrt_h_slope", 0.0, "insufficient range (>= 4 h values)", false);
        rep.write(config.output_dir);
        return rep;
    }
    if (bumps == 1) {
        FitResult fit = fit_basis(hs, lam1,
                                  {[](double) { return 1.0; }, [](double h) { return h; },
                                   [](double h) { return std::pow(h, 1.5); },
                                   [](double h) { return h * h; }});
        fit.model = "camel-expansion";
        rep.fits.push_back(fit);
        double slope = fit.params[1];
        double pred2 = ce.lambda_terms[1].lambda2;
        add_verdict(rep.verdicts, "sqrt_h_slope", slope, "-C1*kappa_max within 10%",
                    std::abs(slope - pred2) <= 0.10 * std::abs(pred2));
        // doublet route for lambda3: E2 - E1 = 2 lambda3(1) h^{3/2} (1 + O(h^{1/2})),
        // with correction coefficients large enough in this window that the raw
        // per-h ratios sit well below the limit; extrapolate the ratio to h = 0
        // through the two leading correction terms
        std::vector<double> ratio(hs.size());
        for (size_t i = 0; i < hs.size(); ++i)
            ratio[i] = gaps[i] / (2.0 * std::pow(hs[i], 1.5));
        FitResult l3fit = fit_basis(hs, ratio,
                                    {[](double) { return 1.0; },
                                     [](double h) { return std::sqrt(h); },
                                     [](double h) { return h; }});
        double l3 = l3fit.params[0];
        rep.extra["lambda3_fit_coefficient"] = fit.params[2];
        rep.extra["lambda3_gap_ratio_per_h"] = ratio;
        rep.extra["lambda3_doublet_gap"] = l3;
        double pred3 = ce.lambda_terms[1].lambda3;
        add_verdict(rep.verdicts, "lambda3_doublet_gap", l3, "lambda3(1) within 15%",
                    std::abs(l3 - pred3) <= 0.15 * pred3);
    } else {
        std::vector<double> hs_ok, gaps_ok, plat;
        for (size_t i = 0; i < hs.size(); ++i) {
            if (!sig[i]) continue;
            hs_ok.push_back(hs[i]);
            gaps_ok.push_back(gaps[i]);
            plat.push_back(-std::sqrt(hs[i]) * std::log(gaps[i]));
        }
        rep.extra["plateau_series"] = plat;
        rep.extra["noise_floor"] = noise_floor;
        if (hs_ok.size() < 4) {
            add_verdict(rep.verdicts, "plateau", 0.0, "insufficient range", false);
        } else {
            double plateau = (plat[plat.size() - 1] + plat[plat.size() - 2] +
                              plat[plat.size() - 3]) / 3.0;
            rep.extra["plateau"] = plateau;
            FitResult rate = fit_exp_rate(hs_ok, gaps_ok, 0.5);
            rep.fits.push_back(rate);
            add_verdict(rep.verdicts, "plateau", plateau, "[4.7, 5.9]",
                        plateau >= 4.7 && plateau <= 5.9);
            // super-polynomial decay: local power-law exponent grows toward small h
            std::vector<double> he(hs_ok.begin(), hs_ok.begin() + 4);
            std::vector<double> ge(gaps_ok.begin(), gaps_ok.begin() + 4);
            std::vector<double> hl(hs_ok.end() - 4, hs_ok.end());
            std::vector<double> gl(gaps_ok.end() - 4, gaps_ok.end());
            FitResult pe = fit_power(he, ge), pl = fit_power(hl, gl);
            rep.extra["power_exponent_large_h"] = pe.params[1];
            rep.extra["power_exponent_small_h"] = pl.params[1];
            add_verdict(rep.verdicts, "super_polynomial_decay", pl.params[1] - pe.params[1],
                        "exponent grows as the window shrinks toward small h",
                        pl.params[1] > pe.params[1] + 0.3);
        }
    }
    rep.write(config.output_dir);
    return rep;
}

// ---------------------------------------------------------------- agmon

StudyReport run_agmon(const SweepConfig& config) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();
    const std::string in_dir = config.input_dir.empty() ? config.output_dir : config.input_dir;
    fs::path dump = fs::path(in_dir) / "psi_1.bin";
    if (!fs::exists(dump) || !fs::exists(dump.string() + ".json"))
        throw std::runtime_error("run_agmon: eigenvector dump missing in " + in_dir);

    json hdr;
    {
        std::ifstream f(dump.string() + ".json");
        f >> hdr;
    }
    Grid2D g;
    g.s_min = hdr["s_min"];
    g.s_max = hdr["s_max"];
    g.t_min = hdr["t_min"];
    g.t_max = hdr["t_max"];
    g.nx = hdr["nx"];
    g.ny = hdr["ny"];
    g.bc_t_min = hdr["neumann_t_min"].get<bool>() ? Bc::neumann : Bc::dirichlet;
    const double h = hdr["h"];
    const int k = hdr["k"];
    std::vector<cplx> psi(g.size());
    {
        std::ifstream f(dump, std::ios::binary);
        for (auto& z : psi) {
            double re, im;
            f.read(reinterpret_cast<char*>(&re), sizeof(double));
            f.read(reinterpret_cast<char*>(&im), sizeof(double));
            z = cplx(re, im);
        }
        if (!f) throw std::runtime_error("run_agmon: truncated eigenvector dump");
    }

    WellProfile well = WellProfile::analyze(Polynomial(config.gamma_coeffs), g.s_min, g.s_max);
    std::vector<double> s_grid(g.nx);
    for (int i = 0; i < g.nx; ++i) s_grid[i] = g.s(i);
    AgmonWeight z = agmon_weight(k, well, s_grid, AgmonVariant::double_well, 0.5);

    auto rho = t_profile(psi, g);
    std::vector<double> w(g.nx);
    double wmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.nx; ++i) {
        w[i] = -h * std::log(std::max(rho[i], 1e-300));
        wmin = std::min(wmin, w[i]);
    }
    for (double& x : w) x -= wmin;

    // min of w/z on the window 0.2 <= |s -+ 1| <= 0.8, and monotonicity of w
    double min_ratio = std::numeric_limits<double>::infinity();
    double asym = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double s = s_grid[i];
        double d = std::min(std::abs(s - 1.0), std::abs(s + 1.0));
        if (d >= 0.2 && d <= 0.8 && z.z_samples[i] > 0.0)
            min_ratio = std::min(min_ratio, w[i] / z.z_samples[i]);
        asym = std::max(asym, std::abs(w[i] - w[g.nx - 1 - i]));
    }
    bool monotone = true;
    for (int i = 0; i + 1 < g.nx; ++i) {
        double s0 = s_grid[i], s1 = s_grid[i + 1];
        double d0 = std::min(std::abs(s0 - 1.0), std::abs(s0 + 1.0));
        double d1 = std::min(std::abs(s1 - 1.0), std::abs(s1 + 1.0));
        if (d0 >= 0.2 && d1 <= 0.8 && d1 > d0 && std::abs(s0) > 1.0 && std::abs(s1) > 1.0)
            if (w[i + 1] < w[i] - 1e-3) monotone = false;
    }

    rep.extra["h"] = h;
    rep.extra["s"] = s_grid;
    rep.extra["w"] = w;
    rep.extra["z"] = z.z_samples;
    rep.extra["epsilon0_floor"] = 0.2;
    rep.extra["epsilon0_note"] = "empirical floor, not a paper value";
    add_verdict(rep.verdicts, "decay_ratio_floor", min_ratio, ">= 0.2 on 0.2<=|s-+1|<=0.8",
                min_ratio >= 0.2);
    add_verdict(rep.verdicts, "profile_symmetry", asym, "w even in s", asym <= 5e-2);
    add_verdict(rep.verdicts, "monotone_growth_outside_wells", monotone ? 1.0 : 0.0,
                "w nondecreasing away from wells", monotone);
    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        std::ofstream f(fs::path(config.output_dir) / "agmon.csv");
        f << "s,z\n";
        f.precision(16);
        for (int i = 0; i < g.nx; ++i) f << s_grid[i] << ',' << z.z_samples[i] << '\n';
        std::ofstream fw(fs::path(config.output_dir) / "agmon_profile.csv");
        fw << "s,w,z\n";
        fw.precision(16);
        for (int i = 0; i < g.nx; ++i)
            fw << s_grid[i] << ',' << w[i] << ',' << z.z_samples[i] << '\n';
    }
    rep.write(config.output_dir);
    return rep;
}

// ------------------------------------------------- domain convergence

StudyReport run_domain_convergence(const SweepConfig& config) {
    config.validate();
    StudyReport rep;
    rep.config = config;
    rep.verdicts = json::array();
    const int k = config.k;
    const double h = config.h_list.front();
    WellProfile well =
        WellProfile::analyze(Polynomial(config.gamma_coeffs), -2.0, 2.0);
    BandCache cache;
    const BandMinimum& bm = cache.get(k);
    const double shift = bm.zeta0 * std::pow(well.gamma0, 1.0 / (k + 2));

    // nested boxes at fixed spacings ds = 0.0125, dt = 0.05 so each smaller
    // discrete operator is a principal submatrix of the next (exact monotonicity)
    struct Box { double a, b; };
    std::vector<Box> boxes = {{0.25, 2.0}, {0.45, 3.0}, {0.65, 4.0}, {0.9, 5.0}, {1.25, 6.0}};
    std::vector<double> lams;
    for (const auto& bx : boxes) {
        int nx = static_cast<int>(std::lround(2 * bx.a / 0.0125)) + 1;
        int ny_span = (k == 0) ? 1 : 2;
        int ny = static_cast<int>(std::lround(ny_span * bx.b / 0.05)) + 1;
        Grid2D g = montgomery_grid(k, bx.a, bx.b, nx, ny);
        HermitianSparse A = assemble_montgomery(k, well, h, g, shift);
        EigenResult er = sparse_smallest(A, config.n_eigs, 0.0, config.solver_tol, 300,
                                         config.seed);
        lams.push_back(er.eigenvalues[0]);
        for (int n = 0; n < config.n_eigs; ++n) {
            StudyRow r;
            r.study = "domain-convergence";
            r.k = k;
            r.h = h;
            r.n = n + 1;
            r.lambda = er.eigenvalues[n];
            r.residual = er.residuals[n];
            r.nx = g.nx;
            r.ny = g.ny;
            r.a = bx.a;
            r.b = bx.b;
            rep.rows.push_back(r);
        }
    }
    bool monotone = true;
    for (size_t i = 0; i + 1 < lams.size(); ++i)
        if (lams[i + 1] > lams[i] + 1e-12) monotone = false;
    int stable = -1;
    for (size_t i = 0; i + 1 < lams.size(); ++i)
        if (std::abs(lams[i + 1] - lams[i]) < 1e-8) { stable = static_cast<int>(i); break; }
    rep.extra["lambda_by_box"] = lams;
    rep.extra["first_stable_box"] = stable;
    add_verdict(rep.verdicts, "dirichlet_monotonicity", monotone ? 1.0 : 0.0,
                "lambda1 non-increasing in the box", monotone);
    add_verdict(rep.verdicts, "cauchy_below_1e-8", std::abs(lams.back() - lams[lams.size() - 2]),
                "last increment < 1e-8", std::abs(lams.back() - lams[lams.size() - 2]) < 1e-8);
    rep.write(config.output_dir);
    return rep;
}

StudyReport run_study(const SweepConfig& config) {
    const std::string& s = config.study_kind;
    if (s == "band-table") return run_band_table(config);
    if (s == "simple-well") return run_simple_well(config);
    if (s == "double-well") return run_double_well(config);
    if (s == "camel-1bump") return run_camel(config, 1);
    if (s == "camel-2bump") return run_camel(config, 2);
    if (s == "agmon") return run_agmon(config);
    if (s == "domain-convergence") return run_domain_convergence(config);
    throw std::invalid_argument("run_study: unknown study kind " + s);
}

} // namespace magspec
