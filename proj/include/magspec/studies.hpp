#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "magspec/fits.hpp"
#include "magspec/well.hpp"

namespace magspec {

// One experiment configuration; JSON-round-trippable so every report can be
// re-run bit for bit from its embedded config.
struct SweepConfig {
    std::string study_kind;            // band-table | simple-well | double-well |
                                       // camel-1bump | camel-2bump | agmon | domain-convergence
    int k = 1;
    std::vector<double> h_list;        // strictly decreasing, > 0
    double a = 0.0, b = 0.0;           // rectangle half-width in s / t extent
    int nx = 0, ny = 0;                // 0 = study default
    int n_eigs = 1;
    std::vector<double> gamma_coeffs;  // gamma(s), ascending powers
    double camel_c = 4.0;              // parabola coefficient (one-bump camel)
    double solver_tol = 1e-10;
    std::uint64_t seed = 12345;
    std::string output_dir;
    std::string input_dir;             // agmon: directory holding the eigenvector
                                       // dump (defaults to output_dir)
    bool emit_plots = false;
    bool dump_eigenvectors = false;

    static SweepConfig defaults(const std::string& study_kind, int k);
    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

struct StudyRow {
    std::string study;
    int k = 0;
    double h = 0.0;
    int n = 1;                 // eigenvalue index (1-based)
    double lambda = 0.0;
    double residual = 0.0;
    int nx = 0, ny = 0;
    double a = 0.0, b = 0.0;
    bool significant = true;   // false when below the noise floor
};

struct StudyReport {
    SweepConfig config;
    std::vector<StudyRow> rows;
    std::vector<FitResult> fits;
    nlohmann::json predictions;   // attached expansion data
    nlohmann::json verdicts;      // array of {name, measured, expected, pass}
    nlohmann::json extra;         // study-specific measurements

    bool all_passed() const;
    void write(const std::string& dir) const;   // report.json, rows.csv, *.gp
};

StudyReport run_band_table(const SweepConfig& config);
StudyReport run_simple_well(const SweepConfig& config);
StudyReport run_double_well(const SweepConfig& config);
StudyReport run_camel(const SweepConfig& config, int bumps);
StudyReport run_agmon(const SweepConfig& config);
StudyReport run_domain_convergence(const SweepConfig& config);

StudyReport run_study(const SweepConfig& config);

} // namespace magspec
