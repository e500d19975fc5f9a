#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "oscsim/amplification.hpp"
#include "oscsim/oscillator.hpp"

namespace oscsim {

enum class RoaaMode { Auto, Fixed };

/// Physical (unrescaled) inputs of one experiment.
struct SimulationConfig {
    std::vector<double> masses;
    std::vector<double> springs;  // N entries, last is k_(1,N)
    Boundary boundary = Boundary::Open;
    std::vector<double> x0, v0;
    double t_i = 0.0, t_f = 0.0, dt = 1.0;
    double epsilon = 0.01;
    RoaaMode roaa_mode = RoaaMode::Auto;
    int roaa_iterations = 0;
    double rk4_step = 1e-4;
    std::filesystem::path output_dir;
    std::filesystem::path phase_cache_dir;
    unsigned workers = 0;  // 0: hardware concurrency
    std::map<std::string, std::string> units;

    void validate() const;
    std::vector<double> sample_times() const;
};

SimulationConfig parse_config(const std::string& json_text);
SimulationConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const SimulationConfig& cfg);

struct StepResources {
    double t = 0.0;
    DegreePlan plan;
    std::size_t cu_h_calls = 0;
    std::size_t table2_hadamards = 0;  // H gates outside U_H calls and QSVT wraps
    std::size_t gates = 0;
    double elementary = 0.0;
    int q_w = 0;
    int q_aa = 0;
    double theorem_gate_bound = 0.0;  // (2 ceil(alpha_HS/|psi0|) + 1)(2k - 1) G_H
    double wall_seconds = 0.0;
    std::map<std::string, std::size_t> histogram;  // "KIND/controls" -> count
};

struct ResourceReport {
    std::size_t qubits_total = 0;
    std::size_t ancillas = 0;  // a_H + 3
    std::size_t signal_qubits = 0;
    std::size_t a_H = 0;
    double alpha_B = 0.0, alpha_H = 0.0;
    double u_h_elementary = 0.0;
    double time_factor = 1.0;
    double total_theorem_gate_bound = 0.0;
    std::vector<StepResources> steps;

    std::string to_json() const;
};

struct StepRecord {
    double t = 0.0;
    std::vector<double> v_quantum;
    double pre_probability = 0.0;
    double success_probability = 0.0;
    double predicted_success = 0.0;
    double oracle_deviation = 0.0;   // max |post - exact| over components
    double padded_amplitude = 0.0;   // max |post| over padded components
};

struct RunResult {
    Trajectory trajectory;
    ResourceReport resources;
    std::vector<StepRecord> steps;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

RunResult run(const SimulationConfig& cfg, bool write_outputs = true);
ResourceReport report_resources(const SimulationConfig& cfg);

void write_errors_csv(const RunResult& r, std::ostream& os);

struct VerifyLine {
    std::string name;
    double deviation = 0.0;
    bool pass = false;
};

/// Exactness sweep over every encoding family for N in {2..8, 12}.
std::vector<VerifyLine> verify_encodings(double tol = 1e-9);

}  // namespace oscsim
