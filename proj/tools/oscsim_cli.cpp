// Command-line front end: run, report, verify.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oscsim/pipeline.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::optional<double> epsilon;
    std::optional<unsigned> workers;
    bool report_only = false;
    bool seedless = false;
};

oscsim::SimulationConfig load(const Overrides& o) {
    oscsim::SimulationConfig cfg = oscsim::load_config(o.config);
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.epsilon) cfg.epsilon = *o.epsilon;
    if (o.workers) cfg.workers = *o.workers;
    cfg.validate();
    return cfg;
}

int do_report(const Overrides& o) {
    const oscsim::ResourceReport r = oscsim::report_resources(load(o));
    std::cout << r.to_json() << "\n";
    for (const auto& s : r.steps) {
        if (s.cu_h_calls != static_cast<std::size_t>(2 * s.plan.k - 1)) {
            std::cerr << "t=" << s.t << ": CU_H calls " << s.cu_h_calls << " != 2k-1\n";
            return 1;
        }
    }
    return 0;
}

int do_run(const Overrides& o) {
    const oscsim::SimulationConfig cfg = load(o);
    const oscsim::RunResult r = oscsim::run(cfg);
    std::printf("%8s %12s %12s %10s %10s\n", "t", "log10 err x", "log10 err v", "p_pre", "p_post");
    for (std::size_t j = 0; j < r.steps.size(); ++j)
        std::printf("%8.3f %12.4f %12.4f %10.6f %10.6f\n", r.steps[j].t, r.trajectory.rel_err_x[j],
                    r.trajectory.rel_err_v[j], r.steps[j].pre_probability, r.steps[j].success_probability);
    std::printf("outputs written to %s\n", cfg.output_dir.string().c_str());
    for (const auto& f : r.failures) std::fprintf(stderr, "stage assertion failed: %s\n", f.c_str());
    return r.ok() ? 0 : 1;
}

int do_verify() {
    int failed = 0;
    for (const auto& l : oscsim::verify_encodings()) {
        std::printf("%-4s %-28s %.3e\n", l.pass ? "ok" : "FAIL", l.name.c_str(), l.deviation);
        failed += l.pass ? 0 : 1;
    }
    std::printf("%d failing encodings\n", failed);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-encoded simulation of coupled classical oscillators"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config,--config", o.config, "JSON configuration file");
        sub->add_option("--out", o.out, "Output directory override");
        sub->add_option("--epsilon", o.epsilon, "Target precision override")->check(CLI::Range(1e-12, 0.4999));
        sub->add_option("--workers", o.workers, "Concurrent timesteps (0: all cores)");
        sub->add_flag("--seedless", o.seedless, "Accepted for compatibility; the pipeline uses no randomness");
    };
    CLI::App* run = app.add_subcommand("run", "Simulate every sample time and write CSV/JSON outputs");
    add_common(run);
    run->add_flag("--report-only", o.report_only, "Only build circuits and print the resource report");
    CLI::App* report = app.add_subcommand("report", "Resource report without simulation");
    add_common(report);
    app.add_subcommand("verify", "Check every encoding family against dense targets");

    CLI11_PARSE(app, argc, argv);
    try {
        if (app.got_subcommand("verify")) return do_verify();
        if (o.config.empty()) {
            std::cerr << "a config file is required\n";
            return 2;
        }
        if (app.got_subcommand("report") || o.report_only) return do_report(o);
        return do_run(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
