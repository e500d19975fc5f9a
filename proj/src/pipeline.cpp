#include "oscsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "oscsim/dense.hpp"
#include "oscsim/incidence.hpp"

namespace oscsim {

using json = nlohmann::json;

namespace {

Boundary parse_boundary(const std::string& s) {
    if (s == "open") return Boundary::Open;
    if (s == "closed") return Boundary::Closed;
    throw std::invalid_argument("boundary must be \"open\" or \"closed\"");
}

const char* boundary_name(Boundary b) { return b == Boundary::Closed ? "closed" : "open"; }

OscillatorSystem physical_system(const SimulationConfig& cfg) {
    OscillatorSystem s;
    s.masses = cfg.masses;
    s.springs = cfg.springs;
    s.boundary = cfg.boundary;
    s.validate();
    return s;
}

std::string gate_key(GateKind k, std::size_t controls) {
    return std::string(kind_name(k)) + "/" + std::to_string(controls);
}

/// Everything shared by the timesteps of one run.
struct Prepared {
    OscillatorSystem physical, scaled;
    ScaleFactors factors;
    HamiltonianEncoding hH;
    ShiftedEncoding hhat;
    Matrix dense_h;
    EncodedState psi0;
    Circuit prep;
    double u_h_elementary = 0.0;
    std::size_t u_h_hadamards = 0;
};

Prepared prepare(const SimulationConfig& cfg) {
    Prepared p;
    p.physical = physical_system(cfg);
    auto [scaled, factors] = rescale(cfg.masses, cfg.springs, cfg.boundary);
    p.scaled = std::move(scaled);
    p.factors = factors;
    p.hH = be_hamiltonian(be_system_B(p.scaled));
    p.hhat = be_shifted(p.hH);
    p.dense_h = hamiltonian_matrix(build_matrices(p.scaled).B);
    ClassicalState cs;
    cs.x = cfg.x0;
    for (double v : cfg.v0) cs.v.push_back(v / factors.time_factor());
    p.psi0 = encode_initial(p.scaled, cs);
    p.prep = prepare_state(p.psi0.amplitudes);
    const GateCount gc = count_gates(p.hH.be.circuit);
    p.u_h_elementary = gc.elementary;
    p.u_h_hadamards = gc.of_kind(GateKind::H);
    return p;
}

RoaaSchedule pick_schedule(const SimulationConfig& cfg) {
    // The prepared signal state is normalized, so the amplitude is 1/alpha_HS.
    if (cfg.roaa_mode == RoaaMode::Fixed) return fixed_schedule(1.0 / ALPHA_HS, cfg.roaa_iterations);
    return schedule(ALPHA_HS, 1.0);
}

StepResources step_resources(const Prepared& p, const EvolutionEncoding& ev, const RoaaSchedule& sched, double t) {
    StepResources r;
    r.t = t;
    r.plan = ev.plan;
    const auto& calls = ev.be.circuit.calls();
    auto it = calls.find(HAMILTONIAN_CALL);
    r.cu_h_calls = it == calls.end() ? 0 : it->second;
    const GateCount gc = count_gates(ev.be.circuit);
    r.gates = gc.total();
    r.elementary = gc.elementary;
    for (const auto& [key, n] : gc.histogram) r.histogram[gate_key(key.first, key.second)] = n;
    // Two Hadamards wrap each of the two QSVT sequences.
    const std::size_t h_total = gc.of_kind(GateKind::H);
    const std::size_t h_inner = r.cu_h_calls * p.u_h_hadamards + 4;
    r.table2_hadamards = h_total >= h_inner ? h_total - h_inner : 0;
    r.q_w = sched.iterations;
    r.q_aa = sched.queries();
    const double psi_norm = 1.0;
    r.theorem_gate_bound = (2.0 * std::ceil(ALPHA_HS / psi_norm) + 1.0) * (2.0 * ev.plan.k - 1.0) * p.u_h_elementary;
    return r;
}

/// Runs job(j) for j in [0, n) on up to `workers` threads. The first
/// exception (lowest j) is rethrown after all threads finish.
template <class Job>
void parallel_for(std::size_t n, unsigned workers, Job job) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t j = next++; j < n; j = next++) {
            try {
                job(j);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string stage_message(double t, const std::string& what) {
    std::ostringstream os;
    os << "t=" << t << ": " << what;
    return os.str();
}

json resources_json(const ResourceReport& r) {
    json j;
    j["qubits_total"] = r.qubits_total;
    j["ancillas"] = r.ancillas;
    j["signal_qubits"] = r.signal_qubits;
    j["a_H"] = r.a_H;
    j["alpha_B"] = r.alpha_B;
    j["alpha_H"] = r.alpha_H;
    j["alpha_HS"] = ALPHA_HS;
    j["u_h_elementary"] = r.u_h_elementary;
    j["time_factor"] = r.time_factor;
    j["total_theorem_gate_bound"] = r.total_theorem_gate_bound;
    j["steps"] = json::array();
    for (const auto& s : r.steps) {
        json e;
        e["t"] = s.t;
        e["tau"] = s.plan.tau;
        e["k"] = s.plan.k;
        e["d_sin"] = s.plan.d_sin;
        e["d_cos"] = s.plan.d_cos;
        e["cu_h_calls"] = s.cu_h_calls;
        e["table2_hadamards"] = s.table2_hadamards;
        e["gates"] = s.gates;
        e["elementary"] = s.elementary;
        e["Q_W"] = s.q_w;
        e["Q_AA"] = s.q_aa;
        e["theorem_gate_bound"] = s.theorem_gate_bound;
        e["wall_seconds"] = s.wall_seconds;
        e["histogram"] = s.histogram;
        j["steps"].push_back(std::move(e));
    }
    return j;
}

}  // namespace

// ------------------------------------------------------------------ config

void SimulationConfig::validate() const {
    const std::size_t N = masses.size();
    if (N < 2) throw std::invalid_argument("need at least two masses");
    if (springs.size() != N) throw std::invalid_argument("springs needs N entries (last is k_(1,N))");
    if (x0.size() != N || v0.size() != N) throw std::invalid_argument("x0 and v0 need N entries");
    if (!(t_f >= t_i)) throw std::invalid_argument("t_f must be >= t_i");
    if (!(t_i >= 0.0)) throw std::invalid_argument("t_i must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
    if (!(rk4_step > 0.0)) throw std::invalid_argument("rk4_step must be positive");
    if (roaa_mode == RoaaMode::Fixed && roaa_iterations < 0)
        throw std::invalid_argument("fixed amplification needs iterations >= 0");
    physical_system(*this);
}

std::vector<double> SimulationConfig::sample_times() const {
    const auto M = static_cast<std::size_t>(std::llround((t_f - t_i) / dt));
    std::vector<double> ts(M + 1);
    for (std::size_t j = 0; j <= M; ++j) ts[j] = t_i + static_cast<double>(j) * dt;
    return ts;
}

SimulationConfig parse_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    SimulationConfig c;
    const json& sys = j.at("system");
    c.masses = sys.at("masses").get<std::vector<double>>();
    c.springs = sys.at("springs").get<std::vector<double>>();
    c.boundary = parse_boundary(sys.value("boundary", std::string("open")));
    const json& init = j.at("initial");
    c.x0 = init.at("x").get<std::vector<double>>();
    c.v0 = init.value("v", std::vector<double>(c.masses.size(), 0.0));
    const json& time = j.at("time");
    c.t_i = time.value("t_i", 0.0);
    c.t_f = time.at("t_f").get<double>();
    c.dt = time.at("dt").get<double>();
    c.epsilon = j.value("epsilon", 0.01);
    if (j.contains("roaa")) {
        const json& r = j.at("roaa");
        const std::string mode = r.value("mode", std::string("auto"));
        if (mode == "auto") {
            c.roaa_mode = RoaaMode::Auto;
        } else if (mode == "fixed") {
            c.roaa_mode = RoaaMode::Fixed;
            c.roaa_iterations = r.at("iterations").get<int>();
        } else {
            throw std::invalid_argument("roaa.mode must be \"auto\" or \"fixed\"");
        }
    }
    c.rk4_step = j.value("rk4_step", 1e-4);
    c.output_dir = j.value("output_dir", std::string("out"));
    c.phase_cache_dir = j.value("phase_cache", std::string());
    c.workers = j.value("workers", 0u);
    if (j.contains("units")) c.units = j.at("units").get<std::map<std::string, std::string>>();
    c.validate();
    return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const SimulationConfig& c) {
    json j;
    j["system"] = {{"masses", c.masses}, {"springs", c.springs}, {"boundary", boundary_name(c.boundary)}};
    j["initial"] = {{"x", c.x0}, {"v", c.v0}};
    j["time"] = {{"t_i", c.t_i}, {"t_f", c.t_f}, {"dt", c.dt}};
    j["epsilon"] = c.epsilon;
    j["roaa"] = c.roaa_mode == RoaaMode::Auto ? json{{"mode", "auto"}}
                                              : json{{"mode", "fixed"}, {"iterations", c.roaa_iterations}};
    j["rk4_step"] = c.rk4_step;
    j["classical_solver"] = "rk4, fixed internal step rk4_step, no residual tolerance";
    j["output_dir"] = c.output_dir.string();
    j["phase_cache"] = c.phase_cache_dir.string();
    j["workers"] = c.workers;
    j["units"] = c.units;
    return j.dump(2);
}

std::string ResourceReport::to_json() const { return resources_json(*this).dump(2); }

// --------------------------------------------------------------- resources

namespace {

ResourceReport report_header(const Prepared& p) {
    ResourceReport r;
    r.a_H = p.hH.be.a;
    r.ancillas = r.a_H + 3;
    r.signal_qubits = p.hH.be.s;
    // The QSVT scratch wire is one of the a_H + 3 ancillas.
    r.qubits_total = r.ancillas + r.signal_qubits;
    r.alpha_H = p.hH.be.alpha;
    r.alpha_B = r.alpha_H / 2.0;
    r.u_h_elementary = p.u_h_elementary;
    r.time_factor = p.factors.time_factor();
    return r;
}

}  // namespace

ResourceReport report_resources(const SimulationConfig& cfg) {
    cfg.validate();
    const Prepared p = prepare(cfg);
    ResourceReport r = report_header(p);
    PhaseCache cache(cfg.phase_cache_dir);
    const RoaaSchedule sched = pick_schedule(cfg);
    const auto times = cfg.sample_times();
    r.steps.resize(times.size());
    parallel_for(times.size(), cfg.workers, [&](std::size_t j) {
        const auto start = std::chrono::steady_clock::now();
        const double s = times[j] * p.factors.time_factor();
        try {
            const EvolutionEncoding ev = be_exp(p.hhat, p.hH.be.alpha, s, cfg.epsilon, &cache);
            r.steps[j] = step_resources(p, ev, sched, times[j]);
        } catch (const std::exception& e) {
            throw std::runtime_error(stage_message(times[j], e.what()));
        }
        r.steps[j].wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    for (const auto& s : r.steps) r.total_theorem_gate_bound += s.theorem_gate_bound;
    return r;
}

// --------------------------------------------------------------------- run

RunResult run(const SimulationConfig& cfg, bool write_outputs) {
    cfg.validate();
    const Prepared p = prepare(cfg);
    const std::size_t N = cfg.masses.size();
    const std::size_t P = p.scaled.padded_size();
    const double tf = p.factors.time_factor();
    const RoaaSchedule sched = pick_schedule(cfg);
    const auto times = cfg.sample_times();
    PhaseCache cache(cfg.phase_cache_dir);

    RunResult out;
    out.resources = report_header(p);
    out.resources.steps.resize(times.size());
    out.steps.resize(times.size());

    parallel_for(times.size(), cfg.workers, [&](std::size_t j) {
        const auto start = std::chrono::steady_clock::now();
        const double t = times[j];
        const double s = t * tf;
        StepRecord& rec = out.steps[j];
        rec.t = t;
        try {
            const EvolutionEncoding ev = be_exp(p.hhat, p.hH.be.alpha, s, cfg.epsilon, &cache);
            const AmplifiedOutcome amp = amplify_and_measure(ev.be, p.prep, sched);
            rec.pre_probability = amp.pre_probability;
            rec.success_probability = amp.success_probability;
            rec.predicted_success = sched.predicted_success;

            const Vector exact = expm_hermitian(p.dense_h, s) * p.psi0.raw();
            const Vector exact_unit = exact / exact.norm();
            for (std::size_t i = 0; i < 2 * P; ++i) {
                const Complex q = amp.post_state[i];
                rec.oracle_deviation = std::max(rec.oracle_deviation, std::abs(q - exact_unit(static_cast<Eigen::Index>(i))));
                if (i % P >= N) rec.padded_amplitude = std::max(rec.padded_amplitude, std::abs(q));
            }
            rec.v_quantum.resize(N);
            for (std::size_t i = 0; i < N; ++i)
                rec.v_quantum[i] = amp.post_state[i].real() * p.psi0.norm / std::sqrt(p.scaled.masses[i]) * tf;
            out.resources.steps[j] = step_resources(p, ev, sched, t);
        } catch (const std::exception& e) {
            throw std::runtime_error(stage_message(t, e.what()));
        }
        out.resources.steps[j].wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    for (const auto& s : out.resources.steps) out.resources.total_theorem_gate_bound += s.theorem_gate_bound;

    Trajectory& tr = out.trajectory;
    tr.times = times;
    ClassicalState cs0;
    cs0.x = cfg.x0;
    cs0.v = cfg.v0;
    cs0.t = cfg.t_i;
    for (const auto& c : rk4_solve(p.physical, cs0, times, cfg.rk4_step)) {
        tr.x_classical.push_back(c.x);
        tr.v_classical.push_back(c.v);
    }
    for (const auto& rec : out.steps) tr.v_quantum.push_back(rec.v_quantum);
    tr.x_quantum = recover_displacement(tr.v_quantum, cfg.x0, cfg.dt);
    tr.rel_err_v = relative_error(tr.v_quantum, tr.v_classical);
    tr.rel_err_x = relative_error(tr.x_quantum, tr.x_classical);

    const double component_tol = 5.0 * cfg.epsilon / std::sqrt(static_cast<double>(N));
    for (const auto& rec : out.steps) {
        if (rec.oracle_deviation > component_tol)
            out.failures.push_back(stage_message(rec.t, "post-state deviates from the dense oracle by " +
                                                            std::to_string(rec.oracle_deviation)));
        if (rec.padded_amplitude > 1e-8)
            out.failures.push_back(stage_message(rec.t, "padded amplitude " + std::to_string(rec.padded_amplitude)));
    }

    if (write_outputs) {
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream tcsv(cfg.output_dir / "trajectory.csv");
        write_trajectory_csv(tr, tcsv);
        std::ofstream ecsv(cfg.output_dir / "errors.csv");
        write_errors_csv(out, ecsv);
        std::ofstream rj(cfg.output_dir / "resources.json");
        rj << out.resources.to_json() << "\n";
        std::ofstream cj(cfg.output_dir / "config-echo.json");
        cj << config_to_json(cfg) << "\n";
    }
    return out;
}

void write_errors_csv(const RunResult& r, std::ostream& os) {
    os << "t,rel_err_x,rel_err_v,pre_probability,success_probability,predicted_success,oracle_deviation,"
          "padded_amplitude\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < r.steps.size(); ++j) {
        const StepRecord& s = r.steps[j];
        os << s.t << ',' << r.trajectory.rel_err_x[j] << ',' << r.trajectory.rel_err_v[j] << ','
           << s.pre_probability << ',' << s.success_probability << ',' << s.predicted_success << ','
           << s.oracle_deviation << ',' << s.padded_amplitude << '\n';
    }
}

// ------------------------------------------------------------------ verify

namespace {

Matrix real_to_complex(const RealMatrix& m) { return m.cast<Complex>(); }

Matrix padded_block(std::size_t N, std::size_t P, bool shift, bool prime) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
    for (std::size_t j = 0; j < N; ++j) {
        if (prime && j == N - 1) continue;
        const std::size_t row = shift ? (j + 1) % N : j;
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = 1.0;
    }
    return m;
}

OscillatorSystem sweep_system(std::size_t N, Boundary b, bool uniform) {
    OscillatorSystem s;
    s.boundary = b;
    for (std::size_t j = 0; j < N; ++j) {
        s.masses.push_back(uniform ? 1.0 : 1.0 + 0.37 * static_cast<double>(j));
        s.springs.push_back(uniform ? 1.0 : 0.3 + 0.7 / static_cast<double>(j + 1));
    }
    if (b == Boundary::Open) s.springs.back() = 0.0;
    return s;
}

}  // namespace

std::vector<VerifyLine> verify_encodings(double tol) {
    std::vector<VerifyLine> out;
    auto check = [&](std::string name, const BlockEncoding& be, const Matrix& target) {
        VerifyLine l;
        l.name = std::move(name);
        l.deviation = verify(be, target);
        l.pass = l.deviation <= tol;
        out.push_back(std::move(l));
    };
    for (std::size_t N : {2, 3, 4, 5, 6, 7, 8, 12}) {
        const bool pow2 = (N & (N - 1)) == 0;
        const std::string tag = "N=" + std::to_string(N);
        const std::size_t P = OscillatorSystem{std::vector<double>(N, 1.0), {}, Boundary::Open}.padded_size();
        if (pow2) {
            std::size_t n = 0;
            while ((std::size_t{1} << n) < N) ++n;
            check("L-shift " + tag, make_encoding(l_shift_circuit(n), 1.0, 0), shift_matrix(N));
        }
        std::vector<double> d(P);
        for (std::size_t j = 0; j < P; ++j) d[j] = std::cos(0.3 + 0.9 * static_cast<double>(j));
        Matrix dm = Matrix::Zero(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
        for (std::size_t j = 0; j < P; ++j) dm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = d[j];
        check("diagonal " + tag, be_diagonal(d), dm);
        if (!pow2) {
            check("I~ " + tag, be_padded(PaddedKind::Identity, N), padded_block(N, P, false, false));
            check("I'~ " + tag, be_padded(PaddedKind::IdentityPrime, N), padded_block(N, P, false, true));
            check("L~ " + tag, be_padded(PaddedKind::Shift, N), padded_block(N, P, true, false));
            check("L'~ " + tag, be_padded(PaddedKind::ShiftPrime, N), padded_block(N, P, true, true));
        }
        for (Boundary b : {Boundary::Open, Boundary::Closed}) {
            const std::string btag = tag + (b == Boundary::Closed ? " closed" : " open");
            const OscillatorSystem uni = sweep_system(N, b, true);
            const Matrix phi = real_to_complex(build_matrices(uni).Phi);
            if (pow2) {
                check((b == Boundary::Closed ? "Bc " : "Bo ") + btag,
                      b == Boundary::Closed ? be_uniform_closed(N) : be_uniform_open(N), phi);
            } else {
                check("Phi~ " + btag, be_padded_incidence(N, b), phi);
            }
            const OscillatorSystem gen = sweep_system(N, b, false);
            const Matrix Bd = real_to_complex(build_matrices(gen).B);
            const BlockEncoding beB = be_general_B(gen);
            check("general B " + btag, beB, Bd);
            const HamiltonianEncoding hH = be_hamiltonian(beB);
            const Matrix Hd = hamiltonian_matrix(build_matrices(gen).B);
            check("U_H " + btag, hH.be, Hd);
            const Eigen::Index dim = Hd.rows();
            const Matrix shifted = 0.5 * (Hd / hH.be.alpha + Matrix::Identity(dim, dim));
            check("H^ " + btag, be_shifted(hH).be, shifted);
        }
    }
    return out;
}

}  // namespace oscsim
