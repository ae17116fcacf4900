// Copyright 2026 The gaussprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "experiments.hpp"
#include "gaussprep/prep1d.hpp"
#include "gaussprep/prepnd.hpp"
#include "gaussprep/resample.hpp"
#include "gaussprep/statevec.hpp"
#include "gaussprep/theta.hpp"
#include "io.hpp"
#include "reports.hpp"

namespace gaussprep::harness {

namespace {

// Thrown after the verification table has been printed.
struct VerificationFailed {
    std::string message;
};

std::filesystem::path resolve(const std::string &file) {
    const std::filesystem::path p(file);
    return p.is_absolute() ? p : default_output_dir() / p;
}

std::string state_csv(const StateVector &state, const std::vector<std::string> &metadata) {
    std::ostringstream s;
    write_state_csv(s, state, metadata);
    return s.str();
}

std::string error_json(const std::string &kind, const std::string &message, int code) {
    nlohmann::json j{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    return j.dump();
}

// ---- theta -------------------------------------------------------------

struct ThetaArgs {
    double sigma = 0.0;
    double mu = 0.0;
    double eps = kThetaDefaultEps;
};

void run_theta(const ThetaArgs &args, std::ostream &out) {
    const GaussianParams p{args.sigma, args.mu};
    p.validate();
    if (!(args.eps > 0.0) || args.eps >= 1.0) throw ValidationError("eps must be in (0, 1)");
    const auto v = theta(p, args.eps);
    out << "value " << format_double(v.value) << '\n'
        << "log_value " << format_double(v.log_value) << '\n'
        << "branch " << to_string(v.branch) << '\n'
        << "terms " << v.terms << '\n';
}

// ---- prep1d ------------------------------------------------------------

struct Prep1dArgs {
    double sigma = 0.0;
    double mu = 0.0;
    unsigned n_qubits = 0;
    std::optional<unsigned> angle_bits;
    std::string rounding = "nearest";
    double delta = 1e-3;
    std::string dump_state, dump_trace, report;
};

void run_prep1d(const Prep1dArgs &args, std::ostream &out) {
    PrepConfig cfg;
    cfg.params = {args.sigma, args.mu};
    cfg.n_qubits = args.n_qubits;
    if (args.angle_bits) {
        cfg.mode = AngleMode::Quantized;
        cfg.angle_bits = *args.angle_bits;
        cfg.rounding = args.rounding == "truncate" ? AngleRounding::Truncate : AngleRounding::Nearest;
    }
    cfg.validate();

    Params params{{"sigma", format_double(args.sigma)},
                  {"mu", format_double(args.mu)},
                  {"n_qubits", std::to_string(args.n_qubits)},
                  {"mode", to_string(cfg.mode)}};
    if (args.angle_bits) {
        params["angle_bits"] = std::to_string(*args.angle_bits);
        params["rounding"] = args.rounding;
    }
    const auto metadata = csv_metadata("prep1d", params);

    const auto prepared = args.angle_bits ? prepare_xi_quantized(cfg) : prepare_xi(cfg);
    const auto xi = periodized_oracle(cfg.params, cfg.n_qubits);
    const auto oracle = StateVector::normalized(RegisterLayout::single(cfg.register_name, cfg.n_qubits),
                                                std::vector<Amplitude>(xi.begin(), xi.end()));
    const double fid = fidelity(prepared.state, oracle);
    const double dist = distance(prepared.state, oracle);

    out << "n_qubits " << cfg.n_qubits << '\n'
        << "mode " << to_string(cfg.mode) << '\n'
        << "fidelity_vs_oracle " << format_double(fid) << '\n'
        << "distance_vs_oracle " << format_double(dist) << '\n';
    for (const auto &w : prepared.warnings) out << "warning " << w << '\n';

    if (!args.dump_state.empty()) write_text(resolve(args.dump_state), state_csv(prepared.state, metadata));
    if (!args.dump_trace.empty()) {
        std::ostringstream t;
        write_trace(t, prepared.trace, metadata);
        write_text(resolve(args.dump_trace), t.str());
    }
    if (!args.report.empty()) {
        nlohmann::json j;
        j["meta"] = json_metadata("prep1d", params);
        j["fidelity_vs_oracle"] = fid;
        j["distance_vs_oracle"] = dist;
        j["level_angle_error"] = prepared.level_angle_error;
        j["gate_counts"] = to_json(gate_count_report(prepared.trace, args.delta));
        j["warnings"] = prepared.warnings;
        write_text(resolve(args.report), j.dump(2) + "\n");
    }
}

// ---- prepnd ------------------------------------------------------------

struct PrepNdArgs {
    std::string matrix;
    unsigned k_bits = 0;
    std::string mean;
    std::string rounding = "floor";
    std::string dump_state, report;
};

void run_prepnd(const PrepNdArgs &args, std::ostream &out) {
    std::ifstream in(args.matrix);
    if (!in) throw ValidationError("cannot read matrix file '" + args.matrix + "'");
    const auto form = QuadraticForm::read(in);
    if (args.k_bits < 1 || args.k_bits > 30) throw ValidationError("k-bits must be in [1, 30]");
    std::optional<std::vector<std::int64_t>> mean;
    if (!args.mean.empty()) {
        mean = parse_int_list(args.mean);
        if (mean->size() != form.dim()) throw ValidationError("mean must have one entry per dimension");
    }
    const auto rounding = args.rounding == "nearest" ? ShearRounding::Nearest : ShearRounding::Floor;

    Params params{{"matrix", args.matrix}, {"k_bits", std::to_string(args.k_bits)}, {"rounding", args.rounding}};
    if (!args.mean.empty()) params["mean"] = args.mean;

    const auto prepared = prepare_general(form, args.k_bits, mean, rounding);
    const auto report = nd_report(form, args.k_bits, mean, prepared);

    out << "dim " << form.dim() << '\n'
        << "residual " << format_double(report.residual) << '\n'
        << "det_a " << format_double(report.det_a) << '\n'
        << "det_d " << format_double(report.det_d) << '\n'
        << "tail_mass " << format_double(report.tail_mass) << '\n';
    if (report.fidelity) out << "fidelity_vs_oracle " << format_double(*report.fidelity) << '\n';
    for (const auto &w : prepared.warnings) out << "warning " << w << '\n';

    if (!args.dump_state.empty()) {
        write_text(resolve(args.dump_state), state_csv(prepared.state, csv_metadata("prepnd", params)));
    }
    if (!args.report.empty()) {
        auto j = to_json(form, prepared, report);
        j["meta"] = json_metadata("prepnd", params);
        write_text(resolve(args.report), j.dump(2) + "\n");
    }
}

// ---- resample ----------------------------------------------------------

struct ResampleArgs {
    double a = 0.0;
    std::string psi;
    unsigned n_qubits = 0;
    std::string window;
    std::string dump_b_state, band_csv, report;
};

void run_resample(const ResampleArgs &args, std::ostream &out) {
    if (args.n_qubits < 1 || args.n_qubits > 30) throw ValidationError("n-qubits must be in [1, 30]");
    check_amplitude_budget(2 * args.n_qubits);
    const auto spec = parse_window(args.window);
    const auto psi = parse_psi(args.psi);
    const ScaleMap map(args.a);

    std::optional<ResampleInput> input;
    if (psi.gaussian) {
        PrepConfig cfg;
        cfg.params = *psi.gaussian;
        cfg.n_qubits = args.n_qubits;
        cfg.register_name = "A";
        cfg.validate();
        input.emplace(ResampleInput{prepare_xi(cfg).state, psi.gaussian});
    } else {
        std::ifstream in(psi.file);
        if (!in) throw ValidationError("cannot read psi file '" + psi.file.string() + "'");
        auto amps = read_state_csv_amplitudes(in);
        if (amps.size() != (std::uint64_t{1} << args.n_qubits)) {
            throw ValidationError("psi file holds " + std::to_string(amps.size()) + " amplitudes, expected 2^" +
                                  std::to_string(args.n_qubits));
        }
        input.emplace(ResampleInput{StateVector::normalized(RegisterLayout::single("A", args.n_qubits), std::move(amps)),
                                    std::nullopt});
    }

    const Params params{{"a", format_double(args.a)},
                        {"psi", args.psi},
                        {"n_qubits", std::to_string(args.n_qubits)},
                        {"window", describe(spec)}};
    const auto write_report = [&](const ResampleReport &r) {
        if (args.report.empty()) return;
        auto j = to_json(r);
        j["meta"] = json_metadata("resample", params);
        write_text(resolve(args.report), j.dump(2) + "\n");
    };

    std::optional<ResampleResult> result;
    try {
        result.emplace(resample(*input, map, spec, !args.band_csv.empty()));
    } catch (const ResampleError &e) {
        write_report(e.report());
        throw;
    }
    const auto &r = result->report;
    out << "a " << format_double(r.a) << '\n'
        << "window " << r.window << '\n'
        << "uncompute_window " << r.uncompute_window << '\n'
        << "prob_A_zero " << format_double(r.prob_A_zero) << '\n'
        << "fidelity_B_vs_target " << format_double(r.fidelity_B_vs_target) << '\n'
        << "strip_agreement " << format_double(r.strip_agreement) << '\n';
    for (const auto &w : r.warnings) out << "warning " << w << '\n';

    const auto metadata = csv_metadata("resample", params);
    if (!args.dump_b_state.empty()) write_text(resolve(args.dump_b_state), state_csv(result->b_state, metadata));
    if (!args.band_csv.empty()) {
        std::ostringstream s;
        write_band_csv(s, band_diagnostic(*result->band_state, map), metadata);
        write_text(resolve(args.band_csv), s.str());
    }
    write_report(r);
}

// ---- sweep -------------------------------------------------------------

struct SweepArgs {
    ExperimentConfig config;
    std::optional<unsigned> n_qubits;
    std::string k = "8:16";
    std::string psi_sigmas, half_widths, scales;
    std::string out;
};

void run_sweep(SweepArgs args, std::ostream &out) {
    auto &c = args.config;
    c.n_qubits = args.n_qubits.value_or(c.id == "angle-bits" ? 8u : 10u);
    c.angle_bits = parse_uint_range(args.k);
    if (!args.psi_sigmas.empty()) c.psi_sigmas = parse_double_list(args.psi_sigmas);
    if (!args.half_widths.empty()) c.half_widths = parse_int_list(args.half_widths);
    if (!args.scales.empty()) c.scales = parse_double_list(args.scales);
    c.out_dir = args.out.empty() ? default_output_dir() : resolve(args.out);
    const auto path = run_experiment(c);
    out << "wrote " << path.string() << '\n';
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
    std::string out;
    std::string only;
};

void run_verify(const VerifyArgs &args, std::ostream &out) {
    std::vector<int> ids;
    if (!args.only.empty()) {
        for (const auto id : parse_int_list(args.only)) {
            if (id < 1 || id > kCriterionCount) {
                throw ValidationError("--only: criteria are numbered 1.." + std::to_string(kCriterionCount));
            }
            ids.push_back(static_cast<int>(id));
        }
    }
    const auto results = run_acceptance(ids);
    const auto dir = args.out.empty() ? default_output_dir() / "verify" : resolve(args.out);
    write_artifacts(results, dir);
    print_table(out, results);
    out << "artifacts " << dir.string() << '\n';
    if (!all_passed(results)) {
        std::string failed;
        for (const auto &r : results) {
            if (!r.pass) failed += (failed.empty() ? "" : ",") + std::to_string(r.id);
        }
        throw VerificationFailed{"acceptance criteria failed: " + failed};
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gaussian state preparation and resampling on a dense state-vector simulator", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + tool_version());
    app.require_subcommand(1);

    unsigned threads = 0;
    std::uint64_t cap = kDefaultMaxAmplitudes;
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
    app.add_option("--max-amplitudes", cap, "state-vector size cap")->check(CLI::PositiveNumber);

    ThetaArgs theta_args;
    auto *theta_cmd = app.add_subcommand("theta", "evaluate f(sigma, mu)");
    theta_cmd->add_option("--sigma", theta_args.sigma)->required();
    theta_cmd->add_option("--mu", theta_args.mu)->required();
    theta_cmd->add_option("--eps", theta_args.eps, "truncation tolerance")->capture_default_str();

    Prep1dArgs p1;
    auto *prep1d_cmd = app.add_subcommand("prep1d", "prepare a periodized 1D Gaussian");
    prep1d_cmd->add_option("--sigma", p1.sigma)->required();
    prep1d_cmd->add_option("--mu", p1.mu)->required();
    prep1d_cmd->add_option("--n-qubits", p1.n_qubits)->required();
    prep1d_cmd->add_option("--angle-bits", p1.angle_bits, "quantize rotation angles to k bits");
    prep1d_cmd->add_option("--rounding", p1.rounding)->check(CLI::IsMember({"nearest", "truncate"}))->capture_default_str();
    prep1d_cmd->add_option("--delta", p1.delta, "target distance for the gate-count report")->capture_default_str();
    prep1d_cmd->add_option("--dump-state", p1.dump_state);
    prep1d_cmd->add_option("--dump-trace", p1.dump_trace);
    prep1d_cmd->add_option("--report", p1.report);

    PrepNdArgs pn;
    auto *prepnd_cmd = app.add_subcommand("prepnd", "prepare a multidimensional Gaussian by shearing");
    prepnd_cmd->add_option("--matrix", pn.matrix, "file: S, then S rows of S floats")->required();
    prepnd_cmd->add_option("--k-bits", pn.k_bits)->required();
    prepnd_cmd->add_option("--mean", pn.mean, "integer offsets v1,..,vS");
    prepnd_cmd->add_option("--rounding", pn.rounding)->check(CLI::IsMember({"floor", "nearest"}))->capture_default_str();
    prepnd_cmd->add_option("--dump-state", pn.dump_state);
    prepnd_cmd->add_option("--report", pn.report);

    ResampleArgs rs;
    auto *resample_cmd = app.add_subcommand("resample", "move a wavefunction onto a stretched grid");
    resample_cmd->add_option("--a", rs.a)->required();
    resample_cmd->add_option("--psi", rs.psi, "gaussian:sigma,mu or a state CSV")->required();
    resample_cmd->add_option("--n-qubits", rs.n_qubits)->required();
    resample_cmd->add_option("--window", rs.window, "uniform:n or gaussian:sigma[,mu]")->required();
    resample_cmd->add_option("--dump-b-state", rs.dump_b_state);
    resample_cmd->add_option("--band-csv", rs.band_csv);
    resample_cmd->add_option("--report", rs.report);

    SweepArgs sw;
    auto *sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and write a CSV");
    sweep_cmd->add_option("--experiment", sw.config.id)
        ->required()
        ->check(CLI::IsMember({"angle-bits", "window-size", "sigma-ladder", "nd-ladder"}));
    sweep_cmd->add_option("--n-qubits", sw.n_qubits);
    sweep_cmd->add_option("--k", sw.k, "angle bits, a or a:b")->capture_default_str();
    sweep_cmd->add_option("--sigma", sw.config.params.sigma)->capture_default_str();
    sweep_cmd->add_option("--mu", sw.config.params.mu)->capture_default_str();
    sweep_cmd->add_option("--a", sw.config.a)->capture_default_str();
    sweep_cmd->add_option("--psi-sigma", sw.config.psi_sigma)->capture_default_str();
    sweep_cmd->add_option("--psi-sigmas", sw.psi_sigmas);
    sweep_cmd->add_option("--psi-mu", sw.config.psi_mu)->capture_default_str();
    sweep_cmd->add_option("--half-width", sw.config.half_width)->capture_default_str();
    sweep_cmd->add_option("--half-widths", sw.half_widths);
    sweep_cmd->add_option("--scales", sw.scales);
    sweep_cmd->add_option("--k-bits", sw.config.k_bits)->capture_default_str();
    sweep_cmd->add_option("--out", sw.out, "output directory");

    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_option("--out", va.out, "artifact directory");
    verify_cmd->add_option("--only", va.only, "comma-separated criterion numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << app.help() << '\n' << error_json("usage", e.what(), kExitUsage) << '\n';
        return kExitUsage;
    }

    try {
        set_worker_threads(threads);
        set_max_amplitudes(cap);
        if (*theta_cmd) run_theta(theta_args, out);
        else if (*prep1d_cmd) run_prep1d(p1, out);
        else if (*prepnd_cmd) run_prepnd(pn, out);
        else if (*resample_cmd) run_resample(rs, out);
        else if (*sweep_cmd) run_sweep(sw, out);
        else if (*verify_cmd) run_verify(va, out);
    } catch (const VerificationFailed &e) {
        err << error_json("verification", e.message, kExitVerification) << '\n';
        return kExitVerification;
    } catch (const MemoryCapError &e) {
        err << error_json("memory_cap", e.what(), kExitValidation) << '\n';
        return kExitValidation;
    } catch (const ResampleError &e) {
        err << error_json("resample", e.what(), kExitValidation) << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        err << error_json("validation", e.what(), kExitValidation) << '\n';
        return kExitValidation;
    }
    out.flush();
    return kExitOk;
}

}  // namespace gaussprep::harness
