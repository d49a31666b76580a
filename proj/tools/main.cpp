// qip command-line front end. Every subcommand reads/writes the JSON
// encodings from qip/json_io.hpp: results go to standard output (or --output),
// a one-line human summary goes to standard error. Identical arguments,
// input files and seed produce byte-identical output.
//
// Exit codes: 0 success, 2 bad arguments, 3 input validation failure,
// 4 I/O failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qip/qip.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

qip::Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoFailure("cannot read input file: " + path);
    return qip::Json::parse(buf.str()); // parse_error reported as validation
}

void emit(const qip::Json& doc, const std::string& output_path) {
    const std::string text = doc.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw IoFailure("cannot open output file: " + output_path);
    out << text;
    if (!out) throw IoFailure("cannot write output file: " + output_path);
}

// The bloch subcommand accepts either encoding: a pure state (has
// "amplitudes") or a density operator (has "data").
qip::DensityOperator read_qubit_density(const std::string& path) {
    const qip::Json j = read_json_file(path);
    if (j.is_object() && j.contains("amplitudes"))
        return qip::density_from_pure(qip::pure_state_from_json(j));
    return qip::density_from_json(j);
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--dims", "expected dA,dB (e.g. 2,2), got \"" + text + "\"");
    try {
        const unsigned long a = std::stoul(text.substr(0, comma));
        const unsigned long b = std::stoul(text.substr(comma + 1));
        if (a == 0 || b == 0) throw std::invalid_argument("zero");
        return {a, b};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--dims",
                                   "expected positive integers dA,dB, got \"" + text + "\"");
    }
}

int run_bloch(const std::string& input, const std::string& output) {
    const qip::DensityOperator rho = read_qubit_density(input);
    const qip::BlochVector n = qip::density_to_bloch(rho);
    const double mu = qip::purity(rho);

    qip::Json doc = qip::to_json(n);
    doc["purity"] = mu;
    doc["linear_entropy"] = 1.0 - mu;
    emit(doc, output);
    std::cerr << "Bloch vector (" << n.n[0] << ", " << n.n[1] << ", " << n.n[2]
              << "), purity " << mu << "\n";
    return 0;
}

int run_ptrace(const std::string& input, const std::string& keep,
               const std::string& output) {
    const qip::DensityOperator rho = qip::density_from_json(read_json_file(input));
    const qip::Subsystem subsystem = keep == "A" ? qip::Subsystem::A : qip::Subsystem::B;
    const qip::DensityOperator reduced = qip::partial_trace(rho, subsystem);
    emit(qip::to_json(reduced), output);
    std::cerr << "kept subsystem " << keep << ": " << reduced.dim() << "x" << reduced.dim()
              << " reduced state\n";
    return 0;
}

int run_schmidt(const std::string& input, const std::string& dims_text,
                const std::string& output) {
    const auto [d_a, d_b] = parse_dims(dims_text);
    const qip::PureState psi = qip::pure_state_from_json(read_json_file(input));
    const qip::SchmidtDecomposition sd = qip::schmidt(psi, d_a, d_b);

    qip::Json doc = qip::to_json(sd);
    doc["entangled"] = sd.schmidt_number >= 2;
    emit(doc, output);
    std::cerr << "schmidt number " << sd.schmidt_number << " over split " << d_a << "x" << d_b
              << (sd.schmidt_number >= 2 ? " (entangled)" : " (product)") << "\n";
    return 0;
}

int run_ppt(const std::string& input, double tol, const std::string& output) {
    const qip::DensityOperator rho = qip::density_from_json(read_json_file(input));
    const qip::SeparabilityVerdict v = qip::separability_decision(rho, tol);
    emit(qip::to_json(v), output);
    std::cerr << "verdict: " << qip::to_string(v.verdict)
              << " (min partial-transpose eigenvalue " << v.min_pt_eigenvalue << ")\n";
    return 0;
}

int run_chsh(const std::string& setting_path, std::uint64_t samples, std::uint64_t seed,
             const std::string& output) {
    const qip::ChshSetting setting =
        setting_path.empty() ? qip::optimal_chsh_setting()
                             : qip::chsh_setting_from_json(read_json_file(setting_path));
    const qip::DensityOperator rho =
        qip::density_from_pure(qip::singlet(), qip::BipartiteDims{2, 2});
    const qip::ChshReport report = qip::chsh_value(rho, setting);

    qip::Json doc = qip::to_json(report);
    doc["setting"] = qip::to_json(setting);

    if (samples > 0) {
        // Monte Carlo estimate of each correlation; one seed per pair.
        auto estimate = [&](const qip::MeasurementAxis& a, const qip::MeasurementAxis& b,
                            std::uint64_t s) {
            return qip::sample_outcomes(rho, a, b, samples, s).empirical_correlation;
        };
        const double e11 = estimate(setting.a1, setting.b1, seed);
        const double e12 = estimate(setting.a1, setting.b2, seed + 1);
        const double e21 = estimate(setting.a2, setting.b1, seed + 2);
        const double e22 = estimate(setting.a2, setting.b2, seed + 3);
        qip::Json empirical;
        empirical["n"] = samples;
        empirical["c11"] = e11;
        empirical["c12"] = e12;
        empirical["c21"] = e21;
        empirical["c22"] = e22;
        empirical["s_value"] = e22 - e11 - e12 - e21;
        doc["empirical"] = empirical;

        // correlation-vs-angle series for plotting C(a, b) = -a.b: Alice
        // fixed on z, Bob swept through the x-z plane in 5-degree steps.
        const double pi = std::acos(-1.0);
        const qip::MeasurementAxis a_z{{0.0, 0.0, 1.0}};
        qip::Json sweep = qip::Json::array();
        for (int step = 0; step <= 36; ++step) {
            const double degrees = 5.0 * step;
            const double gamma = degrees * pi / 180.0;
            const qip::MeasurementAxis b{{std::sin(gamma), 0.0, std::cos(gamma)}};
            qip::Json point;
            point["angle_degrees"] = degrees;
            point["exact_correlation"] = qip::correlation(rho, a_z, b);
            point["empirical_correlation"] =
                qip::sample_outcomes(rho, a_z, b, samples, seed + 10 + std::uint64_t(step))
                    .empirical_correlation;
            sweep.push_back(point);
        }
        doc["sweep"] = sweep;
    }

    emit(doc, output);
    std::cerr << "S = " << report.s_value << " (classical bound 2"
              << (report.violates_classical ? ", violated" : ", not violated") << ")\n";
    return 0;
}

int run_lhv(const std::string& output) {
    const auto strategies = qip::enumerate_strategies();
    const qip::LhvMax best = qip::lhv_max_chsh();

    qip::Json table = qip::Json::array();
    for (const qip::DeterministicStrategy& s : strategies) {
        qip::Json row;
        row["a1"] = s.a1_out;
        row["a2"] = s.a2_out;
        row["b1"] = s.b1_out;
        row["b2"] = s.b2_out;
        row["f"] = qip::chsh_f(s);
        table.push_back(row);
    }
    qip::Json doc;
    doc["strategies"] = table;
    doc["max_s"] = best.max_s;
    qip::Json argmax;
    argmax["a1"] = best.argmax.a1_out;
    argmax["a2"] = best.argmax.a2_out;
    argmax["b1"] = best.argmax.b1_out;
    argmax["b2"] = best.argmax.b2_out;
    doc["argmax"] = argmax;
    emit(doc, output);
    std::cerr << "max F over 16 deterministic strategies = " << best.max_s << "\n";
    return 0;
}

int run_teleport(double theta, double phi, std::uint64_t runs, std::uint64_t seed,
                 const std::string& output) {
    const qip::PureState input = qip::qubit_from_angles(theta, phi);

    qip::Json transcripts = qip::Json::array();
    std::array<std::uint64_t, 4> outcome_counts{};
    double min_fidelity = 1.0;
    for (std::uint64_t i = 0; i < runs; ++i) {
        const qip::TeleportTranscript t = qip::teleport(input, seed + i);
        transcripts.push_back(qip::to_json(t));
        ++outcome_counts[static_cast<std::size_t>(t.measured_bell)];
        min_fidelity = std::min(min_fidelity, t.fidelity);
    }

    qip::Json doc;
    doc["input"] = qip::to_json(input);
    doc["runs"] = runs;
    doc["transcripts"] = transcripts;
    qip::Json counts;
    counts["phi+"] = outcome_counts[0];
    counts["phi-"] = outcome_counts[1];
    counts["psi+"] = outcome_counts[2];
    counts["psi-"] = outcome_counts[3];
    doc["outcome_counts"] = counts;
    doc["min_fidelity"] = min_fidelity;
    emit(doc, output);
    std::cerr << runs << " run(s), min fidelity " << min_fidelity << "; outcomes phi+:"
              << outcome_counts[0] << " phi-:" << outcome_counts[1] << " psi+:"
              << outcome_counts[2] << " psi-:" << outcome_counts[3] << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-information toolkit: Bloch vectors, reduced states, Schmidt "
                 "decomposition, separability tests, CHSH analysis and teleportation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::string output;
    app.add_option("--seed", seed, "seed for all sampling subcommands")
        ->capture_default_str();
    app.add_option("--tol", tol, "tolerance for spectral decisions")
        ->capture_default_str();
    app.add_option("-o,--output", output, "write JSON here instead of standard output");

    std::string bloch_input;
    CLI::App* bloch = app.add_subcommand(
        "bloch", "Bloch vector and purity of a qubit state (pure or density JSON)");
    bloch->add_option("input", bloch_input, "state file")->required();

    std::string ptrace_input, ptrace_keep;
    CLI::App* ptrace = app.add_subcommand(
        "ptrace", "reduced density operator of a bipartite state");
    ptrace->add_option("input", ptrace_input, "density-operator file (with dims)")->required();
    ptrace->add_option("--keep", ptrace_keep, "subsystem to keep")
        ->required()
        ->check(CLI::IsMember({"A", "B"}));

    std::string schmidt_input, schmidt_dims;
    CLI::App* schmidt_cmd = app.add_subcommand(
        "schmidt", "Schmidt decomposition and entanglement test of a bipartite pure state");
    schmidt_cmd->add_option("input", schmidt_input, "pure-state file")->required();
    schmidt_cmd->add_option("--dims", schmidt_dims, "bipartition as dA,dB")->required();

    std::string ppt_input;
    CLI::App* ppt = app.add_subcommand(
        "ppt", "positive-partial-transpose separability verdict");
    ppt->add_option("input", ppt_input, "density-operator file (with dims)")->required();

    std::string chsh_setting;
    std::uint64_t chsh_samples = 0;
    CLI::App* chsh = app.add_subcommand(
        "chsh", "CHSH report for the singlet (optimal setting by default)");
    chsh->add_option("--setting", chsh_setting, "measurement-axes file");
    chsh->add_option("--samples", chsh_samples, "Monte Carlo sample count per correlation")
        ->check(CLI::PositiveNumber);

    CLI::App* lhv = app.add_subcommand(
        "lhv", "exhaustive local-hidden-variable strategy table and bound");

    double tele_theta = 0.7, tele_phi = 2.1;
    std::uint64_t tele_runs = 1;
    CLI::App* tele = app.add_subcommand("teleport", "teleport a qubit and report transcripts");
    tele->add_option("--theta", tele_theta, "polar half-angle of the input qubit")
        ->capture_default_str();
    tele->add_option("--phi", tele_phi, "relative phase of the input qubit")
        ->capture_default_str();
    tele->add_option("--runs", tele_runs, "number of protocol runs (seeds seed, seed+1, ...)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadArgs;
    }

    try {
        if (bloch->parsed()) return run_bloch(bloch_input, output);
        if (ptrace->parsed()) return run_ptrace(ptrace_input, ptrace_keep, output);
        if (schmidt_cmd->parsed()) return run_schmidt(schmidt_input, schmidt_dims, output);
        if (ppt->parsed()) return run_ppt(ppt_input, tol, output);
        if (chsh->parsed()) return run_chsh(chsh_setting, chsh_samples, seed, output);
        if (lhv->parsed()) return run_lhv(output);
        if (tele->parsed()) return run_teleport(tele_theta, tele_phi, tele_runs, seed, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadArgs;
    } catch (const IoFailure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qip::Json::parse_error& e) {
        std::cerr << "validation error: input is not valid JSON: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qip::Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
