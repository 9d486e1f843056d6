// Command-line front end: parses curve definitions, dispatches to the
// library, and emits plot-ready CSV/JSON. All numeric output goes through
// the fixed-format helpers, so identical invocations produce identical
// bytes.

#include <cmath>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "galmann/curve.hpp"
#include "galmann/errors.hpp"
#include "galmann/expr.hpp"
#include "galmann/frenet.hpp"
#include "galmann/galilean.hpp"
#include "galmann/mannheim.hpp"
#include "galmann/numeric_format.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_numerical_error = 3;

int default_samples() {
    if (const char* env = std::getenv("GALMANN_SAMPLES")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 8)
            throw galmann::InputError("GALMANN_SAMPLES must be an integer >= 8");
        return static_cast<int>(v);
    }
    return 1001;
}

void require_finite(double v, const std::string& name) {
    if (!std::isfinite(v)) throw galmann::InputError(name + " must be a finite real");
}

// Curve argument format: three semicolon-separated expressions in t,
// e.g. "t;t^2/2;t^3/6".
galmann::CurveSpec parse_curve_arg(const std::string& arg, double t0, double t1) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t semi = arg.find(';', pos);
        parts.push_back(arg.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (parts.size() != 3)
        throw galmann::InputError("--curve expects \"fx;fy;fz\" (three expressions in t), got " +
                                  std::to_string(parts.size()) + " part(s)");
    require_finite(t0, "--t0");
    require_finite(t1, "--t1");
    if (!(t0 < t1)) throw galmann::InputError("--t0 must be less than --t1");

    galmann::CurveSpec spec;
    spec.fx = galmann::parse_expression(parts[0], "t");
    spec.fy = galmann::parse_expression(parts[1], "t");
    spec.fz = galmann::parse_expression(parts[2], "t");
    spec.t0 = t0;
    spec.t1 = t1;
    return spec;
}

galmann::SampledCurve sample_curve(galmann::CurveSpec& spec, int n_samples) {
    const galmann::AdmissibilityReport adm = galmann::check_admissible(spec, n_samples);
    if (!adm.ok) throw galmann::AdmissibilityError(adm.violation_t);
    spec.orientation = adm.sign;
    return galmann::reparametrize_to_arclength(spec, n_samples);
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw galmann::InputError("cannot open output file '" + out_path + "'");
    file << payload;
    if (!file) throw galmann::NumericalError("write to '" + out_path + "' failed");
}

constexpr int samples_unset = std::numeric_limits<int>::min();

struct CurveOptions {
    std::string curve;
    double t0 = 0.0, t1 = 1.0;
    int samples = samples_unset;  // unset: env override or 1001
    std::string out;
};

void add_curve_options(CLI::App* cmd, CurveOptions& opt, bool with_out = true) {
    cmd->add_option("--curve", opt.curve, "curve as \"fx;fy;fz\", expressions in t")->required();
    cmd->add_option("--t0", opt.t0, "domain start")->required();
    cmd->add_option("--t1", opt.t1, "domain end")->required();
    cmd->add_option("--samples", opt.samples, "number of arc-length samples (default 1001)");
    if (with_out) cmd->add_option("--out", opt.out, "output path (default stdout)");
}

int resolve_samples(int flag_value, int minimum) {
    const int n = flag_value == samples_unset ? default_samples() : flag_value;
    if (n < minimum)
        throw galmann::InputError("--samples must be at least " + std::to_string(minimum));
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet frames, curvatures, and Mannheim partner analysis of admissible curves in "
                 "the Galilean 3-space"};
    app.require_subcommand(1);

    CurveOptions frenet_opt;
    CLI::App* cmd_frenet = app.add_subcommand("frenet", "emit the Frenet apparatus as CSV");
    add_curve_options(cmd_frenet, frenet_opt);

    CurveOptions mate_opt;
    double mate_lambda = 0.0;
    CLI::App* cmd_mate = app.add_subcommand("mate", "emit base and Mannheim mate as CSV");
    add_curve_options(cmd_mate, mate_opt);
    cmd_mate->add_option("--lambda", mate_lambda, "normal offset of the mate")->required();

    CurveOptions detect_opt;
    CLI::App* cmd_detect =
        app.add_subcommand("detect", "decide whether the curve is a Mannheim curve");
    add_curve_options(cmd_detect, detect_opt, false);

    std::string synth_kappa, synth_tau, synth_out;
    double synth_s0 = 0.0, synth_s1 = 1.0;
    int synth_samples = samples_unset;
    CLI::App* cmd_synth =
        app.add_subcommand("synth", "integrate natural equations kappa(s), tau(s) into a curve");
    cmd_synth->add_option("--kappa", synth_kappa, "curvature expression in s")->required();
    cmd_synth->add_option("--tau", synth_tau, "torsion expression in s")->required();
    cmd_synth->add_option("--s0", synth_s0, "arc-length start")->required();
    cmd_synth->add_option("--s1", synth_s1, "arc-length end")->required();
    cmd_synth->add_option("--samples", synth_samples, "number of samples (default 1001)");
    cmd_synth->add_option("--out", synth_out, "output path (default stdout)");

    CurveOptions audit_opt;
    double audit_lambda = 0.0;
    CLI::App* cmd_audit = app.add_subcommand("audit", "audit the partner-curve claims as JSON");
    add_curve_options(cmd_audit, audit_opt);
    cmd_audit->add_option("--lambda", audit_lambda, "normal offset of the mate")->required();

    CurveOptions iso_opt;
    std::uint64_t iso_seed = 0;
    CLI::App* cmd_iso =
        app.add_subcommand("isometry", "curvature/torsion invariance residuals under a random isometry");
    add_curve_options(cmd_iso, iso_opt, false);
    cmd_iso->add_option("--seed", iso_seed, "isometry seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return exit_input_error;
    }

    try {
        if (*cmd_frenet) {
            const int n = resolve_samples(frenet_opt.samples, 8);
            galmann::CurveSpec spec = parse_curve_arg(frenet_opt.curve, frenet_opt.t0, frenet_opt.t1);
            const galmann::SampledCurve curve = sample_curve(spec, n);
            emit(galmann::frenet_csv(curve, galmann::frenet_apparatus(curve)), frenet_opt.out);
        } else if (*cmd_mate) {
            const int n = resolve_samples(mate_opt.samples, 8);
            require_finite(mate_lambda, "--lambda");
            galmann::CurveSpec spec = parse_curve_arg(mate_opt.curve, mate_opt.t0, mate_opt.t1);
            const galmann::SampledCurve curve = sample_curve(spec, n);
            const galmann::MatePair pair =
                galmann::mannheim_mate(curve, galmann::frenet_apparatus(curve), mate_lambda);
            emit(galmann::mate_csv(pair), mate_opt.out);
        } else if (*cmd_detect) {
            const int n = resolve_samples(detect_opt.samples, 8);
            galmann::CurveSpec spec = parse_curve_arg(detect_opt.curve, detect_opt.t0, detect_opt.t1);
            const galmann::SampledCurve curve = sample_curve(spec, n);
            const auto detection = galmann::detect_partner(curve, galmann::frenet_apparatus(curve));
            std::cout << (detection ? galmann::detect_json(*detection) : "not_mannheim\n");
        } else if (*cmd_synth) {
            const int n = resolve_samples(synth_samples, 16);
            require_finite(synth_s0, "--s0");
            require_finite(synth_s1, "--s1");
            const galmann::Expression kappa = galmann::parse_expression(synth_kappa, "s");
            const galmann::Expression tau = galmann::parse_expression(synth_tau, "s");
            const galmann::SampledCurve curve =
                galmann::synthesize_from_natural(kappa, tau, synth_s0, synth_s1, n);
            emit(galmann::frenet_csv(curve, galmann::frenet_apparatus(curve)), synth_out);
        } else if (*cmd_audit) {
            const int n = resolve_samples(audit_opt.samples, 8);
            require_finite(audit_lambda, "--lambda");
            galmann::CurveSpec spec = parse_curve_arg(audit_opt.curve, audit_opt.t0, audit_opt.t1);
            const galmann::SampledCurve curve = sample_curve(spec, n);
            const galmann::MatePair pair =
                galmann::mannheim_mate(curve, galmann::frenet_apparatus(curve), audit_lambda);
            emit(galmann::audit_json(pair, galmann::audit_claims(pair)), audit_opt.out);
        } else if (*cmd_iso) {
            const int n = resolve_samples(iso_opt.samples, 8);
            galmann::CurveSpec spec = parse_curve_arg(iso_opt.curve, iso_opt.t0, iso_opt.t1);
            const galmann::SampledCurve curve = sample_curve(spec, n);
            const galmann::FrenetData fd = galmann::frenet_apparatus(curve);

            galmann::CurveSpec moved = galmann::transform(spec, galmann::random_isometry(iso_seed));
            const galmann::SampledCurve moved_curve = sample_curve(moved, n);
            const galmann::FrenetData moved_fd = galmann::frenet_apparatus(moved_curve);

            double dkappa = 0.0, dtau = 0.0;
            for (std::size_t i = 0; i < fd.size(); ++i) {
                dkappa = std::max(dkappa, std::abs(moved_fd.kappa[i] - fd.kappa[i]));
                dtau = std::max(dtau, std::abs(moved_fd.tau[i] - fd.tau[i]));
            }
            std::cout << "{\"seed\": " << iso_seed
                      << ", \"max_abs_dkappa\": " << galmann::format_sci6(dkappa)
                      << ", \"max_abs_dtau\": " << galmann::format_sci6(dtau) << "}\n";
        }
    } catch (const galmann::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const galmann::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical_error;
    }
    return exit_ok;
}
