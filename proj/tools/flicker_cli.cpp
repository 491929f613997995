#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flicker/geometry.hpp"
#include "flicker/noise_floor.hpp"
#include "flicker/spectral.hpp"
#include "flicker/units.hpp"
#include "flicker/workbench.hpp"

using namespace flicker;

namespace {

constexpr int kInputError = 1;
constexpr int kVerificationFailure = 2;

struct Globals {
    std::string config;
    std::string output;
    std::uint64_t seed = 1;
    std::string mode = "longitudinal";
};

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Writes to --output when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Catalog require_catalog(const Globals& g) {
    if (g.config.empty()) throw InputError("--config is required");
    return load_catalog_file(g.config);
}

double length_cm(const std::string& text) {
    const auto q = parse_quantity(text);
    if (!(q.dim() == Dimension::of_length())) throw InputError("'" + text + "' is not a length");
    return q.in(units::cm());
}

// Sample geometry either from --sample in the config or from --length/--width/--thickness.
struct SampleArgs {
    std::string sample;
    std::string length, width, thickness;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sample", sample, "sample id from the config");
        cmd->add_option("--length", length, "sample length, e.g. '2.2 um'");
        cmd->add_option("--width", width, "sample width");
        cmd->add_option("--thickness", thickness, "sample thickness");
    }

    CatalogEntry resolve(const Globals& g) const {
        if (!sample.empty()) return require_catalog(g).entry(sample);
        if (length.empty() || width.empty() || thickness.empty())
            throw InputError("give --sample or all of --length, --width, --thickness");
        CatalogEntry e;
        e.id = "cli";
        e.geometry = SampleGeometry(length_cm(length), length_cm(width), length_cm(thickness));
        e.longitudinal_probes = end_face_probes(e.geometry);
        e.transverse_probes = e.longitudinal_probes;
        return e;
    }
};

IntegrationMethod parse_method(const std::string& s) {
    if (s == "closed") return IntegrationMethod::closed_form;
    if (s == "quadrature") return IntegrationMethod::quadrature;
    throw InputError("unknown method '" + s + "'");
}

GeometricFactor factor_for(const CatalogEntry& e, NoiseConfiguration mode, IntegrationMethod method) {
    return mode == NoiseConfiguration::longitudinal ? geometric_factor(e.geometry, e.longitudinal_probes, method)
                                                    : geometric_factor_transverse(e.geometry, e.transverse_probes, method);
}

const Material& material_for(const Catalog& cat, const std::string& name, const std::string& sample) {
    if (!name.empty()) return cat.material(name);
    if (!sample.empty()) return cat.entry(sample).material;
    if (cat.materials.size() == 1) return cat.materials.front();
    throw InputError("give --material or --sample");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum lower bound on 1/f noise: geometric factor, noise magnitude, spectra"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "catalog file (materials and samples)");
    app.add_option("--output", g.output, "write CSV to this path instead of stdout");
    app.add_option("--seed", g.seed, "random seed for synthesized signals");
    app.add_option("--mode", g.mode, "noise configuration")->check(CLI::IsMember({"longitudinal", "transverse"}));

    // factor
    auto* factor = app.add_subcommand("factor", "geometric factor g (or g_tr) of a sample");
    SampleArgs factor_sample;
    factor_sample.attach(factor);
    std::string method = "closed";
    factor->add_option("--method", method, "closed | quadrature")->check(CLI::IsMember({"closed", "quadrature"}));

    // kappa
    auto* kappa_cmd = app.add_subcommand("kappa", "noise magnitude kappa");
    SampleArgs kappa_sample;
    kappa_sample.attach(kappa_cmd);
    std::string kappa_g, kappa_material;
    kappa_cmd->add_option("--g", kappa_g, "geometric factor, e.g. '9630 1/cm' (skips the integral)");
    kappa_cmd->add_option("--material", kappa_material, "material name from the config");

    // delta
    auto* delta_cmd = app.add_subcommand("delta", "phonon exponent shift, f* and (f*)^delta");
    std::string delta_material;
    delta_cmd->add_option("--material", delta_material, "material name from the config");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "lower-bound spectral density S_F(f) over a log grid");
    SampleArgs spectrum_sample;
    spectrum_sample.attach(spectrum);
    std::string u0 = "1 V";
    double f_lo = 1.0, f_hi = 1e5;
    std::size_t points = 51;
    spectrum->add_option("--u0", u0, "bias voltage, e.g. '1 V'");
    spectrum->add_option("--f-min", f_lo, "lowest frequency, Hz");
    spectrum->add_option("--f-max", f_hi, "highest frequency, Hz");
    spectrum->add_option("--points", points, "grid points");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "ensemble power spectrum of recorded or synthesized signals");
    std::vector<std::string> inputs;
    double gamma = 1.0, dt = 1.0;
    std::size_t n = 4096, ensemble = 100;
    double e_lo = 0.0, e_hi = 0.0;
    std::size_t e_points = 24;
    estimate->add_option("--input", inputs, "signal CSV files (t,value); one per ensemble member");
    estimate->add_option("--gamma", gamma, "synthesized exponent when no --input is given");
    estimate->add_option("--samples", n, "samples per synthesized record (power of two)");
    estimate->add_option("--dt", dt, "synthesized sample step, s");
    estimate->add_option("--ensemble", ensemble, "synthesized records");
    estimate->add_option("--f-min", e_lo, "lowest frequency, Hz (default 2/t_m)");
    estimate->add_option("--f-max", e_hi, "highest frequency, Hz (default f_nyquist/5)");
    estimate->add_option("--points", e_points, "grid points");

    // verify-wk
    auto* verify = app.add_subcommand("verify-wk", "generalized Wiener-Khinchin verification suite");
    VerificationOptions vopt;
    verify->add_option("--tau0", vopt.tau0, "covariance time scale, s");
    verify->add_option("--a", vopt.a_cov, "log-law constant a");
    verify->add_option("--log-law-f", vopt.log_law_f, "log-law test frequency, Hz");
    verify->add_option("--log-law-tm", vopt.log_law_tm, "log-law measurement time, s");
    verify->add_option("--omega", vopt.identity_omega, "identity angular frequency, rad/s");

    // report
    auto* report = app.add_subcommand("report", "reproduce the comparison tables for a catalog");
    std::string g_source = "configured";
    report->add_option("--g-source", g_source, "configured | reference")
        ->check(CLI::IsMember({"configured", "reference"}));
    std::string report_method = "closed";
    report->add_option("--method", report_method, "closed | quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        const auto mode = parse_configuration(g.mode);

        if (*factor) {
            const auto e = factor_sample.resolve(g);
            const auto m = parse_method(method);
            const auto lon = geometric_factor(e.geometry, e.longitudinal_probes, m);
            const auto tr = geometric_factor_transverse(e.geometry, e.transverse_probes, m);
            Sink sink(g.output);
            sink.out() << "sample,g_per_cm,g_tr_per_cm,error_estimate\n"
                       << e.id << ',' << format_sig6(lon.per_cm()) << ',' << format_sig6(tr.per_cm()) << ','
                       << format_sig6(std::max(lon.error_estimate, tr.error_estimate)) << '\n';
            return 0;
        }

        if (*kappa_cmd) {
            const auto cat = require_catalog(g);
            const auto& mat = material_for(cat, kappa_material, kappa_sample.sample);
            GeometricFactor gf;
            if (!kappa_g.empty()) {
                gf = {parse_quantity(kappa_g), mode, 0.0};
                if (!(gf.value.dim() == units::per_cm().dim)) throw InputError("--g must be an inverse length");
            } else {
                gf = factor_for(kappa_sample.resolve(g), mode, IntegrationMethod::closed_form);
            }
            Sink sink(g.output);
            sink.out() << "mode,g_per_cm,kappa\n"
                       << to_string(mode) << ',' << format_sig6(gf.per_cm()) << ',' << format_sig6(kappa(gf, mat))
                       << '\n';
            return 0;
        }

        if (*delta_cmd) {
            const auto cat = require_catalog(g);
            const auto& mat = material_for(cat, delta_material, "");
            const double d = phonon_delta(mat);
            const double fstar = corner_frequency(mat).in(units::hertz());
            Sink sink(g.output);
            sink.out() << "material,delta,gamma,fstar_hz,magnification\n"
                       << mat.name << ',' << format_sig6(d) << ',' << format_sig6(1.0 + d) << ','
                       << format_sig6(fstar) << ',' << format_sig6(corner_magnification(fstar, d)) << '\n';
            return 0;
        }

        if (*spectrum) {
            const auto e = spectrum_sample.resolve(g);
            if (spectrum_sample.sample.empty()) throw InputError("spectrum needs --sample (material data)");
            const auto model = build_model(e.geometry,
                                           mode == NoiseConfiguration::longitudinal ? e.longitudinal_probes
                                                                                    : e.transverse_probes,
                                           e.material, mode);
            const auto grid = log_grid(f_lo, f_hi, points);
            const auto pts = evaluate_spectrum(model, parse_quantity(u0), grid);
            Sink sink(g.output);
            sink.out() << "f,S_F,above_fmax,excess_factor\n";
            for (const auto& p : pts)
                sink.out() << format_sig6(p.f_hz) << ',' << format_sig6(p.value) << ',' << (p.above_fmax ? 1 : 0)
                           << ',' << format_sig6(p.excess_factor) << '\n';
            for (const auto& a : model.annotations) std::cerr << "note: " << a << '\n';
            return 0;
        }

        if (*estimate) {
            std::vector<SignalRecord> records;
            if (!inputs.empty()) {
                for (const auto& path : inputs) {
                    std::ifstream in(path);
                    if (!in) throw InputError("cannot open '" + path + "'");
                    records.push_back(read_signal_csv(in));
                }
            } else {
                if (ensemble == 0) throw InputError("--ensemble must be positive");
                for (std::size_t k = 0; k < ensemble; ++k)
                    records.push_back(synthesize_power_law_noise(gamma, n, dt, g.seed + k));
            }
            const auto& first = records.front();
            const double lo = e_lo > 0 ? e_lo : 2.0 / first.measurement_time();
            const double hi = e_hi > 0 ? e_hi : 0.1 / first.dt();
            const auto series = power_spectrum_estimate(records, log_grid(lo, hi, e_points));
            Sink sink(g.output);
            write_spectrum_csv(sink.out(), series);
            std::cerr << "log-log slope " << format_sig6(log_log_slope(series)) << '\n';
            return 0;
        }

        if (*verify) {
            const auto rep = run_verification_suite(vopt);
            Sink sink(g.output);
            write_verification_csv(sink.out(), rep);
            return rep.all_passed() ? 0 : kVerificationFailure;
        }

        if (*report) {
            const auto cat = require_catalog(g);
            ReportOptions opt;
            opt.configuration = mode;
            opt.g_source = g_source == "reference" ? GSource::reference : GSource::configured;
            opt.method = parse_method(report_method);
            Sink sink(g.output);
            write_report_csv(sink.out(), reproduce_tables(cat, opt));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
