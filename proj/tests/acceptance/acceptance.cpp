// Acceptance gate: one PASS/FAIL line per criterion on stdout, per-row detail on stderr.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "flicker/geometry.hpp"
#include "flicker/noise_floor.hpp"
#include "flicker/spectral.hpp"
#include "flicker/workbench.hpp"

using namespace flicker;

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances.
constexpr double kTolKappaTable = 0.05;
constexpr double kTolGeometric = 0.20;
constexpr double kTolMethods = 1e-6;
constexpr double kTolRatioExact = 1e-10;
constexpr double kTolRatioTable = 0.03;
constexpr double kTolDelta = 0.05;
constexpr double kTolMagnification = 0.01;
constexpr double kTolYbcoG = 0.25;
constexpr double kTolYbcoKappa = 0.20;
constexpr double kTolIdentity = 0.01;
constexpr double kTolLogLaw = 0.02;
constexpr double kTolLorentzian = 0.01;
constexpr double kTolSinusoid = 0.02;
constexpr double kTolSlope = 0.1;
constexpr double kTolFmax = 0.02;
constexpr double kTolExcess = 1e-14;

std::string data(const char* name) { return std::string(FLICKER_DATA_DIR) + "/" + name; }

double rel(double measured, double expected) { return std::abs(measured / expected - 1.0); }

bool check(bool& all, const std::string& what, double measured, double expected, double err, double tol) {
    const bool ok = err <= tol;
    std::fprintf(stderr, "  %-46s measured %-12.6g expected %-12.6g err %-10.3g tol %-8.3g %s\n", what.c_str(), measured,
                 expected, err, tol, ok ? "ok" : "FAIL");
    all = all && ok;
    return ok;
}

struct Row {
    const char* id;
    double g;
    double g_tr;
    double kappa;
};

// Published comparison columns for the five InGaAs samples.
constexpr Row kTable[] = {
    {"V1", 9630, 1990, 3.5e-10},  {"V1.5", 6420, 1330, 2.3e-10}, {"V2", 5140, 1280, 1.9e-10},
    {"V5", 1260, 80, 4.6e-11},    {"V80", 80, 6, 1.9e-12},
};

bool criterion1() {
    const auto cat = load_catalog_file(data("ingaas.cfg"));
    bool all = true;
    for (const auto& row : kTable) {
        const auto& e = cat.entry(row.id);
        const GeometricFactor g{Quantity(row.g, units::per_cm()), NoiseConfiguration::longitudinal, 0.0};
        const double k = kappa(g, e.material);
        check(all, std::string(row.id) + " kappa_th (table g)", k, row.kappa, rel(k, row.kappa), kTolKappaTable);
    }
    return all;
}

bool criterion2() {
    const auto cat = load_catalog_file(data("ingaas.cfg"));
    bool all = true;
    for (const auto& row : kTable) {
        const auto& e = cat.entry(row.id);
        const double closed = geometric_factor(e.geometry, e.longitudinal_probes).per_cm();
        const double quad =
            geometric_factor(e.geometry, e.longitudinal_probes, IntegrationMethod::quadrature).per_cm();
        check(all, std::string(row.id) + " g computed vs table", closed, row.g, rel(closed, row.g), kTolGeometric);
        check(all, std::string(row.id) + " g closed form vs quadrature", quad, closed, rel(quad, closed), kTolMethods);
    }
    return all;
}

bool criterion3() {
    const auto cat = load_catalog_file(data("ingaas.cfg"));
    bool all = true;
    for (const auto& row : kTable) {
        const auto& e = cat.entry(row.id);
        const double wl = e.geometry.width() / e.geometry.length();
        const double g = geometric_factor(e.geometry, e.longitudinal_probes).per_cm();
        const double gtr = geometric_factor_transverse(e.geometry, e.longitudinal_probes).per_cm();
        check(all, std::string(row.id) + " g_tr/g vs (w/l)^2", gtr / g, wl * wl, rel(gtr / g, wl * wl), kTolRatioExact);
        const double table_ratio = row.g_tr / row.g;
        check(all, std::string(row.id) + " table g_tr/g vs (w/l)^2", table_ratio, wl * wl, rel(table_ratio, wl * wl),
              kTolRatioTable);
    }
    return all;
}

bool criterion4() {
    const auto cat = load_catalog_file(data("gaas_piezo.cfg"));
    const auto& m = cat.material("GaAs-piezo");
    bool all = true;
    const double d = phonon_delta(m);
    check(all, "delta(h14, u, rho0)", d, 0.14, rel(d, 0.14), kTolDelta);
    const double mag = corner_magnification(5e12, 0.05);
    check(all, "(f*)^delta, delta=0.05, f*=5e12 Hz", mag, 4.3, rel(mag, 4.3), kTolMagnification);
    const double fstar = corner_frequency(m).in(units::hertz());
    check(all, "f* = u/d", fstar, 5e12, rel(fstar, 5e12), 1e-12);
    return all;
}

bool criterion5() {
    const auto cat = load_catalog_file(data("ybco.cfg"));
    const auto& e = cat.entry("film");
    bool all = true;
    const auto g = geometric_factor(e.geometry, e.longitudinal_probes);
    check(all, "YBCO film g", g.per_cm(), 6.0, rel(g.per_cm(), 6.0), kTolYbcoG);
    const double k = kappa(g, e.material);
    check(all, "YBCO film kappa_th", k, 2.3e-15, rel(k, 2.3e-15), kTolYbcoKappa);
    return all;
}

bool criterion6() {
    bool all = true;
    const auto id = wk_identity_check(1.0, 1e4);
    check(all, "identity difference, omega*t_m=1e4", id.difference, id.target, rel(id.difference, id.target),
          kTolIdentity);

    const double tau0 = 1.0;
    const auto log_law = CovarianceModel::log_law(tau0, 1.0);
    for (double ft : {1e-3, 2e-3, 5e-3, 1e-2}) {
        const double f = ft / tau0;
        const double tm = std::max(1e6, 10.0 * sigma_min_measurement_time(f));
        const double s = sigma_spectrum(log_law, f, tm);
        check(all, "log-law sigma, f*tau0=" + format_sig6(ft), s, -1.0 / f, rel(s, -1.0 / f), kTolLogLaw);
    }

    const auto expo = CovarianceModel::exponential(tau0);
    for (double f : {0.01, 0.05, 0.3}) {
        const double w = 2 * pi * f;
        const double expected = 2 * tau0 / (1 + w * w * tau0 * tau0);
        const double s = sigma_spectrum(expo, f, 1e4);
        check(all, "exponential sigma, f=" + format_sig6(f), s, expected, rel(s, expected), kTolLorentzian);
    }
    return all;
}

bool criterion7() {
    bool all = true;

    // Non-negativity over random signals and frequencies.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double min_value = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(256);
        for (auto& v : x) v = u(rng) * std::exp(4 * u(rng));
        const std::vector<SignalRecord> ens{SignalRecord(std::move(x), 0.01)};
        const auto grid = log_grid(0.05 + 0.04 * (u(rng) + 1), 49.0, 24);
        for (const auto& p : power_spectrum_estimate(ens, grid).points) min_value = std::min(min_value, p.value);
    }
    check(all, "min S(f) over 200 random records", min_value, 0.0, min_value >= 0.0 ? 0.0 : -min_value, 0.0);

    // Sinusoid peak.
    const double f0 = 10.0, amp = 1.7, dt = 1e-3;
    for (double wt : {100.0, 137.0, 500.0, 2000.0}) {
        const double tm_target = wt / (2 * pi * f0);
        const auto n = std::size_t(std::llround(tm_target / dt)) + 1;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2 * pi * f0 * dt * double(i));
        const std::vector<SignalRecord> ens{SignalRecord(std::move(x), dt)};
        const double tm = ens[0].measurement_time();
        const std::vector<double> grid{f0};
        const double s = power_spectrum_estimate(ens, grid).points[0].value;
        const double expected = amp * amp * tm / 4;
        check(all, "sinusoid peak, omega*t_m=" + format_sig6(wt), s, expected, rel(s, expected), kTolSinusoid);
    }

    // Slope recovery from synthesized ensembles.
    const auto grid = log_grid(5e-3, 0.1, 12);
    for (double gamma : {0.8, 1.0, 1.2}) {
        std::vector<SignalRecord> ens;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            ens.push_back(synthesize_power_law_noise(gamma, 4096, 1.0, 1000 + seed));
        const double slope = log_log_slope(power_spectrum_estimate(ens, grid));
        check(all, "slope, gamma=" + format_sig6(gamma) + ", 100 seeds", slope, -gamma, std::abs(slope + gamma),
              kTolSlope);
    }
    return all;
}

bool criterion8() {
    bool all = true;
    const double dos = convert(1e22, units::per_ev_cm3(), units::per_erg_cm3());
    const double volume = 1e-12;
    const ValidityBound b(dos, volume);
    check(all, "fmax(D=1e22/(eV cm3), V=1e-12 cm3)", b.fmax_hz(), 2.4e4, rel(b.fmax_hz(), 2.4e4), kTolFmax);
    for (double mult : {1.5, 10.0, 1e3}) {
        const double f = mult * b.fmax_hz();
        const double x = constants::hbar * 2 * pi * f * dos * volume;
        const double got = b.excess_factor(f);
        check(all, "excess factor at " + format_sig6(mult) + " fmax", got, x * x, rel(got, x * x), kTolExcess);
    }
    return all;
}

struct Criterion {
    const char* title;
    std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {"published kappa_th from published g, two species, 5%", criterion1},
        {"geometric factor from dimensions, 20%; closed form vs quadrature 1e-6", criterion2},
        {"transverse ratio (w/l)^2 exact 1e-10; table ratios 3%", criterion3},
        {"phonon exponent 0.14 (5%); (f*)^0.05 = 4.3", criterion4},
        {"YBCO film g = 6 (25%), kappa_th = 2.3e-15 (20%)", criterion5},
        {"log identity 1%; log-law sigma 2% on [1e-3, 1e-2]; Lorentzian 1%", criterion6},
        {"estimator: S >= 0; sinusoid 2%; slope -gamma +- 0.1", criterion7},
        {"fmax = 2.4e4 Hz (2%); excess factor (hbar omega D V)^2", criterion8},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && int(i) + 1 != only) continue;
        std::fprintf(stderr, "criterion %zu: %s\n", i + 1, criteria[i].title);
        bool ok = false;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  error: %s\n", e.what());
        }
        std::printf("criterion %zu: %s  %s\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].title);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
