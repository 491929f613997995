#include "flicker/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace flicker {

namespace {
constexpr double kPi = std::numbers::pi;
using Gauss = boost::math::quadrature::gauss<double, 20>;
}  // namespace

SignalRecord::SignalRecord(std::vector<double> samples, double dt) : samples_(std::move(samples)), dt_(dt) {
    if (samples_.size() < 2) throw std::invalid_argument("signal record needs at least two samples");
    if (!std::isfinite(dt_) || dt_ <= 0.0) throw std::invalid_argument("signal record dt must be positive");
    for (double v : samples_)
        if (!std::isfinite(v)) throw std::invalid_argument("signal record contains non-finite samples");
}

// ---------------------------------------------------------------- estimator

FourierPair finite_time_fourier(const SignalRecord& rec, double f_hz) {
    if (!(f_hz >= 0.0)) throw std::invalid_argument("finite_time_fourier: frequency must be >= 0");
    const double omega = 2.0 * kPi * f_hz;
    const auto x = rec.samples();
    const double dt = rec.dt();
    double us = 0.0;
    double uc = 0.0;
    const std::size_t last = x.size() - 1;
    for (std::size_t n = 0; n <= last; ++n) {
        const double w = (n == 0 || n == last) ? 0.5 : 1.0;
        const double phase = omega * dt * double(n);
        us += w * x[n] * std::sin(phase);
        uc += w * x[n] * std::cos(phase);
    }
    return {us * dt, uc * dt, omega};
}

SpectrumSeries power_spectrum_estimate(std::span<const SignalRecord> ensemble, std::span<const double> f_grid_hz) {
    if (ensemble.empty()) throw std::invalid_argument("power_spectrum_estimate: empty ensemble");
    const auto n = ensemble.front().size();
    const double dt = ensemble.front().dt();
    for (const auto& rec : ensemble)
        if (rec.size() != n || rec.dt() != dt)
            throw std::invalid_argument("power_spectrum_estimate: records differ in length or sample step");
    for (std::size_t i = 1; i < f_grid_hz.size(); ++i)
        if (!(f_grid_hz[i] > f_grid_hz[i - 1]))
            throw std::invalid_argument("power_spectrum_estimate: frequency grid must be strictly increasing");

    const double tm = ensemble.front().measurement_time();
    const double count = double(ensemble.size());
    SpectrumSeries out;
    out.points.reserve(f_grid_hz.size());
    for (double f : f_grid_hz) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto& rec : ensemble) {
            const auto p = finite_time_fourier(rec, f);
            const double s = (p.us * p.us + p.uc * p.uc) / tm;
            sum += s;
            sum_sq += s * s;
        }
        const double mean = sum / count;
        double se = 0.0;
        if (ensemble.size() > 1) {
            const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
            se = std::sqrt(var / count);
        }
        out.points.push_back({f, mean, se});
    }
    return out;
}

// ------------------------------------------------------- covariance models

CovarianceModel::CovarianceModel(Kind kind, double tau0, double a, double amplitude,
                                 std::function<double(double)> fn)
    : kind_(kind), tau0_(tau0), a_(a), amplitude_(amplitude), fn_(std::move(fn)) {}

CovarianceModel CovarianceModel::log_law(double tau0, double a, double amplitude) {
    if (!(tau0 > 0.0) || !(a > 0.0)) throw std::invalid_argument("log-law covariance needs tau0 > 0 and a > 0");
    return {Kind::log_law, tau0, a, amplitude, {}};
}

CovarianceModel CovarianceModel::exponential(double tau0, double amplitude) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("exponential covariance needs tau0 > 0");
    return {Kind::exponential, tau0, 0.0, amplitude, {}};
}

CovarianceModel CovarianceModel::constant(double value) { return {Kind::constant, 1.0, 0.0, value, {}}; }

CovarianceModel CovarianceModel::user(std::function<double(double)> fn, double scale) {
    if (!fn) throw std::invalid_argument("user covariance needs a callable");
    if (!(scale > 0.0)) throw std::invalid_argument("user covariance needs a positive time scale");
    return {Kind::user_function, scale, 0.0, 1.0, std::move(fn)};
}

double CovarianceModel::operator()(double tau) const {
    switch (kind_) {
        case Kind::log_law: {
            const double r = tau / tau0_;
            return amplitude_ * std::log(a_ + r * r);
        }
        case Kind::exponential:
            return amplitude_ * std::exp(-std::abs(tau) / tau0_);
        case Kind::constant:
            return amplitude_;
        case Kind::user_function:
            return fn_(tau);
    }
    return 0.0;
}

// ----------------------------------------------- oscillatory quadrature

namespace {

// Integrate g over [0, t_end] with panels no longer than half an oscillation
// period, refined near the origin down to `scale`.
template <class F>
double oscillatory_panels(F&& g, double omega, double t_end, double scale) {
    const double half_period = kPi / std::abs(omega);
    double sum = 0.0;
    double a = 0.0;
    while (a < t_end) {
        const double width = std::min(half_period, std::max(scale, 0.25 * a));
        const double b = std::min(t_end, a + width);
        sum += Gauss::integrate(g, a, b);
        a = b;
    }
    return sum;
}

// int_0^h ln(tau) phi(tau) dtau for smooth phi: geometric grading towards
// zero, the last sliver taken analytically with phi ~ phi(0).
template <class F>
double log_weighted_origin(F&& phi, double h) {
    double sum = 0.0;
    double hi = h;
    for (int k = 0; k < 60; ++k) {
        const double lo = 0.5 * hi;
        sum += Gauss::integrate([&](double t) { return std::log(t) * phi(t); }, lo, hi);
        hi = lo;
    }
    sum += phi(0.0) * (hi * std::log(hi) - hi);
    return sum;
}

// 2 * int_0^{t_m} ln(tau) w(tau) cos(omega tau) dtau
template <class W>
double log_cosine_integral(W&& weight, double omega, double t_m) {
    const double w = std::abs(omega);
    const double h = std::min(t_m, kPi / w);
    auto phi = [&](double t) { return weight(t) * std::cos(w * t); };
    double sum = log_weighted_origin(phi, h);
    if (t_m > h) {
        auto g = [&](double t) { return std::log(t) * phi(t); };
        const double half_period = kPi / w;
        double a = h;
        while (a < t_m) {
            const double b = std::min(t_m, a + half_period);
            sum += Gauss::integrate(g, a, b);
            a = b;
        }
    }
    return 2.0 * sum;
}

}  // namespace

double sigma_min_measurement_time(double f_hz) { return 100.0 / (2.0 * kPi * std::abs(f_hz)); }

double sigma_spectrum(const CovarianceModel& cov, double f_hz, double t_m) {
    if (f_hz == 0.0 || !std::isfinite(f_hz)) throw std::domain_error("sigma_spectrum: f must be non-zero");
    const double required = sigma_min_measurement_time(f_hz);
    if (!(t_m >= required))
        throw PreconditionError("sigma_spectrum: measurement time " + std::to_string(t_m) +
                                " s too short; need t_m >= " + std::to_string(required) + " s");
    const double omega = 2.0 * kPi * f_hz;
    double scale = cov.tau0();
    if (cov.kind() == CovarianceModel::Kind::log_law) scale *= std::min(1.0, std::sqrt(cov.a()));
    auto re = [&](double t) { return cov(t) * (1.0 - t / t_m) * std::cos(omega * t); };
    const double real = 2.0 * oscillatory_panels(re, omega, t_m, scale);

    if (cov.kind() == CovarianceModel::Kind::user_function) {
        auto im = [&](double t) { return (cov(t) - cov(-t)) * (1.0 - t / t_m) * std::sin(omega * t); };
        const double imag = oscillatory_panels(im, omega, t_m, scale);
        if (std::abs(imag) > 1e-9 * std::abs(real) && std::abs(imag) > 0.0)
            throw std::domain_error("sigma_spectrum: covariance is not even (imaginary part " +
                                    std::to_string(imag) + ")");
    }
    return real;
}

WkIdentity wk_identity_check(double omega, double t_m) {
    if (omega == 0.0 || !std::isfinite(omega)) throw std::domain_error("wk_identity_check: omega must be non-zero");
    if (!(t_m > 0.0)) throw std::invalid_argument("wk_identity_check: t_m must be positive");
    WkIdentity r;
    r.lhs1 = log_cosine_integral([](double) { return 1.0; }, omega, t_m);
    r.lhs2 = log_cosine_integral([](double t) { return t; }, omega, t_m) / t_m;
    r.difference = r.lhs1 - r.lhs2;
    r.target = -kPi / std::abs(omega);
    return r;
}

std::complex<double> sign_kernel_integral(double omega, double t_m) {
    // The cosine parts of the two half-lines cancel identically.
    auto s = [omega](double t) { return std::sin(omega * t); };
    const double imag = 2.0 * oscillatory_panels(s, omega, t_m, kPi / std::abs(omega));
    return {0.0, imag};
}

// --------------------------------------------------------------- synthesis

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

SignalRecord synthesize_power_law_noise(double gamma, std::size_t n, double dt, std::uint64_t seed) {
    if (!(gamma >= 0.0 && gamma <= 2.0)) throw std::invalid_argument("synthesize: gamma must lie in [0, 2]");
    if (n < 4 || (n & (n - 1)) != 0) throw std::invalid_argument("synthesize: N must be a power of two >= 4");
    if (!(dt > 0.0)) throw std::invalid_argument("synthesize: dt must be positive");

    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

    const std::size_t half = n / 2;
    const double c = 1.0 / std::sqrt(double(n - 1));
    std::vector<fftw_complex> spectrum(half + 1);
    spectrum[0][0] = 0.0;
    spectrum[0][1] = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        const double amp = c * std::pow(double(k) / double(half), -0.5 * gamma);
        const double phase = 2.0 * kPi * uniform();
        if (k == half) {
            spectrum[k][0] = std::cos(phase) >= 0.0 ? amp : -amp;
            spectrum[k][1] = 0.0;
        } else {
            spectrum[k][0] = amp * std::cos(phase);
            spectrum[k][1] = amp * std::sin(phase);
        }
    }

    std::vector<double> samples(n);
    {
        std::lock_guard lock(planner_mutex());
        std::unique_ptr<fftw_plan_s, PlanDeleter> plan(
            fftw_plan_dft_c2r_1d(int(n), spectrum.data(), samples.data(), FFTW_ESTIMATE));
        if (!plan) throw std::runtime_error("synthesize: FFT plan creation failed");
        fftw_execute(plan.get());
    }
    return {std::move(samples), dt};
}

std::vector<double> log_grid(double f_lo, double f_hi, std::size_t count) {
    if (!(f_lo > 0.0 && f_hi > f_lo) || count < 2) throw std::invalid_argument("log_grid: need 0 < f_lo < f_hi, count >= 2");
    std::vector<double> out(count);
    const double step = std::log(f_hi / f_lo) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = f_lo * std::exp(step * double(i));
    out.back() = f_hi;
    return out;
}

double log_log_slope(const SpectrumSeries& series) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = 0.0;
    for (const auto& p : series.points) {
        if (!(p.f > 0.0 && p.value > 0.0)) continue;
        const double x = std::log(p.f);
        const double y = std::log(p.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1.0;
    }
    if (n < 2.0) throw std::invalid_argument("log_log_slope: need two positive points");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --------------------------------------------------------------------- CSV

std::string format_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

SignalRecord read_signal_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("signal csv: empty input");
    std::vector<double> t;
    std::vector<double> v;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double ti = 0.0, vi = 0.0;
        if (!(row >> ti >> vi))
            throw std::invalid_argument("signal csv: malformed row at line " + std::to_string(lineno));
        t.push_back(ti);
        v.push_back(vi);
    }
    if (t.size() < 2) throw std::invalid_argument("signal csv: need at least two samples");
    const double dt = (t.back() - t.front()) / double(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * std::abs(dt))
            throw std::invalid_argument("signal csv: non-uniform sample spacing at line " + std::to_string(i + 2));
    return {std::move(v), dt};
}

void write_signal_csv(std::ostream& out, const SignalRecord& rec) {
    out << "t,value\n";
    const auto x = rec.samples();
    for (std::size_t i = 0; i < x.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rec.dt() * double(i), x[i]);
        out << buf;
    }
}

void write_spectrum_csv(std::ostream& out, const SpectrumSeries& series) {
    out << "f,S,stderr\n";
    for (const auto& p : series.points)
        out << format_sig6(p.f) << ',' << format_sig6(p.value) << ',' << format_sig6(p.std_error) << '\n';
}

}  // namespace flicker
