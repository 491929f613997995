#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flicker {

/// Uniformly sampled voltage record (volts, step dt seconds).
class SignalRecord {
public:
    SignalRecord(std::vector<double> samples, double dt);

    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    /// Measurement time dt * (N - 1).
    [[nodiscard]] double measurement_time() const noexcept { return dt_ * double(samples_.size() - 1); }

private:
    std::vector<double> samples_;
    double dt_;
};

/// Finite-time sine and cosine transforms at angular frequency omega (V s).
struct FourierPair {
    double us = 0.0;
    double uc = 0.0;
    double omega = 0.0;
};

struct SpectrumPoint {
    double f = 0.0;      // Hz
    double value = 0.0;  // V^2/Hz
    double std_error = 0.0;
};

struct SpectrumSeries {
    std::vector<SpectrumPoint> points;
};

/// Symmetric lag covariance S(tau) feeding the generalized Wiener-Khinchin limit.
class CovarianceModel {
public:
    enum class Kind { log_law, exponential, constant, user_function };

    /// amplitude * ln(a + (tau/tau0)^2)
    static CovarianceModel log_law(double tau0, double a, double amplitude = 1.0);
    /// amplitude * exp(-|tau|/tau0)
    static CovarianceModel exponential(double tau0, double amplitude = 1.0);
    static CovarianceModel constant(double value);
    /// Arbitrary S(tau); `scale` is its shortest feature in seconds.
    static CovarianceModel user(std::function<double(double)> fn, double scale);

    [[nodiscard]] double operator()(double tau) const;
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double tau0() const noexcept { return tau0_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double amplitude() const noexcept { return amplitude_; }

private:
    CovarianceModel(Kind kind, double tau0, double a, double amplitude, std::function<double(double)> fn);

    Kind kind_;
    double tau0_;
    double a_;
    double amplitude_;
    std::function<double(double)> fn_;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Trapezoidal discretisation of the finite-time sine/cosine transforms.
FourierPair finite_time_fourier(const SignalRecord& rec, double f_hz);

/// Ensemble mean of (us^2 + uc^2)/t_m at each grid frequency, with the
/// standard error of that mean. The grid must be strictly increasing.
SpectrumSeries power_spectrum_estimate(std::span<const SignalRecord> ensemble, std::span<const double> f_grid_hz);

/// Finite-t_m generalized Wiener-Khinchin value
///   int_{-t_m}^{t_m} S(tau) (1 - |tau|/t_m) e^{i omega tau} dtau.
/// Requires f != 0 and omega t_m >= 100.
double sigma_spectrum(const CovarianceModel& cov, double f_hz, double t_m);

/// Smallest measurement time accepted by sigma_spectrum at frequency f.
double sigma_min_measurement_time(double f_hz);

struct WkIdentity {
    double lhs1 = 0.0;        // int_{-t_m}^{t_m} ln|tau| e^{i omega tau}
    double lhs2 = 0.0;        // (1/t_m) int_{-t_m}^{t_m} |tau| ln|tau| e^{i omega tau}
    double difference = 0.0;  // lhs1 - lhs2
    double target = 0.0;      // -pi/|omega|
};

WkIdentity wk_identity_check(double omega, double t_m);

/// Numerical int_{-t_m}^{t_m} sign(tau) e^{i omega tau} dtau.
std::complex<double> sign_kernel_integral(double omega, double t_m);

/// Unit-variance-at-gamma-0 power-law noise by spectral synthesis: random
/// phases, amplitudes proportional to f^(-gamma/2). The two-sided estimator
/// spectrum is dt * (f / f_nyquist)^(-gamma). N must be a power of two.
SignalRecord synthesize_power_law_noise(double gamma, std::size_t n, double dt, std::uint64_t seed);

/// Log-spaced grid of `count` points from f_lo to f_hi inclusive.
std::vector<double> log_grid(double f_lo, double f_hi, std::size_t count);

/// Least-squares slope of log(value) against log(f).
double log_log_slope(const SpectrumSeries& series);

/// Headered CSV "t,value"; sample spacing must be uniform.
SignalRecord read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const SignalRecord& rec);
/// CSV "f,S,stderr" with 6 significant digits.
void write_spectrum_csv(std::ostream& out, const SpectrumSeries& series);

/// Six-significant-digit formatting shared by every CSV writer.
std::string format_sig6(double v);

}  // namespace flicker
