#include "flicker/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace flicker {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }
bool Vec3::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

SampleGeometry::SampleGeometry(double length_cm, double width_cm, double thickness_cm)
    : length_(length_cm), width_(width_cm), thickness_(thickness_cm) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument(std::string("sample ") + name + " must be positive and finite, got " +
                                        std::to_string(v));
    };
    check(length_, "length");
    check(width_, "width");
    check(thickness_, "thickness");
}

double SampleGeometry::diagonal() const {
    return std::sqrt(length_ * length_ + width_ * width_ + thickness_ * thickness_);
}

bool SampleGeometry::contains(const Vec3& p, double rel_tol) const {
    auto in = [rel_tol](double v, double hi) { return v >= -rel_tol * hi && v <= hi * (1.0 + rel_tol); };
    return in(p.x, length_) && in(p.y, width_) && in(p.z, thickness_);
}

SampleGeometry SampleGeometry::scaled(double factor) const {
    return {length_ * factor, width_ * factor, thickness_ * factor};
}

ProbePair end_face_probes(const SampleGeometry& geom) {
    const double yc = 0.5 * geom.width();
    const double zc = 0.5 * geom.thickness();
    return {{0.0, yc, zc}, {geom.length(), yc, zc}};
}

ProbePair side_face_probes(const SampleGeometry& geom) {
    const double xc = 0.5 * geom.length();
    const double zc = 0.5 * geom.thickness();
    return {{xc, 0.0, zc}, {xc, geom.width(), zc}};
}

void validate_probes(const SampleGeometry& geom, const ProbePair& probes) {
    if (!probes.first.finite() || !probes.second.finite())
        throw std::invalid_argument("probe coordinates must be finite");
    if (probes.first == probes.second) throw std::invalid_argument("probes must be distinct");
    if (!geom.contains(probes.first) || !geom.contains(probes.second))
        throw std::invalid_argument("probes must lie on or inside the sample");
}

std::string_view to_string(NoiseConfiguration c) {
    return c == NoiseConfiguration::longitudinal ? "longitudinal" : "transverse";
}

NoiseConfiguration parse_configuration(std::string_view text) {
    if (text == "longitudinal") return NoiseConfiguration::longitudinal;
    if (text == "transverse") return NoiseConfiguration::transverse;
    throw std::invalid_argument("unknown noise configuration '" + std::string(text) + "'");
}

namespace {

// ln(z + r) without cancellation for z < 0, r = |(x, y, z)|.
double log_z_plus_r(double x, double y, double z, double r) {
    if (z >= 0.0) return std::log(z + r);
    return std::log((x * x + y * y) / (r - z));
}

// Antiderivative whose mixed third derivative is 1/r. Terms whose prefactor
// vanishes are dropped, which is also their limiting value.
double cuboid_antiderivative(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) return 0.0;
    double t = 0.0;
    if (x != 0.0 && y != 0.0) t += x * y * log_z_plus_r(x, y, z, r);
    if (y != 0.0 && z != 0.0) t += y * z * log_z_plus_r(y, z, x, r);
    if (z != 0.0 && x != 0.0) t += z * x * log_z_plus_r(z, x, y, r);
    if (x != 0.0) t -= 0.5 * x * x * std::atan(y * z / (x * r));
    if (y != 0.0) t -= 0.5 * y * y * std::atan(z * x / (y * r));
    if (z != 0.0) t -= 0.5 * z * z * std::atan(x * y / (z * r));
    return t;
}

CoulombIntegral closed_form(const SampleGeometry& g, const Vec3& p) {
    const std::array<double, 2> xs{-p.x, g.length() - p.x};
    const std::array<double, 2> ys{-p.y, g.width() - p.y};
    const std::array<double, 2> zs{-p.z, g.thickness() - p.z};
    double sum = 0.0;
    double magnitude = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const double sign = ((i + j + k) % 2 == 1) ? 1.0 : -1.0;
                const double term = cuboid_antiderivative(xs[i], ys[j], zs[k]);
                sum += sign * term;
                magnitude += std::abs(term);
            }
    const double err = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return {Quantity(sum, Dimension::of_length().pow(2)), err};
}

// Integral over s in [0, p] of asinh(q / sqrt(1 + s^2)): the pyramid with
// apex at the origin and base on the unit-distance face [0,p]x[0,q], after
// the radial integral has been done exactly.
std::array<double, 2> pyramid_profile(double p, double q) {
    auto f = [q](double s) { return std::asinh(q / std::sqrt(1.0 + s * s)); };
    // Smooth on each panel; the scales are 1 and q, then a slow tail, so
    // panels double in length past min(1, q).
    double value = 0.0;
    double err = 0.0;
    double lo = 0.0;
    double hi = std::min({1.0, q, p});
    while (lo < p) {
        double e = 0.0;
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 10, 1e-14, &e);
        err += e;
        lo = hi;
        hi = std::min(p, 2.0 * hi);
    }
    return {value, err};
}

CoulombIntegral octant_quadrature(const SampleGeometry& g, const Vec3& p) {
    // Integral over [lo, hi] = sum over the two endpoints c of
    // sign(endpoint) * sign(c - p) * (integral from p to |c - p| along the axis).
    struct Leg {
        double length;
        double coefficient;
    };
    auto legs = [](double lo, double hi, double at) {
        auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
        return std::array<Leg, 2>{Leg{std::abs(lo - at), -sgn(lo - at)}, Leg{std::abs(hi - at), sgn(hi - at)}};
    };
    const auto lx = legs(0.0, g.length(), p.x);
    const auto ly = legs(0.0, g.width(), p.y);
    const auto lz = legs(0.0, g.thickness(), p.z);
    double sum = 0.0;
    double err = 0.0;
    for (const auto& a : lx)
        for (const auto& b : ly)
            for (const auto& c : lz) {
                const double coef = a.coefficient * b.coefficient * c.coefficient;
                if (coef == 0.0) continue;
                const auto [v, e] = detail::corner_box_quadrature(a.length, b.length, c.length);
                sum += coef * v;
                err += e;
            }
    return {Quantity(sum, Dimension::of_length().pow(2)), err};
}

}  // namespace

namespace detail {

std::array<double, 2> corner_box_quadrature(double a, double b, double c) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0) return {0.0, 0.0};
    double value = 0.0;
    double err = 0.0;
    // Three pyramids with apex at the origin, one per far face.
    auto add = [&](double h, double p, double q) {
        const auto [v, e] = pyramid_profile(p / h, q / h);
        value += 0.5 * h * h * v;
        err += 0.5 * h * h * e;
    };
    add(a, b, c);
    add(b, c, a);
    add(c, a, b);
    return {value, err};
}

}  // namespace detail

CoulombIntegral coulomb_box_integral(const SampleGeometry& geom, const Vec3& point, IntegrationMethod method) {
    if (!point.finite()) throw std::invalid_argument("coulomb_box_integral: field point must be finite");
    return method == IntegrationMethod::closed_form ? closed_form(geom, point) : octant_quadrature(geom, point);
}

namespace {

GeometricFactor probe_average(const SampleGeometry& geom, const ProbePair& probes, IntegrationMethod method,
                              double prefactor, NoiseConfiguration configuration) {
    validate_probes(geom, probes);
    const auto i1 = coulomb_box_integral(geom, probes.first, method);
    const auto i2 = coulomb_box_integral(geom, probes.second, method);
    const Quantity volume(geom.volume(), Dimension::of_length().pow(3));
    const double scale = prefactor / (3.0 * geom.volume());
    return {prefactor * (i1.value + i2.value) / (3.0 * volume), configuration,
            scale * (i1.error_estimate + i2.error_estimate)};
}

}  // namespace

GeometricFactor geometric_factor(const SampleGeometry& geom, const ProbePair& probes, IntegrationMethod method) {
    return probe_average(geom, probes, method, 1.0, NoiseConfiguration::longitudinal);
}

GeometricFactor geometric_factor_transverse(const SampleGeometry& geom, const ProbePair& probes,
                                            IntegrationMethod method) {
    const double ratio = geom.width() / geom.length();
    return probe_average(geom, probes, method, ratio * ratio, NoiseConfiguration::transverse);
}

}  // namespace flicker
