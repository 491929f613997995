#pragma once

#include <array>
#include <string_view>

#include "flicker/units.hpp"

namespace flicker {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
    [[nodiscard]] double norm() const;
    [[nodiscard]] bool finite() const;
};

/// Cuboid sample with one corner at the origin: x along the current
/// (length), y across it (width), z through the film (thickness). All in cm.
class SampleGeometry {
public:
    SampleGeometry(double length_cm, double width_cm, double thickness_cm);

    [[nodiscard]] double length() const noexcept { return length_; }
    [[nodiscard]] double width() const noexcept { return width_; }
    [[nodiscard]] double thickness() const noexcept { return thickness_; }
    [[nodiscard]] double volume() const noexcept { return length_ * width_ * thickness_; }
    [[nodiscard]] double diagonal() const;
    [[nodiscard]] bool contains(const Vec3& p, double rel_tol = 1e-12) const;
    [[nodiscard]] SampleGeometry scaled(double factor) const;

private:
    double length_;
    double width_;
    double thickness_;
};

struct ProbePair {
    Vec3 first;
    Vec3 second;
};

/// Probes at the centres of the two w x a end faces (the current-lead faces).
ProbePair end_face_probes(const SampleGeometry& geom);
/// Probes at the centres of the two l x a side faces.
ProbePair side_face_probes(const SampleGeometry& geom);

/// Throws std::invalid_argument unless both probes lie in the closed cuboid
/// and are distinct.
void validate_probes(const SampleGeometry& geom, const ProbePair& probes);

enum class NoiseConfiguration { longitudinal, transverse };
std::string_view to_string(NoiseConfiguration c);
NoiseConfiguration parse_configuration(std::string_view text);

enum class IntegrationMethod { closed_form, quadrature };

struct CoulombIntegral {
    Quantity value;  // cm^2
    double error_estimate = 0.0;
};

struct GeometricFactor {
    Quantity value;  // cm^-1
    NoiseConfiguration configuration = NoiseConfiguration::longitudinal;
    double error_estimate = 0.0;

    [[nodiscard]] double per_cm() const { return value.in(units::per_cm()); }
};

/// Newtonian potential of the uniform unit-density cuboid at `point`:
/// the volume integral of 1/|r - point| over the sample. `point` may lie
/// inside, on the surface, or outside.
CoulombIntegral coulomb_box_integral(const SampleGeometry& geom, const Vec3& point,
                                     IntegrationMethod method = IntegrationMethod::closed_form);

/// g = (1/3V) * [I(x1) + I(x2)], longitudinal configuration.
GeometricFactor geometric_factor(const SampleGeometry& geom, const ProbePair& probes,
                                 IntegrationMethod method = IntegrationMethod::closed_form);

/// g^tr = (w/l)^2 * (1/3V) * [I(x1) + I(x2)].
GeometricFactor geometric_factor_transverse(
    const SampleGeometry& geom, const ProbePair& probes,
    IntegrationMethod method = IntegrationMethod::closed_form);

namespace detail {
/// Integral of 1/|r| over the box [0,a]x[0,b]x[0,c] (field point at a corner),
/// via pyramid decomposition and adaptive quadrature. Returns {value, error}.
std::array<double, 2> corner_box_quadrature(double a, double b, double c);
}  // namespace detail

}  // namespace flicker
