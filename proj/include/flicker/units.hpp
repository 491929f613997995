#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flicker {

/// Exact rational number used for dimension exponents.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double to_double() const noexcept { return double(num_) / double(den_); }
    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }
    friend bool operator==(const Rational&, const Rational&) = default;

    [[nodiscard]] std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Physical dimension in the Gaussian-CGS base (cm, g, s).
///
/// The electrostatic charge unit is not an independent base: by the Gaussian
/// definition 1 esu = g^1/2 cm^3/2 s^-1, hence the rational exponents.
struct Dimension {
    Rational length;
    Rational mass;
    Rational time;

    static Dimension dimensionless() { return {}; }
    static Dimension of_length() { return {1, 0, 0}; }
    static Dimension of_mass() { return {0, 1, 0}; }
    static Dimension of_time() { return {0, 0, 1}; }
    static Dimension of_charge() { return {Rational(3, 2), Rational(1, 2), -1}; }
    static Dimension of_energy() { return {2, 1, -2}; }

    [[nodiscard]] bool is_dimensionless() const noexcept {
        return length.is_zero() && mass.is_zero() && time.is_zero();
    }
    [[nodiscard]] Dimension pow(Rational p) const {
        return {length * p, mass * p, time * p};
    }
    [[nodiscard]] std::string str() const;

    friend Dimension operator*(const Dimension& a, const Dimension& b) {
        return {a.length + b.length, a.mass + b.mass, a.time + b.time};
    }
    friend Dimension operator/(const Dimension& a, const Dimension& b) {
        return {a.length - b.length, a.mass - b.mass, a.time - b.time};
    }
    friend bool operator==(const Dimension&, const Dimension&) = default;
};

class DimensionError : public std::invalid_argument {
public:
    DimensionError(const Dimension& lhs, const Dimension& rhs, std::string_view what);
};

/// A named unit: value_in_cgs = value_in_unit * factor.
struct Unit {
    std::string name;
    double factor = 1.0;
    Dimension dim;
};

/// A value in Gaussian-CGS base units together with its dimension.
class Quantity {
public:
    constexpr Quantity() = default;
    Quantity(double value, Dimension dim) : value_(value), dim_(dim) {}
    Quantity(double value, const Unit& unit) : value_(value * unit.factor), dim_(unit.dim) {}

    static Quantity scalar(double v) { return {v, Dimension::dimensionless()}; }

    /// Value in CGS base units.
    [[nodiscard]] double cgs() const noexcept { return value_; }
    [[nodiscard]] const Dimension& dim() const noexcept { return dim_; }

    /// Numeric value of a dimensionless quantity; throws otherwise.
    [[nodiscard]] double dimensionless_value() const;
    [[nodiscard]] double in(const Unit& unit) const;

    [[nodiscard]] Quantity pow(Rational p) const;

    Quantity& operator+=(const Quantity& o);
    Quantity& operator-=(const Quantity& o);

    friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
    friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
    friend Quantity operator*(const Quantity& a, const Quantity& b) {
        return {a.value_ * b.value_, a.dim_ * b.dim_};
    }
    friend Quantity operator/(const Quantity& a, const Quantity& b) {
        return {a.value_ / b.value_, a.dim_ / b.dim_};
    }
    friend Quantity operator*(double s, const Quantity& q) { return {s * q.value_, q.dim_}; }
    friend Quantity operator*(const Quantity& q, double s) { return {s * q.value_, q.dim_}; }
    friend Quantity operator/(const Quantity& q, double s) { return {q.value_ / s, q.dim_}; }

    /// Ordering is only defined between equal dimensions.
    friend bool operator<(const Quantity& a, const Quantity& b);

private:
    double value_ = 0.0;
    Dimension dim_;
};

/// Value of q expressed in the target unit. Throws DimensionError on mismatch.
double convert(const Quantity& q, const Unit& target);

/// Rescale a number given in `from` to `to`.
double convert(double value, const Unit& from, const Unit& to);

/// Look up a unit by its textual name ("um", "V/m", "1/(eV*cm3)", ...).
/// Throws std::invalid_argument for unknown names.
const Unit& unit(std::string_view name);

/// Parse "<number> <unit>" (unit may be omitted for dimensionless values).
Quantity parse_quantity(std::string_view text);

namespace units {
// Named units, all relative to Gaussian-CGS.
const Unit& cm();
const Unit& per_cm();
const Unit& hertz();
const Unit& second();
const Unit& statvolt();
const Unit& volt();
const Unit& statvolt_per_cm();
const Unit& volt_per_m();
const Unit& erg();
const Unit& electronvolt();
const Unit& per_erg_cm3();
const Unit& per_ev_cm3();
}  // namespace units

/// Physical constants in Gaussian-CGS, CODATA 2018.
namespace constants {
inline constexpr double elementary_charge = 4.803204712570263e-10;  // esu
inline constexpr double electron_mass = 9.1093837015e-28;          // g
inline constexpr double hbar = 1.054571817e-27;                    // erg s
inline constexpr double speed_of_light = 2.99792458e10;            // cm/s
inline constexpr double electronvolt = 1.602176634e-12;            // erg
inline constexpr double statvolt_in_volts = 299.792458;            // exact

Quantity e();
Quantity m0();
Quantity h_bar();
Quantity c();
}  // namespace constants

}  // namespace flicker
