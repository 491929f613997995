#include "flicker/units.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace flicker {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Dimension::str() const {
    if (is_dimensionless()) return "[dimensionless]";
    std::ostringstream os;
    os << '[';
    bool first = true;
    auto put = [&](const char* sym, const Rational& r) {
        if (r.is_zero()) return;
        if (!first) os << ' ';
        first = false;
        os << sym;
        if (!(r == Rational(1))) os << '^' << r.str();
    };
    put("cm", length);
    put("g", mass);
    put("s", time);
    os << ']';
    return os.str();
}

DimensionError::DimensionError(const Dimension& lhs, const Dimension& rhs, std::string_view what)
    : std::invalid_argument(std::string(what) + ": dimension mismatch " + lhs.str() + " vs " +
                            rhs.str()) {}

double Quantity::dimensionless_value() const {
    if (!dim_.is_dimensionless())
        throw DimensionError(dim_, Dimension::dimensionless(), "dimensionless_value");
    return value_;
}

double Quantity::in(const Unit& unit) const { return convert(*this, unit); }

Quantity Quantity::pow(Rational p) const { return {std::pow(value_, p.to_double()), dim_.pow(p)}; }

Quantity& Quantity::operator+=(const Quantity& o) {
    if (!(dim_ == o.dim_)) throw DimensionError(dim_, o.dim_, "addition");
    value_ += o.value_;
    return *this;
}

Quantity& Quantity::operator-=(const Quantity& o) {
    if (!(dim_ == o.dim_)) throw DimensionError(dim_, o.dim_, "subtraction");
    value_ -= o.value_;
    return *this;
}

bool operator<(const Quantity& a, const Quantity& b) {
    if (!(a.dim_ == b.dim_)) throw DimensionError(a.dim_, b.dim_, "comparison");
    return a.value_ < b.value_;
}

double convert(const Quantity& q, const Unit& target) {
    if (!(q.dim() == target.dim)) throw DimensionError(q.dim(), target.dim, "convert to " + target.name);
    return q.cgs() / target.factor;
}

double convert(double value, const Unit& from, const Unit& to) {
    return convert(Quantity(value, from), to);
}

namespace {

const Dimension kLength = Dimension::of_length();
const Dimension kMass = Dimension::of_mass();
const Dimension kTime = Dimension::of_time();
const Dimension kCharge = Dimension::of_charge();
const Dimension kEnergy = Dimension::of_energy();
const Dimension kPotential = kCharge / kLength;
const Dimension kVolume = kLength.pow(3);

constexpr double kVolt = 1.0 / constants::statvolt_in_volts;  // statvolt per volt

const std::map<std::string, Unit, std::less<>>& unit_table() {
    static const std::map<std::string, Unit, std::less<>> table = [] {
        std::map<std::string, Unit, std::less<>> t;
        auto add = [&t](std::string name, double factor, Dimension dim) {
            t.emplace(name, Unit{name, factor, dim});
        };
        add("", 1.0, Dimension::dimensionless());
        add("1", 1.0, Dimension::dimensionless());

        add("cm", 1.0, kLength);
        add("m", 1e2, kLength);
        add("mm", 1e-1, kLength);
        add("um", 1e-4, kLength);
        add("nm", 1e-7, kLength);
        add("angstrom", 1e-8, kLength);
        add("cm3", 1.0, kVolume);
        add("m3", 1e6, kVolume);

        add("1/cm", 1.0, kLength.pow(-1));
        add("1/m", 1e-2, kLength.pow(-1));

        add("g", 1.0, kMass);
        add("kg", 1e3, kMass);
        add("g/cm3", 1.0, kMass / kVolume);
        add("kg/m3", 1e-3, kMass / kVolume);

        add("s", 1.0, kTime);
        add("ms", 1e-3, kTime);
        add("Hz", 1.0, kTime.pow(-1));
        add("kHz", 1e3, kTime.pow(-1));
        add("MHz", 1e6, kTime.pow(-1));
        add("GHz", 1e9, kTime.pow(-1));
        add("THz", 1e12, kTime.pow(-1));

        add("cm/s", 1.0, kLength / kTime);
        add("m/s", 1e2, kLength / kTime);
        add("km/s", 1e5, kLength / kTime);

        add("erg", 1.0, kEnergy);
        add("J", 1e7, kEnergy);
        add("eV", constants::electronvolt, kEnergy);
        add("meV", 1e-3 * constants::electronvolt, kEnergy);
        add("erg2/cm2", 1.0, kEnergy.pow(2) / kLength.pow(2));

        add("esu", 1.0, kCharge);
        add("C", 10.0 * constants::speed_of_light, kCharge);

        add("statvolt", 1.0, kPotential);
        add("V", kVolt, kPotential);
        add("mV", 1e-3 * kVolt, kPotential);
        add("uV", 1e-6 * kVolt, kPotential);
        add("statvolt/cm", 1.0, kPotential / kLength);
        add("V/cm", kVolt, kPotential / kLength);
        add("V/m", kVolt * 1e-2, kPotential / kLength);

        add("1/(erg*cm3)", 1.0, (kEnergy * kVolume).pow(-1));
        add("1/(eV*cm3)", 1.0 / constants::electronvolt, (kEnergy * kVolume).pow(-1));
        add("1/(J*m3)", 1e-13, (kEnergy * kVolume).pow(-1));
        return t;
    }();
    return table;
}

}  // namespace

const Unit& unit(std::string_view name) {
    const auto& table = unit_table();
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown unit '" + std::string(name) + "'");
    return it->second;
}

Quantity parse_quantity(std::string_view text) {
    auto trim = [](std::string_view s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) return std::string_view{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data())
        throw std::invalid_argument("expected a number in '" + std::string(text) + "'");
    if (!std::isfinite(value))
        throw std::invalid_argument("non-finite value in '" + std::string(text) + "'");
    const auto rest = trim(text.substr(static_cast<std::size_t>(ptr - text.data())));
    return Quantity(value, unit(rest));
}

namespace units {
const Unit& cm() { return unit("cm"); }
const Unit& per_cm() { return unit("1/cm"); }
const Unit& hertz() { return unit("Hz"); }
const Unit& second() { return unit("s"); }
const Unit& statvolt() { return unit("statvolt"); }
const Unit& volt() { return unit("V"); }
const Unit& statvolt_per_cm() { return unit("statvolt/cm"); }
const Unit& volt_per_m() { return unit("V/m"); }
const Unit& erg() { return unit("erg"); }
const Unit& electronvolt() { return unit("eV"); }
const Unit& per_erg_cm3() { return unit("1/(erg*cm3)"); }
const Unit& per_ev_cm3() { return unit("1/(eV*cm3)"); }
}  // namespace units

namespace constants {
Quantity e() { return {elementary_charge, Dimension::of_charge()}; }
Quantity m0() { return {electron_mass, Dimension::of_mass()}; }
Quantity h_bar() { return {hbar, Dimension::of_energy() * Dimension::of_time()}; }
Quantity c() { return {speed_of_light, Dimension::of_length() / Dimension::of_time()}; }
}  // namespace constants

}  // namespace flicker
