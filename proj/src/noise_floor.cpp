#include "flicker/noise_floor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flicker {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const std::string& what) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument(what + " must be positive, got " + std::to_string(v));
}
}  // namespace

void CarrierSpecies::validate() const {
    require_positive(mass_ratio, "carrier '" + label + "' effective mass");
    if (!std::isfinite(charge_esu) || charge_esu == 0.0)
        throw std::invalid_argument("carrier '" + label + "' charge must be non-zero");
}

void Material::validate() const {
    for (const auto& c : carriers) c.validate();
    require_positive(density, "material '" + name + "' density");
    require_positive(sound_velocity, "material '" + name + "' sound velocity");
    require_positive(lattice_constant, "material '" + name + "' lattice constant");
    require_positive(density_of_states, "material '" + name + "' density of states");
    if (measured_delta && (!std::isfinite(*measured_delta) || *measured_delta < 0.0))
        throw std::invalid_argument("material '" + name + "' measured delta must be >= 0");
}

Quantity kappa_quantity(const GeometricFactor& g, const CarrierSpecies& species) {
    species.validate();
    using namespace constants;
    const Quantity charge(species.charge_esu, Dimension::of_charge());
    const Quantity mass = species.mass_ratio * m0();
    return 2.0 * charge.pow(4) * g.value / (kPi * mass * h_bar() * c().pow(3));
}

double kappa(const GeometricFactor& g, const Material& material) {
    if (material.carriers.empty())
        throw std::invalid_argument("material '" + material.name + "' has no carrier species");
    if (!(g.value.cgs() > 0.0)) throw std::invalid_argument("geometric factor must be positive");
    if (material.carrier_sum == CarrierSum::lightest_only) {
        const auto lightest = std::min_element(
            material.carriers.begin(), material.carriers.end(),
            [](const CarrierSpecies& a, const CarrierSpecies& b) { return a.mass_ratio < b.mass_ratio; });
        return kappa_quantity(g, *lightest).dimensionless_value();
    }
    double sum = 0.0;
    for (const auto& species : material.carriers) sum += kappa_quantity(g, species).dimensionless_value();
    return sum;
}

std::optional<double> piezo_matrix_element_sq(const Material& material) {
    if (material.matrix_element_sq) return material.matrix_element_sq;
    if (material.h14_statvolt_per_cm) {
        const double eh = constants::elementary_charge * *material.h14_statvolt_per_cm;
        return eh * eh;
    }
    return std::nullopt;
}

double phonon_delta(const Material& material) {
    if (material.acoustic == AcousticMatch::reflecting) return 0.0;
    if (material.measured_delta) return *material.measured_delta;
    const auto m2 = piezo_matrix_element_sq(material);
    if (!m2)
        throw MissingPiezoData("material '" + material.name +
                               "' has no piezoelectric data; exponent shift unavailable (gamma = 1 assumed)");
    require_positive(material.density, "density");
    require_positive(material.sound_velocity, "sound velocity");
    const double u = material.sound_velocity;
    return *m2 / (4.0 * kPi * kPi * constants::hbar * material.density * u * u * u);
}

Quantity corner_frequency(const Material& material) {
    require_positive(material.sound_velocity, "sound velocity");
    require_positive(material.lattice_constant, "lattice constant");
    return {material.sound_velocity / material.lattice_constant, Dimension::of_time().pow(-1)};
}

double corner_magnification(double fstar_hz, double delta) { return std::pow(fstar_hz, delta); }

ValidityBound::ValidityBound(double density_of_states, double volume_cm3)
    : level_time_(constants::hbar * density_of_states * volume_cm3) {
    require_positive(density_of_states, "density of states");
    require_positive(volume_cm3, "sample volume");
}

Quantity ValidityBound::fmax() const { return {fmax_hz(), Dimension::of_time().pow(-1)}; }

double ValidityBound::excess_factor(double f_hz) const {
    const double x = 2.0 * kPi * std::abs(f_hz) * level_time_;
    return std::abs(f_hz) > fmax_hz() ? x * x : 1.0;
}

ValidityBound validity_bound(const Material& material, const SampleGeometry& geom) {
    return {material.density_of_states, geom.volume()};
}

double NoiseFloorModel::spectral_density(double u0_volts, double f_hz) const {
    if (f_hz == 0.0 || !std::isfinite(f_hz)) throw std::domain_error("spectral density undefined at f = 0");
    return kappa * u0_volts * u0_volts / std::pow(std::abs(f_hz), gamma);
}

NoiseFloorModel build_model(const GeometricFactor& g, const SampleGeometry& geom, const Material& material) {
    material.validate();
    NoiseFloorModel model;
    model.g = g;
    model.configuration = g.configuration;
    model.base_kappa = kappa(g, material);
    try {
        model.delta = phonon_delta(material);
    } catch (const MissingPiezoData& e) {
        model.delta = 0.0;
        model.annotations.emplace_back("no piezoelectric data; gamma = 1");
    }
    model.gamma = 1.0 + model.delta;
    model.fstar = corner_frequency(material);
    model.kappa = model.base_kappa * corner_magnification(model.fstar.cgs(), model.delta);
    if (model.delta > 0.0)
        model.annotations.emplace_back("kappa carries (f*)^delta; smeared with respect to delta in practice");
    model.fmax = validity_bound(material, geom).fmax();
    return model;
}

NoiseFloorModel build_model(const SampleGeometry& geom, const ProbePair& probes, const Material& material,
                            NoiseConfiguration configuration, IntegrationMethod method) {
    const auto g = configuration == NoiseConfiguration::longitudinal
                       ? geometric_factor(geom, probes, method)
                       : geometric_factor_transverse(geom, probes, method);
    return build_model(g, geom, material);
}

std::vector<NoiseFloorPoint> evaluate_spectrum(const NoiseFloorModel& model, const Quantity& u0,
                                               std::span<const double> f_grid_hz) {
    const double u0_volts = u0.in(units::volt());
    const double fmax = model.fmax.cgs();
    std::vector<NoiseFloorPoint> out;
    out.reserve(f_grid_hz.size());
    for (double f : f_grid_hz) {
        NoiseFloorPoint p;
        p.f_hz = f;
        p.value = model.spectral_density(u0_volts, f);
        p.above_fmax = std::abs(f) > fmax;
        if (p.above_fmax) {
            const double ratio = std::abs(f) / fmax;
            p.excess_factor = ratio * ratio;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace flicker
