#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flicker/geometry.hpp"
#include "flicker/units.hpp"

namespace flicker {

struct CarrierSpecies {
    std::string label;
    double mass_ratio = 1.0;  // effective mass in units of m0
    double charge_esu = constants::elementary_charge;

    void validate() const;
};

enum class AcousticMatch { matched, reflecting };

/// Which carriers enter the noise magnitude: every species (1/m_n + 1/m_p + ...)
/// or only the lightest one.
enum class CarrierSum { all_species, lightest_only };

struct Material {
    std::string name;
    std::vector<CarrierSpecies> carriers;
    std::optional<double> h14_statvolt_per_cm;      // piezoelectric constant
    std::optional<double> matrix_element_sq;        // M^2, erg^2/cm^2; takes precedence over h14
    std::optional<double> measured_delta;           // exponent shift taken from a spectrum fit
    double density = 0.0;                           // rho0, g/cm^3
    double sound_velocity = 0.0;                    // u, cm/s
    double lattice_constant = 0.0;                  // d, cm
    double density_of_states = 0.0;                 // D, 1/(erg cm^3)
    AcousticMatch acoustic = AcousticMatch::matched;
    CarrierSum carrier_sum = CarrierSum::all_species;

    void validate() const;
};

/// Raised when no piezoelectric data are available to compute the exponent shift.
class MissingPiezoData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimensionless noise magnitude 2 e^4 g / (pi m hbar c^3), summed over the
/// selected carrier species. Does not include the (f*)^delta factor.
double kappa(const GeometricFactor& g, const Material& material);

/// The same expression assembled from dimensioned constants; its dimension
/// is checked to be zero. Used to cross-check `kappa`.
Quantity kappa_quantity(const GeometricFactor& g, const CarrierSpecies& species);

/// Piezoelectric coupling strength M^2 = (e h14)^2 when only h14 is known.
std::optional<double> piezo_matrix_element_sq(const Material& material);

/// Exponent shift delta = M^2 / ((2 pi)^2 hbar rho0 u^3); zero for a
/// reflecting acoustic boundary. Throws MissingPiezoData when neither M^2,
/// h14 nor a measured delta is present.
double phonon_delta(const Material& material);

/// Corner frequency f* = u / d.
Quantity corner_frequency(const Material& material);

/// (f*)^delta with f* measured in hertz.
double corner_magnification(double fstar_hz, double delta);

/// Finite measurement time bound: omega <~ 1 / (hbar D V).
class ValidityBound {
public:
    ValidityBound(double density_of_states, double volume_cm3);

    [[nodiscard]] Quantity fmax() const;
    [[nodiscard]] double fmax_hz() const noexcept { return 1.0 / (2.0 * std::numbers::pi * level_time_); }
    /// hbar D V, in seconds.
    [[nodiscard]] double level_time() const noexcept { return level_time_; }
    /// (hbar omega D V)^2 above fmax, 1 at or below it.
    [[nodiscard]] double excess_factor(double f_hz) const;

private:
    double level_time_;
};

ValidityBound validity_bound(const Material& material, const SampleGeometry& geom);

struct NoiseFloorModel {
    double kappa = 0.0;       // includes (f*)^delta
    double base_kappa = 0.0;  // without (f*)^delta
    double delta = 0.0;
    double gamma = 1.0;
    Quantity fstar;
    Quantity fmax;
    GeometricFactor g;
    NoiseConfiguration configuration = NoiseConfiguration::longitudinal;
    std::vector<std::string> annotations;

    /// S_F(f) = kappa U0^2 / |f|^gamma, U0 in volts, result in V^2/Hz^gamma.
    [[nodiscard]] double spectral_density(double u0_volts, double f_hz) const;
};

/// Assemble the model for a sample. Missing piezoelectric data falls back to
/// gamma = 1 with an annotation.
NoiseFloorModel build_model(const SampleGeometry& geom, const ProbePair& probes, const Material& material,
                            NoiseConfiguration configuration,
                            IntegrationMethod method = IntegrationMethod::closed_form);

/// Same, with an externally supplied geometric factor.
NoiseFloorModel build_model(const GeometricFactor& g, const SampleGeometry& geom, const Material& material);

struct NoiseFloorPoint {
    double f_hz = 0.0;
    double value = 0.0;
    bool above_fmax = false;
    double excess_factor = 1.0;
};

std::vector<NoiseFloorPoint> evaluate_spectrum(const NoiseFloorModel& model, const Quantity& u0,
                                               std::span<const double> f_grid_hz);

}  // namespace flicker
