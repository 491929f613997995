#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "flicker/noise_floor.hpp"

using namespace flicker;

namespace {

GeometricFactor factor(double per_cm, NoiseConfiguration c = NoiseConfiguration::longitudinal) {
    return {Quantity(per_cm, units::per_cm()), c, 0.0};
}

Material ingaas() {
    Material m;
    m.name = "InGaAs";
    m.carriers = {{"n", 0.06}, {"p", 0.09}};
    m.density = 5.3;
    m.sound_velocity = 2.5e5;
    m.lattice_constant = 5e-8;
    m.density_of_states = convert(1e22, units::per_ev_cm3(), units::per_erg_cm3());
    return m;
}

Material gaas_piezo() {
    Material m = ingaas();
    m.h14_statvolt_per_cm = convert(1.4e9, units::volt_per_m(), units::statvolt_per_cm());
    return m;
}

// Hand calculation with plain doubles: 2 e^4 g / (pi m hbar c^3).
double hand_kappa(double g, double mass_ratio) {
    const double e = 4.803204712570263e-10, m0 = 9.1093837015e-28, hbar = 1.054571817e-27, c = 2.99792458e10;
    return 2.0 * std::pow(e, 4) * g / (std::numbers::pi * mass_ratio * m0 * hbar * c * c * c);
}

}  // namespace

TEST_CASE("kappa for InGaAs V1") {
    auto m = ingaas();
    const double k = kappa(factor(9630), m);
    CHECK(k == doctest::Approx(3.5e-10).epsilon(0.01));
    CHECK(k == doctest::Approx(hand_kappa(9630, 0.06) + hand_kappa(9630, 0.09)).epsilon(1e-13));

    m.carrier_sum = CarrierSum::lightest_only;
    CHECK(kappa(factor(9630), m) == doctest::Approx(2.1e-10).epsilon(0.01));
    CHECK(kappa(factor(9630), m) * (1.0 + 0.06 / 0.09) == doctest::Approx(k).epsilon(1e-13));
}

TEST_CASE("kappa for the YBCO film") {
    Material m = ingaas();
    m.carriers = {{"p", 3.0}};
    CHECK(kappa(factor(6), m) == doctest::Approx(2.3e-15).epsilon(0.20));
}

TEST_CASE("kappa is linear in g and 1/m") {
    const auto m = ingaas();
    for (double g : {1.0, 80.0, 9630.0}) {
        const double k1 = kappa(factor(g), m);
        CHECK(std::abs(kappa(factor(2 * g), m) / (2 * k1) - 1.0) <= 1e-15);
    }
    Material heavy = m;
    for (auto& c : heavy.carriers) c.mass_ratio *= 1e6;
    CHECK(kappa(factor(9630), heavy) == doctest::Approx(kappa(factor(9630), m) * 1e-6).epsilon(1e-14));
    for (auto& c : heavy.carriers) c.mass_ratio = 1e300;
    CHECK(kappa(factor(9630), heavy) < 1e-300);
}

TEST_CASE("kappa dimension and errors") {
    CHECK(kappa_quantity(factor(1.0), {"n", 1.0}).dim().is_dimensionless());
    Material empty = ingaas();
    empty.carriers.clear();
    CHECK_THROWS_AS(kappa(factor(1.0), empty), std::invalid_argument);
    CHECK_THROWS_AS(kappa(factor(0.0), ingaas()), std::invalid_argument);
}

TEST_CASE("piezoelectric exponent shift") {
    const auto m = gaas_piezo();
    const double d = phonon_delta(m);
    CHECK(d == doctest::Approx(0.14).epsilon(0.05));
    CHECK(d == doctest::Approx(0.14593016236811).epsilon(1e-10));

    auto fast = m;
    fast.sound_velocity *= 2.0;
    CHECK(phonon_delta(fast) == doctest::Approx(d / 8.0).epsilon(1e-14));

    auto zero = m;
    zero.h14_statvolt_per_cm.reset();
    zero.matrix_element_sq = 0.0;
    CHECK(phonon_delta(zero) == 0.0);

    auto direct = m;
    direct.matrix_element_sq = std::pow(constants::elementary_charge * *m.h14_statvolt_per_cm, 2);
    direct.h14_statvolt_per_cm.reset();
    CHECK(phonon_delta(direct) == doctest::Approx(d).epsilon(1e-14));

    auto reflecting = m;
    reflecting.acoustic = AcousticMatch::reflecting;
    CHECK(phonon_delta(reflecting) == 0.0);

    CHECK_THROWS_AS(phonon_delta(ingaas()), MissingPiezoData);
}

TEST_CASE("exponent shift is dimensionless") {
    using namespace constants;
    const Quantity h14(1.0, units::statvolt_per_cm());
    const Quantity delta =
        (e() * h14).pow(2) / (h_bar() * Quantity(1.0, unit("g/cm3")) * Quantity(1.0, unit("cm/s")).pow(3));
    CHECK(delta.dim().is_dimensionless());
}

TEST_CASE("corner frequency and magnification") {
    const auto fstar = corner_frequency(ingaas());
    CHECK(fstar.in(units::hertz()) == doctest::Approx(5e12).epsilon(1e-14));
    CHECK(corner_magnification(5e12, 0.05) == doctest::Approx(4.3).epsilon(0.01));
    CHECK(corner_magnification(1e13, 0.1) == doctest::Approx(20).epsilon(0.01));
    CHECK(corner_magnification(5e12, 0.0) == 1.0);
}

TEST_CASE("validity bound") {
    const double dos = convert(1e22, units::per_ev_cm3(), units::per_erg_cm3());
    const ValidityBound b(dos, 1e-12);
    CHECK(b.fmax_hz() == doctest::Approx(2.4e4).epsilon(0.02));
    CHECK(b.fmax_hz() == doctest::Approx(24179.89243566).epsilon(1e-10));
    CHECK(b.fmax().dim() == Dimension::of_time().pow(-1));
    CHECK(b.level_time() == doctest::Approx(6.582e-6).epsilon(1e-3));

    const ValidityBound ten(dos, 1e-11);
    CHECK(ten.fmax_hz() == doctest::Approx(b.fmax_hz() / 10).epsilon(1e-14));

    CHECK(b.excess_factor(b.fmax_hz()) == 1.0);
    CHECK(b.excess_factor(10 * b.fmax_hz()) == doctest::Approx(100).epsilon(1e-13));
    CHECK(b.excess_factor(0.5 * b.fmax_hz()) == 1.0);
    const double f = 3e6;
    const double x = constants::hbar * 2 * std::numbers::pi * f * dos * 1e-12;
    CHECK(b.excess_factor(f) == doctest::Approx(x * x).epsilon(1e-14));

    const Quantity rate = Quantity::scalar(1.0) /
                          (constants::h_bar() * Quantity(dos, units::per_erg_cm3()) * Quantity(1e-12, unit("cm3")));
    CHECK(rate.dim() == Dimension::of_time().pow(-1));
}

TEST_CASE("model assembly for V1") {
    const SampleGeometry v1(2.2e-4, 1e-4, 10e-7);
    const auto probes = end_face_probes(v1);

    const auto lon = build_model(v1, probes, ingaas(), NoiseConfiguration::longitudinal);
    CHECK(lon.kappa == doctest::Approx(3.5e-10).epsilon(0.02));
    CHECK(lon.gamma == 1.0);
    CHECK_FALSE(lon.annotations.empty());

    const auto tr = build_model(v1, probes, ingaas(), NoiseConfiguration::transverse);
    CHECK(tr.kappa == doctest::Approx(7.2e-11).epsilon(0.02));
    CHECK(tr.configuration == NoiseConfiguration::transverse);

    auto piezo = gaas_piezo();
    const auto matched = build_model(v1, probes, piezo, NoiseConfiguration::longitudinal);
    CHECK(matched.gamma == doctest::Approx(1.0 + phonon_delta(piezo)));
    CHECK(matched.kappa == doctest::Approx(matched.base_kappa * std::pow(5e12, matched.delta)).epsilon(1e-13));

    piezo.acoustic = AcousticMatch::reflecting;
    const auto reflecting = build_model(v1, probes, piezo, NoiseConfiguration::longitudinal);
    CHECK(reflecting.gamma == 1.0);
    CHECK(reflecting.kappa == lon.kappa);
}

TEST_CASE("spectrum evaluation") {
    NoiseFloorModel model;
    model.kappa = 3.5e-10;
    model.gamma = 1.0;
    model.fmax = Quantity(1e4, units::hertz());
    const std::vector<double> grid{0.1, 1.0, 10.0, 1e3, 1e5};
    const auto s1 = evaluate_spectrum(model, Quantity(1.0, units::volt()), grid);
    CHECK(s1[1].value == doctest::Approx(3.5e-10).epsilon(1e-14));
    const auto s2 = evaluate_spectrum(model, Quantity(2.0, units::volt()), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(s2[i].value == doctest::Approx(4 * s1[i].value).epsilon(1e-15));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double slope = std::log(s1[i].value / s1[i - 1].value) / std::log(grid[i] / grid[i - 1]);
        CHECK(slope == doctest::Approx(-1.0).epsilon(1e-12));
    }
    CHECK_FALSE(s1[3].above_fmax);
    CHECK(s1[4].above_fmax);
    CHECK(s1[4].excess_factor == doctest::Approx(100).epsilon(1e-13));

    // U0 given in statvolt is the same physical bias.
    const auto s3 = evaluate_spectrum(model, Quantity(1.0 / 299.792458, units::statvolt()), grid);
    CHECK(s3[1].value == doctest::Approx(3.5e-10).epsilon(1e-13));

    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(evaluate_spectrum(model, Quantity(1.0, units::volt()), bad), std::domain_error);
}

TEST_CASE("power-law ratio for delta > 0") {
    NoiseFloorModel model;
    model.kappa = 1e-9;
    model.delta = 0.14;
    model.gamma = 1.14;
    for (auto [f1, f2] : {std::pair{1.0, 10.0}, std::pair{0.3, 7e3}, std::pair{2e-3, 5.0}}) {
        const double r = model.spectral_density(1.0, f1) / model.spectral_density(1.0, f2);
        CHECK(std::abs(r / std::pow(f2 / f1, model.gamma) - 1.0) <= 1e-12);
    }
}

TEST_CASE("material validation") {
    auto m = ingaas();
    m.density = -1;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = ingaas();
    m.carriers[0].mass_ratio = 0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
