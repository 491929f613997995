import math
import pathlib

import pytest

import flicker

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def ingaas():
    m = flicker.Material()
    m.name = "InGaAs"
    m.carriers = [("n", 0.06), ("p", 0.09)]
    m.density = 5.3
    m.sound_velocity = 2.5e5
    m.lattice_constant = 5e-8
    m.density_of_states = 1e22 / 1.602176634e-12
    return m


def test_v1_geometric_factor_and_kappa():
    v1 = flicker.SampleGeometry(2.2e-4, 1e-4, 1e-6)
    g = flicker.geometric_factor(v1)
    assert g == pytest.approx(9609.606705536, rel=1e-9)
    assert flicker.geometric_factor(v1, method="quadrature") == pytest.approx(g, rel=1e-6)
    assert flicker.geometric_factor_transverse(v1) == pytest.approx(g * (1 / 2.2) ** 2, rel=1e-12)
    assert flicker.kappa(9630, ingaas()) == pytest.approx(3.5e-10, rel=0.01)


def test_probes_round_trip():
    geom = flicker.SampleGeometry(2.0, 1.0, 0.5)
    first, second = flicker.end_face_probes(geom)
    assert first == (0.0, 0.5, 0.25)
    assert second == (2.0, 0.5, 0.25)
    side = flicker.side_face_probes(geom)
    assert flicker.geometric_factor(geom, side) > 0


def test_missing_piezo_data_and_delta():
    m = ingaas()
    with pytest.raises(flicker.MissingPiezoData):
        flicker.phonon_delta(m)
    m.h14_statvolt_per_cm = 1.4e9 / 29979.2458
    assert flicker.phonon_delta(m) == pytest.approx(0.14, rel=0.05)
    m.reflecting = True
    assert flicker.phonon_delta(m) == 0.0
    assert flicker.corner_magnification(5e12, 0.05) == pytest.approx(4.3, rel=0.01)


def test_validity_bound():
    b = flicker.ValidityBound(1e22 / 1.602176634e-12, 1e-12)
    assert b.fmax_hz == pytest.approx(2.4e4, rel=0.02)
    assert b.excess_factor(10 * b.fmax_hz) == pytest.approx(100, rel=1e-12)


def test_spectral_identities():
    cov = flicker.CovarianceModel.exponential(1.0)
    w = 2 * math.pi * 0.05
    assert flicker.sigma_spectrum(cov, 0.05, 1e4) == pytest.approx(2 / (1 + w * w), rel=0.01)
    with pytest.raises(ValueError):
        flicker.sigma_spectrum(cov, 0.0, 1e4)
    r = flicker.wk_identity_check(1.0, 1e4)
    assert r["difference"] == pytest.approx(-math.pi, rel=0.01)


def test_synthesis_and_estimate():
    records = [flicker.synthesize_power_law_noise(1.0, 2048, 1.0, seed) for seed in range(60)]
    assert records[0] == flicker.synthesize_power_law_noise(1.0, 2048, 1.0, 0)
    grid = [5e-3 * (20 ** (k / 9)) for k in range(10)]
    pts = flicker.power_spectrum_estimate(records, 1.0, grid)
    assert all(s >= 0 for _, s, _ in pts)
    slope = flicker.log_log_slope([f for f, _, _ in pts], [s for _, s, _ in pts])
    assert slope == pytest.approx(-1.0, abs=0.1)


def test_catalog_report():
    cat = flicker.load_catalog((DATA / "ingaas.cfg").read_text())
    assert len(cat) == 5
    assert cat.sample_ids[0] == "V1"
    rows = flicker.reproduce_tables(cat, "longitudinal", reference_g=True)
    assert rows[0]["kappa_th"] == pytest.approx(3.50188e-10, rel=1e-5)
    assert rows[0]["kappa_exp"] == 1.75e-9
    with pytest.raises(ValueError):
        flicker.load_catalog("[sample x]\nmaterial = none\n")


def test_verification_suite():
    rows = flicker.run_verification_suite()
    assert rows and all(r["passed"] for r in rows)
