#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "flicker/geometry.hpp"
#include "flicker/noise_floor.hpp"
#include "flicker/spectral.hpp"
#include "flicker/workbench.hpp"

namespace py = pybind11;
using namespace flicker;

namespace {

using Point = std::tuple<double, double, double>;
using Probes = std::pair<Point, Point>;

Vec3 vec(const Point& p) { return {std::get<0>(p), std::get<1>(p), std::get<2>(p)}; }
Point tup(const Vec3& v) { return {v.x, v.y, v.z}; }
Probes tup(const ProbePair& p) { return {tup(p.first), tup(p.second)}; }

ProbePair probes_or_default(const SampleGeometry& g, const std::optional<Probes>& p) {
    return p ? ProbePair{vec(p->first), vec(p->second)} : end_face_probes(g);
}

IntegrationMethod method_of(const std::string& m) {
    if (m == "closed") return IntegrationMethod::closed_form;
    if (m == "quadrature") return IntegrationMethod::quadrature;
    throw std::invalid_argument("method must be 'closed' or 'quadrature'");
}

GeometricFactor per_cm(double g) { return {Quantity(g, units::per_cm()), NoiseConfiguration::longitudinal, 0.0}; }

py::dict row_dict(const ReportRow& r) {
    py::dict d;
    d["sample"] = r.sample_id;
    d["mode"] = std::string(to_string(r.configuration));
    d["g"] = r.g;
    d["g_tr"] = r.g_tr;
    d["kappa_th"] = r.kappa_th;
    d["kappa_exp"] = r.kappa_exp;
    d["ratio"] = r.ratio;
    d["gamma"] = r.gamma;
    d["fmax_hz"] = r.fmax_hz;
    d["annotations"] = r.annotations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_flicker, m) {
    m.doc() = "Quantum lower bound on 1/f noise (CGS units)";

    py::class_<SampleGeometry>(m, "SampleGeometry")
        .def(py::init<double, double, double>(), py::arg("length"), py::arg("width"), py::arg("thickness"))
        .def_property_readonly("length", &SampleGeometry::length)
        .def_property_readonly("width", &SampleGeometry::width)
        .def_property_readonly("thickness", &SampleGeometry::thickness)
        .def_property_readonly("volume", &SampleGeometry::volume);

    m.def("end_face_probes", [](const SampleGeometry& g) { return tup(end_face_probes(g)); });
    m.def("side_face_probes", [](const SampleGeometry& g) { return tup(side_face_probes(g)); });

    m.def(
        "geometric_factor",
        [](const SampleGeometry& g, std::optional<Probes> probes, const std::string& method) {
            return geometric_factor(g, probes_or_default(g, probes), method_of(method)).per_cm();
        },
        py::arg("geometry"), py::arg("probes") = py::none(), py::arg("method") = "closed",
        "g in 1/cm; probes default to the end-face centres");
    m.def(
        "geometric_factor_transverse",
        [](const SampleGeometry& g, std::optional<Probes> probes, const std::string& method) {
            return geometric_factor_transverse(g, probes_or_default(g, probes), method_of(method)).per_cm();
        },
        py::arg("geometry"), py::arg("probes") = py::none(), py::arg("method") = "closed");

    py::class_<Material>(m, "Material")
        .def(py::init<>())
        .def_readwrite("name", &Material::name)
        .def_property(
            "carriers",
            [](const Material& mat) {
                std::vector<std::pair<std::string, double>> out;
                for (const auto& c : mat.carriers) out.emplace_back(c.label, c.mass_ratio);
                return out;
            },
            [](Material& mat, const std::vector<std::pair<std::string, double>>& cs) {
                mat.carriers.clear();
                for (const auto& [label, mass] : cs) mat.carriers.push_back({label, mass});
            })
        .def_readwrite("h14_statvolt_per_cm", &Material::h14_statvolt_per_cm)
        .def_readwrite("matrix_element_sq", &Material::matrix_element_sq)
        .def_readwrite("measured_delta", &Material::measured_delta)
        .def_readwrite("density", &Material::density)
        .def_readwrite("sound_velocity", &Material::sound_velocity)
        .def_readwrite("lattice_constant", &Material::lattice_constant)
        .def_readwrite("density_of_states", &Material::density_of_states)
        .def_property(
            "reflecting", [](const Material& mat) { return mat.acoustic == AcousticMatch::reflecting; },
            [](Material& mat, bool r) { mat.acoustic = r ? AcousticMatch::reflecting : AcousticMatch::matched; })
        .def_property(
            "lightest_only", [](const Material& mat) { return mat.carrier_sum == CarrierSum::lightest_only; },
            [](Material& mat, bool l) { mat.carrier_sum = l ? CarrierSum::lightest_only : CarrierSum::all_species; });

    py::register_exception<MissingPiezoData>(m, "MissingPiezoData", PyExc_RuntimeError);

    m.def(
        "kappa", [](double g_per_cm, const Material& mat) { return kappa(per_cm(g_per_cm), mat); }, py::arg("g"),
        py::arg("material"), "noise magnitude without the (f*)^delta factor");
    m.def("phonon_delta", &phonon_delta, py::arg("material"));
    m.def("corner_magnification", &corner_magnification, py::arg("fstar_hz"), py::arg("delta"));

    py::class_<ValidityBound>(m, "ValidityBound")
        .def(py::init<double, double>(), py::arg("density_of_states"), py::arg("volume_cm3"))
        .def_property_readonly("fmax_hz", &ValidityBound::fmax_hz)
        .def_property_readonly("level_time", &ValidityBound::level_time)
        .def("excess_factor", &ValidityBound::excess_factor, py::arg("f_hz"));

    py::class_<CovarianceModel>(m, "CovarianceModel")
        .def_static("log_law", &CovarianceModel::log_law, py::arg("tau0"), py::arg("a"), py::arg("amplitude") = 1.0)
        .def_static("exponential", &CovarianceModel::exponential, py::arg("tau0"), py::arg("amplitude") = 1.0)
        .def_static("constant", &CovarianceModel::constant, py::arg("value"))
        .def_static("user", &CovarianceModel::user, py::arg("fn"), py::arg("scale"))
        .def("__call__", &CovarianceModel::operator());

    m.def("sigma_spectrum", &sigma_spectrum, py::arg("covariance"), py::arg("f_hz"), py::arg("t_m"));
    m.def(
        "wk_identity_check",
        [](double omega, double t_m) {
            const auto r = wk_identity_check(omega, t_m);
            py::dict d;
            d["lhs1"] = r.lhs1;
            d["lhs2"] = r.lhs2;
            d["difference"] = r.difference;
            d["target"] = r.target;
            return d;
        },
        py::arg("omega"), py::arg("t_m"));

    m.def(
        "synthesize_power_law_noise",
        [](double gamma, std::size_t n, double dt, std::uint64_t seed) {
            const auto rec = synthesize_power_law_noise(gamma, n, dt, seed);
            return std::vector<double>(rec.samples().begin(), rec.samples().end());
        },
        py::arg("gamma"), py::arg("n"), py::arg("dt"), py::arg("seed"));
    m.def(
        "power_spectrum_estimate",
        [](const std::vector<std::vector<double>>& records, double dt, const std::vector<double>& grid) {
            std::vector<SignalRecord> ens;
            ens.reserve(records.size());
            for (const auto& r : records) ens.emplace_back(r, dt);
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& p : power_spectrum_estimate(ens, grid).points) out.emplace_back(p.f, p.value, p.std_error);
            return out;
        },
        py::arg("records"), py::arg("dt"), py::arg("f_grid"), "list of (f, S, stderr)");
    m.def(
        "log_log_slope",
        [](const std::vector<double>& f, const std::vector<double>& s) {
            if (f.size() != s.size()) throw std::invalid_argument("f and S differ in length");
            SpectrumSeries series;
            for (std::size_t i = 0; i < f.size(); ++i) series.points.push_back({f[i], s[i], 0.0});
            return log_log_slope(series);
        },
        py::arg("f"), py::arg("S"));

    py::class_<Catalog>(m, "Catalog")
        .def_property_readonly("sample_ids",
                               [](const Catalog& c) {
                                   std::vector<std::string> ids;
                                   for (const auto& e : c.entries) ids.push_back(e.id);
                                   return ids;
                               })
        .def("__len__", [](const Catalog& c) { return c.entries.size(); });

    m.def("load_catalog", &load_catalog, py::arg("text"));
    m.def(
        "reproduce_tables",
        [](const Catalog& cat, const std::string& mode, bool reference_g) {
            ReportOptions opt;
            opt.configuration = parse_configuration(mode);
            opt.g_source = reference_g ? GSource::reference : GSource::configured;
            py::list rows;
            for (const auto& r : reproduce_tables(cat, opt).rows) rows.append(row_dict(r));
            return rows;
        },
        py::arg("catalog"), py::arg("mode") = "longitudinal", py::arg("reference_g") = false);
    m.def("run_verification_suite", [] {
        const auto rep = run_verification_suite();
        py::list rows;
        for (const auto& r : rep.rows) {
            py::dict d;
            d["case"] = r.name;
            d["measured"] = r.measured;
            d["expected"] = r.expected;
            d["error"] = r.error;
            d["tolerance"] = r.tolerance;
            d["passed"] = r.passed;
            rows.append(d);
        }
        return rows;
    });
}
