#include "flicker/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "flicker/spectral.hpp"

namespace flicker {

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : std::invalid_argument("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") +
                            ": " + message),
      line_(line),
      field_(std::move(field)) {}

const Material& Catalog::material(std::string_view name) const {
    for (const auto& m : materials)
        if (m.name == name) return m;
    throw std::invalid_argument("unknown material '" + std::string(name) + "'");
}

const CatalogEntry& Catalog::entry(std::string_view id) const {
    for (const auto& e : entries)
        if (e.id == id) return e;
    throw std::invalid_argument("unknown sample '" + std::string(id) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Field {
    std::size_t line;
    std::string key;
    std::string value;
};

struct Section {
    std::string kind;
    std::string name;
    std::size_t line;
    std::vector<Field> fields;
};

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> sections;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, "", "unterminated section header");
            auto inner = trim(line.substr(1, line.size() - 2));
            const auto space = inner.find_first_of(" \t");
            if (space == std::string_view::npos) throw ConfigError(lineno, "", "section header needs a kind and a name");
            Section s{std::string(inner.substr(0, space)), std::string(trim(inner.substr(space))), lineno, {}};
            if (s.kind != "material" && s.kind != "sample")
                throw ConfigError(lineno, "", "unknown section kind '" + s.kind + "'");
            sections.push_back(std::move(s));
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ConfigError(lineno, "", "expected 'key = value'");
            if (sections.empty()) throw ConfigError(lineno, "", "field outside of a section");
            sections.back().fields.push_back(
                {lineno, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))});
        }
        if (end == text.size()) break;
    }
    return sections;
}

double quantity_field(const Field& f, const Dimension& dim, const Unit& target) {
    Quantity q;
    try {
        q = parse_quantity(f.value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(f.line, f.key, e.what());
    }
    if (!(q.dim() == dim))
        throw ConfigError(f.line, f.key, "expected dimension " + dim.str() + ", got " + q.dim().str());
    return q.in(target);
}

double positive_length(const Field& f) {
    const double v = quantity_field(f, Dimension::of_length(), units::cm());
    if (!(v > 0.0)) throw ConfigError(f.line, f.key, "must be positive");
    return v;
}

double number_field(const Field& f) {
    return quantity_field(f, Dimension::dimensionless(), unit(""));
}

double positive_number(const Field& f) {
    const double v = number_field(f);
    if (!(v > 0.0)) throw ConfigError(f.line, f.key, "must be positive");
    return v;
}

Vec3 point_field(const Field& f) {
    std::istringstream in(f.value);
    double x = 0, y = 0, z = 0;
    std::string u;
    if (!(in >> x >> y >> z >> u)) throw ConfigError(f.line, f.key, "expected 'x y z unit'");
    try {
        const auto& un = unit(u);
        if (!(un.dim == Dimension::of_length())) throw ConfigError(f.line, f.key, "probe unit must be a length");
        return {x * un.factor, y * un.factor, z * un.factor};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(f.line, f.key, e.what());
    }
}

Material parse_material(const Section& s) {
    Material m;
    m.name = s.name;
    std::map<std::string, bool> seen;
    for (const auto& f : s.fields) {
        seen[f.key] = true;
        if (f.key == "carrier") {
            std::istringstream in(f.value);
            CarrierSpecies c;
            if (!(in >> c.label >> c.mass_ratio)) throw ConfigError(f.line, f.key, "expected '<label> <mass/m0>'");
            if (!(c.mass_ratio > 0.0)) throw ConfigError(f.line, f.key, "effective mass must be positive");
            m.carriers.push_back(c);
        } else if (f.key == "h14") {
            m.h14_statvolt_per_cm = quantity_field(f, units::statvolt_per_cm().dim, units::statvolt_per_cm());
        } else if (f.key == "matrix_element_sq") {
            const auto& u = unit("erg2/cm2");
            m.matrix_element_sq = quantity_field(f, u.dim, u);
        } else if (f.key == "delta") {
            const double d = number_field(f);
            if (d < 0.0) throw ConfigError(f.line, f.key, "must be >= 0");
            m.measured_delta = d;
        } else if (f.key == "density") {
            const auto& u = unit("g/cm3");
            m.density = quantity_field(f, u.dim, u);
        } else if (f.key == "sound_velocity") {
            const auto& u = unit("cm/s");
            m.sound_velocity = quantity_field(f, u.dim, u);
        } else if (f.key == "lattice_constant") {
            m.lattice_constant = positive_length(f);
        } else if (f.key == "density_of_states") {
            m.density_of_states = quantity_field(f, units::per_erg_cm3().dim, units::per_erg_cm3());
        } else if (f.key == "acoustic") {
            if (f.value == "matched") m.acoustic = AcousticMatch::matched;
            else if (f.value == "reflecting") m.acoustic = AcousticMatch::reflecting;
            else throw ConfigError(f.line, f.key, "expected 'matched' or 'reflecting'");
        } else if (f.key == "carrier_sum") {
            if (f.value == "all") m.carrier_sum = CarrierSum::all_species;
            else if (f.value == "lightest") m.carrier_sum = CarrierSum::lightest_only;
            else throw ConfigError(f.line, f.key, "expected 'all' or 'lightest'");
        } else {
            throw ConfigError(f.line, f.key, "unknown material field");
        }
    }
    for (const char* required : {"carrier", "density", "sound_velocity", "lattice_constant", "density_of_states"})
        if (!seen.count(required)) throw ConfigError(s.line, required, "missing in material '" + s.name + "'");
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.line, "", e.what());
    }
    return m;
}

CatalogEntry parse_sample(const Section& s, const std::vector<Material>& materials) {
    CatalogEntry e;
    e.id = s.name;
    std::optional<double> length, width, thickness;
    std::optional<Vec3> p1, p2, p1_tr, p2_tr;
    std::optional<std::string> material_name;
    std::size_t material_line = s.line;
    for (const auto& f : s.fields) {
        const auto& k = f.key;
        if (k == "material") {
            material_name = f.value;
            material_line = f.line;
        } else if (k == "length") length = positive_length(f);
        else if (k == "width") width = positive_length(f);
        else if (k == "thickness") thickness = positive_length(f);
        else if (k == "probe1") p1 = point_field(f);
        else if (k == "probe2") p2 = point_field(f);
        else if (k == "probe1_tr") p1_tr = point_field(f);
        else if (k == "probe2_tr") p2_tr = point_field(f);
        else if (k == "transverse_probes") {
            if (f.value == "longitudinal") e.transverse_rule = TransverseProbeRule::same_as_longitudinal;
            else if (f.value == "side_faces") e.transverse_rule = TransverseProbeRule::side_faces;
            else throw ConfigError(f.line, k, "expected 'longitudinal' or 'side_faces'");
        } else if (k == "g" || k == "g_tr") {
            std::optional<double> v;
            if (f.value != "computed") {
                v = quantity_field(f, units::per_cm().dim, units::per_cm());
                if (!(*v > 0.0)) throw ConfigError(f.line, k, "must be positive");
            }
            (k == "g" ? e.g_override : e.g_tr_override) = v;
        } else if (k == "g_ref") e.g_ref = quantity_field(f, units::per_cm().dim, units::per_cm());
        else if (k == "g_tr_ref") e.g_tr_ref = quantity_field(f, units::per_cm().dim, units::per_cm());
        else if (k == "kappa_th_ref") e.kappa_th_ref = positive_number(f);
        else if (k == "kappa_th_ref_tr") e.kappa_th_ref_tr = positive_number(f);
        else if (k == "kappa_exp") e.kappa_exp = positive_number(f);
        else if (k == "kappa_exp_tr") e.kappa_exp_tr = positive_number(f);
        else if (k == "gamma_exp") e.gamma_exp = positive_number(f);
        else if (k == "delta_exp") e.delta_exp = number_field(f);
        else if (k == "note") e.notes.push_back(f.value);
        else throw ConfigError(f.line, k, "unknown sample field");
    }
    if (!material_name) throw ConfigError(s.line, "material", "missing in sample '" + s.name + "'");
    if (!length) throw ConfigError(s.line, "length", "missing in sample '" + s.name + "'");
    if (!width) throw ConfigError(s.line, "width", "missing in sample '" + s.name + "'");
    if (!thickness) throw ConfigError(s.line, "thickness", "missing in sample '" + s.name + "'");

    auto mat = std::find_if(materials.begin(), materials.end(),
                            [&](const Material& m) { return m.name == *material_name; });
    if (mat == materials.end())
        throw ConfigError(material_line, "material", "unknown material '" + *material_name + "'");
    e.material = *mat;
    e.geometry = SampleGeometry(*length, *width, *thickness);

    if (p1.has_value() != p2.has_value()) throw ConfigError(s.line, "probe1", "probe1 and probe2 go together");
    e.longitudinal_probes = p1 ? ProbePair{*p1, *p2} : end_face_probes(e.geometry);
    if (p1_tr.has_value() != p2_tr.has_value())
        throw ConfigError(s.line, "probe1_tr", "probe1_tr and probe2_tr go together");
    if (p1_tr) {
        e.transverse_rule = TransverseProbeRule::explicit_points;
        e.transverse_probes = {*p1_tr, *p2_tr};
    } else if (e.transverse_rule == TransverseProbeRule::side_faces) {
        e.transverse_probes = side_face_probes(e.geometry);
    } else {
        e.transverse_probes = e.longitudinal_probes;
    }
    try {
        validate_probes(e.geometry, e.longitudinal_probes);
        validate_probes(e.geometry, e.transverse_probes);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(s.line, "probe", ex.what());
    }
    return e;
}

}  // namespace

Catalog load_catalog(std::string_view config_text) {
    const auto sections = split_sections(config_text);
    Catalog catalog;
    for (const auto& s : sections) {
        if (s.kind != "material") continue;
        for (const auto& m : catalog.materials)
            if (m.name == s.name) throw ConfigError(s.line, "", "duplicate material '" + s.name + "'");
        catalog.materials.push_back(parse_material(s));
    }
    for (const auto& s : sections) {
        if (s.kind != "sample") continue;
        for (const auto& e : catalog.entries)
            if (e.id == s.name) throw ConfigError(s.line, "", "duplicate sample '" + s.name + "'");
        catalog.entries.push_back(parse_sample(s, catalog.materials));
    }
    return catalog;
}

Catalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_catalog(ss.str());
}

// ------------------------------------------------------------------ report

namespace {

GeometricFactor supplied_factor(double per_cm, NoiseConfiguration c) {
    return {Quantity(per_cm, units::per_cm()), c, 0.0};
}

ReportRow build_row(const CatalogEntry& e, const ReportOptions& opt) {
    ReportRow row;
    row.sample_id = e.id;
    row.configuration = opt.configuration;

    auto pick = [&](const std::optional<double>& ref, const std::optional<double>& override_value,
                    const std::function<GeometricFactor()>& compute, NoiseConfiguration c) {
        if (opt.g_source == GSource::reference && ref) return supplied_factor(*ref, c);
        if (override_value) return supplied_factor(*override_value, c);
        return compute();
    };
    const auto g = pick(e.g_ref, e.g_override, [&] {
        return geometric_factor(e.geometry, e.longitudinal_probes, opt.method);
    }, NoiseConfiguration::longitudinal);
    const auto g_tr = pick(e.g_tr_ref, e.g_tr_override, [&] {
        return geometric_factor_transverse(e.geometry, e.transverse_probes, opt.method);
    }, NoiseConfiguration::transverse);
    row.g = g.per_cm();
    row.g_tr = g_tr.per_cm();

    const bool longitudinal = opt.configuration == NoiseConfiguration::longitudinal;
    const auto model = build_model(longitudinal ? g : g_tr, e.geometry, e.material);
    row.kappa_th = model.kappa;
    row.gamma = model.gamma;
    row.fmax_hz = model.fmax.cgs();
    row.annotations = model.annotations;

    row.kappa_exp = longitudinal ? e.kappa_exp : e.kappa_exp_tr;
    if (row.kappa_exp) row.ratio = *row.kappa_exp / row.kappa_th;

    // Published kappa_th should follow from the published g with the same formula.
    const auto& kref = longitudinal ? e.kappa_th_ref : e.kappa_th_ref_tr;
    const auto& gref = longitudinal ? e.g_ref : e.g_tr_ref;
    if (kref && gref) {
        const double from_ref = model.kappa * (*gref / (longitudinal ? row.g : row.g_tr));
        const double dev = *kref / from_ref - 1.0;
        if (std::abs(dev) > 0.10)
            row.annotations.push_back("published kappa_th " + format_sig6(*kref) + " inconsistent with published g " +
                                      format_sig6(*gref) + " (formula gives " + format_sig6(from_ref) + ")");
    }
    if (e.delta_exp && *e.delta_exp > 0.0) {
        const double mag = corner_magnification(model.fstar.cgs(), *e.delta_exp);
        row.annotations.push_back("measured delta " + format_sig6(*e.delta_exp) + " would scale kappa_th by (f*)^delta = " +
                                  format_sig6(mag));
    }
    for (const auto& n : e.notes) row.annotations.push_back(n);
    return row;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Report reproduce_tables(const Catalog& catalog, const ReportOptions& options) {
    if (catalog.entries.empty()) throw std::invalid_argument("reproduce_tables: catalog has no samples");
    Report report;
    for (const auto& e : catalog.entries) {
        try {
            report.rows.push_back(build_row(e, options));
        } catch (const std::exception& ex) {
            throw std::runtime_error("sample '" + e.id + "': " + ex.what());
        }
    }
    return report;
}

void write_report_csv(std::ostream& out, const Report& report) {
    out << "sample,mode,g_per_cm,g_tr_per_cm,kappa_th,kappa_exp,ratio_exp_th,gamma,fmax_hz,annotations\n";
    for (const auto& r : report.rows) {
        std::string notes;
        for (const auto& a : r.annotations) notes += (notes.empty() ? "" : "; ") + a;
        out << csv_escape(r.sample_id) << ',' << to_string(r.configuration) << ',' << format_sig6(r.g) << ','
            << format_sig6(r.g_tr) << ',' << format_sig6(r.kappa_th) << ','
            << (r.kappa_exp ? format_sig6(*r.kappa_exp) : "") << ',' << (r.ratio ? format_sig6(*r.ratio) : "")
            << ',' << format_sig6(r.gamma) << ',' << format_sig6(r.fmax_hz) << ',' << csv_escape(notes) << '\n';
    }
}

// ------------------------------------------------------------ verification

bool VerificationReport::all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.passed; });
}

namespace {

VerificationRow compare(std::string name, double measured, double expected, double tolerance) {
    const double err = expected != 0.0 ? std::abs(measured / expected - 1.0) : std::abs(measured);
    return {std::move(name), measured, expected, err, tolerance, err <= tolerance};
}

}  // namespace

VerificationReport run_verification_suite(const VerificationOptions& o) {
    constexpr double pi = std::numbers::pi;
    VerificationReport rep;

    {
        const auto cov = CovarianceModel::log_law(o.tau0, o.a_cov);
        const double s = sigma_spectrum(cov, o.log_law_f, o.log_law_tm);
        rep.rows.push_back(compare("log-law sigma vs -1/|f| (f*tau0=" + format_sig6(o.log_law_f * o.tau0) + ")", s,
                                   -1.0 / std::abs(o.log_law_f), 0.02));
    }
    {
        const auto cov = CovarianceModel::exponential(o.tau0);
        const double w = 2.0 * pi * o.exp_f;
        const double s = sigma_spectrum(cov, o.exp_f, o.exp_tm);
        rep.rows.push_back(compare("exponential sigma vs Lorentzian", s, 2.0 * o.tau0 / (1.0 + w * w * o.tau0 * o.tau0),
                                   0.01));
    }
    {
        const auto cov = CovarianceModel::constant(1.0);
        const double s = sigma_spectrum(cov, o.exp_f, o.exp_tm);
        rep.rows.push_back(compare("constant covariance sigma vanishes", s, 0.0, 1e-2));
    }
    for (double product : o.identity_products) {
        const double tm = product / std::abs(o.identity_omega);
        const auto id = wk_identity_check(o.identity_omega, tm);
        rep.rows.push_back(compare("log identity difference, omega*t_m=" + format_sig6(product), id.difference,
                                   id.target, 0.01));
    }
    {
        const double w = 1.0, tm = 10.0;
        const auto v = sign_kernel_integral(w, tm);
        rep.rows.push_back(compare("sign kernel, omega=1 t_m=10", v.imag(), 2.0 * (1.0 - std::cos(w * tm)) / w, 1e-10));
    }
    return rep;
}

void write_verification_csv(std::ostream& out, const VerificationReport& report) {
    out << "case,measured,expected,error,tolerance,status\n";
    for (const auto& r : report.rows)
        out << csv_escape(r.name) << ',' << format_sig6(r.measured) << ',' << format_sig6(r.expected) << ','
            << format_sig6(r.error) << ',' << format_sig6(r.tolerance) << ',' << (r.passed ? "pass" : "fail") << '\n';
}

}  // namespace flicker
