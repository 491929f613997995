#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flicker/geometry.hpp"
#include "flicker/noise_floor.hpp"

namespace flicker {

/// Config error carrying the offending line and field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::size_t line, std::string field, const std::string& message);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

enum class TransverseProbeRule { same_as_longitudinal, side_faces, explicit_points };

struct CatalogEntry {
    std::string id;
    SampleGeometry geometry{1.0, 1.0, 1.0};
    ProbePair longitudinal_probes;
    ProbePair transverse_probes;
    TransverseProbeRule transverse_rule = TransverseProbeRule::same_as_longitudinal;
    Material material;

    // `g = <value>` overrides; absent means computed from dimensions.
    std::optional<double> g_override;
    std::optional<double> g_tr_override;
    // Published reference values (secondary-source data).
    std::optional<double> g_ref;
    std::optional<double> g_tr_ref;
    std::optional<double> kappa_th_ref;
    std::optional<double> kappa_th_ref_tr;
    std::optional<double> kappa_exp;
    std::optional<double> kappa_exp_tr;
    std::optional<double> gamma_exp;
    std::optional<double> delta_exp;
    std::vector<std::string> notes;
};

struct Catalog {
    std::vector<Material> materials;
    std::vector<CatalogEntry> entries;

    [[nodiscard]] const Material& material(std::string_view name) const;
    [[nodiscard]] const CatalogEntry& entry(std::string_view id) const;
};

/// Parse the sectioned key = value format (see data/*.cfg for the schema).
Catalog load_catalog(std::string_view config_text);
Catalog load_catalog_file(const std::string& path);

enum class GSource { configured, reference };

struct ReportOptions {
    NoiseConfiguration configuration = NoiseConfiguration::longitudinal;
    GSource g_source = GSource::configured;
    IntegrationMethod method = IntegrationMethod::closed_form;
};

struct ReportRow {
    std::string sample_id;
    NoiseConfiguration configuration = NoiseConfiguration::longitudinal;
    double g = 0.0;     // cm^-1
    double g_tr = 0.0;  // cm^-1
    double kappa_th = 0.0;
    std::optional<double> kappa_exp;
    std::optional<double> ratio;  // kappa_exp / kappa_th
    double gamma = 1.0;
    double fmax_hz = 0.0;
    std::vector<std::string> annotations;
};

struct Report {
    std::vector<ReportRow> rows;
};

Report reproduce_tables(const Catalog& catalog, const ReportOptions& options = {});

/// CSV with columns sample,mode,g_per_cm,g_tr_per_cm,kappa_th,kappa_exp,
/// ratio_exp_th,gamma,fmax_hz,annotations.
void write_report_csv(std::ostream& out, const Report& report);

struct VerificationOptions {
    double tau0 = 1.0;    // s
    double a_cov = 1.0;
    double log_law_f = 1e-3;  // Hz
    double log_law_tm = 1e6;  // s
    double exp_f = 0.05;      // Hz
    double exp_tm = 1e4;      // s
    double identity_omega = 1.0;
    std::vector<double> identity_products{1e3, 1e4, 1e5};  // omega * t_m
};

struct VerificationRow {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double error = 0.0;  // relative, or absolute when expected == 0
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    [[nodiscard]] bool all_passed() const;
};

VerificationReport run_verification_suite(const VerificationOptions& options = {});
void write_verification_csv(std::ostream& out, const VerificationReport& report);

}  // namespace flicker
