#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flametemp/aft_complete.hpp"
#include "flametemp/equilibrium.hpp"
#include "flametemp/stoich.hpp"
#include "flametemp/thermo_db.hpp"

namespace flametemp {

enum class Fuel { CH4, H2 };
enum class Mode { Complete, Equilibrium };

std::string_view to_string(Fuel fuel);
std::string_view to_string(Mode mode);
std::optional<Fuel> parse_fuel(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);
std::string_view species_name(Fuel fuel);

struct CaseSpec {
    Fuel fuel = Fuel::CH4;
    Oxidizer oxidizer = Oxidizer::PureO2;
    Mode mode = Mode::Complete;
    double t0 = kReferenceTemperature;
    double pressure = kStandardPressure;
    bool patch_n2 = true;

    void validate() const;
    std::string label() const;
};

/// Benchmark flame temperatures for one (fuel, oxidizer, mode) case.
struct ReferenceRow {
    Fuel fuel;
    /// PureO2 or Air3; air rows also serve AIR4 runs.
    Oxidizer oxidizer;
    Mode mode;
    /// CEARUN (9-coefficient data, 166-species pool), K.
    double cearun_K;
    /// GRI-Mech 3.0: Excel goal seek (complete) or Cantera (equilibrium), K.
    double grimech_K;
    /// Published |grimech - cearun| / cearun, percent.
    double published_deviation_pct;
    std::string_view grimech_tool;
};

/// The eight published benchmark rows, in table order.
std::span<const ReferenceRow> reference_table();
const ReferenceRow* find_reference(Fuel fuel, Oxidizer oxidizer, Mode mode);
/// |t - cearun| / cearun * 100.
double deviation_percent(double t, double cearun_K);
/// Provenance text for the compiled-in benchmark values.
std::string_view reference_explanation();

struct SpeciesFraction {
    std::string name;
    double mole_fraction;
};

struct CaseResult {
    CaseSpec spec;
    double t_ad = 0.0;
    /// Descending mole fraction, ties by name; values below 1e-12 reported as 0.
    std::vector<SpeciesFraction> products;
    std::optional<ReferenceRow> reference;
    /// |t_ad - cearun| / cearun * 100.
    double deviation_cearun_pct = 0.0;
    /// |t_ad - grimech| / cearun * 100.
    double deviation_grimech_pct = 0.0;
    bool extrapolated = false;
    int iterations = 0;
    int outer_iterations = 0;
    double residual = 0.0;
    double max_element_residual = 0.0;
    double max_stationarity_residual = 0.0;
    std::vector<std::string> warnings;
};

/// Stoichiometric reactants for a case (one mole of fuel).
MixtureSpec case_reactants(const CaseSpec& spec, const ThermoDatabase& db);

/// Full equilibrium problem (HP) for a case, starting from complete combustion.
EquilibriumProblem case_equilibrium_problem(const CaseSpec& spec, const ThermoDatabase& db);

/// Runs one case against `db`, applying the N2 patch first when requested.
CaseResult run_case(const CaseSpec& spec, const ThermoDatabase& db, const SolverOptions& aft_opts = {},
                    const EquilibriumOptions& eq_opts = {});

struct TableRow {
    CaseSpec spec;
    ReferenceRow reference;
    std::optional<CaseResult> result;
    std::string error;
    /// Exit code the failure maps to (0 when the case succeeded).
    int error_code = 0;
};

/// Runs the eight benchmark cases concurrently; rows keep table order.
std::vector<TableRow> run_table(const ThermoDatabase& db, bool patch_n2 = true);

/// Exit code for an exception raised by the library: 3 parse, 4 solver, 1 other.
int exit_code_for(const std::exception& e);

// ---------------------------------------------------------------------------

struct NamedDatabase {
    std::string label;
    ThermoDatabase db;
};

struct CurveRow {
    std::string database;
    std::string species;
    double T = 0.0;
    double h_over_RT = 0.0;
    double h_J_per_mol = 0.0;
    bool extrapolated = false;
};

/// Normalized and dimensional enthalpy of each species over [t_start, t_stop].
std::vector<CurveRow> enthalpy_curves(std::span<const NamedDatabase> databases,
                                      std::span<const std::string> species, double t_start,
                                      double t_stop, double t_step);

/// Species plotted against temperature in the benchmark figures.
std::span<const std::string_view> curve_species();

// ---------------------------------------------------------------------------

struct SpeciesValidation {
    std::string name;
    double t_min, t_mid, t_max;
    double cp_jump;
    double h_jump;
    double s_jump;
    bool cp_positive;
    double cp_min;
};

struct ReferenceEnthalpy {
    std::string name;
    double h_J_per_mol;
    bool flagged;
};

struct ValidationReport {
    std::vector<SpeciesValidation> species;
    std::vector<ReferenceEnthalpy> reference_enthalpies;
    double worst_jump = 0.0;
    std::string worst_species;
    bool continuity_ok = true;
};

inline constexpr double kContinuityTolerance = 1e-3;
/// |H(298.15 K)| above this (J/mol) is flagged for elemental reference species.
inline constexpr double kReferenceEnthalpyFlag = 0.05;

ValidationReport validate_database(const ThermoDatabase& db);

} // namespace flametemp
