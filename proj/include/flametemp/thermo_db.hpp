#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flametemp {

/// Universal gas constant used with the 7-coefficient data, J/(mol K).
inline constexpr double kGasConstant = 8.314510;
inline constexpr double kReferenceTemperature = 298.15;
/// Standard-state pressure (1 atm), Pa.
inline constexpr double kStandardPressure = 101325.0;
/// Corrected low-range enthalpy constant for N2 that zeroes H(298.15 K).
inline constexpr double kPatchedN2LowA6 = -1021.07188;

/// Two-range NASA 7-coefficient fit. Coefficient k of each set is a_{k+1}.
struct NasaPoly7 {
    double t_min = 0.0;
    double t_mid = 0.0;
    double t_max = 0.0;
    std::array<double, 7> low{};
    std::array<double, 7> high{};

    /// Low set below t_mid, high set at and above it.
    const std::array<double, 7>& coefficients_at(double T) const noexcept
    {
        return T < t_mid ? low : high;
    }
    bool in_range(double T) const noexcept { return T >= t_min && T <= t_max; }

    bool operator==(const NasaPoly7&) const = default;
};

struct SpeciesRecord {
    std::string name;
    std::map<std::string, double> composition;
    char phase = 'G';
    NasaPoly7 poly;
    /// Free-form provenance field (date/source code, columns 19-24).
    std::string note;
    /// 1-based line of the record's first line; 0 when not parsed from text.
    int source_line = 0;

    /// Field-for-field comparison; `source_line` is diagnostic only and ignored.
    bool operator==(const SpeciesRecord& other) const
    {
        return name == other.name && composition == other.composition && phase == other.phase &&
               poly == other.poly && note == other.note;
    }

    double atoms(std::string_view element) const;
};

/// Immutable, indexed species collection. Lookups are case-insensitive.
class ThermoDatabase {
public:
    ThermoDatabase() = default;
    /// Throws DuplicateSpecies or InvalidInput on an invalid record set.
    explicit ThermoDatabase(std::vector<SpeciesRecord> species);

    std::span<const SpeciesRecord> species() const noexcept { return species_; }
    std::size_t size() const noexcept { return species_.size(); }
    const SpeciesRecord& operator[](std::size_t i) const { return species_[i]; }

    /// Sorted element symbols appearing in any species.
    const std::vector<std::string>& elements() const noexcept { return elements_; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;
    const SpeciesRecord& at(std::string_view name) const { return species_[index_of(name)]; }
    bool contains(std::string_view name) const { return find(name).has_value(); }

    /// Returns a copy with one record replaced (matched by name).
    ThermoDatabase with_record(const SpeciesRecord& record) const;

    bool operator==(const ThermoDatabase& other) const { return species_ == other.species_; }

private:
    std::vector<SpeciesRecord> species_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::vector<std::string> elements_;
};

std::string to_upper(std::string_view s);

/// Parses CHEMKIN THERMO fixed-column text. A missing END line is tolerated and
/// reported through `warnings` when provided.
ThermoDatabase parse_thermo_text(std::string_view text, std::vector<std::string>* warnings = nullptr);
ThermoDatabase load_thermo_file(const std::filesystem::path& path,
                                std::vector<std::string>* warnings = nullptr);

/// Writes the fixed-column format read by parse_thermo_text.
std::string serialize_thermo(const ThermoDatabase& db);

/// Sets N2's low-range a6 to kPatchedN2LowA6. Idempotent; PatchError without N2.
ThermoDatabase apply_n2_patch(const ThermoDatabase& db);

/// GRI-Mech 3.0 thermodynamic data compiled into the library.
std::string_view bundled_gri30_text();
const ThermoDatabase& bundled_gri30();

/// Environment variable naming a thermo file that replaces the bundled data.
inline constexpr const char* kDatabaseEnvVar = "FLAMETEMP_THERMO";
/// Loads $FLAMETEMP_THERMO when set, otherwise the bundled database.
ThermoDatabase load_default_database(std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Property evaluation. Outside [t_min, t_max] the nearest subrange polynomial is
// extrapolated and `extrapolated` is set. T <= 0 (or NaN) throws DomainError.

struct EvalResult {
    double value = 0.0;
    bool extrapolated = false;
};

EvalResult cp_R(const SpeciesRecord& sp, double T);
EvalResult h_RT(const SpeciesRecord& sp, double T);
EvalResult s_R(const SpeciesRecord& sp, double T);
EvalResult g_RT(const SpeciesRecord& sp, double T);
/// Molar enthalpy, J/mol.
EvalResult h_molar(const SpeciesRecord& sp, double T);
/// Molar heat capacity, J/(mol K).
EvalResult cp_molar(const SpeciesRecord& sp, double T);

/// Standard atomic weight in g/mol for C, H, O, N, AR (mass-fraction reporting only).
std::optional<double> atomic_weight(std::string_view element);
/// Molar mass in g/mol; nullopt when an element has no bundled weight.
std::optional<double> molar_mass(const SpeciesRecord& sp);

} // namespace flametemp
