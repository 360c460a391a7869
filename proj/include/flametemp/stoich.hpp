#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flametemp/thermo_db.hpp"

namespace flametemp {

struct MixtureEntry {
    std::string species;
    double moles = 0.0;
    /// Temperature at which this species enters the enthalpy balance, K.
    double temperature = kReferenceTemperature;
};

/// Species amounts, each at its own temperature, at a common pressure.
struct MixtureSpec {
    std::vector<MixtureEntry> entries;
    double pressure = kStandardPressure;

    /// Throws InvalidInput when the mixture violates its invariants.
    void validate() const;
    double total_moles() const;
    /// Moles of `species` summed over entries (case-insensitive).
    double moles_of(std::string_view species) const;
    MixtureSpec scaled(double factor) const;
};

/// Element symbol -> total element moles.
using ElementVector = std::map<std::string, double>;

enum class Oxidizer { PureO2, Air3, Air4 };

struct OxidizerComponent {
    std::string species;
    double mole_fraction;
};

/// Normalized oxidizer composition. AIR3 is N2/O2/AR = 78/21/1; AIR4 is the
/// four-component dry air N2/O2/AR/CO2 = 78.0840/20.9476/0.9365/0.0319.
std::vector<OxidizerComponent> oxidizer_composition(Oxidizer ox);
std::string_view to_string(Oxidizer ox);
std::optional<Oxidizer> parse_oxidizer(std::string_view name);

/// Hydrocarbon (or hydrogen) fuel C_x H_y.
struct FuelSpec {
    std::string species;
    double carbon = 0.0;
    double hydrogen = 0.0;

    /// Reads the composition from the database; UnsupportedFuel unless the
    /// species contains only C and H with at least one H.
    static FuelSpec from_database(const ThermoDatabase& db, std::string_view species);
    double oxygen_demand() const { return carbon + hydrogen / 4.0; }
};

ElementVector element_totals(const MixtureSpec& mix, const ThermoDatabase& db);

/// Sum of n_i h_i(T_i) in J. With `temperature_override`, every species is
/// evaluated at that temperature instead of its own.
EvalResult mixture_enthalpy(const MixtureSpec& mix, const ThermoDatabase& db,
                            std::optional<double> temperature_override = std::nullopt);

/// Fuel plus exactly the stoichiometric oxygen, with the oxidizer's companion
/// species in preset proportion. Every entry is at T0.
MixtureSpec stoichiometric_reactants(const FuelSpec& fuel, Oxidizer ox, double fuel_moles, double T0,
                                     double pressure);

/// Single-step complete combustion: C -> CO2, H -> H2O, surplus O2 and the
/// inert species (N2, AR, CO2, H2O) pass through. RichMixtureError when the
/// oxygen does not cover the demand.
MixtureSpec complete_products(const MixtureSpec& reactants, const ThermoDatabase& db);

} // namespace flametemp
