#include "flametemp/stoich.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flametemp/errors.hpp"

namespace flametemp {

void MixtureSpec::validate() const
{
    if (entries.empty())
        throw InvalidInput("mixture has no entries");
    bool any_positive = false;
    for (const auto& e : entries) {
        if (!(e.moles >= 0.0) || !std::isfinite(e.moles))
            throw InvalidInput("negative or non-finite moles for " + e.species);
        if (!(e.temperature > 0.0) || !std::isfinite(e.temperature))
            throw InvalidInput("non-positive temperature for " + e.species);
        any_positive = any_positive || e.moles > 0.0;
    }
    if (!any_positive)
        throw InvalidInput("mixture has no species with positive moles");
    if (!(pressure > 0.0))
        throw InvalidInput("mixture pressure must be positive");
}

double MixtureSpec::total_moles() const
{
    return std::accumulate(entries.begin(), entries.end(), 0.0,
                           [](double acc, const MixtureEntry& e) { return acc + e.moles; });
}

double MixtureSpec::moles_of(std::string_view species) const
{
    const auto key = to_upper(species);
    double n = 0.0;
    for (const auto& e : entries)
        if (to_upper(e.species) == key)
            n += e.moles;
    return n;
}

MixtureSpec MixtureSpec::scaled(double factor) const
{
    MixtureSpec out = *this;
    for (auto& e : out.entries)
        e.moles *= factor;
    return out;
}

std::vector<OxidizerComponent> oxidizer_composition(Oxidizer ox)
{
    std::vector<OxidizerComponent> parts;
    switch (ox) {
    case Oxidizer::PureO2:
        parts = {{"O2", 1.0}};
        break;
    case Oxidizer::Air3:
        parts = {{"O2", 21.0}, {"N2", 78.0}, {"AR", 1.0}};
        break;
    case Oxidizer::Air4:
        parts = {{"O2", 20.9476}, {"N2", 78.0840}, {"AR", 0.9365}, {"CO2", 0.0319}};
        break;
    }
    double total = 0.0;
    for (const auto& p : parts)
        total += p.mole_fraction;
    for (auto& p : parts)
        p.mole_fraction /= total;
    return parts;
}

std::string_view to_string(Oxidizer ox)
{
    switch (ox) {
    case Oxidizer::PureO2:
        return "o2";
    case Oxidizer::Air3:
        return "air3";
    case Oxidizer::Air4:
        return "air4";
    }
    return "?";
}

std::optional<Oxidizer> parse_oxidizer(std::string_view name)
{
    const auto key = to_upper(name);
    if (key == "O2" || key == "PURE_O2")
        return Oxidizer::PureO2;
    if (key == "AIR3" || key == "AIR")
        return Oxidizer::Air3;
    if (key == "AIR4")
        return Oxidizer::Air4;
    return std::nullopt;
}

FuelSpec FuelSpec::from_database(const ThermoDatabase& db, std::string_view species)
{
    const auto& rec = db.at(species);
    FuelSpec fuel{rec.name, 0.0, 0.0};
    for (const auto& [el, count] : rec.composition) {
        if (el == "C")
            fuel.carbon = count;
        else if (el == "H")
            fuel.hydrogen = count;
        else
            throw UnsupportedFuel("fuel " + rec.name + " contains element " + el +
                                  "; only C/H fuels are supported");
    }
    if (!(fuel.hydrogen > 0.0))
        throw UnsupportedFuel("fuel " + rec.name + " contains no hydrogen");
    return fuel;
}

ElementVector element_totals(const MixtureSpec& mix, const ThermoDatabase& db)
{
    ElementVector b;
    for (const auto& e : mix.entries) {
        const auto& rec = db.at(e.species);
        for (const auto& [el, count] : rec.composition)
            b[el] += count * e.moles;
    }
    return b;
}

EvalResult mixture_enthalpy(const MixtureSpec& mix, const ThermoDatabase& db,
                            std::optional<double> temperature_override)
{
    mix.validate();
    EvalResult total;
    for (const auto& e : mix.entries) {
        const auto& rec = db.at(e.species);
        const auto h = h_molar(rec, temperature_override.value_or(e.temperature));
        total.value += e.moles * h.value;
        total.extrapolated = total.extrapolated || (e.moles > 0.0 && h.extrapolated);
    }
    return total;
}

MixtureSpec stoichiometric_reactants(const FuelSpec& fuel, Oxidizer ox, double fuel_moles, double T0,
                                     double pressure)
{
    if (!(fuel.carbon >= 0.0) || !(fuel.hydrogen > 0.0))
        throw UnsupportedFuel("fuel " + fuel.species + " must have x >= 0 carbon and y > 0 hydrogen");
    if (!(fuel_moles > 0.0))
        throw InvalidInput("fuel moles must be positive");

    const double n_o2 = fuel_moles * fuel.oxygen_demand();
    MixtureSpec mix;
    mix.pressure = pressure;
    mix.entries.push_back({to_upper(fuel.species), fuel_moles, T0});
    const auto parts = oxidizer_composition(ox);
    const double o2_fraction = parts.front().mole_fraction;
    for (const auto& p : parts) {
        const double n = p.species == "O2" ? n_o2 : n_o2 * (p.mole_fraction / o2_fraction);
        mix.entries.push_back({p.species, n, T0});
    }
    mix.validate();
    return mix;
}

MixtureSpec complete_products(const MixtureSpec& reactants, const ThermoDatabase& db)
{
    reactants.validate();

    // Products keep first-appearance order: CO2, H2O, O2, then pass-through species.
    std::vector<std::pair<std::string, double>> products{{"CO2", 0.0}, {"H2O", 0.0}, {"O2", 0.0}};
    auto add = [&](const std::string& name, double n) {
        for (auto& [species, moles] : products) {
            if (species == name) {
                moles += n;
                return;
            }
        }
        products.emplace_back(name, n);
    };

    double o2_available = 0.0;
    double o2_demand = 0.0;
    for (const auto& e : reactants.entries) {
        const auto& rec = db.at(e.species);
        if (rec.name == "O2") {
            o2_available += e.moles;
            continue;
        }
        if (rec.name == "N2" || rec.name == "AR" || rec.name == "CO2" || rec.name == "H2O") {
            add(rec.name, e.moles);
            continue;
        }
        const auto fuel = FuelSpec::from_database(db, rec.name);
        add("CO2", e.moles * fuel.carbon);
        add("H2O", e.moles * fuel.hydrogen / 2.0);
        o2_demand += e.moles * fuel.oxygen_demand();
    }

    const double surplus = o2_available - o2_demand;
    const double tiny = 1e-12 * std::max(o2_available, o2_demand);
    if (surplus < -tiny)
        throw RichMixtureError("oxygen-deficient mixture: " + std::to_string(o2_available) +
                               " mol O2 available, " + std::to_string(o2_demand) + " mol required");
    add("O2", std::max(surplus, 0.0));

    double T = reactants.entries.front().temperature;
    MixtureSpec out;
    out.pressure = reactants.pressure;
    for (const auto& [species, moles] : products)
        if (moles > 0.0)
            out.entries.push_back({species, moles, T});
    return out;
}

} // namespace flametemp
