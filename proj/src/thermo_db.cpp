#include "flametemp/thermo_db.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

#include "flametemp/errors.hpp"

namespace flametemp {

std::string to_upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

double SpeciesRecord::atoms(std::string_view element) const
{
    auto it = composition.find(to_upper(element));
    return it == composition.end() ? 0.0 : it->second;
}

ThermoDatabase::ThermoDatabase(std::vector<SpeciesRecord> species) : species_(std::move(species))
{
    std::set<std::string> elements;
    for (std::size_t i = 0; i < species_.size(); ++i) {
        auto& sp = species_[i];
        sp.name = to_upper(sp.name);
        if (sp.name.empty())
            throw InvalidInput("species record " + std::to_string(i) + " has an empty name");
        if (sp.composition.empty())
            throw InvalidInput("species '" + sp.name + "' has an empty composition");
        for (const auto& [el, count] : sp.composition) {
            if (!(count > 0.0) || !std::isfinite(count))
                throw InvalidInput("species '" + sp.name + "' has non-positive count for " + el);
            elements.insert(el);
        }
        const auto& p = sp.poly;
        if (!(p.t_min < p.t_mid && p.t_mid < p.t_max))
            throw InvalidInput("species '" + sp.name + "' violates t_min < t_mid < t_max");
        auto finite = [](double a) { return std::isfinite(a); };
        if (!std::all_of(p.low.begin(), p.low.end(), finite) ||
            !std::all_of(p.high.begin(), p.high.end(), finite))
            throw InvalidInput("species '" + sp.name + "' has non-finite coefficients");
        if (!by_name_.emplace(sp.name, i).second)
            throw DuplicateSpecies(sp.name, sp.source_line);
    }
    elements_.assign(elements.begin(), elements.end());
}

std::optional<std::size_t> ThermoDatabase::find(std::string_view name) const
{
    auto it = by_name_.find(to_upper(name));
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

std::size_t ThermoDatabase::index_of(std::string_view name) const
{
    if (auto i = find(name))
        return *i;
    throw UnknownSpecies(std::string(name));
}

ThermoDatabase ThermoDatabase::with_record(const SpeciesRecord& record) const
{
    auto copy = species_;
    copy[index_of(record.name)] = record;
    return ThermoDatabase(std::move(copy));
}

ThermoDatabase apply_n2_patch(const ThermoDatabase& db)
{
    auto idx = db.find("N2");
    if (!idx)
        throw PatchError("N2 patch requires species N2 in the database");
    SpeciesRecord n2 = db[*idx];
    n2.poly.low[5] = kPatchedN2LowA6;
    return db.with_record(n2);
}

ThermoDatabase load_default_database(std::vector<std::string>* warnings)
{
    if (const char* path = std::getenv(kDatabaseEnvVar); path != nullptr && *path != '\0')
        return load_thermo_file(path, warnings);
    return bundled_gri30();
}

const ThermoDatabase& bundled_gri30()
{
    static const ThermoDatabase db = parse_thermo_text(bundled_gri30_text());
    return db;
}

// ---------------------------------------------------------------------------

namespace {

void check_temperature(const SpeciesRecord& sp, double T)
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("temperature must be positive and finite (species " + sp.name +
                          ", T = " + std::to_string(T) + ")");
}

double cp_poly(const std::array<double, 7>& a, double T)
{
    return a[0] + T * (a[1] + T * (a[2] + T * (a[3] + T * a[4])));
}

double h_poly(const std::array<double, 7>& a, double T)
{
    return a[0] + T * (a[1] / 2 + T * (a[2] / 3 + T * (a[3] / 4 + T * a[4] / 5))) + a[5] / T;
}

double s_poly(const std::array<double, 7>& a, double T)
{
    return a[0] * std::log(T) + T * (a[1] + T * (a[2] / 2 + T * (a[3] / 3 + T * a[4] / 4))) + a[6];
}

} // namespace

EvalResult cp_R(const SpeciesRecord& sp, double T)
{
    check_temperature(sp, T);
    return {cp_poly(sp.poly.coefficients_at(T), T), !sp.poly.in_range(T)};
}

EvalResult h_RT(const SpeciesRecord& sp, double T)
{
    check_temperature(sp, T);
    return {h_poly(sp.poly.coefficients_at(T), T), !sp.poly.in_range(T)};
}

EvalResult s_R(const SpeciesRecord& sp, double T)
{
    check_temperature(sp, T);
    return {s_poly(sp.poly.coefficients_at(T), T), !sp.poly.in_range(T)};
}

EvalResult g_RT(const SpeciesRecord& sp, double T)
{
    const auto h = h_RT(sp, T);
    const auto s = s_R(sp, T);
    return {h.value - s.value, h.extrapolated || s.extrapolated};
}

EvalResult h_molar(const SpeciesRecord& sp, double T)
{
    const auto h = h_RT(sp, T);
    return {h.value * kGasConstant * T, h.extrapolated};
}

EvalResult cp_molar(const SpeciesRecord& sp, double T)
{
    const auto c = cp_R(sp, T);
    return {c.value * kGasConstant, c.extrapolated};
}

std::optional<double> atomic_weight(std::string_view element)
{
    // IUPAC conventional standard atomic weights
    static const std::map<std::string, double, std::less<>> weights{
        {"AR", 39.95}, {"C", 12.011}, {"H", 1.008}, {"N", 14.007}, {"O", 15.999}};
    auto it = weights.find(to_upper(element));
    if (it == weights.end())
        return std::nullopt;
    return it->second;
}

std::optional<double> molar_mass(const SpeciesRecord& sp)
{
    double m = 0.0;
    for (const auto& [el, count] : sp.composition) {
        auto w = atomic_weight(el);
        if (!w)
            return std::nullopt;
        m += count * *w;
    }
    return m;
}

} // namespace flametemp
