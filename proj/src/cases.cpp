#include "flametemp/cases.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>

#include "flametemp/errors.hpp"

namespace flametemp {

std::string_view to_string(Fuel fuel)
{
    return fuel == Fuel::CH4 ? "ch4" : "h2";
}

std::string_view to_string(Mode mode)
{
    return mode == Mode::Complete ? "complete" : "equilibrium";
}

std::optional<Fuel> parse_fuel(std::string_view name)
{
    const auto key = to_upper(name);
    if (key == "CH4")
        return Fuel::CH4;
    if (key == "H2")
        return Fuel::H2;
    return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name)
{
    const auto key = to_upper(name);
    if (key == "COMPLETE")
        return Mode::Complete;
    if (key == "EQUILIBRIUM")
        return Mode::Equilibrium;
    return std::nullopt;
}

std::string_view species_name(Fuel fuel)
{
    return fuel == Fuel::CH4 ? "CH4" : "H2";
}

void CaseSpec::validate() const
{
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw InvalidInput("t0 must be positive");
    if (!(pressure > 0.0) || !std::isfinite(pressure))
        throw InvalidInput("pressure must be positive");
}

std::string CaseSpec::label() const
{
    return std::string(to_string(oxidizer)) + "-" + std::string(to_string(fuel)) + " " +
           std::string(to_string(mode));
}

namespace {

constexpr std::array<ReferenceRow, 8> kReferences{{
    {Fuel::CH4, Oxidizer::PureO2, Mode::Complete, 5166.47, 5153.68, 0.248, "Excel"},
    {Fuel::H2, Oxidizer::PureO2, Mode::Complete, 4930.56, 4890.21, 0.818, "Excel"},
    {Fuel::CH4, Oxidizer::Air3, Mode::Complete, 2326.35, 2330.55, 0.181, "Excel"},
    {Fuel::H2, Oxidizer::Air3, Mode::Complete, 2520.33, 2524.36, 0.160, "Excel"},
    {Fuel::CH4, Oxidizer::PureO2, Mode::Equilibrium, 3050.12, 3052.06, 0.064, "Cantera"},
    {Fuel::H2, Oxidizer::PureO2, Mode::Equilibrium, 3074.51, 3076.92, 0.078, "Cantera"},
    {Fuel::CH4, Oxidizer::Air3, Mode::Equilibrium, 2224.25, 2156.25, 3.057, "Cantera"},
    {Fuel::H2, Oxidizer::Air3, Mode::Equilibrium, 2378.62, 2295.29, 3.503, "Cantera"},
}};

constexpr std::string_view kExplanation =
    "Reference flame temperatures are compiled-in benchmark values for stoichiometric\n"
    "CH4 and H2 with pure O2 or air, reactants at 298.15 K, constant pressure of 1 atm.\n"
    "  cearun   NASA CEARUN (CEA 9-coefficient data, 166-species pool, 4-component dry air)\n"
    "  grimech  GRI-Mech 3.0 thermodynamic data with 78/21/1 N2/O2/Ar air:\n"
    "           complete combustion solved with an Excel goal seek (N2 a6 low corrected to\n"
    "           -1021.07188), chemical equilibrium solved with Cantera 2.6.0\n"
    "  dev%     published |grimech - cearun| / cearun * 100\n"
    "This tool reproduces the grimech column; the cearun column is stored for comparison only.\n";

} // namespace

std::span<const ReferenceRow> reference_table()
{
    return kReferences;
}

const ReferenceRow* find_reference(Fuel fuel, Oxidizer oxidizer, Mode mode)
{
    const auto ox = oxidizer == Oxidizer::Air4 ? Oxidizer::Air3 : oxidizer;
    for (const auto& row : kReferences)
        if (row.fuel == fuel && row.oxidizer == ox && row.mode == mode)
            return &row;
    return nullptr;
}

double deviation_percent(double t, double cearun_K)
{
    return std::abs(t - cearun_K) / cearun_K * 100.0;
}

std::string_view reference_explanation()
{
    return kExplanation;
}

MixtureSpec case_reactants(const CaseSpec& spec, const ThermoDatabase& db)
{
    spec.validate();
    const auto fuel = FuelSpec::from_database(db, species_name(spec.fuel));
    return stoichiometric_reactants(fuel, spec.oxidizer, 1.0, spec.t0, spec.pressure);
}

EquilibriumProblem case_equilibrium_problem(const CaseSpec& spec, const ThermoDatabase& db)
{
    const auto reactants = case_reactants(spec, db);
    EquilibriumProblem problem;
    problem.b = element_totals(reactants, db);
    problem.candidates = candidate_species(db, problem.b);
    problem.pressure = spec.pressure;

    // Start from complete combustion; every other candidate at 1e-10 mol per mol of fuel.
    const auto products = complete_products(reactants, db);
    std::vector<double> init(problem.candidates.size(), 1e-10);
    for (std::size_t j = 0; j < problem.candidates.size(); ++j) {
        const double n = products.moles_of(db[problem.candidates[j]].name);
        if (n > 0.0)
            init[j] = n;
    }
    problem.initial_moles = std::move(init);

    const double h_target = mixture_enthalpy(reactants, db).value;
    const double t_complete = solve_aft_complete(reactants, db).t_ad;
    problem.mode = HPMode{h_target, std::min(t_complete, 3000.0)};
    return problem;
}

namespace {

std::vector<SpeciesFraction> sorted_fractions(std::vector<SpeciesFraction> fractions)
{
    for (auto& f : fractions)
        if (f.mole_fraction < 1e-12)
            f.mole_fraction = 0.0;
    std::sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
        if (a.mole_fraction != b.mole_fraction)
            return a.mole_fraction > b.mole_fraction;
        return a.name < b.name;
    });
    return fractions;
}

} // namespace

CaseResult run_case(const CaseSpec& spec, const ThermoDatabase& raw_db, const SolverOptions& aft_opts,
                    const EquilibriumOptions& eq_opts)
{
    spec.validate();
    const ThermoDatabase db = spec.patch_n2 ? apply_n2_patch(raw_db) : raw_db;
    CaseResult result;
    result.spec = spec;

    if (spec.mode == Mode::Complete) {
        const auto aft = solve_aft_complete(case_reactants(spec, db), db, aft_opts);
        result.t_ad = aft.t_ad;
        result.iterations = aft.iterations;
        result.residual = aft.residual;
        result.extrapolated = aft.extrapolated;
        const double total = aft.products.total_moles();
        std::vector<SpeciesFraction> fr;
        for (const auto& e : aft.products.entries)
            fr.push_back({e.species, e.moles / total});
        result.products = sorted_fractions(std::move(fr));
    } else {
        const auto problem = case_equilibrium_problem(spec, db);
        const auto sol = equilibrate_HP(problem, db, eq_opts);
        result.t_ad = sol.T;
        result.iterations = sol.iterations;
        result.outer_iterations = sol.outer_iterations;
        result.residual = solution_enthalpy(sol, db) - std::get<HPMode>(problem.mode).h_target;
        result.extrapolated = sol.extrapolated;
        result.max_element_residual = sol.max_element_residual;
        result.max_stationarity_residual = sol.max_stationarity_residual;
        std::vector<SpeciesFraction> fr;
        for (std::size_t j = 0; j < sol.species.size(); ++j)
            fr.push_back({db[sol.species[j]].name, sol.n[j] / sol.n_tot});
        result.products = sorted_fractions(std::move(fr));
    }

    if (result.extrapolated)
        result.warnings.push_back("extrapolated: product thermo evaluated outside its fitted range at " +
                                  std::to_string(result.t_ad) + " K");
    if (spec.oxidizer == Oxidizer::Air4)
        result.warnings.push_back("reference values were computed with 78/21/1 air, not 4-component air");
    if (!spec.patch_n2)
        result.warnings.push_back("N2 enthalpy patch disabled");
    if (const auto* ref = find_reference(spec.fuel, spec.oxidizer, spec.mode)) {
        result.reference = *ref;
        result.deviation_cearun_pct = deviation_percent(result.t_ad, ref->cearun_K);
        result.deviation_grimech_pct = std::abs(result.t_ad - ref->grimech_K) / ref->cearun_K * 100.0;
    }
    return result;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e) != nullptr)
        return 3;
    if (dynamic_cast<const NoConvergence*>(&e) != nullptr || dynamic_cast<const NoBracket*>(&e) != nullptr ||
        dynamic_cast<const SingularSystem*>(&e) != nullptr)
        return 4;
    return 1;
}

std::vector<TableRow> run_table(const ThermoDatabase& db, bool patch_n2)
{
    std::vector<std::future<TableRow>> jobs;
    for (const auto& ref : kReferences) {
        jobs.push_back(std::async(std::launch::async, [&db, ref, patch_n2] {
            TableRow row;
            row.reference = ref;
            row.spec.fuel = ref.fuel;
            row.spec.oxidizer = ref.oxidizer;
            row.spec.mode = ref.mode;
            row.spec.patch_n2 = patch_n2;
            try {
                row.result = run_case(row.spec, db);
            } catch (const std::exception& e) {
                row.error = e.what();
                row.error_code = exit_code_for(e);
            }
            return row;
        }));
    }
    std::vector<TableRow> rows;
    for (auto& job : jobs)
        rows.push_back(job.get());
    return rows;
}

// ---------------------------------------------------------------------------

std::span<const std::string_view> curve_species()
{
    static constexpr std::array<std::string_view, 7> names{"AR", "CH4", "CO2", "H2", "H2O", "N2", "O2"};
    return names;
}

std::vector<CurveRow> enthalpy_curves(std::span<const NamedDatabase> databases,
                                      std::span<const std::string> species, double t_start,
                                      double t_stop, double t_step)
{
    if (!(t_start > 0.0) || !(t_stop >= t_start) || !(t_step > 0.0))
        throw InvalidInput("curve range requires 0 < t_start <= t_stop and t_step > 0");
    if (species.empty() || databases.empty())
        throw InvalidInput("curves need at least one species and one database");
    const auto steps = static_cast<long>(std::floor((t_stop - t_start) / t_step + 1e-9));

    std::vector<CurveRow> rows;
    for (long i = 0; i <= steps; ++i) {
        const double T = t_start + static_cast<double>(i) * t_step;
        for (const auto& name : species) {
            for (const auto& named : databases) {
                const auto& sp = named.db.at(name);
                const auto h = h_RT(sp, T);
                rows.push_back({named.label, sp.name, T, h.value, h.value * kGasConstant * T, h.extrapolated});
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

ValidationReport validate_database(const ThermoDatabase& db)
{
    constexpr double eps = 1e-6;
    ValidationReport report;
    for (const auto& sp : db.species()) {
        const auto& p = sp.poly;
        SpeciesValidation v{sp.name, p.t_min, p.t_mid, p.t_max, 0.0, 0.0, 0.0, true, HUGE_VAL};
        v.cp_jump = std::abs(cp_R(sp, p.t_mid - eps).value - cp_R(sp, p.t_mid + eps).value);
        v.h_jump = std::abs(h_RT(sp, p.t_mid - eps).value - h_RT(sp, p.t_mid + eps).value);
        v.s_jump = std::abs(s_R(sp, p.t_mid - eps).value - s_R(sp, p.t_mid + eps).value);
        constexpr int samples = 200;
        for (int i = 0; i <= samples; ++i) {
            const double T = p.t_min + (p.t_max - p.t_min) * i / samples;
            v.cp_min = std::min(v.cp_min, cp_R(sp, T).value);
        }
        v.cp_positive = v.cp_min > 0.0;
        const double worst = std::max({v.cp_jump, v.h_jump, v.s_jump});
        if (worst > report.worst_jump) {
            report.worst_jump = worst;
            report.worst_species = sp.name;
        }
        report.species.push_back(v);
    }
    report.continuity_ok = report.worst_jump <= kContinuityTolerance;

    for (std::string_view name : {"AR", "N2", "O2", "H2"}) {
        if (const auto idx = db.find(name)) {
            const double h = h_molar(db[*idx], kReferenceTemperature).value;
            report.reference_enthalpies.push_back({std::string(name), h, std::abs(h) > kReferenceEnthalpyFlag});
        }
    }
    return report;
}

} // namespace flametemp
