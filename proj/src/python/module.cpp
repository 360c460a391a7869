#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "flametemp/aft_complete.hpp"
#include "flametemp/cases.hpp"
#include "flametemp/equilibrium.hpp"
#include "flametemp/errors.hpp"
#include "flametemp/report.hpp"
#include "flametemp/stoich.hpp"
#include "flametemp/thermo_db.hpp"

namespace py = pybind11;
using namespace flametemp;

namespace {

template <class E>
E parse_enum(std::optional<E> parsed, const std::string& what, const std::string& name)
{
    if (!parsed)
        throw InvalidInput("unknown " + what + " '" + name + "'");
    return *parsed;
}

const ThermoDatabase& db_or_default(const ThermoDatabase* db)
{
    return db != nullptr ? *db : bundled_gri30();
}

MixtureSpec mixture_from(const std::vector<std::tuple<std::string, double, double>>& entries, double pressure)
{
    MixtureSpec mix;
    mix.pressure = pressure;
    for (const auto& [name, moles, T] : entries)
        mix.entries.push_back({name, moles, T});
    return mix;
}

std::vector<std::size_t> candidates_for(const ThermoDatabase& db, const ElementVector& b,
                                        const std::optional<std::vector<std::string>>& names)
{
    if (!names)
        return candidate_species(db, b);
    std::vector<std::size_t> out;
    for (const auto& n : *names)
        out.push_back(db.index_of(n));
    return out;
}

py::dict fractions(const EquilibriumSolution& sol, const ThermoDatabase& db)
{
    py::dict d;
    const auto x = sol.mole_fractions();
    for (std::size_t j = 0; j < sol.species.size(); ++j)
        d[py::str(db[sol.species[j]].name)] = x[j];
    return d;
}

py::dict moles(const EquilibriumSolution& sol, const ThermoDatabase& db)
{
    py::dict d;
    for (std::size_t j = 0; j < sol.species.size(); ++j)
        d[py::str(db[sol.species[j]].name)] = sol.n[j];
    return d;
}

py::dict solution_dict(const EquilibriumSolution& sol, const ThermoDatabase& db)
{
    py::dict d;
    d["T"] = sol.T;
    d["pressure"] = sol.pressure;
    d["moles"] = moles(sol, db);
    d["mole_fractions"] = fractions(sol, db);
    d["n_tot"] = sol.n_tot;
    py::dict lambda;
    for (std::size_t k = 0; k < sol.elements.size(); ++k)
        lambda[py::str(sol.elements[k])] = sol.lambda[k];
    d["element_potentials"] = lambda;
    d["g_total_RT"] = sol.g_total;
    d["iterations"] = sol.iterations;
    d["outer_iterations"] = sol.outer_iterations;
    d["max_element_residual"] = sol.max_element_residual;
    d["max_stationarity_residual"] = sol.max_stationarity_residual;
    d["extrapolated"] = sol.extrapolated;
    return d;
}

py::object case_to_python(const CaseResult& r)
{
    auto json = py::module_::import("json");
    return json.attr("loads")(to_json(r).dump());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Adiabatic flame temperatures from NASA 7-coefficient thermo data";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", error);
    auto parse_error = py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<DuplicateSpecies>(m, "DuplicateSpecies", parse_error);
    py::register_exception<SerializeError>(m, "SerializeError", error);
    py::register_exception<PatchError>(m, "PatchError", error);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<UnknownSpecies>(m, "UnknownSpecies", error);
    py::register_exception<UnsupportedFuel>(m, "UnsupportedFuel", error);
    py::register_exception<RichMixtureError>(m, "RichMixtureError", error);
    py::register_exception<NoBracket>(m, "NoBracket", error);
    py::register_exception<NoConvergence>(m, "NoConvergence", error);
    py::register_exception<NoCandidates>(m, "NoCandidates", error);
    py::register_exception<SingularSystem>(m, "SingularSystem", error);

    m.attr("GAS_CONSTANT") = kGasConstant;
    m.attr("REFERENCE_TEMPERATURE") = kReferenceTemperature;
    m.attr("STANDARD_PRESSURE") = kStandardPressure;

    // --- thermo data -------------------------------------------------------

    py::class_<NasaPoly7>(m, "NasaPoly7")
        .def_readonly("t_min", &NasaPoly7::t_min)
        .def_readonly("t_mid", &NasaPoly7::t_mid)
        .def_readonly("t_max", &NasaPoly7::t_max)
        .def_readonly("low", &NasaPoly7::low)
        .def_readonly("high", &NasaPoly7::high);

    py::class_<SpeciesRecord>(m, "SpeciesRecord")
        .def_readonly("name", &SpeciesRecord::name)
        .def_readonly("composition", &SpeciesRecord::composition)
        .def_property_readonly("phase", [](const SpeciesRecord& s) { return std::string(1, s.phase); })
        .def_readonly("poly", &SpeciesRecord::poly)
        .def_readonly("note", &SpeciesRecord::note)
        .def("__repr__", [](const SpeciesRecord& s) { return "<SpeciesRecord " + s.name + ">"; });

    py::class_<ThermoDatabase>(m, "ThermoDatabase")
        .def("__len__", &ThermoDatabase::size)
        .def("__contains__", &ThermoDatabase::contains)
        .def("__getitem__", [](const ThermoDatabase& db, const std::string& name) { return db.at(name); })
        .def("__eq__", [](const ThermoDatabase& a, const ThermoDatabase& b) { return a == b; })
        .def_property_readonly("elements", &ThermoDatabase::elements)
        .def_property_readonly("species_names",
                               [](const ThermoDatabase& db) {
                                   std::vector<std::string> names;
                                   for (const auto& s : db.species())
                                       names.push_back(s.name);
                                   return names;
                               })
        .def("__repr__",
             [](const ThermoDatabase& db) { return "<ThermoDatabase " + std::to_string(db.size()) + " species>"; });

    m.def(
        "parse_thermo_text",
        [](const std::string& text) {
            std::vector<std::string> warnings;
            auto db = parse_thermo_text(text, &warnings);
            return py::make_tuple(std::move(db), warnings);
        },
        py::arg("text"), "Parse CHEMKIN THERMO text; returns (database, warnings).");
    m.def(
        "load_thermo_file",
        [](const std::filesystem::path& path) {
            std::vector<std::string> warnings;
            auto db = load_thermo_file(path, &warnings);
            return py::make_tuple(std::move(db), warnings);
        },
        py::arg("path"));
    m.def("serialize_thermo", &serialize_thermo, py::arg("db"));
    m.def("apply_n2_patch", &apply_n2_patch, py::arg("db"));
    m.def("bundled_gri30", []() { return bundled_gri30(); });
    m.def("load_default_database", []() { return load_default_database(nullptr); });

    auto prop = [&m](const char* name, EvalResult (*f)(const SpeciesRecord&, double), const char* doc) {
        m.def(
            name,
            [f](const std::string& species, double T, const ThermoDatabase* db) {
                const auto r = f(db_or_default(db).at(species), T);
                return py::make_tuple(r.value, r.extrapolated);
            },
            py::arg("species"), py::arg("T"), py::arg("db") = nullptr, doc);
    };
    prop("cp_R", &cp_R, "Cp/R; returns (value, extrapolated).");
    prop("h_RT", &h_RT, "H/RT; returns (value, extrapolated).");
    prop("s_R", &s_R, "S/R; returns (value, extrapolated).");
    prop("g_RT", &g_RT, "G/RT; returns (value, extrapolated).");
    prop("h_molar", &h_molar, "H in J/mol; returns (value, extrapolated).");
    prop("cp_molar", &cp_molar, "Cp in J/(mol K); returns (value, extrapolated).");

    // --- stoichiometry and complete combustion -----------------------------

    m.def(
        "stoichiometric_reactants",
        [](const std::string& fuel, const std::string& oxidizer, double fuel_moles, double t0, double pressure,
           const ThermoDatabase* db) {
            const auto ox = parse_enum(parse_oxidizer(oxidizer), "oxidizer", oxidizer);
            const auto mix = stoichiometric_reactants(FuelSpec::from_database(db_or_default(db), fuel), ox,
                                                      fuel_moles, t0, pressure);
            std::vector<std::tuple<std::string, double, double>> out;
            for (const auto& e : mix.entries)
                out.emplace_back(e.species, e.moles, e.temperature);
            return out;
        },
        py::arg("fuel"), py::arg("oxidizer"), py::arg("fuel_moles") = 1.0, py::arg("t0") = kReferenceTemperature,
        py::arg("pressure") = kStandardPressure, py::arg("db") = nullptr,
        "Stoichiometric fuel/oxidizer mixture as [(species, moles, T)].");

    m.def(
        "complete_products",
        [](const std::vector<std::tuple<std::string, double, double>>& reactants, const ThermoDatabase* db) {
            std::map<std::string, double> out;
            for (const auto& e : complete_products(mixture_from(reactants, kStandardPressure), db_or_default(db)).entries)
                out[e.species] += e.moles;
            return out;
        },
        py::arg("reactants"), py::arg("db") = nullptr);

    m.def(
        "solve_aft_complete",
        [](const std::vector<std::tuple<std::string, double, double>>& reactants, double pressure,
           const ThermoDatabase* db) {
            const auto r = solve_aft_complete(mixture_from(reactants, pressure), db_or_default(db));
            py::dict d;
            d["T"] = r.t_ad;
            std::map<std::string, double> products;
            for (const auto& e : r.products.entries)
                products[e.species] += e.moles;
            d["products"] = products;
            d["h_target"] = r.h_target;
            d["residual"] = r.residual;
            d["iterations"] = r.iterations;
            d["extrapolated"] = r.extrapolated;
            return d;
        },
        py::arg("reactants"), py::arg("pressure") = kStandardPressure, py::arg("db") = nullptr,
        "Adiabatic flame temperature of single-step complete combustion.");

    // --- equilibrium -------------------------------------------------------

    m.def(
        "equilibrate_tp",
        [](const ElementVector& b, double T, double pressure, std::optional<std::vector<std::string>> species,
           const ThermoDatabase* db) {
            const auto& d = db_or_default(db);
            EquilibriumProblem p;
            p.b = b;
            p.candidates = candidates_for(d, b, species);
            p.pressure = pressure;
            p.mode = TPMode{T};
            return solution_dict(equilibrate_TP(p, d), d);
        },
        py::arg("elements"), py::arg("T"), py::arg("pressure") = kStandardPressure, py::arg("species") = py::none(),
        py::arg("db") = nullptr, "Gibbs minimum at fixed T and P for element amounts {symbol: moles}.");

    m.def(
        "equilibrate_hp",
        [](const ElementVector& b, double h_target, double t_guess, double pressure,
           std::optional<std::vector<std::string>> species, const ThermoDatabase* db) {
            const auto& d = db_or_default(db);
            EquilibriumProblem p;
            p.b = b;
            p.candidates = candidates_for(d, b, species);
            p.pressure = pressure;
            p.mode = HPMode{h_target, t_guess};
            return solution_dict(equilibrate_HP(p, d), d);
        },
        py::arg("elements"), py::arg("h_target"), py::arg("t_guess") = 2500.0,
        py::arg("pressure") = kStandardPressure, py::arg("species") = py::none(), py::arg("db") = nullptr,
        "Equilibrium at fixed total enthalpy (J) and pressure.");

    // --- benchmark cases ---------------------------------------------------

    m.def(
        "run_case",
        [](const std::string& fuel, const std::string& oxidizer, const std::string& mode, double t0,
           double pressure, bool patch_n2, const ThermoDatabase* db) {
            CaseSpec spec;
            spec.fuel = parse_enum(parse_fuel(fuel), "fuel", fuel);
            spec.oxidizer = parse_enum(parse_oxidizer(oxidizer), "oxidizer", oxidizer);
            spec.mode = parse_enum(parse_mode(mode), "mode", mode);
            spec.t0 = t0;
            spec.pressure = pressure;
            spec.patch_n2 = patch_n2;
            return case_to_python(run_case(spec, db_or_default(db)));
        },
        py::arg("fuel"), py::arg("oxidizer") = "o2", py::arg("mode") = "complete",
        py::arg("t0") = kReferenceTemperature, py::arg("pressure") = kStandardPressure, py::arg("patch_n2") = true,
        py::arg("db") = nullptr, "Run one benchmark-style case; returns the JSON report as a dict.");

    m.def(
        "run_table",
        [](bool patch_n2, const ThermoDatabase* db) {
            py::list out;
            for (const auto& row : run_table(db_or_default(db), patch_n2)) {
                if (row.result) {
                    out.append(case_to_python(*row.result));
                } else {
                    py::dict d;
                    d["case"] = row.spec.label();
                    d["error"] = row.error;
                    d["exit_code"] = row.error_code;
                    out.append(d);
                }
            }
            return out;
        },
        py::arg("patch_n2") = true, py::arg("db") = nullptr);

    m.def("reference_table", []() {
        py::list out;
        for (const auto& r : reference_table()) {
            py::dict d;
            d["fuel"] = std::string(to_string(r.fuel));
            d["oxidizer"] = std::string(to_string(r.oxidizer));
            d["mode"] = std::string(to_string(r.mode));
            d["cearun_K"] = r.cearun_K;
            d["grimech_K"] = r.grimech_K;
            d["published_deviation_pct"] = r.published_deviation_pct;
            d["grimech_tool"] = std::string(r.grimech_tool);
            out.append(d);
        }
        return out;
    });
    m.def("deviation_percent", &deviation_percent, py::arg("t"), py::arg("cearun_K"));
}
