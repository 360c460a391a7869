// flametemp: adiabatic flame temperatures from NASA 7-coefficient data.
//
//   flametemp run --fuel ch4 --oxidizer o2 --mode complete
//   flametemp table --format md
//   flametemp curves --species AR,N2 --t-start 300 --t-stop 3500 --t-step 50
//   flametemp validate --db thermo.dat

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flametemp/cases.hpp"
#include "flametemp/errors.hpp"
#include "flametemp/report.hpp"

namespace {

using namespace flametemp;

constexpr int kUsageError = 2;

struct CommonOptions {
    std::string db_path;
    bool no_patch = false;
    std::string format = "table";
    std::string out_path;
};

void add_common(CLI::App& cmd, CommonOptions& opts)
{
    cmd.add_option("--db", opts.db_path, "CHEMKIN thermo file (default: $FLAMETEMP_THERMO or bundled GRI-Mech 3.0)");
    cmd.add_flag("--no-n2-patch", opts.no_patch, "Keep the original N2 low-range a6 coefficient");
    cmd.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json", "md"}, CLI::ignore_case));
    cmd.add_option("--out", opts.out_path, "Write output to this file instead of stdout");
}

ThermoDatabase load_database(const std::string& path)
{
    std::vector<std::string> warnings;
    auto db = path.empty() ? load_default_database(&warnings) : load_thermo_file(path, &warnings);
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << '\n';
    return db;
}

ThermoDatabase maybe_patch(const ThermoDatabase& db, bool patch)
{
    if (!patch)
        return db;
    if (!db.contains("N2")) {
        std::cerr << "warning: database has no N2; N2 patch skipped\n";
        return db;
    }
    return apply_n2_patch(db);
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + out_path + "'");
    out << text;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    for (char c : s) {
        if (c == ',') {
            if (!item.empty())
                out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty())
        out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adiabatic flame temperatures by complete combustion and chemical equilibrium"};
    app.require_subcommand(1);
    bool explain = false;
    app.add_flag("--explain", explain, "Describe the compiled-in reference values and exit");

    CommonOptions run_opts;
    std::string fuel = "ch4", oxidizer = "o2", mode = "complete";
    double t0 = kReferenceTemperature, pressure = kStandardPressure;
    auto* run = app.add_subcommand("run", "Compute one case");
    run->add_option("--fuel", fuel, "Fuel")->check(CLI::IsMember({"ch4", "h2"}, CLI::ignore_case));
    run->add_option("--oxidizer", oxidizer, "Oxidizer")
        ->check(CLI::IsMember({"o2", "air3", "air4"}, CLI::ignore_case));
    run->add_option("--mode", mode, "Product model")
        ->check(CLI::IsMember({"complete", "equilibrium"}, CLI::ignore_case));
    run->add_option("--t0", t0, "Reactant temperature, K")->check(CLI::PositiveNumber);
    run->add_option("--pressure", pressure, "Pressure, Pa")->check(CLI::PositiveNumber);
    add_common(*run, run_opts);

    CommonOptions table_opts;
    auto* table = app.add_subcommand("table", "Run the eight benchmark cases and compare with the references");
    add_common(*table, table_opts);

    CommonOptions curve_opts;
    curve_opts.format = "csv";
    std::string species_list;
    std::vector<std::string> extra_dbs;
    double t_start = 300.0, t_stop = 3500.0, t_step = 50.0;
    auto* curves = app.add_subcommand("curves", "Export H/RT and H versus temperature as CSV");
    curves->add_option("--species", species_list, "Comma-separated species (default: AR,CH4,CO2,H2,H2O,N2,O2)");
    curves->add_option("--t-start", t_start, "First temperature, K")->check(CLI::PositiveNumber);
    curves->add_option("--t-stop", t_stop, "Last temperature, K")->check(CLI::PositiveNumber);
    curves->add_option("--t-step", t_step, "Temperature step, K")->check(CLI::PositiveNumber);
    curves->add_option("--compare-db", extra_dbs, "Additional thermo files evaluated side by side");
    add_common(*curves, curve_opts);

    CommonOptions validate_opts;
    auto* validate = app.add_subcommand("validate", "Check t_mid continuity, Cp positivity and reference enthalpies");
    add_common(*validate, validate_opts);

    if (argc > 1 && std::string(argv[1]) == "--explain") {
        std::cout << reference_explanation();
        return 0;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }
    if (explain) {
        std::cout << reference_explanation();
        return 0;
    }

    try {
        if (run->parsed()) {
            CaseSpec spec;
            spec.fuel = *parse_fuel(fuel);
            spec.oxidizer = *parse_oxidizer(oxidizer);
            spec.mode = *parse_mode(mode);
            spec.t0 = t0;
            spec.pressure = pressure;
            spec.patch_n2 = !run_opts.no_patch;
            const auto result = run_case(spec, load_database(run_opts.db_path));
            emit(format_case(result, *parse_format(run_opts.format)), run_opts.out_path);
            return 0;
        }
        if (table->parsed()) {
            const auto rows = run_table(load_database(table_opts.db_path), !table_opts.no_patch);
            emit(format_table(rows, *parse_format(table_opts.format)), table_opts.out_path);
            int code = 0;
            for (const auto& row : rows)
                if (row.error_code != 0 && code == 0)
                    code = row.error_code;
            return code;
        }
        if (curves->parsed()) {
            if (to_upper(curve_opts.format) != "CSV") {
                std::cerr << "curves only supports --format csv\n";
                return kUsageError;
            }
            std::vector<NamedDatabase> dbs;
            const bool patch = !curve_opts.no_patch;
            dbs.push_back({curve_opts.db_path.empty() ? "gri30" : curve_opts.db_path,
                           maybe_patch(load_database(curve_opts.db_path), patch)});
            for (const auto& path : extra_dbs)
                dbs.push_back({path, maybe_patch(load_database(path), patch)});
            std::vector<std::string> species = split_list(species_list);
            if (species.empty())
                for (auto name : curve_species())
                    species.emplace_back(name);
            const auto rows = enthalpy_curves(dbs, species, t_start, t_stop, t_step);
            emit(format_curves_csv(rows), curve_opts.out_path);
            return 0;
        }
        if (validate->parsed()) {
            const auto db = maybe_patch(load_database(validate_opts.db_path), !validate_opts.no_patch);
            const auto report = validate_database(db);
            emit(format_validation(report, *parse_format(validate_opts.format)), validate_opts.out_path);
            return report.continuity_ok ? 0 : 1;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kUsageError;
}
