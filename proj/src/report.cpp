#include "flametemp/report.hpp"

#include <fmt/format.h>

#include "flametemp/errors.hpp"

namespace flametemp {

std::optional<OutputFormat> parse_format(std::string_view name)
{
    const auto key = to_upper(name);
    if (key == "TABLE")
        return OutputFormat::Table;
    if (key == "CSV")
        return OutputFormat::Csv;
    if (key == "JSON")
        return OutputFormat::Json;
    if (key == "MD" || key == "MARKDOWN")
        return OutputFormat::Markdown;
    return std::nullopt;
}

nlohmann::json to_json(const CaseSpec& spec)
{
    return {{"fuel", to_string(spec.fuel)},       {"oxidizer", to_string(spec.oxidizer)},
            {"mode", to_string(spec.mode)},       {"t0_K", spec.t0},
            {"pressure_Pa", spec.pressure},       {"patch_n2", spec.patch_n2}};
}

nlohmann::json to_json(const CaseResult& r)
{
    nlohmann::json products = nlohmann::json::array();
    for (const auto& p : r.products)
        products.push_back({{"species", p.name}, {"mole_fraction", p.mole_fraction}});
    nlohmann::json j{{"spec", to_json(r.spec)},
                     {"t_ad_K", r.t_ad},
                     {"products", products},
                     {"extrapolated", r.extrapolated},
                     {"diagnostics",
                      {{"iterations", r.iterations},
                       {"outer_iterations", r.outer_iterations},
                       {"enthalpy_residual_J", r.residual},
                       {"max_element_residual", r.max_element_residual},
                       {"max_stationarity_residual", r.max_stationarity_residual}}},
                     {"warnings", r.warnings}};
    if (r.reference) {
        j["reference"] = {{"cearun_K", r.reference->cearun_K},
                          {"grimech_K", r.reference->grimech_K},
                          {"grimech_tool", r.reference->grimech_tool},
                          {"published_deviation_pct", r.reference->published_deviation_pct},
                          {"deviation_cearun_pct", r.deviation_cearun_pct},
                          {"deviation_grimech_pct", r.deviation_grimech_pct}};
    } else {
        j["reference"] = nullptr;
    }
    return j;
}

CaseSpec case_spec_from_json(const nlohmann::json& j)
{
    CaseSpec spec;
    const auto fuel = parse_fuel(j.at("fuel").get<std::string>());
    const auto ox = parse_oxidizer(j.at("oxidizer").get<std::string>());
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!fuel || !ox || !mode)
        throw InvalidInput("case spec JSON has an unknown fuel, oxidizer or mode");
    spec.fuel = *fuel;
    spec.oxidizer = *ox;
    spec.mode = *mode;
    spec.t0 = j.at("t0_K").get<double>();
    spec.pressure = j.at("pressure_Pa").get<double>();
    spec.patch_n2 = j.at("patch_n2").get<bool>();
    return spec;
}

CaseResult case_result_from_json(const nlohmann::json& j)
{
    CaseResult r;
    r.spec = case_spec_from_json(j.at("spec"));
    r.t_ad = j.at("t_ad_K").get<double>();
    for (const auto& p : j.at("products"))
        r.products.push_back({p.at("species").get<std::string>(), p.at("mole_fraction").get<double>()});
    r.extrapolated = j.at("extrapolated").get<bool>();
    const auto& d = j.at("diagnostics");
    r.iterations = d.at("iterations").get<int>();
    r.outer_iterations = d.at("outer_iterations").get<int>();
    r.residual = d.at("enthalpy_residual_J").get<double>();
    r.max_element_residual = d.at("max_element_residual").get<double>();
    r.max_stationarity_residual = d.at("max_stationarity_residual").get<double>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (!j.at("reference").is_null()) {
        if (const auto* ref = find_reference(r.spec.fuel, r.spec.oxidizer, r.spec.mode))
            r.reference = *ref;
        const auto& ref = j.at("reference");
        r.deviation_cearun_pct = ref.at("deviation_cearun_pct").get<double>();
        r.deviation_grimech_pct = ref.at("deviation_grimech_pct").get<double>();
    }
    return r;
}

std::string format_case(const CaseResult& r, OutputFormat format, std::size_t top)
{
    if (format == OutputFormat::Json)
        return to_json(r).dump(2) + "\n";

    const std::size_t shown = std::min(top, r.products.size());
    std::string out;
    if (format == OutputFormat::Csv) {
        out += "case,t_ad_K,cearun_K,grimech_K,deviation_cearun_pct,deviation_grimech_pct,extrapolated\n";
        out += fmt::format("{},{:.2f},", r.spec.label(), r.t_ad);
        if (r.reference)
            out += fmt::format("{:.2f},{:.2f},{:.3f},{:.3f}", r.reference->cearun_K, r.reference->grimech_K,
                               r.deviation_cearun_pct, r.deviation_grimech_pct);
        else
            out += ",,,";
        out += fmt::format(",{}\n", r.extrapolated ? "true" : "false");
        out += "species,mole_fraction\n";
        for (std::size_t i = 0; i < shown; ++i)
            out += fmt::format("{},{:.6e}\n", r.products[i].name, r.products[i].mole_fraction);
        return out;
    }

    const bool md = format == OutputFormat::Markdown;
    out += fmt::format(fmt::runtime(md ? "## {}\n\n" : "{}\n"), r.spec.label());
    out += fmt::format(fmt::runtime(md ? "- T0: {:.2f} K, P: {:.0f} Pa, N2 patch: {}\n" : "  T0 {:.2f} K   P {:.0f} Pa   N2 patch {}\n"),
                       r.spec.t0, r.spec.pressure, r.spec.patch_n2 ? "on" : "off");
    out += fmt::format(fmt::runtime(md ? "- Adiabatic flame temperature: **{:.2f} K**\n" : "  adiabatic flame temperature  {:.2f} K\n"),
                       r.t_ad);
    if (r.reference) {
        out += fmt::format(fmt::runtime(md ? "- CEARUN reference: {:.2f} K (deviation {:.3f}%)\n"
                              : "  CEARUN reference             {:.2f} K   deviation {:.3f}%\n"),
                           r.reference->cearun_K, r.deviation_cearun_pct);
        out += fmt::format(fmt::runtime(md ? "- GRI-Mech 3.0 ({}) reference: {:.2f} K (|diff| {:.3f}% of CEARUN)\n"
                              : "  GRI-Mech 3.0 ({}) reference  {:.2f} K   |diff| {:.3f}% of CEARUN\n"),
                           r.reference->grimech_tool, r.reference->grimech_K, r.deviation_grimech_pct);
    }
    out += md ? "\n| species | mole fraction |\n|---|---|\n" : "  products (mole fraction)\n";
    for (std::size_t i = 0; i < shown; ++i)
        out += fmt::format(fmt::runtime(md ? "| {} | {:.6e} |\n" : "    {:<8} {:.6e}\n"), r.products[i].name,
                           r.products[i].mole_fraction);
    for (const auto& w : r.warnings)
        out += fmt::format(fmt::runtime(md ? "\n> warning: {}\n" : "  warning: {}\n"), w);
    return out;
}

std::string format_table(const std::vector<TableRow>& rows, OutputFormat format)
{
    if (format == OutputFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json j{{"case", row.spec.label()},
                             {"cearun_K", row.reference.cearun_K},
                             {"grimech_K", row.reference.grimech_K},
                             {"published_deviation_pct", row.reference.published_deviation_pct}};
            if (row.result) {
                j["t_ad_K"] = row.result->t_ad;
                j["deviation_cearun_pct"] = row.result->deviation_cearun_pct;
                j["deviation_grimech_pct"] = row.result->deviation_grimech_pct;
                j["extrapolated"] = row.result->extrapolated;
                j["error"] = nullptr;
            } else {
                j["t_ad_K"] = nullptr;
                j["error"] = row.error;
            }
            arr.push_back(j);
        }
        return arr.dump(2) + "\n";
    }

    std::string out;
    if (format == OutputFormat::Csv)
        out += "case,t_ad_K,cearun_K,grimech_K,deviation_cearun_pct,published_deviation_pct,"
               "reference_deviation_pct,extrapolated,error\n";
    else if (format == OutputFormat::Markdown)
        out += "| case | T_ad (K) | CEARUN (K) | GRI-Mech (K) | dev vs CEARUN (%) | published dev (%) | "
               "reference dev (%) | notes |\n|---|---|---|---|---|---|---|---|\n";
    else
        out += fmt::format("{:<24} {:>10} {:>10} {:>10} {:>8} {:>8} {:>8}  {}\n", "case", "T_ad K", "CEARUN K",
                           "GRI K", "dev %", "pub %", "ref %", "notes");

    for (const auto& row : rows) {
        const auto& ref = row.reference;
        // Deviation of the stored GRI value itself, a self-consistency check on the constants.
        const double ref_dev = deviation_percent(ref.grimech_K, ref.cearun_K);
        std::string notes;
        std::string t_ad = "-";
        std::string dev = "-";
        if (row.result) {
            t_ad = fmt::format("{:.2f}", row.result->t_ad);
            dev = fmt::format("{:.3f}", row.result->deviation_cearun_pct);
            if (row.result->extrapolated)
                notes = "extrapolated";
        } else {
            notes = "FAILED: " + row.error;
        }
        if (format == OutputFormat::Csv)
            out += fmt::format("{},{},{:.2f},{:.2f},{},{:.3f},{:.3f},{},\"{}\"\n", row.spec.label(), t_ad, ref.cearun_K,
                               ref.grimech_K, dev, ref.published_deviation_pct, ref_dev,
                               row.result && row.result->extrapolated ? "true" : "false", row.error);
        else if (format == OutputFormat::Markdown)
            out += fmt::format("| {} | {} | {:.2f} | {:.2f} | {} | {:.3f} | {:.3f} | {} |\n", row.spec.label(), t_ad,
                               ref.cearun_K, ref.grimech_K, dev, ref.published_deviation_pct, ref_dev, notes);
        else
            out += fmt::format("{:<24} {:>10} {:>10.2f} {:>10.2f} {:>8} {:>8.3f} {:>8.3f}  {}\n", row.spec.label(),
                               t_ad, ref.cearun_K, ref.grimech_K, dev, ref.published_deviation_pct, ref_dev, notes);
    }
    return out;
}

std::string format_curves_csv(const std::vector<CurveRow>& rows)
{
    std::string out = "database,species,T_K,h_over_RT,h_J_per_mol,extrapolated\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{:.2f},{:.10g},{:.10g},{}\n", r.database, r.species, r.T, r.h_over_RT,
                           r.h_J_per_mol, r.extrapolated ? 1 : 0);
    return out;
}

std::string format_validation(const ValidationReport& report, OutputFormat format)
{
    if (format == OutputFormat::Json) {
        nlohmann::json species = nlohmann::json::array();
        for (const auto& v : report.species)
            species.push_back({{"name", v.name},
                               {"t_min", v.t_min},
                               {"t_mid", v.t_mid},
                               {"t_max", v.t_max},
                               {"cp_jump", v.cp_jump},
                               {"h_jump", v.h_jump},
                               {"s_jump", v.s_jump},
                               {"cp_min", v.cp_min},
                               {"cp_positive", v.cp_positive}});
        nlohmann::json refs = nlohmann::json::array();
        for (const auto& r : report.reference_enthalpies)
            refs.push_back({{"name", r.name}, {"h_298_J_per_mol", r.h_J_per_mol}, {"flagged", r.flagged}});
        nlohmann::json j{{"species", species},
                         {"reference_enthalpies", refs},
                         {"worst_jump", report.worst_jump},
                         {"worst_species", report.worst_species},
                         {"continuity_ok", report.continuity_ok}};
        return j.dump(2) + "\n";
    }

    std::string out;
    const bool csv = format == OutputFormat::Csv;
    out += csv ? "species,t_min,t_mid,t_max,cp_jump,h_jump,s_jump,cp_min\n"
               : fmt::format("{:<10} {:>8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>8}\n", "species", "T_min", "T_mid",
                             "T_max", "dCp/R", "dH/RT", "dS/R", "min Cp/R");
    for (const auto& v : report.species)
        out += fmt::format(fmt::runtime(csv ? "{},{:.2f},{:.2f},{:.2f},{:.3e},{:.3e},{:.3e},{:.4f}\n"
                               : "{:<10} {:>8.1f} {:>8.1f} {:>8.1f} {:>10.3e} {:>10.3e} {:>10.3e} {:>8.4f}\n"),
                           v.name, v.t_min, v.t_mid, v.t_max, v.cp_jump, v.h_jump, v.s_jump, v.cp_min);
    out += csv ? "\nreference_species,h_298_J_per_mol,flagged\n" : "\nH(298.15 K) of reference species\n";
    for (const auto& r : report.reference_enthalpies)
        out += fmt::format(fmt::runtime(csv ? "{},{:.4f},{}\n" : "  {:<4} {:>10.4f} J/mol{}\n"), r.name, r.h_J_per_mol,
                           csv ? (r.flagged ? "true" : "false") : (r.flagged ? "  FLAGGED" : ""));
    if (!csv) {
        out += fmt::format("\nworst t_mid discontinuity {:.3e} ({}), tolerance {:.0e}: {}\n", report.worst_jump,
                           report.worst_species, kContinuityTolerance, report.continuity_ok ? "ok" : "FAILED");
        std::size_t nonpositive = 0;
        for (const auto& v : report.species)
            nonpositive += v.cp_positive ? 0 : 1;
        out += fmt::format("species with Cp <= 0 inside their range: {}\n", nonpositive);
    }
    return out;
}

} // namespace flametemp
