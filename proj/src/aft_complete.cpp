#include "flametemp/aft_complete.hpp"

#include <cmath>
#include <string>

#include "flametemp/errors.hpp"

namespace flametemp {

void SolverOptions::validate() const
{
    if (!(t_lo > 0.0 && t_lo < t_hi))
        throw InvalidInput("solver bracket must satisfy 0 < t_lo < t_hi");
    if (!(abs_tol_T > 0.0 && rel_tol_H > 0.0) || max_iter <= 0)
        throw InvalidInput("solver tolerances and max_iter must be positive");
}

namespace {

struct Balance {
    double residual;
    double slope;
    double scale;
    bool extrapolated;
};

Balance evaluate(const MixtureSpec& products, const std::vector<const SpeciesRecord*>& records,
                 double h_target, double T)
{
    Balance b{-h_target, 0.0, std::abs(h_target), false};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double n = products.entries[i].moles;
        const auto h = h_molar(*records[i], T);
        const auto cp = cp_molar(*records[i], T);
        b.residual += n * h.value;
        b.slope += n * cp.value;
        // Sensible enthalpy keeps the scale meaningful when h crosses zero.
        b.scale += n * (std::abs(h.value) + cp.value * T);
        b.extrapolated = b.extrapolated || (n > 0.0 && h.extrapolated);
    }
    return b;
}

} // namespace

AftResult solve_enthalpy_temperature(const MixtureSpec& products, double h_target,
                                     const ThermoDatabase& db, const SolverOptions& opts)
{
    opts.validate();
    products.validate();
    std::vector<const SpeciesRecord*> records;
    records.reserve(products.entries.size());
    for (const auto& e : products.entries)
        records.push_back(&db.at(e.species));

    double lo = opts.t_lo;
    double hi = opts.t_hi;
    const auto f_lo = evaluate(products, records, h_target, lo);
    const auto f_hi = evaluate(products, records, h_target, hi);
    if ((f_lo.residual > 0.0) == (f_hi.residual > 0.0) && f_lo.residual != 0.0 && f_hi.residual != 0.0)
        throw NoBracket("enthalpy balance has no sign change on [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] K",
                        lo, hi);
    const bool increasing = f_hi.residual > f_lo.residual;

    double T = 0.5 * (lo + hi);
    for (int it = 1; it <= opts.max_iter; ++it) {
        const auto f = evaluate(products, records, h_target, T);
        if ((f.residual < 0.0) == increasing)
            lo = T;
        else
            hi = T;

        const double newton = f.slope != 0.0 ? -f.residual / f.slope : HUGE_VAL;
        if (std::abs(f.residual) <= opts.rel_tol_H * f.scale && std::abs(newton) <= opts.abs_tol_T) {
            AftResult r;
            r.t_ad = T;
            r.products = products;
            for (auto& e : r.products.entries)
                e.temperature = T;
            r.h_target = h_target;
            r.residual = f.residual;
            r.iterations = it;
            r.extrapolated = f.extrapolated;
            return r;
        }
        double next = T + newton;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        T = next;
    }
    NoConvergence::Diagnostics diag;
    diag.iterations = opts.max_iter;
    diag.worst_residual = evaluate(products, records, h_target, T).residual;
    diag.worst_item = "enthalpy balance";
    diag.bracket_lo = lo;
    diag.bracket_hi = hi;
    throw NoConvergence("flame temperature solve did not converge; last bracket [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "] K",
                        diag);
}

AftResult solve_aft_complete(const MixtureSpec& reactants, const ThermoDatabase& db,
                             const SolverOptions& opts)
{
    const auto h_target = mixture_enthalpy(reactants, db).value;
    return solve_enthalpy_temperature(complete_products(reactants, db), h_target, db, opts);
}

} // namespace flametemp
