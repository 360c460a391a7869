#pragma once

#include "flametemp/stoich.hpp"
#include "flametemp/thermo_db.hpp"

namespace flametemp {

struct SolverOptions {
    double t_lo = 250.0;
    double t_hi = 6500.0;
    double abs_tol_T = 1e-4;
    double rel_tol_H = 1e-10;
    int max_iter = 100;

    void validate() const;
};

struct AftResult {
    double t_ad = 0.0;
    /// Products, every entry at t_ad.
    MixtureSpec products;
    double h_target = 0.0;
    /// Sum n_j h_j(t_ad) - h_target, J.
    double residual = 0.0;
    int iterations = 0;
    /// A product was evaluated outside its fitted range at t_ad.
    bool extrapolated = false;
};

/// Temperature at which the fixed `products` carry enthalpy `h_target` (J).
/// Newton on the Cp derivative, safeguarded by bisection inside [t_lo, t_hi].
AftResult solve_enthalpy_temperature(const MixtureSpec& products, double h_target,
                                     const ThermoDatabase& db, const SolverOptions& opts = {});

/// Adiabatic flame temperature of single-step complete combustion.
AftResult solve_aft_complete(const MixtureSpec& reactants, const ThermoDatabase& db,
                             const SolverOptions& opts = {});

} // namespace flametemp
