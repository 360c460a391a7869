#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flametemp/stoich.hpp"
#include "flametemp/thermo_db.hpp"

namespace flametemp {

struct EquilibriumOptions {
    /// Lower bound on mole fraction; species below it are frozen there.
    double trace_floor = 1e-30;
    double tol_element = 1e-10;
    double tol_stationarity = 1e-8;
    int max_iter = 200;
    /// Bound on |delta ln n| per Newton iteration.
    double max_step = 2.0;
    double hp_tol_H = 1e-9;
    int hp_max_outer = 60;
    /// Start each inner TP solve of an HP problem from the previous composition.
    bool warm_start = true;

    void validate() const;
};

struct TPMode {
    double T;
};

struct HPMode {
    /// Total enthalpy to conserve, J.
    double h_target;
    double t_guess;
};

struct EquilibriumProblem {
    /// Element abundances, mol. Elements with zero abundance are ignored.
    ElementVector b;
    /// Database indices of the species allowed to form.
    std::vector<std::size_t> candidates;
    double pressure = kStandardPressure;
    std::variant<TPMode, HPMode> mode = TPMode{3000.0};
    /// Optional starting moles, one per candidate. Absent: uniform start.
    std::optional<std::vector<double>> initial_moles;
};

struct EquilibriumSolution {
    std::vector<std::size_t> species;
    /// Moles per entry of `species`.
    std::vector<double> n;
    double n_tot = 0.0;
    double T = 0.0;
    double pressure = kStandardPressure;
    /// Element symbols with positive abundance, matched to `lambda`.
    std::vector<std::string> elements;
    /// Element potentials (dimensionless Lagrange multipliers).
    std::vector<double> lambda;
    /// G / (R T) of the equilibrium mixture.
    double g_total = 0.0;
    /// Newton iterations; for HP problems, summed over all inner solves.
    int iterations = 0;
    /// Outer temperature iterations (HP only).
    int outer_iterations = 0;
    bool converged = false;
    double max_element_residual = 0.0;
    double max_stationarity_residual = 0.0;
    /// A species above the trace floor was evaluated outside its fitted range.
    bool extrapolated = false;

    std::vector<double> mole_fractions() const;
    /// Moles of the named species; 0 when it is not a candidate.
    double moles_of(const ThermoDatabase& db, std::string_view name) const;
};

/// Gas-phase species whose elements all have positive abundance, in database order.
std::vector<std::size_t> candidate_species(const ThermoDatabase& db, const ElementVector& b);

/// Minimizes G at fixed (T, P) subject to the element balances.
EquilibriumSolution equilibrate_TP(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                   const EquilibriumOptions& opts = {});

/// Equilibrium at fixed (H, P): outer iteration on T around equilibrate_TP.
EquilibriumSolution equilibrate_HP(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                   const EquilibriumOptions& opts = {});

/// Dispatches on the problem mode.
EquilibriumSolution equilibrate(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                const EquilibriumOptions& opts = {});

/// G / (R T) of an arbitrary composition at (T, P); zero amounts contribute nothing.
double gibbs_RT(const ThermoDatabase& db, const std::vector<std::size_t>& species,
                const std::vector<double>& n, double T, double pressure);

/// Total enthalpy of a solution at its temperature, J.
double solution_enthalpy(const EquilibriumSolution& sol, const ThermoDatabase& db);

} // namespace flametemp
