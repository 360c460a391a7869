// Gibbs free-energy minimization by the element-potential method: Newton
// iteration on the element potentials and ln(n_tot) with species amounts
// carried as ln n_j.

#include "flametemp/equilibrium.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "flametemp/errors.hpp"

namespace flametemp {

void EquilibriumOptions::validate() const
{
    if (!(trace_floor > 0.0 && tol_element > 0.0 && tol_stationarity > 0.0 && max_step > 0.0 &&
          hp_tol_H > 0.0) ||
        max_iter <= 0 || hp_max_outer <= 0)
        throw InvalidInput("equilibrium options must all be positive");
}

std::vector<double> EquilibriumSolution::mole_fractions() const
{
    std::vector<double> x(n.size());
    for (std::size_t j = 0; j < n.size(); ++j)
        x[j] = n[j] / n_tot;
    return x;
}

double EquilibriumSolution::moles_of(const ThermoDatabase& db, std::string_view name) const
{
    const auto idx = db.find(name);
    if (!idx)
        return 0.0;
    for (std::size_t j = 0; j < species.size(); ++j)
        if (species[j] == *idx)
            return n[j];
    return 0.0;
}

std::vector<std::size_t> candidate_species(const ThermoDatabase& db, const ElementVector& b)
{
    auto present = [&](const std::string& el) {
        auto it = b.find(el);
        return it != b.end() && it->second > 0.0;
    };
    if (std::none_of(b.begin(), b.end(), [](const auto& kv) { return kv.second > 0.0; }))
        throw InvalidInput("element vector has no positive abundance");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < db.size(); ++i) {
        const auto& sp = db[i];
        if (sp.phase != 'G')
            continue;
        if (std::all_of(sp.composition.begin(), sp.composition.end(),
                        [&](const auto& kv) { return present(kv.first); }))
            out.push_back(i);
    }
    if (out.empty())
        throw NoCandidates("no gas-phase species can be formed from the given elements");
    return out;
}

double gibbs_RT(const ThermoDatabase& db, const std::vector<std::size_t>& species,
                const std::vector<double>& n, double T, double pressure)
{
    const double total = std::accumulate(n.begin(), n.end(), 0.0);
    const double ln_p = std::log(pressure / kStandardPressure);
    double g = 0.0;
    for (std::size_t j = 0; j < species.size(); ++j) {
        if (n[j] <= 0.0)
            continue;
        g += n[j] * (g_RT(db[species[j]], T).value + std::log(n[j] / total) + ln_p);
    }
    return g;
}

double solution_enthalpy(const EquilibriumSolution& sol, const ThermoDatabase& db)
{
    double h = 0.0;
    for (std::size_t j = 0; j < sol.species.size(); ++j)
        h += sol.n[j] * h_molar(db[sol.species[j]], sol.T).value;
    return h;
}

namespace {

/// Element/species data shared by every iteration of one problem.
struct System {
    std::vector<std::string> elements;
    Eigen::VectorXd b;
    Eigen::MatrixXd a; // species x elements
    double b_max = 0.0;
};

System build_system(const EquilibriumProblem& problem, const ThermoDatabase& db)
{
    System sys;
    for (const auto& [el, amount] : problem.b) {
        if (amount < 0.0 || !std::isfinite(amount))
            throw InvalidInput("element abundance of " + el + " must be non-negative");
        if (amount > 0.0)
            sys.elements.push_back(el);
    }
    if (sys.elements.empty())
        throw InvalidInput("element vector has no positive abundance");
    if (problem.candidates.empty())
        throw NoCandidates("equilibrium problem has no candidate species");
    if (!(problem.pressure > 0.0))
        throw InvalidInput("pressure must be positive");

    const auto m = static_cast<Eigen::Index>(sys.elements.size());
    const auto N = static_cast<Eigen::Index>(problem.candidates.size());
    sys.b.resize(m);
    sys.a = Eigen::MatrixXd::Zero(N, m);
    for (Eigen::Index k = 0; k < m; ++k)
        sys.b(k) = problem.b.at(sys.elements[static_cast<std::size_t>(k)]);
    sys.b_max = sys.b.maxCoeff();

    for (Eigen::Index j = 0; j < N; ++j) {
        const auto idx = problem.candidates[static_cast<std::size_t>(j)];
        if (idx >= db.size())
            throw InvalidInput("candidate index out of range");
        for (const auto& [el, count] : db[idx].composition) {
            auto it = std::find(sys.elements.begin(), sys.elements.end(), el);
            if (it == sys.elements.end())
                throw InvalidInput("candidate " + db[idx].name + " contains element " + el +
                                   " which has no abundance");
            sys.a(j, it - sys.elements.begin()) = count;
        }
    }
    std::vector<std::string> orphan;
    for (Eigen::Index k = 0; k < m; ++k)
        if (sys.a.col(k).maxCoeff() <= 0.0)
            orphan.push_back(sys.elements[static_cast<std::size_t>(k)]);
    if (!orphan.empty())
        throw SingularSystem("no candidate species carries the listed elements", orphan);
    return sys;
}

/// Elements whose constraint rows are linearly dependent on earlier ones.
std::vector<std::string> dependent_elements(const System& sys, const Eigen::VectorXd& n)
{
    std::vector<std::string> out;
    Eigen::MatrixXd rows(0, sys.a.rows());
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sys.a.cols(); ++k) {
        Eigen::MatrixXd trial(rows.rows() + 1, sys.a.rows());
        trial << rows, (sys.a.col(k).array() * n.array().sqrt()).matrix().transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
        lu.setThreshold(1e-10);
        if (lu.rank() > rank) {
            rows = trial;
            rank = lu.rank();
        } else {
            out.push_back(sys.elements[static_cast<std::size_t>(k)]);
        }
    }
    if (out.empty())
        out = sys.elements;
    return out;
}

struct Iterate {
    Eigen::VectorXd ln_n;
    std::vector<bool> floored;
};

struct Evaluation {
    Eigen::VectorXd n;
    double n_tot = 0.0;
    Eigen::VectorXd mu; // chemical potential / RT
    Eigen::VectorXd b_current;
    double gibbs = 0.0;
    double element_residual = 0.0;
};

Evaluation evaluate(const System& sys, const Eigen::VectorXd& g0, const Iterate& it)
{
    Evaluation ev;
    ev.n = it.ln_n.array().exp();
    ev.n_tot = ev.n.sum();
    ev.mu = g0.array() + it.ln_n.array() - std::log(ev.n_tot);
    ev.b_current = sys.a.transpose() * ev.n;
    ev.gibbs = ev.n.dot(ev.mu);
    ev.element_residual = (sys.b - ev.b_current).cwiseAbs().maxCoeff() / sys.b_max;
    return ev;
}

void apply_floor(const EquilibriumOptions& opts, Iterate& it)
{
    const double ln_total = std::log(it.ln_n.array().exp().sum());
    const double ln_floor = std::log(opts.trace_floor) + ln_total;
    for (Eigen::Index j = 0; j < it.ln_n.size(); ++j) {
        const bool low = it.ln_n(j) <= ln_floor;
        it.floored[static_cast<std::size_t>(j)] = low;
        if (low)
            it.ln_n(j) = ln_floor;
    }
}

struct NewtonStep {
    Eigen::VectorXd pi;
    double dln_total = 0.0;
    Eigen::VectorXd dln_n;
    double stationarity = 0.0;
    Eigen::Index worst = 0;
};

NewtonStep newton_step(const System& sys, const Evaluation& ev, const Iterate& it)
{
    const auto m = sys.a.cols();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    const Eigen::MatrixXd weighted = sys.a.array().colwise() * ev.n.array();
    M.topLeftCorner(m, m) = sys.a.transpose() * weighted;
    M.block(0, m, m, 1) = ev.b_current;
    M.block(m, 0, 1, m) = ev.b_current.transpose();
    rhs.head(m) = sys.b - ev.b_current + weighted.transpose() * ev.mu;
    rhs(m) = ev.n.dot(ev.mu);

    // Symmetric diagonal scaling keeps the pivot threshold meaningful.
    Eigen::VectorXd d(m + 1);
    for (Eigen::Index k = 0; k < m; ++k)
        d(k) = 1.0 / std::sqrt(std::max(M(k, k), std::numeric_limits<double>::min()));
    d(m) = 1.0 / std::sqrt(ev.n_tot);
    const Eigen::MatrixXd scaled = d.asDiagonal() * M * d.asDiagonal();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(scaled);
    lu.setThreshold(1e-12);
    if (lu.rank() < m + 1)
        throw SingularSystem("element-species matrix is rank deficient",
                             dependent_elements(sys, ev.n));
    const Eigen::VectorXd x = d.asDiagonal() * lu.solve(d.asDiagonal() * rhs);

    NewtonStep step;
    step.pi = x.head(m);
    step.dln_total = x(m);
    const Eigen::VectorXd potential = sys.a * step.pi;
    step.dln_n = (-ev.mu + potential).array() + step.dln_total;
    for (Eigen::Index j = 0; j < ev.mu.size(); ++j) {
        if (it.floored[static_cast<std::size_t>(j)])
            continue;
        const double r = std::abs(ev.mu(j) - potential(j));
        if (r > step.stationarity) {
            step.stationarity = r;
            step.worst = j;
        }
    }
    return step;
}

double step_length(const EquilibriumOptions& opts, const Evaluation& ev, const NewtonStep& step)
{
    // Major species and the total obey max_step; minor species may not be
    // pushed above a mole fraction of 1e-4 in one step.
    constexpr double ln_minor = -18.420680743952367; // ln 1e-8
    constexpr double ln_cap = -9.210340371976182;    // ln 1e-4
    double largest = std::abs(step.dln_total);
    double lam = 1.0;
    const double ln_total = std::log(ev.n_tot);
    for (Eigen::Index j = 0; j < ev.n.size(); ++j) {
        const double ln_x = std::log(ev.n(j)) - ln_total;
        const double d = step.dln_n(j);
        if (ln_x > ln_minor) {
            largest = std::max(largest, std::abs(d));
        } else if (d - step.dln_total > 0.0) {
            const double allowed = (ln_cap - ln_x) / (d - step.dln_total);
            lam = std::min(lam, allowed);
        }
    }
    if (largest * lam > opts.max_step)
        lam = opts.max_step / largest;
    return std::max(lam, 1e-6);
}

struct TPResult {
    Iterate iterate;
    Evaluation eval;
    NewtonStep step;
    int iterations = 0;
};

TPResult solve_tp(const System& sys, const Eigen::VectorXd& g0, Iterate it,
                  const EquilibriumOptions& opts, const ThermoDatabase& db,
                  const std::vector<std::size_t>& candidates)
{
    apply_floor(opts, it);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        auto ev = evaluate(sys, g0, it);
        auto step = newton_step(sys, ev, it);
        if (ev.element_residual <= opts.tol_element && step.stationarity <= opts.tol_stationarity) {
            // One undamped polish step; keep it only if it does not degrade the residuals.
            Iterate polished = it;
            polished.ln_n += step.dln_n;
            apply_floor(opts, polished);
            auto pev = evaluate(sys, g0, polished);
            auto pstep = newton_step(sys, pev, polished);
            if (pev.element_residual <= ev.element_residual &&
                pstep.stationarity <= std::max(step.stationarity, 1e-13))
                return {polished, pev, pstep, iter};
            return {it, ev, step, iter};
        }

        double lam = step_length(opts, ev, step);
        // G is only a usable merit function far from the solution: close in,
        // closing the element balance may legitimately raise it.
        double reach = std::abs(step.dln_total);
        for (Eigen::Index j = 0; j < ev.n.size(); ++j)
            if (ev.n(j) > 1e-8 * ev.n_tot)
                reach = std::max(reach, std::abs(step.dln_n(j)));
        Iterate trial;
        for (int halving = 0;; ++halving) {
            trial = it;
            trial.ln_n += lam * step.dln_n;
            apply_floor(opts, trial);
            if (halving >= 6 || ev.element_residual > 1e-6 || lam * reach < 0.5)
                break;
            const auto tev = evaluate(sys, g0, trial);
            if (tev.gibbs <= ev.gibbs + 1e-12 * std::abs(ev.gibbs))
                break;
            lam *= 0.5;
        }
        it = std::move(trial);
    }

    auto ev = evaluate(sys, g0, it);
    auto step = newton_step(sys, ev, it);
    NoConvergence::Diagnostics diag;
    diag.iterations = opts.max_iter;
    if (ev.element_residual > opts.tol_element) {
        diag.worst_residual = ev.element_residual;
        diag.worst_item = "element balance";
    } else {
        diag.worst_residual = step.stationarity;
        diag.worst_item = db[candidates[static_cast<std::size_t>(step.worst)]].name;
    }
    throw NoConvergence("equilibrium iteration did not converge after " + std::to_string(opts.max_iter) +
                            " iterations (worst residual " + std::to_string(diag.worst_residual) +
                            " at " + diag.worst_item + ")",
                        diag);
}

Iterate initial_iterate(const System& sys, const EquilibriumProblem& problem)
{
    const auto N = static_cast<Eigen::Index>(problem.candidates.size());
    Iterate it;
    it.ln_n.resize(N);
    it.floored.assign(static_cast<std::size_t>(N), false);
    const double uniform = 0.1 * sys.b.sum() / static_cast<double>(N);
    if (problem.initial_moles) {
        const auto& init = *problem.initial_moles;
        if (init.size() != problem.candidates.size())
            throw InvalidInput("initial_moles must have one entry per candidate");
        const double total = std::accumulate(init.begin(), init.end(), 0.0);
        if (total > 0.0) {
            for (Eigen::Index j = 0; j < N; ++j)
                it.ln_n(j) = std::log(std::max(init[static_cast<std::size_t>(j)], 1e-300));
            return it;
        }
    }
    it.ln_n.setConstant(std::log(uniform));
    return it;
}

Eigen::VectorXd standard_potentials(const ThermoDatabase& db, const std::vector<std::size_t>& candidates,
                                    double T, double pressure)
{
    Eigen::VectorXd g0(static_cast<Eigen::Index>(candidates.size()));
    const double ln_p = std::log(pressure / kStandardPressure);
    for (std::size_t j = 0; j < candidates.size(); ++j)
        g0(static_cast<Eigen::Index>(j)) = g_RT(db[candidates[j]], T).value + ln_p;
    return g0;
}

EquilibriumSolution package(const System& sys, const TPResult& r, const EquilibriumProblem& problem,
                            const ThermoDatabase& db, double T, const EquilibriumOptions& opts)
{
    EquilibriumSolution sol;
    sol.species = problem.candidates;
    sol.n.assign(r.eval.n.data(), r.eval.n.data() + r.eval.n.size());
    sol.n_tot = std::accumulate(sol.n.begin(), sol.n.end(), 0.0);
    sol.T = T;
    sol.pressure = problem.pressure;
    sol.elements = sys.elements;
    sol.lambda.assign(r.step.pi.data(), r.step.pi.data() + r.step.pi.size());
    sol.g_total = r.eval.gibbs;
    sol.iterations = r.iterations;
    sol.converged = true;
    sol.max_element_residual = r.eval.element_residual;
    sol.max_stationarity_residual = r.step.stationarity;
    for (std::size_t j = 0; j < sol.species.size(); ++j) {
        if (r.iterate.floored[j] || sol.n[j] <= opts.trace_floor * sol.n_tot)
            continue;
        if (!db[sol.species[j]].poly.in_range(T))
            sol.extrapolated = true;
    }
    return sol;
}

EquilibriumSolution run_tp(const System& sys, const EquilibriumProblem& problem, const ThermoDatabase& db,
                           const EquilibriumOptions& opts, double T)
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("equilibrium temperature must be positive");
    const auto g0 = standard_potentials(db, problem.candidates, T, problem.pressure);
    const auto r = solve_tp(sys, g0, initial_iterate(sys, problem), opts, db, problem.candidates);
    return package(sys, r, problem, db, T, opts);
}

} // namespace

EquilibriumSolution equilibrate_TP(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                   const EquilibriumOptions& opts)
{
    opts.validate();
    const auto* mode = std::get_if<TPMode>(&problem.mode);
    if (mode == nullptr)
        throw InvalidInput("equilibrate_TP requires a TP problem");
    const auto sys = build_system(problem, db);
    return run_tp(sys, problem, db, opts, mode->T);
}

EquilibriumSolution equilibrate_HP(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                   const EquilibriumOptions& opts)
{
    opts.validate();
    const auto* mode = std::get_if<HPMode>(&problem.mode);
    if (mode == nullptr)
        throw InvalidInput("equilibrate_HP requires an HP problem");
    if (!(mode->t_guess > 0.0))
        throw InvalidInput("t_guess must be positive");
    const auto sys = build_system(problem, db);

    // Temperatures the outer iteration may visit while growing its bracket.
    constexpr double kTempFloor = 100.0;
    constexpr double kTempCeiling = 8000.0;
    constexpr double kMaxGrowth = 1000.0;

    const double h_target = mode->h_target;
    double T = mode->t_guess;
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    double f_lo = 0.0;
    double f_hi = 0.0;
    double prev_T = std::numeric_limits<double>::quiet_NaN();
    double prev_f = 0.0;
    int total_iterations = 0;
    EquilibriumProblem inner = problem;

    for (int outer = 1; outer <= opts.hp_max_outer; ++outer) {
        EquilibriumSolution sol;
        try {
            sol = run_tp(sys, inner, db, opts, T);
        } catch (const NoConvergence& e) {
            auto diag = e.diagnostics();
            diag.bracket_lo = lo;
            diag.bracket_hi = hi;
            throw NoConvergence("HP outer iteration " + std::to_string(outer) + " at T = " +
                                    std::to_string(T) + " K: " + e.what(),
                                diag);
        }
        total_iterations += sol.iterations;

        double h = 0.0;
        double scale = std::abs(h_target);
        double cp = 0.0;
        for (std::size_t j = 0; j < sol.species.size(); ++j) {
            const auto& sp = db[sol.species[j]];
            const double hj = h_molar(sp, T).value;
            h += sol.n[j] * hj;
            scale += sol.n[j] * std::abs(hj);
            cp += sol.n[j] * cp_molar(sp, T).value;
        }
        const double f = h - h_target;
        if (std::abs(f) <= opts.hp_tol_H * scale) {
            sol.iterations = total_iterations;
            sol.outer_iterations = outer;
            return sol;
        }

        if (f < 0.0) {
            lo = T;
            f_lo = f;
        } else {
            hi = T;
            f_hi = f;
        }
        const bool bracketed = !std::isnan(lo) && !std::isnan(hi);

        double next = T - f / cp;
        if (bracketed) {
            const bool newton_ok = next > std::min(lo, hi) && next < std::max(lo, hi) &&
                                   (std::isnan(prev_T) || std::abs(f) < 0.5 * std::abs(prev_f));
            if (!newton_ok) {
                // Secant through the latest two iterates, else regula falsi on the bracket.
                double secant = std::isnan(prev_T) || prev_f == f
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : T - f * (T - prev_T) / (f - prev_f);
                if (!(secant > std::min(lo, hi) && secant < std::max(lo, hi)))
                    secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
                if (!(secant > std::min(lo, hi) && secant < std::max(lo, hi)))
                    secant = 0.5 * (lo + hi);
                next = secant;
            }
        } else {
            next = std::clamp(next, T - kMaxGrowth, T + kMaxGrowth);
            next = std::clamp(next, kTempFloor, kTempCeiling);
            if (next == T)
                throw NoBracket("HP temperature bracket exhausted at " + std::to_string(T) + " K",
                                kTempFloor, kTempCeiling);
        }

        prev_T = T;
        prev_f = f;
        T = next;
        if (opts.warm_start)
            inner.initial_moles = sol.n;
    }

    NoConvergence::Diagnostics diag;
    diag.iterations = opts.hp_max_outer;
    diag.worst_item = "enthalpy balance";
    diag.bracket_lo = lo;
    diag.bracket_hi = hi;
    throw NoConvergence("HP equilibrium did not converge in " + std::to_string(opts.hp_max_outer) +
                            " outer iterations",
                        diag);
}

EquilibriumSolution equilibrate(const EquilibriumProblem& problem, const ThermoDatabase& db,
                                const EquilibriumOptions& opts)
{
    if (std::holds_alternative<TPMode>(problem.mode))
        return equilibrate_TP(problem, db, opts);
    return equilibrate_HP(problem, db, opts);
}

} // namespace flametemp
