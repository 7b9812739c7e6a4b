#ifndef CTMC_CHECKER_HPP
#define CTMC_CHECKER_HPP

#include <optional>
#include <string>
#include <vector>

#include "ctmc/formula.hpp"
#include "ctmc/numerics.hpp"

namespace ctmc {

struct CheckDiagnostics {
    std::uint64_t iterations = 0;
    std::int64_t fg_left = -1, fg_right = -1;
    double wall_ms = 0.0;
    bool marginal = false;           // computed value within epsilon of a bound
    std::vector<std::string> notes;
};

struct CheckResult {
    // bounded root formula
    std::optional<std::vector<std::uint32_t>> satisfying;
    bool init_satisfied = false;

    // "=?" root formula: value at the initial state
    std::optional<double> value;
    bool value_infinite = false;

    // per-state values of the root operator (when one exists)
    std::vector<double> all_values;
    std::vector<std::uint8_t> all_infinite;

    CheckDiagnostics diag;
};

struct CompareOutcome {
    bool satisfied;
    bool marginal;
};

// Strict comparison on the computed value; flags results within epsilon of
// the bound as marginal.
CompareOutcome bound_compare(double value, const Bound& bound, double epsilon);
CompareOutcome bound_compare_infinite(const Bound& bound);

// Reusable checker; steady-state analysis is computed once per chain and
// shared by all S / R[S] formulas. Reentrant over the immutable chain.
class Checker {
public:
    Checker(const Ctmc& chain, SolverConfig cfg = {});

    CheckResult check(const Formula& f);

private:
    const Ctmc& c_;
    SolverConfig cfg_;
    std::optional<SteadyAnalysis> steady_;
    CheckDiagnostics* diag_ = nullptr;

    const SteadyAnalysis& steady();

    std::vector<std::uint8_t> eval_mask(const Formula& f);
    std::vector<double> prob_values(const Formula& f);
    std::vector<double> steady_values(const Formula& f);
    std::vector<double> reward_values(const Formula& f, std::vector<std::uint8_t>* infinite);
    std::vector<double> bounded_until_values(const std::vector<std::uint8_t>& left,
                                             const std::vector<std::uint8_t>& right, double t);
};

CheckResult check(const Ctmc& chain, const Formula& f, const SolverConfig& cfg = {});

} // namespace ctmc

#endif
