#ifndef CTMC_NUMERICS_HPP
#define CTMC_NUMERICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ctmc/ctmc.hpp"
#include "ctmc/fox_glynn.hpp"

namespace ctmc {

enum class SolverMethod { Jacobi, GaussSeidel };

struct SolverConfig {
    SolverMethod method = SolverMethod::GaussSeidel;
    double epsilon = 1e-9;              // relative convergence threshold
    std::uint64_t max_iters = 1'000'000;
    double unif_factor = 1.02;          // q = factor * max exit rate
    double fg_epsilon = 1e-12;          // Poisson truncation accuracy
};

struct NumericsDiag {
    std::uint64_t iterations = 0;
    std::uint64_t fg_left = 0, fg_right = 0;
    double residual = 0.0;
    std::uint64_t clamped_negative = 0;   // cancellation wiggle pulled up to 0
};

// ------------------------------------------------------------- uniformization

// Distribution over states at time t started from `initial` (forward sums).
std::vector<double> transient_distribution(const Ctmc& c, const std::vector<double>& initial,
                                           double t, const SolverConfig& cfg = {},
                                           NumericsDiag* diag = nullptr);

// Backward uniformization: expectation of `values` read at time t, as a
// per-state vector u(s) = E_s[ values(X_t) ]. States flagged in `absorbing`
// (optional) freeze their value, which realizes the until transformations.
std::vector<double> backward_transient_values(const Ctmc& c, std::vector<double> values,
                                              double t, const std::vector<std::uint8_t>* absorbing,
                                              const SolverConfig& cfg = {},
                                              NumericsDiag* diag = nullptr);

// Per-state expected reward integrated over [0,t]:
// u(s) = E_s[ int_0^t rate_vector(X_u) du ].
std::vector<double> backward_cumulative_values(const Ctmc& c, const std::vector<double>& rate_vector,
                                               double t, const SolverConfig& cfg = {},
                                               NumericsDiag* diag = nullptr);

// E[ int_0^t reward(X_u) du ] from an initial distribution; includes
// transition rewards as rate-weighted instantaneous contributions.
double cumulative_state_reward(const Ctmc& c, const std::string& reward_block,
                               const std::vector<double>& initial, double t,
                               const SolverConfig& cfg = {}, NumericsDiag* diag = nullptr);

// --------------------------------------------------------------------- graphs

struct BsccDecomposition {
    std::uint32_t scc_count = 0;
    std::vector<std::uint32_t> scc_of;                  // per state
    std::vector<std::vector<std::uint32_t>> bsccs;      // states, ascending
    std::vector<std::int32_t> bscc_of;                  // per state, -1 = transient
    std::vector<std::uint32_t> transient_states;
};

BsccDecomposition bscc_decompose(const Ctmc& c);

// ---------------------------------------------------------------- steady state

struct SteadyAnalysis {
    BsccDecomposition dec;
    // conditional long-run distribution inside each BSCC, aligned with
    // dec.bsccs[b]
    std::vector<std::vector<double>> bscc_pi;
    // reach[b][s] = probability of eventually entering BSCC b from state s
    std::vector<std::vector<double>> reach;
    NumericsDiag diag;

    // value(s) = sum_b reach[b][s] * per_bscc_value[b]
    std::vector<double> per_state_mix(const std::vector<double>& per_bscc_value) const;
};

SteadyAnalysis analyze_steady(const Ctmc& c, const SolverConfig& cfg = {});

std::vector<double> steady_state_distribution(const Ctmc& c, const std::vector<double>& initial,
                                              const SolverConfig& cfg = {},
                                              NumericsDiag* diag = nullptr);

// ---------------------------------------------------------- reachability reward

struct ReachRewardResult {
    std::vector<double> value;          // per state; meaningless where infinite
    std::vector<std::uint8_t> infinite; // target reached with probability < 1
    NumericsDiag diag;
};

ReachRewardResult reachability_reward(const Ctmc& c, const std::string& reward_block,
                                      const std::vector<std::uint8_t>& target,
                                      const SolverConfig& cfg = {});

// Probability of reaching `target` through `allowed` states (unbounded until);
// used for U with an unbounded horizon.
std::vector<double> unbounded_until(const Ctmc& c, const std::vector<std::uint8_t>& left,
                                    const std::vector<std::uint8_t>& right,
                                    const SolverConfig& cfg = {}, NumericsDiag* diag = nullptr);

// ------------------------------------------------------------------ test oracle

// Dense e^{Qt} by scaling-and-squaring; n <= 200. Q is row-major n*n.
std::vector<double> matrix_exponential_oracle(const std::vector<double>& q_dense, std::size_t n,
                                              double t);

double uniformization_rate(const Ctmc& c, const SolverConfig& cfg);

} // namespace ctmc

#endif
