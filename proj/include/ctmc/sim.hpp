#ifndef CTMC_SIM_HPP
#define CTMC_SIM_HPP

#include <cstdint>
#include <vector>

#include "ctmc/ctmc.hpp"
#include "ctmc/expr.hpp"

namespace ctmc {

struct Trajectory {
    std::uint64_t seed = 0;
    double horizon = 0.0;
    struct Segment {
        std::uint32_t state;
        double sojourn;
    };
    std::vector<Segment> segments;   // sojourns sum to horizon
};

// Gillespie simulation from the initial state: exponential sojourns with the
// exit rate, successor by rate-proportional choice. Deterministic per seed.
Trajectory simulate(const Ctmc& c, std::uint64_t seed, double horizon);

// State occupied at time t for one run (cheaper than a full trajectory).
std::uint32_t state_at_time(const Ctmc& c, std::uint64_t seed, std::uint64_t run_index, double t);

struct TransientEstimate {
    double estimate;
    double half_width_95;
    std::uint64_t runs;
};

// Monte-Carlo fraction of runs satisfying `expr` at time t, with the
// normal-approximation 95% half-width.
TransientEstimate estimate_transient(const Ctmc& c, const Expr& expr, double t,
                                     std::uint64_t n_runs, std::uint64_t seed);

} // namespace ctmc

#endif
