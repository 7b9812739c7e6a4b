#include "ctmc/sim.hpp"

#include <cmath>

#include "ctmc/bound_expr.hpp"
#include "ctmc/rng.hpp"

namespace ctmc {

namespace {

std::uint32_t pick_successor(const Ctmc& c, std::uint32_t s, double u) {
    double threshold = u * c.exit_rate[s];
    double acc = 0.0;
    std::uint64_t last = c.row_ptr[s + 1] - 1;
    for (std::uint64_t k = c.row_ptr[s]; k < last; ++k) {
        acc += c.rate[k];
        if (threshold < acc) return c.col[k];
    }
    return c.col[last];
}

} // namespace

Trajectory simulate(const Ctmc& c, std::uint64_t seed, double horizon) {
    if (!(horizon > 0.0)) throw QueryError("simulation horizon must be positive");
    Trajectory traj;
    traj.seed = seed;
    traj.horizon = horizon;

    Rng rng(seed, 0);
    std::uint32_t s = c.init_index;
    double t = 0.0;
    while (t < horizon) {
        double exit = c.exit_rate[s];
        if (exit <= 0.0) {
            traj.segments.push_back({s, horizon - t});
            break;
        }
        double dwell = rng.next_exponential(exit);
        if (t + dwell >= horizon) {
            traj.segments.push_back({s, horizon - t});
            break;
        }
        traj.segments.push_back({s, dwell});
        t += dwell;
        s = pick_successor(c, s, rng.next_double());
    }
    return traj;
}

std::uint32_t state_at_time(const Ctmc& c, std::uint64_t seed, std::uint64_t run_index, double t) {
    Rng rng(seed, run_index);
    std::uint32_t s = c.init_index;
    double now = 0.0;
    for (;;) {
        double exit = c.exit_rate[s];
        if (exit <= 0.0) return s;
        now += rng.next_exponential(exit);
        if (now > t) return s;
        s = pick_successor(c, s, rng.next_double());
    }
}

TransientEstimate estimate_transient(const Ctmc& c, const Expr& expr, double t,
                                     std::uint64_t n_runs, std::uint64_t seed) {
    if (n_runs == 0) throw QueryError("estimate requires at least one run");
    BoundExpr be = BoundExpr::compile_bool(expr, c.symbols);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n_runs; ++i) {
        std::uint32_t s = state_at_time(c, seed, i, t);
        if (be.eval_bool(c.state(s))) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(n_runs);
    double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_runs));
    return {p, half, n_runs};
}

} // namespace ctmc
