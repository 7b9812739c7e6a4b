#include <algorithm>
#include <cmath>

#include "ctmc/numerics.hpp"

namespace ctmc {

namespace {

struct Transpose {
    std::vector<std::uint64_t> ptr;
    std::vector<std::uint32_t> src;
};

Transpose build_predecessors(const Ctmc& c) {
    Transpose t;
    t.ptr.assign(c.n_states + 1, 0);
    for (std::uint32_t j : c.col) ++t.ptr[j + 1];
    for (std::uint32_t i = 0; i < c.n_states; ++i) t.ptr[i + 1] += t.ptr[i];
    t.src.resize(c.col.size());
    std::vector<std::uint64_t> fill(t.ptr.begin(), t.ptr.end() - 1);
    for (std::uint32_t s = 0; s < c.n_states; ++s)
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            t.src[fill[c.col[k]]++] = s;
    return t;
}

// Backward closure from `seed` in the graph where `stop` states have their
// outgoing edges removed (an edge p->x is traversable only if p is not a
// stop state).
std::vector<std::uint8_t> backward_closure(const Ctmc& c, const Transpose& t,
                                           const std::vector<std::uint8_t>& seed,
                                           const std::vector<std::uint8_t>& stop) {
    std::vector<std::uint8_t> seen = seed;
    std::vector<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < c.n_states; ++s)
        if (seed[s]) queue.push_back(s);
    while (!queue.empty()) {
        std::uint32_t x = queue.back();
        queue.pop_back();
        for (std::uint64_t k = t.ptr[x]; k < t.ptr[x + 1]; ++k) {
            std::uint32_t p = t.src[k];
            if (seen[p] || stop[p]) continue;
            seen[p] = 1;
            queue.push_back(p);
        }
    }
    return seen;
}

// Gauss-Seidel / Jacobi sweeps for v(s) = (cost(s) + sum R(s,t) v(t)) / E(s)
// over `active` states, with v pinned elsewhere.
void solve_local_values(const Ctmc& c, const std::vector<std::uint32_t>& active,
                        const std::vector<double>& cost, std::vector<double>& v,
                        const SolverConfig& cfg, NumericsDiag& diag, const char* what) {
    std::vector<double> next;
    if (cfg.method == SolverMethod::Jacobi) next = v;
    for (std::uint64_t iter = 0; iter < cfg.max_iters; ++iter) {
        double max_delta = 0.0, max_val = 0.0;
        if (cfg.method == SolverMethod::GaussSeidel) {
            for (std::uint32_t s : active) {
                double acc = cost[s];
                for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
                    acc += c.rate[k] * v[c.col[k]];
                double nv = acc / c.exit_rate[s];
                max_delta = std::max(max_delta, std::abs(nv - v[s]));
                v[s] = nv;
                max_val = std::max(max_val, std::abs(nv));
            }
        } else {
            for (std::uint32_t s : active) {
                double acc = cost[s];
                for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
                    acc += c.rate[k] * v[c.col[k]];
                next[s] = acc / c.exit_rate[s];
            }
            for (std::uint32_t s : active) {
                max_delta = std::max(max_delta, std::abs(next[s] - v[s]));
                v[s] = next[s];
                max_val = std::max(max_val, std::abs(v[s]));
            }
        }
        if (max_delta <= cfg.epsilon * std::max(max_val, 1.0)) {
            diag.iterations += iter + 1;
            return;
        }
    }
    throw NumericError(std::string(what) + " solver did not converge within " +
                       std::to_string(cfg.max_iters) + " iterations");
}

} // namespace

ReachRewardResult reachability_reward(const Ctmc& c, const std::string& reward_block,
                                      const std::vector<std::uint8_t>& target,
                                      const SolverConfig& cfg) {
    if (target.size() != c.n_states) throw NumericError("target mask has wrong dimension");
    const Ctmc::RewardData& rd = c.reward_or_throw(reward_block);

    Transpose t = build_predecessors(c);
    // reach_target: states that can reach the target before leaving through it
    std::vector<std::uint8_t> can_reach = backward_closure(c, t, target, target);
    std::vector<std::uint8_t> escape(c.n_states, 0);   // P(F target) = 0
    for (std::uint32_t s = 0; s < c.n_states; ++s) escape[s] = can_reach[s] ? 0 : 1;
    // P(F target) < 1 exactly for states that can reach an escape state
    std::vector<std::uint8_t> below_one = backward_closure(c, t, escape, target);

    ReachRewardResult out;
    out.value.assign(c.n_states, 0.0);
    out.infinite.assign(c.n_states, 0);

    std::vector<std::uint32_t> active;
    std::vector<double> cost(c.n_states, 0.0);
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        if (target[s]) continue;   // value 0
        if (below_one[s]) {
            out.infinite[s] = 1;
            continue;
        }
        active.push_back(s);
        cost[s] = rd.state_reward[s] + rd.trans_reward_rate[s];
    }
    if (!active.empty())
        solve_local_values(c, active, cost, out.value, cfg, out.diag, "reachability-reward");
    return out;
}

std::vector<double> unbounded_until(const Ctmc& c, const std::vector<std::uint8_t>& left,
                                    const std::vector<std::uint8_t>& right,
                                    const SolverConfig& cfg, NumericsDiag* diag) {
    if (left.size() != c.n_states || right.size() != c.n_states)
        throw NumericError("mask has wrong dimension");

    // block walking through states violating the left operand (unless they
    // satisfy the right one)
    std::vector<std::uint8_t> stop(c.n_states, 0);
    for (std::uint32_t s = 0; s < c.n_states; ++s) stop[s] = right[s] || !left[s];

    Transpose t = build_predecessors(c);
    std::vector<std::uint8_t> positive = backward_closure(c, t, right, stop);

    std::vector<double> v(c.n_states, 0.0);
    std::vector<std::uint32_t> active;
    std::vector<double> cost(c.n_states, 0.0);
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        if (right[s]) {
            v[s] = 1.0;
        } else if (left[s] && positive[s] && c.exit_rate[s] > 0.0) {
            active.push_back(s);
        }
    }
    NumericsDiag local;
    if (!active.empty())
        solve_local_values(c, active, cost, v, cfg, local, "unbounded-until");
    if (diag) diag->iterations += local.iterations;
    return v;
}

} // namespace ctmc
