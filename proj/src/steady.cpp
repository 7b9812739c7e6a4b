#include <algorithm>
#include <cmath>

#include "ctmc/numerics.hpp"

namespace ctmc {

namespace {

// In-edges of one BSCC in local indices: for each local target, the list of
// (local source, rate).
struct LocalTranspose {
    std::vector<std::uint64_t> ptr;
    std::vector<std::uint32_t> src;
    std::vector<double> rate;
    std::vector<double> exit;   // full exit rate of each member (all mass stays inside)
};

LocalTranspose build_transpose(const Ctmc& c, const std::vector<std::uint32_t>& states) {
    const std::uint32_t n = static_cast<std::uint32_t>(states.size());
    std::vector<std::uint32_t> local(c.n_states, UINT32_MAX);
    for (std::uint32_t i = 0; i < n; ++i) local[states[i]] = i;

    LocalTranspose t;
    t.exit.resize(n);
    std::vector<std::uint32_t> indeg(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t s = states[i];
        t.exit[i] = c.exit_rate[s];
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k) {
            std::uint32_t j = local[c.col[k]];
            if (j != UINT32_MAX) ++indeg[j];
        }
    }
    t.ptr.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) t.ptr[i + 1] = t.ptr[i] + indeg[i];
    t.src.resize(t.ptr[n]);
    t.rate.resize(t.ptr[n]);
    std::vector<std::uint64_t> fill(t.ptr.begin(), t.ptr.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t s = states[i];
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k) {
            std::uint32_t j = local[c.col[k]];
            if (j == UINT32_MAX) continue;
            t.src[fill[j]] = i;
            t.rate[fill[j]] = c.rate[k];
            ++fill[j];
        }
    }
    return t;
}

// Solves pi Q = 0, sum pi = 1 on one BSCC via sweeps over the balance
// equations pi(t) = sum_s pi(s) R(s,t) / E(t).
std::vector<double> solve_bscc(const LocalTranspose& t, const SolverConfig& cfg,
                               NumericsDiag& diag) {
    const std::uint32_t n = static_cast<std::uint32_t>(t.exit.size());
    if (n == 1) return {1.0};

    double max_exit = *std::max_element(t.exit.begin(), t.exit.end());
    const double residual_goal = 0.1 * cfg.epsilon * std::max(1.0, max_exit);

    std::vector<double> pi(n, 1.0 / n), next;
    if (cfg.method == SolverMethod::Jacobi) next.resize(n);

    std::uint64_t iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        double max_delta = 0.0, max_val = 0.0;
        if (cfg.method == SolverMethod::GaussSeidel) {
            for (std::uint32_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::uint64_t k = t.ptr[i]; k < t.ptr[i + 1]; ++k)
                    acc += pi[t.src[k]] * t.rate[k];
                double v = acc / t.exit[i];
                max_delta = std::max(max_delta, std::abs(v - pi[i]));
                pi[i] = v;
            }
        } else {
            // damped sweep: a periodic embedded chain makes the plain
            // synchronous iteration oscillate
            for (std::uint32_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::uint64_t k = t.ptr[i]; k < t.ptr[i + 1]; ++k)
                    acc += pi[t.src[k]] * t.rate[k];
                next[i] = 0.5 * pi[i] + 0.5 * acc / t.exit[i];
            }
            for (std::uint32_t i = 0; i < n; ++i)
                max_delta = std::max(max_delta, std::abs(next[i] - pi[i]));
            pi.swap(next);
        }
        double sum = 0.0;
        for (double v : pi) sum += v;
        for (double& v : pi) v /= sum;
        for (double v : pi) max_val = std::max(max_val, v);

        if (max_delta <= cfg.epsilon * std::max(max_val, 1e-300)) {
            // converged by change; accept once the balance residual is tight
            double residual = 0.0;
            for (std::uint32_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::uint64_t k = t.ptr[i]; k < t.ptr[i + 1]; ++k)
                    acc += pi[t.src[k]] * t.rate[k];
                residual = std::max(residual, std::abs(acc - pi[i] * t.exit[i]));
            }
            diag.residual = std::max(diag.residual, residual);
            if (residual <= residual_goal) {
                diag.iterations += iter + 1;
                return pi;
            }
        }
    }
    throw NumericError("steady-state solver did not converge within " +
                       std::to_string(cfg.max_iters) + " iterations (residual " +
                       std::to_string(diag.residual) + ")");
}

// Reach probability of one BSCC from every state; fixed 1 inside it, 0 in
// other BSCCs, linear system over transient states.
std::vector<double> reach_probability(const Ctmc& c, const BsccDecomposition& dec,
                                      std::int32_t target_bscc, const SolverConfig& cfg_in,
                                      NumericsDiag& diag) {
    // BSCC weights feed the 1e-9 conservation contract directly, so this
    // solve runs three digits tighter than the configured epsilon
    SolverConfig cfg = cfg_in;
    cfg.epsilon = std::max(cfg_in.epsilon * 1e-3, 1e-14);

    std::vector<double> h(c.n_states, 0.0);
    for (std::uint32_t s = 0; s < c.n_states; ++s)
        if (dec.bscc_of[s] == target_bscc) h[s] = 1.0;
    if (dec.transient_states.empty()) return h;

    std::vector<double> next;
    if (cfg.method == SolverMethod::Jacobi) next.assign(c.n_states, 0.0);

    for (std::uint64_t iter = 0; iter < cfg.max_iters; ++iter) {
        double max_delta = 0.0;
        if (cfg.method == SolverMethod::GaussSeidel) {
            for (std::uint32_t s : dec.transient_states) {
                double acc = 0.0;
                for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
                    acc += c.rate[k] * h[c.col[k]];
                double v = acc / c.exit_rate[s];
                max_delta = std::max(max_delta, std::abs(v - h[s]));
                h[s] = v;
            }
        } else {
            for (std::uint32_t s : dec.transient_states) {
                double acc = 0.0;
                for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
                    acc += c.rate[k] * h[c.col[k]];
                next[s] = acc / c.exit_rate[s];
            }
            for (std::uint32_t s : dec.transient_states) {
                max_delta = std::max(max_delta, std::abs(next[s] - h[s]));
                h[s] = next[s];
            }
        }
        if (max_delta <= cfg.epsilon) {
            diag.iterations += iter + 1;
            return h;
        }
    }
    throw NumericError("reachability-probability solver did not converge within " +
                       std::to_string(cfg.max_iters) + " iterations");
}

} // namespace

std::vector<double> SteadyAnalysis::per_state_mix(const std::vector<double>& per_bscc_value) const {
    std::vector<double> out(reach.empty() ? dec.bscc_of.size() : reach[0].size(), 0.0);
    for (std::size_t b = 0; b < reach.size(); ++b) {
        double v = per_bscc_value[b];
        if (v == 0.0) continue;
        for (std::size_t s = 0; s < out.size(); ++s) out[s] += reach[b][s] * v;
    }
    return out;
}

SteadyAnalysis analyze_steady(const Ctmc& c, const SolverConfig& cfg) {
    SteadyAnalysis an;
    an.dec = bscc_decompose(c);
    const std::size_t nb = an.dec.bsccs.size();
    an.bscc_pi.resize(nb);
    an.reach.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        LocalTranspose t = build_transpose(c, an.dec.bsccs[b]);
        an.bscc_pi[b] = solve_bscc(t, cfg, an.diag);
        if (nb == 1) {
            an.reach[b].assign(c.n_states, 1.0);
        } else {
            an.reach[b] = reach_probability(c, an.dec, static_cast<std::int32_t>(b), cfg, an.diag);
        }
    }
    // the reach vectors partition unity at every state; enforcing that
    // identity keeps returned distributions summing to 1 at rounding level
    if (nb > 1) {
        for (std::uint32_t s = 0; s < c.n_states; ++s) {
            double total = 0.0;
            for (std::size_t b = 0; b < nb; ++b) total += an.reach[b][s];
            if (total > 0.0)
                for (std::size_t b = 0; b < nb; ++b) an.reach[b][s] /= total;
        }
    }
    return an;
}

std::vector<double> steady_state_distribution(const Ctmc& c, const std::vector<double>& initial,
                                              const SolverConfig& cfg, NumericsDiag* diag) {
    if (initial.size() != c.n_states)
        throw NumericError("initial distribution has wrong dimension");
    double sum = 0.0;
    for (double v : initial) {
        if (v < 0.0) throw NumericError("initial distribution has a negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw NumericError("initial distribution sums to " + std::to_string(sum) + ", not 1");

    SteadyAnalysis an = analyze_steady(c, cfg);
    std::vector<double> pi(c.n_states, 0.0);
    for (std::size_t b = 0; b < an.dec.bsccs.size(); ++b) {
        double weight = 0.0;
        for (std::uint32_t s = 0; s < c.n_states; ++s)
            if (initial[s] != 0.0) weight += initial[s] * an.reach[b][s];
        if (weight == 0.0) continue;
        const auto& members = an.dec.bsccs[b];
        for (std::size_t i = 0; i < members.size(); ++i)
            pi[members[i]] += weight * an.bscc_pi[b][i];
    }
    if (diag) *diag = an.diag;
    return pi;
}

} // namespace ctmc
