#include <algorithm>
#include <cmath>

#include "ctmc/numerics.hpp"

namespace ctmc {

double uniformization_rate(const Ctmc& c, const SolverConfig& cfg) {
    double m = c.max_exit_rate();
    if (m <= 0.0) return 1.0;
    return cfg.unif_factor * m;
}

namespace {

void check_distribution(const Ctmc& c, const std::vector<double>& d) {
    if (d.size() != c.n_states)
        throw NumericError("initial distribution has wrong dimension");
    double sum = 0.0;
    for (double v : d) {
        if (v < 0.0) throw NumericError("initial distribution has a negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw NumericError("initial distribution sums to " + std::to_string(sum) + ", not 1");
}

// y = x * P with P = I + Q/q; rows flagged absorbing act as identity.
void forward_step(const Ctmc& c, double q, const std::vector<std::uint8_t>* absorbing,
                  const std::vector<double>& x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    const double inv_q = 1.0 / q;
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        double xs = x[s];
        if (xs == 0.0) continue;
        if (absorbing && (*absorbing)[s]) {
            y[s] += xs;
            continue;
        }
        y[s] += xs * (1.0 - c.exit_rate[s] * inv_q);
        double scaled = xs * inv_q;
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            y[c.col[k]] += scaled * c.rate[k];
    }
}

// u' = P * u; rows flagged absorbing keep their value.
void backward_step(const Ctmc& c, double q, const std::vector<std::uint8_t>* absorbing,
                   const std::vector<double>& u, std::vector<double>& out) {
    const double inv_q = 1.0 / q;
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        if (absorbing && (*absorbing)[s]) {
            out[s] = u[s];
            continue;
        }
        double acc = u[s] * (1.0 - c.exit_rate[s] * inv_q);
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            acc += c.rate[k] * u[c.col[k]] * inv_q;
        out[s] = acc;
    }
}

std::uint64_t clamp_negatives(std::vector<double>& v) {
    std::uint64_t clamped = 0;
    for (double& x : v) {
        if (x < 0.0) {
            if (x < -1e-12)
                throw NumericError("uniformization produced materially negative entry " +
                                   std::to_string(x));
            x = 0.0;
            ++clamped;
        }
    }
    return clamped;
}

} // namespace

std::vector<double> transient_distribution(const Ctmc& c, const std::vector<double>& initial,
                                           double t, const SolverConfig& cfg,
                                           NumericsDiag* diag) {
    check_distribution(c, initial);
    if (t < 0.0 || !std::isfinite(t)) throw NumericError("time bound must be finite and >= 0");
    if (t == 0.0) return initial;

    const double q = uniformization_rate(c, cfg);
    FoxGlynnWeights fg = fox_glynn(q * t, cfg.fg_epsilon);
    if (diag) {
        diag->fg_left = fg.left;
        diag->fg_right = fg.right;
        diag->iterations = fg.right;
    }

    std::vector<double> vec = initial, next(c.n_states), result(c.n_states, 0.0);
    for (std::uint64_t k = 0;; ++k) {
        if (k >= fg.left) {
            double w = fg.weight(k) / fg.total_weight;
            for (std::uint32_t s = 0; s < c.n_states; ++s) result[s] += w * vec[s];
        }
        if (k >= fg.right) break;
        forward_step(c, q, nullptr, vec, next);
        vec.swap(next);
    }
    std::uint64_t clamped = clamp_negatives(result);
    if (diag) diag->clamped_negative += clamped;
    return result;
}

std::vector<double> backward_transient_values(const Ctmc& c, std::vector<double> values,
                                              double t, const std::vector<std::uint8_t>* absorbing,
                                              const SolverConfig& cfg, NumericsDiag* diag) {
    if (values.size() != c.n_states) throw NumericError("value vector has wrong dimension");
    if (t < 0.0 || !std::isfinite(t)) throw NumericError("time bound must be finite and >= 0");
    if (t == 0.0) return values;

    const double q = uniformization_rate(c, cfg);
    FoxGlynnWeights fg = fox_glynn(q * t, cfg.fg_epsilon);
    if (diag) {
        diag->fg_left = fg.left;
        diag->fg_right = fg.right;
        diag->iterations = fg.right;
    }

    std::vector<double> vec = std::move(values), next(c.n_states), result(c.n_states, 0.0);
    for (std::uint64_t k = 0;; ++k) {
        if (k >= fg.left) {
            double w = fg.weight(k) / fg.total_weight;
            for (std::uint32_t s = 0; s < c.n_states; ++s) result[s] += w * vec[s];
        }
        if (k >= fg.right) break;
        backward_step(c, q, absorbing, vec, next);
        vec.swap(next);
    }
    std::uint64_t clamped = clamp_negatives(result);
    if (diag) diag->clamped_negative += clamped;
    return result;
}

std::vector<double> backward_cumulative_values(const Ctmc& c, const std::vector<double>& rate_vector,
                                               double t, const SolverConfig& cfg,
                                               NumericsDiag* diag) {
    if (rate_vector.size() != c.n_states) throw NumericError("reward vector has wrong dimension");
    if (t < 0.0 || !std::isfinite(t)) throw NumericError("time bound must be finite and >= 0");
    std::vector<double> result(c.n_states, 0.0);
    if (t == 0.0) return result;

    const double q = uniformization_rate(c, cfg);
    FoxGlynnWeights fg = fox_glynn(q * t, cfg.fg_epsilon);
    if (diag) {
        diag->fg_left = fg.left;
        diag->fg_right = fg.right;
        diag->iterations = fg.right;
    }

    // E_s[int_0^t r(X_u) du] = sum_k P(N > k)/q * (P^k r)(s)
    std::vector<double> vec = rate_vector, next(c.n_states);
    double cdf = 0.0;
    const double inv_q = 1.0 / q;
    for (std::uint64_t k = 0; k <= fg.right; ++k) {
        if (k >= fg.left) cdf += fg.weight(k) / fg.total_weight;
        double factor = (1.0 - cdf) * inv_q;
        if (factor > 0.0)
            for (std::uint32_t s = 0; s < c.n_states; ++s) result[s] += factor * vec[s];
        if (k == fg.right) break;
        backward_step(c, q, nullptr, vec, next);
        vec.swap(next);
    }
    std::uint64_t clamped = clamp_negatives(result);
    if (diag) diag->clamped_negative += clamped;
    return result;
}

double cumulative_state_reward(const Ctmc& c, const std::string& reward_block,
                               const std::vector<double>& initial, double t,
                               const SolverConfig& cfg, NumericsDiag* diag) {
    check_distribution(c, initial);
    const Ctmc::RewardData& rd = c.reward_or_throw(reward_block);
    std::vector<double> rho(c.n_states);
    for (std::uint32_t s = 0; s < c.n_states; ++s)
        rho[s] = rd.state_reward[s] + rd.trans_reward_rate[s];
    std::vector<double> per_state = backward_cumulative_values(c, rho, t, cfg, diag);
    double total = 0.0;
    for (std::uint32_t s = 0; s < c.n_states; ++s) total += initial[s] * per_state[s];
    return total;
}

} // namespace ctmc
