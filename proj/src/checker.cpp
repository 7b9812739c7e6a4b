#include "ctmc/checker.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace ctmc {

CompareOutcome bound_compare(double value, const Bound& bound, double epsilon) {
    double p = bound.value.to_double();
    bool sat;
    switch (bound.op) {
        case BoundOp::Lt: sat = value < p; break;
        case BoundOp::Le: sat = value <= p; break;
        case BoundOp::Ge: sat = value >= p; break;
        case BoundOp::Gt: sat = value > p; break;
        default: sat = false; break;
    }
    return {sat, std::abs(value - p) < epsilon};
}

CompareOutcome bound_compare_infinite(const Bound& bound) {
    bool sat = bound.op == BoundOp::Ge || bound.op == BoundOp::Gt;
    return {sat, false};
}

Checker::Checker(const Ctmc& chain, SolverConfig cfg) : c_(chain), cfg_(cfg) {}

namespace {

// probability vectors may overshoot [0,1] by rounding; pull them back
void clamp_probabilities(std::vector<double>& v) {
    for (double& x : v) {
        if (x > 1.0 && x < 1.0 + 1e-9) x = 1.0;
        if (x < 0.0 && x > -1e-12) x = 0.0;
    }
}

} // namespace

const SteadyAnalysis& Checker::steady() {
    if (!steady_) steady_ = analyze_steady(c_, cfg_);
    return *steady_;
}

// P(left U[0,t] right) per state: right states absorbing-accepting, states
// violating both absorbing-rejecting, transient mass of `right` at t.
std::vector<double> Checker::bounded_until_values(const std::vector<std::uint8_t>& left,
                                                  const std::vector<std::uint8_t>& right,
                                                  double t) {
    std::vector<double> u0(c_.n_states, 0.0);
    std::vector<std::uint8_t> absorbing(c_.n_states, 0);
    for (std::uint32_t s = 0; s < c_.n_states; ++s) {
        if (right[s]) {
            u0[s] = 1.0;
            absorbing[s] = 1;
        } else if (!left[s]) {
            absorbing[s] = 1;
        }
    }
    if (t == 0.0) return u0;
    NumericsDiag nd;
    std::vector<double> out = backward_transient_values(c_, std::move(u0), t, &absorbing, cfg_, &nd);
    if (diag_) {
        diag_->iterations += nd.iterations;
        diag_->fg_left = static_cast<std::int64_t>(nd.fg_left);
        diag_->fg_right = static_cast<std::int64_t>(nd.fg_right);
    }
    return out;
}

std::vector<double> Checker::prob_values(const Formula& f) {
    std::vector<std::uint8_t> left = eval_mask(*f.lhs);
    std::vector<std::uint8_t> right = eval_mask(*f.rhs);
    const double lo = f.interval.lo.to_double();
    const bool has_hi = f.interval.hi.has_value();
    const double hi = has_hi ? f.interval.hi->to_double() : 0.0;

    if (!has_hi && lo == 0.0) {
        // plain unbounded until
        NumericsDiag nd;
        std::vector<double> v = unbounded_until(c_, left, right, cfg_, &nd);
        if (diag_) diag_->iterations += nd.iterations;
        clamp_probabilities(v);
        return v;
    }

    if (has_hi && lo == hi) {
        // point interval: right must hold at exactly t, left throughout
        std::vector<double> u0(c_.n_states, 0.0);
        if (lo == 0.0) {
            for (std::uint32_t s = 0; s < c_.n_states; ++s) u0[s] = right[s] ? 1.0 : 0.0;
            return u0;
        }
        std::vector<std::uint8_t> absorbing(c_.n_states, 0);
        for (std::uint32_t s = 0; s < c_.n_states; ++s) {
            absorbing[s] = left[s] ? 0 : 1;
            u0[s] = (left[s] && right[s]) ? 1.0 : 0.0;
        }
        NumericsDiag nd;
        std::vector<double> out =
            backward_transient_values(c_, std::move(u0), lo, &absorbing, cfg_, &nd);
        if (diag_) {
            diag_->iterations += nd.iterations;
            diag_->fg_left = static_cast<std::int64_t>(nd.fg_left);
            diag_->fg_right = static_cast<std::int64_t>(nd.fg_right);
        }
        return out;
    }

    if (has_hi && lo == 0.0) return bounded_until_values(left, right, hi);

    // lo > 0: evolve constrained to `left` over [0,lo], then the remaining
    // bounded or unbounded until from there
    std::vector<double> tail;
    if (has_hi) {
        tail = bounded_until_values(left, right, hi - lo);
    } else {
        NumericsDiag nd;
        tail = unbounded_until(c_, left, right, cfg_, &nd);
        if (diag_) diag_->iterations += nd.iterations;
    }
    std::vector<double> u0(c_.n_states, 0.0);
    std::vector<std::uint8_t> absorbing(c_.n_states, 0);
    for (std::uint32_t s = 0; s < c_.n_states; ++s) {
        absorbing[s] = left[s] ? 0 : 1;
        u0[s] = left[s] ? tail[s] : 0.0;
    }
    NumericsDiag nd;
    std::vector<double> out = backward_transient_values(c_, std::move(u0), lo, &absorbing, cfg_, &nd);
    if (diag_) {
        diag_->iterations += nd.iterations;
        diag_->fg_left = static_cast<std::int64_t>(nd.fg_left);
        diag_->fg_right = static_cast<std::int64_t>(nd.fg_right);
    }
    return out;
}

std::vector<double> Checker::steady_values(const Formula& f) {
    std::vector<std::uint8_t> mask = eval_mask(*f.lhs);
    const SteadyAnalysis& an = steady();
    std::vector<double> per_bscc(an.dec.bsccs.size(), 0.0);
    for (std::size_t b = 0; b < an.dec.bsccs.size(); ++b) {
        double v = 0.0;
        const auto& members = an.dec.bsccs[b];
        for (std::size_t i = 0; i < members.size(); ++i)
            if (mask[members[i]]) v += an.bscc_pi[b][i];
        per_bscc[b] = v;
    }
    std::vector<double> values = an.per_state_mix(per_bscc);
    clamp_probabilities(values);
    return values;
}

std::vector<double> Checker::reward_values(const Formula& f, std::vector<std::uint8_t>* infinite) {
    const Ctmc::RewardData& rd = c_.reward_or_throw(f.reward_name);
    switch (f.reward_kind) {
        case RewardKind::Instant: {
            NumericsDiag nd;
            std::vector<double> out = backward_transient_values(
                c_, rd.state_reward, f.reward_time.to_double(), nullptr, cfg_, &nd);
            if (diag_) {
                diag_->iterations += nd.iterations;
                diag_->fg_left = static_cast<std::int64_t>(nd.fg_left);
                diag_->fg_right = static_cast<std::int64_t>(nd.fg_right);
            }
            return out;
        }
        case RewardKind::Cumulative: {
            std::vector<double> rho(c_.n_states);
            for (std::uint32_t s = 0; s < c_.n_states; ++s)
                rho[s] = rd.state_reward[s] + rd.trans_reward_rate[s];
            NumericsDiag nd;
            std::vector<double> out =
                backward_cumulative_values(c_, rho, f.reward_time.to_double(), cfg_, &nd);
            if (diag_) {
                diag_->iterations += nd.iterations;
                diag_->fg_left = static_cast<std::int64_t>(nd.fg_left);
                diag_->fg_right = static_cast<std::int64_t>(nd.fg_right);
            }
            return out;
        }
        case RewardKind::Reach: {
            std::vector<std::uint8_t> target = eval_mask(*f.lhs);
            ReachRewardResult rr = reachability_reward(c_, f.reward_name, target, cfg_);
            if (diag_) diag_->iterations += rr.diag.iterations;
            if (infinite) *infinite = std::move(rr.infinite);
            return std::move(rr.value);
        }
        case RewardKind::LongRun: {
            const SteadyAnalysis& an = steady();
            std::vector<double> per_bscc(an.dec.bsccs.size(), 0.0);
            for (std::size_t b = 0; b < an.dec.bsccs.size(); ++b) {
                double v = 0.0;
                const auto& members = an.dec.bsccs[b];
                for (std::size_t i = 0; i < members.size(); ++i) {
                    std::uint32_t s = members[i];
                    v += an.bscc_pi[b][i] * (rd.state_reward[s] + rd.trans_reward_rate[s]);
                }
                per_bscc[b] = v;
            }
            return an.per_state_mix(per_bscc);
        }
    }
    throw QueryError("unhandled reward kind");
}

std::vector<std::uint8_t> Checker::eval_mask(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::Atom:
            return c_.sat_mask(*f.atom);
        case FormulaKind::Not: {
            std::vector<std::uint8_t> m = eval_mask(*f.lhs);
            for (auto& x : m) x = !x;
            return m;
        }
        case FormulaKind::And: {
            std::vector<std::uint8_t> a = eval_mask(*f.lhs), b = eval_mask(*f.rhs);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
            return a;
        }
        case FormulaKind::Or: {
            std::vector<std::uint8_t> a = eval_mask(*f.lhs), b = eval_mask(*f.rhs);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
            return a;
        }
        default: {
            if (!f.bound)
                throw QueryError("'=?' query may only appear at the top level");
            std::vector<std::uint8_t> infinite;
            std::vector<double> values;
            if (f.kind == FormulaKind::Prob) values = prob_values(f);
            else if (f.kind == FormulaKind::Steady) values = steady_values(f);
            else values = reward_values(f, &infinite);
            std::vector<std::uint8_t> mask(c_.n_states, 0);
            bool any_marginal = false;
            for (std::uint32_t s = 0; s < c_.n_states; ++s) {
                CompareOutcome o = (!infinite.empty() && infinite[s])
                                       ? bound_compare_infinite(*f.bound)
                                       : bound_compare(values[s], *f.bound, cfg_.epsilon);
                mask[s] = o.satisfied;
                any_marginal |= o.marginal;
                if (o.marginal && s == c_.init_index && diag_) diag_->marginal = true;
            }
            if (any_marginal && diag_)
                diag_->notes.push_back("some state values lie within epsilon of the bound " +
                                       f.bound->value.str());
            return mask;
        }
    }
}

CheckResult Checker::check(const Formula& f) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    diag_ = &res.diag;

    bool is_query = (f.kind == FormulaKind::Prob || f.kind == FormulaKind::Steady ||
                     f.kind == FormulaKind::Reward) &&
                    !f.bound;
    if (is_query) {
        std::vector<std::uint8_t> infinite;
        if (f.kind == FormulaKind::Prob) res.all_values = prob_values(f);
        else if (f.kind == FormulaKind::Steady) res.all_values = steady_values(f);
        else res.all_values = reward_values(f, &infinite);
        res.all_infinite = std::move(infinite);
        if (!res.all_infinite.empty() && res.all_infinite[c_.init_index]) {
            res.value_infinite = true;
            res.value = std::numeric_limits<double>::infinity();
        } else {
            res.value = res.all_values[c_.init_index];
        }
    } else {
        std::vector<std::uint8_t> mask = eval_mask(f);
        res.satisfying.emplace();
        for (std::uint32_t s = 0; s < c_.n_states; ++s)
            if (mask[s]) res.satisfying->push_back(s);
        res.init_satisfied = mask[c_.init_index];
    }

    auto t1 = std::chrono::steady_clock::now();
    res.diag.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    diag_ = nullptr;
    return res;
}

CheckResult check(const Ctmc& chain, const Formula& f, const SolverConfig& cfg) {
    Checker ck(chain, cfg);
    return ck.check(f);
}

} // namespace ctmc
