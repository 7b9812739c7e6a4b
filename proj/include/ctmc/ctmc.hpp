#ifndef CTMC_CTMC_HPP
#define CTMC_CTMC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctmc/ast.hpp"
#include "ctmc/validate.hpp"

namespace ctmc {

// Explicit sparse-rate-matrix chain. Immutable once built; safe to share
// across threads for concurrent queries.
struct Ctmc {
    struct VarMeta {
        std::string name;
        std::string module;
        std::int64_t lo, hi;
    };

    struct RewardData {
        std::string name;
        std::vector<double> state_reward;       // per state
        // Expected transition-reward accumulation rate per state:
        // sum over stored firings from s of rate * matched item values.
        std::vector<double> trans_reward_rate;
        bool has_trans_items = false;
    };

    std::vector<VarMeta> vars;
    std::uint32_t n_states = 0;
    std::uint32_t init_index = 0;
    std::vector<std::int32_t> state_values;     // n_states x vars.size(), row-major

    // Row-compressed rate matrix; true self-loops removed, parallel edges
    // merged, columns sorted ascending within each row.
    std::vector<std::uint64_t> row_ptr;         // size n_states + 1
    std::vector<std::uint32_t> col;
    std::vector<double> rate;
    std::vector<double> exit_rate;              // row sums
    std::vector<std::uint32_t> deadlocks;       // states with exit rate 0

    std::vector<RewardData> rewards;
    Symbols symbols;                            // for evaluating expressions over states

    std::span<const std::int32_t> state(std::uint32_t s) const {
        return {state_values.data() + std::size_t(s) * vars.size(), vars.size()};
    }
    std::uint64_t transition_count() const { return col.size(); }
    double max_exit_rate() const;

    const RewardData* find_reward(const std::string& name) const;
    const RewardData& reward_or_throw(const std::string& name) const;

    // Exact satisfaction mask/set of a boolean expression over the variables.
    std::vector<std::uint8_t> sat_mask(const Expr& e) const;
    std::vector<std::uint32_t> sat_set(const Expr& e) const;

    // R(s,s') / E(s); throws QueryError when s is absorbing.
    double jump_probability(std::uint32_t s, std::uint32_t target) const;
    double rate_between(std::uint32_t s, std::uint32_t target) const;   // 0 if absent
};

// Plain-text exports of the explicit chain (documented in docs/cli.md).
void export_tra(const Ctmc& c, const std::string& path);
void export_sta(const Ctmc& c, const std::string& path);
void export_lab(const Ctmc& c, const std::string& path);

} // namespace ctmc

#endif
