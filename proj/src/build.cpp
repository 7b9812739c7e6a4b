#include "ctmc/build.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ctmc/bound_expr.hpp"

namespace ctmc {

namespace {

// Interned state vectors: one flat arena plus a set of indices hashed by the
// row content, so each stored state costs width*4 bytes + one table slot.
class StateTable {
public:
    explicit StateTable(std::size_t width) : width_(width), set_(16, Hash{this}, Eq{this}) {}

    std::span<const std::int32_t> row(std::uint32_t idx) const {
        return {arena_.data() + std::size_t(idx) * width_, width_};
    }
    std::uint32_t size() const { return count_; }

    // Interns the row staged via stage(); returns (index, inserted).
    std::pair<std::uint32_t, bool> intern_staged() {
        std::uint32_t candidate = count_;
        auto [it, inserted] = set_.insert(candidate);
        if (inserted) {
            ++count_;
            return {candidate, true};
        }
        arena_.resize(arena_.size() - width_);
        return {*it, false};
    }

    std::int32_t* stage() {
        arena_.resize(arena_.size() + width_);
        return arena_.data() + std::size_t(count_) * width_;
    }

    std::vector<std::int32_t> take_arena() { return std::move(arena_); }

private:
    struct Hash {
        const StateTable* t;
        std::size_t operator()(std::uint32_t idx) const {
            std::span<const std::int32_t> r = t->row(idx);
            std::size_t h = 1469598103934665603ull;
            for (std::int32_t v : r) {
                h ^= static_cast<std::uint32_t>(v);
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    struct Eq {
        const StateTable* t;
        bool operator()(std::uint32_t a, std::uint32_t b) const {
            std::span<const std::int32_t> ra = t->row(a), rb = t->row(b);
            return std::equal(ra.begin(), ra.end(), rb.begin());
        }
    };

    std::size_t width_;
    std::vector<std::int32_t> arena_;
    std::uint32_t count_ = 0;
    std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

struct CompiledUpdate {
    std::size_t slot;
    BoundExpr value;
};

struct CompiledCommand {
    std::size_t module;
    const Command* src;
    BoundExpr guard;
    double rate;
    std::vector<CompiledUpdate> updates;
};

struct CompiledTransItem {
    const std::string* action;   // nullptr = unlabeled firings
    BoundExpr guard;
    double value;
};

struct Firing {
    // indices into the compiled command list, in module order
    std::vector<std::uint32_t> parts;
    const std::string* action;   // nullptr for unlabeled
    double rate;
};

} // namespace

Ctmc build_state_space(const ModelAst& ast, const BuildOptions& opts) {
    Ctmc chain;
    chain.symbols = build_symbols(ast);
    const Symbols& sym = chain.symbols;

    for (const auto& v : sym.variables)
        chain.vars.push_back({v.name, ast.modules[v.module_index].name, v.lo, v.hi});
    const std::size_t width = chain.vars.size();

    // compile commands
    std::vector<CompiledCommand> commands;
    std::vector<std::uint32_t> unlabeled;                     // command indices
    std::vector<std::string> labels;                          // first-appearance order
    std::vector<std::vector<std::vector<std::uint32_t>>> label_cmds;   // label -> module -> cmds
    std::vector<std::vector<std::size_t>> label_modules;      // label -> participating modules

    auto label_index = [&](const std::string& a) -> std::size_t {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == a) return i;
        labels.push_back(a);
        label_cmds.emplace_back(ast.modules.size());
        label_modules.emplace_back();
        return labels.size() - 1;
    };

    for (std::size_t mi = 0; mi < ast.modules.size(); ++mi) {
        for (const auto& cmd : ast.modules[mi].commands) {
            CompiledCommand cc;
            cc.module = mi;
            cc.src = &cmd;
            cc.guard = BoundExpr::compile_bool(*cmd.guard, sym);
            cc.rate = cmd.rate ? fold_constant(*cmd.rate, sym).to_double() : 1.0;
            for (const auto& up : cmd.updates) {
                const Symbols::VarInfo* v = sym.find_var(up.var);
                cc.updates.push_back({v->global_index, BoundExpr::compile_numeric(*up.value, sym)});
            }
            std::uint32_t idx = static_cast<std::uint32_t>(commands.size());
            commands.push_back(std::move(cc));
            if (cmd.action) {
                std::size_t li = label_index(*cmd.action);
                if (label_cmds[li][mi].empty()) label_modules[li].push_back(mi);
                label_cmds[li][mi].push_back(idx);
            } else {
                unlabeled.push_back(idx);
            }
        }
    }
    for (auto& mods : label_modules) std::sort(mods.begin(), mods.end());

    // compile rewards
    struct CompiledReward {
        std::vector<std::pair<BoundExpr, double>> state_items;
        std::vector<CompiledTransItem> trans_items;
    };
    std::vector<CompiledReward> rewards;
    for (const auto& block : ast.rewards) {
        CompiledReward cr;
        for (const auto& item : block.state_items)
            cr.state_items.push_back({BoundExpr::compile_bool(*item.guard, sym),
                                      fold_constant(*item.value, sym).to_double()});
        for (const auto& item : block.trans_items)
            cr.trans_items.push_back({item.action ? &*item.action : nullptr,
                                      BoundExpr::compile_bool(*item.guard, sym),
                                      fold_constant(*item.value, sym).to_double()});
        rewards.push_back(std::move(cr));
        chain.rewards.push_back({block.name, {}, {}, !block.trans_items.empty()});
    }

    StateTable table(width);
    {
        std::int32_t* init = table.stage();
        for (std::size_t i = 0; i < width; ++i)
            init[i] = static_cast<std::int32_t>(sym.variables[i].init);
        table.intern_staged();
    }
    chain.init_index = 0;

    std::vector<double> scratch_trans_reward(rewards.size());
    std::vector<std::pair<std::uint32_t, double>> row;   // (target, rate) per source

    chain.row_ptr.push_back(0);

    auto apply_firing = [&](std::span<const std::int32_t> src, const Firing& f)
        -> std::optional<std::uint32_t> {
        std::int32_t* dst = table.stage();
        std::copy(src.begin(), src.end(), dst);
        for (std::uint32_t ci : f.parts) {
            const CompiledCommand& cc = commands[ci];
            for (const auto& up : cc.updates) {
                Rational v = up.value.eval_numeric(src);
                if (!v.is_integer())
                    throw BuildError("update of '" + chain.vars[up.slot].name +
                                     "' evaluates to non-integer " + v.str() + " in command at " +
                                     cc.src->pos.str());
                std::int64_t x = v.num();
                if (x < chain.vars[up.slot].lo || x > chain.vars[up.slot].hi)
                    throw BuildError("update drives '" + chain.vars[up.slot].name +
                                     "' out of range [" + std::to_string(chain.vars[up.slot].lo) +
                                     ".." + std::to_string(chain.vars[up.slot].hi) +
                                     "] in command at " + cc.src->pos.str());
                dst[up.slot] = static_cast<std::int32_t>(x);
            }
        }
        if (std::equal(src.begin(), src.end(), dst)) {
            // true self-loop: discard
            auto [idx, inserted] = table.intern_staged();
            (void)idx;
            (void)inserted;
            return std::nullopt;
        }
        auto [idx, inserted] = table.intern_staged();
        if (inserted && table.size() > opts.max_states)
            throw BuildError("state cap exceeded: more than " + std::to_string(opts.max_states) +
                             " reachable states");
        return idx;
    };

    // the arena may reallocate while successors are staged, so the source
    // state is copied out before enumeration
    std::vector<std::int32_t> src_buf(width);
    for (std::uint32_t s = 0; s < table.size(); ++s) {
        {
            std::span<const std::int32_t> r = table.row(s);
            std::copy(r.begin(), r.end(), src_buf.begin());
        }
        std::span<const std::int32_t> src(src_buf.data(), width);
        row.clear();
        std::fill(scratch_trans_reward.begin(), scratch_trans_reward.end(), 0.0);

        auto record = [&](const Firing& f) {
            std::optional<std::uint32_t> target = apply_firing(src, f);
            if (!target) return;
            row.push_back({*target, f.rate});
            for (std::size_t b = 0; b < rewards.size(); ++b) {
                for (const auto& item : rewards[b].trans_items) {
                    bool match = item.action == nullptr
                                     ? f.action == nullptr
                                     : (f.action != nullptr && *item.action == *f.action);
                    if (match && item.guard.eval_bool(src))
                        scratch_trans_reward[b] += f.rate * item.value;
                }
            }
        };

        Firing firing;
        for (std::uint32_t ci : unlabeled) {
            if (!commands[ci].guard.eval_bool(src)) continue;
            firing.parts.assign(1, ci);
            firing.action = nullptr;
            firing.rate = commands[ci].rate;
            record(firing);
        }

        for (std::size_t li = 0; li < labels.size(); ++li) {
            const auto& mods = label_modules[li];
            // collect enabled commands per participating module
            bool blocked = false;
            std::vector<std::vector<std::uint32_t>> enabled(mods.size());
            for (std::size_t k = 0; k < mods.size() && !blocked; ++k) {
                for (std::uint32_t ci : label_cmds[li][mods[k]])
                    if (commands[ci].guard.eval_bool(src)) enabled[k].push_back(ci);
                if (enabled[k].empty()) blocked = true;
            }
            if (blocked) continue;
            // cartesian product over modules, odometer in command order
            std::vector<std::size_t> pick(mods.size(), 0);
            for (;;) {
                firing.parts.clear();
                firing.action = &labels[li];
                firing.rate = 1.0;
                for (std::size_t k = 0; k < mods.size(); ++k) {
                    std::uint32_t ci = enabled[k][pick[k]];
                    firing.parts.push_back(ci);
                    firing.rate *= commands[ci].rate;
                }
                record(firing);
                bool done = false;
                std::size_t k = mods.size();
                for (;;) {
                    if (k == 0) { done = true; break; }
                    --k;
                    if (++pick[k] < enabled[k].size()) break;
                    pick[k] = 0;
                }
                if (done) break;
            }
        }

        // merge parallel edges, sort columns
        std::stable_sort(row.begin(), row.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        double exit = 0.0;
        for (std::size_t i = 0; i < row.size();) {
            std::size_t j = i;
            double sum = 0.0;
            while (j < row.size() && row[j].first == row[i].first) sum += row[j++].second;
            chain.col.push_back(row[i].first);
            chain.rate.push_back(sum);
            exit += sum;
            i = j;
        }
        chain.row_ptr.push_back(chain.col.size());
        chain.exit_rate.push_back(exit);
        if (row.empty()) chain.deadlocks.push_back(s);

        for (std::size_t b = 0; b < rewards.size(); ++b) {
            double sr = 0.0;
            for (const auto& [guard, value] : rewards[b].state_items)
                if (guard.eval_bool(src)) sr += value;
            chain.rewards[b].state_reward.push_back(sr);
            chain.rewards[b].trans_reward_rate.push_back(scratch_trans_reward[b]);
        }
    }

    chain.n_states = table.size();
    chain.state_values = table.take_arena();
    return chain;
}

} // namespace ctmc
