#include "support/generators.hpp"

#include <set>

#include "support/fixtures.hpp"

namespace testsup {

using namespace ctmc;

Ctmc random_ctmc(Rng& rng, std::uint32_t max_states, double min_rate, double max_rate) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(pick(rng, max_states - 1));
    std::vector<Edge> edges;
    for (std::uint32_t s = 0; s < n; ++s) {
        std::uint32_t degree = static_cast<std::uint32_t>(pick(rng, std::min(5u, n)));
        std::set<std::uint32_t> targets;
        for (std::uint32_t d = 0; d < degree; ++d) {
            std::uint32_t t = static_cast<std::uint32_t>(pick(rng, n));
            if (t == s || !targets.insert(t).second) continue;
            // round to a handful of digits so literals survive text round trips
            double r = uniform(rng, min_rate, max_rate);
            edges.push_back({s, t, r});
        }
    }
    return make_chain(n, edges);
}

namespace {

// decimal literal with up to 2 fraction digits, in (0, 10]
Rational random_positive_rate(Rng& rng) {
    std::int64_t hundredths = 1 + static_cast<std::int64_t>(pick(rng, 1000));
    return Rational(hundredths, 100);
}

ExprPtr number(std::int64_t v) { return Expr::make_number(Rational(v)); }

// comparison var ~ literal within the variable's range neighborhood
ExprPtr random_comparison(Rng& rng, const std::vector<VarDecl>& vars) {
    const VarDecl& v = vars[pick(rng, vars.size())];
    std::int64_t k = v.lo + static_cast<std::int64_t>(pick(rng, (v.hi - v.lo) + 1));
    ExprKind op;
    switch (pick(rng, 6)) {
        case 0: op = ExprKind::Eq; break;
        case 1: op = ExprKind::Ne; break;
        case 2: op = ExprKind::Lt; break;
        case 3: op = ExprKind::Le; break;
        case 4: op = ExprKind::Gt; break;
        default: op = ExprKind::Ge; break;
    }
    return Expr::make_binary(op, Expr::make_ident(v.name), number(k));
}

ExprPtr random_guard(Rng& rng, const std::vector<VarDecl>& vars,
                     const std::vector<std::string>& bool_consts, int depth) {
    if (depth <= 0 || pick(rng, 3) == 0) {
        switch (pick(rng, 5)) {
            case 0:
                return Expr::make_bool(true);
            case 1:
                if (!bool_consts.empty())
                    return Expr::make_ident(bool_consts[pick(rng, bool_consts.size())]);
                [[fallthrough]];
            default:
                return random_comparison(rng, vars);
        }
    }
    switch (pick(rng, 3)) {
        case 0:
            return Expr::make_binary(ExprKind::And,
                                     random_guard(rng, vars, bool_consts, depth - 1),
                                     random_guard(rng, vars, bool_consts, depth - 1));
        case 1:
            return Expr::make_binary(ExprKind::Or,
                                     random_guard(rng, vars, bool_consts, depth - 1),
                                     random_guard(rng, vars, bool_consts, depth - 1));
        default:
            return Expr::make_unary(ExprKind::Not,
                                    random_guard(rng, vars, bool_consts, depth - 1));
    }
}

Command random_command(Rng& rng, const ModuleDef& m, const std::vector<VarDecl>& all_vars,
                       const std::vector<std::string>& bool_consts,
                       const std::vector<std::string>& label_pool) {
    Command cmd;
    bool labeled = pick(rng, 2) == 0 && !label_pool.empty();
    if (labeled) cmd.action = label_pool[pick(rng, label_pool.size())];
    cmd.guard = random_guard(rng, all_vars, bool_consts, 2);
    if (!labeled || pick(rng, 2) == 0)
        cmd.rate = Expr::make_number(random_positive_rate(rng));
    std::size_t n_updates = pick(rng, std::min<std::size_t>(m.variables.size(), 2)) + 1;
    std::set<std::size_t> chosen;
    for (std::size_t u = 0; u < n_updates; ++u) {
        std::size_t vi = pick(rng, m.variables.size());
        if (!chosen.insert(vi).second) continue;
        const VarDecl& v = m.variables[vi];
        std::int64_t value = v.lo + static_cast<std::int64_t>(pick(rng, (v.hi - v.lo) + 1));
        cmd.updates.push_back({v.name, number(value)});
    }
    if (pick(rng, 8) == 0) cmd.reaction_id = static_cast<int>(pick(rng, 40));
    return cmd;
}

ModelAst random_model(Rng& rng, std::size_t n_modules, std::size_t max_vars_per_module,
                      bool with_rewards) {
    ModelAst ast;
    std::vector<std::string> bool_consts;
    std::size_t n_consts = pick(rng, 3);
    for (std::size_t i = 0; i < n_consts; ++i) {
        ConstDecl c;
        c.name = "c" + std::to_string(i);
        if (pick(rng, 3) == 0) {
            c.is_bool = true;
            c.bval = pick(rng, 2) == 0;
            bool_consts.push_back(c.name);
        } else {
            c.number = random_positive_rate(rng);
        }
        ast.constants.push_back(std::move(c));
    }

    std::vector<std::string> label_pool;
    for (std::size_t i = 0; i < 1 + pick(rng, 3); ++i)
        label_pool.push_back("act" + std::to_string(i));

    std::vector<VarDecl> all_vars;
    int var_counter = 0;
    for (std::size_t mi = 0; mi < n_modules; ++mi) {
        ModuleDef m;
        m.name = "m" + std::to_string(mi);
        std::size_t nv = 1 + pick(rng, max_vars_per_module);
        for (std::size_t vi = 0; vi < nv; ++vi) {
            VarDecl v;
            v.name = "v" + std::to_string(var_counter++);
            v.lo = 0;
            v.hi = 1 + static_cast<std::int64_t>(pick(rng, 3));
            v.init = v.lo + static_cast<std::int64_t>(pick(rng, (v.hi - v.lo) + 1));
            m.variables.push_back(v);
            all_vars.push_back(v);
        }
        ast.modules.push_back(std::move(m));
    }
    for (auto& m : ast.modules) {
        std::size_t n_cmds = pick(rng, 5);
        for (std::size_t ci = 0; ci < n_cmds; ++ci)
            m.commands.push_back(random_command(rng, m, all_vars, bool_consts, label_pool));
    }

    if (with_rewards) {
        std::size_t n_rewards = pick(rng, 3);
        for (std::size_t ri = 0; ri < n_rewards; ++ri) {
            RewardBlock r;
            r.name = "block" + std::to_string(ri);
            std::size_t n_state = pick(rng, 3);
            for (std::size_t i = 0; i < n_state; ++i)
                r.state_items.push_back(
                    {random_guard(rng, all_vars, bool_consts, 1),
                     Expr::make_number(random_positive_rate(rng)), {}});
            std::size_t n_trans = pick(rng, 2);
            for (std::size_t i = 0; i < n_trans; ++i) {
                TransRewardItem item;
                if (pick(rng, 2) == 0) item.action = label_pool[pick(rng, label_pool.size())];
                item.guard = random_guard(rng, all_vars, bool_consts, 1);
                item.value = Expr::make_number(random_positive_rate(rng));
                r.trans_items.push_back(std::move(item));
            }
            ast.rewards.push_back(std::move(r));
        }
    }
    return ast;
}

} // namespace

ModelAst random_model_ast(Rng& rng) { return random_model(rng, 1 + pick(rng, 3), 2, true); }

ModelAst random_sync_system(Rng& rng) { return random_model(rng, 2 + pick(rng, 2), 1, false); }

FormulaPtr random_formula(Rng& rng, const ModelAst& model) {
    std::vector<VarDecl> vars;
    for (const auto& m : model.modules)
        for (const auto& v : m.variables) vars.push_back(v);
    std::vector<std::string> bool_consts;
    for (const auto& c : model.constants)
        if (c.is_bool) bool_consts.push_back(c.name);

    auto atom = [&]() { return Formula::make_atom(random_guard(rng, vars, bool_consts, 1)); };
    auto interval = [&]() -> TimeInterval {
        Rational lo(static_cast<std::int64_t>(pick(rng, 3)));
        switch (pick(rng, 4)) {
            case 0: return {lo, lo};                                   // point
            case 1: return {Rational(0), lo + Rational(1)};            // [0,t]
            case 2: return {lo, lo + Rational(1, 2)};                  // [a,b]
            default: return {lo, std::nullopt};                        // [t,inf)
        }
    };
    auto bound = [&]() -> std::optional<Bound> {
        BoundOp op = static_cast<BoundOp>(pick(rng, 4));
        return Bound{op, Rational(static_cast<std::int64_t>(pick(rng, 11)), 10)};
    };

    switch (pick(rng, 5)) {
        case 0: {
            bool eventual = pick(rng, 2) == 0;
            FormulaPtr left = eventual ? Formula::make_atom(Expr::make_bool(true)) : atom();
            return Formula::make_prob(pick(rng, 2) ? bound() : std::nullopt, left, atom(),
                                      interval());
        }
        case 1:
            return Formula::make_steady(pick(rng, 2) ? bound() : std::nullopt, atom());
        case 2: {
            if (model.rewards.empty())
                return Formula::make_steady(std::nullopt, atom());
            const std::string& name = model.rewards[pick(rng, model.rewards.size())].name;
            switch (pick(rng, 4)) {
                case 0:
                    return Formula::make_reward(std::nullopt, name, RewardKind::Instant,
                                                Rational(static_cast<std::int64_t>(pick(rng, 5))),
                                                nullptr);
                case 1:
                    return Formula::make_reward(std::nullopt, name, RewardKind::Cumulative,
                                                Rational(static_cast<std::int64_t>(pick(rng, 5))),
                                                nullptr);
                case 2:
                    return Formula::make_reward(std::nullopt, name, RewardKind::Reach, Rational(0),
                                                atom());
                default:
                    return Formula::make_reward(std::nullopt, name, RewardKind::LongRun,
                                                Rational(0), nullptr);
            }
        }
        case 3: {
            // boolean structure over bounded operators
            FormulaPtr p = Formula::make_prob(bound(), Formula::make_atom(Expr::make_bool(true)),
                                              atom(), interval());
            switch (pick(rng, 3)) {
                case 0: return Formula::make_not(p);
                case 1: return Formula::make_and(p, atom());
                default: return Formula::make_or(atom(), p);
            }
        }
        default:
            return atom();
    }
}

} // namespace testsup
