#include "ctmc/ast.hpp"

namespace ctmc {

const ConstDecl* ModelAst::find_constant(const std::string& name) const {
    for (const auto& c : constants)
        if (c.name == name) return &c;
    return nullptr;
}

const RewardBlock* ModelAst::find_reward(const std::string& name) const {
    for (const auto& r : rewards)
        if (r.name == name) return &r;
    return nullptr;
}

const ModuleDef* ModelAst::find_module(const std::string& name) const {
    for (const auto& m : modules)
        if (m.name == name) return &m;
    return nullptr;
}

std::optional<std::pair<std::size_t, std::size_t>>
ModelAst::find_variable(const std::string& name) const {
    for (std::size_t mi = 0; mi < modules.size(); ++mi)
        for (std::size_t vi = 0; vi < modules[mi].variables.size(); ++vi)
            if (modules[mi].variables[vi].name == name) return std::make_pair(mi, vi);
    return std::nullopt;
}

bool command_equal(const Command& a, const Command& b) {
    if (a.action != b.action) return false;
    if (a.reaction_id != b.reaction_id) return false;
    if (!expr_equal(a.guard, b.guard)) return false;
    if (!expr_equal(a.rate, b.rate)) return false;
    if (a.updates.size() != b.updates.size()) return false;
    for (std::size_t i = 0; i < a.updates.size(); ++i) {
        if (a.updates[i].var != b.updates[i].var) return false;
        if (!expr_equal(a.updates[i].value, b.updates[i].value)) return false;
    }
    return true;
}

namespace {

bool const_equal(const ConstDecl& a, const ConstDecl& b) {
    if (a.name != b.name || a.is_bool != b.is_bool) return false;
    return a.is_bool ? a.bval == b.bval : a.number == b.number;
}

bool var_equal(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.lo == b.lo && a.hi == b.hi && a.init == b.init;
}

bool module_equal(const ModuleDef& a, const ModuleDef& b) {
    if (a.name != b.name) return false;
    if (a.variables.size() != b.variables.size() || a.commands.size() != b.commands.size())
        return false;
    for (std::size_t i = 0; i < a.variables.size(); ++i)
        if (!var_equal(a.variables[i], b.variables[i])) return false;
    for (std::size_t i = 0; i < a.commands.size(); ++i)
        if (!command_equal(a.commands[i], b.commands[i])) return false;
    return true;
}

bool reward_equal(const RewardBlock& a, const RewardBlock& b) {
    if (a.name != b.name) return false;
    if (a.state_items.size() != b.state_items.size() || a.trans_items.size() != b.trans_items.size())
        return false;
    for (std::size_t i = 0; i < a.state_items.size(); ++i) {
        if (!expr_equal(a.state_items[i].guard, b.state_items[i].guard)) return false;
        if (!expr_equal(a.state_items[i].value, b.state_items[i].value)) return false;
    }
    for (std::size_t i = 0; i < a.trans_items.size(); ++i) {
        if (a.trans_items[i].action != b.trans_items[i].action) return false;
        if (!expr_equal(a.trans_items[i].guard, b.trans_items[i].guard)) return false;
        if (!expr_equal(a.trans_items[i].value, b.trans_items[i].value)) return false;
    }
    return true;
}

} // namespace

bool ast_equal(const ModelAst& a, const ModelAst& b) {
    if (a.constants.size() != b.constants.size() || a.modules.size() != b.modules.size() ||
        a.rewards.size() != b.rewards.size())
        return false;
    for (std::size_t i = 0; i < a.constants.size(); ++i)
        if (!const_equal(a.constants[i], b.constants[i])) return false;
    for (std::size_t i = 0; i < a.modules.size(); ++i)
        if (!module_equal(a.modules[i], b.modules[i])) return false;
    for (std::size_t i = 0; i < a.rewards.size(); ++i)
        if (!reward_equal(a.rewards[i], b.rewards[i])) return false;
    return true;
}

} // namespace ctmc
