#ifndef CTMC_AST_HPP
#define CTMC_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctmc/expr.hpp"

namespace ctmc {

struct ConstDecl {
    std::string name;
    bool is_bool = false;
    Rational number;       // when !is_bool
    bool bval = false;     // when is_bool
    SourcePos pos;
};

struct VarDecl {
    std::string name;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t init = 0;
    SourcePos pos;
};

struct Update {
    std::string var;
    ExprPtr value;
};

struct Command {
    std::optional<std::string> action;
    ExprPtr guard;
    ExprPtr rate;                       // null = implicit rate 1 (labeled only)
    std::vector<Update> updates;
    std::optional<int> reaction_id;     // from //@reaction annotations
    SourcePos pos;
};

struct ModuleDef {
    std::string name;
    std::vector<VarDecl> variables;
    std::vector<Command> commands;
    SourcePos pos;
};

struct StateRewardItem {
    ExprPtr guard;
    ExprPtr value;
    SourcePos pos;
};

struct TransRewardItem {
    std::optional<std::string> action;  // nullopt = matches unlabeled transitions
    ExprPtr guard;
    ExprPtr value;
    SourcePos pos;
};

struct RewardBlock {
    std::string name;
    std::vector<StateRewardItem> state_items;
    std::vector<TransRewardItem> trans_items;
    SourcePos pos;
};

struct ModelAst {
    std::vector<ConstDecl> constants;
    std::vector<ModuleDef> modules;
    std::vector<RewardBlock> rewards;

    const ConstDecl* find_constant(const std::string& name) const;
    const RewardBlock* find_reward(const std::string& name) const;
    const ModuleDef* find_module(const std::string& name) const;
    // (module index, variable index) for a variable name, or nullopt
    std::optional<std::pair<std::size_t, std::size_t>> find_variable(const std::string& name) const;
};

bool ast_equal(const ModelAst& a, const ModelAst& b);
bool command_equal(const Command& a, const Command& b);

} // namespace ctmc

#endif
