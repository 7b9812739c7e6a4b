#ifndef CTMC_VALIDATE_HPP
#define CTMC_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctmc/ast.hpp"
#include "ctmc/formula.hpp"

namespace ctmc {

// Flattened symbol view of a program. Variable order is module declaration
// order, then per-module declaration order; this fixes the global state
// vector layout everywhere (builder, exports, CSV columns).
struct Symbols {
    struct VarInfo {
        std::size_t global_index;
        std::size_t module_index;
        std::string name;
        std::int64_t lo, hi, init;
    };

    std::vector<VarInfo> variables;
    std::unordered_map<std::string, std::size_t> var_by_name;      // -> variables idx
    std::unordered_map<std::string, const ConstDecl*> constants;

    const VarInfo* find_var(const std::string& name) const {
        auto it = var_by_name.find(name);
        return it == var_by_name.end() ? nullptr : &variables[it->second];
    }
    const ConstDecl* find_const(const std::string& name) const {
        auto it = constants.find(name);
        return it == constants.end() ? nullptr : it->second;
    }
};

Symbols build_symbols(const ModelAst& ast);   // throws on duplicate names

// Full static checking; throws ValidationError with position on violation.
void validate_model(const ModelAst& ast);

// Bounds/intervals/root-only "=?" checks, plus identifier and reward-name
// resolution when a model is supplied.
void validate_property(const Formula& f, const ModelAst* model);

enum class ExprType { Number, Bool };
ExprType infer_type(const Expr& e, const Symbols& sym);   // throws ValidationError
void require_bool(const Expr& e, const Symbols& sym, const char* context);
void require_numeric(const Expr& e, const Symbols& sym, const char* context);

// Folds an expression that may not reference variables. Bool-typed
// expressions are rejected.
Rational fold_constant(const Expr& e, const Symbols& sym);

} // namespace ctmc

#endif
