#include "ctmc/validate.hpp"

#include <unordered_set>

namespace ctmc {

namespace {

struct TypeChecker {
    const Symbols& sym;
    bool allow_variables;
    const char* context;

    ExprType check(const Expr& e) const {
        switch (e.kind) {
            case ExprKind::Number:
                return ExprType::Number;
            case ExprKind::BoolLit:
                return ExprType::Bool;
            case ExprKind::Ident: {
                if (const ConstDecl* c = sym.find_const(e.ident))
                    return c->is_bool ? ExprType::Bool : ExprType::Number;
                if (sym.find_var(e.ident) != nullptr) {
                    if (!allow_variables)
                        throw ValidationError(e.pos, std::string(context) +
                                                         " may not reference variable '" +
                                                         e.ident + "'");
                    return ExprType::Number;
                }
                throw ValidationError(e.pos, "unknown identifier '" + e.ident + "'");
            }
            case ExprKind::Neg:
                require(*e.lhs, ExprType::Number);
                return ExprType::Number;
            case ExprKind::Not:
                require(*e.lhs, ExprType::Bool);
                return ExprType::Bool;
            case ExprKind::Add:
            case ExprKind::Sub:
            case ExprKind::Mul:
                require(*e.lhs, ExprType::Number);
                require(*e.rhs, ExprType::Number);
                return ExprType::Number;
            case ExprKind::And:
            case ExprKind::Or:
                require(*e.lhs, ExprType::Bool);
                require(*e.rhs, ExprType::Bool);
                return ExprType::Bool;
            default:
                require(*e.lhs, ExprType::Number);
                require(*e.rhs, ExprType::Number);
                return ExprType::Bool;
        }
    }

    void require(const Expr& e, ExprType want) const {
        ExprType got = check(e);
        if (got != want)
            throw ValidationError(e.pos, std::string(want == ExprType::Bool
                                                         ? "expected boolean expression"
                                                         : "expected numeric expression") +
                                             " in " + context);
    }
};

Rational fold_numeric(const Expr& e, const Symbols& sym) {
    switch (e.kind) {
        case ExprKind::Number:
            return e.number;
        case ExprKind::Ident: {
            const ConstDecl* c = sym.find_const(e.ident);
            if (!c || c->is_bool)
                throw ValidationError(e.pos, "'" + e.ident + "' is not a numeric constant");
            return c->number;
        }
        case ExprKind::Neg:
            return -fold_numeric(*e.lhs, sym);
        case ExprKind::Add:
            return fold_numeric(*e.lhs, sym) + fold_numeric(*e.rhs, sym);
        case ExprKind::Sub:
            return fold_numeric(*e.lhs, sym) - fold_numeric(*e.rhs, sym);
        case ExprKind::Mul:
            return fold_numeric(*e.lhs, sym) * fold_numeric(*e.rhs, sym);
        default:
            throw ValidationError(e.pos, "expected constant numeric expression");
    }
}

} // namespace

// Constants and variables share the expression namespace and must be
// distinct there. Module names are unique among modules; a status variable
// carrying its module's name is the usual idiom and stays legal.
Symbols build_symbols(const ModelAst& ast) {
    Symbols sym;
    std::unordered_set<std::string> expr_names;
    std::unordered_set<std::string> module_names;
    auto claim = [&](const std::string& name, const SourcePos& pos, const char* what) {
        if (!expr_names.insert(name).second)
            throw ValidationError(pos, std::string("duplicate name '") + name + "' (" + what +
                                           " clashes with an earlier declaration)");
    };
    for (const auto& c : ast.constants) {
        claim(c.name, c.pos, "constant");
        sym.constants.emplace(c.name, &c);
    }
    for (const auto& m : ast.modules) {
        if (!module_names.insert(m.name).second)
            throw ValidationError(m.pos, "duplicate module '" + m.name + "'");
        if (sym.constants.count(m.name))
            throw ValidationError(m.pos, "module '" + m.name + "' clashes with a constant");
    }
    for (std::size_t mi = 0; mi < ast.modules.size(); ++mi) {
        for (const auto& v : ast.modules[mi].variables) {
            claim(v.name, v.pos, "variable");
            Symbols::VarInfo info{sym.variables.size(), mi, v.name, v.lo, v.hi, v.init};
            sym.var_by_name.emplace(v.name, sym.variables.size());
            sym.variables.push_back(info);
        }
    }
    return sym;
}

ExprType infer_type(const Expr& e, const Symbols& sym) {
    return TypeChecker{sym, true, "expression"}.check(e);
}

void require_bool(const Expr& e, const Symbols& sym, const char* context) {
    TypeChecker{sym, true, context}.require(e, ExprType::Bool);
}

void require_numeric(const Expr& e, const Symbols& sym, const char* context) {
    TypeChecker{sym, true, context}.require(e, ExprType::Number);
}

Rational fold_constant(const Expr& e, const Symbols& sym) {
    return fold_numeric(e, sym);
}

void validate_model(const ModelAst& ast) {
    Symbols sym = build_symbols(ast);

    std::unordered_set<std::string> reward_names;
    for (const auto& r : ast.rewards)
        if (!reward_names.insert(r.name).second)
            throw ValidationError(r.pos, "duplicate reward block \"" + r.name + "\"");

    for (std::size_t mi = 0; mi < ast.modules.size(); ++mi) {
        const auto& m = ast.modules[mi];
        if (m.variables.empty())
            throw ValidationError(m.pos, "module '" + m.name + "' declares no variable");
        for (const auto& v : m.variables) {
            if (v.lo > v.hi)
                throw ValidationError(v.pos, "empty range for variable '" + v.name + "'");
            if (v.init < v.lo || v.init > v.hi)
                throw ValidationError(v.pos, "init value of '" + v.name +
                                                 "' lies outside its declared range");
        }
        for (const auto& cmd : m.commands) {
            TypeChecker{sym, true, "guard"}.require(*cmd.guard, ExprType::Bool);
            if (!cmd.rate && !cmd.action)
                throw ValidationError(cmd.pos, "unlabeled command requires an explicit rate");
            if (cmd.rate) {
                TypeChecker{sym, false, "rate"}.require(*cmd.rate, ExprType::Number);
                Rational r = fold_numeric(*cmd.rate, sym);
                if (!r.is_positive())
                    throw ValidationError(cmd.pos, "rate evaluates to non-positive value " +
                                                       r.str());
            }
            std::unordered_set<std::string> targets;
            for (const auto& up : cmd.updates) {
                const Symbols::VarInfo* v = sym.find_var(up.var);
                if (!v)
                    throw ValidationError(cmd.pos, "update targets unknown variable '" +
                                                       up.var + "'");
                if (v->module_index != mi)
                    throw ValidationError(cmd.pos, "update targets variable '" + up.var +
                                                       "' owned by another module");
                if (!targets.insert(up.var).second)
                    throw ValidationError(cmd.pos, "duplicate update of '" + up.var + "'");
                TypeChecker{sym, true, "update"}.require(*up.value, ExprType::Number);
            }
        }
    }

    for (const auto& r : ast.rewards) {
        for (const auto& item : r.state_items) {
            TypeChecker{sym, true, "reward guard"}.require(*item.guard, ExprType::Bool);
            TypeChecker{sym, false, "reward value"}.require(*item.value, ExprType::Number);
            Rational v = fold_numeric(*item.value, sym);
            if (v.is_negative())
                throw ValidationError(item.pos, "negative reward value " + v.str());
        }
        for (const auto& item : r.trans_items) {
            TypeChecker{sym, true, "reward guard"}.require(*item.guard, ExprType::Bool);
            TypeChecker{sym, false, "reward value"}.require(*item.value, ExprType::Number);
            Rational v = fold_numeric(*item.value, sym);
            if (v.is_negative())
                throw ValidationError(item.pos, "negative reward value " + v.str());
        }
    }
}

namespace {

void validate_formula_rec(const Formula& f, const ModelAst* model, const Symbols* sym,
                          bool root) {
    switch (f.kind) {
        case FormulaKind::Atom:
            if (sym) TypeChecker{*sym, true, "property"}.require(*f.atom, ExprType::Bool);
            return;
        case FormulaKind::Not:
            validate_formula_rec(*f.lhs, model, sym, false);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
            validate_formula_rec(*f.lhs, model, sym, false);
            validate_formula_rec(*f.rhs, model, sym, false);
            return;
        case FormulaKind::Prob:
            if (!f.bound && !root)
                throw ValidationError(f.pos, "'=?' query may only appear at the top level");
            validate_formula_rec(*f.lhs, model, sym, false);
            validate_formula_rec(*f.rhs, model, sym, false);
            return;
        case FormulaKind::Steady:
            if (!f.bound && !root)
                throw ValidationError(f.pos, "'=?' query may only appear at the top level");
            validate_formula_rec(*f.lhs, model, sym, false);
            return;
        case FormulaKind::Reward:
            if (!f.bound && !root)
                throw ValidationError(f.pos, "'=?' query may only appear at the top level");
            if (model && !model->find_reward(f.reward_name))
                throw ValidationError(f.pos, "unknown reward block \"" + f.reward_name + "\"");
            if (f.reward_kind == RewardKind::Reach)
                validate_formula_rec(*f.lhs, model, sym, false);
            return;
    }
}

} // namespace

void validate_property(const Formula& f, const ModelAst* model) {
    if (model) {
        Symbols sym = build_symbols(*model);
        validate_formula_rec(f, model, &sym, true);
    } else {
        validate_formula_rec(f, nullptr, nullptr, true);
    }
}

} // namespace ctmc
