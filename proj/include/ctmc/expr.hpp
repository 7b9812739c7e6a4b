#ifndef CTMC_EXPR_HPP
#define CTMC_EXPR_HPP

#include <memory>
#include <string>

#include "ctmc/errors.hpp"
#include "ctmc/rational.hpp"

namespace ctmc {

// One expression tree covers both arithmetic and boolean forms; the validator
// assigns types. Nodes are immutable and shared between ASTs.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    Number,    // rational literal
    BoolLit,   // true / false
    Ident,     // variable or constant
    Neg,       // unary minus
    Not,       // !
    Add, Sub, Mul,
    And, Or,
    Eq, Ne, Lt, Le, Gt, Ge,
};

struct Expr {
    ExprKind kind;
    Rational number;       // Number
    bool bval = false;     // BoolLit
    std::string ident;     // Ident
    ExprPtr lhs, rhs;      // unary ops use lhs only
    SourcePos pos;

    static ExprPtr make_number(Rational v, SourcePos p = {});
    static ExprPtr make_bool(bool v, SourcePos p = {});
    static ExprPtr make_ident(std::string name, SourcePos p = {});
    static ExprPtr make_unary(ExprKind k, ExprPtr a, SourcePos p = {});
    static ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b, SourcePos p = {});
};

bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return expr_equal(*a, *b);
}

bool is_comparison(ExprKind k);
bool is_bool_op(ExprKind k);

} // namespace ctmc

#endif
