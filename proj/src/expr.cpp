#include "ctmc/expr.hpp"

namespace ctmc {

ExprPtr Expr::make_number(Rational v, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    e->pos = std::move(p);
    return e;
}

ExprPtr Expr::make_bool(bool v, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::BoolLit;
    e->bval = v;
    e->pos = std::move(p);
    return e;
}

ExprPtr Expr::make_ident(std::string name, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Ident;
    e->ident = std::move(name);
    e->pos = std::move(p);
    return e;
}

ExprPtr Expr::make_unary(ExprKind k, ExprPtr a, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->pos = std::move(p);
    return e;
}

ExprPtr Expr::make_binary(ExprKind k, ExprPtr a, ExprPtr b, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->pos = std::move(p);
    return e;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number: return a.number == b.number;
        case ExprKind::BoolLit: return a.bval == b.bval;
        case ExprKind::Ident: return a.ident == b.ident;
        case ExprKind::Neg:
        case ExprKind::Not:
            return expr_equal(a.lhs, b.lhs);
        default:
            return expr_equal(a.lhs, b.lhs) && expr_equal(a.rhs, b.rhs);
    }
}

bool is_comparison(ExprKind k) {
    switch (k) {
        case ExprKind::Eq: case ExprKind::Ne:
        case ExprKind::Lt: case ExprKind::Le:
        case ExprKind::Gt: case ExprKind::Ge:
            return true;
        default:
            return false;
    }
}

bool is_bool_op(ExprKind k) {
    return k == ExprKind::And || k == ExprKind::Or || k == ExprKind::Not;
}

} // namespace ctmc
