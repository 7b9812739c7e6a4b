#include "ctmc/bound_expr.hpp"

namespace ctmc {

struct BoundExpr::Node {
    ExprKind kind;
    Rational lit;           // Number (folded constants included)
    bool bval = false;      // BoolLit
    std::int32_t var = -1;  // Ident -> global variable index
    bool int_only = true;   // numeric subtree evaluates within int64
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = BoundExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Compiler {
    const Symbols& sym;

    NodePtr number(Rational v) {
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::Number;
        n->lit = v;
        n->int_only = v.is_integer();
        return n;
    }

    NodePtr compile(const Expr& e) {
        auto n = std::make_shared<Node>();
        n->kind = e.kind;
        switch (e.kind) {
            case ExprKind::Number:
                return number(e.number);
            case ExprKind::BoolLit:
                n->bval = e.bval;
                return n;
            case ExprKind::Ident: {
                if (const ConstDecl* c = sym.find_const(e.ident)) {
                    if (c->is_bool) {
                        n->kind = ExprKind::BoolLit;
                        n->bval = c->bval;
                        return n;
                    }
                    return number(c->number);
                }
                const Symbols::VarInfo* v = sym.find_var(e.ident);
                if (!v) throw ValidationError(e.pos, "unknown identifier '" + e.ident + "'");
                n->var = static_cast<std::int32_t>(v->global_index);
                return n;
            }
            case ExprKind::Neg: {
                NodePtr a = compile(*e.lhs);
                if (a->kind == ExprKind::Number) return number(-a->lit);
                n->a = a;
                n->int_only = a->int_only;
                return n;
            }
            case ExprKind::Not:
                n->a = compile(*e.lhs);
                return n;
            case ExprKind::Add:
            case ExprKind::Sub:
            case ExprKind::Mul: {
                NodePtr a = compile(*e.lhs);
                NodePtr b = compile(*e.rhs);
                if (a->kind == ExprKind::Number && b->kind == ExprKind::Number) {
                    switch (e.kind) {
                        case ExprKind::Add: return number(a->lit + b->lit);
                        case ExprKind::Sub: return number(a->lit - b->lit);
                        default: return number(a->lit * b->lit);
                    }
                }
                n->a = a;
                n->b = b;
                n->int_only = a->int_only && b->int_only;
                return n;
            }
            default:
                n->a = compile(*e.lhs);
                n->b = compile(*e.rhs);
                n->int_only = n->a->int_only && n->b->int_only;
                return n;
        }
    }
};

std::int64_t eval_int(const Node& n, std::span<const std::int32_t> st) {
    switch (n.kind) {
        case ExprKind::Number: return n.lit.num();
        case ExprKind::Ident: return st[static_cast<std::size_t>(n.var)];
        case ExprKind::Neg: return -eval_int(*n.a, st);
        case ExprKind::Add: return eval_int(*n.a, st) + eval_int(*n.b, st);
        case ExprKind::Sub: return eval_int(*n.a, st) - eval_int(*n.b, st);
        case ExprKind::Mul: return eval_int(*n.a, st) * eval_int(*n.b, st);
        default: throw QueryError("non-numeric node in arithmetic evaluation");
    }
}

Rational eval_rat(const Node& n, std::span<const std::int32_t> st) {
    if (n.int_only) return Rational(eval_int(n, st));
    switch (n.kind) {
        case ExprKind::Number: return n.lit;
        case ExprKind::Ident: return Rational(st[static_cast<std::size_t>(n.var)]);
        case ExprKind::Neg: return -eval_rat(*n.a, st);
        case ExprKind::Add: return eval_rat(*n.a, st) + eval_rat(*n.b, st);
        case ExprKind::Sub: return eval_rat(*n.a, st) - eval_rat(*n.b, st);
        case ExprKind::Mul: return eval_rat(*n.a, st) * eval_rat(*n.b, st);
        default: throw QueryError("non-numeric node in arithmetic evaluation");
    }
}

bool eval_b(const Node& n, std::span<const std::int32_t> st) {
    switch (n.kind) {
        case ExprKind::BoolLit: return n.bval;
        case ExprKind::Not: return !eval_b(*n.a, st);
        case ExprKind::And: return eval_b(*n.a, st) && eval_b(*n.b, st);
        case ExprKind::Or: return eval_b(*n.a, st) || eval_b(*n.b, st);
        default: {
            // comparison
            if (n.a->int_only && n.b->int_only) {
                std::int64_t l = eval_int(*n.a, st), r = eval_int(*n.b, st);
                switch (n.kind) {
                    case ExprKind::Eq: return l == r;
                    case ExprKind::Ne: return l != r;
                    case ExprKind::Lt: return l < r;
                    case ExprKind::Le: return l <= r;
                    case ExprKind::Gt: return l > r;
                    default: return l >= r;
                }
            }
            Rational l = eval_rat(*n.a, st), r = eval_rat(*n.b, st);
            switch (n.kind) {
                case ExprKind::Eq: return l == r;
                case ExprKind::Ne: return l != r;
                case ExprKind::Lt: return l < r;
                case ExprKind::Le: return l <= r;
                case ExprKind::Gt: return l > r;
                default: return l >= r;
            }
        }
    }
}

bool refs_vars(const Node& n) {
    if (n.var >= 0) return true;
    if (n.a && refs_vars(*n.a)) return true;
    if (n.b && refs_vars(*n.b)) return true;
    return false;
}

} // namespace

BoundExpr BoundExpr::compile_bool(const Expr& e, const Symbols& sym) {
    require_bool(e, sym, "expression");
    BoundExpr be;
    be.root_ = Compiler{sym}.compile(e);
    return be;
}

BoundExpr BoundExpr::compile_numeric(const Expr& e, const Symbols& sym) {
    require_numeric(e, sym, "expression");
    BoundExpr be;
    be.root_ = Compiler{sym}.compile(e);
    return be;
}

bool BoundExpr::eval_bool(std::span<const std::int32_t> state) const {
    return eval_b(*root_, state);
}

Rational BoundExpr::eval_numeric(std::span<const std::int32_t> state) const {
    return eval_rat(*root_, state);
}

bool BoundExpr::references_variables() const { return refs_vars(*root_); }

} // namespace ctmc
