#include "ctmc/printer.hpp"

#include <sstream>

namespace ctmc {

namespace {

// Higher binds tighter; mirrors the parser's precedence ladder.
int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Or: return 1;
        case ExprKind::And: return 2;
        case ExprKind::Not: return 3;
        case ExprKind::Eq: case ExprKind::Ne:
        case ExprKind::Lt: case ExprKind::Le:
        case ExprKind::Gt: case ExprKind::Ge: return 4;
        case ExprKind::Add: case ExprKind::Sub: return 5;
        case ExprKind::Mul: return 6;
        case ExprKind::Neg: return 7;
        default: return 8;
    }
}

const char* op_text(ExprKind k) {
    switch (k) {
        case ExprKind::Or: return " | ";
        case ExprKind::And: return " & ";
        case ExprKind::Eq: return "=";
        case ExprKind::Ne: return "!=";
        case ExprKind::Lt: return "<";
        case ExprKind::Le: return "<=";
        case ExprKind::Gt: return ">";
        case ExprKind::Ge: return ">=";
        case ExprKind::Add: return "+";
        case ExprKind::Sub: return "-";
        case ExprKind::Mul: return "*";
        default: return "?";
    }
}

void print_expr_rec(std::ostream& os, const Expr& e, int parent_prec) {
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec;
    if (parens) os << '(';
    switch (e.kind) {
        case ExprKind::Number: os << e.number.str(); break;
        case ExprKind::BoolLit: os << (e.bval ? "true" : "false"); break;
        case ExprKind::Ident: os << e.ident; break;
        case ExprKind::Neg:
            os << '-';
            print_expr_rec(os, *e.lhs, prec + 1);
            break;
        case ExprKind::Not:
            os << '!';
            print_expr_rec(os, *e.lhs, prec);
            break;
        case ExprKind::Eq: case ExprKind::Ne:
        case ExprKind::Lt: case ExprKind::Le:
        case ExprKind::Gt: case ExprKind::Ge:
            // comparisons are non-associative: both sides need higher precedence
            print_expr_rec(os, *e.lhs, prec + 1);
            os << op_text(e.kind);
            print_expr_rec(os, *e.rhs, prec + 1);
            break;
        default:
            // left-associative binaries
            print_expr_rec(os, *e.lhs, prec);
            os << op_text(e.kind);
            print_expr_rec(os, *e.rhs, prec + 1);
            break;
    }
    if (parens) os << ')';
}

void print_command(std::ostream& os, const Command& cmd) {
    if (cmd.reaction_id) os << "  //@reaction " << *cmd.reaction_id << "\n";
    os << "  [" << (cmd.action ? *cmd.action : "") << "] ";
    print_expr_rec(os, *cmd.guard, 0);
    os << " -> ";
    if (cmd.rate) {
        print_expr_rec(os, *cmd.rate, 0);
        os << " : ";
    }
    if (cmd.updates.empty()) {
        os << "true";
    } else {
        for (std::size_t i = 0; i < cmd.updates.size(); ++i) {
            if (i) os << " & ";
            os << '(' << cmd.updates[i].var << "'=";
            print_expr_rec(os, *cmd.updates[i].value, 0);
            os << ')';
        }
    }
    os << ";\n";
}

} // namespace

std::string print_expr(const Expr& e) {
    std::ostringstream os;
    print_expr_rec(os, e, 0);
    return os.str();
}

std::string print_model(const ModelAst& ast) {
    std::ostringstream os;
    for (const auto& c : ast.constants) {
        if (c.is_bool)
            os << "const bool " << c.name << " = " << (c.bval ? "true" : "false") << ";\n";
        else
            os << "const double " << c.name << " = " << c.number.str() << ";\n";
    }
    if (!ast.constants.empty()) os << "\n";
    for (const auto& m : ast.modules) {
        os << "module " << m.name << "\n";
        for (const auto& v : m.variables)
            os << "  " << v.name << " : [" << v.lo << ".." << v.hi << "] init " << v.init
               << ";\n";
        for (const auto& cmd : m.commands) print_command(os, cmd);
        os << "endmodule\n\n";
    }
    for (const auto& r : ast.rewards) {
        os << "rewards \"" << r.name << "\"\n";
        for (const auto& item : r.state_items) {
            os << "  ";
            print_expr_rec(os, *item.guard, 0);
            os << " : ";
            print_expr_rec(os, *item.value, 0);
            os << ";\n";
        }
        for (const auto& item : r.trans_items) {
            os << "  [" << (item.action ? *item.action : "") << "] ";
            print_expr_rec(os, *item.guard, 0);
            os << " : ";
            print_expr_rec(os, *item.value, 0);
            os << ";\n";
        }
        os << "endrewards\n\n";
    }
    return os.str();
}

namespace {

void print_formula_rec(std::ostream& os, const Formula& f, int parent_prec);

void print_bound(std::ostream& os, const std::optional<Bound>& b) {
    if (!b) {
        os << "=?";
        return;
    }
    switch (b->op) {
        case BoundOp::Lt: os << '<'; break;
        case BoundOp::Le: os << "<="; break;
        case BoundOp::Ge: os << ">="; break;
        case BoundOp::Gt: os << '>'; break;
    }
    os << b->value.str();
}

void print_interval(std::ostream& os, const TimeInterval& iv) {
    if (!iv.hi) {
        if (!iv.lo.is_zero()) os << ">=" << iv.lo.str();
        return;   // [0, inf) prints as bare operator
    }
    if (iv.lo.is_zero() && !iv.is_point()) {
        os << "<=" << iv.hi->str();
        return;
    }
    os << '[' << iv.lo.str() << ',' << iv.hi->str() << ']';
}

// formula precedence: Or=1, And=2, Not=3, operators/atoms=4
void print_formula_rec(std::ostream& os, const Formula& f, int parent_prec) {
    int prec;
    switch (f.kind) {
        case FormulaKind::Or: prec = 1; break;
        case FormulaKind::And: prec = 2; break;
        case FormulaKind::Not: prec = 3; break;
        default: prec = 4; break;
    }
    bool parens = prec < parent_prec && f.kind != FormulaKind::Atom;
    if (parens) os << '(';
    switch (f.kind) {
        case FormulaKind::Atom:
            // expression precedence levels line up with the formula levels
            print_expr_rec(os, *f.atom, parent_prec);
            break;
        case FormulaKind::Not:
            os << '!';
            print_formula_rec(os, *f.lhs, prec);
            break;
        case FormulaKind::And:
            print_formula_rec(os, *f.lhs, prec);
            os << " & ";
            print_formula_rec(os, *f.rhs, prec + 1);
            break;
        case FormulaKind::Or:
            print_formula_rec(os, *f.lhs, prec);
            os << " | ";
            print_formula_rec(os, *f.rhs, prec + 1);
            break;
        case FormulaKind::Prob: {
            os << 'P';
            print_bound(os, f.bound);
            os << " [ ";
            if (until_is_eventual(f)) {
                os << 'F';
                print_interval(os, f.interval);
                os << ' ';
                print_formula_rec(os, *f.rhs, 4);
            } else {
                print_formula_rec(os, *f.lhs, 4);
                os << " U";
                print_interval(os, f.interval);
                os << ' ';
                print_formula_rec(os, *f.rhs, 4);
            }
            os << " ]";
            break;
        }
        case FormulaKind::Steady:
            os << 'S';
            print_bound(os, f.bound);
            os << " [ ";
            print_formula_rec(os, *f.lhs, 0);
            os << " ]";
            break;
        case FormulaKind::Reward:
            os << "R{\"" << f.reward_name << "\"}";
            print_bound(os, f.bound);
            os << " [ ";
            switch (f.reward_kind) {
                case RewardKind::Instant: os << "I=" << f.reward_time.str(); break;
                case RewardKind::Cumulative: os << "C<=" << f.reward_time.str(); break;
                case RewardKind::LongRun: os << 'S'; break;
                case RewardKind::Reach:
                    os << "F ";
                    print_formula_rec(os, *f.lhs, 4);
                    break;
            }
            os << " ]";
            break;
    }
    if (parens) os << ')';
}

} // namespace

std::string print_formula(const Formula& f) {
    std::ostringstream os;
    print_formula_rec(os, f, 0);
    return os.str();
}

} // namespace ctmc
