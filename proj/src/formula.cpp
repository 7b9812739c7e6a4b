#include "ctmc/formula.hpp"

namespace ctmc {

FormulaPtr Formula::make_atom(ExprPtr e, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Atom;
    f->atom = std::move(e);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_not(FormulaPtr x, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Not;
    f->lhs = std::move(x);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_and(FormulaPtr a, FormulaPtr b, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::And;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_or(FormulaPtr a, FormulaPtr b, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Or;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_prob(std::optional<Bound> b, FormulaPtr l, FormulaPtr r,
                              TimeInterval i, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Prob;
    f->bound = b;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    f->interval = std::move(i);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_steady(std::optional<Bound> b, FormulaPtr arg, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Steady;
    f->bound = b;
    f->lhs = std::move(arg);
    f->pos = std::move(p);
    return f;
}

FormulaPtr Formula::make_reward(std::optional<Bound> b, std::string name, RewardKind k,
                                Rational t, FormulaPtr target, SourcePos p) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Reward;
    f->bound = b;
    f->reward_name = std::move(name);
    f->reward_kind = k;
    f->reward_time = t;
    f->lhs = std::move(target);
    f->pos = std::move(p);
    return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case FormulaKind::Atom:
            return expr_equal(a.atom, b.atom);
        case FormulaKind::Not:
            return formula_equal(a.lhs, b.lhs);
        case FormulaKind::And:
        case FormulaKind::Or:
            return formula_equal(a.lhs, b.lhs) && formula_equal(a.rhs, b.rhs);
        case FormulaKind::Prob:
            return a.bound == b.bound && a.interval == b.interval &&
                   formula_equal(a.lhs, b.lhs) && formula_equal(a.rhs, b.rhs);
        case FormulaKind::Steady:
            return a.bound == b.bound && formula_equal(a.lhs, b.lhs);
        case FormulaKind::Reward:
            if (a.bound != b.bound || a.reward_name != b.reward_name ||
                a.reward_kind != b.reward_kind)
                return false;
            if (a.reward_kind == RewardKind::Instant || a.reward_kind == RewardKind::Cumulative)
                if (!(a.reward_time == b.reward_time)) return false;
            if (a.reward_kind == RewardKind::Reach) return formula_equal(a.lhs, b.lhs);
            return true;
    }
    return false;
}

bool until_is_eventual(const Formula& prob) {
    return prob.lhs && prob.lhs->kind == FormulaKind::Atom && prob.lhs->atom &&
           prob.lhs->atom->kind == ExprKind::BoolLit && prob.lhs->atom->bval;
}

} // namespace ctmc
