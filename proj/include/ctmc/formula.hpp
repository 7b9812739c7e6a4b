#ifndef CTMC_FORMULA_HPP
#define CTMC_FORMULA_HPP

#include <memory>
#include <optional>
#include <string>

#include "ctmc/expr.hpp"

namespace ctmc {

enum class BoundOp { Lt, Le, Ge, Gt };

struct Bound {
    BoundOp op;
    Rational value;
    bool operator==(const Bound& o) const { return op == o.op && value == o.value; }
};

// Closed-from-below time interval; hi == nullopt means unbounded above.
struct TimeInterval {
    Rational lo;
    std::optional<Rational> hi;

    bool is_point() const { return hi && *hi == lo; }
    bool operator==(const TimeInterval& o) const { return lo == o.lo && hi == o.hi; }
};

enum class FormulaKind {
    Atom,       // pure boolean state expression
    Not, And, Or,
    Prob,       // P~p[ left U^I right ] / P=?[...]
    Steady,     // S~p[ arg ] / S=?[ arg ]
    Reward,     // R{"name"}~r[ kind ] / =?
};

enum class RewardKind { Instant, Cumulative, Reach, LongRun };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind;

    ExprPtr atom;                       // Atom
    FormulaPtr lhs, rhs;                // Not (lhs), And/Or; Prob: until operands; Reward Reach: lhs = target
    std::optional<Bound> bound;         // nullopt = "=?" query form
    TimeInterval interval;              // Prob
    std::string reward_name;            // Reward
    RewardKind reward_kind = RewardKind::Instant;
    Rational reward_time;               // Instant / Cumulative
    SourcePos pos;

    static FormulaPtr make_atom(ExprPtr e, SourcePos p = {});
    static FormulaPtr make_not(FormulaPtr f, SourcePos p = {});
    static FormulaPtr make_and(FormulaPtr a, FormulaPtr b, SourcePos p = {});
    static FormulaPtr make_or(FormulaPtr a, FormulaPtr b, SourcePos p = {});
    static FormulaPtr make_prob(std::optional<Bound> b, FormulaPtr l, FormulaPtr r,
                                TimeInterval i, SourcePos p = {});
    static FormulaPtr make_steady(std::optional<Bound> b, FormulaPtr arg, SourcePos p = {});
    static FormulaPtr make_reward(std::optional<Bound> b, std::string name, RewardKind k,
                                  Rational t, FormulaPtr target, SourcePos p = {});
};

bool formula_equal(const Formula& a, const Formula& b);
inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (!a || !b) return !a && !b;
    return formula_equal(*a, *b);
}

// True when the left operand of an until is the literal `true` (prints as F).
bool until_is_eventual(const Formula& prob);

} // namespace ctmc

#endif
