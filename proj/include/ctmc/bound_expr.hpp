#ifndef CTMC_BOUND_EXPR_HPP
#define CTMC_BOUND_EXPR_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ctmc/expr.hpp"
#include "ctmc/validate.hpp"

namespace ctmc {

// Expression compiled against a symbol table: identifiers resolved to state
// vector slots, constant subtrees folded. Evaluation runs on int64 when every
// literal is integral, falling back to exact rationals otherwise.
class BoundExpr {
public:
    static BoundExpr compile_bool(const Expr& e, const Symbols& sym);
    static BoundExpr compile_numeric(const Expr& e, const Symbols& sym);

    bool eval_bool(std::span<const std::int32_t> state) const;
    Rational eval_numeric(std::span<const std::int32_t> state) const;

    bool references_variables() const;

    struct Node;   // implementation detail, public for the compiler helpers

private:
    std::shared_ptr<const Node> root_;
};

} // namespace ctmc

#endif
