#ifndef CTMC_PRINTER_HPP
#define CTMC_PRINTER_HPP

#include <string>

#include "ctmc/ast.hpp"
#include "ctmc/formula.hpp"

namespace ctmc {

// Canonical renderings; parsing a printed form reproduces the AST.
std::string print_expr(const Expr& e);
std::string print_model(const ModelAst& ast);
std::string print_formula(const Formula& f);

} // namespace ctmc

#endif
