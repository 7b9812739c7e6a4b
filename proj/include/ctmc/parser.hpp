#ifndef CTMC_PARSER_HPP
#define CTMC_PARSER_HPP

#include <string>
#include <utility>
#include <vector>

#include "ctmc/ast.hpp"
#include "ctmc/formula.hpp"

namespace ctmc {

// Parses and validates a single model source.
ModelAst parse_model(const std::string& text, const std::string& filename = "<model>");

// Parses several sources (e.g. a rate file plus a structure file) into one
// program, then validates the merged result.
ModelAst parse_model_sources(const std::vector<std::pair<std::string, std::string>>& text_and_name);

// Parse without validation (round-trip tooling, variant machinery).
ModelAst parse_model_unchecked(const std::string& text, const std::string& filename = "<model>");

// Parses one property. When `model` is given, identifiers and reward names
// are resolved against it.
FormulaPtr parse_property(const std::string& text, const ModelAst* model = nullptr,
                          const std::string& filename = "<property>");

// Property file: one formula per line, '#' comments, blank lines ignored.
std::vector<FormulaPtr> parse_property_file(const std::string& text, const ModelAst* model,
                                            const std::string& filename);

} // namespace ctmc

#endif
