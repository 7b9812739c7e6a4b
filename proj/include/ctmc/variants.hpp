#ifndef CTMC_VARIANTS_HPP
#define CTMC_VARIANTS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctmc/ast.hpp"

namespace ctmc {

// Reaction ids come from //@reaction annotations; one reaction may span
// several synchronized commands across modules.
struct ReactionIndex {
    struct CommandRef {
        std::string module;
        std::optional<std::string> action;
        std::size_t command_index;   // within the module
    };
    std::map<int, std::vector<CommandRef>> reactions;

    std::vector<int> ids() const {
        std::vector<int> out;
        for (const auto& [id, _] : reactions) out.push_back(id);
        return out;
    }
};

ReactionIndex build_reaction_index(const ModelAst& ast);

struct VariantEdit {
    enum class Kind { RemoveReaction, RemoveLabel };
    Kind kind;
    int reaction_id = 0;
    std::string label;

    static VariantEdit remove_reaction(int id) { return {Kind::RemoveReaction, id, {}}; }
    static VariantEdit remove_label(std::string l) {
        return {Kind::RemoveLabel, 0, std::move(l)};
    }
};

struct VariantWarnings {
    std::vector<std::string> messages;   // e.g. module left without commands
};

// Deletes every command of the named reactions/labels from every module.
// Synchronized partners of a removed labeled command are deleted too, so a
// reaction disappears atomically and no dangling action label remains.
ModelAst make_variant(const ModelAst& ast, const std::vector<VariantEdit>& edits,
                      VariantWarnings* warnings = nullptr);

} // namespace ctmc

#endif
