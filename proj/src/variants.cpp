#include "ctmc/variants.hpp"

#include <unordered_set>

#include "ctmc/validate.hpp"

namespace ctmc {

ReactionIndex build_reaction_index(const ModelAst& ast) {
    ReactionIndex idx;
    for (const auto& m : ast.modules) {
        for (std::size_t ci = 0; ci < m.commands.size(); ++ci) {
            const Command& cmd = m.commands[ci];
            if (!cmd.reaction_id) continue;
            idx.reactions[*cmd.reaction_id].push_back({m.name, cmd.action, ci});
        }
    }
    return idx;
}

ModelAst make_variant(const ModelAst& ast, const std::vector<VariantEdit>& edits,
                      VariantWarnings* warnings) {
    ReactionIndex idx = build_reaction_index(ast);

    // collect action labels present anywhere
    std::unordered_set<std::string> known_labels;
    for (const auto& m : ast.modules)
        for (const auto& cmd : m.commands)
            if (cmd.action) known_labels.insert(*cmd.action);

    std::unordered_set<int> drop_reactions;
    std::unordered_set<std::string> drop_labels;
    for (const auto& edit : edits) {
        if (edit.kind == VariantEdit::Kind::RemoveReaction) {
            auto it = idx.reactions.find(edit.reaction_id);
            if (it == idx.reactions.end())
                throw QueryError("unknown reaction id " + std::to_string(edit.reaction_id));
            drop_reactions.insert(edit.reaction_id);
            // removing one side of a synchronized command removes the whole
            // reaction: every command sharing the label goes too
            for (const auto& ref : it->second)
                if (ref.action) drop_labels.insert(*ref.action);
        } else {
            if (!known_labels.count(edit.label))
                throw QueryError("unknown action label '" + edit.label + "'");
            drop_labels.insert(edit.label);
        }
    }

    ModelAst out;
    out.constants = ast.constants;
    out.rewards = ast.rewards;
    for (const auto& m : ast.modules) {
        ModuleDef nm;
        nm.name = m.name;
        nm.pos = m.pos;
        nm.variables = m.variables;
        for (const auto& cmd : m.commands) {
            bool drop = false;
            if (cmd.reaction_id && drop_reactions.count(*cmd.reaction_id)) drop = true;
            if (cmd.action && drop_labels.count(*cmd.action)) drop = true;
            if (!drop) nm.commands.push_back(cmd);
        }
        if (nm.commands.empty() && !m.commands.empty() && warnings)
            warnings->messages.push_back("module '" + m.name +
                                         "' has no commands left after edits");
        out.modules.push_back(std::move(nm));
    }
    return out;
}

} // namespace ctmc
