#pragma once

#include <string>
#include <vector>

#include "changectx/change_differ.hpp"
#include "changectx/pdg.hpp"
#include "changectx/slicer.hpp"

namespace changectx {

/// One line of the representation. Markers: '+' added, '-' removed,
/// ' ' unchanged context. `hop` is the dependence distance from the
/// nearest changed statement (0 for marked lines); truncation drops the
/// farthest context first.
struct RepEntry {
    char marker = ' ';
    std::string text;  // normalized statement text
    int hop = 0;
};

struct ContextEncodedRepresentation {
    std::vector<RepEntry> entries;
    int token_count = 0;
    bool truncated = false;
};

struct EncodeOptions {
    SliceConfig slice;
    int token_budget = 512;
    bool include_context = true;  // false: changed statements only
};

/// Builds the merged, ordered representation of one commit: the removed
/// statements sliced in the before PDG, the added statements sliced in the
/// after PDG, and the unchanged statements either slice reaches, emitted
/// once. Order follows after-version source positions, with removed
/// statements interleaved after their nearest matched predecessor. The
/// result is truncated to the token budget.
ContextEncodedRepresentation encode_change(const SourceVersion& before,
                                           const ProgramDependenceGraph& before_pdg,
                                           const SourceVersion& after,
                                           const ProgramDependenceGraph& after_pdg,
                                           const ChangeSet& changeset,
                                           const EncodeOptions& options,
                                           Diagnostics* diags = nullptr);

/// Drops entries until the rendering fits `budget` tokens: unmarked
/// entries farthest (in hops) from any seed first, later entries first
/// within a hop; then marked entries from the end. A final lone marked
/// entry is kept even when it alone exceeds the budget, with the
/// truncated flag set.
ContextEncodedRepresentation truncate(ContextEncodedRepresentation rep, int budget);

/// Bit-exact rendering: `<marker><space><text>` per line, trailing
/// newline, no header. Empty representation renders as the empty string.
std::string render(const ContextEncodedRepresentation& rep);

/// Whitespace-delimited lexeme count of the rendered representation
/// ('+'/'-' markers count, the blank marker does not).
int count_tokens(const ContextEncodedRepresentation& rep);

}  // namespace changectx
