#pragma once

// Generators for small Java-subset method bodies over at most three
// variables: a deterministic exhaustive family plus seeded random
// programs. Used by the PDG oracle tests and the acceptance suite.

#include <random>
#include <string>
#include <vector>

namespace changectx::testing {

/// Exhaustive family: straight-line sequences, single branch/loop
/// constructs with all body combinations, nested pairs, and early-return
/// variants. Every program has at most 15 statements and uses x, y, z.
std::vector<std::string> exhaustive_programs();

/// Seeded random structured program with at most `max_stmts` statements.
std::string random_program(std::mt19937& rng, int max_stmts);

}  // namespace changectx::testing
