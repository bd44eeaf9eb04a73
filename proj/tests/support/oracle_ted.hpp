#pragma once

#include "shade/ast/tree.hpp"

namespace shade::testing {

// Brute-force ordered-forest edit distance by direct memoized recursion on
// subforests. Independent of the keyroot/DP kernel in shade_core; used as
// the ground-truth oracle for randomized equivalence checks.
int oracle_tree_edit_distance(const ast::TreeNode& a, const ast::TreeNode& b);

} // namespace shade::testing
