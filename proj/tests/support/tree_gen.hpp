#pragma once

#include "shade/ast/tree.hpp"
#include "shade/core/rng.hpp"

namespace shade::testing {

// Random ordered labeled tree with node_count nodes. A small label alphabet
// keeps relabel collisions frequent, which is what stresses the DP.
ast::TreeNode random_tree(Rng& rng, int node_count, int label_alphabet = 5);

// Copy of `tree` with k fresh leaves (labels unseen in the source tree)
// inserted at random positions.
ast::TreeNode insert_random_leaves(Rng& rng, const ast::TreeNode& tree, int k);

} // namespace shade::testing
