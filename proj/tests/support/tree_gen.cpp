#include "support/tree_gen.hpp"

#include <vector>

namespace shade::testing {

using ast::TreeNode;

TreeNode random_tree(Rng& rng, int node_count, int label_alphabet) {
    TreeNode root;
    root.label = std::string(1, char('a' + rng.below(label_alphabet)));
    std::vector<TreeNode*> pool{&root};
    for (int i = 1; i < node_count; ++i) {
        TreeNode* parent = pool[rng.below(pool.size())];
        TreeNode child;
        child.label = std::string(1, char('a' + rng.below(label_alphabet)));
        parent->children.push_back(std::move(child));
        // Re-collect pointers: the vector above may have reallocated children.
        pool.clear();
        std::vector<TreeNode*> stack{&root};
        while (!stack.empty()) {
            TreeNode* n = stack.back();
            stack.pop_back();
            pool.push_back(n);
            for (auto& c : n->children) stack.push_back(&c);
        }
    }
    return root;
}

TreeNode insert_random_leaves(Rng& rng, const TreeNode& tree, int k) {
    TreeNode out = tree;
    for (int i = 0; i < k; ++i) {
        std::vector<TreeNode*> pool;
        std::vector<TreeNode*> stack{&out};
        while (!stack.empty()) {
            TreeNode* n = stack.back();
            stack.pop_back();
            pool.push_back(n);
            for (auto& c : n->children) stack.push_back(&c);
        }
        TreeNode* parent = pool[rng.below(pool.size())];
        TreeNode leaf;
        leaf.label = "fresh_" + std::to_string(i);
        std::size_t at = rng.below(parent->children.size() + 1);
        parent->children.insert(parent->children.begin() + static_cast<long>(at), std::move(leaf));
    }
    return out;
}

} // namespace shade::testing
