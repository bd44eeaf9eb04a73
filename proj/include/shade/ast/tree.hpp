#pragma once

#include <string>
#include <vector>

namespace shade::ast {

// Ordered labeled tree node. Interior labels are syntactic kinds (possibly
// carrying the operator or selector, e.g. "binop:+", "attr:render"); leaf
// labels carry the kind plus the verbatim token text ("name:x", "num:1").
struct TreeNode {
    std::string label;
    std::vector<TreeNode> children;
    int start_line = 0;
    int start_col = 0; // 0-based byte column of the construct's first token
    int end_line = 0;

    bool is_leaf() const { return children.empty(); }
};

struct SyntaxTree {
    TreeNode root;
    int node_count = 0;
    std::string source_digest;
};

int count_nodes(const TreeNode& node);

// Canonical single-line rendering ("label(child,child)"), used for digests,
// test diagnostics and duplicate detection.
std::string to_canonical_string(const TreeNode& node);

} // namespace shade::ast
