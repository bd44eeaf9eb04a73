#pragma once

#include <string>

#include "shade/ast/parser.hpp"
#include "shade/ast/tree.hpp"

namespace shade::ast {

struct DistanceResult {
    int edit_distance = 0;   // minimum unit-cost insert/delete/relabel ops
    double normalized = 0.0; // edit_distance / max(node counts), in [0,1]
    double similarity = 1.0; // 1 - normalized
};

// Ordered-tree edit distance with unit costs (Zhang–Shasha keyroot
// decomposition). Total on valid trees.
DistanceResult tree_edit_distance(const SyntaxTree& a, const SyntaxTree& b);
int tree_edit_distance_ops(const TreeNode& a, const TreeNode& b);

// Normalized distance between two sources. The original must parse; if the
// transformed text does not, the maximal distance 1.0 is returned so a
// downstream fitness of 0 falls out naturally.
double code_distance(const std::string& orig_text, const std::string& new_text,
                     const std::string& grammar = "python");

// Same, against a pre-parsed origin (saves reparsing in loops that compare
// every candidate back to one fixed source).
class OriginDistance {
public:
    OriginDistance(std::string origin_text, std::string grammar = "python");
    double to(const std::string& new_text) const;
    const SyntaxTree& origin() const { return origin_; }

private:
    SyntaxTree origin_;
    std::string grammar_;
};

} // namespace shade::ast
