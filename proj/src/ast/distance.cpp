#include "shade/ast/distance.hpp"

#include <algorithm>
#include <vector>

#include "shade/core/errors.hpp"

namespace shade::ast {

namespace {

// Postorder flattening with leftmost-leaf-descendant indices and keyroots,
// the classic Zhang–Shasha preprocessing.
struct Flat {
    std::vector<const std::string*> labels; // postorder
    std::vector<int> lmld;                  // leftmost leaf descendant, postorder index
    std::vector<int> keyroots;
};

int flatten(const TreeNode& node, Flat& out) {
    int first_leaf = -1;
    for (const auto& child : node.children) {
        int child_lmld = flatten(child, out);
        if (first_leaf == -1) first_leaf = child_lmld;
    }
    int index = static_cast<int>(out.labels.size());
    out.labels.push_back(&node.label);
    out.lmld.push_back(first_leaf == -1 ? index : first_leaf);
    return out.lmld.back();
}

Flat preprocess(const TreeNode& root) {
    Flat f;
    flatten(root, f);
    int n = static_cast<int>(f.labels.size());
    // keyroots: nodes with no left sibling on their root path = nodes whose
    // lmld differs from their parent's (collected as maxima per lmld value).
    std::vector<int> last_with_lmld; // lmld value -> highest postorder index
    last_with_lmld.assign(n, -1);
    for (int i = 0; i < n; ++i) last_with_lmld[f.lmld[i]] = i;
    for (int i = 0; i < n; ++i) {
        if (last_with_lmld[f.lmld[i]] == i) f.keyroots.push_back(i);
    }
    return f;
}

} // namespace

int tree_edit_distance_ops(const TreeNode& a, const TreeNode& b) {
    Flat fa = preprocess(a);
    Flat fb = preprocess(b);
    int n = static_cast<int>(fa.labels.size());
    int m = static_cast<int>(fb.labels.size());

    std::vector<std::vector<int>> treedist(n, std::vector<int>(m, 0));
    // Forest distance scratch, indices shifted by one (0 = empty forest).
    std::vector<std::vector<int>> fd(n + 1, std::vector<int>(m + 1, 0));

    for (int ki : fa.keyroots) {
        for (int kj : fb.keyroots) {
            int li = fa.lmld[ki];
            int lj = fb.lmld[kj];
            int rows = ki - li + 1;
            int cols = kj - lj + 1;

            fd[0][0] = 0;
            for (int i = 1; i <= rows; ++i) fd[i][0] = fd[i - 1][0] + 1;
            for (int j = 1; j <= cols; ++j) fd[0][j] = fd[0][j - 1] + 1;

            for (int i = 1; i <= rows; ++i) {
                int node_i = li + i - 1;
                for (int j = 1; j <= cols; ++j) {
                    int node_j = lj + j - 1;
                    if (fa.lmld[node_i] == li && fb.lmld[node_j] == lj) {
                        int relabel = (*fa.labels[node_i] == *fb.labels[node_j]) ? 0 : 1;
                        fd[i][j] = std::min({fd[i - 1][j] + 1, fd[i][j - 1] + 1, fd[i - 1][j - 1] + relabel});
                        treedist[node_i][node_j] = fd[i][j];
                    } else {
                        int pi = fa.lmld[node_i] - li; // forest prefix before this subtree
                        int pj = fb.lmld[node_j] - lj;
                        fd[i][j] = std::min({fd[i - 1][j] + 1, fd[i][j - 1] + 1,
                                             fd[pi][pj] + treedist[node_i][node_j]});
                    }
                }
            }
        }
    }
    return treedist[n - 1][m - 1];
}

DistanceResult tree_edit_distance(const SyntaxTree& a, const SyntaxTree& b) {
    DistanceResult r;
    r.edit_distance = tree_edit_distance_ops(a.root, b.root);
    int denom = std::max(a.node_count, b.node_count);
    r.normalized = denom > 0 ? static_cast<double>(r.edit_distance) / denom : 0.0;
    r.similarity = 1.0 - r.normalized;
    return r;
}

double code_distance(const std::string& orig_text, const std::string& new_text, const std::string& grammar) {
    SyntaxTree orig = parse_source(orig_text, grammar); // ParseError propagates
    try {
        SyntaxTree transformed = parse_source(new_text, grammar);
        return tree_edit_distance(orig, transformed).normalized;
    } catch (const ParseError&) {
        return 1.0;
    }
}

OriginDistance::OriginDistance(std::string origin_text, std::string grammar)
    : origin_(parse_source(origin_text, grammar)), grammar_(std::move(grammar)) {}

double OriginDistance::to(const std::string& new_text) const {
    try {
        SyntaxTree transformed = parse_source(new_text, grammar_);
        return tree_edit_distance(origin_, transformed).normalized;
    } catch (const ParseError&) {
        return 1.0;
    }
}

} // namespace shade::ast
