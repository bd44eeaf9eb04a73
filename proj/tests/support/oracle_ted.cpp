#include "support/oracle_ted.hpp"

#include <map>
#include <string>
#include <vector>

namespace shade::testing {

namespace {

struct Node {
    int label_id;
    std::vector<int> children;
};

struct Arena {
    std::vector<Node> nodes;
    std::map<std::string, int> label_ids;

    int intern(const std::string& label) {
        auto [it, inserted] = label_ids.emplace(label, static_cast<int>(label_ids.size()));
        return it->second;
    }

    int add(const ast::TreeNode& n) {
        Node node;
        node.label_id = intern(n.label);
        for (const auto& c : n.children) node.children.push_back(add(c));
        nodes.push_back(node);
        return static_cast<int>(nodes.size() - 1);
    }

    int subtree_size(int id) const {
        int total = 1;
        for (int c : nodes[id].children) total += subtree_size(c);
        return total;
    }
};

using Forest = std::vector<int>; // root ids, left to right

std::string key_of(const Forest& f, const Arena&) {
    std::string k;
    for (int id : f) {
        k += std::to_string(id);
        k += ',';
    }
    return k;
}

class OracleSolver {
public:
    Arena a, b;
    std::map<std::string, int> memo;

    int forest_size(const Arena& ar, const Forest& f) {
        int total = 0;
        for (int id : f) total += ar.subtree_size(id);
        return total;
    }

    int solve(const Forest& fa, const Forest& fb) {
        if (fa.empty()) return forest_size(b, fb);
        if (fb.empty()) return forest_size(a, fa);
        std::string key = key_of(fa, a) + "|" + key_of(fb, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        // Decompose on the rightmost trees.
        int ra = fa.back();
        int rb = fb.back();

        Forest fa_minus_root = Forest(fa.begin(), fa.end() - 1);
        for (int c : a.nodes[ra].children) fa_minus_root.push_back(c);
        Forest fb_minus_root = Forest(fb.begin(), fb.end() - 1);
        for (int c : b.nodes[rb].children) fb_minus_root.push_back(c);

        int best = solve(fa_minus_root, fb) + 1; // delete root of rightmost tree in fa
        best = std::min(best, solve(fa, fb_minus_root) + 1); // insert root of rightmost tree in fb

        // Match the two rightmost roots: their child forests align, and the
        // remaining forests align.
        Forest rest_a(fa.begin(), fa.end() - 1);
        Forest rest_b(fb.begin(), fb.end() - 1);
        int relabel = a.nodes[ra].label_id == b.nodes[rb].label_id ? 0 : 1;
        // label ids are interned per-arena; compare through the shared table
        best = std::min(best, solve(rest_a, rest_b) +
                                  solve(a.nodes[ra].children, b.nodes[rb].children) + relabel);

        memo.emplace(std::move(key), best);
        return best;
    }
};

} // namespace

int oracle_tree_edit_distance(const ast::TreeNode& ta, const ast::TreeNode& tb) {
    OracleSolver solver;
    // Share one label table so ids are comparable across the two arenas.
    int root_a = solver.a.add(ta);
    solver.b.label_ids = solver.a.label_ids;
    int root_b = solver.b.add(tb);
    return solver.solve({root_a}, {root_b});
}

} // namespace shade::testing
