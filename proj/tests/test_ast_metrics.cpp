#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "shade/ast/distance.hpp"
#include "shade/ast/parser.hpp"
#include "shade/core/errors.hpp"
#include "shade/core/fsio.hpp"
#include "shade/core/rng.hpp"
#include "support/oracle_ted.hpp"
#include "support/tree_gen.hpp"

using namespace shade;
using namespace shade::ast;

namespace {
std::string asset(const char* rel) { return std::string(SHADE_SOURCE_DIR "/assets/") + rel; }
}

TEST_CASE("parse_source basics") {
    SUBCASE("minimal program") {
        SyntaxTree t = parse_source("x = 1");
        CHECK(t.node_count >= 3);
        CHECK(t.root.label == "module");
    }
    SUBCASE("empty file is a bare root") {
        SyntaxTree t = parse_source("");
        CHECK(t.node_count == 1);
        CHECK(t.root.label == "module");
    }
    SUBCASE("whitespace-only file is a bare root") {
        CHECK(parse_source("\n   \n\t\n").node_count == 1);
    }
    SUBCASE("unbalanced delimiter raises") {
        CHECK_THROWS_AS(parse_source("x = ("), ParseError);
    }
    SUBCASE("bad statement raises") {
        CHECK_THROWS_AS(parse_source("def = 3"), ParseError);
        CHECK_THROWS_AS(parse_source("x ===== ("), ParseError);
    }
    SUBCASE("unknown grammar is a config error") {
        CHECK_THROWS_AS(parse_source("x = 1", "cobol"), ConfigError);
    }
    SUBCASE("node count matches reachable nodes") {
        SyntaxTree t = parse_source("def f(a, b=2):\n    return a + b\n");
        CHECK(t.node_count == count_nodes(t.root));
    }
}

TEST_CASE("parser covers the payload corpus") {
    const char* files[] = {
        "payloads/case1_jinja2_original.py",    "payloads/case1_jinja2_transformed.py",
        "payloads/case1_jinja2_obfuscated.py",  "payloads/case2_requests_original.py",
        "payloads/case2_requests_transformed.py", "payloads/case2_requests_obfuscated.py",
        "payloads/case3_socket_original.py",    "payloads/case3_socket_transformed.py",
        "payloads/case3_socket_obfuscated.py",
    };
    for (const char* f : files) {
        CAPTURE(f);
        SyntaxTree t = parse_source(read_file(asset(f)));
        CHECK(t.node_count > 5);
    }
}

TEST_CASE("parser handles assorted python constructs") {
    const char* snippets[] = {
        "for i in range(10):\n    print(i)\nelse:\n    pass\n",
        "try:\n    x = d[k]\nexcept KeyError as e:\n    raise ValueError(str(e)) from e\nfinally:\n    close()\n",
        "class A(Base, metaclass=Meta):\n    value: int = 0\n    def m(self, *args, **kwargs):\n        return [x ** 2 for x in args if x]\n",
        "async def go():\n    async with session.get(url) as r:\n        return await r.json()\n",
        "x = {k: v for k, v in items}\ny = {1, 2, 3}\nz = (a for a in b)\n",
        "f = lambda a, b=1: a if a > b else -b\n",
        "s = f\"value={x!r}\"\nt = r'\\d+'\nu = b\"bytes\" b'more'\n",
        "data[1:2, ::3] = other[::-1]\n",
        "result = (yield)\n",
        "del a[0]; global g; assert x, \"msg\"\n",
        "if a:\n    pass\nelif b:\n    pass\nelse:\n    pass\n",
        "while n := read():\n    total += n\n",
        "def f(a, /, b, *, c):\n    return a @ b | c\n",
    };
    for (const char* s : snippets) {
        CAPTURE(s);
        CHECK_NOTHROW(parse_source(s));
    }
}

TEST_CASE("comments and whitespace never reach the tree") {
    SyntaxTree plain = parse_source("x = 1\ny = x + 2\n");
    SyntaxTree commented = parse_source("# leading comment\nx = 1  # trailing\n\n\ny = x + 2\n");
    CHECK(to_canonical_string(plain.root) == to_canonical_string(commented.root));
    CHECK(tree_edit_distance(plain, commented).edit_distance == 0);
}

TEST_CASE("tree_edit_distance identity and basic edits") {
    SyntaxTree t = parse_source("def f():\n    return 1\n");
    auto r = tree_edit_distance(t, t);
    CHECK(r.edit_distance == 0);
    CHECK(r.normalized == 0.0);
    CHECK(r.similarity == 1.0);

    SyntaxTree renamed = parse_source("def g():\n    return 1\n");
    auto r2 = tree_edit_distance(t, renamed);
    CHECK(r2.edit_distance == 1); // one leaf relabel

    SyntaxTree grown = parse_source("def f():\n    return 1\nx = 2\n");
    auto r3 = tree_edit_distance(t, grown);
    CHECK(r3.edit_distance == 3); // assign + name + num inserted
}

TEST_CASE("kernel equals brute-force oracle on random small trees") {
    Rng rng(20240901);
    auto started = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 500; ++trial) {
        int na = 1 + int(rng.below(12));
        int nb = 1 + int(rng.below(12));
        TreeNode a = testing::random_tree(rng, na);
        TreeNode b = testing::random_tree(rng, nb);
        int kernel = tree_edit_distance_ops(a, b);
        int oracle = testing::oracle_tree_edit_distance(a, b);
        CAPTURE(trial);
        CAPTURE(to_canonical_string(a));
        CAPTURE(to_canonical_string(b));
        REQUIRE(kernel == oracle);
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started);
    CHECK(elapsed.count() < 10);
}

TEST_CASE("inserting k fresh leaves moves the distance by exactly k") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        TreeNode t = testing::random_tree(rng, 1 + int(rng.below(10)));
        int k = 1 + int(rng.below(5));
        TreeNode grown = testing::insert_random_leaves(rng, t, k);
        CHECK(tree_edit_distance_ops(t, grown) == k);
    }
}

TEST_CASE("code_distance properties") {
    const std::string p = "x = 1\ny = 2\n";
    SUBCASE("identity") { CHECK(code_distance(p, p) == 0.0); }
    SUBCASE("unparseable new text hits the sentinel") {
        CHECK(code_distance(p, "x = (") == 1.0);
    }
    SUBCASE("unparseable original raises") {
        CHECK_THROWS_AS(code_distance("x = (", p), ParseError);
    }
    SUBCASE("symmetry on parseable pairs") {
        Rng rng(99);
        const char* corpus[] = {
            "a = 1\n", "def f():\n    return 2\n", "import os\nprint(os.name)\n",
            "for i in x:\n    y += i\n", "z = [i * i for i in range(4)]\n",
        };
        for (const char* a : corpus) {
            for (const char* b : corpus) {
                CHECK(code_distance(a, b) == doctest::Approx(code_distance(b, a)));
            }
        }
        (void)rng;
    }
    SUBCASE("range and similarity complement") {
        SyntaxTree a = parse_source("a = 1\n");
        SyntaxTree b = parse_source("def f(x):\n    return x and not x\n");
        auto r = tree_edit_distance(a, b);
        CHECK(r.normalized >= 0.0);
        CHECK(r.normalized <= 1.0);
        CHECK(r.similarity == doctest::Approx(1.0 - r.normalized));
    }
}

TEST_CASE("distance calibration against the documented payload pairs") {
    struct Case {
        const char* original;
        const char* transformed;
        double target;
    } cases[] = {
        {"payloads/case1_jinja2_original.py", "payloads/case1_jinja2_transformed.py", 0.12},
        {"payloads/case2_requests_original.py", "payloads/case2_requests_transformed.py", 0.25},
        {"payloads/case3_socket_original.py", "payloads/case3_socket_transformed.py", 0.14},
    };
    for (const auto& c : cases) {
        CAPTURE(c.original);
        double d = code_distance(read_file(asset(c.original)), read_file(asset(c.transformed)));
        std::printf("calibration %-45s normalized=%.4f target=%.2f\n", c.original, d, c.target);
        CHECK(d >= c.target - 0.08);
        CHECK(d <= c.target + 0.08);
    }
}
