#include "shade/ast/parser.hpp"

#include <map>

#include "shade/ast/lexer.hpp"
#include "shade/core/errors.hpp"
#include "shade/core/sha256.hpp"

namespace shade::ast {

namespace {

class Parser {
public:
    explicit Parser(const std::string& src) : tokens_(tokenize(src)) {}

    TreeNode parse_module() {
        TreeNode mod = make_node("module", 1, 0);
        while (!at(TokKind::End)) {
            mod.children.push_back(parse_statement());
            drain_pending(mod);
        }
        mod.end_line = tokens_.empty() ? 1 : tokens_.back().line;
        return mod;
    }

private:
    // ---- token helpers -------------------------------------------------

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        std::size_t i = pos_ + n;
        return tokens_[i < tokens_.size() ? i : tokens_.size() - 1];
    }
    bool at(TokKind k) const { return cur().kind == k; }
    bool at_op(const char* t) const { return cur().kind == TokKind::Op && cur().text == t; }
    bool at_kw(const char* t) const { return cur().kind == TokKind::Keyword && cur().text == t; }

    const Token& advance() { return tokens_[pos_++]; }

    void expect_op(const char* t) {
        if (!at_op(t)) fail(std::string("expected '") + t + "'");
        ++pos_;
    }
    void expect_kw(const char* t) {
        if (!at_kw(t)) fail(std::string("expected '") + t + "'");
        ++pos_;
    }
    void expect_newline() {
        if (at(TokKind::End)) return;
        if (!at(TokKind::Newline)) fail("expected end of line");
        ++pos_;
    }
    std::string expect_name() {
        if (!at(TokKind::Name)) fail("expected identifier");
        return advance().text;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + ", got '" + cur().text + "'", cur().line, cur().col);
    }

    TreeNode make_node(std::string label, int line, int col) const {
        TreeNode n;
        n.label = std::move(label);
        n.start_line = line;
        n.start_col = col;
        n.end_line = line;
        return n;
    }
    TreeNode node_here(std::string label) const { return make_node(std::move(label), cur().line, cur().col); }
    TreeNode leaf(std::string kind, const Token& t) const {
        return make_node(kind + ":" + t.text, t.line, t.col);
    }

    int last_line() const { return tokens_[pos_ > 0 ? pos_ - 1 : 0].line; }

    // ---- statements ----------------------------------------------------

    TreeNode parse_statement() {
        if (at(TokKind::Keyword)) {
            const std::string& kw = cur().text;
            if (kw == "if") return parse_if();
            if (kw == "while") return parse_while();
            if (kw == "for") return parse_for();
            if (kw == "try") return parse_try();
            if (kw == "with") return parse_with();
            if (kw == "def") return parse_funcdef({});
            if (kw == "class") return parse_classdef({});
            if (kw == "async") return parse_async();
        }
        if (at_op("@")) return parse_decorated();
        return parse_simple_line();
    }

    TreeNode parse_async() {
        expect_kw("async");
        if (at_kw("def")) return parse_funcdef({});
        if (at_kw("for")) return parse_for();
        if (at_kw("with")) return parse_with();
        fail("expected def, for or with after async");
    }

    TreeNode parse_decorated() {
        std::vector<TreeNode> decorators;
        while (at_op("@")) {
            TreeNode dec = node_here("decorator");
            expect_op("@");
            dec.children.push_back(parse_test());
            expect_newline();
            decorators.push_back(std::move(dec));
        }
        if (at_kw("async")) {
            expect_kw("async");
            if (!at_kw("def")) fail("expected def after async");
        }
        if (at_kw("def")) return parse_funcdef(std::move(decorators));
        if (at_kw("class")) return parse_classdef(std::move(decorators));
        fail("expected def or class after decorators");
    }

    TreeNode parse_simple_line() {
        TreeNode first = parse_simple_stmt();
        if (at_op(";")) {
            while (at_op(";")) {
                ++pos_;
                if (at(TokKind::Newline) || at(TokKind::End)) break;
                // Statement sequences on one line stay separate siblings, so
                // wrap into a transparent group only when needed by callers.
                pending_stmts_.push_back(parse_simple_stmt());
            }
        }
        expect_newline();
        return first;
    }

    TreeNode parse_simple_stmt() {
        if (at(TokKind::Keyword)) {
            const std::string& kw = cur().text;
            if (kw == "pass" || kw == "break" || kw == "continue") {
                TreeNode n = node_here(kw);
                ++pos_;
                return n;
            }
            if (kw == "return") {
                TreeNode n = node_here("return");
                ++pos_;
                if (!at(TokKind::Newline) && !at(TokKind::End) && !at_op(";")) n.children.push_back(parse_testlist());
                n.end_line = last_line();
                return n;
            }
            if (kw == "raise") {
                TreeNode n = node_here("raise");
                ++pos_;
                if (!at(TokKind::Newline) && !at(TokKind::End) && !at_op(";")) {
                    n.children.push_back(parse_test());
                    if (at_kw("from")) {
                        ++pos_;
                        TreeNode from = node_here("from");
                        from.children.push_back(parse_test());
                        n.children.push_back(std::move(from));
                    }
                }
                return n;
            }
            if (kw == "import") return parse_import();
            if (kw == "from") return parse_from_import();
            if (kw == "global" || kw == "nonlocal") {
                TreeNode n = node_here(kw);
                ++pos_;
                n.children.push_back(leaf("name", cur()));
                expect_name();
                while (at_op(",")) {
                    ++pos_;
                    n.children.push_back(leaf("name", cur()));
                    expect_name();
                }
                return n;
            }
            if (kw == "assert") {
                TreeNode n = node_here("assert");
                ++pos_;
                n.children.push_back(parse_test());
                if (at_op(",")) {
                    ++pos_;
                    n.children.push_back(parse_test());
                }
                return n;
            }
            if (kw == "del") {
                TreeNode n = node_here("del");
                ++pos_;
                n.children.push_back(parse_testlist());
                return n;
            }
            if (kw == "yield") {
                TreeNode n = node_here("exprstmt");
                n.children.push_back(parse_test());
                return n;
            }
        }
        return parse_expr_statement();
    }

    TreeNode parse_import() {
        TreeNode n = node_here("import");
        expect_kw("import");
        for (;;) {
            Token first = cur();
            std::string dotted = expect_name();
            while (at_op(".")) {
                ++pos_;
                dotted += "." + expect_name();
            }
            Token module_tok = first;
            module_tok.text = dotted;
            if (at_kw("as")) {
                ++pos_;
                Token alias = cur();
                expect_name();
                TreeNode as = make_node("as:" + alias.text, first.line, first.col);
                as.children.push_back(leaf("module", module_tok));
                n.children.push_back(std::move(as));
            } else {
                n.children.push_back(leaf("module", module_tok));
            }
            if (!at_op(",")) break;
            ++pos_;
        }
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_from_import() {
        Token start = cur();
        expect_kw("from");
        std::string dotted;
        while (at_op(".")) {
            ++pos_;
            dotted += ".";
        }
        if (at(TokKind::Name)) {
            dotted += expect_name();
            while (at_op(".")) {
                ++pos_;
                dotted += "." + expect_name();
            }
        }
        TreeNode n = make_node("importfrom:" + dotted, start.line, start.col);
        expect_kw("import");
        if (at_op("*")) {
            ++pos_;
            n.children.push_back(make_node("name:*", last_line(), 0));
            return n;
        }
        bool parens = at_op("(");
        if (parens) ++pos_;
        for (;;) {
            Token name_tok = cur();
            expect_name();
            if (at_kw("as")) {
                ++pos_;
                Token alias = cur();
                expect_name();
                TreeNode as = make_node("as:" + alias.text, name_tok.line, name_tok.col);
                as.children.push_back(leaf("name", name_tok));
                n.children.push_back(std::move(as));
            } else {
                n.children.push_back(leaf("name", name_tok));
            }
            if (!at_op(",")) break;
            ++pos_;
            if (parens && at_op(")")) break;
        }
        if (parens) expect_op(")");
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_expr_statement() {
        TreeNode first = parse_testlist_star();
        static const char* aug_ops[] = {"+=", "-=", "*=", "/=", "//=", "%=", "**=",
                                        ">>=", "<<=", "&=", "|=", "^=", "@="};
        if (cur().kind == TokKind::Op) {
            for (const char* op : aug_ops) {
                if (cur().text == op) {
                    TreeNode n = make_node(std::string("augassign:") + op, first.start_line, first.start_col);
                    ++pos_;
                    n.children.push_back(std::move(first));
                    n.children.push_back(parse_testlist());
                    n.end_line = last_line();
                    return n;
                }
            }
        }
        if (at_op(":")) { // annotated assignment / declaration
            TreeNode n = make_node("annassign", first.start_line, first.start_col);
            ++pos_;
            n.children.push_back(std::move(first));
            n.children.push_back(parse_test());
            if (at_op("=")) {
                ++pos_;
                n.children.push_back(parse_testlist_star());
            }
            n.end_line = last_line();
            return n;
        }
        if (at_op("=")) {
            TreeNode n = make_node("assign", first.start_line, first.start_col);
            n.children.push_back(std::move(first));
            while (at_op("=")) {
                ++pos_;
                n.children.push_back(parse_testlist_star());
            }
            n.end_line = last_line();
            return n;
        }
        TreeNode n = make_node("exprstmt", first.start_line, first.start_col);
        n.end_line = first.end_line;
        n.children.push_back(std::move(first));
        return n;
    }

    // ---- compound statements --------------------------------------------

    TreeNode parse_if() {
        TreeNode n = node_here("if");
        expect_kw("if");
        n.children.push_back(parse_namedexpr());
        n.children.push_back(parse_suite());
        if (at_kw("elif")) {
            TreeNode else_suite = node_here("suite");
            // elif chains become a nested if inside the else suite
            cur_mutable().text = "if";
            else_suite.children.push_back(parse_if());
            else_suite.end_line = last_line();
            n.children.push_back(std::move(else_suite));
        } else if (at_kw("else")) {
            ++pos_;
            n.children.push_back(parse_suite());
        }
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_while() {
        TreeNode n = node_here("while");
        expect_kw("while");
        n.children.push_back(parse_namedexpr());
        n.children.push_back(parse_suite());
        if (at_kw("else")) {
            ++pos_;
            n.children.push_back(parse_suite());
        }
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_for() {
        TreeNode n = node_here("for");
        expect_kw("for");
        n.children.push_back(parse_target_list());
        expect_kw("in");
        n.children.push_back(parse_testlist());
        n.children.push_back(parse_suite());
        if (at_kw("else")) {
            ++pos_;
            n.children.push_back(parse_suite());
        }
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_try() {
        TreeNode n = node_here("try");
        expect_kw("try");
        n.children.push_back(parse_suite());
        while (at_kw("except")) {
            TreeNode handler = node_here("except");
            ++pos_;
            if (!at_op(":")) {
                handler.children.push_back(parse_test());
                if (at_kw("as")) {
                    ++pos_;
                    Token alias = cur();
                    expect_name();
                    handler.children.push_back(leaf("name", alias));
                }
            }
            handler.children.push_back(parse_suite());
            handler.end_line = last_line();
            n.children.push_back(std::move(handler));
        }
        if (at_kw("else")) {
            ++pos_;
            TreeNode e = make_node("orelse", last_line(), 0);
            e.children.push_back(parse_suite());
            n.children.push_back(std::move(e));
        }
        if (at_kw("finally")) {
            ++pos_;
            TreeNode f = make_node("finally", last_line(), 0);
            f.children.push_back(parse_suite());
            n.children.push_back(std::move(f));
        }
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_with() {
        TreeNode n = node_here("with");
        expect_kw("with");
        for (;;) {
            TreeNode item = node_here("withitem");
            item.children.push_back(parse_test());
            if (at_kw("as")) {
                ++pos_;
                item.children.push_back(parse_target_atom());
            }
            item.end_line = last_line();
            n.children.push_back(std::move(item));
            if (!at_op(",")) break;
            ++pos_;
        }
        n.children.push_back(parse_suite());
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_funcdef(std::vector<TreeNode> decorators) {
        TreeNode n = node_here("funcdef");
        if (!decorators.empty()) {
            n.start_line = decorators.front().start_line;
            n.start_col = decorators.front().start_col;
        }
        for (auto& d : decorators) n.children.push_back(std::move(d));
        expect_kw("def");
        Token name_tok = cur();
        expect_name();
        n.children.push_back(leaf("name", name_tok));
        n.children.push_back(parse_params());
        if (at_op("->")) {
            ++pos_;
            TreeNode r = node_here("returns");
            r.children.push_back(parse_test());
            n.children.push_back(std::move(r));
        }
        n.children.push_back(parse_suite());
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_params() {
        TreeNode params = node_here("params");
        expect_op("(");
        while (!at_op(")")) {
            std::string prefix;
            if (at_op("*")) {
                ++pos_;
                prefix = "*";
                if (at_op("*")) { // "**" lexed as one token normally; guard anyway
                    ++pos_;
                    prefix = "**";
                }
            } else if (at_op("**")) {
                ++pos_;
                prefix = "**";
            } else if (at_op("/")) {
                ++pos_;
                params.children.push_back(make_node("param:/", last_line(), 0));
                if (at_op(",")) ++pos_;
                continue;
            }
            std::string pname;
            if (at(TokKind::Name)) pname = advance().text;
            TreeNode p = make_node("param:" + prefix + pname, last_line(), 0);
            if (at_op(":")) {
                ++pos_;
                TreeNode ann = node_here("annotation");
                ann.children.push_back(parse_test());
                p.children.push_back(std::move(ann));
            }
            if (at_op("=")) {
                ++pos_;
                p.children.push_back(parse_test());
            }
            params.children.push_back(std::move(p));
            if (!at_op(",")) break;
            ++pos_;
        }
        expect_op(")");
        params.end_line = last_line();
        return params;
    }

    TreeNode parse_classdef(std::vector<TreeNode> decorators) {
        TreeNode n = node_here("classdef");
        if (!decorators.empty()) {
            n.start_line = decorators.front().start_line;
            n.start_col = decorators.front().start_col;
        }
        for (auto& d : decorators) n.children.push_back(std::move(d));
        expect_kw("class");
        Token name_tok = cur();
        expect_name();
        n.children.push_back(leaf("name", name_tok));
        if (at_op("(")) {
            TreeNode bases = node_here("bases");
            ++pos_;
            while (!at_op(")")) {
                bases.children.push_back(parse_argument());
                if (!at_op(",")) break;
                ++pos_;
            }
            expect_op(")");
            n.children.push_back(std::move(bases));
        }
        n.children.push_back(parse_suite());
        n.end_line = last_line();
        return n;
    }

    TreeNode parse_suite() {
        expect_op(":");
        TreeNode suite = node_here("suite");
        if (at(TokKind::Newline)) {
            ++pos_;
            if (!at(TokKind::Indent)) fail("expected indented block");
            ++pos_;
            suite.start_line = cur().line;
            suite.start_col = cur().col;
            while (!at(TokKind::Dedent) && !at(TokKind::End)) {
                suite.children.push_back(parse_statement());
                drain_pending(suite);
            }
            if (at(TokKind::Dedent)) ++pos_;
        } else {
            // inline suite: stmt (';' stmt)* NEWLINE
            suite.children.push_back(parse_simple_stmt());
            while (at_op(";")) {
                ++pos_;
                if (at(TokKind::Newline) || at(TokKind::End)) break;
                suite.children.push_back(parse_simple_stmt());
            }
            expect_newline();
        }
        suite.end_line = last_line();
        return suite;
    }

    void drain_pending(TreeNode& into) {
        for (auto& s : pending_stmts_) into.children.push_back(std::move(s));
        pending_stmts_.clear();
    }

    // ---- expressions ------------------------------------------------------

    TreeNode parse_namedexpr() {
        TreeNode t = parse_test();
        if (at_op(":=")) {
            TreeNode n = make_node("namedexpr", t.start_line, t.start_col);
            ++pos_;
            n.children.push_back(std::move(t));
            n.children.push_back(parse_test());
            return n;
        }
        return t;
    }

    TreeNode parse_testlist() { return parse_list_of([this] { return parse_test(); }); }
    TreeNode parse_testlist_star() {
        return parse_list_of([this] { return at_op("*") ? parse_star_expr() : parse_test(); });
    }
    TreeNode parse_target_list() {
        // Loop targets stop before 'in', so elements sit below the
        // comparison level.
        return parse_list_of([this] { return at_op("*") ? parse_star_expr() : parse_bitor(); });
    }

    template <typename F>
    TreeNode parse_list_of(F element) {
        TreeNode first = element();
        if (!at_op(",")) return first;
        TreeNode tup = make_node("tuple", first.start_line, first.start_col);
        tup.children.push_back(std::move(first));
        while (at_op(",")) {
            ++pos_;
            if (at(TokKind::Newline) || at(TokKind::End) || at_op("=") || at_op(")") || at_op("]") ||
                at_op("}") || at_op(":") || at(TokKind::Keyword))
                break;
            tup.children.push_back(element());
        }
        tup.end_line = last_line();
        return tup;
    }

    TreeNode parse_star_expr() {
        TreeNode n = node_here("star");
        expect_op("*");
        n.children.push_back(parse_or_test());
        return n;
    }

    TreeNode parse_target_atom() {
        // Restricted target for "with ... as X" / except captures.
        return parse_or_test();
    }

    TreeNode parse_test() {
        if (at_kw("lambda")) return parse_lambda();
        TreeNode t = parse_or_test();
        if (at_kw("if")) {
            TreeNode n = make_node("ifexp", t.start_line, t.start_col);
            ++pos_;
            n.children.push_back(std::move(t));       // value when true
            n.children.push_back(parse_or_test());    // condition
            expect_kw("else");
            n.children.push_back(parse_test());
            return n;
        }
        return t;
    }

    TreeNode parse_lambda() {
        TreeNode n = node_here("lambda");
        expect_kw("lambda");
        TreeNode params = make_node("params", last_line(), 0);
        while (!at_op(":")) {
            std::string prefix;
            if (at_op("*")) {
                ++pos_;
                prefix = "*";
            } else if (at_op("**")) {
                ++pos_;
                prefix = "**";
            }
            std::string pname;
            if (at(TokKind::Name)) pname = advance().text;
            TreeNode p = make_node("param:" + prefix + pname, last_line(), 0);
            if (at_op("=")) {
                ++pos_;
                p.children.push_back(parse_test());
            }
            params.children.push_back(std::move(p));
            if (!at_op(",")) break;
            ++pos_;
        }
        n.children.push_back(std::move(params));
        expect_op(":");
        n.children.push_back(parse_test());
        return n;
    }

    TreeNode parse_or_test() { return parse_boolop("or", [this] { return parse_and_test(); }); }
    TreeNode parse_and_test() { return parse_boolop("and", [this] { return parse_not_test(); }); }

    template <typename F>
    TreeNode parse_boolop(const char* op, F sub) {
        TreeNode left = sub();
        if (!at_kw(op)) return left;
        TreeNode n = make_node(std::string("boolop:") + op, left.start_line, left.start_col);
        n.children.push_back(std::move(left));
        while (at_kw(op)) {
            ++pos_;
            n.children.push_back(sub());
        }
        return n;
    }

    TreeNode parse_not_test() {
        if (at_kw("not")) {
            TreeNode n = node_here("unaryop:not");
            ++pos_;
            n.children.push_back(parse_not_test());
            return n;
        }
        return parse_comparison();
    }

    TreeNode parse_comparison() {
        TreeNode left = parse_bitor();
        if (!at_comp_op()) return left;
        TreeNode n = make_node("compare", left.start_line, left.start_col);
        n.children.push_back(std::move(left));
        while (at_comp_op()) {
            std::string op = take_comp_op();
            TreeNode cmp = make_node("cmpop:" + op, last_line(), 0);
            cmp.children.push_back(parse_bitor());
            n.children.push_back(std::move(cmp));
        }
        return n;
    }

    bool at_comp_op() const {
        if (cur().kind == TokKind::Op) {
            const std::string& t = cur().text;
            return t == "<" || t == ">" || t == "<=" || t == ">=" || t == "==" || t == "!=";
        }
        if (cur().kind == TokKind::Keyword) {
            const std::string& t = cur().text;
            if (t == "in" || t == "is") return true;
            if (t == "not" && peek().kind == TokKind::Keyword && peek().text == "in") return true;
        }
        return false;
    }

    std::string take_comp_op() {
        if (cur().kind == TokKind::Op) return advance().text;
        std::string t = advance().text;
        if (t == "not") {
            expect_kw("in");
            return "not in";
        }
        if (t == "is" && at_kw("not")) {
            ++pos_;
            return "is not";
        }
        return t;
    }

    TreeNode parse_bitor() { return parse_binop_level({"|"}, [this] { return parse_bitxor(); }); }
    TreeNode parse_bitxor() { return parse_binop_level({"^"}, [this] { return parse_bitand(); }); }
    TreeNode parse_bitand() { return parse_binop_level({"&"}, [this] { return parse_shift(); }); }
    TreeNode parse_shift() { return parse_binop_level({"<<", ">>"}, [this] { return parse_arith(); }); }
    TreeNode parse_arith() { return parse_binop_level({"+", "-"}, [this] { return parse_term(); }); }
    TreeNode parse_term() {
        return parse_binop_level({"*", "/", "//", "%", "@"}, [this] { return parse_factor(); });
    }

    template <typename F>
    TreeNode parse_binop_level(std::initializer_list<const char*> ops, F sub) {
        TreeNode left = sub();
        for (;;) {
            bool matched = false;
            if (cur().kind == TokKind::Op) {
                for (const char* op : ops) {
                    if (cur().text == op) {
                        TreeNode n = make_node("binop:" + cur().text, left.start_line, left.start_col);
                        ++pos_;
                        n.children.push_back(std::move(left));
                        n.children.push_back(sub());
                        left = std::move(n);
                        matched = true;
                        break;
                    }
                }
            }
            if (!matched) return left;
        }
    }

    TreeNode parse_factor() {
        if (at_op("+") || at_op("-") || at_op("~")) {
            TreeNode n = make_node("unaryop:" + cur().text, cur().line, cur().col);
            ++pos_;
            n.children.push_back(parse_factor());
            return n;
        }
        return parse_power();
    }

    TreeNode parse_power() {
        TreeNode base = parse_atom_expr();
        if (at_op("**")) {
            TreeNode n = make_node("binop:**", base.start_line, base.start_col);
            ++pos_;
            n.children.push_back(std::move(base));
            n.children.push_back(parse_factor());
            return n;
        }
        return base;
    }

    TreeNode parse_atom_expr() {
        if (at_kw("await")) {
            TreeNode n = node_here("await");
            ++pos_;
            n.children.push_back(parse_atom_expr());
            return n;
        }
        TreeNode e = parse_atom();
        for (;;) {
            if (at_op("(")) {
                TreeNode call = make_node("call", e.start_line, e.start_col);
                call.children.push_back(std::move(e));
                ++pos_;
                while (!at_op(")")) {
                    call.children.push_back(parse_argument());
                    if (!at_op(",")) break;
                    ++pos_;
                }
                expect_op(")");
                call.end_line = last_line();
                e = std::move(call);
            } else if (at_op(".")) {
                ++pos_;
                Token name_tok = cur();
                expect_name();
                TreeNode attr = make_node("attr:" + name_tok.text, e.start_line, e.start_col);
                attr.end_line = name_tok.line;
                attr.children.push_back(std::move(e));
                e = std::move(attr);
            } else if (at_op("[")) {
                TreeNode sub = make_node("subscript", e.start_line, e.start_col);
                sub.children.push_back(std::move(e));
                ++pos_;
                sub.children.push_back(parse_subscript_list());
                expect_op("]");
                sub.end_line = last_line();
                e = std::move(sub);
            } else {
                return e;
            }
        }
    }

    TreeNode parse_argument() {
        if (at_op("*")) {
            TreeNode n = node_here("star");
            ++pos_;
            n.children.push_back(parse_test());
            return n;
        }
        if (at_op("**")) {
            TreeNode n = node_here("dstar");
            ++pos_;
            n.children.push_back(parse_test());
            return n;
        }
        if (at(TokKind::Name) && peek().kind == TokKind::Op && peek().text == "=" ) {
            // keyword argument (but not "==")
            Token name_tok = cur();
            pos_ += 2;
            TreeNode n = make_node("kwarg:" + name_tok.text, name_tok.line, name_tok.col);
            n.children.push_back(parse_test());
            return n;
        }
        TreeNode value = parse_test();
        if (at_kw("for")) return parse_comp_tail("genexp", std::move(value));
        return value;
    }

    TreeNode parse_subscript_list() {
        TreeNode first = parse_subscript();
        if (!at_op(",")) return first;
        TreeNode tup = make_node("tuple", first.start_line, first.start_col);
        tup.children.push_back(std::move(first));
        while (at_op(",")) {
            ++pos_;
            if (at_op("]")) break;
            tup.children.push_back(parse_subscript());
        }
        return tup;
    }

    TreeNode parse_subscript() {
        TreeNode lower = make_node("empty", cur().line, cur().col);
        bool have_lower = false;
        if (!at_op(":")) {
            lower = parse_test();
            have_lower = true;
            if (!at_op(":")) return lower; // plain index
        }
        // slice
        TreeNode slice = make_node("slice", lower.start_line, lower.start_col);
        slice.children.push_back(have_lower ? std::move(lower) : make_node("empty", cur().line, cur().col));
        expect_op(":");
        if (!at_op("]") && !at_op(":") && !at_op(",")) {
            slice.children.push_back(parse_test());
        } else {
            slice.children.push_back(make_node("empty", cur().line, cur().col));
        }
        if (at_op(":")) {
            ++pos_;
            if (!at_op("]") && !at_op(",")) slice.children.push_back(parse_test());
        }
        return slice;
    }

    TreeNode parse_comp_tail(const char* kind, TreeNode elt) {
        TreeNode comp = make_node(kind, elt.start_line, elt.start_col);
        comp.children.push_back(std::move(elt));
        while (at_kw("for") || at_kw("async")) {
            if (at_kw("async")) ++pos_;
            TreeNode clause = node_here("compfor");
            expect_kw("for");
            clause.children.push_back(parse_target_list());
            expect_kw("in");
            clause.children.push_back(parse_or_test());
            while (at_kw("if")) {
                TreeNode cond = node_here("compif");
                ++pos_;
                cond.children.push_back(parse_or_test());
                clause.children.push_back(std::move(cond));
            }
            comp.children.push_back(std::move(clause));
        }
        return comp;
    }

    TreeNode parse_atom() {
        const Token& t = cur();
        switch (t.kind) {
            case TokKind::Name: {
                TreeNode n = leaf("name", t);
                ++pos_;
                return n;
            }
            case TokKind::Number: {
                TreeNode n = leaf("num", t);
                ++pos_;
                return n;
            }
            case TokKind::String: {
                TreeNode n = leaf("str", t);
                ++pos_;
                if (at(TokKind::String)) {
                    TreeNode join = make_node("strjoin", n.start_line, n.start_col);
                    join.children.push_back(std::move(n));
                    while (at(TokKind::String)) {
                        join.children.push_back(leaf("str", cur()));
                        ++pos_;
                    }
                    return join;
                }
                return n;
            }
            case TokKind::Keyword: {
                if (t.text == "True" || t.text == "False" || t.text == "None") {
                    TreeNode n = leaf("const", t);
                    ++pos_;
                    return n;
                }
                if (t.text == "yield") {
                    TreeNode n = node_here("yield");
                    ++pos_;
                    if (at_kw("from")) {
                        n.label = "yieldfrom";
                        ++pos_;
                        n.children.push_back(parse_test());
                    } else if (!at(TokKind::Newline) && !at(TokKind::End) && !at_op(")") && !at_op("]") &&
                               !at_op("}") && !at_op(";")) {
                        n.children.push_back(parse_testlist());
                    }
                    return n;
                }
                if (t.text == "lambda") return parse_lambda();
                fail("unexpected keyword in expression");
            }
            case TokKind::Op:
                if (t.text == "(") return parse_paren_atom();
                if (t.text == "[") return parse_list_atom();
                if (t.text == "{") return parse_brace_atom();
                if (t.text == "...") {
                    TreeNode n = leaf("const", t);
                    ++pos_;
                    return n;
                }
                fail("unexpected token in expression");
            default:
                fail("unexpected token in expression");
        }
    }

    TreeNode parse_paren_atom() {
        Token open = cur();
        expect_op("(");
        if (at_op(")")) {
            ++pos_;
            return make_node("tuple", open.line, open.col);
        }
        TreeNode first = at_op("*") ? parse_star_expr() : parse_namedexpr();
        if (at_kw("for")) {
            TreeNode comp = parse_comp_tail("genexp", std::move(first));
            expect_op(")");
            return comp;
        }
        if (at_op(",")) {
            TreeNode tup = make_node("tuple", open.line, open.col);
            tup.children.push_back(std::move(first));
            while (at_op(",")) {
                ++pos_;
                if (at_op(")")) break;
                tup.children.push_back(at_op("*") ? parse_star_expr() : parse_test());
            }
            expect_op(")");
            return tup;
        }
        expect_op(")");
        return first; // grouping parentheses add no node
    }

    TreeNode parse_list_atom() {
        Token open = cur();
        expect_op("[");
        TreeNode list = make_node("list", open.line, open.col);
        if (at_op("]")) {
            ++pos_;
            return list;
        }
        TreeNode first = at_op("*") ? parse_star_expr() : parse_test();
        if (at_kw("for")) {
            TreeNode comp = parse_comp_tail("listcomp", std::move(first));
            expect_op("]");
            return comp;
        }
        list.children.push_back(std::move(first));
        while (at_op(",")) {
            ++pos_;
            if (at_op("]")) break;
            list.children.push_back(at_op("*") ? parse_star_expr() : parse_test());
        }
        expect_op("]");
        list.end_line = last_line();
        return list;
    }

    TreeNode parse_brace_atom() {
        Token open = cur();
        expect_op("{");
        if (at_op("}")) {
            ++pos_;
            return make_node("dict", open.line, open.col);
        }
        if (at_op("**")) {
            TreeNode dict = make_node("dict", open.line, open.col);
            parse_dict_items(dict);
            expect_op("}");
            return dict;
        }
        TreeNode first = parse_test();
        if (at_op(":")) {
            ++pos_;
            TreeNode item = make_node("dictitem", first.start_line, first.start_col);
            item.children.push_back(std::move(first));
            item.children.push_back(parse_test());
            if (at_kw("for")) {
                TreeNode comp = parse_comp_tail("dictcomp", std::move(item));
                expect_op("}");
                return comp;
            }
            TreeNode dict = make_node("dict", open.line, open.col);
            dict.children.push_back(std::move(item));
            if (at_op(",")) {
                ++pos_;
                parse_dict_items(dict);
            }
            expect_op("}");
            return dict;
        }
        if (at_kw("for")) {
            TreeNode comp = parse_comp_tail("setcomp", std::move(first));
            expect_op("}");
            return comp;
        }
        TreeNode set = make_node("set", open.line, open.col);
        set.children.push_back(std::move(first));
        while (at_op(",")) {
            ++pos_;
            if (at_op("}")) break;
            set.children.push_back(parse_test());
        }
        expect_op("}");
        return set;
    }

    void parse_dict_items(TreeNode& dict) {
        while (!at_op("}")) {
            if (at_op("**")) {
                TreeNode n = node_here("dstar");
                ++pos_;
                n.children.push_back(parse_test());
                dict.children.push_back(std::move(n));
            } else {
                TreeNode item = node_here("dictitem");
                item.children.push_back(parse_test());
                expect_op(":");
                item.children.push_back(parse_test());
                dict.children.push_back(std::move(item));
            }
            if (!at_op(",")) break;
            ++pos_;
        }
    }

    Token& cur_mutable() { return tokens_[pos_]; }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<TreeNode> pending_stmts_;
};

} // namespace

int count_nodes(const TreeNode& node) {
    int n = 1;
    for (const auto& c : node.children) n += count_nodes(c);
    return n;
}

std::string to_canonical_string(const TreeNode& node) {
    std::string out = node.label;
    if (!node.children.empty()) {
        out += "(";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i) out += ",";
            out += to_canonical_string(node.children[i]);
        }
        out += ")";
    }
    return out;
}

namespace {
SyntaxTree parse_python(const std::string& text) {
    Parser parser(text);
    SyntaxTree tree;
    tree.root = parser.parse_module();
    tree.node_count = count_nodes(tree.root);
    tree.source_digest = sha256_hex(text);
    return tree;
}
} // namespace

GrammarRegistry::GrammarRegistry() { parsers_["python"] = &parse_python; }

GrammarRegistry& GrammarRegistry::instance() {
    static GrammarRegistry reg;
    return reg;
}

void GrammarRegistry::register_grammar(const std::string& name, ParseFn fn) { parsers_[name] = fn; }

bool GrammarRegistry::supports(const std::string& name) const { return parsers_.count(name) > 0; }

SyntaxTree GrammarRegistry::parse(const std::string& name, const std::string& text) const {
    auto it = parsers_.find(name);
    if (it == parsers_.end()) throw ConfigError("unsupported grammar '" + name + "'");
    return it->second(text);
}

SyntaxTree parse_source(const std::string& text, const std::string& grammar) {
    return GrammarRegistry::instance().parse(grammar, text);
}

} // namespace shade::ast
