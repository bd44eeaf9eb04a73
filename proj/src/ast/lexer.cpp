#include "shade/ast/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include "shade/core/errors.hpp"

namespace shade::ast {

namespace {

const char* kKeywords[] = {
    "False", "None",   "True",   "and",    "as",   "assert", "async", "await",
    "break", "class",  "continue", "def",  "del",  "elif",   "else",  "except",
    "finally", "for",  "from",   "global", "if",   "import", "in",    "is",
    "lambda", "nonlocal", "not",  "or",    "pass", "raise",  "return", "try",
    "while", "with",   "yield",
};

bool is_keyword(const std::string& s) {
    return std::binary_search(std::begin(kKeywords), std::end(kKeywords), s,
                              [](const auto& a, const auto& b) { return std::string_view(a) < std::string_view(b); });
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (unsigned char)c >= 0x80; }
bool is_ident_cont(char c) { return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

bool is_string_prefix(const std::string& s) {
    if (s.size() > 2) return false;
    for (char c : s) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l != 'r' && l != 'b' && l != 'f' && l != 'u') return false;
    }
    return !s.empty();
}

// Multi-character operators, longest first within each leading char.
const char* kOps3[] = {"**=", "//=", ">>=", "<<=", "...", "!=="};
const char* kOps2[] = {"**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", ":=",
                       "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@="};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        indents_.push_back(0);
        line_ = 1;
        line_start_ = 0;
        pos_ = 0;
        at_line_start_ = true;
        while (pos_ < src_.size()) {
            if (at_line_start_ && bracket_depth_ == 0) {
                if (!handle_line_start()) break;
                continue;
            }
            lex_in_line();
        }
        // Terminate a trailing logical line.
        if (!tokens_.empty() && tokens_.back().kind != TokKind::Newline) emit_simple(TokKind::Newline, "\n");
        if (bracket_depth_ > 0) throw ParseError("unbalanced brackets at end of input", line_, 0);
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit_simple(TokKind::Dedent, "");
        }
        emit_simple(TokKind::End, "");
        return std::move(tokens_);
    }

private:
    bool handle_line_start() {
        // Measure indentation; skip blank and comment-only lines entirely.
        std::size_t p = pos_;
        int col = 0;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t')) {
            col += (src_[p] == '\t') ? 8 - (col % 8) : 1;
            ++p;
        }
        if (p >= src_.size()) {
            pos_ = p;
            return false;
        }
        if (src_[p] == '\n' || src_[p] == '\r' || src_[p] == '#') {
            while (p < src_.size() && src_[p] != '\n') ++p;
            if (p < src_.size()) ++p;
            ++line_;
            line_start_ = p;
            pos_ = p;
            return true;
        }
        if (col > indents_.back()) {
            indents_.push_back(col);
            emit_at(TokKind::Indent, "", pos_, 0);
        } else {
            while (col < indents_.back()) {
                indents_.pop_back();
                emit_at(TokKind::Dedent, "", pos_, 0);
            }
            if (col != indents_.back()) throw ParseError("inconsistent dedent", line_, col);
        }
        pos_ = p;
        at_line_start_ = false;
        return true;
    }

    void lex_in_line() {
        char c = src_[pos_];
        if (c == '\n' || c == '\r') {
            if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') ++pos_;
            ++pos_;
            if (bracket_depth_ == 0) {
                emit_simple(TokKind::Newline, "\n");
                at_line_start_ = true;
            }
            ++line_;
            line_start_ = pos_;
            return;
        }
        if (c == ' ' || c == '\t') {
            ++pos_;
            return;
        }
        if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            return;
        }
        if (c == '\\' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '\r')) {
            pos_ += (src_[pos_ + 1] == '\r' && pos_ + 2 < src_.size() && src_[pos_ + 2] == '\n') ? 3 : 2;
            ++line_;
            line_start_ = pos_;
            return;
        }
        if (is_ident_start(c)) {
            lex_name();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (c == '"' || c == '\'') {
            lex_string(pos_);
            return;
        }
        lex_op();
    }

    void lex_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_cont(src_[pos_])) ++pos_;
        std::string text = src_.substr(start, pos_ - start);
        // String prefix immediately followed by a quote: it is a string token.
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') && is_string_prefix(text)) {
            lex_string(start);
            return;
        }
        emit_at(is_keyword(text) ? TokKind::Keyword : TokKind::Name, text, start, pos_ - start);
    }

    void lex_number() {
        std::size_t start = pos_;
        // Forgiving number scan: digits, dots, exponent parts, radix prefixes,
        // underscores, imaginary suffix.
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() && std::strchr("xXoObB", src_[pos_ + 1])) {
            pos_ += 2;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        } else {
            bool seen_dot = false;
            while (pos_ < src_.size()) {
                char c = src_[pos_];
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
                    ++pos_;
                } else if (c == '.' && !seen_dot) {
                    seen_dot = true;
                    ++pos_;
                } else if ((c == 'e' || c == 'E') && pos_ + 1 < src_.size() &&
                           (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                            ((src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') && pos_ + 2 < src_.size() &&
                             std::isdigit(static_cast<unsigned char>(src_[pos_ + 2]))))) {
                    pos_ += 2;
                } else if (c == 'j' || c == 'J') {
                    ++pos_;
                    break;
                } else {
                    break;
                }
            }
        }
        emit_at(TokKind::Number, src_.substr(start, pos_ - start), start, pos_ - start);
    }

    void lex_string(std::size_t start) {
        // pos_ may be inside the prefix; advance to the quote.
        std::size_t p = start;
        while (p < src_.size() && src_[p] != '"' && src_[p] != '\'') ++p;
        char quote = src_[p];
        bool raw = false;
        for (std::size_t i = start; i < p; ++i) {
            char l = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[i])));
            if (l == 'r') raw = true;
        }
        bool triple = (p + 2 < src_.size() && src_[p + 1] == quote && src_[p + 2] == quote);
        std::size_t q = p + (triple ? 3 : 1);
        int start_line = line_;
        while (q < src_.size()) {
            char c = src_[q];
            if (c == '\\' && !raw && q + 1 < src_.size()) {
                if (src_[q + 1] == '\n') ++line_;
                q += 2;
                continue;
            }
            if (c == '\\' && raw && q + 1 < src_.size()) {
                // In raw strings a backslash still escapes the quote lexically.
                q += 2;
                continue;
            }
            if (c == '\n') {
                if (!triple) throw ParseError("unterminated string literal", start_line, int(p - line_start_));
                ++line_;
                ++q;
                continue;
            }
            if (c == quote) {
                if (!triple) {
                    ++q;
                    emit_at(TokKind::String, src_.substr(start, q - start), start, q - start);
                    pos_ = q;
                    return;
                }
                if (q + 2 < src_.size() && src_[q + 1] == quote && src_[q + 2] == quote) {
                    q += 3;
                    emit_at(TokKind::String, src_.substr(start, q - start), start, q - start);
                    pos_ = q;
                    return;
                }
            }
            ++q;
        }
        throw ParseError("unterminated string literal", start_line, int(p - line_start_));
    }

    void lex_op() {
        std::size_t start = pos_;
        auto try_match = [&](const char* const* ops, std::size_t count, std::size_t len) -> bool {
            if (pos_ + len > src_.size()) return false;
            std::string_view view(src_.data() + pos_, len);
            for (std::size_t i = 0; i < count; ++i) {
                if (view == ops[i]) {
                    pos_ += len;
                    return true;
                }
            }
            return false;
        };
        if (!try_match(kOps3, std::size(kOps3), 3) && !try_match(kOps2, std::size(kOps2), 2)) {
            char c = src_[pos_];
            static const std::string singles = "+-*/%@<>=&|^~()[]{},.:;";
            if (singles.find(c) == std::string::npos)
                throw ParseError(std::string("unexpected character '") + c + "'", line_, int(pos_ - line_start_));
            ++pos_;
        }
        std::string text = src_.substr(start, pos_ - start);
        if (text == "(" || text == "[" || text == "{") ++bracket_depth_;
        if (text == ")" || text == "]" || text == "}") {
            if (bracket_depth_ == 0) throw ParseError("unbalanced closing bracket", line_, int(start - line_start_));
            --bracket_depth_;
        }
        emit_at(TokKind::Op, text, start, pos_ - start);
    }

    void emit_at(TokKind kind, std::string text, std::size_t offset, std::size_t length) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = line_;
        t.col = int(offset >= line_start_ ? offset - line_start_ : 0);
        t.offset = offset;
        t.length = length;
        tokens_.push_back(std::move(t));
    }

    void emit_simple(TokKind kind, std::string text) { emit_at(kind, std::move(text), pos_, 0); }

    const std::string& src_;
    std::vector<Token> tokens_;
    std::vector<int> indents_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
    int bracket_depth_ = 0;
    bool at_line_start_ = true;
};

} // namespace

std::vector<Token> tokenize(const std::string& source) { return Lexer(source).run(); }

} // namespace shade::ast
