#pragma once

#include <string>
#include <vector>

namespace shade::ast {

enum class TokKind {
    Name,
    Keyword,
    Number,
    String,
    Op,
    Newline,
    Indent,
    Dedent,
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    int line = 0;      // 1-based
    int col = 0;       // 0-based byte column
    std::size_t offset = 0;
    std::size_t length = 0;
};

// Tokenizes a Python-style source into a logical token stream: comments and
// blank lines are dropped, physical lines are joined inside brackets and
// after backslash continuations, and indentation becomes Indent/Dedent
// tokens. Throws ParseError on lexical errors (unterminated strings,
// inconsistent dedents, unbalanced brackets at end of input).
std::vector<Token> tokenize(const std::string& source);

} // namespace shade::ast
