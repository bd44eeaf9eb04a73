#pragma once

#include <map>
#include <string>

#include "shade/ast/tree.hpp"

namespace shade::ast {

// Parses source text into an ordered labeled tree. Comments and whitespace
// never appear in the tree, so comment-only edits do not move the distance.
// Throws ParseError for syntactically invalid input and ConfigError for an
// unsupported grammar.
SyntaxTree parse_source(const std::string& text, const std::string& grammar = "python");

// Registry of supported grammars (language id -> parser). "python" is
// built in; additional grammars can be registered by embedders.
class GrammarRegistry {
public:
    using ParseFn = SyntaxTree (*)(const std::string&);

    static GrammarRegistry& instance();
    void register_grammar(const std::string& name, ParseFn fn);
    bool supports(const std::string& name) const;
    SyntaxTree parse(const std::string& name, const std::string& text) const;

private:
    GrammarRegistry();
    std::map<std::string, ParseFn> parsers_;
};

} // namespace shade::ast
