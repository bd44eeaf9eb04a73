#pragma once

#include <stdexcept>
#include <string>

namespace shade {

// Exit-code classes used by the CLI. Every Error subtype maps to one of
// these so scripted callers can distinguish failure modes.
enum class ErrorClass : int {
    Config = 2,
    Parse = 3,
    Infrastructure = 4,
    Domain = 5,
    Io = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), cls_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return cls_; }
    const std::string& kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(cls_); }

private:
    ErrorClass cls_;
    std::string kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(ErrorClass::Config, "ConfigError", msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int col = 0)
        : Error(ErrorClass::Parse, "ParseError",
                line > 0 ? msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"
                         : msg),
          line_(line), col_(col) {}
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

class ToolUnavailable : public Error {
public:
    explicit ToolUnavailable(const std::string& msg) : Error(ErrorClass::Infrastructure, "ToolUnavailable", msg) {}
};

class Timeout : public Error {
public:
    explicit Timeout(const std::string& msg) : Error(ErrorClass::Infrastructure, "Timeout", msg) {}
};

class EndpointError : public Error {
public:
    explicit EndpointError(const std::string& msg) : Error(ErrorClass::Infrastructure, "EndpointError", msg) {}
};

class MalformedResponse : public Error {
public:
    explicit MalformedResponse(const std::string& msg) : Error(ErrorClass::Infrastructure, "MalformedResponse", msg) {}
};

class NoCodeInResponse : public Error {
public:
    explicit NoCodeInResponse(const std::string& msg) : Error(ErrorClass::Domain, "NoCodeInResponse", msg) {}
};

class NoApplicableRule : public Error {
public:
    explicit NoApplicableRule(const std::string& msg) : Error(ErrorClass::Domain, "NoApplicableRule", msg) {}
};

class NoFullEvader : public Error {
public:
    explicit NoFullEvader(const std::string& msg) : Error(ErrorClass::Domain, "NoFullEvader", msg) {}
};

class Exhausted : public Error {
public:
    explicit Exhausted(const std::string& msg) : Error(ErrorClass::Domain, "Exhausted", msg) {}
};

class PatternNotFound : public Error {
public:
    explicit PatternNotFound(const std::string& msg) : Error(ErrorClass::Domain, "PatternNotFound", msg) {}
};

class AmbiguousSite : public Error {
public:
    explicit AmbiguousSite(const std::string& msg) : Error(ErrorClass::Domain, "AmbiguousSite", msg) {}
};

class InvalidPattern : public Error {
public:
    explicit InvalidPattern(const std::string& msg) : Error(ErrorClass::Domain, "InvalidPattern", msg) {}
};

class EmptyCorpus : public Error {
public:
    explicit EmptyCorpus(const std::string& msg) : Error(ErrorClass::Domain, "EmptyCorpus", msg) {}
};

class EmptyBases : public Error {
public:
    explicit EmptyBases(const std::string& msg) : Error(ErrorClass::Domain, "EmptyBases", msg) {}
};

class KTooLarge : public Error {
public:
    explicit KTooLarge(const std::string& msg) : Error(ErrorClass::Domain, "KTooLarge", msg) {}
};

class DegenerateData : public Error {
public:
    explicit DegenerateData(const std::string& msg) : Error(ErrorClass::Domain, "DegenerateData", msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(ErrorClass::Io, "IoError", msg) {}
};

} // namespace shade
