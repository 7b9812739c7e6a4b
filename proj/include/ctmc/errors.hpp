#ifndef CTMC_ERRORS_HPP
#define CTMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctmc {

struct SourcePos {
    std::string file;
    int line = 0;   // 1-based; 0 = unknown
    int col = 0;

    std::string str() const {
        if (line == 0) return file.empty() ? std::string("<unknown>") : file;
        std::string s = file.empty() ? "" : file + ":";
        return s + std::to_string(line) + ":" + std::to_string(col);
    }
};

// Error classes surfaced by the CLI as machine-greppable prefixes.
enum class ErrorClass { Io, Lex, Syntax, Validate, Build, Numeric, Query, Usage };

const char* error_class_name(ErrorClass c);

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}
    Error(ErrorClass cls, const SourcePos& pos, const std::string& msg)
        : std::runtime_error(pos.str() + ": " + msg), cls_(cls), pos_(pos) {}

    ErrorClass error_class() const { return cls_; }
    const SourcePos& pos() const { return pos_; }

private:
    ErrorClass cls_;
    SourcePos pos_;
};

class IoError : public Error {
public:
    explicit IoError(std::string msg) : Error(ErrorClass::Io, std::move(msg)) {}
};

class LexError : public Error {
public:
    LexError(const SourcePos& pos, const std::string& msg) : Error(ErrorClass::Lex, pos, msg) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const SourcePos& pos, const std::string& msg) : Error(ErrorClass::Syntax, pos, msg) {}
};

class ValidationError : public Error {
public:
    ValidationError(const SourcePos& pos, const std::string& msg) : Error(ErrorClass::Validate, pos, msg) {}
    explicit ValidationError(std::string msg) : Error(ErrorClass::Validate, std::move(msg)) {}
};

class BuildError : public Error {
public:
    explicit BuildError(std::string msg) : Error(ErrorClass::Build, std::move(msg)) {}
};

class NumericError : public Error {
public:
    explicit NumericError(std::string msg) : Error(ErrorClass::Numeric, std::move(msg)) {}
};

class QueryError : public Error {
public:
    explicit QueryError(std::string msg) : Error(ErrorClass::Query, std::move(msg)) {}
};

} // namespace ctmc

#endif
