#ifndef ARAML_ERROR_HPP
#define ARAML_ERROR_HPP

#include <stdexcept>
#include <string>

namespace araml {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schema violations: unknown names, incompatible attributes, arity clashes.
/// Carries an optional node path ("union.lhs.project") for diagnostics.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg, std::string path = {})
        : Error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Expression falls outside the requested arity fragment.
class FragmentError : public Error {
public:
    using Error::Error;
};

/// Operation requires a commutative semiring and the selected one is not.
class CommutativityError : public Error {
public:
    using Error::Error;
};

/// Lex or parse failure with source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Internal invariant broken; indicates a bug, not bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace araml

#endif
