#pragma once

#include <stdexcept>
#include <string>

namespace qtails {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* invert() needs a constant coefficient of +1 or -1. */
struct NonUnitConstantTerm : Error {
    explicit NonUnitConstantTerm(const std::string& msg) : Error(msg) {}
};

/* A summation variable whose exponent contribution can stay bounded while
 * the variable grows: the sum has no meaning as a formal power series. */
struct UnboundedVariable : Error {
    explicit UnboundedVariable(const std::string& msg) : Error(msg) {}
};

struct UnknownKnot : Error {
    explicit UnknownKnot(const std::string& name) : Error("unknown knot: " + name) {}
};

struct DuplicateName : Error {
    explicit DuplicateName(const std::string& name) : Error("duplicate identity name: " + name) {}
};

struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(int line_, int column_, const std::string& msg)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace qtails
