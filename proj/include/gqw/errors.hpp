#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gqw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical error in formula text. Positions are 1-based.
struct ParseError : Error {
    std::size_t line = 0;
    std::size_t column = 0;
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line(line), column(column) {}
};

// A predicate variable is used with two different arities, or a relation's
// arity does not match its use site.
struct ArityError : Error {
    using Error::Error;
};

// Ill-formed variable usage: wrong identifier class, duplicate bound tuple
// variables, and similar.
struct ScopeError : Error {
    using Error::Error;
};

// Evaluation cannot proceed: unassigned variable, unknown quantifier symbol,
// missing interpretation, or a construct outside the evaluator's fragment.
struct EvalError : Error {
    using Error::Error;
};

// An enumeration would exceed the configured candidate bound.
struct SizeGuardError : Error {
    using Error::Error;
};

// A precondition on an operation's arguments is violated.
struct ArgumentError : Error {
    using Error::Error;
};

// Malformed model / interpretation file contents.
struct FileFormatError : Error {
    using Error::Error;
};

// so_prenex: no equivalence-preserving rewrite brings the predicate
// quantifiers to an outermost prefix.
struct NotPrenexableError : Error {
    using Error::Error;
};

// Extraction in prenex mode was handed a formula that is not in
// second-order prenex form.
struct NotPrenexError : Error {
    using Error::Error;
};

// Extraction in prenex mode found a non-unary predicate variable in the
// prefix. A sentence whose prefix binds such a variable is decided by that
// quantifier alone on models with empty polyadic families, so it cannot pin
// down a unary quantifier interpretation.
struct PolyadicDetectedError : Error {
    using Error::Error;
};

} // namespace gqw
