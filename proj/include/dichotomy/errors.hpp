#pragma once

#include <stdexcept>
#include <string>

namespace dichotomy {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad table shapes, out-of-range indices, unparsable files.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Well-shaped input that violates an algebraic axiom.
class AxiomError : public Error {
public:
    using Error::Error;
};

// Operation called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A configured search or size bound would be exceeded; the question is left open.
class GuardError : public Error {
public:
    using Error::Error;
};

// A decoder met data that cannot come from the matching coder.
class DecodeError : public Error {
public:
    using Error::Error;
};

// A finite approximation (chain length, truncation depth, division budget) is too short.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace dichotomy
