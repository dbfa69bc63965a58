#pragma once

#include <stdexcept>
#include <string>

namespace pcspan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text or schema violation.
class ParseError : public Error {
public:
    using Error::Error;
};

// A demand has no feasible walk, or the instance breaks a model invariant.
class InfeasibleInstanceError : public Error {
public:
    using Error::Error;
};

// A guarantee the pipeline relies on did not hold.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ContractError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class DivisionUndefinedError : public Error {
public:
    using Error::Error;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class ScaleError : public Error {
public:
    using Error::Error;
};

class MassDeficitError : public Error {
public:
    using Error::Error;
};

class RoundingFailure : public Error {
public:
    using Error::Error;
};

class EssentialityViolation : public Error {
public:
    using Error::Error;
};

class InstanceMismatch : public Error {
public:
    using Error::Error;
};

class LpError : public Error {
public:
    using Error::Error;
};

}  // namespace pcspan
