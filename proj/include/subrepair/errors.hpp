#pragma once

#include <stdexcept>
#include <string>

namespace subrepair {

// Base for all errors raised by the library. The CLI maps these to exit
// code 2 (input problems) while InternalError maps to exit code 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// A data row whose cell count differs from the header.
class RowShapeError : public Error {
public:
    explicit RowShapeError(const std::string& msg) : Error(msg) {}
};

// Header/attribute problems: duplicate column names, unknown attribute names.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// Ground-truth label outside the {clean, dirty} vocabulary.
class LabelError : public Error {
public:
    explicit LabelError(const std::string& msg) : Error(msg) {}
};

// Reference to a row id that does not exist in the dataset.
class KeyError : public Error {
public:
    explicit KeyError(const std::string& msg) : Error(msg) {}
};

class RuleSyntaxError : public Error {
public:
    explicit RuleSyntaxError(const std::string& msg) : Error(msg) {}
};

// Density requested on a dataset too small to supply any neighbor.
class EmptyPoolError : public Error {
public:
    explicit EmptyPoolError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested while some rows carry no ground-truth label.
class MissingTruthError : public Error {
public:
    explicit MissingTruthError(const std::string& msg) : Error(msg) {}
};

// Error injection requires a dataset that already satisfies the rule set.
class CleanPreconditionError : public Error {
public:
    explicit CleanPreconditionError(const std::string& msg) : Error(msg) {}
};

// Violated internal invariant (e.g. a repair that is not a vertex cover).
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace subrepair
