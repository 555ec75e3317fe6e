#pragma once

#include <stdexcept>
#include <string>

namespace topostat {

/// Malformed or ill-sized input data (bad matrix shape, non-symmetric
/// distance input, inconsistent lengths, missing faces).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter outside its documented domain (negative radius, unordered
/// thresholds, unknown pattern id).
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Input that is structurally valid but violates a genericity assumption
/// (tied critical values, plateaus, duplicate edge weights, zero
/// within-group distance).
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// Two objects that cannot be combined (diagrams of different cardinality,
/// graph collections with mixed node counts).
class IncompatibleInput : public std::runtime_error {
public:
    explicit IncompatibleInput(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource cap was hit (simplex count guard).
class ResourceLimit : public std::runtime_error {
public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed (non-alternating critical
/// sequence, merge of nonexistent components).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace topostat
