#pragma once

#include <stdexcept>
#include <string>

namespace genbounds {

// Base for every error the toolkit raises on purpose. Anything else
// escaping the library is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Construction-time validation failures (bad probabilities, shapes, ranges).
struct ValidationError : Error {
    using Error::Error;
};

// Two distributions were combined without identical ordered supports.
struct SupportMismatch : Error {
    using Error::Error;
};

// P places mass where Q has none (or a joint has zeros where the product
// of its marginals is positive).
struct AbsoluteContinuityViolation : Error {
    using Error::Error;
};

// Euclidean metric requested on points without coordinates, or with
// mismatched coordinate dimensions.
struct MetricUndefined : Error {
    using Error::Error;
};

// The transport solver failed to converge. Marginals are always feasible,
// so this signals an internal bug, never bad input.
struct InfeasibleLP : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// Loss table and learner disagree on the hypothesis/sample alphabets.
struct AlphabetMismatch : Error {
    using Error::Error;
};

// Two learners were compared that do not share the same data distribution.
struct DataDistMismatch : Error {
    using Error::Error;
};

// |Z|^n exceeds the configured enumeration cap.
struct SizeCapExceeded : Error {
    using Error::Error;
};

struct NonPositiveDefinite : Error {
    using Error::Error;
};

struct DegenerateCorrelation : Error {
    using Error::Error;
};

// Numeric guards. These map to CLI exit code 3.
struct NumericGuard : Error {
    using Error::Error;
};
struct WindowTooSmall : NumericGuard {
    using NumericGuard::NumericGuard;
};
struct NormalizationDrift : NumericGuard {
    using NumericGuard::NumericGuard;
};

struct NegativeDivergence : Error {
    using Error::Error;
};

struct JsOutOfRange : Error {
    using Error::Error;
};

// A bound that assumes i.i.d. training samples was asked to run on a
// learner whose sample distribution does not factorize.
struct NonIIDInput : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace genbounds
