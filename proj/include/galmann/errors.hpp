#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galmann {

// Bad input data or out-of-contract arguments: malformed text, invalid
// domains, inadmissible curves.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures discovered while computing: degeneracies and non-convergence.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Positioned parse failure. `offset` is a byte offset into the source
// text; `expected` lists token spellings that would have been accepted.
struct ParseError : InputError {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(std::size_t offset_, std::vector<std::string> expected_, const std::string& message)
        : InputError(message), offset(offset_), expected(std::move(expected_)) {}
};

// Evaluation hit a point outside a function's domain (log of a
// non-positive value, sqrt of a negative, division by zero, ...).
// `subexpression` is the offending piece of the expression.
struct EvalDomainError : InputError {
    std::string subexpression;

    EvalDomainError(std::string subexpr, const std::string& reason)
        : InputError(reason + " in '" + subexpr + "'"), subexpression(std::move(subexpr)) {}
};

// x'(t) vanished or changed sign somewhere on the parameter interval.
struct AdmissibilityError : InputError {
    double t;

    explicit AdmissibilityError(double t_violation)
        : InputError("curve is not admissible: x'(t) vanishes or changes sign near t = " +
                     std::to_string(t_violation)),
          t(t_violation) {}
};

// The arc-length inversion x(t) = x(t0) + s did not converge.
struct InversionFailure : NumericalError {
    double s;

    explicit InversionFailure(double s_target)
        : NumericalError("arc-length inversion did not converge at s = " + std::to_string(s_target) +
                         " (near-violation of admissibility)"),
          s(s_target) {}
};

// kappa fell below the degeneracy threshold; the Frenet frame is undefined.
struct DegenerateCurvature : NumericalError {
    std::size_t index;

    explicit DegenerateCurvature(std::size_t sample_index)
        : NumericalError("curvature is degenerate at sample " + std::to_string(sample_index) +
                         "; Frenet frame undefined"),
          index(sample_index) {}
};

// The Mannheim mate collapsed to a straight line (mate curvature ~ 0).
struct DegenerateMate : NumericalError {
    DegenerateMate() : NumericalError("mate curve is degenerate (curvature ~ 0); mate frame undefined") {}
};

// Partner detection requires nonvanishing torsion.
struct TorsionVanishes : NumericalError {
    std::size_t index;

    explicit TorsionVanishes(std::size_t sample_index)
        : NumericalError("torsion vanishes at sample " + std::to_string(sample_index)),
          index(sample_index) {}
};

}  // namespace galmann
