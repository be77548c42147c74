#pragma once

#include <stdexcept>

namespace schurfit {

/// Fewer data points than model terms (m < n).
class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The normal equation has no unique solution: the denominator (the
/// determinant of the Gram matrix) vanishes, i.e. the design matrix is not
/// injective.
class NonUniqueSolution : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace schurfit
