#pragma once

#include <stdexcept>
#include <string>

namespace levy {

/// Argument outside the domain of a tail or moment function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Model or argument rejected at construction / ingestion time.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested operation is not available for this jump measure
/// (e.g. exact sampling of a log-tempered family).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite integrand sample encountered during quadrature.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double abscissa)
        : std::runtime_error(what + " at L=log(1/t)=" + std::to_string(abscissa)),
          abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// Two independent numerical routes disagree, or a geometric invariant broke.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace levy
