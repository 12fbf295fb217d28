#ifndef RANDPOLY_ERRORS_HPP
#define RANDPOLY_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace randpoly {

/// Raised when an exact computation would need more entries (or tuples)
/// than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimated, double budget)
        : std::runtime_error(what), estimated_(estimated), budget_(budget) {}

    double estimated() const noexcept { return estimated_; }
    double budget() const noexcept { return budget_; }

private:
    double estimated_;
    double budget_;
};

/// The coefficient law puts more than 1/2 on a single integer, so it is not
/// a Bernoulli mixture.
class MaxAtomTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonConverged : public std::runtime_error {
public:
    NonConverged(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Argument outside the domain where a bound or operation is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace randpoly

#endif
