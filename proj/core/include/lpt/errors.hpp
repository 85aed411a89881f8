#pragma once

#include <stdexcept>
#include <string>

namespace lpt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the documented domain (ordering, sign, interval membership).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Drift/volatility evaluated to a non-finite value or violated positivity.
class CoefficientError : public Error {
public:
    explicit CoefficientError(const std::string& what) : Error(what) {}
};

/// Both scale-function limits are infinite; the diffusion is recurrent.
class NotTransientError : public Error {
public:
    explicit NotTransientError(const std::string& what) : Error(what) {}
};

/// The generic eigenfunction solver failed to converge.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

/// Result magnitude exceeds the representable range.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(what) {}
};

/// Numerical Laplace inversion failed; carries the offending abscissa q.
class InversionError : public Error {
public:
    InversionError(const std::string& what, double q) : Error(what), q_(q) {}
    double abscissa() const { return q_; }

private:
    double q_;
};

} // namespace lpt
