#pragma once

#include <stdexcept>
#include <string>

namespace pdlab
{
//! Input outside the mathematical domain of an operation (CLI exit code 2).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! A series, iteration or quadrature did not reach its tolerance (exit 3).
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A request too large to run (reported like a domain error).
class ResourceError : public DomainError
{
  public:
    using DomainError::DomainError;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw DomainError(what);
}
}  // namespace pdlab
