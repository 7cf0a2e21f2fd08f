#pragma once

#include <stdexcept>
#include <string>

namespace sspare {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric argument outside its mathematical domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

}  // namespace sspare
