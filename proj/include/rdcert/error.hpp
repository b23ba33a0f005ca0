#pragma once

#include <stdexcept>
#include <string>

namespace rdcert {

/// Invalid configuration or precondition violation. The message names the
/// offending key or condition.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input outside the domain of a mathematical function (e.g. negative
/// concentrations handed to a kinetics model).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rdcert
