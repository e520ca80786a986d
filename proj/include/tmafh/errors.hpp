#pragma once

#include <stdexcept>
#include <string>

namespace tmafh {

// Violated numeric precondition (bad operation argument, undersampled
// synthesis, ...). The CLI maps this to exit code 3.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Configuration parse/validation failure. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tmafh
