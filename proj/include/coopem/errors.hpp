#ifndef COOPEM_ERRORS_HPP
#define COOPEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coopem {

// Bad user input: geometry, parameters, config files, CLI arguments.
// CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computed quantity violated an internal invariant (oracle mismatch,
// residual too large, negative spectrum). CLI maps this to exit code 3.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace coopem

#endif
