#pragma once

#include <stdexcept>
#include <string>

namespace multab {

// Thrown when a computation would exceed an explicit memory/size budget.
// CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace multab
