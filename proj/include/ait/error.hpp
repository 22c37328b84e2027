#pragma once

#include <stdexcept>
#include <string>

namespace ait {

/// Base of every domain error.  `kind()` is the variant name shown to users
/// (e.g. "CapExceeded", "VersionMismatch").
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

} // namespace ait
