#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace psb {

// Domain error with a stable machine-readable code ("invalid-modulus",
// "not-a-residue", ...). The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace psb
