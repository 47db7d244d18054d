#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ssm {

// Domain error with a stable machine-readable name ("ReduciblePolynomial",
// "PrecisionExhausted", ...). The CLI maps these to exit code 1 and prints
// the name verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& what) {
    throw Error(name, what);
}

} // namespace ssm
