#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vortsim {

// Every failure carries a category so the CLI can map it to an exit code:
// config, domain, circuit, depairing, quantization, grid, step-size,
// integration, convergence, fit, io.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

[[noreturn]] inline void fail(std::string category, const std::string& message) {
    throw Error(std::move(category), message);
}

}  // namespace vortsim
