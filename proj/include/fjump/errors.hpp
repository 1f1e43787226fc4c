#pragma once

#include <stdexcept>
#include <string>

namespace fjump {

/// Error categories surfaced by the library. The CLI maps data errors to
/// exit code 2 and estimation errors to exit code 3.
enum class errc {
    invalid_input,       // malformed arguments or objects violating invariants
    dimension_mismatch,  // objects of different variant or size compared
    degenerate_data,     // too few points / zero variance in a kernel window
    no_convergence,      // iterative solver hit its iteration cap
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace fjump
