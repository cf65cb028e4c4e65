// error.hpp - Error categories shared by the solver library and the C API

#pragma once

#include <stdexcept>
#include <string>

namespace cspin {

enum class ErrorCode {
    invalid_argument = 1,
    resource_limit = 2,
    unsupported_state = 3,
    integrator_failure = 4,
    io = 5,
    validation = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace cspin
