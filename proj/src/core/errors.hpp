#pragma once

#include <stdexcept>
#include <string>

namespace lrb {

enum class ErrorCode {
    invalid_argument,
    parse,
    impossible_observation,
    no_stationary_belief,
    non_convergence,
    structure_violation,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace lrb
