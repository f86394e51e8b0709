#pragma once

#include <stdexcept>
#include <string>

namespace mec {

enum class ErrorCode {
    invalid_channel,
    unreachable_server,
    invalid_state,
    invalid_frequency,
    invalid_argument,
    domain,
    degenerate_action,
    constraint,
    lifecycle,
    config,
    shape,
    training_divergence,
    insufficient_data,
    io,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    // The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace mec
