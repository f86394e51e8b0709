#include "mec/error.hpp"

namespace mec {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_channel: return "invalid channel";
        case ErrorCode::unreachable_server: return "unreachable server";
        case ErrorCode::invalid_state: return "invalid state";
        case ErrorCode::invalid_frequency: return "invalid frequency";
        case ErrorCode::invalid_argument: return "invalid argument";
        case ErrorCode::domain: return "domain error";
        case ErrorCode::degenerate_action: return "degenerate action";
        case ErrorCode::constraint: return "constraint violation";
        case ErrorCode::lifecycle: return "lifecycle error";
        case ErrorCode::config: return "config error";
        case ErrorCode::shape: return "shape error";
        case ErrorCode::training_divergence: return "training divergence";
        case ErrorCode::insufficient_data: return "insufficient data";
        case ErrorCode::io: return "io error";
    }
    return "unknown error";
}

}  // namespace mec
