#pragma once

#include <stdexcept>
#include <string>

namespace pc {

// One exception type for the whole core; the kind maps 1:1 onto the C API
// status codes and the CLI exit codes.
class Error : public std::runtime_error {
public:
    enum class Kind {
        invalid_argument,  // caller broke a precondition
        guard,             // size/budget guard refused the computation
        parse,             // malformed input file
        assertion,         // an internal exact identity failed (a bug, never rounded over)
        io,                // filesystem trouble
    };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace pc
