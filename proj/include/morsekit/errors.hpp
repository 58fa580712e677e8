#pragma once

#include <stdexcept>
#include <string>

namespace morsekit {

// Exit codes used by the CLI; library errors map onto these.
enum class ExitCode : int {
    ok = 0,
    parse = 2,
    degenerate_critical = 3,
    decryption = 4,
    domain = 5,
};

struct Error : std::runtime_error {
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    ExitCode exit_code;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ExitCode::parse, what) {}
};

struct DimensionMismatch : ParseError {
    explicit DimensionMismatch(const std::string& what) : ParseError(what) {}
};

// A Hessian eigenvalue sits inside the degeneracy band: the function is not
// Morse at that point.
struct DegenerateCritical : Error {
    explicit DegenerateCritical(const std::string& what) : Error(ExitCode::degenerate_critical, what) {}
};

struct DecryptionError : Error {
    explicit DecryptionError(const std::string& what) : Error(ExitCode::decryption, what) {}
};

struct UnknownMessage : Error {
    explicit UnknownMessage(const std::string& what) : Error(ExitCode::decryption, what) {}
};

struct ProtocolViolation : Error {
    explicit ProtocolViolation(const std::string& what) : Error(ExitCode::decryption, what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ExitCode::domain, what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(ExitCode::domain, what) {}
};

struct NotIsolated : Error {
    explicit NotIsolated(const std::string& what) : Error(ExitCode::domain, what) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(ExitCode::domain, what) {}
};

struct PoleProximity : Error {
    explicit PoleProximity(const std::string& what) : Error(ExitCode::domain, what) {}
};

}  // namespace morsekit
