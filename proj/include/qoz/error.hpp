#pragma once
#include <stdexcept>
#include <string>

namespace qoz {

// Every failure carries a stable machine-readable code plus a human message.
// Codes used across the library:
//   InvalidInput, NotSquarefree, NotQuasiOrdinaryInZ, NotMonotonePath,
//   NonTerminatingNormalization, InvalidRoot, InvalidCone,
//   UnsupportedDegenerateMotivic, SpecializationPole, DimensionGuard,
//   SyntaxError, InternalError
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline void check(bool cond, const std::string& code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace qoz
