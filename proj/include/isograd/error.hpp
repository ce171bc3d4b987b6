#ifndef ISOGRAD_ERROR_HPP
#define ISOGRAD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace isograd {

// Contract violation. `code` is a short stable identifier consumed by the
// CLI to choose exit codes: "shape", "pair", "spec", "ring", "underflow",
// "gauge-not-invertible", "schema", "parse", "internal".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& what)
{
    throw Error(code, what);
}

inline void require(bool cond, const char* code, const std::string& what)
{
    if (!cond)
        throw Error(code, what);
}

} // namespace isograd

#endif
