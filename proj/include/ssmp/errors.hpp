#pragma once

#include <stdexcept>
#include <string>

namespace ssmp {

enum class ErrorKind {
    Validation,
    Domain,
    Quadrature,
    Convergence,
    Branch,
    Metadata,
    Overflow,
    Resolution,
    Condition,
    Interpolation,
    Config,
    Io,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        fail(ErrorKind::Validation, what);
}

} // namespace ssmp
