#include "ssmp/errors.hpp"

namespace ssmp {

const char* error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Quadrature: return "QuadratureError";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::Branch: return "BranchError";
    case ErrorKind::Metadata: return "MetadataError";
    case ErrorKind::Overflow: return "OverflowGuard";
    case ErrorKind::Resolution: return "ResolutionError";
    case ErrorKind::Condition: return "ConditionError";
    case ErrorKind::Interpolation: return "InterpolationError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace ssmp
