#pragma once

#include <stdexcept>
#include <string>

namespace hgdeg {

// All library errors derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UndefinedSeries : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct WrongCase : Error { using Error::Error; };
struct InconsistentOrbit : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct UnknownSolutionLabel : Error { using Error::Error; };
struct SingularPointError : Error { using Error::Error; };

}  // namespace hgdeg
