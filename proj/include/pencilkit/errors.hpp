#ifndef PENCILKIT_ERRORS_HPP
#define PENCILKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pencilkit {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

struct NoPoleWithinBound : Error {
    using Error::Error;
};

struct IllConditioned : Error {
    using Error::Error;
};

struct BasicConditionViolated : Error {
    using Error::Error;
};

struct InnerSingular : Error {
    using Error::Error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct NodeSingular : Error {
    using Error::Error;
};

struct ProjectionDefect : Error {
    using Error::Error;
};

struct SingularPencilEverywhere : Error {
    using Error::Error;
};

struct SingularityInAnnulus : Error {
    using Error::Error;
};

struct DegenerateSeed : Error {
    using Error::Error;
};

struct BlockInconsistency : Error {
    using Error::Error;
};

struct TruncationNotContractive : Error {
    using Error::Error;
};

struct NotAbsorbingAtFirstState : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace pencilkit

#endif
