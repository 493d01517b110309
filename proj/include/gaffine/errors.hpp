#pragma once

#include <stdexcept>
#include <string>

namespace gaffine {

// Base for every recoverable error raised by the library. The CLI maps
// IntegratorError to exit code 3 and everything else to 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

#define GAFFINE_ERROR(Name, tag)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(what) {}               \
        const char* kind() const noexcept override { return tag; }            \
    };

GAFFINE_ERROR(InvalidOrderError, "invalid_order")
GAFFINE_ERROR(InsufficientOrderError, "insufficient_order")
GAFFINE_ERROR(SingularPointError, "singular_point")
GAFFINE_ERROR(DomainError, "domain")
GAFFINE_ERROR(OutOfIntervalError, "out_of_interval")
GAFFINE_ERROR(DegenerateCurveError, "degenerate_curve")
GAFFINE_ERROR(AffineInflectionError, "affine_inflection")
GAFFINE_ERROR(NonconvexGraphError, "nonconvex_graph")
GAFFINE_ERROR(NotEquiaffineError, "not_equiaffine_parameter")
GAFFINE_ERROR(SmoothnessError, "insufficient_smoothness")
GAFFINE_ERROR(IntegratorError, "integrator")
GAFFINE_ERROR(RootFinderError, "root_finder")
GAFFINE_ERROR(FrameError, "frame")
GAFFINE_ERROR(IoError, "io")

#undef GAFFINE_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
    const char* kind() const noexcept override { return "parse"; }
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace gaffine
