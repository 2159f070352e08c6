#pragma once

#include <stdexcept>
#include <string>

namespace crz {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed argument: empty weight list, non-finite entry, bad grid size, ...
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Input is structurally valid but the requested quantity is undefined for it
/// (e.g. singular vectors of the zero matrix).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// A shifted solve (tau*I - A) x = b hit a shift at or near an eigenvalue.
class SingularShiftError : public Error {
public:
    SingularShiftError(const std::string& what, double distance_to_spectrum)
        : Error(what), distance_to_spectrum(distance_to_spectrum) {}
    double distance_to_spectrum;
};

/// A Blaschke factor (I - conj(a) A) is numerically singular.
class SingularFactorError : public Error {
public:
    using Error::Error;
};

/// Geometry precondition violated (0 not interior to the numerical range, ...).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Boundary-correspondence solve did not reach its tolerance.
class MapFailureError : public Error {
public:
    MapFailureError(const std::string& what, double defect)
        : Error(what), defect(defect) {}
    double defect;
};

/// Newton inversion of the disk map failed to converge.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Point lies outside the domain of the requested map evaluation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The power-norm supremum diverges (|prod alpha| > 1).
class UnboundedPsiError : public Error {
public:
    using Error::Error;
};

} // namespace crz
