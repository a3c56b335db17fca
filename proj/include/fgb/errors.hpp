#pragma once

#include <stdexcept>
#include <string>

namespace fgb {

/** Base class for all domain errors thrown by this library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** A matrix expected to be positive semidefinite has an eigenvalue below -tol. */
class NotPSDError : public Error {
public:
    explicit NotPSDError(const std::string& what) : Error(what) {}
};

/** A cylinder is too shallow to determine the requested pointwise value. */
class DepthTooShallowError : public Error {
public:
    explicit DepthTooShallowError(const std::string& what) : Error(what) {}
};

/** The spectral parameter sits at a degenerate point (t = 0 or q^{2it} = 1). */
class EndpointError : public Error {
public:
    explicit EndpointError(const std::string& what) : Error(what) {}
};

/** The intertwining equations do not pin down a one-dimensional solution space. */
class NonUniqueIntertwinerError : public Error {
public:
    explicit NonUniqueIntertwinerError(const std::string& what) : Error(what) {}
};

/** An operator tuple fed to a fixed-point-only routine is not fixed by the transfer operator. */
class NotFixedPointError : public Error {
public:
    explicit NotFixedPointError(const std::string& what) : Error(what) {}
};

/** A tuple violates the algebraic requirements of a realization (e.g. components not summing to Id). */
class NotRealizationError : public Error {
public:
    explicit NotRealizationError(const std::string& what) : Error(what) {}
};

/** The semidefinite Gram form of a quotient construction fails positivity beyond tolerance. */
class NotPSDGramError : public Error {
public:
    explicit NotPSDGramError(const std::string& what) : Error(what) {}
};

/** Invalid experiment configuration (bad key, bad value, violated invariant). */
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace fgb
