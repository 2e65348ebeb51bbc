#ifndef ADSNULL_ERRORS_HPP
#define ADSNULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adsnull {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument too close to a lattice point of the Weierstrass functions.
struct PoleProximityError : Error {
    using Error::Error;
};

// Jacobi/complete-integral modulus outside [0, 1).
struct ModulusOutOfRangeError : Error {
    using Error::Error;
};

// wp-inversion target corresponds to the pole.
struct NoFiniteSolutionError : Error {
    using Error::Error;
};

struct NonConvergenceError : Error {
    using Error::Error;
};

struct OutOfDomainError : Error {
    using Error::Error;
};

// Delta = 0 but g2 != 12 a^2 within tolerance.
struct ClassificationError : Error {
    using Error::Error;
};

// Case II denominator 3 e^2 - g2/4 vanishes.
struct DoubleRootSingularityError : Error {
    using Error::Error;
};

// h(s) too close to m/3 +- 1 along a frame evaluation.
struct BranchPointProximityError : Error {
    using Error::Error;
};

// m = +-3 with g2 = g3 = 0: the matching point w lies at infinity.
struct InfiniteWError : Error {
    using Error::Error;
};

struct NotInWError : Error {
    using Error::Error;
};

struct StepSizeUnderflowError : Error {
    using Error::Error;
};

struct GridTooCoarseError : Error {
    using Error::Error;
};

struct StencilLeavesWError : Error {
    using Error::Error;
};

struct ParamOutOfRangeError : Error {
    using Error::Error;
};

struct NoSeedError : Error {
    using Error::Error;
};

} // namespace adsnull

#endif
