#pragma once

#include <stdexcept>
#include <string>

namespace gk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different coefficient rings (or different dimensions).
struct MixedRing : Error {
    using Error::Error;
};

// An argument does not have the Clifford degree the operation requires.
struct DegreeError : Error {
    using Error::Error;
};

// The annihilator of a form is not maximally isotropic.
struct NotPure : Error {
    using Error::Error;
};

// The annihilator meets its conjugate nontrivially.
struct NotNondegenerate : Error {
    using Error::Error;
};

// A pair of structures fails the exact commutation check.
struct NonCommuting : Error {
    using Error::Error;
};

// An operator expected to be tensorial fails the f-linearity test.
struct NotTensorial : Error {
    using Error::Error;
};

// Two algebraically equivalent evaluation routes disagree.
struct PathMismatch : Error {
    using Error::Error;
};

// No degree-1 witness E with d(phi) + E.phi = 0 exists.
struct NotIntegrable : Error {
    using Error::Error;
};

// A series exponential/logarithm was fed a nonzero constant term.
struct NonzeroConstantTerm : Error {
    using Error::Error;
};

// The order-by-order lift could not be extracted.
struct LiftFailure : Error {
    using Error::Error;
};

// A right-hand side is not in the image of d on some Fourier mode.
struct NotExact : Error {
    using Error::Error;
};

// The joint {b.phi = 0, b.psi = beta} system is infeasible on some mode.
struct KerSolveFailure : Error {
    using Error::Error;
};

// An obstruction term falls outside K^2.
struct NotInK2 : Error {
    using Error::Error;
};

// A defining linear system is inconsistent.
struct Unsolvable : Error {
    using Error::Error;
};

// Scene file could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

// Scene parsed but fails validation.
struct ValidationError : Error {
    using Error::Error;
};

// Chart/torus evaluation requested at a point where exact arithmetic is
// impossible and float fallback is disabled.
struct EvaluationError : Error {
    using Error::Error;
};

}  // namespace gk
