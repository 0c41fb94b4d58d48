#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ulm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar parameter outside its admissible domain (gain exponent, scale, mass, ...).
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// Influence matrix (designed or mismatch) is singular or too ill-conditioned to invert.
class SingularInfluenceError : public Error {
public:
    using Error::Error;
};

/// alpha = 0 together with 1 - c - d = 0: the root polynomial vanishes identically or has no finite root.
class DegeneratePencilError : public Error {
public:
    using Error::Error;
};

/// The boundary map alpha(lambda) was evaluated at lambda = 1 where it has a pole.
class PoleOfMapError : public Error {
public:
    using Error::Error;
};

/// A trace lacks the data a diagnostic needs (e.g. ground-truth logging was off).
class MissingDataError : public Error {
public:
    using Error::Error;
};

inline void require_same_size(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size()) {
        throw DimensionMismatchError(std::string(what) + ": size " + std::to_string(a.size()) +
                                     " vs " + std::to_string(b.size()));
    }
}

}  // namespace ulm
