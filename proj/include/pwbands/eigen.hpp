#pragma once

#include <stdexcept>
#include <vector>

#include "pwbands/matrix.hpp"

namespace pwbands {

class EigenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is not square, not finite, or not Hermitian.
class InvalidMatrixError : public EigenError {
public:
    using EigenError::EigenError;
};

/// Tridiagonal QL iteration exhausted its budget.
class ConvergenceError : public EigenError {
public:
    using EigenError::EigenError;
};

struct EigenResult {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column i pairs with values[i]
};

/// max|H - H†| / max|H|, or 0 for the zero matrix.
double hermiticity_defect(const ComplexMatrix& h);

/// Relative tolerance on hermiticity_defect accepted by eigh.
inline constexpr double kHermitianTolerance = 1e-12;

/**
 * @brief Full spectrum of a dense Hermitian matrix.
 *
 * Householder reduction to complex tridiagonal form, a diagonal phase
 * similarity that makes the off-diagonal real, then implicit-shift QL on the
 * real tridiagonal with rotations accumulated into the complex eigenvectors.
 *
 * Throws InvalidMatrixError for non-Hermitian input and ConvergenceError when
 * an eigenvalue needs more than 30 QL sweeps.
 */
EigenResult eigh(const ComplexMatrix& h);

}  // namespace pwbands
