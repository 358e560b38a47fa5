#pragma once

#include <cstddef>
#include <vector>

#include "qnewton/linalg.hpp"

namespace qnewton::spectral {

/// Eigenpairs of a symmetric matrix. eigenvalues are ascending and
/// eigenvectors[i] is the unit eigenvector paired with eigenvalues[i].
/// Each eigenvector's largest-magnitude component is positive.
struct SpectralDecomposition {
    Vector eigenvalues;
    std::vector<Vector> eigenvectors;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
};

struct JacobiOptions {
    int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition.
/// Throws InvalidInputError on non-finite entries and NoConvergenceError if the
/// sweep cap is hit before the off-diagonal mass falls to rounding level.
SpectralDecomposition eigh(const SymMatrix& a, const JacobiOptions& options = {});

/// Returns sum_i (<e_i, g> / |lambda_i|) e_i, i.e. A^{-1} g with the components
/// along negative-eigenvalue eigenvectors reflected.
/// Throws SingularMatrixError if any eigenvalue is exactly zero.
Vector reflect_inverse_apply(const SpectralDecomposition& decomp, const Vector& g);

/// Plain A^{-1} g through the decomposition (classical Newton direction).
Vector inverse_apply(const SpectralDecomposition& decomp, const Vector& g);

double min_abs_eigenvalue(const SpectralDecomposition& decomp);
double max_abs_eigenvalue(const SpectralDecomposition& decomp);

/// Sum_i lambda_i e_i e_i^T.
SymMatrix reconstruct(const SpectralDecomposition& decomp);

} // namespace qnewton::spectral
