#pragma once

#include <vector>

#include "specf/graph.hpp"
#include "specf/signal.hpp"

namespace specf {

/// Eigenpairs of a symmetric matrix. Eigenvalues ascending; eigenvectors are
/// orthonormal columns of U, paired with the eigenvalue at the same index.
/// Column signs are fixed so the first non-negligible component is positive.
struct Spectrum {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vectors;  // row-major n x n, u(i, l) = U[i][l]

    double u(int i, int l) const { return vectors[static_cast<std::size_t>(i) * n + l]; }
    double& u_ref(int i, int l) { return vectors[static_cast<std::size_t>(i) * n + l]; }
    double lambda_max() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

enum class FilterKind { ideal, polynomial };

/// Frequency response per eigenvalue index. For polynomial filters the fitted
/// coefficients (over lambda / lambda_scale) and the realized response are
/// both kept; filtering always applies the realized response.
struct FilterResponse {
    FilterKind kind = FilterKind::ideal;
    std::vector<double> target;
    std::vector<double> realized;
    int degree = -1;
    std::vector<double> coefficients;
    double lambda_scale = 1.0;
    bool degree_reduced = false;
};

/// Dense symmetric eigendecomposition via Householder tridiagonalization and
/// implicit QL. Deterministic; throws NumericalError on non-convergence.
Spectrum eig_sym(const DenseSymmetricMatrix& m);

/// Forward transform: projects the signal onto the eigenbasis (U^T f).
Signal gft(const Signal& s, const Spectrum& spec);

/// Inverse transform: U f_hat.
Signal igft(const Signal& shat, const Spectrum& spec);

struct EigengapEstimate {
    int k = 1;
    bool degenerate = false;  // all eigenvalues equal; k forced to 1
};

/// Index of the largest gap between consecutive eigenvalues, searched over
/// 1 <= j <= max_k; ties take the smallest index.
EigengapEstimate estimate_k_eigengap(const Spectrum& spec, int max_k);

/// Default search cap: n/2, clamped to [1, n-1].
int default_eigengap_max_k(int n);

/// Response 1 for eigenvalues strictly below lambda_k, 0 otherwise; k = n is
/// the all-pass filter. Eigenvalues tied with lambda_k are attenuated.
FilterResponse ideal_lowpass(const Spectrum& spec, int k);

/// Least-squares polynomial fit of the target response over eigenvalues
/// normalized to [0,1]. Rank-deficient systems reduce the degree and set
/// degree_reduced.
FilterResponse fit_polynomial_filter(const Spectrum& spec, const std::vector<double>& alphas,
                                     int degree);

/// Componentwise product of the spectrum with the realized response.
Signal apply_filter(const Signal& shat, const FilterResponse& fr);

}  // namespace specf
