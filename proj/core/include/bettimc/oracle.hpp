#pragma once

#include "bettimc/complex.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <vector>

// Dense ground truth for small instances: boundary matrices, integer ranks,
// Laplacian spectra and exact traces of powers of H.

namespace bettimc {

inline constexpr std::size_t dense_entry_limit = 10'000'000;
inline constexpr std::size_t spectrum_face_limit = 2000;

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense d_{k-1} x d_k matrix of the boundary map; rows and columns follow the lexicographic face order.
struct BoundaryMatrix {
    int k = 0;
    IntMatrix entries;
};

/**
 * Column of a k-face A = {a_1 < ... < a_{k+1}} holds (-1)^(l-1) at the row of
 * A minus a_l. For k = 0 the map is empty (0 x d_0). Throws OracleScaleError
 * beyond dense_entry_limit entries.
 */
BoundaryMatrix build_boundary(const Complex& c, int k);

/// Exact rank by fraction-free (Bareiss) elimination; falls back to big integers on overflow.
std::size_t integer_rank(const IntMatrix& m);

/// beta_k = d_k - rank(d_k) - rank(d_{k+1}) with unreduced homology (beta_0 counts components).
std::size_t exact_betti(const Complex& c, int k);

struct LaplacianParts {
    IntMatrix down;  ///< d_k^T d_k (zero for k = 0)
    IntMatrix up;    ///< d_{k+1} d_{k+1}^T
    IntMatrix total() const { return down + up; }
};

LaplacianParts dense_laplacian_parts(const Complex& c, int k);
IntMatrix dense_laplacian(const Complex& c, int k);

struct SpectrumReport {
    std::vector<double> eigenvalues;  ///< ascending
    double lambda_max = 0.0;
    double gap = 0.0;                 ///< smallest eigenvalue above the threshold; 0 if none
    bool has_gap = false;
    double zero_threshold = 0.0;
    std::size_t betti_spectral = 0;   ///< eigenvalues at or below the threshold
};

/// Eigenvalues are treated as zero at or below zero_tol * max(lambda_max, 1).
SpectrumReport spectrum_of(const Eigen::MatrixXd& laplacian, double zero_tol = 1e-9);

/// Full eigendecomposition of dense Delta_k. Throws OracleScaleError above spectrum_face_limit faces.
SpectrumReport exact_spectrum(const Complex& c, int k, double zero_tol = 1e-9);

/// Tr(H^z) / d with H = I - laplacian / lambda_hat; repeated squaring for z <= 64, eigenvalues beyond.
double trace_power(const Eigen::MatrixXd& laplacian, int z, double lambda_hat);

/// Tr(H^z) / d_k on the dense Laplacian of `c`.
double exact_trace_power(const Complex& c, int k, int z, double lambda_hat);

nlohmann::json to_json(const SpectrumReport& s);

} // namespace bettimc
