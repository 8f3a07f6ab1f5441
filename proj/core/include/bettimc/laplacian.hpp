#pragma once

#include "bettimc/complex.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace bettimc {

/**
 * Spectral side information for H = I - Delta_k / lambda_hat.
 *
 * The caller asserts lambda_max(Delta_k) <= lambda_hat and
 * lambda_2(Delta_k) >= gamma * lambda_hat; neither is checked here.
 */
struct SpectralParams {
    double lambda_hat = 1.0;
    double gamma = 1.0;

    /// Throws InputError unless lambda_hat > 0 and gamma is in (0, 1].
    void validate() const;
};

enum class PairKind { not_neighbors, up_down, down_up_only };

const char* to_string(PairKind kind) noexcept;

/// One off-diagonal entry of a Laplacian row: `sign * magnitude` at `neighbor`.
struct SignedEntry {
    Face neighbor;
    int sign = 1;
    double magnitude = 1.0;

    double value() const noexcept { return sign * magnitude; }
};

/**
 * Sparse row of Delta_k at `base`, plus the l1 norm of the matching column of H.
 * Delta_k is symmetric, so this row is also the column.
 */
struct LaplacianRow {
    Face base;
    int k = 0;
    int up_degree = 0;
    double diagonal = 0.0;
    std::vector<SignedEntry> off_diagonal;
    double h_column_norm = 0.0;
};

/**
 * Classifies two distinct k-faces. Down-up neighbours differ in exactly one
 * vertex each; they are up-down neighbours when their union is a face too.
 * Throws InputError when i == j.
 */
PairKind classify_pair(const Complex& c, const Face& i, const Face& j);

/**
 * Sign of (Delta_k)_{ij} for a down-up-only pair. With s = i ∩ j, this is
 * (-1)^(pos_i + pos_j) where pos_i is the 1-based position of i \ s in i.
 * Throws ContractViolation for any other kind of pair.
 */
int entry_sign(const Complex& c, const Face& i, const Face& j);

/// (-1)^(pos_i + pos_j) for faces with symmetric difference 2 (no membership check).
int shared_face_sign(const Face& i, const Face& j);

/**
 * Full sparse row of Delta_k at the k-face `f`, found by probing the
 * (k+1)(n-k-1) candidate faces at symmetric difference 2.
 *
 * For k >= 1 the diagonal is d_up + k + 1 and the off-diagonal entries are the
 * down-up-only neighbours. For k = 0 (unreduced, Delta_0 = d_1 d_1^T) the
 * diagonal is d_up and adjacent vertices carry -1.
 */
LaplacianRow laplacian_row(const Complex& c, const Face& f, const SpectralParams& params);

/// h_column_norm for a row, given lambda_hat.
double h_column_norm(double diagonal, std::size_t off_diagonal_count, double lambda_hat);

struct Transition {
    Face target;
    double probability = 0.0;
    int sign = 1;
};

/**
 * Walk transition law out of `row.base`: probability |H_{j,base}| / ||H_{.,base}||_1
 * with the sign of H_{j,base}. The self-loop comes first when its H entry is
 * nonzero. Returns nullopt for an absorbing row (zero column norm).
 */
std::optional<std::vector<Transition>> h_row_distribution(const LaplacianRow& row, const SpectralParams& params);

nlohmann::json to_json(const LaplacianRow& row);

/**
 * Transition law of one face in index form, laid out for fast sampling.
 * `cumulative` is nondecreasing and ends at 1; empty targets mark an absorbing face.
 */
struct CompiledRow {
    std::vector<std::uint32_t> targets;
    std::vector<double> cumulative;
    std::vector<std::int8_t> signs;
    double column_norm = 0.0;

    bool absorbing() const noexcept { return targets.empty(); }
    /// Index into `targets` for a uniform draw u in [0, 1).
    std::size_t pick(double u) const noexcept;
};

CompiledRow compile_row(const ComplexHandle& handle, const LaplacianRow& row, const SpectralParams& params);

/**
 * Bounded memo of compiled rows keyed by face index. Not thread-safe; each
 * walker owns one. When full it is cleared wholesale.
 */
class RowCache {
public:
    static constexpr std::size_t default_capacity = 1u << 16;

    RowCache(const ComplexHandle& handle, const SpectralParams& params,
             std::size_t capacity = default_capacity);

    const CompiledRow& row(std::uint32_t face_index);
    const ComplexHandle& handle() const noexcept { return handle_; }
    const SpectralParams& params() const noexcept { return params_; }
    std::size_t size() const noexcept { return rows_.size(); }

private:
    ComplexHandle handle_;
    SpectralParams params_;
    std::size_t capacity_;
    std::unordered_map<std::uint32_t, CompiledRow> rows_;
};

} // namespace bettimc
