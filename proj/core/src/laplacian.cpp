#include "bettimc/laplacian.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bettimc {

void SpectralParams::validate() const {
    if (!(lambda_hat > 0.0) || !std::isfinite(lambda_hat)) {
        throw InputError("lambda_hat must be a positive finite number");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InputError("gamma must lie in (0, 1]");
    }
}

const char* to_string(PairKind kind) noexcept {
    switch (kind) {
    case PairKind::not_neighbors: return "not_neighbors";
    case PairKind::up_down: return "up_down";
    case PairKind::down_up_only: return "down_up_only";
    }
    return "unknown";
}

namespace {

// Vertex of `a` missing from `b`; caller guarantees exactly one exists.
Vertex only_in(const Face& a, const Face& b) {
    for (Vertex v : a) {
        if (!b.contains(v)) {
            return v;
        }
    }
    return 0;
}

} // namespace

PairKind classify_pair(const Complex& c, const Face& i, const Face& j) {
    c.check_vertices(i);
    c.check_vertices(j);
    if (i == j) {
        throw InputError("classify_pair needs two distinct faces, got " + i.to_string() + " twice");
    }
    if (i.size() != j.size() || symmetric_difference_size(i, j) != 2) {
        return PairKind::not_neighbors;
    }
    const Face joined = i.with_vertex(only_in(j, i));
    return c.contains(joined) ? PairKind::up_down : PairKind::down_up_only;
}

int shared_face_sign(const Face& i, const Face& j) {
    if (i.size() != j.size() || symmetric_difference_size(i, j) != 2) {
        throw ContractViolation("shared_face_sign: " + i.to_string() + " and " + j.to_string() +
                                " do not differ in exactly one vertex");
    }
    const std::size_t pos_i = i.position_of(only_in(i, j));
    const std::size_t pos_j = j.position_of(only_in(j, i));
    return (pos_i + pos_j) % 2 == 0 ? 1 : -1;
}

int entry_sign(const Complex& c, const Face& i, const Face& j) {
    if (classify_pair(c, i, j) != PairKind::down_up_only) {
        throw ContractViolation("entry_sign: " + i.to_string() + " and " + j.to_string() +
                                " are not down-up-only neighbours");
    }
    return shared_face_sign(i, j);
}

double h_column_norm(double diagonal, std::size_t off_diagonal_count, double lambda_hat) {
    return std::abs(1.0 - diagonal / lambda_hat) + static_cast<double>(off_diagonal_count) / lambda_hat;
}

LaplacianRow laplacian_row(const Complex& c, const Face& f, const SpectralParams& params) {
    params.validate();
    if (!c.contains(f)) {
        throw InputError(f.to_string() + " is not a face of the complex");
    }
    const int n = c.vertex_count();
    const int k = f.dimension();

    LaplacianRow row;
    row.base = f;
    row.k = k;

    std::vector<char> up(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 1; v <= n; ++v) {
        if (!f.contains(v) && c.contains(f.with_vertex(v))) {
            up[v] = 1;
            ++row.up_degree;
        }
    }
    row.diagonal = row.up_degree + (k >= 1 ? k + 1 : 0);

    // Candidates at symmetric difference 2: drop f[p], add v. The down part
    // contributes s = (-1)^(pos_f + pos_g); the up part contributes -s when
    // f ∪ {v} is a face. For k >= 1 the two cancel exactly on up-down pairs.
    for (Vertex v = 1; v <= n; ++v) {
        if (f.contains(v)) {
            continue;
        }
        for (std::size_t p = 0; p < f.size(); ++p) {
            Face g = f.without_index(p).with_vertex(v);
            if (!c.contains(g)) {
                continue;
            }
            const std::size_t pos_g = g.position_of(v);
            const int s = ((p + 1 + pos_g) % 2 == 0) ? 1 : -1;
            const int value = (k >= 1 ? s : 0) + (up[v] ? -s : 0);
            if (value != 0) {
                row.off_diagonal.push_back(SignedEntry{std::move(g), value > 0 ? 1 : -1,
                                                       static_cast<double>(std::abs(value))});
            }
        }
    }
    std::sort(row.off_diagonal.begin(), row.off_diagonal.end(),
              [](const SignedEntry& a, const SignedEntry& b) { return a.neighbor < b.neighbor; });

    double off = 0.0;
    for (const auto& e : row.off_diagonal) {
        off += e.magnitude;
    }
    row.h_column_norm = std::abs(1.0 - row.diagonal / params.lambda_hat) + off / params.lambda_hat;
    return row;
}

std::optional<std::vector<Transition>> h_row_distribution(const LaplacianRow& row, const SpectralParams& params) {
    params.validate();
    if (!(row.h_column_norm > 0.0)) {
        return std::nullopt;
    }
    std::vector<Transition> out;
    out.reserve(row.off_diagonal.size() + 1);
    const double self = 1.0 - row.diagonal / params.lambda_hat;
    if (self != 0.0) {
        out.push_back(Transition{row.base, std::abs(self) / row.h_column_norm, self > 0.0 ? 1 : -1});
    }
    for (const auto& e : row.off_diagonal) {
        // H_{j,base} = -(Delta_k)_{j,base} / lambda_hat
        out.push_back(Transition{e.neighbor, e.magnitude / params.lambda_hat / row.h_column_norm, -e.sign});
    }
    return out;
}

nlohmann::json to_json(const LaplacianRow& row) {
    nlohmann::json neighbors = nlohmann::json::array();
    for (const auto& e : row.off_diagonal) {
        neighbors.push_back({{"face", std::vector<Vertex>(e.neighbor.begin(), e.neighbor.end())},
                             {"value", e.value()}});
    }
    return {{"face", std::vector<Vertex>(row.base.begin(), row.base.end())},
            {"k", row.k},
            {"up_degree", row.up_degree},
            {"diagonal", row.diagonal},
            {"neighbors", std::move(neighbors)},
            {"h_column_norm", row.h_column_norm}};
}

// =============================================================================
// Compiled rows
// =============================================================================

std::size_t CompiledRow::pick(double u) const noexcept {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        return cumulative.size() - 1;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

CompiledRow compile_row(const ComplexHandle& handle, const LaplacianRow& row, const SpectralParams& params) {
    CompiledRow out;
    out.column_norm = row.h_column_norm;
    auto dist = h_row_distribution(row, params);
    if (!dist) {
        return out;
    }
    double running = 0.0;
    for (const auto& t : *dist) {
        auto idx = handle.index_of(t.target);
        if (!idx) {
            throw ContractViolation("neighbour " + t.target.to_string() + " missing from the face index");
        }
        running += t.probability;
        out.targets.push_back(*idx);
        out.cumulative.push_back(running);
        out.signs.push_back(static_cast<std::int8_t>(t.sign));
    }
    out.cumulative.back() = 1.0;
    return out;
}

RowCache::RowCache(const ComplexHandle& handle, const SpectralParams& params, std::size_t capacity)
    : handle_(handle), params_(params), capacity_(std::max<std::size_t>(capacity, 1)) {
    params_.validate();
}

const CompiledRow& RowCache::row(std::uint32_t face_index) {
    auto it = rows_.find(face_index);
    if (it != rows_.end()) {
        return it->second;
    }
    if (rows_.size() >= capacity_) {
        rows_.clear();
    }
    LaplacianRow lr = laplacian_row(handle_.complex(), handle_.face(face_index), params_);
    return rows_.emplace(face_index, compile_row(handle_, lr, params_)).first->second;
}

} // namespace bettimc
