#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bettimc {

/// 1-based vertex label in [1, n].
using Vertex = std::int32_t;

/**
 * An oriented face: a nonempty, strictly increasing list of vertices.
 *
 * The increasing order fixes the orientation used by the boundary operator,
 * so two faces compare equal exactly when they hold the same vertex set.
 */
class Face {
public:
    Face() = default;

    /// Takes vertices that are already strictly increasing; throws InputError otherwise.
    explicit Face(std::vector<Vertex> vertices);
    Face(std::initializer_list<Vertex> vertices);

    /// Sorts the input; throws InputError on duplicates or an empty list.
    static Face from_unsorted(std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    /// k for a k-face (cardinality minus one).
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    Vertex operator[](std::size_t i) const noexcept { return vertices_[i]; }
    Vertex front() const noexcept { return vertices_.front(); }
    Vertex back() const noexcept { return vertices_.back(); }

    bool contains(Vertex v) const noexcept;
    /// 1-based position of `v`, or 0 when absent.
    std::size_t position_of(Vertex v) const noexcept;

    /// Face without the vertex at 0-based `index`.
    Face without_index(std::size_t index) const;
    /// Face with `v` inserted in order. Throws ContractViolation if `v` is already present.
    Face with_vertex(Vertex v) const;

    std::string to_string() const;

    auto begin() const noexcept { return vertices_.begin(); }
    auto end() const noexcept { return vertices_.end(); }

    friend bool operator==(const Face&, const Face&) = default;
    friend auto operator<=>(const Face& a, const Face& b) { return a.vertices_ <=> b.vertices_; }

private:
    struct Unchecked {};
    Face(std::vector<Vertex> vertices, Unchecked) : vertices_(std::move(vertices)) {}

    std::vector<Vertex> vertices_;
};

/// Size of the symmetric difference of two faces.
std::size_t symmetric_difference_size(const Face& a, const Face& b);

struct FaceHash {
    std::size_t operator()(const Face& f) const noexcept;
};

} // namespace bettimc

template <>
struct std::hash<bettimc::Face> : bettimc::FaceHash {};
