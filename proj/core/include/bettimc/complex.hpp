#pragma once

#include "bettimc/face.hpp"
#include "bettimc/random_stream.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace bettimc {

// =============================================================================
// Explicit complexes
// =============================================================================

/**
 * Simplicial complex over [n] given by facets (or any generating face list)
 * and stored as its full downward closure, one sorted face list per dimension.
 *
 * Every vertex in [1, n] is a 0-face, whether or not a facet mentions it.
 */
class GeneralComplex {
public:
    /// Faces larger than this are rejected; the closure of a facet has 2^|facet| faces.
    static constexpr std::size_t max_facet_size = 24;

    GeneralComplex(int n, const std::vector<Face>& generators);

    int vertex_count() const noexcept { return n_; }
    int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
    const std::vector<Face>& facets() const noexcept { return facets_; }

    bool contains(const Face& f) const;
    /// Lexicographically sorted k-faces; empty when k is negative or above the dimension.
    const std::vector<Face>& faces(int k) const;

private:
    int n_;
    std::vector<Face> facets_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::unordered_set<Face>> lookup_;
};

// =============================================================================
// Clique complexes
// =============================================================================

/**
 * Clique complex of a simple undirected graph on [n]. Membership is decided
 * from the adjacency relation; k-faces are enumerated on demand and cached.
 */
class CliqueComplex {
public:
    CliqueComplex(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    /// Copies the graph; the copy starts with an empty face cache.
    CliqueComplex(const CliqueComplex& other);
    CliqueComplex& operator=(const CliqueComplex& other);
    CliqueComplex(CliqueComplex&&) noexcept = default;
    CliqueComplex& operator=(CliqueComplex&&) noexcept = default;

    int vertex_count() const noexcept { return n_; }
    bool adjacent(Vertex u, Vertex v) const noexcept;
    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[static_cast<std::size_t>(v)]; }
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    bool contains(const Face& f) const;
    /// All (k+1)-cliques in lexicographic order, by ordered backtracking. Thread-safe.
    const std::vector<Face>& faces(int k) const;
    /// Size of the largest clique minus one.
    int dimension() const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<int, std::vector<Face>> faces;
        std::optional<int> dimension;
    };

    int n_;
    std::vector<std::vector<char>> adjacency_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::unique_ptr<Cache> cache_;
};

// =============================================================================
// Unified access
// =============================================================================

/// Either kind of complex behind one query interface (membership and k-face listing).
class Complex {
public:
    explicit Complex(GeneralComplex c) : impl_(std::move(c)) {}
    explicit Complex(CliqueComplex c) : impl_(std::move(c)) {}

    bool is_clique() const noexcept { return std::holds_alternative<CliqueComplex>(impl_); }
    const GeneralComplex* as_general() const noexcept { return std::get_if<GeneralComplex>(&impl_); }
    const CliqueComplex* as_clique() const noexcept { return std::get_if<CliqueComplex>(&impl_); }

    int vertex_count() const noexcept;
    int dimension() const;

    /// Membership query. Throws InputError when a vertex lies outside [1, n].
    bool contains(const Face& f) const;
    /// All k-faces in lexicographic order (empty if there are none).
    const std::vector<Face>& enumerate_k_faces(int k) const;
    std::size_t face_count(int k) const { return enumerate_k_faces(k).size(); }
    /// Uniform draw from the k-faces. Throws EmptyDimensionError when d_k = 0.
    Face sample_k_face(int k, RandomStream& rng) const;
    /// Number of (k+1)-faces containing the k-face `f`, via n - k - 1 membership queries.
    int up_degree(const Face& f) const;

    void check_vertices(const Face& f) const;

private:
    std::variant<GeneralComplex, CliqueComplex> impl_;
};

/**
 * A complex together with a target dimension k with d_k >= 1, plus an index
 * over the k-faces. The estimator works on face indices through this handle.
 * Cheap to copy; the complex must outlive it.
 */
class ComplexHandle {
public:
    ComplexHandle(const Complex& complex, int k);

    const Complex& complex() const noexcept { return *complex_; }
    int k() const noexcept { return k_; }
    int vertex_count() const noexcept { return complex_->vertex_count(); }
    std::uint32_t face_count() const noexcept { return static_cast<std::uint32_t>(faces_->size()); }
    const Face& face(std::uint32_t index) const { return (*faces_)[index]; }
    const std::vector<Face>& faces() const noexcept { return *faces_; }
    std::optional<std::uint32_t> index_of(const Face& f) const;
    std::uint32_t sample_index(RandomStream& rng) const;

private:
    const Complex* complex_;
    int k_;
    const std::vector<Face>* faces_;
    std::shared_ptr<const std::unordered_map<Face, std::uint32_t>> index_;
};

} // namespace bettimc
