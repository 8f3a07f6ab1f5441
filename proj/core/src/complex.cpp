#include "bettimc/complex.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <string>

namespace bettimc {

namespace {

void check_range(const Face& f, int n) {
    for (Vertex v : f) {
        if (v < 1 || v > n) {
            throw InputError("vertex " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
        }
    }
}

bool is_subset(const Face& small, const Face& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

const std::vector<Face>& empty_faces() {
    static const std::vector<Face> none;
    return none;
}

} // namespace

// =============================================================================
// GeneralComplex
// =============================================================================

GeneralComplex::GeneralComplex(int n, const std::vector<Face>& generators) : n_(n) {
    if (n < 1) {
        throw InputError("complex needs at least one vertex");
    }
    std::vector<Face> gens;
    gens.reserve(generators.size());
    for (const Face& g : generators) {
        if (g.empty()) {
            throw InputError("empty face in generator list");
        }
        check_range(g, n);
        if (g.size() > max_facet_size) {
            throw InputError("face " + g.to_string() + " exceeds the supported facet size of " +
                             std::to_string(max_facet_size));
        }
        gens.push_back(g);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::size_t top = 1;
    for (const Face& g : gens) {
        top = std::max(top, g.size());
    }
    lookup_.resize(top);
    for (Vertex v = 1; v <= n; ++v) {
        lookup_[0].insert(Face{v});
    }
    std::vector<Vertex> buffer;
    for (const Face& g : gens) {
        const std::size_t m = g.size();
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            buffer.clear();
            for (std::size_t b = 0; b < m; ++b) {
                if (mask & (1u << b)) {
                    buffer.push_back(g[b]);
                }
            }
            lookup_[buffer.size() - 1].insert(Face(buffer));
        }
    }
    faces_.resize(top);
    for (std::size_t k = 0; k < top; ++k) {
        faces_[k].assign(lookup_[k].begin(), lookup_[k].end());
        std::sort(faces_[k].begin(), faces_[k].end());
    }

    // facets: generators not strictly contained in another generator
    for (const Face& g : gens) {
        bool maximal = true;
        for (const Face& h : gens) {
            if (h.size() > g.size() && is_subset(g, h)) {
                maximal = false;
                break;
            }
        }
        if (maximal) {
            facets_.push_back(g);
        }
    }
    for (Vertex v = 1; v <= n; ++v) {
        Face single{v};
        bool covered = std::any_of(facets_.begin(), facets_.end(), [&](const Face& f) { return f.contains(v); });
        if (!covered) {
            facets_.push_back(single);
        }
    }
    std::sort(facets_.begin(), facets_.end());
}

bool GeneralComplex::contains(const Face& f) const {
    const std::size_t k = f.size() - 1;
    if (f.empty() || k >= lookup_.size()) {
        return false;
    }
    return lookup_[k].count(f) > 0;
}

const std::vector<Face>& GeneralComplex::faces(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= faces_.size()) {
        return empty_faces();
    }
    return faces_[static_cast<std::size_t>(k)];
}

// =============================================================================
// CliqueComplex
// =============================================================================

CliqueComplex::CliqueComplex(int n, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : n_(n), cache_(std::make_unique<Cache>()) {
    if (n < 1) {
        throw InputError("graph needs at least one vertex");
    }
    const auto size = static_cast<std::size_t>(n) + 1;
    adjacency_.assign(size, std::vector<char>(size, 0));
    neighbors_.assign(size, {});
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n) {
            throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") has a vertex outside [1, " +
                             std::to_string(n) + "]");
        }
        if (u == v) {
            throw InputError("self-loop at vertex " + std::to_string(u));
        }
        adjacency_[u][v] = adjacency_[v][u] = 1;
    }
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = 1; v <= n; ++v) {
            if (adjacency_[u][v]) {
                neighbors_[u].push_back(v);
            }
        }
    }
}

CliqueComplex::CliqueComplex(const CliqueComplex& other)
    : n_(other.n_), adjacency_(other.adjacency_), neighbors_(other.neighbors_), cache_(std::make_unique<Cache>()) {}

CliqueComplex& CliqueComplex::operator=(const CliqueComplex& other) {
    if (this != &other) {
        n_ = other.n_;
        adjacency_ = other.adjacency_;
        neighbors_ = other.neighbors_;
        cache_ = std::make_unique<Cache>();
    }
    return *this;
}

bool CliqueComplex::adjacent(Vertex u, Vertex v) const noexcept {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
        return false;
    }
    return adjacency_[u][v] != 0;
}

std::vector<std::pair<Vertex, Vertex>> CliqueComplex::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 1; u <= n_; ++u) {
        for (Vertex v : neighbors_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

bool CliqueComplex::contains(const Face& f) const {
    if (f.empty()) {
        return false;
    }
    for (std::size_t a = 0; a < f.size(); ++a) {
        if (f[a] < 1 || f[a] > n_) {
            return false;
        }
        for (std::size_t b = a + 1; b < f.size(); ++b) {
            if (!adjacency_[f[a]][f[b]]) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Extends `clique` by vertices from `candidates` (all adjacent to every member
// and larger than its last vertex) until it has `target` vertices.
void extend_cliques(const CliqueComplex& g, std::vector<Vertex>& clique, const std::vector<Vertex>& candidates,
                    std::size_t target, std::vector<Face>& out) {
    if (clique.size() == target) {
        out.emplace_back(clique);
        return;
    }
    const std::size_t needed = target - clique.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates.size() - i < needed) {
            break;
        }
        const Vertex v = candidates[i];
        std::vector<Vertex> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (g.adjacent(v, candidates[j])) {
                next.push_back(candidates[j]);
            }
        }
        clique.push_back(v);
        extend_cliques(g, clique, next, target, out);
        clique.pop_back();
    }
}

} // namespace

const std::vector<Face>& CliqueComplex::faces(int k) const {
    if (k < 0 || k >= n_) {
        return empty_faces();
    }
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->faces.find(k);
    if (it != cache_->faces.end()) {
        return it->second;
    }
    std::vector<Face> out;
    std::vector<Vertex> clique;
    std::vector<Vertex> all;
    for (Vertex v = 1; v <= n_; ++v) {
        all.push_back(v);
    }
    extend_cliques(*this, clique, all, static_cast<std::size_t>(k) + 1, out);
    return cache_->faces.emplace(k, std::move(out)).first->second;
}

int CliqueComplex::dimension() const {
    {
        std::lock_guard lock(cache_->mutex);
        if (cache_->dimension) {
            return *cache_->dimension;
        }
    }
    int k = 0;
    while (k + 1 < n_ && !faces(k + 1).empty()) {
        ++k;
    }
    std::lock_guard lock(cache_->mutex);
    cache_->dimension = k;
    return k;
}

// =============================================================================
// Complex
// =============================================================================

int Complex::vertex_count() const noexcept {
    return std::visit([](const auto& c) { return c.vertex_count(); }, impl_);
}

int Complex::dimension() const {
    return std::visit([](const auto& c) { return c.dimension(); }, impl_);
}

void Complex::check_vertices(const Face& f) const {
    if (f.empty()) {
        throw InputError("empty face");
    }
    check_range(f, vertex_count());
}

bool Complex::contains(const Face& f) const {
    check_vertices(f);
    return std::visit([&](const auto& c) { return c.contains(f); }, impl_);
}

const std::vector<Face>& Complex::enumerate_k_faces(int k) const {
    if (k < 0) {
        throw InputError("dimension k must be nonnegative");
    }
    return std::visit([&](const auto& c) -> const std::vector<Face>& { return c.faces(k); }, impl_);
}

Face Complex::sample_k_face(int k, RandomStream& rng) const {
    const auto& faces = enumerate_k_faces(k);
    if (faces.empty()) {
        throw EmptyDimensionError("no " + std::to_string(k) + "-faces to sample from");
    }
    return faces[rng.uniform_index(faces.size())];
}

int Complex::up_degree(const Face& f) const {
    if (!contains(f)) {
        throw InputError(f.to_string() + " is not a face of the complex");
    }
    int count = 0;
    const int n = vertex_count();
    for (Vertex v = 1; v <= n; ++v) {
        if (!f.contains(v) && std::visit([&](const auto& c) { return c.contains(f.with_vertex(v)); }, impl_)) {
            ++count;
        }
    }
    return count;
}

// =============================================================================
// ComplexHandle
// =============================================================================

ComplexHandle::ComplexHandle(const Complex& complex, int k)
    : complex_(&complex), k_(k), faces_(&complex.enumerate_k_faces(k)) {
    if (faces_->empty()) {
        throw EmptyDimensionError("complex has no " + std::to_string(k) + "-faces");
    }
    if (faces_->size() > UINT32_MAX) {
        throw InputError("too many faces to index");
    }
    auto index = std::make_shared<std::unordered_map<Face, std::uint32_t>>();
    index->reserve(faces_->size());
    for (std::uint32_t i = 0; i < faces_->size(); ++i) {
        index->emplace((*faces_)[i], i);
    }
    index_ = std::move(index);
}

std::optional<std::uint32_t> ComplexHandle::index_of(const Face& f) const {
    auto it = index_->find(f);
    if (it == index_->end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint32_t ComplexHandle::sample_index(RandomStream& rng) const {
    return static_cast<std::uint32_t>(rng.uniform_index(faces_->size()));
}

} // namespace bettimc
