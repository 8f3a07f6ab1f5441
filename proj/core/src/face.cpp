#include "bettimc/face.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace bettimc {

namespace {

void require_increasing(const std::vector<Vertex>& v) {
    if (v.empty()) {
        throw InputError("face must contain at least one vertex");
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1] >= v[i]) {
            throw InputError("face vertices must be strictly increasing");
        }
    }
}

} // namespace

Face::Face(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    require_increasing(vertices_);
}

Face::Face(std::initializer_list<Vertex> vertices) : vertices_(vertices) {
    require_increasing(vertices_);
}

Face Face::from_unsorted(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
        throw InputError("face lists a vertex twice");
    }
    require_increasing(vertices);
    return Face(std::move(vertices), Unchecked{});
}

bool Face::contains(Vertex v) const noexcept {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Face::position_of(Vertex v) const noexcept {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) {
        return 0;
    }
    return static_cast<std::size_t>(it - vertices_.begin()) + 1;
}

Face Face::without_index(std::size_t index) const {
    std::vector<Vertex> out;
    out.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i != index) {
            out.push_back(vertices_[i]);
        }
    }
    return Face(std::move(out), Unchecked{});
}

Face Face::with_vertex(Vertex v) const {
    std::vector<Vertex> out;
    out.reserve(vertices_.size() + 1);
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it != vertices_.end() && *it == v) {
        throw ContractViolation("vertex " + std::to_string(v) + " already in " + to_string());
    }
    out.insert(out.end(), vertices_.begin(), it);
    out.push_back(v);
    out.insert(out.end(), it, vertices_.end());
    return Face(std::move(out), Unchecked{});
}

std::string Face::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i) os << ',';
        os << vertices_[i];
    }
    os << '}';
    return os.str();
}

std::size_t symmetric_difference_size(const Face& a, const Face& b) {
    std::size_t i = 0, j = 0, shared = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++shared;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return a.size() + b.size() - 2 * shared;
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
    // FNV-1a over the vertex ids
    std::uint64_t h = 1469598103934665603ull;
    for (Vertex v : f) {
        h ^= static_cast<std::uint32_t>(v);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

} // namespace bettimc
