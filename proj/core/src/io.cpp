#include "bettimc/io.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace bettimc {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view token, std::size_t line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("expected an integer, got '" + std::string(token) + "'", line);
    }
    return value;
}

Vertex to_vertex(std::string_view token, int n, std::size_t line) {
    const long long v = to_int(token, line);
    if (v < 1 || v > n) {
        throw ParseError("vertex " + std::string(token) + " outside [1, " + std::to_string(n) + "]", line);
    }
    return static_cast<Vertex>(v);
}

bool is_subset(const Face& small, const Face& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

ParsedInput parse_text(std::string_view text) {
    enum class Kind { none, complex, graph } kind = Kind::none;
    int n = 0;
    std::vector<Face> faces;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::string> warnings;
    std::string generator;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto tokens = split_ws(line);
        if (generator.empty() && tokens.size() >= 2 && tokens[0] == "#" && tokens[1] == "gen") {
            generator = std::string(line.substr(line.find("gen") + 4));
        }
        if (tokens.empty() || tokens.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (kind == Kind::none) {
            if (tokens.size() != 2 || (tokens[0] != "complex" && tokens[0] != "graph")) {
                throw ParseError("expected header 'complex <n>' or 'graph <n>'", line_no);
            }
            const long long value = to_int(tokens[1], line_no);
            if (value < 1 || value > 1'000'000) {
                throw ParseError("vertex count must lie in [1, 1000000]", line_no);
            }
            n = static_cast<int>(value);
            kind = tokens[0] == "complex" ? Kind::complex : Kind::graph;
        } else if (kind == Kind::graph) {
            if (tokens.size() != 2) {
                throw ParseError("edge lines need exactly two vertices", line_no);
            }
            const Vertex u = to_vertex(tokens[0], n, line_no);
            const Vertex v = to_vertex(tokens[1], n, line_no);
            if (u == v) {
                throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
            }
            edges.emplace_back(std::min(u, v), std::max(u, v));
        } else {
            std::vector<Vertex> vs;
            for (auto t : tokens) vs.push_back(to_vertex(t, n, line_no));
            try {
                faces.push_back(Face::from_unsorted(std::move(vs)));
            } catch (const InputError& e) {
                throw ParseError(e.what(), line_no);
            }
            if (faces.back().size() > GeneralComplex::max_facet_size) {
                throw ParseError("face larger than " + std::to_string(GeneralComplex::max_facet_size) + " vertices",
                                 line_no);
            }
        }
        if (end == text.size()) break;
    }
    if (kind == Kind::none) {
        throw ParseError("missing header line", 0);
    }

    if (kind == Kind::graph) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return ParsedInput{Complex(CliqueComplex(n, edges)), std::move(warnings), std::move(generator)};
    }

    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    // A list that names some non-maximal faces is an explicit face list; say
    // so when it is not already downward closed.
    bool lists_subfaces = false;
    for (std::size_t a = 0; a < faces.size() && !lists_subfaces; ++a) {
        for (std::size_t b = 0; b < faces.size(); ++b) {
            if (faces[b].size() > faces[a].size() && is_subset(faces[a], faces[b])) {
                lists_subfaces = true;
                break;
            }
        }
    }
    if (lists_subfaces) {
        std::set<Face> listed(faces.begin(), faces.end());
        bool closed = true;
        for (const Face& f : faces) {
            for (std::size_t i = 0; f.size() > 1 && i < f.size() && closed; ++i) {
                closed = listed.count(f.without_index(i)) > 0;
            }
            if (!closed) break;
        }
        if (!closed) {
            warnings.emplace_back("explicit face list is not downward closed; closure applied");
        }
    }
    return ParsedInput{Complex(GeneralComplex(n, faces)), std::move(warnings), std::move(generator)};
}

ParsedInput parse_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open input file '" + path + "'", 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

void write_complex(std::ostream& out, const GeneralComplex& c) {
    out << "complex " << c.vertex_count() << '\n';
    for (const Face& f : c.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << (i ? " " : "") << f[i];
        }
        out << '\n';
    }
}

void write_graph(std::ostream& out, const CliqueComplex& c) {
    out << "graph " << c.vertex_count() << '\n';
    for (auto [u, v] : c.edges()) {
        out << u << ' ' << v << '\n';
    }
}

CliqueComplex random_clique_complex(int n, double edge_prob, RandomStream& rng) {
    if (n < 1 || !(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw InputError("random graph needs n >= 1 and edge probability in [0, 1]");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) {
            if (rng.bernoulli(edge_prob)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return CliqueComplex(n, edges);
}

GeneralComplex random_general_complex(int n, int facet_count, int min_size, int max_size, RandomStream& rng) {
    if (n < 1 || facet_count < 0 || min_size < 1 || max_size < min_size || max_size > n ||
        static_cast<std::size_t>(max_size) > GeneralComplex::max_facet_size) {
        throw InputError("random complex needs 1 <= min_size <= max_size <= min(n, " +
                         std::to_string(GeneralComplex::max_facet_size) + ")");
    }
    std::vector<Face> facets;
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    for (int f = 0; f < facet_count; ++f) {
        std::iota(pool.begin(), pool.end(), 1);
        const auto size = static_cast<std::size_t>(min_size) +
                          rng.uniform_index(static_cast<std::uint64_t>(max_size - min_size + 1));
        // partial Fisher-Yates
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t j = i + rng.uniform_index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        facets.push_back(Face::from_unsorted(std::vector<Vertex>(pool.begin(), pool.begin() + static_cast<long>(size))));
    }
    return GeneralComplex(n, facets);
}

} // namespace bettimc
