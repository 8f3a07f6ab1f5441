#pragma once

#include "bettimc/complex.hpp"
#include "bettimc/random_stream.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bettimc {

/**
 * Text formats.
 *
 *   complex <n>          graph <n>
 *   1 2 3                1 2
 *   2 4                  2 3
 *
 * After the header each line of a complex file is a face (normally a facet)
 * as space-separated vertex ids in [1, n]; each line of a graph file is an
 * edge "u v". Blank lines and lines starting with '#' are skipped, duplicate
 * faces and edges are merged.
 */
struct ParsedInput {
    Complex complex;
    std::vector<std::string> warnings;
    /// Body of a "# gen ..." comment left by the instance generator, if present.
    std::string generator;
};

/// Throws ParseError carrying the offending line number.
ParsedInput parse_text(std::string_view text);
ParsedInput parse_input(const std::string& path);

void write_complex(std::ostream& out, const GeneralComplex& c);
void write_graph(std::ostream& out, const CliqueComplex& c);

/// Erdos-Renyi G(n, p) as a clique complex.
CliqueComplex random_clique_complex(int n, double edge_prob, RandomStream& rng);

/**
 * Random complex generated by `facet_count` facets, each a uniformly random
 * subset of [n] with size uniform in [min_size, max_size].
 */
GeneralComplex random_general_complex(int n, int facet_count, int min_size, int max_size, RandomStream& rng);

} // namespace bettimc
