#pragma once

// Reference computations straight from the definitions. They enumerate all
// vertex subsets and build boundary vectors by hand, so they share no code
// path with the library's row formula, clique enumeration or dense oracle.

#include "bettimc/complex.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <vector>

namespace bettimc::testing {

/// All (k+1)-subsets of [n] that the complex contains, in lexicographic order.
inline std::vector<Face> brute_k_faces(const Complex& c, int k) {
    std::vector<Face> out;
    const int n = c.vertex_count();
    const int size = k + 1;
    if (size < 1 || size > n) return out;
    std::vector<Vertex> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
        Face f(pick);
        if (c.contains(f)) out.push_back(f);
        int i = size - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i + 1) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

inline int brute_up_degree(const Complex& c, const Face& f) {
    int count = 0;
    for (const Face& g : brute_k_faces(c, f.dimension() + 1)) {
        bool sup = true;
        for (Vertex v : f) sup = sup && g.contains(v);
        count += sup ? 1 : 0;
    }
    return count;
}

/// Signed boundary of a face as a map from (k-1)-faces to +-1.
inline std::map<Face, int> boundary_vector(const Face& f) {
    std::map<Face, int> out;
    if (f.size() < 2) return out;
    for (std::size_t l = 0; l < f.size(); ++l) {
        std::vector<Vertex> rest;
        for (std::size_t m = 0; m < f.size(); ++m) {
            if (m != l) rest.push_back(f[m]);
        }
        out[Face(rest)] = (l % 2 == 0) ? 1 : -1;
    }
    return out;
}

/// Delta_k from inner products of boundary vectors, faces in lexicographic order.
inline Eigen::MatrixXi brute_laplacian(const Complex& c, int k) {
    const auto faces = brute_k_faces(c, k);
    const auto uppers = brute_k_faces(c, k + 1);
    const auto n = static_cast<Eigen::Index>(faces.size());
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
    std::map<Face, Eigen::Index> where;
    for (Eigen::Index i = 0; i < n; ++i) where[faces[static_cast<std::size_t>(i)]] = i;
    if (k >= 1) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto bi = boundary_vector(faces[static_cast<std::size_t>(i)]);
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto bj = boundary_vector(faces[static_cast<std::size_t>(j)]);
                int dot = 0;
                for (const auto& [face, s] : bi) {
                    auto it = bj.find(face);
                    if (it != bj.end()) dot += s * it->second;
                }
                m(i, j) += dot;
            }
        }
    }
    for (const Face& t : uppers) {
        const auto bt = boundary_vector(t);
        for (const auto& [fi, si] : bt) {
            for (const auto& [fj, sj] : bt) {
                m(where.at(fi), where.at(fj)) += si * sj;
            }
        }
    }
    return m;
}

/// Tr(H^z) / d_k by summing eigenvalue powers of the brute-force Laplacian.
inline double brute_trace(const Complex& c, int k, int z, double lambda_hat) {
    const Eigen::MatrixXd l = brute_laplacian(c, k).cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        double h = 1.0 - es.eigenvalues()(i) / lambda_hat;
        double p = 1.0;
        for (int t = 0; t < z; ++t) p *= h;
        s += p;
    }
    return s / static_cast<double>(l.rows());
}

inline double brute_lambda_max(const Complex& c, int k) {
    const Eigen::MatrixXd l = brute_laplacian(c, k).cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    return es.eigenvalues()(l.rows() - 1);
}

} // namespace bettimc::testing
