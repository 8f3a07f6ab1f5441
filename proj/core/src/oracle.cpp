#include "bettimc/oracle.hpp"

#include "bettimc/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bettimc {

namespace {

std::size_t row_of(const std::vector<Face>& sorted, const Face& f) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
    if (it == sorted.end() || *it != f) {
        throw ContractViolation("boundary face " + f.to_string() + " missing; complex not downward closed");
    }
    return static_cast<std::size_t>(it - sorted.begin());
}

void require_dense(std::size_t rows, std::size_t cols, const char* what) {
    if (rows != 0 && cols > dense_entry_limit / rows) {
        throw OracleScaleError(std::string(what) + " of size " + std::to_string(rows) + " x " + std::to_string(cols) +
                               " exceeds the dense limit of " + std::to_string(dense_entry_limit) + " entries");
    }
}

struct Overflow {};

// Fraction-free elimination; every intermediate entry is a minor of the input,
// so the division by the previous pivot is exact.
template <class T, class Step>
std::size_t bareiss_rank(std::vector<std::vector<T>> a, Step step) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    T prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        const T pivot = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const T lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = step(pivot, a[i][j], lead, a[r][j], prev);
            }
            a[i][c] = 0;
        }
        prev = pivot;
        ++r;
    }
    return r;
}

template <class T>
std::vector<std::vector<T>> to_rows(const IntMatrix& m) {
    std::vector<std::vector<T>> a(static_cast<std::size_t>(m.rows()),
                                  std::vector<T>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
        }
    }
    return a;
}

} // namespace

BoundaryMatrix build_boundary(const Complex& c, int k) {
    if (k < 0) {
        throw InputError("boundary dimension must be nonnegative");
    }
    const auto& cols = c.enumerate_k_faces(k);
    BoundaryMatrix out;
    out.k = k;
    if (k == 0) {
        out.entries = IntMatrix::Zero(0, static_cast<Eigen::Index>(cols.size()));
        return out;
    }
    const auto& rows = c.enumerate_k_faces(k - 1);
    require_dense(rows.size(), cols.size(), "boundary matrix");
    out.entries = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Face& a = cols[j];
        for (std::size_t l = 0; l < a.size(); ++l) {
            const std::size_t i = row_of(rows, a.without_index(l));
            out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (l % 2 == 0) ? 1 : -1;
        }
    }
    return out;
}

std::size_t integer_rank(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0;
    }
    try {
        return bareiss_rank(to_rows<std::int64_t>(m),
                            [](std::int64_t p, std::int64_t x, std::int64_t l, std::int64_t y, std::int64_t prev) {
                                std::int64_t a = 0, b = 0, d = 0;
                                if (__builtin_mul_overflow(p, x, &a) || __builtin_mul_overflow(l, y, &b) ||
                                    __builtin_sub_overflow(a, b, &d)) {
                                    throw Overflow{};
                                }
                                return d / prev;
                            });
    } catch (const Overflow&) {
        using boost::multiprecision::cpp_int;
        return bareiss_rank(to_rows<cpp_int>(m),
                            [](const cpp_int& p, const cpp_int& x, const cpp_int& l, const cpp_int& y,
                               const cpp_int& prev) { return cpp_int((p * x - l * y) / prev); });
    }
}

std::size_t exact_betti(const Complex& c, int k) {
    if (k < 0) {
        throw InputError("dimension k must be nonnegative");
    }
    const std::size_t dk = c.face_count(k);
    if (dk == 0) {
        return 0;
    }
    const std::size_t rank_k = k >= 1 ? integer_rank(build_boundary(c, k).entries) : 0;
    const std::size_t rank_up = c.face_count(k + 1) ? integer_rank(build_boundary(c, k + 1).entries) : 0;
    return dk - rank_k - rank_up;
}

LaplacianParts dense_laplacian_parts(const Complex& c, int k) {
    const std::size_t dk = c.face_count(k);
    require_dense(dk, dk, "Laplacian");
    const auto n = static_cast<Eigen::Index>(dk);
    LaplacianParts parts;
    parts.down = IntMatrix::Zero(n, n);
    parts.up = IntMatrix::Zero(n, n);
    if (k >= 1) {
        const IntMatrix b = build_boundary(c, k).entries;
        parts.down = b.transpose() * b;
    }
    if (c.face_count(k + 1) > 0) {
        const IntMatrix b = build_boundary(c, k + 1).entries;
        parts.up = b * b.transpose();
    }
    return parts;
}

IntMatrix dense_laplacian(const Complex& c, int k) {
    return dense_laplacian_parts(c, k).total();
}

SpectrumReport spectrum_of(const Eigen::MatrixXd& laplacian, double zero_tol) {
    SpectrumReport rep;
    if (laplacian.rows() == 0) {
        return rep;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    rep.lambda_max = rep.eigenvalues.back();
    rep.zero_threshold = zero_tol * std::max(rep.lambda_max, 1.0);
    for (double v : rep.eigenvalues) {
        if (v <= rep.zero_threshold) {
            ++rep.betti_spectral;
        } else if (!rep.has_gap) {
            rep.gap = v;
            rep.has_gap = true;
        }
    }
    return rep;
}

SpectrumReport exact_spectrum(const Complex& c, int k, double zero_tol) {
    const std::size_t dk = c.face_count(k);
    if (dk == 0) {
        throw EmptyDimensionError("complex has no " + std::to_string(k) + "-faces");
    }
    if (dk > spectrum_face_limit) {
        throw OracleScaleError("dense spectrum needs d_k <= " + std::to_string(spectrum_face_limit) + ", got " +
                               std::to_string(dk));
    }
    return spectrum_of(dense_laplacian(c, k).cast<double>(), zero_tol);
}

double trace_power(const Eigen::MatrixXd& laplacian, int z, double lambda_hat) {
    if (z < 0) {
        throw InputError("power z must be nonnegative");
    }
    if (!(lambda_hat > 0.0)) {
        throw InputError("lambda_hat must be positive");
    }
    const Eigen::Index n = laplacian.rows();
    if (n == 0) {
        throw EmptyDimensionError("empty Laplacian");
    }
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - laplacian / lambda_hat;
    if (z <= 64) {
        Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd base = h;
        for (int e = z; e > 0; e >>= 1) {
            if (e & 1) {
                result = result * base;
            }
            if (e > 1) {
                base = base * base;
            }
        }
        return result.trace() / static_cast<double>(n);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        sum += std::pow(solver.eigenvalues()(i), z);
    }
    return sum / static_cast<double>(n);
}

double exact_trace_power(const Complex& c, int k, int z, double lambda_hat) {
    const std::size_t dk = c.face_count(k);
    if (dk > spectrum_face_limit) {
        throw OracleScaleError("dense trace needs d_k <= " + std::to_string(spectrum_face_limit));
    }
    if (dk == 0) {
        throw EmptyDimensionError("complex has no " + std::to_string(k) + "-faces");
    }
    return trace_power(dense_laplacian(c, k).cast<double>(), z, lambda_hat);
}

nlohmann::json to_json(const SpectrumReport& s) {
    return {{"eigenvalues", s.eigenvalues},
            {"lambda_max", s.lambda_max},
            {"gap", s.has_gap ? nlohmann::json(s.gap) : nlohmann::json(nullptr)},
            {"zero_threshold", s.zero_threshold},
            {"betti_spectral", s.betti_spectral}};
}

} // namespace bettimc
