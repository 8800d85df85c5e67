#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <gmpxx.h>

#include "temb/lattice.hpp"

namespace temb {

// Signed Kasteleyn matrix: rows indexed by black vertices, columns by white vertices.
struct SignedIncidence {
    int n = 0;
    Eigen::SparseMatrix<double> K;
    std::vector<std::vector<long>> dense_int() const;
};

SignedIncidence assemble(const ReducedHexGraph& rg);

enum class SliceKind { row, column };

// A row R(w, .) indexed by black vertices or a column R(., b) indexed by white vertices of R = K^{-1}.
struct InverseSlice {
    SliceKind kind = SliceKind::row;
    int index = -1;
    std::vector<double> values;
    double residual = 0.0;  // max-norm residual of the defining linear system
};

class SliceSolver {
public:
    explicit SliceSolver(const SignedIncidence& k);
    ~SliceSolver();
    SliceSolver(const SliceSolver&) = delete;
    SliceSolver& operator=(const SliceSolver&) = delete;

    InverseSlice column(int b) const;
    InverseSlice row(int w) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Rows of R at w1, w2, w3 and columns of R at b1, b2, b3.
struct BoundarySlices {
    std::array<InverseSlice, 3> rows;
    std::array<InverseSlice, 3> cols;
    double max_residual() const;
};

BoundarySlices inverse_rows_cols(const SignedIncidence& k, const ReducedHexGraph& rg, double tol = 1e-9);

// Exact entry K^{-1}(w(y, m), b(x, n)) of the unsigned H_A matrix by the double-residue formula.
mpq_class petrov_entry_exact(int y, int m, int x, int n, int A);
double petrov_entry(int y, int m, int x, int n, int A);

struct RationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<mpq_class> data;
    mpz_class det;
    const mpq_class& operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
    mpq_class& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
};

// Fraction-free Gauss-Jordan inverse of an integer matrix; result(j, i) pairs column j with row i.
RationalMatrix exact_inverse(const std::vector<std::vector<long>>& m);

// Exact R = K^{-1} of the reduced matrix, indexed (white, black); refuses sizes with A > 6.
RationalMatrix exact_rational_inverse(const SignedIncidence& k, int A);

// Unsigned (or gauge-signed) biadjacency matrix of H_A, rows black and columns white.
Eigen::MatrixXd dense_hexagon_matrix(const HexGraph& g, const std::vector<int>* edge_signs = nullptr);
std::vector<std::vector<long>> hexagon_matrix_int(const HexGraph& g);

}  // namespace temb
