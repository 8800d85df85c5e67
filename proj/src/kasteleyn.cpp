#include "temb/kasteleyn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

#include "temb/exact.hpp"

namespace temb {

SignedIncidence assemble(const ReducedHexGraph& rg) {
    SignedIncidence out;
    out.n = rg.size();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(rg.edges.size());
    for (const auto& e : rg.edges) trips.emplace_back(e.b, e.w, static_cast<double>(e.sign));
    out.K.resize(out.n, out.n);
    out.K.setFromTriplets(trips.begin(), trips.end());
    out.K.makeCompressed();
    return out;
}

std::vector<std::vector<long>> SignedIncidence::dense_int() const {
    std::vector<std::vector<long>> m(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int c = 0; c < K.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, c); it; ++it)
            m[static_cast<std::size_t>(it.row())][static_cast<std::size_t>(it.col())] = std::lround(it.value());
    return m;
}

struct SliceSolver::Impl {
    Eigen::SparseMatrix<double> K;
    Eigen::SparseMatrix<double> Kt;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lut;

    static std::vector<double> solve(const Eigen::SparseMatrix<double>& M,
                                     const Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>& f,
                                     int unit, double& residual) {
        const Eigen::Index n = M.rows();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        rhs(unit) = 1.0;
        Eigen::VectorXd x = f.solve(rhs);
        auto resid = [&](const Eigen::VectorXd& v) {
            std::vector<long double> r(static_cast<std::size_t>(n), 0.0L);
            r[static_cast<std::size_t>(unit)] = 1.0L;
            for (int c = 0; c < M.outerSize(); ++c)
                for (Eigen::SparseMatrix<double>::InnerIterator it(M, c); it; ++it)
                    r[static_cast<std::size_t>(it.row())] -= static_cast<long double>(it.value()) * v(it.col());
            Eigen::VectorXd out(n);
            for (Eigen::Index i = 0; i < n; ++i) out(i) = static_cast<double>(r[static_cast<std::size_t>(i)]);
            return out;
        };
        x += f.solve(resid(x));
        residual = resid(x).lpNorm<Eigen::Infinity>();
        return {x.data(), x.data() + n};
    }
};

SliceSolver::SliceSolver(const SignedIncidence& k) : impl_(std::make_unique<Impl>()) {
    impl_->K = k.K;
    impl_->Kt = k.K.transpose();
    impl_->lu.compute(impl_->K);
    if (impl_->lu.info() != Eigen::Success) throw std::runtime_error("Kasteleyn matrix is singular");
    impl_->lut.compute(impl_->Kt);
    if (impl_->lut.info() != Eigen::Success) throw std::runtime_error("Kasteleyn matrix is singular");
}

SliceSolver::~SliceSolver() = default;

InverseSlice SliceSolver::column(int b) const {
    InverseSlice s;
    s.kind = SliceKind::column;
    s.index = b;
    s.values = Impl::solve(impl_->K, impl_->lu, b, s.residual);
    return s;
}

InverseSlice SliceSolver::row(int w) const {
    InverseSlice s;
    s.kind = SliceKind::row;
    s.index = w;
    s.values = Impl::solve(impl_->Kt, impl_->lut, w, s.residual);
    return s;
}

double BoundarySlices::max_residual() const {
    double r = 0.0;
    for (const auto& s : rows) r = std::max(r, s.residual);
    for (const auto& s : cols) r = std::max(r, s.residual);
    return r;
}

BoundarySlices inverse_rows_cols(const SignedIncidence& k, const ReducedHexGraph& rg, double tol) {
    SliceSolver solver(k);
    BoundarySlices out;
    for (std::size_t j = 0; j < 3; ++j) {
        out.rows[j] = solver.row(rg.w[j]);
        out.cols[j] = solver.column(rg.b[j]);
    }
    if (const double r = out.max_residual(); !(r <= tol))
        throw std::runtime_error("slice residual " + std::to_string(r) + " exceeds tolerance");
    return out;
}

mpq_class petrov_entry_exact(int y, int m, int x, int n, int A) {
    mpq_class first = 0;
    if (m < n && y <= x) first = rational(pochhammer(x - y + 1, n - m - 1), factorial(n - m - 1));
    const long p = 2L * A - n + 1;
    mpq_class total = 0;
    for (long k = std::max(y, 0); k < A; ++k) {
        const mpq_class ck = rational(pochhammer(k - y + 1, 2L * A - m - 1), pochhammer(-2L * A - k, A) * neg_poch_quotient(k, k, A));
        mpq_class s = 0;
        for (long j = 0; j < p; ++j) {
            const long z = x - j;
            s += rational(pochhammer(-2L * A - z, A) * neg_poch_quotient(z, k, A), lagrange_denominator(j, p));
        }
        total += ck * s;
    }
    mpq_class out = -first + rational(factorial(2L * A - n), factorial(2L * A - m - 1)) * total;
    if ((y - x + m - n) % 2 != 0) out = -out;
    return out;
}

double petrov_entry(int y, int m, int x, int n, int A) { return to_double(petrov_entry_exact(y, m, x, n, A)); }

RationalMatrix exact_inverse(const std::vector<std::vector<long>>& m) {
    const int n = static_cast<int>(m.size());
    const int w = 2 * n;
    std::vector<mpz_class> a(static_cast<std::size_t>(n * w));
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<std::size_t>(i * w + j)]; };
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(m[static_cast<std::size_t>(i)].size()) != n) throw std::invalid_argument("matrix is not square");
        for (int j = 0; j < n; ++j) at(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        at(i, n + i) = 1;
    }
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && sgn(at(piv, k)) == 0) ++piv;
        if (piv == n) throw std::runtime_error("matrix is singular");
        if (piv != k) {
            for (int j = 0; j < w; ++j) std::swap(at(piv, j), at(k, j));
            sign = -sign;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = 0; j < w; ++j) {
                if (j == k) continue;
                mpz_class v = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination lost exactness");
                mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    RationalMatrix out;
    out.rows = n;
    out.cols = n;
    out.det = sign * prev;
    out.data.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out(i, j) = rational(at(i, n + j), at(i, i));
        }
    return out;
}

RationalMatrix exact_rational_inverse(const SignedIncidence& k, int A) {
    if (A > 6) throw std::invalid_argument("exact inverse is limited to A <= 6");
    return exact_inverse(k.dense_int());
}

Eigen::MatrixXd dense_hexagon_matrix(const HexGraph& g, const std::vector<int>* edge_signs) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.blacks.size()), static_cast<Eigen::Index>(g.whites.size()));
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        K(g.edges[e].b, g.edges[e].w) = edge_signs ? (*edge_signs)[e] : 1.0;
    return K;
}

std::vector<std::vector<long>> hexagon_matrix_int(const HexGraph& g) {
    std::vector<std::vector<long>> m(g.blacks.size(), std::vector<long>(g.whites.size(), 0));
    for (const auto& e : g.edges) m[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.w)] = 1;
    return m;
}

}  // namespace temb
