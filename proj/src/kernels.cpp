#include "hecke/kernels.hpp"

#include "hecke/corner.hpp"

#include <utility>

namespace hecke::kernels {

RationalMatrix conjugation_sum_serial(const RegularRep& rep, const RationalMatrix& p) {
    const std::size_t n = rep.order();
    const FiniteGroup& G = rep.group();
    RationalMatrix sum(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        const RationalMatrix m = rep.matrix_of(make_finite(x));
        const RationalMatrix m_inv = rep.matrix_of(make_finite(G.inverse(x)));
        sum = sum + m * p * m_inv;
    }
    return sum;
}

RationalMatrix conjugation_sum_parallel(const RegularRep& rep, const RationalMatrix& p) {
    const auto n = static_cast<std::ptrdiff_t>(rep.order());
    const FiniteGroup& G = rep.group();
    std::vector<std::size_t> inverse(rep.order());
    for (std::size_t x = 0; x < rep.order(); ++x) inverse[x] = G.inverse(x);
    RationalMatrix sum(rep.order(), rep.order());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t x = 0; x < n; ++x) {
            const auto& shift = rep.permutation(inverse[x]);
            const std::size_t row = shift[i];
            for (std::ptrdiff_t j = 0; j < n; ++j) {
                const Rational& v = p(row, shift[j]);
                if (v != 0) sum(i, j) += v;
            }
        }
    }
    return sum;
}

RationalMatrix corner_span_serial(const RegularRep& rep, const RationalMatrix& p) {
    const std::size_t n = rep.order();
    RationalMatrix rows(n, n * n);
    for (std::size_t x = 0; x < n; ++x) {
        const RationalMatrix block = p * rep.matrix_of(make_finite(x)) * p;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rows(x, i * n + j) = block(i, j);
    }
    return rows;
}

RationalMatrix corner_span_parallel(const RegularRep& rep, const RationalMatrix& p) {
    const auto n = static_cast<std::ptrdiff_t>(rep.order());
    RationalMatrix rows(rep.order(), rep.order() * rep.order());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t x = 0; x < n; ++x) {
        // (p M(x))[i][k] = p[i][x k]
        const auto& shift = rep.permutation(static_cast<std::size_t>(x));
        Rational acc;
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j) {
                acc = 0;
                for (std::ptrdiff_t k = 0; k < n; ++k) {
                    const Rational& left = p(i, shift[k]);
                    if (left == 0) continue;
                    const Rational& right = p(k, j);
                    if (right != 0) acc += left * right;
                }
                rows(x, i * n + j) = acc;
            }
    }
    return rows;
}

std::size_t rank_serial(RationalMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
        const Rational inv = 1 / m(rank, c);
        for (std::size_t k = c; k < cols; ++k) m(rank, k) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m(r, c) == 0) continue;
            const Rational factor = m(r, c);
            for (std::size_t k = c; k < cols; ++k) m(r, k) -= factor * m(rank, k);
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_parallel(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c);

    std::size_t rank = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const auto& top = a[rank];
        support.clear();
        for (std::size_t k = c + 1; k < cols; ++k)
            if (top[k] != 0) support.push_back(k);
        const auto first = static_cast<std::ptrdiff_t>(rank + 1);
        const auto last = static_cast<std::ptrdiff_t>(rows);

#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t r = first; r < last; ++r) {
            auto& row = a[static_cast<std::size_t>(r)];
            if (row[c] == 0) continue;
            const Rational factor = row[c] / top[c];
            for (auto k : support) row[k] -= factor * top[k];
            row[c] = 0;
        }
        ++rank;
    }
    return rank;
}

RationalMatrix conjugation_sum(const RegularRep& rep, const RationalMatrix& p, Execution exec) {
    return exec == Execution::Serial ? conjugation_sum_serial(rep, p) : conjugation_sum_parallel(rep, p);
}

RationalMatrix corner_span(const RegularRep& rep, const RationalMatrix& p, Execution exec) {
    return exec == Execution::Serial ? corner_span_serial(rep, p) : corner_span_parallel(rep, p);
}

std::size_t rank(const RationalMatrix& m, Execution exec) {
    return exec == Execution::Serial ? rank_serial(m) : rank_parallel(m);
}

}  // namespace hecke::kernels
