#ifndef ISOGRAD_LINSOLVE_HPP
#define ISOGRAD_LINSOLVE_HPP

#include <utility>
#include <vector>

#include "isograd/error.hpp"
#include "isograd/ring.hpp"

namespace isograd {

/// Dense matrix over Q for the coefficientwise linear systems. Row-major.
struct RatMat {
    int rows = 0, cols = 0;
    std::vector<Rat> e;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

    Rat& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
};

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(RatMat& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int i = row; i < m.rows; ++i)
            if (!m(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int j = 0; j < m.cols; ++j)
                std::swap(m(p, j), m(row, j));
        const Rat inv = *m(row, col).inverse();
        for (int j = col; j < m.cols; ++j)
            m(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col).is_zero())
                continue;
            const Rat f = m(i, col);
            for (int j = col; j < m.cols; ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

// Basis of {x : M x = 0}, one vector per free column, deterministic
// (free columns ascending, unit coefficient at the free position).
inline std::vector<std::vector<Rat>> nullspace(RatMat m)
{
    const std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots)
        is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rat> v(m.cols);
        v[f] = Rat(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// A linear system over the coefficient ring, realified over Q: each ring
// unknown contributes deg(ring) rational unknowns, each ring coefficient
// acts through its multiplication matrix.
template <class S>
class RingSystem {
public:
    RingSystem(CoeffRing ring, int ring_rows, int ring_cols)
        : ring_(std::move(ring)),
          d_(static_cast<int>(ring_.degree())),
          m_(ring_rows * d_, ring_cols * d_)
    {
    }

    const CoeffRing& ring() const { return ring_; }

    void add(int ring_row, int ring_col, const S& coeff)
    {
        // multiplication matrix: column a holds coords(coeff * t^a)
        S power = coeff;
        for (int a = 0; a < d_; ++a) {
            if (a > 0)
                power = RingOps<S>::times_t(ring_, power);
            const auto col = RingOps<S>::coords(ring_, power);
            for (int b = 0; b < d_; ++b)
                m_(ring_row * d_ + b, ring_col * d_ + a) += col[b];
        }
    }

    // Solutions of the homogeneous system as ring vectors (Q-basis of the
    // solution module).
    std::vector<std::vector<S>> solve_nullspace() const
    {
        std::vector<std::vector<S>> out;
        const std::size_t step = static_cast<std::size_t>(d_);
        for (const auto& v : nullspace(m_)) {
            std::vector<S> rv;
            rv.reserve(v.size() / step);
            for (std::size_t k = 0; k + step <= v.size(); k += step)
                rv.push_back(RingOps<S>::from_coords(
                    ring_, std::vector<Rat>(v.begin() + k, v.begin() + k + step)));
            out.push_back(std::move(rv));
        }
        return out;
    }

private:
    CoeffRing ring_;
    int d_;
    RatMat m_;
};

template <class S>
std::vector<Rat> flatten_coords(const CoeffRing& ring, const std::vector<S>& v)
{
    std::vector<Rat> out;
    out.reserve(v.size() * ring.degree());
    for (const S& x : v)
        for (const Rat& r : RingOps<S>::coords(ring, x))
            out.push_back(r);
    return out;
}

/// Generators of a module given by a Q-basis of its underlying space.
/// `free` holds when the greedy generators are a free basis.
template <class S>
struct ModuleGenerators {
    std::vector<std::vector<S>> generators;
    bool free = true;
};

inline RatMat from_rows(const std::vector<std::vector<Rat>>& rows, int width)
{
    RatMat m(static_cast<int>(rows.size()), width);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < width; ++j)
            m(i, j) = rows[i][j];
    return m;
}

// Greedy extraction: keep a vector iff it is outside the ring span of the
// vectors kept so far; the result is free iff the kept vectors are ring
// independent and their span has the full dimension.
template <class S>
ModuleGenerators<S> extract_generators(const CoeffRing& ring,
                                       const std::vector<std::vector<S>>& q_basis)
{
    ModuleGenerators<S> out;
    if (q_basis.empty())
        return out;

    const int d = static_cast<int>(ring.degree());
    const int width = static_cast<int>(q_basis[0].size()) * d;

    std::vector<std::vector<Rat>> span_rows; // Q-span of {t^a * generator}
    int current_rank = 0;
    for (const auto& v : q_basis) {
        span_rows.push_back(flatten_coords(ring, v));
        const int with_v = rank(from_rows(span_rows, width));
        span_rows.pop_back();
        if (with_v == current_rank)
            continue; // already in the ring span

        out.generators.push_back(v);
        std::vector<S> w = v;
        for (int a = 0; a < d; ++a) {
            if (a > 0)
                for (auto& x : w)
                    x = RingOps<S>::times_t(ring, x);
            span_rows.push_back(flatten_coords(ring, w));
        }
        current_rank = rank(from_rows(span_rows, width));
    }

    const int total = static_cast<int>(q_basis.size());
    out.free = current_rank == total &&
               current_rank == static_cast<int>(out.generators.size()) * d;
    return out;
}

} // namespace isograd

#endif
