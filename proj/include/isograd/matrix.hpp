#ifndef ISOGRAD_MATRIX_HPP
#define ISOGRAD_MATRIX_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isograd/error.hpp"
#include "isograd/laurent.hpp"

namespace isograd {

/// Dense matrix over K = C[z, z^-1]: small dimensions, sparse entries.
template <class S>
class MatrixK {
public:
    using Poly = LaurentPoly<S>;

    MatrixK() = default;
    MatrixK(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols)
    {
        require(rows >= 0 && cols >= 0, "shape", "negative matrix dimension");
    }

    static MatrixK identity(int n)
    {
        MatrixK m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = Poly(S(1));
        return m;
    }
    static MatrixK zero(int rows, int cols) { return MatrixK(rows, cols); }

    static MatrixK constant(const std::vector<std::vector<S>>& rows)
    {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        MatrixK m(r, c);
        for (int i = 0; i < r; ++i) {
            require(static_cast<int>(rows[i].size()) == c, "shape", "ragged matrix literal");
            for (int j = 0; j < c; ++j)
                m(i, j) = Poly(rows[i][j]);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Poly& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Poly& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& p : e_)
            if (!p.is_zero())
                return false;
        return true;
    }

    bool is_constant() const
    {
        for (const auto& p : e_)
            if (!p.supported_in(0, 0))
                return false;
        return true;
    }

    bool supported_in(int lo, int hi) const
    {
        for (const auto& p : e_)
            if (!p.supported_in(lo, hi))
                return false;
        return true;
    }

    std::optional<int> min_degree() const
    {
        std::optional<int> m;
        for (const auto& p : e_)
            if (!p.is_zero())
                m = m ? std::min(*m, p.min_degree()) : p.min_degree();
        return m;
    }
    std::optional<int> max_degree() const
    {
        std::optional<int> m;
        for (const auto& p : e_)
            if (!p.is_zero())
                m = m ? std::max(*m, p.max_degree()) : p.max_degree();
        return m;
    }

    // Constant matrix of the coefficients at degree d.
    MatrixK coeff_at(int d) const
    {
        MatrixK m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                m(i, j) = Poly((*this)(i, j).coeff(d));
        return m;
    }

    MatrixK shifted(int m) const
    {
        MatrixK r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = e_[i].shifted(m);
        return r;
    }

    MatrixK scaled(const S& s) const
    {
        MatrixK r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = e_[i].scaled(s);
        return r;
    }

    MatrixK scaled(const Poly& p) const
    {
        MatrixK r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = e_[i] * p;
        return r;
    }

    MatrixK block(int i0, int j0, int r, int c) const
    {
        require(i0 >= 0 && j0 >= 0 && i0 + r <= rows_ && j0 + c <= cols_, "shape", "block out of range");
        MatrixK m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    void set_block(int i0, int j0, const MatrixK& m)
    {
        require(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_, "shape", "block out of range");
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                (*this)(i0 + i, j0 + j) = m(i, j);
    }

    friend MatrixK operator+(const MatrixK& a, const MatrixK& b)
    {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape", "matrix sum shape mismatch");
        MatrixK r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < r.e_.size(); ++i)
            r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend MatrixK operator-(const MatrixK& a, const MatrixK& b)
    {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape", "matrix difference shape mismatch");
        MatrixK r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < r.e_.size(); ++i)
            r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend MatrixK operator*(const MatrixK& a, const MatrixK& b)
    {
        require(a.cols_ == b.rows_, "shape",
                "matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                    std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                    std::to_string(b.cols_));
        MatrixK r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Poly& aik = a(i, k);
                if (aik.is_zero())
                    continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        r(i, j) += aik * b(k, j);
            }
        return r;
    }
    MatrixK operator-() const
    {
        MatrixK r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = -e_[i];
        return r;
    }

    friend bool operator==(const MatrixK& a, const MatrixK& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const MatrixK& a, const MatrixK& b) { return !(a == b); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Poly> e_;
};

/// Entrywise sigma.
template <class S>
MatrixK<S> sigma_matrix(const DilationQ& q, const MatrixK<S>& m)
{
    MatrixK<S> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = sigma_apply(q, m(i, j));
    return r;
}

// Characteristic polynomial by the Berkowitz scheme: division-free, so it
// works over any commutative coefficient ring (quotient rings included).
// Returns ascending coefficients c[0..n] of det(lambda*I - A), c[n] = 1.
template <class S>
std::vector<LaurentPoly<S>> char_poly(const MatrixK<S>& a)
{
    using Poly = LaurentPoly<S>;
    require(a.rows() == a.cols(), "shape", "characteristic polynomial of a non-square matrix");
    const int n = a.rows();
    const Poly minus_one(S(-1));

    std::vector<Poly> v = {minus_one, a(0, 0)};
    for (int r = 2; r <= n; ++r) {
        // Principal r x r block, partitioned as [[M, C], [R, a_rr]].
        std::vector<Poly> col(r + 1);
        col[0] = minus_one;
        col[1] = a(r - 1, r - 1);
        std::vector<Poly> w(r - 1); // M^j * C
        for (int i = 0; i < r - 1; ++i)
            w[i] = a(i, r - 1);
        for (int j = 2; j <= r; ++j) {
            if (j > 2) {
                std::vector<Poly> w2(r - 1);
                for (int i = 0; i < r - 1; ++i)
                    for (int k = 0; k < r - 1; ++k)
                        w2[i] += a(i, k) * w[k];
                w = std::move(w2);
            }
            Poly dot;
            for (int k = 0; k < r - 1; ++k)
                dot += a(r - 1, k) * w[k];
            col[j] = dot;
        }
        // Lower-triangular Toeplitz product V <- T * V.
        std::vector<Poly> nv(r + 1);
        for (int s = 0; s <= r; ++s)
            for (int u = 0; u <= std::min(s, r - 1); ++u)
                nv[s] += col[s - u] * v[u];
        v = std::move(nv);
    }

    // v = (-1)^n * (descending coefficients); det(A) = v[n].
    std::vector<Poly> c(n + 1);
    const bool flip = (n % 2) != 0;
    for (int j = 0; j <= n; ++j)
        c[n - j] = flip ? -v[j] : v[j];
    return c;
}

template <class S>
LaurentPoly<S> det(const MatrixK<S>& a)
{
    const auto c = char_poly(a);
    const int n = a.rows();
    // det(A) = (-1)^n * c[0]
    return (n % 2) ? -c[0] : c[0];
}

/// Result of try_invert: `inverse` is engaged iff det = c*z^m with c a unit
/// of the coefficient ring; `det` is always the computed determinant.
template <class S>
struct Inversion {
    std::optional<MatrixK<S>> inverse;
    LaurentPoly<S> det;

    bool ok() const { return inverse.has_value(); }
};

// Inverse over K. det and adjugate come from the characteristic polynomial
// (Cayley-Hamilton), then the product A * A^-1 is checked against I before
// returning. A one-sided inverse over a commutative ring is two-sided.
template <class S>
Inversion<S> try_invert(const MatrixK<S>& a)
{
    using Poly = LaurentPoly<S>;
    require(a.rows() == a.cols(), "shape", "inverse of a non-square matrix");
    const int n = a.rows();

    const auto c = char_poly(a);
    Inversion<S> out;
    out.det = (n % 2) ? -c[0] : c[0];

    if (out.det.is_zero() || out.det.terms().size() != 1)
        return out; // unit of K means a single monomial
    const auto [m, lead] = *out.det.terms().begin();
    const auto lead_inv = lead.inverse();
    if (!lead_inv)
        return out;

    // Horner: B = A^{n-1} + c[n-1] A^{n-2} + ... + c[1] I, A*B = -c[0] I.
    MatrixK<S> b = MatrixK<S>::identity(n);
    for (int i = n - 1; i >= 1; --i) {
        b = a * b;
        for (int d = 0; d < n; ++d)
            b(d, d) += c[i];
    }
    const bool neg = (n % 2) == 0; // -1/c[0] = sign / det
    Poly det_inv = Poly::monomial(-m, neg ? -*lead_inv : *lead_inv);
    MatrixK<S> inv = b.scaled(det_inv);

    require(a * inv == MatrixK<S>::identity(n), "internal", "inverse verification failed");
    out.inverse = std::move(inv);
    return out;
}

template <class S>
std::string to_string(const MatrixK<S>& m)
{
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << to_string(m(i, j));
    }
    os << "]";
    return os.str();
}

} // namespace isograd

#endif
