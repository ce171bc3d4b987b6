#ifndef ISOGRAD_DIFFMOD_HPP
#define ISOGRAD_DIFFMOD_HPP

#include <optional>
#include <utility>
#include <vector>

#include "isograd/linsolve.hpp"
#include "isograd/matrix.hpp"

namespace isograd {

/// Difference module (K^n, Phi_A) with Phi_A(X) = A^-1 sigma(X), presented
/// by its invertible matrix A.
template <class S>
class DiffModule {
public:
    DiffModule(DilationQ q, CoeffRing ring, MatrixK<S> a)
        : q_(std::move(q)), ring_(std::move(ring)), a_(std::move(a))
    {
        require_scalar_matches<S>(ring_, "DiffModule");
        require(a_.rows() == a_.cols() && a_.rows() >= 1, "shape", "module matrix must be square");
        require(try_invert(a_).ok(), "schema", "module matrix is not invertible over K");
    }

    // For matrices whose invertibility is structural (block triangular with
    // validated diagonal, gauge images, scalar extensions).
    struct trusted_t {};
    DiffModule(DilationQ q, CoeffRing ring, MatrixK<S> a, trusted_t)
        : q_(std::move(q)), ring_(std::move(ring)), a_(std::move(a))
    {
    }

    const DilationQ& q() const { return q_; }
    const CoeffRing& ring() const { return ring_; }
    int rank() const { return a_.rows(); }
    const MatrixK<S>& matrix() const { return a_; }

    friend bool operator==(const DiffModule& a, const DiffModule& b)
    {
        return a.q_ == b.q_ && a.ring_ == b.ring_ && a.a_ == b.a_;
    }

private:
    DilationQ q_;
    CoeffRing ring_;
    MatrixK<S> a_;
};

/// Pure (isoclinic) module of slope mu: A = z^mu * A0 with A0 constant and
/// invertible over the coefficient ring.
template <class S>
class PureModule {
public:
    PureModule(DilationQ q, CoeffRing ring, int slope, MatrixK<S> a0)
        : q_(std::move(q)), ring_(std::move(ring)), slope_(slope), a0_(std::move(a0))
    {
        require_scalar_matches<S>(ring_, "PureModule");
        require(a0_.rows() == a0_.cols() && a0_.rows() >= 1, "shape",
                "pure module matrix must be square");
        require(a0_.is_constant(), "schema", "pure module matrix must be constant");
        require(try_invert(a0_).ok(), "schema",
                "pure module matrix is not invertible over the coefficient ring");
    }

    const DilationQ& q() const { return q_; }
    const CoeffRing& ring() const { return ring_; }
    int slope() const { return slope_; }
    int rank() const { return a0_.rows(); }
    const MatrixK<S>& leading() const { return a0_; }

    MatrixK<S> matrix() const { return a0_.shifted(slope_); }

    DiffModule<S> as_diffmodule() const
    {
        return DiffModule<S>(q_, ring_, matrix(), typename DiffModule<S>::trusted_t{});
    }

    friend bool operator==(const PureModule& a, const PureModule& b)
    {
        return a.q_ == b.q_ && a.ring_ == b.ring_ && a.slope_ == b.slope_ && a.a0_ == b.a0_;
    }
    friend bool operator!=(const PureModule& a, const PureModule& b) { return !(a == b); }

private:
    DilationQ q_;
    CoeffRing ring_;
    int slope_;
    MatrixK<S> a0_;
};

/// Gauge transformation F[A] = (sigma F) A F^-1; the module it returns is
/// isomorphic to m via F itself.
template <class S>
DiffModule<S> gauge(const MatrixK<S>& f, const DiffModule<S>& m)
{
    require(f.rows() == m.rank() && f.cols() == m.rank(), "shape", "gauge matrix shape mismatch");
    const auto inv = try_invert(f);
    if (!inv.ok())
        fail("gauge-not-invertible", "gauge matrix has determinant " + to_string(inv.det));
    MatrixK<S> b = sigma_matrix(m.q(), f) * m.matrix() * *inv.inverse;
    return DiffModule<S>(m.q(), m.ring(), std::move(b), typename DiffModule<S>::trusted_t{});
}

/// (sigma F) A_M - A_N F; zero exactly when F is a morphism M -> N.
template <class S>
MatrixK<S> morphism_residual(const MatrixK<S>& f, const DiffModule<S>& m, const DiffModule<S>& n)
{
    require(m.q() == n.q() && m.ring() == n.ring(), "spec",
            "morphism between modules over different (q, ring)");
    require(f.rows() == n.rank() && f.cols() == m.rank(), "shape",
            "morphism matrix must be rank(N) x rank(M)");
    return sigma_matrix(m.q(), f) * m.matrix() - n.matrix() * f;
}

template <class S>
bool is_morphism(const MatrixK<S>& f, const DiffModule<S>& m, const DiffModule<S>& n)
{
    return morphism_residual(f, m, n).is_zero();
}

/// Hom(M, N) restricted to matrices supported in a degree window, as a
/// module over the coefficient ring. Over Q the generators are a basis;
/// over a quotient ring they generate, and `free` reports whether they
/// were certified as a free basis.
template <class S>
struct HomBasis {
    std::vector<MatrixK<S>> generators;
    bool free = true;
    int q_dimension = 0; // dimension of the solution space over Q

    std::size_t size() const { return generators.size(); }
};

// Coefficientwise linear system for (sigma F) A_M = A_N F over the window.
template <class S>
HomBasis<S> hom_basis(const DiffModule<S>& m, const DiffModule<S>& n, int d_lo, int d_hi)
{
    require(m.q() == n.q() && m.ring() == n.ring(), "spec",
            "hom between modules over different (q, ring)");
    HomBasis<S> out;
    if (d_lo > d_hi)
        return out;

    const int nm = m.rank(), nn = n.rank();
    const int win = d_hi - d_lo + 1;
    const int unknowns = win * nn * nm;
    auto uidx = [&](int d, int a, int b) { return ((d - d_lo) * nn + a) * nm + b; };

    int amin = *m.matrix().min_degree(), amax = *m.matrix().max_degree();
    amin = std::min(amin, *n.matrix().min_degree());
    amax = std::max(amax, *n.matrix().max_degree());
    const int e_lo = d_lo + amin, e_hi = d_hi + amax;
    const int span = e_hi - e_lo + 1;
    auto eidx = [&](int e, int i, int j) { return ((e - e_lo) * nn + i) * nm + j; };

    RingSystem<S> sys(m.ring(), span * nn * nm, unknowns);
    for (int d = d_lo; d <= d_hi; ++d) {
        const Rat qd = m.q().pow(d);
        for (int b = 0; b < nm; ++b)
            for (int j = 0; j < nm; ++j)
                for (const auto& [e, c] : m.matrix()(b, j).terms())
                    for (int a = 0; a < nn; ++a)
                        sys.add(eidx(d + e, a, j), uidx(d, a, b), c * S(qd));
        for (int a = 0; a < nm; ++a) // column index of F
            for (int i = 0; i < nn; ++i)
                for (int cidx = 0; cidx < nn; ++cidx)
                    for (const auto& [e, c] : n.matrix()(i, cidx).terms())
                        sys.add(eidx(d + e, i, a), uidx(d, cidx, a), -c);
    }

    auto vectors = sys.solve_nullspace();
    out.q_dimension = static_cast<int>(vectors.size());
    std::vector<std::vector<S>> chosen;
    if (m.ring().is_rationals()) {
        chosen = std::move(vectors);
    } else {
        auto gens = extract_generators(m.ring(), vectors);
        chosen = std::move(gens.generators);
        out.free = gens.free;
    }

    for (const auto& v : chosen) {
        MatrixK<S> f(nn, nm);
        for (int d = d_lo; d <= d_hi; ++d)
            for (int a = 0; a < nn; ++a)
                for (int b = 0; b < nm; ++b)
                    f(a, b).add_term(d, v[uidx(d, a, b)]);
        out.generators.push_back(std::move(f));
    }
    return out;
}

struct Window {
    int lo = 0, hi = -1; // default: empty

    bool empty() const { return lo > hi; }
    int size() const { return empty() ? 0 : hi - lo + 1; }

    friend bool operator==(const Window& a, const Window& b)
    {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

namespace detail {

// Infinity norm of the d x d rational multiplication matrix of a scalar.
template <class S>
Rat mult_matrix_norm(const CoeffRing& ring, const S& c)
{
    const int d = static_cast<int>(ring.degree());
    S power = c;
    std::vector<Rat> abs_row_sums(d);
    for (int a = 0; a < d; ++a) {
        if (a > 0)
            power = RingOps<S>::times_t(ring, power);
        const auto col = RingOps<S>::coords(ring, power);
        for (int b = 0; b < d; ++b)
            abs_row_sums[b] += col[b].abs();
    }
    Rat m(0);
    for (const Rat& r : abs_row_sums)
        if (r > m)
            m = r;
    return m;
}

// Bounds for the infinity norm of Y |-> A Y (row sums of entry norms) and
// of Y |-> Y B (column sums: the output entry (a, j) gathers column j).
template <class S>
Rat left_mult_norm(const CoeffRing& ring, const MatrixK<S>& constant)
{
    Rat best(0);
    for (int i = 0; i < constant.rows(); ++i) {
        Rat sum(0);
        for (int j = 0; j < constant.cols(); ++j)
            sum += mult_matrix_norm(ring, constant(i, j).coeff(0));
        if (sum > best)
            best = sum;
    }
    return best;
}

template <class S>
Rat right_mult_norm(const CoeffRing& ring, const MatrixK<S>& constant)
{
    Rat best(0);
    for (int j = 0; j < constant.cols(); ++j) {
        Rat sum(0);
        for (int i = 0; i < constant.rows(); ++i)
            sum += mult_matrix_norm(ring, constant(i, j).coeff(0));
        if (sum > best)
            best = sum;
    }
    return best;
}

} // namespace detail

/// A window guaranteed to contain the support of every Laurent morphism
/// between two pure modules. Distinct slopes admit none (empty window).
/// For equal slopes, a degree-d coefficient can survive only if q^d is an
/// eigenvalue of Y |-> A_N0 Y A_M0^-1, so |q|^|d| is bounded by the norms
/// of that operator and of its inverse.
template <class S>
Window default_hom_window(const PureModule<S>& m, const PureModule<S>& n)
{
    require(m.q() == n.q() && m.ring() == n.ring(), "spec",
            "hom window for modules over different (q, ring)");
    if (m.slope() != n.slope())
        return Window{};

    const CoeffRing& ring = m.ring();
    const MatrixK<S> am_inv = *try_invert(m.leading()).inverse;
    const MatrixK<S> an_inv = *try_invert(n.leading()).inverse;

    // T(Y) = A_N0 Y A_M0^-1, so q^d in spec(T); bound |q^d| through the
    // factored operator norms, and |q^-d| through T^-1 the same way.
    const Rat fwd = detail::left_mult_norm(ring, n.leading()) *
                    detail::right_mult_norm(ring, am_inv);
    const Rat bwd = detail::left_mult_norm(ring, an_inv) *
                    detail::right_mult_norm(ring, m.leading());
    Rat bound = fwd > bwd ? fwd : bwd;
    if (bound < Rat(1))
        bound = Rat(1);

    Rat qa = m.q().value().abs();
    if (qa < Rat(1))
        qa = *qa.inverse();
    int half = 0;
    Rat power = qa;
    while (power <= bound) {
        ++half;
        power *= qa;
    }
    return Window{-half, half};
}

template <class S>
HomBasis<S> hom_basis(const DiffModule<S>& m, const DiffModule<S>& n, const Window& w)
{
    return hom_basis(m, n, w.lo, w.hi);
}

} // namespace isograd

#endif
