#ifndef ISOGRAD_RANDOM_HPP
#define ISOGRAD_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "isograd/matrix.hpp"
#include "isograd/ring.hpp"

namespace isograd {

/// Deterministic value sampler: fixed seeds keep the randomized library
/// checks (and the CLI reports built on them) byte-reproducible.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) // inclusive
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    Rat rat(int max_num = 3, int max_den = 2)
    {
        return Rat(uniform(-max_num, max_num), uniform(1, max_den));
    }

    Rat nonzero_rat(int max_num = 3, int max_den = 2)
    {
        for (;;) {
            Rat r = rat(max_num, max_den);
            if (!r.is_zero())
                return r;
        }
    }

    template <class S>
    S scalar(const CoeffRing& ring)
    {
        if constexpr (RingOps<S>::kind == CoeffRing::Kind::rationals) {
            return rat();
        } else {
            std::vector<Rat> coeffs(ring.degree());
            for (auto& c : coeffs)
                c = rat();
            return S(std::move(coeffs), make_ctx(ring));
        }
    }

    template <class S>
    LaurentPoly<S> laurent(const CoeffRing& ring, int d_lo, int d_hi, double density = 0.6)
    {
        LaurentPoly<S> f;
        for (int d = d_lo; d <= d_hi; ++d)
            if (chance(density))
                f.add_term(d, scalar<S>(ring));
        return f;
    }

    template <class S>
    MatrixK<S> matrix(const CoeffRing& ring, int rows, int cols, int d_lo, int d_hi,
                      double density = 0.6)
    {
        MatrixK<S> m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = laurent<S>(ring, d_lo, d_hi, density);
        return m;
    }

    // L * D * U with unit triangles and nonzero rational diagonal: always
    // invertible over the coefficient ring.
    template <class S>
    MatrixK<S> invertible_constant(const CoeffRing& ring, int n)
    {
        MatrixK<S> l = MatrixK<S>::identity(n);
        MatrixK<S> u = MatrixK<S>::identity(n);
        MatrixK<S> d(n, n);
        for (int i = 0; i < n; ++i) {
            d(i, i) = LaurentPoly<S>(S(nonzero_rat()));
            for (int j = 0; j < i; ++j)
                if (chance(0.5))
                    l(i, j) = LaurentPoly<S>(scalar<S>(ring));
            for (int j = i + 1; j < n; ++j)
                if (chance(0.5))
                    u(i, j) = LaurentPoly<S>(scalar<S>(ring));
        }
        return l * d * u;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace isograd

#endif
