#ifndef ISOGRAD_EXT_HPP
#define ISOGRAD_EXT_HPP

#include <utility>
#include <vector>

#include "isograd/diffmod.hpp"

namespace isograd {

/// Pure pair (sub, quot) with strictly increasing slopes, the two ends of
/// the extensions 0 -> sub -> R -> quot -> 0. Carries the Sylvester
/// operator t(X) = (sigma X) B - A X with A = z^mu_i A_i, B = z^mu_j A_j.
template <class S>
class SylvesterPair {
public:
    SylvesterPair(PureModule<S> sub, PureModule<S> quot)
        : sub_(std::move(sub)), quot_(std::move(quot))
    {
        require(sub_.q() == quot_.q() && sub_.ring() == quot_.ring(), "spec",
                "pair over different (q, ring)");
        require(sub_.slope() < quot_.slope(), "spec",
                "pair needs strictly increasing slopes");
    }

    const PureModule<S>& sub() const { return sub_; }
    const PureModule<S>& quot() const { return quot_; }
    const DilationQ& q() const { return sub_.q(); }
    const CoeffRing& ring() const { return sub_.ring(); }
    int gap() const { return quot_.slope() - sub_.slope(); }

    /// Canonical coset representatives live in degrees [mu_i, mu_j - 1].
    Window window() const { return Window{sub_.slope(), quot_.slope() - 1}; }

    friend bool operator==(const SylvesterPair& a, const SylvesterPair& b)
    {
        return a.sub_ == b.sub_ && a.quot_ == b.quot_;
    }
    friend bool operator!=(const SylvesterPair& a, const SylvesterPair& b) { return !(a == b); }

private:
    PureModule<S> sub_;
    PureModule<S> quot_;
};

/// t(X) = (sigma X) * z^mu_j A_j - z^mu_i A_i * X on r_i x r_j matrices.
template <class S>
MatrixK<S> t_apply(const SylvesterPair<S>& pair, const MatrixK<S>& x)
{
    require(x.rows() == pair.sub().rank() && x.cols() == pair.quot().rank(), "shape",
            "t operand must be rank(sub) x rank(quot)");
    return sigma_matrix(pair.q(), x) * pair.quot().matrix() - pair.sub().matrix() * x;
}

/// Extension class: representative block, its unique window-supported
/// reduction, and a certificate X with t(X) + reduced = rep.
template <class S>
class ExtClass {
public:
    ExtClass(SylvesterPair<S> pair, MatrixK<S> rep, MatrixK<S> reduced, MatrixK<S> certificate)
        : pair_(std::move(pair)),
          rep_(std::move(rep)),
          reduced_(std::move(reduced)),
          certificate_(std::move(certificate))
    {
        const Window w = pair_.window();
        require(reduced_.supported_in(w.lo, w.hi), "internal", "reduction left the window");
        require(t_apply(pair_, certificate_) + reduced_ == rep_, "internal",
                "extension certificate does not close");
    }

    const SylvesterPair<S>& pair() const { return pair_; }
    const MatrixK<S>& rep() const { return rep_; }
    const MatrixK<S>& reduced() const { return reduced_; }
    const MatrixK<S>& certificate() const { return certificate_; }

private:
    SylvesterPair<S> pair_;
    MatrixK<S> rep_;
    MatrixK<S> reduced_;
    MatrixK<S> certificate_;
};

// Canonical reduction into the window [mu_i, mu_j - 1]. Each high step
// clears the top degree d >= mu_j by subtracting t(q^-m U_d A_j^-1 z^m),
// m = d - mu_j, which moves that mass to d - gap; each low step clears the
// bottom degree d < mu_i via t(-A_i^-1 U_d z^(d - mu_i)), moving mass to
// d + gap. Steps of size exactly gap cannot jump across the window, so the
// loop terminates with everything inside it.
template <class S>
ExtClass<S> reduce(const SylvesterPair<S>& pair, const MatrixK<S>& u)
{
    const int ri = pair.sub().rank(), rj = pair.quot().rank();
    require(u.rows() == ri && u.cols() == rj, "shape",
            "representative must be rank(sub) x rank(quot)");

    const int mu_i = pair.sub().slope(), mu_j = pair.quot().slope();
    const MatrixK<S> ai_inv = *try_invert(pair.sub().leading()).inverse;
    const MatrixK<S> aj_inv = *try_invert(pair.quot().leading()).inverse;

    MatrixK<S> rest = u;
    MatrixK<S> cert(ri, rj);

    while (!rest.is_zero() && *rest.max_degree() >= mu_j) {
        const int d = *rest.max_degree();
        const int m = d - mu_j;
        MatrixK<S> step = (rest.coeff_at(d) * aj_inv).scaled(S(pair.q().pow(-m))).shifted(m);
        rest = rest - t_apply(pair, step);
        cert = cert + step;
    }
    while (!rest.is_zero() && *rest.min_degree() < mu_i) {
        const int d = *rest.min_degree();
        MatrixK<S> step = -(ai_inv * rest.coeff_at(d)).shifted(d - mu_i);
        rest = rest - t_apply(pair, step);
        cert = cert + step;
    }

    return ExtClass<S>(pair, u, std::move(rest), std::move(cert));
}

/// Monomial basis {z^d E_ab : mu_i <= d < mu_j} of the window; its size
/// r_i r_j (mu_j - mu_i) is the Ext rank delta_ij. Free by construction.
template <class S>
std::vector<MatrixK<S>> ext_basis(const SylvesterPair<S>& pair)
{
    std::vector<MatrixK<S>> basis;
    const Window w = pair.window();
    for (int d = w.lo; d <= w.hi; ++d)
        for (int a = 0; a < pair.sub().rank(); ++a)
            for (int b = 0; b < pair.quot().rank(); ++b) {
                MatrixK<S> e(pair.sub().rank(), pair.quot().rank());
                e(a, b) = LaurentPoly<S>::monomial(d, S(1));
                basis.push_back(std::move(e));
            }
    return basis;
}

template <class S>
int ext_rank(const SylvesterPair<S>& pair)
{
    return pair.sub().rank() * pair.quot().rank() * pair.gap();
}

/// Baer sum: class(U) + class(V) = class(U + V).
template <class S>
ExtClass<S> ext_add(const ExtClass<S>& a, const ExtClass<S>& b)
{
    require(a.pair() == b.pair(), "pair", "Baer sum of classes over different pairs");
    return reduce(a.pair(), a.rep() + b.rep());
}

/// External multiplication: class(U) |-> class(lambda U).
template <class S>
ExtClass<S> ext_scale(const S& lambda, const ExtClass<S>& a)
{
    return reduce(a.pair(), a.rep().scaled(lambda));
}

/// The module R_U of rank r_i + r_j with matrix [[z^mu_i A_i, U], [0, z^mu_j A_j]].
template <class S>
DiffModule<S> build_extension(const SylvesterPair<S>& pair, const MatrixK<S>& u)
{
    const int ri = pair.sub().rank(), rj = pair.quot().rank();
    require(u.rows() == ri && u.cols() == rj, "shape",
            "extension block must be rank(sub) x rank(quot)");
    MatrixK<S> c(ri + rj, ri + rj);
    c.set_block(0, 0, pair.sub().matrix());
    c.set_block(0, ri, u);
    c.set_block(ri, ri, pair.quot().matrix());
    return DiffModule<S>(pair.q(), pair.ring(), std::move(c),
                         typename DiffModule<S>::trusted_t{});
}

/// Split iff the reduced form vanishes; then F = I - [[0, X], [0, 0]] with
/// X the certificate conjugates C_U onto the direct sum, and that gauge is
/// re-verified here.
template <class S>
bool is_split(const ExtClass<S>& a)
{
    if (!a.reduced().is_zero())
        return false;
    const int ri = a.pair().sub().rank(), rj = a.pair().quot().rank();
    MatrixK<S> f = MatrixK<S>::identity(ri + rj);
    f.set_block(0, ri, -a.certificate());
    const auto r_u = build_extension(a.pair(), a.rep());
    const auto r_0 = build_extension(a.pair(), MatrixK<S>::zero(ri, rj));
    require(is_morphism(f, r_u, r_0), "internal", "splitting gauge failed to verify");
    return true;
}

} // namespace isograd

#endif
