#ifndef ISOGRAD_BASECHANGE_HPP
#define ISOGRAD_BASECHANGE_HPP

#include <string>
#include <utility>
#include <vector>

#include "isograd/moduli.hpp"
#include "isograd/random.hpp"

namespace isograd {

/// Ring morphism C -> C'. From the rationals only the structural map
/// exists; from Q[t]/(p) a map is determined by the image of t, well
/// defined exactly when p(t_image) = 0 in the target.
template <class SSrc, class SDst>
class RingMorphism {
public:
    static RingMorphism structural(CoeffRing target)
    {
        static_assert(RingOps<SSrc>::kind == CoeffRing::Kind::rationals,
                      "structural map starts from the rationals");
        return RingMorphism(CoeffRing::rationals(), std::move(target), SDst(0));
    }

    static RingMorphism on_generator(CoeffRing source, CoeffRing target, SDst t_image)
    {
        static_assert(RingOps<SSrc>::kind == CoeffRing::Kind::quotient,
                      "generator image needs a quotient source");
        require(!source.is_rationals(), "ring", "generator image needs a quotient source");
        RingMorphism phi(std::move(source), std::move(target), std::move(t_image));
        // well-definedness: the modulus must die at t_image
        SDst value(0);
        for (auto it = phi.source_.modulus.rbegin(); it != phi.source_.modulus.rend(); ++it)
            value = value * phi.t_image_ + SDst(*it);
        require(value.is_zero(), "ring", "t image does not satisfy the source modulus");
        return phi;
    }

    const CoeffRing& source() const { return source_; }
    const CoeffRing& target() const { return target_; }
    const SDst& t_image() const { return t_image_; }

    SDst apply(const SSrc& x) const
    {
        if constexpr (RingOps<SSrc>::kind == CoeffRing::Kind::rationals) {
            return SDst(x);
        } else {
            SDst value(0);
            const auto& coeffs = x.coeffs();
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                value = value * t_image_ + SDst(*it);
            return value;
        }
    }

private:
    RingMorphism(CoeffRing source, CoeffRing target, SDst t_image)
        : source_(std::move(source)), target_(std::move(target)), t_image_(std::move(t_image))
    {
        require_scalar_matches<SDst>(target_, "RingMorphism target");
    }

    CoeffRing source_;
    CoeffRing target_;
    SDst t_image_;
};

template <class S1, class S2, class S3>
RingMorphism<S1, S3> compose(const RingMorphism<S2, S3>& outer, const RingMorphism<S1, S2>& inner)
{
    require(inner.target() == outer.source(), "ring", "morphisms do not compose");
    if constexpr (RingOps<S1>::kind == CoeffRing::Kind::rationals)
        return RingMorphism<S1, S3>::structural(outer.target());
    else
        return RingMorphism<S1, S3>::on_generator(inner.source(), outer.target(),
                                                  outer.apply(inner.t_image()));
}

// ---- extension of scalars, coefficientwise --------------------------------

template <class S1, class S2>
LaurentPoly<S2> extend(const RingMorphism<S1, S2>& phi, const LaurentPoly<S1>& f)
{
    LaurentPoly<S2> r;
    for (const auto& [d, c] : f.terms())
        r.add_term(d, phi.apply(c));
    return r;
}

template <class S1, class S2>
MatrixK<S2> extend(const RingMorphism<S1, S2>& phi, const MatrixK<S1>& m)
{
    MatrixK<S2> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = extend(phi, m(i, j));
    return r;
}

template <class S1, class S2>
PureModule<S2> extend(const RingMorphism<S1, S2>& phi, const PureModule<S1>& p)
{
    require(p.ring() == phi.source(), "ring", "extend: module over a different source ring");
    return PureModule<S2>(p.q(), phi.target(), p.slope(), extend(phi, p.leading()));
}

template <class S1, class S2>
DiffModule<S2> extend(const RingMorphism<S1, S2>& phi, const DiffModule<S1>& m)
{
    require(m.ring() == phi.source(), "ring", "extend: module over a different source ring");
    // invertibility transports: phi maps the inverse of A to an inverse
    return DiffModule<S2>(m.q(), phi.target(), extend(phi, m.matrix()),
                          typename DiffModule<S2>::trusted_t{});
}

template <class S1, class S2>
SylvesterPair<S2> extend(const RingMorphism<S1, S2>& phi, const SylvesterPair<S1>& pair)
{
    return SylvesterPair<S2>(extend(phi, pair.sub()), extend(phi, pair.quot()));
}

template <class S1, class S2>
GradedSpec<S2> extend(const RingMorphism<S1, S2>& phi, const GradedSpec<S1>& spec)
{
    require(spec.ring() == phi.source(), "ring", "extend: spec over a different source ring");
    std::vector<PureModule<S2>> blocks;
    blocks.reserve(spec.blocks().size());
    for (const auto& b : spec.blocks())
        blocks.push_back(extend(phi, b));
    return GradedSpec<S2>(spec.q(), phi.target(), std::move(blocks));
}

template <class S1, class S2>
FilteredPresentation<S2> extend(const RingMorphism<S1, S2>& phi,
                                const FilteredPresentation<S1>& p)
{
    std::map<BlockKey, MatrixK<S2>> blocks;
    for (const auto& [key, m] : p.blocks())
        blocks.emplace(key, extend(phi, m));
    return FilteredPresentation<S2>(extend(phi, p.spec()), std::move(blocks));
}

template <class S1, class S2>
UnipotentGauge<S2> extend(const RingMorphism<S1, S2>& phi, const UnipotentGauge<S1>& g)
{
    std::map<BlockKey, MatrixK<S2>> blocks;
    for (const auto& [key, m] : g.blocks())
        blocks.emplace(key, extend(phi, m));
    return UnipotentGauge<S2>(extend(phi, g.spec()), std::move(blocks));
}

// The certificate identity t(X) + reduced = rep is preserved (phi fixes q
// and commutes with sigma), so the class re-verifies on construction.
template <class S1, class S2>
ExtClass<S2> extend(const RingMorphism<S1, S2>& phi, const ExtClass<S1>& cls)
{
    return ExtClass<S2>(extend(phi, cls.pair()), extend(phi, cls.rep()),
                        extend(phi, cls.reduced()), extend(phi, cls.certificate()));
}

// ---- verification reports --------------------------------------------------

struct CheckReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };

    std::vector<Item> items;

    void add(std::string name, bool pass, std::string detail = "")
    {
        items.push_back({std::move(name), pass, std::move(detail)});
    }

    bool all_pass() const
    {
        for (const auto& it : items)
            if (!it.pass)
                return false;
        return true;
    }
};

/// Concrete shadow of Ext base change being an isomorphism: equal window
/// ranks, the monomial basis maps to the monomial basis, and reduction
/// commutes with coefficient extension on random representatives.
template <class S1, class S2>
CheckReport check_ext_basechange(const RingMorphism<S1, S2>& phi, const SylvesterPair<S1>& pair,
                                 int samples = 12, std::uint64_t seed = 0x5eedu)
{
    CheckReport report;
    const SylvesterPair<S2> pair2 = extend(phi, pair);

    const auto basis1 = ext_basis(pair);
    const auto basis2 = ext_basis(pair2);
    report.add("delta-preserved", basis1.size() == basis2.size(),
               "source " + std::to_string(basis1.size()) + ", target " +
                   std::to_string(basis2.size()));

    bool basis_maps = basis1.size() == basis2.size();
    for (std::size_t i = 0; basis_maps && i < basis1.size(); ++i)
        basis_maps = extend(phi, basis1[i]) == basis2[i];
    report.add("basis-maps-to-basis", basis_maps);

    Sampler sampler(seed);
    bool commutes = true;
    const Window w = pair.window();
    for (int s = 0; s < samples && commutes; ++s) {
        const auto u = sampler.matrix<S1>(pair.ring(), pair.sub().rank(), pair.quot().rank(),
                                          w.lo - 3, w.hi + 3);
        commutes = extend(phi, reduce(pair, u).reduced()) == reduce(pair2, extend(phi, u)).reduced();
    }
    report.add("reduction-commutes", commutes, std::to_string(samples) + " samples");
    return report;
}

/// Shadow of the Hom base-change epimorphism: images of a source basis are
/// morphisms over the target and generate the target solution module in
/// the same window. Counts are reported, injectivity is not asserted.
template <class S1, class S2>
CheckReport check_hom_basechange(const RingMorphism<S1, S2>& phi, const DiffModule<S1>& m,
                                 const DiffModule<S1>& n, const Window& w)
{
    CheckReport report;
    const DiffModule<S2> m2 = extend(phi, m);
    const DiffModule<S2> n2 = extend(phi, n);

    const HomBasis<S1> src = hom_basis(m, n, w);
    const HomBasis<S2> tgt = hom_basis(m2, n2, w);

    bool images_ok = true;
    std::vector<MatrixK<S2>> images;
    for (const auto& f : src.generators) {
        images.push_back(extend(phi, f));
        images_ok = images_ok && is_morphism(images.back(), m2, n2);
    }
    report.add("images-are-morphisms", images_ok,
               std::to_string(src.generators.size()) + " source generators");

    // Surjectivity at this sample: the target-ring span of the images must
    // have the full Q-dimension of the target solution space.
    const CoeffRing& ring2 = phi.target();
    const int d = static_cast<int>(ring2.degree());
    std::vector<std::vector<Rat>> span_rows;
    const int n_entries = n.rank() * m.rank() * w.size();
    for (const auto& img : images) {
        MatrixK<S2> power = img;
        for (int a = 0; a < d; ++a) {
            if (a > 0) {
                MatrixK<S2> next(power.rows(), power.cols());
                for (int i = 0; i < power.rows(); ++i)
                    for (int j = 0; j < power.cols(); ++j)
                        for (const auto& [deg, c] : power(i, j).terms())
                            next(i, j).add_term(deg, RingOps<S2>::times_t(ring2, c));
                power = std::move(next);
            }
            std::vector<Rat> row;
            row.reserve(static_cast<std::size_t>(n_entries) * d);
            for (int deg = w.lo; deg <= w.hi; ++deg)
                for (int i = 0; i < power.rows(); ++i)
                    for (int j = 0; j < power.cols(); ++j)
                        for (const Rat& c : RingOps<S2>::coords(ring2, power(i, j).coeff(deg)))
                            row.push_back(c);
            span_rows.push_back(std::move(row));
        }
    }
    const int span_dim =
        span_rows.empty() ? 0 : rank(from_rows(span_rows, n_entries * d));
    const bool onto = span_dim == tgt.q_dimension;
    report.add("surjective-at-sample", onto,
               "image span " + std::to_string(span_dim) + " of " +
                   std::to_string(tgt.q_dimension) + " (Q-dimensions); target generators " +
                   std::to_string(tgt.generators.size()) +
                   (tgt.free ? " (free)" : " (not certified free)"));
    return report;
}

} // namespace isograd

#endif
