#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isograd/diffmod.hpp"
#include "isograd/random.hpp"
#include "oracle.hpp"

using namespace isograd;

namespace {

const DilationQ q2{Rat(2)};
const CoeffRing QQ = CoeffRing::rationals();

LaurentPoly<Rat> zpow(int d, Rat c = Rat(1)) { return LaurentPoly<Rat>::monomial(d, c); }

DiffModule<Rat> scalar_module(Rat a0, int slope = 0)
{
    MatrixK<Rat> m(1, 1);
    m(0, 0) = zpow(slope, a0);
    return DiffModule<Rat>(q2, QQ, m);
}

MatrixK<Rat> random_invertible(Sampler& s, int n)
{
    MatrixK<Rat> d = MatrixK<Rat>::identity(n);
    for (int i = 0; i < n; ++i)
        d(i, i) = zpow(s.uniform(-1, 1), s.nonzero_rat());
    MatrixK<Rat> u = MatrixK<Rat>::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            u(i, j) = s.laurent<Rat>(QQ, -1, 1);
    return d * u;
}

} // namespace

TEST_CASE("module construction validates invertibility")
{
    MatrixK<Rat> bad(1, 1);
    bad(0, 0) = LaurentPoly<Rat>(Rat(1)) + zpow(1);
    CHECK_THROWS_AS(DiffModule<Rat>(q2, QQ, bad), Error);
    CHECK_NOTHROW(scalar_module(Rat(1)));
}

TEST_CASE("gauge transformation")
{
    const auto m = scalar_module(Rat(1));
    CHECK(gauge(MatrixK<Rat>::identity(1), m).matrix() == m.matrix());

    MatrixK<Rat> f(1, 1);
    f(0, 0) = zpow(1);
    // (sigma z) * 1 * z^-1 = 2
    CHECK(gauge(f, m).matrix() == MatrixK<Rat>::constant({{Rat(2)}}));

    MatrixK<Rat> not_inv(1, 1);
    not_inv(0, 0) = LaurentPoly<Rat>(Rat(1)) + zpow(1);
    CHECK_THROWS_WITH_AS(gauge(not_inv, m), doctest::Contains("gauge-not-invertible"), Error);
}

TEST_CASE("gauge is a left group action, randomized")
{
    Sampler s(5);
    for (int it = 0; it < 10; ++it) {
        const int n = 2;
        MatrixK<Rat> a = random_invertible(s, n);
        const DiffModule<Rat> m(q2, QQ, a);
        const auto f = random_invertible(s, n);
        const auto g = random_invertible(s, n);
        CHECK(gauge(f, gauge(g, m)).matrix() == gauge(f * g, m).matrix());
        CHECK(gauge(MatrixK<Rat>::identity(n), m).matrix() == m.matrix());
        // F is an isomorphism onto the gauged module
        CHECK(is_morphism(f, m, gauge(f, m)));
    }
}

TEST_CASE("morphism checks")
{
    const auto m1 = scalar_module(Rat(1));
    const auto m2 = scalar_module(Rat(2));

    CHECK(is_morphism(MatrixK<Rat>::identity(1), m1, m1));
    CHECK(is_morphism(MatrixK<Rat>::zero(1, 1), m1, m2));

    MatrixK<Rat> f(1, 1);
    f(0, 0) = zpow(1);
    CHECK(is_morphism(f, m1, m2)); // sigma(z)*1 = 2z = 2*z

    CHECK_THROWS_WITH_AS((void)is_morphism(MatrixK<Rat>(2, 1), m1, m2),
                         doctest::Contains("shape"), Error);
}

TEST_CASE("morphisms compose")
{
    // hom bases between scalar modules give the raw material
    const auto m1 = scalar_module(Rat(1));
    const auto m2 = scalar_module(Rat(2));
    const auto m4 = scalar_module(Rat(4));
    const auto f = hom_basis(m1, m2, -3, 3);
    const auto g = hom_basis(m2, m4, -3, 3);
    REQUIRE(f.size() == 1);
    REQUIRE(g.size() == 1);
    CHECK(is_morphism(g.generators[0] * f.generators[0], m1, m4));
}

TEST_CASE("hom bases match the independent oracle")
{
    SUBCASE("distinct slopes vanish") {
        const PureModule<Rat> p0(q2, QQ, 0, MatrixK<Rat>::identity(1));
        const PureModule<Rat> p2(q2, QQ, 2, MatrixK<Rat>::identity(1));
        for (const auto& w : {std::pair{-3, 3}, std::pair{-8, 8}, std::pair{0, 5}}) {
            CHECK(hom_basis(p0.as_diffmodule(), p2.as_diffmodule(), w.first, w.second).size() == 0);
            CHECK(oracle::hom(p0.as_diffmodule(), p2.as_diffmodule(), w.first, w.second).empty());
        }
    }
    SUBCASE("identity module") {
        const auto m = scalar_module(Rat(1));
        const auto hb = hom_basis(m, m, -3, 3);
        REQUIRE(hb.size() == 1);
        CHECK(hb.generators[0] == MatrixK<Rat>::identity(1));
        CHECK(oracle::hom(m, m, -3, 3).size() == 1);
    }
    SUBCASE("q^m = 2 forces m = 1") {
        const auto m1 = scalar_module(Rat(1));
        const auto m2 = scalar_module(Rat(2));
        const auto hb = hom_basis(m1, m2, -3, 3);
        REQUIRE(hb.size() == 1);
        MatrixK<Rat> zmat(1, 1);
        zmat(0, 0) = zpow(1);
        CHECK(hb.generators[0] == zmat);
    }
    SUBCASE("random pairs, including a filtered one") {
        Sampler s(17);
        for (int it = 0; it < 6; ++it) {
            const int nm = s.uniform(1, 2), nn = s.uniform(1, 2);
            const DiffModule<Rat> m(q2, QQ, random_invertible(s, nm));
            const DiffModule<Rat> n(q2, QQ, random_invertible(s, nn));
            const auto mine = hom_basis(m, n, -3, 3);
            const auto ref = oracle::hom(m, n, -3, 3);
            CHECK(mine.size() == ref.size());
            for (const auto& f : mine.generators) {
                CHECK(is_morphism(f, m, n));
            }
        }
    }
}

TEST_CASE("hom generators are linearly independent over Q")
{
    const auto m = scalar_module(Rat(1));
    MatrixK<Rat> a(2, 2);
    a(0, 0) = LaurentPoly<Rat>(Rat(1));
    a(1, 1) = LaurentPoly<Rat>(Rat(1));
    const DiffModule<Rat> n(q2, QQ, a);
    const auto hb = hom_basis(m, n, -2, 2);
    REQUIRE(hb.size() == 2);
    // flatten and rank-check
    std::vector<std::vector<Rat>> rows;
    for (const auto& f : hb.generators) {
        std::vector<Rat> row;
        for (int d = -2; d <= 2; ++d)
            for (int i = 0; i < f.rows(); ++i)
                for (int j = 0; j < f.cols(); ++j)
                    row.push_back(f(i, j).coeff(d));
        rows.push_back(std::move(row));
    }
    CHECK(rank(from_rows(rows, static_cast<int>(rows[0].size()))) == 2);
}

TEST_CASE("default hom window")
{
    const PureModule<Rat> p0(q2, QQ, 0, MatrixK<Rat>::identity(1));
    const PureModule<Rat> p2(q2, QQ, 2, MatrixK<Rat>::identity(1));
    CHECK(default_hom_window(p0, p2).empty());

    // equal slopes, identity parts: q^d = 1 only at d = 0
    CHECK(default_hom_window(p0, p0) == Window{0, 0});

    const PureModule<Rat> p4(q2, QQ, 0, MatrixK<Rat>::constant({{Rat(4)}}));
    const Window w = default_hom_window(p0, p4);
    CHECK(w.lo <= 2);
    CHECK(w.hi >= 2);
    const auto hb = hom_basis(p0.as_diffmodule(), p4.as_diffmodule(), w);
    REQUIRE(hb.size() == 1);
    CHECK(hb.generators[0](0, 0) == zpow(2));
}

TEST_CASE("default window survives lopsided constant parts")
{
    // eigenvalues of A_M0 are 1 and 8, so morphisms to the trivial module
    // live at degrees 0 and -3; the entry 800 skews row and column sums
    const MatrixK<Rat> skew = MatrixK<Rat>::constant({{Rat(1), Rat(0)}, {Rat(800), Rat(8)}});
    const PureModule<Rat> m(q2, QQ, 0, skew);
    const PureModule<Rat> n(q2, QQ, 0, MatrixK<Rat>::identity(2));
    const Window w = default_hom_window(m, n);
    CHECK(w.lo <= -3);
    const auto inside = hom_basis(m.as_diffmodule(), n.as_diffmodule(), w);
    CHECK(inside.size() == 4); // two parameters at each of d = -3 and d = 0
    const auto wider = hom_basis(m.as_diffmodule(), n.as_diffmodule(), w.lo - 4, w.hi + 4);
    CHECK(wider.size() == inside.size());
}

TEST_CASE("default window is sufficient: enlarging finds nothing new")
{
    Sampler s(29);
    for (int it = 0; it < 8; ++it) {
        const int r = s.uniform(1, 2);
        const int slope = s.uniform(-2, 2);
        const PureModule<Rat> m(q2, QQ, slope, s.invertible_constant<Rat>(QQ, r));
        const PureModule<Rat> n(q2, QQ, slope, s.invertible_constant<Rat>(QQ, r));
        const Window w = default_hom_window(m, n);
        const auto inside = hom_basis(m.as_diffmodule(), n.as_diffmodule(), w);
        const auto wider =
            hom_basis(m.as_diffmodule(), n.as_diffmodule(), w.lo - 3, w.hi + 3);
        CHECK(inside.size() == wider.size());
    }
}

TEST_CASE("pure modules of distinct slopes admit no morphisms, randomized")
{
    Sampler s(37);
    for (int it = 0; it < 10; ++it) {
        const int mu1 = s.uniform(-3, 2);
        int mu2 = s.uniform(-3, 3);
        if (mu2 == mu1)
            ++mu2;
        const PureModule<Rat> m(q2, QQ, mu1, s.invertible_constant<Rat>(QQ, s.uniform(1, 2)));
        const PureModule<Rat> n(q2, QQ, mu2, s.invertible_constant<Rat>(QQ, s.uniform(1, 2)));
        CHECK(hom_basis(m.as_diffmodule(), n.as_diffmodule(), -6, 6).size() == 0);
        CHECK(hom_basis(n.as_diffmodule(), m.as_diffmodule(), -6, 6).size() == 0);
    }
}

TEST_CASE("pure module accessors")
{
    const PureModule<Rat> p(q2, QQ, 2, MatrixK<Rat>::constant({{Rat(3)}}));
    CHECK(p.matrix()(0, 0) == zpow(2, Rat(3)));
    CHECK(p.as_diffmodule().rank() == 1);
    CHECK_THROWS_AS(PureModule<Rat>(q2, QQ, 0, MatrixK<Rat>::zero(1, 1)), Error);
    MatrixK<Rat> nonconst(1, 1);
    nonconst(0, 0) = zpow(1);
    CHECK_THROWS_AS(PureModule<Rat>(q2, QQ, 0, nonconst), Error);
}
