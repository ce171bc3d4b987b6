// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Everything here is exact rational arithmetic; tolerances are zero.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "isograd/commands.hpp"
#include "isograd/random.hpp"

using namespace isograd;
namespace fs = std::filesystem;

namespace {

const DilationQ q2{Rat(2)};
const CoeffRing QQ = CoeffRing::rationals();

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

void criterion(int number, const std::string& label, bool pass, double seconds,
               double budget_seconds = 0.0)
{
    const bool in_budget = budget_seconds <= 0.0 || seconds < budget_seconds;
    const bool ok = pass && in_budget;
    if (!ok)
        ++failures;
    std::printf("[%s] criterion %d: %s (%.2fs%s)\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                seconds, budget_seconds > 0.0
                              ? (" / budget " + std::to_string((int)budget_seconds) + "s").c_str()
                              : "");
    for (const auto& n : notes)
        std::printf("       %s\n", n.c_str());
    notes.clear();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

GradedSpec<Rat> random_spec(Sampler& s, int max_k, int max_rank, int slope_lo, int slope_hi)
{
    const int k = s.uniform(1, max_k);
    std::vector<PureModule<Rat>> blocks;
    int next = slope_lo;
    for (int i = 0; i < k; ++i) {
        next = s.uniform(next, slope_hi - (k - 1 - i));
        blocks.emplace_back(q2, QQ, next, s.invertible_constant<Rat>(QQ, s.uniform(1, max_rank)));
        ++next;
    }
    return {q2, QQ, std::move(blocks)};
}

FilteredPresentation<Rat> random_presentation(Sampler& s, const GradedSpec<Rat>& spec, int d_lo,
                                              int d_hi)
{
    std::map<BlockKey, MatrixK<Rat>> blocks;
    for (int i = 0; i < spec.k(); ++i)
        for (int j = i + 1; j < spec.k(); ++j)
            blocks.emplace(BlockKey{i, j}, s.matrix<Rat>(QQ, spec.block(i).rank(),
                                                         spec.block(j).rank(), d_lo, d_hi));
    return FilteredPresentation<Rat>(spec, std::move(blocks));
}

UnipotentGauge<Rat> random_gauge(Sampler& s, const GradedSpec<Rat>& spec, int d_lo, int d_hi)
{
    std::map<BlockKey, MatrixK<Rat>> blocks;
    for (int i = 0; i < spec.k(); ++i)
        for (int j = i + 1; j < spec.k(); ++j)
            blocks.emplace(BlockKey{i, j}, s.matrix<Rat>(QQ, spec.block(i).rank(),
                                                         spec.block(j).rank(), d_lo, d_hi));
    return UnipotentGauge<Rat>(spec, std::move(blocks));
}

SylvesterPair<Rat> random_pair(Sampler& s, int max_rank, int slope_lo, int slope_hi)
{
    const int mu1 = s.uniform(slope_lo, slope_hi - 1);
    const int mu2 = s.uniform(mu1 + 1, slope_hi);
    return {PureModule<Rat>(q2, QQ, mu1, s.invertible_constant<Rat>(QQ, s.uniform(1, max_rank))),
            PureModule<Rat>(q2, QQ, mu2, s.invertible_constant<Rat>(QQ, s.uniform(1, max_rank)))};
}

// ---- criteria ---------------------------------------------------------------

// Dimension theorem at desk scale: free coordinates in normal forms count
// to the predicted dimension, and every window coordinate is realized.
bool criterion1()
{
    Sampler s(1001);
    bool ok = true;
    int specs = 0;
    long coords_checked = 0;
    while (specs < 20) {
        const auto spec = random_spec(s, 4, 3, -3, 6);
        ++specs;
        long slots = 0;
        for (int i = 0; i < spec.k(); ++i)
            for (int j = i + 1; j < spec.k(); ++j) {
                const Window w = spec.window(i, j);
                slots += static_cast<long>(w.size()) * spec.block(i).rank() *
                         spec.block(j).rank();
            }
        const long predicted = moduli_dimension(spec);
        ok = ok && slots == predicted;

        // surjectivity: every coordinate slot is reached by its own unit
        // presentation, which the sweep must fix
        for (int i = 0; i < spec.k() && ok; ++i)
            for (int j = i + 1; j < spec.k() && ok; ++j) {
                const Window w = spec.window(i, j);
                for (int d = w.lo; d <= w.hi && ok; ++d)
                    for (int a = 0; a < spec.block(i).rank() && ok; ++a)
                        for (int b = 0; b < spec.block(j).rank() && ok; ++b) {
                            MatrixK<Rat> u(spec.block(i).rank(), spec.block(j).rank());
                            u(a, b) = LaurentPoly<Rat>::monomial(d, s.nonzero_rat());
                            FilteredPresentation<Rat> p(spec, {{{i, j}, u}});
                            ok = normal_form(p).presentation == p;
                            ++coords_checked;
                        }
            }

        // randomized: window-supported presentations are fixed points
        if (spec.k() >= 2 && ok) {
            std::map<BlockKey, MatrixK<Rat>> blocks;
            for (int i = 0; i < spec.k(); ++i)
                for (int j = i + 1; j < spec.k(); ++j) {
                    const Window w = spec.window(i, j);
                    blocks.emplace(BlockKey{i, j},
                                   s.matrix<Rat>(QQ, spec.block(i).rank(),
                                                 spec.block(j).rank(), w.lo, w.hi, 0.8));
                }
            FilteredPresentation<Rat> p(spec, std::move(blocks));
            ok = normal_form(p).presentation == p;
        }
    }
    note(std::to_string(specs) + " specs, " + std::to_string(coords_checked) +
         " coordinate slots realized");
    return ok;
}

// Cokernel identification: reduce lands in the window with an exact
// certificate; window elements are fixed; t-images reduce to zero.
bool criterion2()
{
    Sampler s(1002);
    bool ok = true;
    for (int it = 0; it < 100 && ok; ++it) {
        const auto pair = random_pair(s, 3, -3, 6);
        const int ri = pair.sub().rank(), rj = pair.quot().rank();
        const Window w = pair.window();

        const auto u = s.matrix<Rat>(QQ, ri, rj, -6, 10);
        const auto cls = reduce(pair, u);
        ok = cls.reduced().supported_in(w.lo, w.hi) &&
             t_apply(pair, cls.certificate()) + cls.reduced() == u;

        const auto inside = s.matrix<Rat>(QQ, ri, rj, w.lo, w.hi, 0.8);
        ok = ok && reduce(pair, inside).reduced() == inside;

        const auto x = s.matrix<Rat>(QQ, ri, rj, -4, 4);
        ok = ok && reduce(pair, t_apply(pair, x)).reduced().is_zero();
    }
    note("100 random (pair, representative) draws");
    return ok;
}

// Hom vanishing / injectivity of t for distinct slopes.
bool criterion3()
{
    Sampler s(1003);
    bool ok = true;
    for (int it = 0; it < 50 && ok; ++it) {
        const auto pair = random_pair(s, 3, -3, 6);
        const int span = s.uniform(4, 8);
        // ker t = Hom(quot, sub) in matrix form; solve the degreewise system
        ok = hom_basis(pair.quot().as_diffmodule(), pair.sub().as_diffmodule(), -span, span)
                     .size() == 0 &&
             hom_basis(pair.sub().as_diffmodule(), pair.quot().as_diffmodule(), -span, span)
                     .size() == 0;

        MatrixK<Rat> x = s.matrix<Rat>(QQ, pair.sub().rank(), pair.quot().rank(), -4, 4);
        if (x.is_zero())
            x(0, 0) = LaurentPoly<Rat>::monomial(s.uniform(-2, 2), Rat(1));
        ok = ok && !t_apply(pair, x).is_zero();
    }
    note("50 random distinct-slope pure pairs, windows up to [-8, 8]");
    return ok;
}

// C-linearity of the reduction and of the induced module structure.
bool criterion4()
{
    Sampler s(1004);
    bool ok = true;
    for (int it = 0; it < 100 && ok; ++it) {
        const auto pair = random_pair(s, 3, -3, 6);
        const int ri = pair.sub().rank(), rj = pair.quot().rank();
        const auto u = s.matrix<Rat>(QQ, ri, rj, -5, 8);
        const auto v = s.matrix<Rat>(QQ, ri, rj, -5, 8);
        const Rat lam = s.rat();

        ok = reduce(pair, u.scaled(lam) + v).reduced() ==
             reduce(pair, u).reduced().scaled(lam) + reduce(pair, v).reduced();

        const auto cu = reduce(pair, u);
        const auto cv = reduce(pair, v);
        ok = ok && ext_add(cu, cv).reduced() == cu.reduced() + cv.reduced();
        ok = ok && ext_scale(lam, cu).reduced() == cu.reduced().scaled(lam);
        ok = ok && is_split(ext_add(cu, ext_scale(Rat(-1), cu)));
    }
    note("100 random triples (lambda, U, V)");
    return ok;
}

// Group action and quotient: normal forms are orbit invariants and
// equivalence witnesses verify as morphisms.
bool criterion5()
{
    Sampler s(1005);
    bool ok = true;
    int checks = 0;
    while (checks < 50 && ok) {
        const auto spec = random_spec(s, 3, 2, -3, 5);
        if (spec.k() < 2)
            continue;
        ++checks;
        const auto p = random_presentation(s, spec, -3, 4);
        const auto f = random_gauge(s, spec, -4, 4); // degree span <= 8
        const auto moved = act(f, p);
        ok = normal_form(moved).presentation == normal_form(p).presentation;

        const auto res = equivalent(p, moved);
        ok = ok && res.equivalent && res.witness &&
             is_morphism(res.witness->to_matrix(), assemble(p), assemble(moved));
    }
    note("50 random unipotent gauges, entry degrees within [-4, 4]");
    return ok;
}

// Long-exact-sequence shadow: the truncation fiber carries exactly the
// last-column Ext coordinates.
bool criterion6()
{
    Sampler s(1006);
    bool ok = true;
    int targets = 0;
    while (targets < 20 && ok) {
        const auto spec = random_spec(s, 4, 3, -3, 6);
        if (spec.k() < 2)
            continue;
        ++targets;
        const auto p = random_presentation(s, spec, -2, 5);

        long fiber_slots = 0;
        for (int i = 0; i < spec.k() - 1; ++i)
            fiber_slots += ext_rank(spec.pair(i, spec.k() - 1));
        ok = moduli_dimension(spec) - moduli_dimension(truncate(p).spec()) == fiber_slots;

        // truncation commutes with the sweep
        ok = ok && truncate(normal_form(p).presentation) ==
                       normal_form(truncate(p)).presentation;

        // the fiber coordinates are realized and separated: two fibers over
        // the same truncation differing in one last-column window slot stay
        // inequivalent
        const int k = spec.k();
        const int i = s.uniform(0, k - 2);
        const Window w = spec.window(i, k - 1);
        MatrixK<Rat> delta(spec.block(i).rank(), spec.block(k - 1).rank());
        delta(0, 0) = LaurentPoly<Rat>::monomial(w.lo, Rat(1));
        auto blocks = normal_form(p).presentation.blocks();
        auto shifted = blocks;
        shifted.at({i, k - 1}) = shifted.at({i, k - 1}) + delta;
        const FilteredPresentation<Rat> a(spec, std::move(blocks));
        const FilteredPresentation<Rat> b(spec, std::move(shifted));
        ok = ok && truncate(a) == truncate(b) && !equivalent(a, b).equivalent;
    }
    note("20 filtered targets with k >= 2");
    return ok;
}

// Base change to Q[t]/(t^2) and Q[t]/(t^3 - 2).
bool criterion7()
{
    Sampler s(1007);
    const CoeffRing dual = CoeffRing::quotient({Rat(0), Rat(0), Rat(1)});
    const CoeffRing cube = CoeffRing::quotient({Rat(-2), Rat(0), Rat(0), Rat(1)});
    const auto phi_dual = RingMorphism<Rat, QuotElem>::structural(dual);
    const auto phi_cube = RingMorphism<Rat, QuotElem>::structural(cube);

    bool ok = true;
    for (int it = 0; it < 25 && ok; ++it) {
        const auto pair = random_pair(s, 3, -3, 6);
        for (const auto* phi : {&phi_dual, &phi_cube}) {
            const auto pair2 = extend(*phi, pair);
            ok = ok && ext_rank(pair2) == ext_rank(pair) &&
                 ext_basis(pair2).size() == ext_basis(pair).size();
            const auto u = s.matrix<Rat>(QQ, pair.sub().rank(), pair.quot().rank(), -5, 8);
            ok = ok && extend(*phi, reduce(pair, u).reduced()) ==
                           reduce(pair2, extend(*phi, u)).reduced();
        }
    }

    // contraction: Q -> Q[t]/(t^2) -> Q[t]/(t^2) (t |-> -t), and the
    // retraction Q[t]/(t^2) -> Q at t = 0
    const QuotElem minus_t({Rat(0), Rat(-1)}, make_ctx(dual));
    const auto psi = RingMorphism<QuotElem, QuotElem>::on_generator(dual, dual, minus_t);
    const auto drop = RingMorphism<QuotElem, Rat>::on_generator(dual, QQ, Rat(0));
    const auto psi_phi = compose(psi, phi_dual);
    const auto drop_phi = compose(drop, phi_dual);
    for (int it = 0; it < 25 && ok; ++it) {
        const auto f = s.laurent<Rat>(QQ, -5, 5);
        ok = extend(psi_phi, f) == extend(psi, extend(phi_dual, f)) &&
             extend(drop_phi, f) == extend(drop, extend(phi_dual, f)) && extend(drop_phi, f) == f;
    }
    note("25 pairs x 2 target rings (50 reduction transports), 25 contraction draws");
    return ok;
}

// The k = 2 bridge: presentation equivalence is Ext-class equality, on an
// exhaustive coefficient grid.
bool criterion8()
{
    const GradedSpec<Rat> spec(q2, QQ,
                               {PureModule<Rat>(q2, QQ, 0, MatrixK<Rat>::identity(1)),
                                PureModule<Rat>(q2, QQ, 2, MatrixK<Rat>::identity(1))});
    const std::vector<Rat> grid = {Rat(-1), Rat(0), Rat(1), Rat(1, 2)};
    std::vector<FilteredPresentation<Rat>> points;
    for (const Rat& c0 : grid)
        for (const Rat& c1 : grid) {
            MatrixK<Rat> u(1, 1);
            u(0, 0) = LaurentPoly<Rat>::monomial(0, c0) + LaurentPoly<Rat>::monomial(1, c1);
            points.emplace_back(spec, std::map<BlockKey, MatrixK<Rat>>{{{0, 1}, u}});
        }

    bool ok = true;
    int agree = 0;
    for (const auto& a : points)
        for (const auto& b : points) {
            const bool same_class = k2_bridge(a).reduced() == k2_bridge(b).reduced();
            const bool equiv = equivalent(a, b).equivalent;
            ok = ok && same_class == equiv;
            agree += same_class == equiv;
        }
    note(std::to_string(agree) + "/256 ordered pairs agree");
    return ok;
}

// CLI conformance over the fixture corpus: byte round-trips, determinism,
// and certificate verification through the real binary.
bool criterion9()
{
    const fs::path fixtures{ISOGRAD_FIXTURES};
    bool ok = true;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    auto run = [](const std::string& args, std::string& out) {
        const std::string cmd = std::string(ISOGRAD_BIN) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe)
            return -1;
        char buf[4096];
        std::size_t n;
        out.clear();
        while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
            out.append(buf, n);
        const int status = pclose(pipe);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    int fixture_count = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        if (entry.path().extension() != ".json")
            continue;
        ++fixture_count;
        const std::string text = slurp(entry.path());
        const AnyDocument doc = parse_document_text(text);
        const std::string round =
            std::visit([](const auto& d) { return canon_dump(document_to_json(d)); }, doc);
        ok = ok && round == text;

        // determinism through the binary
        std::string out1, out2;
        const int c1 = run("dim " + entry.path().string(), out1);
        const int c2 = run("dim " + entry.path().string(), out2);
        ok = ok && c1 == 0 && c2 == 0 && out1 == out2;

        // every emitted certificate passes verify
        const fs::path tmp = fs::temp_directory_path() /
                             ("isograd_acc_" + entry.path().filename().string());
        std::string ignored, verdict;
        ok = ok && run("--output " + tmp.string() + " normalize " + entry.path().string(),
                       ignored) == 0;
        ok = ok && run("verify " + entry.path().string() + " " + tmp.string(), verdict) == 0;
        ok = ok && ojson::parse(verdict)["verified"] == true;
        std::string norm1, norm2;
        run("normalize " + entry.path().string(), norm1);
        run("normalize " + entry.path().string(), norm2);
        ok = ok && norm1 == norm2 && !norm1.empty();
        fs::remove(tmp);
    }
    ok = ok && fixture_count >= 5;
    note(std::to_string(fixture_count) + " fixtures exercised through the binary");
    return ok;
}

} // namespace

int main()
{
    {
        Timer t;
        const bool ok = criterion1();
        criterion(1, "dimension theorem at desk scale", ok, t.seconds(), 60.0);
    }
    {
        Timer t;
        const bool ok = criterion2();
        criterion(2, "cokernel identification with certificates", ok, t.seconds(), 30.0);
    }
    {
        Timer t;
        const bool ok = criterion3();
        criterion(3, "Hom vanishing / injectivity of t", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion4();
        criterion(4, "C-module structure of reduction and Baer sum", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion5();
        criterion(5, "group action and quotient", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion6();
        criterion(6, "long-exact-sequence shadow via truncation fibers", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion7();
        criterion(7, "base change to Q[t]/(t^2) and Q[t]/(t^3-2)", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion8();
        criterion(8, "k = 2 bridge on an exhaustive grid", ok, t.seconds());
    }
    {
        Timer t;
        const bool ok = criterion9();
        criterion(9, "CLI conformance on the fixture corpus", ok, t.seconds());
    }

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
