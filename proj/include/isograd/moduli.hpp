#ifndef ISOGRAD_MODULI_HPP
#define ISOGRAD_MODULI_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "isograd/ext.hpp"

namespace isograd {

/// The fixed graded part P_1 + ... + P_k, slopes strictly increasing.
template <class S>
class GradedSpec {
public:
    GradedSpec(DilationQ q, CoeffRing ring, std::vector<PureModule<S>> blocks)
        : q_(std::move(q)), ring_(std::move(ring)), blocks_(std::move(blocks))
    {
        require(!blocks_.empty(), "schema", "graded spec needs at least one block");
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            require(blocks_[i].q() == q_ && blocks_[i].ring() == ring_, "spec",
                    "graded block over a different (q, ring)");
            require(i == 0 || blocks_[i - 1].slope() < blocks_[i].slope(), "schema",
                    "graded slopes must increase strictly");
        }
    }

    const DilationQ& q() const { return q_; }
    const CoeffRing& ring() const { return ring_; }
    int k() const { return static_cast<int>(blocks_.size()); }
    const PureModule<S>& block(int i) const { return blocks_[i]; }
    const std::vector<PureModule<S>>& blocks() const { return blocks_; }

    int total_rank() const
    {
        int n = 0;
        for (const auto& b : blocks_)
            n += b.rank();
        return n;
    }

    int offset(int i) const // first row of block i in the assembled matrix
    {
        int o = 0;
        for (int s = 0; s < i; ++s)
            o += blocks_[s].rank();
        return o;
    }

    SylvesterPair<S> pair(int i, int j) const
    {
        require(0 <= i && i < j && j < k(), "shape", "pair indices out of range");
        return SylvesterPair<S>(blocks_[i], blocks_[j]);
    }

    Window window(int i, int j) const
    {
        return Window{blocks_[i].slope(), blocks_[j].slope() - 1};
    }

    friend bool operator==(const GradedSpec& a, const GradedSpec& b)
    {
        return a.q_ == b.q_ && a.ring_ == b.ring_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const GradedSpec& a, const GradedSpec& b) { return !(a == b); }

private:
    DilationQ q_;
    CoeffRing ring_;
    std::vector<PureModule<S>> blocks_;
};

using BlockKey = std::pair<int, int>;

/// A point of the classification problem: a graded spec plus the strict
/// upper blocks U_ij of A_U. Every i < j block is stored (zero included).
template <class S>
class FilteredPresentation {
public:
    explicit FilteredPresentation(GradedSpec<S> spec,
                                  std::map<BlockKey, MatrixK<S>> blocks = {})
        : spec_(std::move(spec))
    {
        for (int i = 0; i < spec_.k(); ++i)
            for (int j = i + 1; j < spec_.k(); ++j) {
                auto it = blocks.find({i, j});
                if (it == blocks.end()) {
                    u_.emplace(BlockKey{i, j},
                               MatrixK<S>::zero(spec_.block(i).rank(), spec_.block(j).rank()));
                } else {
                    require(it->second.rows() == spec_.block(i).rank() &&
                                it->second.cols() == spec_.block(j).rank(),
                            "shape", "presentation block shape mismatch");
                    u_.emplace(BlockKey{i, j}, std::move(it->second));
                    blocks.erase(it);
                }
            }
        require(blocks.empty(), "shape", "presentation block with out-of-range indices");
    }

    const GradedSpec<S>& spec() const { return spec_; }
    const MatrixK<S>& block(int i, int j) const { return u_.at({i, j}); }
    const std::map<BlockKey, MatrixK<S>>& blocks() const { return u_; }

    friend bool operator==(const FilteredPresentation& a, const FilteredPresentation& b)
    {
        return a.spec_ == b.spec_ && a.u_ == b.u_;
    }
    friend bool operator!=(const FilteredPresentation& a, const FilteredPresentation& b)
    {
        return !(a == b);
    }

private:
    GradedSpec<S> spec_;
    std::map<BlockKey, MatrixK<S>> u_;
};

/// Element of the block-unipotent gauge group G(K): identity diagonal
/// blocks, arbitrary strict upper blocks. Always invertible over K.
template <class S>
class UnipotentGauge {
public:
    explicit UnipotentGauge(GradedSpec<S> spec, std::map<BlockKey, MatrixK<S>> blocks = {})
        : spec_(std::move(spec))
    {
        for (int i = 0; i < spec_.k(); ++i)
            for (int j = i + 1; j < spec_.k(); ++j) {
                auto it = blocks.find({i, j});
                if (it == blocks.end()) {
                    x_.emplace(BlockKey{i, j},
                               MatrixK<S>::zero(spec_.block(i).rank(), spec_.block(j).rank()));
                } else {
                    require(it->second.rows() == spec_.block(i).rank() &&
                                it->second.cols() == spec_.block(j).rank(),
                            "shape", "gauge block shape mismatch");
                    x_.emplace(BlockKey{i, j}, std::move(it->second));
                    blocks.erase(it);
                }
            }
        require(blocks.empty(), "shape", "gauge block with out-of-range indices");
    }

    static UnipotentGauge identity(GradedSpec<S> spec) { return UnipotentGauge(std::move(spec)); }

    // Slice a full matrix; diagonal blocks must be identities, lower zero.
    static UnipotentGauge from_matrix(const GradedSpec<S>& spec, const MatrixK<S>& f)
    {
        const int n = spec.total_rank();
        require(f.rows() == n && f.cols() == n, "shape", "gauge matrix shape mismatch");
        std::map<BlockKey, MatrixK<S>> blocks;
        for (int i = 0; i < spec.k(); ++i) {
            const int oi = spec.offset(i), ri = spec.block(i).rank();
            require(f.block(oi, oi, ri, ri) == MatrixK<S>::identity(ri), "shape",
                    "gauge diagonal block is not the identity");
            for (int j = 0; j < i; ++j) {
                const int oj = spec.offset(j), rj = spec.block(j).rank();
                require(f.block(oi, oj, ri, rj).is_zero(), "shape",
                        "gauge matrix is not block upper triangular");
            }
            for (int j = i + 1; j < spec.k(); ++j) {
                const int oj = spec.offset(j), rj = spec.block(j).rank();
                blocks.emplace(BlockKey{i, j}, f.block(oi, oj, ri, rj));
            }
        }
        return UnipotentGauge(spec, std::move(blocks));
    }

    const GradedSpec<S>& spec() const { return spec_; }
    const MatrixK<S>& block(int i, int j) const { return x_.at({i, j}); }
    const std::map<BlockKey, MatrixK<S>>& blocks() const { return x_; }

    MatrixK<S> to_matrix() const
    {
        MatrixK<S> f = MatrixK<S>::identity(spec_.total_rank());
        for (const auto& [key, x] : x_)
            f.set_block(spec_.offset(key.first), spec_.offset(key.second), x);
        return f;
    }

    // (I + N)^-1 = I - N + N^2 - ..., N nilpotent of order <= k.
    UnipotentGauge inverse() const
    {
        const int n = spec_.total_rank();
        MatrixK<S> nil = to_matrix() - MatrixK<S>::identity(n);
        MatrixK<S> inv = MatrixK<S>::identity(n);
        MatrixK<S> power = MatrixK<S>::identity(n);
        for (int p = 1; p < spec_.k(); ++p) {
            power = power * nil;
            inv = (p % 2) ? inv - power : inv + power;
        }
        return from_matrix(spec_, inv);
    }

    friend UnipotentGauge operator*(const UnipotentGauge& a, const UnipotentGauge& b)
    {
        require(a.spec_ == b.spec_, "spec", "gauge product over different specs");
        return from_matrix(a.spec_, a.to_matrix() * b.to_matrix());
    }

    friend bool operator==(const UnipotentGauge& a, const UnipotentGauge& b)
    {
        return a.spec_ == b.spec_ && a.x_ == b.x_;
    }

private:
    GradedSpec<S> spec_;
    std::map<BlockKey, MatrixK<S>> x_;
};

/// Block upper triangular A_U with diagonal z^mu_i A_i.
template <class S>
DiffModule<S> assemble(const FilteredPresentation<S>& p)
{
    const GradedSpec<S>& spec = p.spec();
    MatrixK<S> a(spec.total_rank(), spec.total_rank());
    for (int i = 0; i < spec.k(); ++i)
        a.set_block(spec.offset(i), spec.offset(i), spec.block(i).matrix());
    for (const auto& [key, u] : p.blocks())
        a.set_block(spec.offset(key.first), spec.offset(key.second), u);
    return DiffModule<S>(spec.q(), spec.ring(), std::move(a),
                         typename DiffModule<S>::trusted_t{});
}

/// Left action of G(K): the unique V with A_V = (sigma F) A_U F^-1. The
/// diagonal blocks come back unchanged, which is re-checked on exit.
template <class S>
FilteredPresentation<S> act(const UnipotentGauge<S>& f, const FilteredPresentation<S>& p)
{
    const GradedSpec<S>& spec = p.spec();
    require(f.spec() == spec, "spec", "gauge and presentation specs differ");

    const MatrixK<S> ff = f.to_matrix();
    const MatrixK<S> a_v =
        sigma_matrix(spec.q(), ff) * assemble(p).matrix() * f.inverse().to_matrix();

    std::map<BlockKey, MatrixK<S>> blocks;
    for (int i = 0; i < spec.k(); ++i) {
        const int oi = spec.offset(i), ri = spec.block(i).rank();
        require(a_v.block(oi, oi, ri, ri) == spec.block(i).matrix(), "internal",
                "gauge action moved a diagonal block");
        for (int j = 0; j < i; ++j)
            require(a_v.block(oi, spec.offset(j), ri, spec.block(j).rank()).is_zero(),
                    "internal", "gauge action left the triangular form");
        for (int j = i + 1; j < spec.k(); ++j)
            blocks.emplace(BlockKey{i, j},
                           a_v.block(oi, spec.offset(j), ri, spec.block(j).rank()));
    }
    return FilteredPresentation<S>(spec, std::move(blocks));
}

/// Window-supported representative plus the gauge that reaches it.
template <class S>
struct NormalForm {
    FilteredPresentation<S> presentation;
    UnipotentGauge<S> gauge;
};

enum class SweepOrder { left_to_right, right_to_left };

// Devissage sweep over super-diagonals s = 1, ..., k-1. Reducing block
// (i, i+s) with certificate X applies F = I - X E^(i,i+s), whose only other
// effect is on blocks of strictly larger offset:
//   U_il -= sigma(X) U_jl (l > j),   U_aj += U_ai X (a < i),
// so earlier stages stay window-supported and the order inside one stage
// does not matter (asserted by tests both ways).
template <class S>
NormalForm<S> normal_form(const FilteredPresentation<S>& p,
                          SweepOrder order = SweepOrder::left_to_right)
{
    const GradedSpec<S>& spec = p.spec();
    const int k = spec.k();

    std::map<BlockKey, MatrixK<S>> u = p.blocks();
    MatrixK<S> f_total = MatrixK<S>::identity(spec.total_rank());

    for (int s = 1; s < k; ++s) {
        std::vector<int> starts;
        for (int i = 0; i + s < k; ++i)
            starts.push_back(i);
        if (order == SweepOrder::right_to_left)
            std::reverse(starts.begin(), starts.end());

        for (int i : starts) {
            const int j = i + s;
            const ExtClass<S> cls = reduce(spec.pair(i, j), u.at({i, j}));
            const MatrixK<S>& x = cls.certificate();
            u.at({i, j}) = cls.reduced();
            const MatrixK<S> sx = sigma_matrix(spec.q(), x);
            for (int l = j + 1; l < k; ++l)
                u.at({i, l}) = u.at({i, l}) - sx * u.at({j, l});
            for (int a = 0; a < i; ++a)
                u.at({a, j}) = u.at({a, j}) + u.at({a, i}) * x;

            MatrixK<S> f_step = MatrixK<S>::identity(spec.total_rank());
            f_step.set_block(spec.offset(i), spec.offset(j), -x);
            f_total = f_step * f_total;
        }
        for (int i = 0; i + s < k; ++i) {
            const Window w = spec.window(i, i + s);
            require(u.at({i, i + s}).supported_in(w.lo, w.hi), "internal",
                    "stage left a block outside its window");
        }
    }

    NormalForm<S> nf{FilteredPresentation<S>(spec, std::move(u)),
                     UnipotentGauge<S>::from_matrix(spec, f_total)};
    // certificate: F[A_in] = A_out, checked without inverting F
    require(sigma_matrix(spec.q(), f_total) * assemble(p).matrix() ==
                assemble(nf.presentation).matrix() * f_total,
            "internal", "normal form gauge certificate failed");
    return nf;
}

template <class S>
struct EquivalenceResult {
    bool equivalent = false;
    std::optional<UnipotentGauge<S>> witness;
};

/// Same G(K)-orbit iff the normal forms coincide; a verified witness gauge
/// comes back with a positive answer.
template <class S>
EquivalenceResult<S> equivalent(const FilteredPresentation<S>& p,
                                const FilteredPresentation<S>& p2)
{
    require(p.spec() == p2.spec(), "spec", "equivalence of presentations over different specs");
    const NormalForm<S> a = normal_form(p);
    const NormalForm<S> b = normal_form(p2);
    if (a.presentation != b.presentation)
        return {};

    UnipotentGauge<S> w = b.gauge.inverse() * a.gauge;
    require(is_morphism(w.to_matrix(), assemble(p), assemble(p2)), "internal",
            "equivalence witness failed to verify");
    return {true, std::move(w)};
}

/// dim F(P_1, ..., P_k) = sum of r_i r_j (mu_j - mu_i) over i < j.
template <class S>
long moduli_dimension(const GradedSpec<S>& spec)
{
    long dim = 0;
    for (int i = 0; i < spec.k(); ++i)
        for (int j = i + 1; j < spec.k(); ++j)
            dim += static_cast<long>(ext_rank(spec.pair(i, j)));
    return dim;
}

/// Forget the last graded piece and every block pointing into it.
template <class S>
FilteredPresentation<S> truncate(const FilteredPresentation<S>& p)
{
    const GradedSpec<S>& spec = p.spec();
    require(spec.k() >= 2, "underflow", "truncate needs k >= 2");

    std::vector<PureModule<S>> blocks(spec.blocks().begin(), spec.blocks().end() - 1);
    GradedSpec<S> sub(spec.q(), spec.ring(), std::move(blocks));
    std::map<BlockKey, MatrixK<S>> u;
    for (const auto& [key, m] : p.blocks())
        if (key.second < spec.k() - 1)
            u.emplace(key, m);
    return FilteredPresentation<S>(std::move(sub), std::move(u));
}

/// For k = 2 the classification set is Ext(P_2, P_1) itself.
template <class S>
ExtClass<S> k2_bridge(const FilteredPresentation<S>& p)
{
    require(p.spec().k() == 2, "spec", "k2_bridge needs exactly two graded blocks");
    return reduce(p.spec().pair(0, 1), p.block(0, 1));
}

} // namespace isograd

#endif
