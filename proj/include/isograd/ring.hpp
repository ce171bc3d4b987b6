#ifndef ISOGRAD_RING_HPP
#define ISOGRAD_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isograd/error.hpp"
#include "isograd/rational.hpp"

namespace isograd {

namespace qpoly {

// Dense polynomials over Q with ascending coefficients, used for quotient
// ring moduli and residues. Canonical form has no trailing zeros.

inline void trim(std::vector<Rat>& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

inline int degree(const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; }

inline std::vector<Rat> add(const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    std::vector<Rat> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size())
            r[i] += a[i];
        if (i < b.size())
            r[i] += b[i];
    }
    trim(r);
    return r;
}

inline std::vector<Rat> scale(const std::vector<Rat>& a, const Rat& c)
{
    if (c.is_zero())
        return {};
    std::vector<Rat> r = a;
    for (auto& x : r)
        x *= c;
    return r;
}

inline std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<Rat> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Remainder of a modulo monic m.
inline std::vector<Rat> mod_monic(std::vector<Rat> a, const std::vector<Rat>& m)
{
    const int dm = degree(m);
    trim(a);
    while (degree(a) >= dm) {
        const int da = degree(a);
        const Rat lead = a.back();
        for (int i = 0; i < dm; ++i)
            a[da - dm + i] -= lead * m[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Extended Euclid against a monic modulus: returns (g, s) with g monic,
// g = gcd(a, m) and s*a = g (mod m).
inline std::pair<std::vector<Rat>, std::vector<Rat>> bezout_mod(const std::vector<Rat>& a,
                                                                const std::vector<Rat>& m)
{
    std::vector<Rat> r0 = m, r1 = mod_monic(a, m);
    std::vector<Rat> s0 = {}, s1 = {Rat(1)};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        std::vector<Rat> q;
        std::vector<Rat> r2 = r0;
        const int d1 = degree(r1);
        const Rat inv_lead = *r1.back().inverse();
        while (degree(r2) >= d1) {
            const int shift = degree(r2) - d1;
            const Rat c = r2.back() * inv_lead;
            if (static_cast<int>(q.size()) <= shift)
                q.resize(shift + 1);
            q[shift] += c;
            for (int i = 0; i <= d1; ++i)
                r2[shift + i] -= c * r1[i];
            trim(r2);
        }
        std::vector<Rat> s2 = add(s0, scale(mul(q, s1), Rat(-1)));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!r0.empty() && !r0.back().is_one()) {
        const Rat inv = *r0.back().inverse();
        r0 = scale(r0, inv);
        s0 = scale(s0, inv);
    }
    return {r0, mod_monic(s0, m)};
}

} // namespace qpoly

/// Coefficient ring descriptor: the rationals, or Q[t]/(p(t)) with the
/// modulus stored monic.
struct CoeffRing {
    enum class Kind { rationals, quotient };

    Kind kind = Kind::rationals;
    std::vector<Rat> modulus; // monic, ascending, degree >= 1; empty for Q

    static CoeffRing rationals() { return {}; }

    static CoeffRing quotient(std::vector<Rat> p)
    {
        qpoly::trim(p);
        require(qpoly::degree(p) >= 1, "schema", "quotient modulus must have degree >= 1");
        if (!p.back().is_one()) {
            const Rat inv = *p.back().inverse();
            p = qpoly::scale(p, inv);
        }
        CoeffRing r;
        r.kind = Kind::quotient;
        r.modulus = std::move(p);
        return r;
    }

    bool is_rationals() const { return kind == Kind::rationals; }

    // Rank as a free module over Q.
    std::size_t degree() const
    {
        return is_rationals() ? 1 : static_cast<std::size_t>(qpoly::degree(modulus));
    }

    friend bool operator==(const CoeffRing& a, const CoeffRing& b)
    {
        return a.kind == b.kind && a.modulus == b.modulus;
    }
    friend bool operator!=(const CoeffRing& a, const CoeffRing& b) { return !(a == b); }
};

/// Shared immutable quotient-ring context carried by QuotElem values.
struct QuotCtx {
    std::vector<Rat> modulus; // monic, ascending

    int degree() const { return qpoly::degree(modulus); }
};

inline std::shared_ptr<const QuotCtx> make_ctx(const CoeffRing& ring)
{
    require(!ring.is_rationals(), "ring", "make_ctx needs a quotient ring");
    return std::make_shared<QuotCtx>(QuotCtx{ring.modulus});
}

/// Element of Q[t]/(p(t)). A value with no context is a rational constant,
/// which embeds in every quotient ring; contexts meet lazily on first
/// binary operation. Residues are stored reduced and trimmed.
class QuotElem {
public:
    QuotElem() = default;
    QuotElem(long n) { set_constant(Rat(n)); }
    QuotElem(const Rat& r) { set_constant(r); }

    QuotElem(std::vector<Rat> coeffs, std::shared_ptr<const QuotCtx> ctx)
        : ring_(std::move(ctx))
    {
        if (ring_)
            c_ = qpoly::mod_monic(std::move(coeffs), ring_->modulus);
        else {
            qpoly::trim(coeffs);
            require(coeffs.size() <= 1, "ring", "quotient element without a ring context");
            c_ = std::move(coeffs);
        }
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const std::shared_ptr<const QuotCtx>& ctx() const { return ring_; }

    friend QuotElem operator+(const QuotElem& a, const QuotElem& b)
    {
        auto ctx = meet(a, b);
        return QuotElem(qpoly::add(a.c_, b.c_), std::move(ctx));
    }
    friend QuotElem operator-(const QuotElem& a, const QuotElem& b)
    {
        auto ctx = meet(a, b);
        return QuotElem(qpoly::add(a.c_, qpoly::scale(b.c_, Rat(-1))), std::move(ctx));
    }
    friend QuotElem operator*(const QuotElem& a, const QuotElem& b)
    {
        auto ctx = meet(a, b);
        return QuotElem(qpoly::mul(a.c_, b.c_), std::move(ctx));
    }
    QuotElem operator-() const
    {
        QuotElem r = *this;
        for (auto& x : r.c_)
            x = -x;
        return r;
    }
    QuotElem& operator+=(const QuotElem& o) { return *this = *this + o; }
    QuotElem& operator-=(const QuotElem& o) { return *this = *this - o; }
    QuotElem& operator*=(const QuotElem& o) { return *this = *this * o; }

    friend bool operator==(const QuotElem& a, const QuotElem& b)
    {
        meet(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const QuotElem& a, const QuotElem& b) { return !(a == b); }

    std::optional<QuotElem> inverse() const
    {
        if (is_zero())
            return std::nullopt;
        if (!ring_) {
            QuotElem r;
            r.set_constant(*c_[0].inverse());
            return r;
        }
        auto [g, s] = qpoly::bezout_mod(c_, ring_->modulus);
        if (qpoly::degree(g) != 0)
            return std::nullopt; // shares a factor with the modulus
        return QuotElem(qpoly::scale(s, *g[0].inverse()), ring_);
    }

private:
    void set_constant(const Rat& r)
    {
        c_.clear();
        if (!r.is_zero())
            c_.push_back(r);
    }

    static std::shared_ptr<const QuotCtx> meet(const QuotElem& a, const QuotElem& b)
    {
        if (!a.ring_)
            return b.ring_;
        if (!b.ring_)
            return a.ring_;
        if (a.ring_ == b.ring_ || a.ring_->modulus == b.ring_->modulus)
            return a.ring_;
        fail("ring", "mixed quotient rings in one operation");
    }

    std::vector<Rat> c_;
    std::shared_ptr<const QuotCtx> ring_;
};

/// The dilation parameter q, a rational with q not in {0, 1, -1}, so that
/// q^m = 1 forces m = 0 and z |-> qz generates an infinite-order map.
class DilationQ {
public:
    explicit DilationQ(Rat q) : q_(std::move(q))
    {
        require(!q_.is_zero() && q_ != Rat(1) && q_ != Rat(-1), "schema",
                "dilation q must avoid {0, 1, -1}, got " + q_.str());
    }

    const Rat& value() const { return q_; }
    Rat pow(long m) const { return q_.pow(m); }
    DilationQ inverse() const { return DilationQ(*q_.inverse()); }

    friend bool operator==(const DilationQ& a, const DilationQ& b) { return a.q_ == b.q_; }
    friend bool operator!=(const DilationQ& a, const DilationQ& b) { return !(a == b); }

private:
    Rat q_;
};

// Ring-aware scalar access used by the realified linear algebra: every
// scalar is a vector over Q of length ring.degree().
template <class S>
struct RingOps;

template <>
struct RingOps<Rat> {
    static constexpr CoeffRing::Kind kind = CoeffRing::Kind::rationals;

    static std::vector<Rat> coords(const CoeffRing&, const Rat& x) { return {x}; }
    static Rat from_coords(const CoeffRing&, const std::vector<Rat>& v)
    {
        return v.empty() ? Rat(0) : v[0];
    }
    static Rat times_t(const CoeffRing&, const Rat&)
    {
        fail("internal", "times_t over the rationals");
    }
};

template <>
struct RingOps<QuotElem> {
    static constexpr CoeffRing::Kind kind = CoeffRing::Kind::quotient;

    static std::vector<Rat> coords(const CoeffRing& ring, const QuotElem& x)
    {
        std::vector<Rat> v = x.coeffs();
        v.resize(ring.degree());
        return v;
    }
    static QuotElem from_coords(const CoeffRing& ring, const std::vector<Rat>& v)
    {
        return QuotElem(v, make_ctx(ring));
    }
    static QuotElem times_t(const CoeffRing& ring, const QuotElem& x)
    {
        std::vector<Rat> shifted(x.coeffs().size() + 1);
        for (std::size_t i = 0; i < x.coeffs().size(); ++i)
            shifted[i + 1] = x.coeffs()[i];
        return QuotElem(std::move(shifted), x.ctx() ? x.ctx() : make_ctx(ring));
    }
};

template <class S>
void require_scalar_matches(const CoeffRing& ring, const char* where)
{
    require(RingOps<S>::kind == ring.kind, "ring",
            std::string(where) + ": scalar type does not match the declared ring");
}

} // namespace isograd

#endif
