#ifndef ISOGRAD_LAURENT_HPP
#define ISOGRAD_LAURENT_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "isograd/error.hpp"
#include "isograd/ring.hpp"

namespace isograd {

/// Sparse Laurent polynomial over a coefficient scalar S: a finite map
/// degree -> nonzero coefficient. The zero polynomial has empty support.
template <class S>
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const S& c) { set(0, c); }

    static LaurentPoly monomial(int deg, const S& c)
    {
        LaurentPoly p;
        p.set(deg, c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<int, S>& terms() const { return c_; }

    S coeff(int d) const
    {
        auto it = c_.find(d);
        return it == c_.end() ? S(0) : it->second;
    }

    void set(int d, const S& c)
    {
        if (c.is_zero())
            c_.erase(d);
        else
            c_[d] = c;
    }

    void add_term(int d, const S& c)
    {
        auto it = c_.find(d);
        if (it == c_.end()) {
            if (!c.is_zero())
                c_.emplace(d, c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    int min_degree() const
    {
        require(!is_zero(), "internal", "degree of zero polynomial");
        return c_.begin()->first;
    }
    int max_degree() const
    {
        require(!is_zero(), "internal", "degree of zero polynomial");
        return c_.rbegin()->first;
    }

    bool supported_in(int lo, int hi) const
    {
        return is_zero() || (min_degree() >= lo && max_degree() <= hi);
    }

    LaurentPoly shifted(int m) const // multiply by z^m
    {
        LaurentPoly r;
        for (const auto& [d, c] : c_)
            r.c_.emplace(d + m, c);
        return r;
    }

    LaurentPoly scaled(const S& s) const
    {
        LaurentPoly r;
        if (s.is_zero())
            return r;
        for (const auto& [d, c] : c_)
            r.set(d, c * s);
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r = a;
        for (const auto& [d, c] : b.c_)
            r.add_term(d, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r = a;
        for (const auto& [d, c] : b.c_)
            r.add_term(d, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [da, ca] : a.c_)
            for (const auto& [db, cb] : b.c_)
                r.add_term(da + db, ca * cb);
        return r;
    }
    LaurentPoly operator-() const
    {
        LaurentPoly r;
        for (const auto& [d, c] : c_)
            r.c_.emplace(d, -c);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

private:
    std::map<int, S> c_;
};

/// sigma(sum a_m z^m) = sum a_m q^m z^m, the ring automorphism induced by
/// z |-> qz. Support is preserved (q^m is never zero).
template <class S>
LaurentPoly<S> sigma_apply(const DilationQ& q, const LaurentPoly<S>& f)
{
    LaurentPoly<S> r;
    for (const auto& [d, c] : f.terms())
        r.set(d, c * S(q.pow(d)));
    return r;
}

inline std::string scalar_str(const Rat& r) { return r.str(); }

inline std::string scalar_str(const QuotElem& x)
{
    if (x.is_zero())
        return "0";
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < x.coeffs().size(); ++i)
        os << (i ? " " : "") << x.coeffs()[i].str();
    os << "]";
    return os.str();
}

// Debug rendering, e.g. "1/2*z^-1 + 2 + z^3".
template <class S>
std::string to_string(const LaurentPoly<S>& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : f.terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << scalar_str(c);
        if (d != 0)
            os << "*z^" << d;
    }
    return os.str();
}

} // namespace isograd

#endif
