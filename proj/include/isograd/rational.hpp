#ifndef ISOGRAD_RATIONAL_HPP
#define ISOGRAD_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "isograd/error.hpp"

namespace isograd {

/// Exact rational number. Always reduced, denominator > 0.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d)
    {
        require(d != 0, "schema", "rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "n" or "n/d" in base 10, optional leading '-' on either part.
    static Rat parse(std::string_view s)
    {
        auto digits = [](std::string_view t) {
            if (!t.empty() && t.front() == '-')
                t.remove_prefix(1);
            if (t.empty())
                return false;
            for (char c : t)
                if (c < '0' || c > '9')
                    return false;
            return true;
        };
        const auto slash = s.find('/');
        std::string_view num = s.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
        require(digits(num) && digits(den), "parse", "bad rational literal '" + std::string(s) + "'");
        mpq_class v(mpz_class(std::string(num), 10), mpz_class(std::string(den), 10));
        require(v.get_den() != 0, "schema", "rational with zero denominator");
        v.canonicalize();
        return Rat(std::move(v));
    }

    std::string str() const
    {
        if (v_.get_den() == 1)
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    std::optional<Rat> inverse() const
    {
        if (is_zero())
            return std::nullopt;
        return Rat(mpq_class(1) / v_);
    }

    Rat pow(long e) const
    {
        if (e == 0)
            return Rat(1);
        mpq_class base = v_;
        if (e < 0) {
            require(!is_zero(), "schema", "0 raised to a negative power");
            base = mpq_class(1) / base;
            e = -e;
        }
        mpq_class out;
        mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rat(std::move(out)); // base reduced => powers reduced
    }

    const mpq_class& raw() const { return v_; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b)
    {
        require(!b.is_zero(), "schema", "division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

} // namespace isograd

#endif
