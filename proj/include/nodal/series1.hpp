#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"
#include "nodal/series.hpp"

namespace nodal {

/// Truncated univariate formal power series over the rationals.  Used for
/// series in the single product variable s = p*q (radial data).
class Series1 {
  public:
    explicit Series1(int order) : order_(order) {
        if (order < 0) throw DomainError("Series1: negative truncation order");
    }

    static Series1 zero(int order) { return Series1(order); }

    static Series1 constant(const Scalar& c, int order) {
        Series1 s(order);
        s.set_coeff(0, c);
        return s;
    }

    static Series1 one(int order) { return constant(Scalar(1), order); }
    static Series1 var(int order) { return monomial(1, Scalar(1), order); }

    static Series1 monomial(int k, const Scalar& c, int order) {
        Series1 s(order);
        s.set_coeff(k, c);
        return s;
    }

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Scalar>& terms() const { return terms_; }

    Scalar coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void set_coeff(int k, const Scalar& c) {
        if (k < 0) throw DomainError("Series1: negative exponent");
        if (k > order_) return;
        if (c == 0)
            terms_.erase(k);
        else
            terms_[k] = c;
    }

    void add_coeff(int k, const Scalar& c) { set_coeff(k, coeff(k) + c); }

    int valuation() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first; }

    friend bool operator==(const Series1& a, const Series1& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    friend Series1 operator+(const Series1& a, const Series1& b) {
        check(a, b, "add");
        Series1 r = a;
        for (const auto& [k, c] : b.terms_) r.add_coeff(k, c);
        return r;
    }

    friend Series1 operator-(const Series1& a, const Series1& b) {
        check(a, b, "subtract");
        Series1 r = a;
        for (const auto& [k, c] : b.terms_) r.add_coeff(k, -c);
        return r;
    }

    friend Series1 operator-(const Series1& a) {
        Series1 r(a.order_);
        for (const auto& [k, c] : a.terms_) r.terms_[k] = -c;
        return r;
    }

    friend Series1 operator*(const Series1& a, const Series1& b) {
        check(a, b, "multiply");
        Series1 r(a.order_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                if (ka + kb > a.order_) break;
                r.add_coeff(ka + kb, ca * cb);
            }
        return r;
    }

    friend Series1 operator*(const Scalar& c, const Series1& a) {
        Series1 r(a.order_);
        if (c == 0) return r;
        for (const auto& [k, v] : a.terms_) r.terms_[k] = c * v;
        return r;
    }

    Series1& operator+=(const Series1& b) { return *this = *this + b; }
    Series1& operator-=(const Series1& b) { return *this = *this - b; }
    Series1& operator*=(const Series1& b) { return *this = *this * b; }

    Series1 truncated(int new_order) const {
        Series1 r(new_order);
        for (const auto& [k, c] : terms_) r.set_coeff(k, c);
        return r;
    }

    Series1 derivative() const {
        Series1 r(order_ >= 1 ? order_ - 1 : 0);
        for (const auto& [k, c] : terms_)
            if (k >= 1) r.add_coeff(k - 1, Scalar(k) * c);
        return r;
    }

    /// Antiderivative with zero constant term; raises the order by one.
    Series1 integral() const {
        Series1 r(order_ + 1);
        for (const auto& [k, c] : terms_) r.set_coeff(k + 1, c / Scalar(k + 1));
        return r;
    }

    /// Embeds h(s) as the bivariate series h(p*q) at truncation order n.
    Series2 to_bivariate(int n) const {
        Series2 r(n);
        for (const auto& [k, c] : terms_) r.set_coeff(k, k, c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += "(" + scalar_string(c) + ")";
            if (k) out += "*s^" + std::to_string(k);
        }
        return out;
    }

  private:
    static void check(const Series1& a, const Series1& b, const char* op) {
        if (a.order_ != b.order_)
            throw OrderMismatchError(std::string("Series1 ") + op + ": orders " +
                                     std::to_string(a.order_) + " and " + std::to_string(b.order_));
    }

    int order_;
    std::map<int, Scalar> terms_;
};

/// Reads a bivariate series that is a function of s = p*q back into one
/// variable; empty when a term with i != j is present.
inline std::optional<Series1> from_bivariate(const Series2& f) {
    Series1 r(f.order() / 2);
    for (const auto& [k, c] : f.terms()) {
        if (k.first != k.second) return std::nullopt;
        r.set_coeff(k.first, c);
    }
    return r;
}

inline Series1 series_exp(const Series1& s) {
    if (s.coeff(0) != 0) throw DomainError("series_exp: nonzero constant term");
    Series1 r = Series1::one(s.order());
    Series1 power = Series1::one(s.order());
    for (int k = 1; k <= s.order(); ++k) {
        power *= s;
        if (power.is_zero()) break;
        r += Scalar(1) / factorial(static_cast<unsigned>(k)) * power;
    }
    return r;
}

inline Series1 series_inverse(const Series1& s) {
    Scalar c0 = s.coeff(0);
    if (c0 == 0) throw DomainError("series_inverse: zero constant term");
    Series1 u = Scalar(1) / c0 * s - Series1::one(s.order());
    Series1 r = Series1::one(s.order());
    Series1 power = Series1::one(s.order());
    for (int k = 1; k <= s.order(); ++k) {
        power *= u;
        if (power.is_zero()) break;
        r += (k % 2 ? Scalar(-1) : Scalar(1)) * power;
    }
    return Scalar(1) / c0 * r;
}

/// log of a series with constant term 1, via integrating a'/a.
inline Series1 series_log(const Series1& s) {
    if (s.coeff(0) != 1) throw DomainError("series_log: constant term must be 1");
    if (s.order() == 0) return Series1::zero(0);
    Series1 d = s.derivative();                       // order-1
    Series1 li = d * series_inverse(s.truncated(s.order() - 1));
    return li.integral().truncated(s.order());
}

/// Square root of a series whose constant term is the square of a rational.
inline std::optional<Series1> series_sqrt(const Series1& s) {
    auto r0 = scalar_sqrt(s.coeff(0));
    if (!r0 || *r0 == 0) return std::nullopt;
    Series1 u(s.order());
    u.set_coeff(0, *r0);
    // 2*u0*u_k = s_k - sum_{0<i<k} u_i*u_{k-i}
    for (int k = 1; k <= s.order(); ++k) {
        Scalar acc = s.coeff(k);
        for (int i = 1; i < k; ++i) acc -= u.coeff(i) * u.coeff(k - i);
        u.set_coeff(k, acc / (Scalar(2) * (*r0)));
    }
    return u;
}

/// Composition b(u) for u with zero constant term.
inline Series1 series_compose(const Series1& b, const Series1& u) {
    if (b.order() != u.order())
        throw OrderMismatchError("series_compose: mismatched truncation orders");
    if (u.coeff(0) != 0) throw DomainError("series_compose: inner constant term nonzero");
    Series1 r(b.order());
    Series1 power = Series1::one(b.order());
    for (int k = 0; k <= b.order(); ++k) {
        if (k > 0) {
            power *= u;
            if (power.is_zero()) break;
        }
        r += b.coeff(k) * power;
    }
    return r;
}

/// Solves b(u) = a for u of valuation exactly 1.  Requires matching constant
/// terms and, beyond that, val(b - b0) = val(a - a0) = 1.  Returns nullopt
/// when no such rational solution exists.
inline std::optional<Series1> series_solve_compose(const Series1& b, const Series1& a) {
    if (b.order() != a.order()) throw OrderMismatchError("series_solve_compose: orders differ");
    if (b.coeff(0) != a.coeff(0)) return std::nullopt;
    int n = a.order();
    if (b.coeff(1) == 0 || a.coeff(1) == 0) return std::nullopt;
    Series1 u(n);
    u.set_coeff(1, a.coeff(1) / b.coeff(1));
    for (int m = 2; m <= n; ++m) {
        // residual with the coefficients found so far
        Series1 res = a - series_compose(b, u);
        // adding t*s^m changes the degree-m coefficient by b'(0)... i.e. b_1*t
        u.set_coeff(m, res.coeff(m) / b.coeff(1));
    }
    if (series_compose(b, u) == a) return u;
    return std::nullopt;
}

} // namespace nodal
