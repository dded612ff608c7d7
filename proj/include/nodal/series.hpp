#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"

namespace nodal {

/// Truncated bivariate formal power series over the exact rationals.
///
/// A value carries its truncation order N and stores only the nonzero
/// coefficients of monomials p^i q^j with i + j <= N.  All arithmetic is
/// exact; combining two series of different orders is a hard error.
class Series2 {
  public:
    using Key = std::pair<int, int>; // (i, j) exponents of p^i q^j

    explicit Series2(int order) : order_(order) {
        if (order < 0) throw DomainError("Series2: negative truncation order");
    }

    static Series2 zero(int order) { return Series2(order); }

    static Series2 constant(const Scalar& c, int order) {
        Series2 s(order);
        s.set_coeff(0, 0, c);
        return s;
    }

    static Series2 one(int order) { return constant(Scalar(1), order); }

    static Series2 monomial(int i, int j, const Scalar& c, int order) {
        Series2 s(order);
        s.set_coeff(i, j, c);
        return s;
    }

    static Series2 var_p(int order) { return monomial(1, 0, Scalar(1), order); }
    static Series2 var_q(int order) { return monomial(0, 1, Scalar(1), order); }

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    Scalar coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    Scalar constant_term() const { return coeff(0, 0); }

    /// Monomials beyond the truncation order are discarded, zero
    /// coefficients are pruned.
    void set_coeff(int i, int j, const Scalar& c) {
        if (i < 0 || j < 0) throw DomainError("Series2: negative exponent");
        if (i + j > order_) return;
        if (c == 0)
            terms_.erase({i, j});
        else
            terms_[{i, j}] = c;
    }

    void add_coeff(int i, int j, const Scalar& c) { set_coeff(i, j, coeff(i, j) + c); }

    /// Smallest total degree of a nonzero term; order()+1 for the zero series.
    int valuation() const {
        int v = order_ + 1;
        for (const auto& [k, c] : terms_) v = std::min(v, k.first + k.second);
        return v;
    }

    Series2 truncated(int new_order) const {
        Series2 r(new_order);
        for (const auto& [k, c] : terms_)
            r.set_coeff(k.first, k.second, c);
        return r;
    }

    friend bool operator==(const Series2& a, const Series2& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    friend Series2 operator+(const Series2& a, const Series2& b) {
        check_orders(a, b, "add");
        Series2 r = a;
        for (const auto& [k, c] : b.terms_) r.add_coeff(k.first, k.second, c);
        return r;
    }

    friend Series2 operator-(const Series2& a, const Series2& b) {
        check_orders(a, b, "subtract");
        Series2 r = a;
        for (const auto& [k, c] : b.terms_) r.add_coeff(k.first, k.second, -c);
        return r;
    }

    friend Series2 operator-(const Series2& a) {
        Series2 r(a.order_);
        for (const auto& [k, c] : a.terms_) r.terms_[k] = -c;
        return r;
    }

    friend Series2 operator*(const Series2& a, const Series2& b) {
        check_orders(a, b, "multiply");
        Series2 r(a.order_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                int i = ka.first + kb.first, j = ka.second + kb.second;
                if (i + j > a.order_) continue;
                r.add_coeff(i, j, ca * cb);
            }
        }
        return r;
    }

    friend Series2 operator*(const Scalar& c, const Series2& a) {
        Series2 r(a.order_);
        if (c == 0) return r;
        for (const auto& [k, v] : a.terms_) r.terms_[k] = c * v;
        return r;
    }

    Series2& operator+=(const Series2& b) { return *this = *this + b; }
    Series2& operator-=(const Series2& b) { return *this = *this - b; }
    Series2& operator*=(const Series2& b) { return *this = *this * b; }

    Series2 derivative_p() const {
        Series2 r(order_ >= 1 ? order_ - 1 : 0);
        for (const auto& [k, c] : terms_)
            if (k.first >= 1) r.add_coeff(k.first - 1, k.second, Scalar(k.first) * c);
        return r;
    }

    Series2 derivative_q() const {
        Series2 r(order_ >= 1 ? order_ - 1 : 0);
        for (const auto& [k, c] : terms_)
            if (k.second >= 1) r.add_coeff(k.first, k.second - 1, Scalar(k.second) * c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, c] : sorted_terms()) {
            if (!first) out += " + ";
            first = false;
            out += "(" + scalar_string(c) + ")";
            if (k.first) out += "*p^" + std::to_string(k.first);
            if (k.second) out += "*q^" + std::to_string(k.second);
        }
        return out;
    }

    /// Terms sorted by (total degree, p-exponent): the canonical
    /// serialization order.
    std::vector<std::pair<Key, Scalar>> sorted_terms() const {
        std::vector<std::pair<Key, Scalar>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
            if (da != db) return da < db;
            return a.first.first < b.first.first;
        });
        return v;
    }

  private:
    static void check_orders(const Series2& a, const Series2& b, const char* op) {
        if (a.order_ != b.order_)
            throw OrderMismatchError(std::string("Series2 ") + op + ": orders " +
                                     std::to_string(a.order_) + " and " + std::to_string(b.order_));
    }

    int order_;
    std::map<Key, Scalar> terms_;
};

/// exp of a series with zero constant term; the sum is finite because s is
/// nilpotent modulo the truncation ideal.
inline Series2 series_exp(const Series2& s) {
    if (s.constant_term() != 0)
        throw DomainError("series_exp: nonzero constant term");
    Series2 r = Series2::one(s.order());
    Series2 power = Series2::one(s.order());
    for (int k = 1; k <= s.order(); ++k) {
        power *= s;
        if (power.is_zero()) break;
        r += Scalar(1) / factorial(static_cast<unsigned>(k)) * power;
    }
    return r;
}

/// Substitution p -> fp, q -> fq.  Requires zero constant terms in the
/// images so the result stays in the maximal ideal's completion.
inline Series2 series_substitute(const Series2& s, const Series2& fp, const Series2& fq) {
    if (s.order() != fp.order() || s.order() != fq.order())
        throw OrderMismatchError("series_substitute: mismatched truncation orders");
    if (fp.constant_term() != 0 || fq.constant_term() != 0)
        throw DomainError("series_substitute: image of a variable has nonzero constant term");
    int n = s.order();
    // Precompute the needed powers once.
    std::vector<Series2> pp, qq;
    pp.reserve(static_cast<size_t>(n) + 1);
    qq.reserve(static_cast<size_t>(n) + 1);
    pp.push_back(Series2::one(n));
    qq.push_back(Series2::one(n));
    for (int k = 1; k <= n; ++k) {
        pp.push_back(pp.back() * fp);
        qq.push_back(qq.back() * fq);
    }
    Series2 r(n);
    for (const auto& [k, c] : s.terms()) {
        if (k.first + k.second > n) continue;
        r += c * (pp[static_cast<size_t>(k.first)] * qq[static_cast<size_t>(k.second)]);
    }
    return r;
}

/// Multiplicative inverse of a series with invertible constant term.
inline Series2 series_inverse(const Series2& s) {
    Scalar c0 = s.constant_term();
    if (c0 == 0) throw DomainError("series_inverse: zero constant term");
    int n = s.order();
    // 1/s = (1/c0) * 1/(1 + u), u = s/c0 - 1 nilpotent mod truncation.
    Series2 u = Scalar(1) / c0 * s - Series2::one(n);
    Series2 r = Series2::one(n);
    Series2 power = Series2::one(n);
    for (int k = 1; k <= n; ++k) {
        power *= u;
        if (power.is_zero()) break;
        r += (k % 2 ? Scalar(-1) : Scalar(1)) * power;
    }
    return Scalar(1) / c0 * r;
}

} // namespace nodal
