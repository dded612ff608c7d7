#pragma once

#include <map>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/series.hpp"

namespace nodal {

/// A word in the free monoid on the declared generators.  Generator ids are
/// indices into the owning presentation's table; declaration order is the
/// precedence used by the termination order.
using Word = std::vector<int>;

/// Length-graded lexicographic order (shorter words first, then letterwise
/// by generator precedence).  Every rewrite rule must strictly decrease it.
inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

inline Word word_concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

/// Noncommutative polynomial: a finite sum of words with Series2
/// coefficients, stored sorted by the word order with zero coefficients
/// pruned.  Canonical (irreducible) form is produced by PresentedDGA::reduce.
class NCPoly {
  public:
    explicit NCPoly(int order) : order_(order) {}

    static NCPoly zero(int order) { return NCPoly(order); }

    static NCPoly term(const Word& w, const Series2& c) {
        NCPoly p(c.order());
        p.add_term(w, c);
        return p;
    }

    static NCPoly unit(const Series2& c) { return term({}, c); }

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, Series2, WordLess>& terms() const { return terms_; }

    Series2 coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Series2::zero(order_) : it->second;
    }

    void add_term(const Word& w, const Series2& c) {
        if (c.order() != order_)
            throw OrderMismatchError("NCPoly: coefficient order does not match polynomial order");
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NCPoly operator+(const NCPoly& a, const NCPoly& b) {
        check(a, b);
        NCPoly r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }

    friend NCPoly operator-(const NCPoly& a, const NCPoly& b) {
        check(a, b);
        NCPoly r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }

    friend NCPoly operator-(const NCPoly& a) {
        NCPoly r(a.order_);
        for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, -c);
        return r;
    }

    friend NCPoly operator*(const Series2& c, const NCPoly& a) {
        NCPoly r(a.order_);
        for (const auto& [w, v] : a.terms_) r.add_term(w, c * v);
        return r;
    }

    friend NCPoly operator*(const Scalar& c, const NCPoly& a) {
        NCPoly r(a.order_);
        if (c == 0) return r;
        for (const auto& [w, v] : a.terms_) r.terms_.emplace(w, c * v);
        return r;
    }

    NCPoly& operator+=(const NCPoly& b) { return *this = *this + b; }
    NCPoly& operator-=(const NCPoly& b) { return *this = *this - b; }

    friend bool operator==(const NCPoly& a, const NCPoly& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

  private:
    static void check(const NCPoly& a, const NCPoly& b) {
        if (a.order_ != b.order_)
            throw OrderMismatchError("NCPoly: mixed coefficient truncation orders");
    }

    int order_;
    std::map<Word, Series2, WordLess> terms_;
};

} // namespace nodal
