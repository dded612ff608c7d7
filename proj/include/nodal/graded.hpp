#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/linalg.hpp"

namespace nodal {

/// Ordered basis with integer degrees.
struct GradedSpace {
    std::vector<std::string> names;
    std::vector<int> degrees;

    size_t dim() const { return names.size(); }
    int degree(size_t i) const { return degrees[i]; }
    int shifted_degree(size_t i) const { return degrees[i] - 1; }

    std::optional<size_t> index(const std::string& name) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.names == b.names && a.degrees == b.degrees;
    }
};

/// Basis tuple in display order: tuple.front() is the leftmost argument,
/// tuple.back() the first (rightmost) input of a multilinear operation.
using Tuple = std::vector<size_t>;

inline void for_each_tuple(size_t dim, size_t arity, const std::function<void(const Tuple&)>& fn) {
    Tuple t(arity, 0);
    if (arity == 0) {
        fn(t);
        return;
    }
    while (true) {
        fn(t);
        size_t i = arity;
        while (i > 0) {
            if (++t[i - 1] < dim) break;
            t[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
}

/// All compositions of d into exactly r positive parts, in lexicographic
/// order; parts are listed left to right in display order.
inline std::vector<std::vector<size_t>> compositions(size_t d, size_t r) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur(r, 1);
    if (r == 0 || r > d) return out;
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t left) {
        if (pos == r - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (size_t v = 1; v + (r - pos - 1) <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

/// Finite-dimensional dga given by tables: differential and product on a
/// graded basis, with a two-sided unit.
struct FiniteDGA {
    GradedSpace space;
    std::vector<Vec> d;                 // d[i] = image of basis i
    std::vector<std::vector<Vec>> mult; // mult[i][j] = e_i * e_j
    size_t unit = 0;

    size_t dim() const { return space.dim(); }

    Vec zero() const { return Vec(dim(), Scalar(0)); }

    Vec basis(size_t i) const {
        Vec v = zero();
        v[i] = 1;
        return v;
    }

    Vec apply_d(const Vec& x) const {
        Vec out = zero();
        for (size_t i = 0; i < dim(); ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < dim(); ++j) out[j] += x[i] * d[i][j];
        }
        return out;
    }

    Vec product(const Vec& a, const Vec& b) const {
        Vec out = zero();
        for (size_t i = 0; i < dim(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < dim(); ++j) {
                if (b[j] == 0) continue;
                for (size_t k = 0; k < dim(); ++k) out[k] += a[i] * b[j] * mult[i][j][k];
            }
        }
        return out;
    }

    /// d^2 = 0, graded Leibniz, associativity, unit laws, homogeneity.
    /// Returns a description of the first failure, or nullopt when clean.
    std::optional<std::string> verify() const {
        size_t n = dim();
        auto is_zero = [](const Vec& v) {
            for (const auto& c : v)
                if (c != 0) return false;
            return true;
        };
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < n; ++k)
                if (d[i][k] != 0 && space.degree(k) != space.degree(i) + 1)
                    return "differential is not homogeneous of degree +1 on " + space.names[i];
            if (!is_zero(apply_d(d[i]))) return "d^2 != 0 on " + space.names[i];
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                int dij = space.degree(i) + space.degree(j);
                for (size_t k = 0; k < n; ++k)
                    if (mult[i][j][k] != 0 && space.degree(k) != dij)
                        return "product is not degree-additive on (" + space.names[i] + "," +
                               space.names[j] + ")";
                // Leibniz: d(ab) = (da)b + (-1)^{|a|} a(db)
                Vec lhs = apply_d(mult[i][j]);
                Vec rhs = product(d[i], basis(j));
                Vec t = product(basis(i), d[j]);
                Scalar sgn = space.degree(i) % 2 ? Scalar(-1) : Scalar(1);
                for (size_t k = 0; k < n; ++k) rhs[k] += sgn * t[k];
                for (size_t k = 0; k < n; ++k)
                    if (lhs[k] != rhs[k])
                        return "Leibniz fails on (" + space.names[i] + "," + space.names[j] + ")";
            }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k) {
                    Vec lhs = product(mult[i][j], basis(k));
                    Vec rhs = product(basis(i), mult[j][k]);
                    if (lhs != rhs)
                        return "associativity fails on (" + space.names[i] + "," +
                               space.names[j] + "," + space.names[k] + ")";
                }
        for (size_t i = 0; i < n; ++i) {
            if (mult[unit][i] != basis(i) || mult[i][unit] != basis(i))
                return "unit law fails on " + space.names[i];
        }
        if (!is_zero(d[unit])) return "unit is not closed";
        return std::nullopt;
    }
};

/// The exterior algebra on two degree-1 generators a, b: the minimal model
/// everything is transferred to.  Basis order: 1, a, b, ab.
inline FiniteDGA exterior_plane_algebra() {
    FiniteDGA lam;
    lam.space.names = {"1", "a", "b", "ab"};
    lam.space.degrees = {0, 1, 1, 2};
    size_t n = 4;
    lam.d.assign(n, Vec(n, Scalar(0)));
    lam.mult.assign(n, std::vector<Vec>(n, Vec(n, Scalar(0))));
    lam.unit = 0;
    auto set = [&](size_t i, size_t j, size_t k, long c) { lam.mult[i][j][k] = Scalar(c); };
    for (size_t i = 0; i < n; ++i) {
        set(0, i, i, 1);
        if (i) set(i, 0, i, 1);
    }
    set(1, 2, 3, 1);  // a*b = ab
    set(2, 1, 3, -1); // b*a = -ab
    return lam;
}

} // namespace nodal
