#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "nodal/errors.hpp"
#include "nodal/series.hpp"
#include "nodal/series1.hpp"

namespace nodal {

/// A formal mapping of the plane: the images of p and q under a continuous
/// algebra endomorphism of Q[[p,q]].  Both components have zero constant
/// term; the map is invertible iff its linear part is.
struct PlaneMap {
    Series2 p_img;
    Series2 q_img;

    PlaneMap(Series2 p, Series2 q) : p_img(std::move(p)), q_img(std::move(q)) {
        if (p_img.order() != q_img.order())
            throw OrderMismatchError("PlaneMap: components have different orders");
        if (p_img.constant_term() != 0 || q_img.constant_term() != 0)
            throw DomainError("PlaneMap: components must have zero constant term");
    }

    int order() const { return p_img.order(); }

    /// Linear part as the matrix [[a,b],[c,d]] with p -> a p + b q, q -> c p + d q.
    std::array<Scalar, 4> linear_part() const {
        return {p_img.coeff(1, 0), p_img.coeff(0, 1), q_img.coeff(1, 0), q_img.coeff(0, 1)};
    }

    Scalar linear_det() const {
        auto m = linear_part();
        return m[0] * m[3] - m[1] * m[2];
    }

    bool is_identity() const {
        return p_img == Series2::var_p(order()) && q_img == Series2::var_q(order());
    }

    friend bool operator==(const PlaneMap& a, const PlaneMap& b) {
        return a.p_img == b.p_img && a.q_img == b.q_img;
    }
};

inline PlaneMap identity_map(int order) {
    return PlaneMap(Series2::var_p(order), Series2::var_q(order));
}

/// compose(outer, inner): substitute the inner map's components into the
/// outer's, i.e. the point map outer o inner.
inline PlaneMap compose(const PlaneMap& outer, const PlaneMap& inner) {
    if (outer.order() != inner.order())
        throw OrderMismatchError("compose: mismatched truncation orders");
    return PlaneMap(series_substitute(outer.p_img, inner.p_img, inner.q_img),
                    series_substitute(outer.q_img, inner.p_img, inner.q_img));
}

/// Applies the map to a series: f o F as substitution.
inline Series2 apply(const PlaneMap& f, const Series2& s) {
    return series_substitute(s, f.p_img, f.q_img);
}

/// Order-by-order two-sided inverse; requires an invertible linear part.
inline PlaneMap invert(const PlaneMap& f) {
    auto m = f.linear_part();
    Scalar det = m[0] * m[3] - m[1] * m[2];
    if (det == 0) throw DomainError("invert: singular linear part");
    int n = f.order();
    // Linear inverse as the starting guess.
    Series2 gp(n), gq(n);
    gp.set_coeff(1, 0, m[3] / det);
    gp.set_coeff(0, 1, -m[1] / det);
    gq.set_coeff(1, 0, -m[2] / det);
    gq.set_coeff(0, 1, m[0] / det);
    PlaneMap g(gp, gq);
    for (int d = 2; d <= n; ++d) {
        PlaneMap fg = compose(f, g);
        Series2 rp = fg.p_img - Series2::var_p(n);
        Series2 rq = fg.q_img - Series2::var_q(n);
        if (rp.is_zero() && rq.is_zero()) break;
        // Remove the degree-d residual: correct g by -L^{-1} * residual_d.
        Series2 cp(n), cq(n);
        for (const auto& [k, c] : rp.terms())
            if (k.first + k.second == d) cp.set_coeff(k.first, k.second, c);
        for (const auto& [k, c] : rq.terms())
            if (k.first + k.second == d) cq.set_coeff(k.first, k.second, c);
        Series2 dp = (m[3] / det) * cp - (m[1] / det) * cq;
        Series2 dq = (m[0] / det) * cq - (m[2] / det) * cp;
        g = PlaneMap(g.p_img - dp, g.q_img - dq);
    }
    return g;
}

/// det of the Jacobian matrix of the map, truncated at order N-1.
inline Series2 jacobian_det(const PlaneMap& f) {
    return f.p_img.derivative_p() * f.q_img.derivative_q() -
           f.p_img.derivative_q() * f.q_img.derivative_p();
}

/// Time-1 flow of the Hamiltonian vector field X_H with the convention
/// X_H(p) = -dH/dq, X_H(q) = dH/dp.  H must have valuation >= 3 so that X_H
/// raises total degree and the exponential terminates at finite order.
inline PlaneMap ham_flow(const Series2& h, int order) {
    Series2 hh = h.order() == order ? h : h.truncated(order);
    if (!hh.is_zero() && hh.valuation() < 3)
        throw DomainError("ham_flow: Hamiltonian valuation must be >= 3");
    Series2 xp = -hh.derivative_q().truncated(order);
    Series2 xq = hh.derivative_p().truncated(order);
    auto flow_of = [&](Series2 f) {
        Series2 total = f;
        Series2 term = f;
        for (unsigned k = 1; k <= static_cast<unsigned>(order); ++k) {
            term = xp * term.derivative_p().truncated(order) +
                   xq * term.derivative_q().truncated(order);
            if (term.is_zero()) break;
            total += Scalar(1) / factorial(k) * term;
        }
        return total;
    };
    return PlaneMap(flow_of(Series2::var_p(order)), flow_of(Series2::var_q(order)));
}

/// Radial Hamiltonian h(s), s = p*q, with valuation >= 2 in s.
struct RadialHamiltonian {
    Series1 h;

    explicit RadialHamiltonian(Series1 series) : h(std::move(series)) {
        if (!h.is_zero() && h.valuation() < 2)
            throw DomainError("RadialHamiltonian: valuation in s must be >= 2");
    }

    Series2 to_bivariate(int order) const { return h.to_bivariate(order); }
};

/// Decomposes F as (p*a(s), q*b(s)) when it has that shape.  A map of
/// truncation order N only exposes the factors to s-degree (N-1)/2, and the
/// returned univariate series carry exactly that order.
inline std::optional<std::pair<Series1, Series1>> radial_components(const PlaneMap& f) {
    int half = std::max(0, (f.order() - 1) / 2);
    Series1 a(half), b(half);
    for (const auto& [k, c] : f.p_img.terms()) {
        if (k.first != k.second + 1) return std::nullopt;
        a.set_coeff(k.second, c);
    }
    for (const auto& [k, c] : f.q_img.terms()) {
        if (k.second != k.first + 1) return std::nullopt;
        b.set_coeff(k.first, c);
    }
    return std::make_pair(a, b);
}

/// True when F = (p*a(s), q*a(s)^{-1}) with a(0) = 1, i.e. F is the time-1
/// flow of a radial Hamiltonian to the stored order.
inline std::optional<Series1> unipotent_radial_factor(const PlaneMap& f) {
    auto comps = radial_components(f);
    if (!comps) return std::nullopt;
    auto& [a, b] = *comps;
    if (a.coeff(0) != 1 || b.coeff(0) != 1) return std::nullopt;
    if (!(a * b == Series1::one(a.order()))) return std::nullopt;
    return a;
}

/// Inverse of ham_flow on radial flows: recovers h with
/// ham_flow(h(pq)) = F, normalized by h(0) = h'(0) = 0.  With the flow
/// convention above, F = (p*a(s), q*a(s)^{-1}) has h'(s) = -log a(s).
inline RadialHamiltonian radial_log(const PlaneMap& f) {
    auto a = unipotent_radial_factor(f);
    if (!a)
        throw ShapeError("radial_log: map is not of the radial form (p*a(pq), q*a(pq)^{-1})");
    Series1 hp = -series_log(*a);
    return RadialHamiltonian(hp.integral());
}

} // namespace nodal
