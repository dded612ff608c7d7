#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/plane_map.hpp"

namespace nodal {

/// First degree at which the conjugacy equation could not be solved,
/// together with the residual of compose(psi, F) - compose(G, psi) there.
struct ConjugacyObstruction {
    int degree;
    Series2 residual_p;
    Series2 residual_q;
    std::string detail;
};

struct ConjugacyResult {
    std::optional<PlaneMap> witness;
    std::optional<ConjugacyObstruction> obstruction;

    bool found() const { return witness.has_value(); }
};

namespace detail {

/// Substitutes the linear map L (as [[a,b],[c,d]]) into a homogeneous pair.
inline Series2 substitute_linear(const Series2& s, const std::array<Scalar, 4>& l, int order) {
    Series2 fp(order), fq(order);
    fp.set_coeff(1, 0, l[0]);
    fp.set_coeff(0, 1, l[1]);
    fq.set_coeff(1, 0, l[2]);
    fq.set_coeff(0, 1, l[3]);
    return series_substitute(s, fp, fq);
}

inline Series2 homogeneous_part(const Series2& s, int d) {
    Series2 r(s.order());
    for (const auto& [k, c] : s.terms())
        if (k.first + k.second == d) r.set_coeff(k.first, k.second, c);
    return r;
}

/// Index of p^i q^{d-i} in the degree-d monomial basis.
inline size_t mono_index(int i, int d) { return static_cast<size_t>(d - i); }

inline PlaneMap with_added(const PlaneMap& psi, const Series2& dp, const Series2& dq) {
    return PlaneMap(psi.p_img + dp, psi.q_img + dq);
}

/// Solves the conjugacy equation for maps whose radial factors match via a
/// univariate change of variable.  F = (p a(s), q a^{-1}(s)),
/// G = (p b(s), q b^{-1}(s)): a witness (p c(s), q d(s)) exists iff
/// b(u(s)) = a(s) is solvable with u = s c(s) d(s).
inline std::optional<PlaneMap> radial_witness(const PlaneMap& f, const PlaneMap& g) {
    auto af = unipotent_radial_factor(f);
    auto ag = unipotent_radial_factor(g);
    if (!af || !ag) return std::nullopt;
    int n = f.order();
    if (*af == *ag) return identity_map(n);
    auto u = series_solve_compose(*ag, *af);
    if (!u) return std::nullopt;
    int half = af->order();
    // cd(s) = u(s)/s; the top coefficient of u is invisible at this order
    // and is fixed to zero.
    Series1 cd(half);
    for (const auto& [k, c] : u->terms())
        if (k >= 1) cd.set_coeff(k - 1, c);
    // Gauge choice: c = d = sqrt(cd) when the constant term admits a
    // rational square root, otherwise c = 1, d = cd.
    Series1 c = Series1::one(half), d = cd;
    if (auto root = series_sqrt(cd)) {
        c = *root;
        d = *root;
    }
    Series2 psi_p(n), psi_q(n);
    for (const auto& [k, cc] : c.terms()) psi_p.set_coeff(k + 1, k, cc);
    for (const auto& [k, cc] : d.terms()) psi_q.set_coeff(k, k + 1, cc);
    return PlaneMap(psi_p, psi_q);
}

/// Deterministic search for an invertible solution of L F1 = G1 L.
inline std::optional<std::array<Scalar, 4>> intertwiner(const std::array<Scalar, 4>& f1,
                                                        const std::array<Scalar, 4>& g1) {
    if (f1 == g1) {
        std::array<Scalar, 4> id{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
        return id;
    }
    // Unknowns (l00, l01, l10, l11); L F1 - G1 L = 0 gives four equations.
    Mat a = mat_zero(4, 4);
    // row 0: coefficient of p in the p-component, etc.
    // (L F1)_p = l00*(f00 p + f01 q) + l01*(f10 p + f11 q)
    // (G1 L)_p = g00*(l00 p + l01 q) + g01*(l10 p + l11 q)
    a[0][0] = f1[0] - g1[0];
    a[0][1] = f1[2];
    a[0][2] = -g1[1];
    a[1][0] = f1[1];
    a[1][1] = f1[3] - g1[0];
    a[1][3] = -g1[1];
    a[2][0] = -g1[2];
    a[2][2] = f1[0] - g1[3];
    a[2][3] = f1[2];
    a[3][1] = -g1[2];
    a[3][2] = f1[1];
    a[3][3] = f1[3] - g1[3];
    auto basis = nullspace(a);
    if (basis.empty()) return std::nullopt;
    // Enumerate small rational combinations, first invertible one wins.
    std::vector<long> coeffs{0, 1, -1, 2, -2};
    size_t dim = basis.size();
    std::vector<size_t> idx(dim, 0);
    while (true) {
        Vec l(4, Scalar(0));
        bool nontrivial = false;
        for (size_t t = 0; t < dim; ++t) {
            if (coeffs[idx[t]] != 0) nontrivial = true;
            for (size_t j = 0; j < 4; ++j) l[j] += Scalar(coeffs[idx[t]]) * basis[t][j];
        }
        if (nontrivial && l[0] * l[3] - l[1] * l[2] != 0)
            return std::array<Scalar, 4>{l[0], l[1], l[2], l[3]};
        size_t t = 0;
        while (t < dim && ++idx[t] == coeffs.size()) idx[t++] = 0;
        if (t == dim) break;
    }
    return std::nullopt;
}

} // namespace detail

/// Searches for psi with compose(psi, F) = compose(G, psi) up to the maps'
/// truncation order, order by polynomial degree.
///
/// Radial flow pairs are handled by a univariate ansatz first.  The general
/// solver determines psi degree by degree through the homological operator
/// psi_d o F1 - G1 o psi_d; it is complete when that operator is invertible
/// at every degree (e.g. non-resonant linear parts) and otherwise reports
/// the first degree whose residual it cannot remove.  Every witness is
/// re-verified by recomposition before it is returned.
inline ConjugacyResult conjugacy_witness(const PlaneMap& f, const PlaneMap& g) {
    if (f.order() != g.order())
        throw OrderMismatchError("conjugacy_witness: mismatched truncation orders");
    if (f.linear_det() == 0 || g.linear_det() == 0)
        throw DomainError("conjugacy_witness: maps must be invertible");
    int n = f.order();

    auto verified = [&](const PlaneMap& psi) {
        return compose(psi, f) == compose(g, psi);
    };

    if (f == g) return ConjugacyResult{identity_map(n), std::nullopt};

    if (auto psi = detail::radial_witness(f, g); psi && verified(*psi))
        return ConjugacyResult{*psi, std::nullopt};

    // General degree-by-degree solve.
    auto l = detail::intertwiner(f.linear_part(), g.linear_part());
    if (!l) {
        Series2 rp = detail::homogeneous_part(f.p_img - g.p_img, 1);
        Series2 rq = detail::homogeneous_part(f.q_img - g.q_img, 1);
        return ConjugacyResult{
            std::nullopt,
            ConjugacyObstruction{1, rp, rq, "no invertible intertwiner of the linear parts"}};
    }
    Series2 psi_p(n), psi_q(n);
    psi_p.set_coeff(1, 0, (*l)[0]);
    psi_p.set_coeff(0, 1, (*l)[1]);
    psi_q.set_coeff(1, 0, (*l)[2]);
    psi_q.set_coeff(0, 1, (*l)[3]);
    PlaneMap psi(psi_p, psi_q);

    auto f1 = f.linear_part();
    auto g1 = g.linear_part();
    for (int d = 2; d <= n; ++d) {
        PlaneMap lhs = compose(psi, f);
        PlaneMap rhs = compose(g, psi);
        Series2 err_p = detail::homogeneous_part(lhs.p_img - rhs.p_img, d);
        Series2 err_q = detail::homogeneous_part(lhs.q_img - rhs.q_img, d);
        if (err_p.is_zero() && err_q.is_zero()) continue;

        // Unknowns: coefficients of (P_d, Q_d); equation
        // T(psi_d) = psi_d o F1 - G1 o psi_d = -err.
        size_t dim = static_cast<size_t>(d) + 1;
        Mat t = mat_zero(2 * dim, 2 * dim);
        for (int i = 0; i <= d; ++i) {
            size_t col = detail::mono_index(i, d);
            Series2 mono = Series2::monomial(i, d - i, Scalar(1), n);
            Series2 sub = detail::substitute_linear(mono, f1, n);
            for (const auto& [k, c] : sub.terms()) {
                size_t row = detail::mono_index(k.first, d);
                // P_d contributions to the p-equation, and via G1 to both.
                t[row][col] += c;
                t[dim + row][dim + col] += c;
            }
            // -G1 o psi_d: p-equation gets -g00*P - g01*Q, q-equation -g10*P - g11*Q.
            t[detail::mono_index(i, d)][col] -= g1[0];
            t[detail::mono_index(i, d)][dim + col] -= g1[1];
            t[dim + detail::mono_index(i, d)][col] -= g1[2];
            t[dim + detail::mono_index(i, d)][dim + col] -= g1[3];
        }
        Vec b(2 * dim, Scalar(0));
        for (const auto& [k, c] : err_p.terms()) b[detail::mono_index(k.first, d)] = -c;
        for (const auto& [k, c] : err_q.terms()) b[dim + detail::mono_index(k.first, d)] = -c;
        auto x = solve_linear(t, b);
        if (!x) {
            return ConjugacyResult{
                std::nullopt,
                ConjugacyObstruction{d, err_p, err_q,
                                     "conjugacy equation not solvable at this degree"}};
        }
        Series2 add_p(n), add_q(n);
        for (int i = 0; i <= d; ++i) {
            add_p.set_coeff(i, d - i, (*x)[detail::mono_index(i, d)]);
            add_q.set_coeff(i, d - i, (*x)[dim + detail::mono_index(i, d)]);
        }
        psi = detail::with_added(psi, add_p, add_q);
    }

    if (verified(psi)) return ConjugacyResult{psi, std::nullopt};
    PlaneMap lhs = compose(psi, f);
    PlaneMap rhs = compose(g, psi);
    Series2 rp = lhs.p_img - rhs.p_img;
    Series2 rq = lhs.q_img - rhs.q_img;
    int bad = std::min(rp.is_zero() ? n + 1 : rp.valuation(), rq.is_zero() ? n + 1 : rq.valuation());
    return ConjugacyResult{
        std::nullopt,
        ConjugacyObstruction{bad, detail::homogeneous_part(rp, bad),
                             detail::homogeneous_part(rq, bad),
                             "residual survives the degree-by-degree solve"}};
}

} // namespace nodal
