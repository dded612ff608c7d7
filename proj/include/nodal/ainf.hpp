#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nodal/dga.hpp"
#include "nodal/graded.hpp"

namespace nodal {

// All multilinear structure in this module follows one sign discipline: an
// operation inserted into a tuple (a_d, ..., a_1), written left to right
// with a_1 rightmost, is charged the Koszul sign (-1)^{sum of (|a_j|-1)}
// over the arguments strictly to its right.  For a dga this makes
// mu_1(a) = (-1)^{|a|} d a, mu_2(b, a) = (-1)^{|a|} b a a structure whose
// relations hold on the nose, and every equation below (relations, morphism
// equations, homotopy equation, Hochschild differential) uses the same rule.

/// Arity-indexed multilinear tables on a finite graded basis.  mu[n] maps
/// display-ordered basis tuples to elements; missing entries are zero.
struct AInfAlgebra {
    GradedSpace space;
    int arity_bound = 2;
    std::vector<std::map<Tuple, Vec>> mu; // index = arity, [0] unused

    AInfAlgebra() = default;
    AInfAlgebra(GradedSpace s, int bound)
        : space(std::move(s)), arity_bound(bound),
          mu(static_cast<size_t>(bound) + 1) {}

    Vec zero() const { return Vec(space.dim(), Scalar(0)); }

    Vec mu_eval(int arity, const Tuple& t) const {
        if (arity < 1 || arity >= static_cast<int>(mu.size())) return zero();
        auto it = mu[static_cast<size_t>(arity)].find(t);
        return it == mu[static_cast<size_t>(arity)].end() ? zero() : it->second;
    }

    /// Installs a table entry, enforcing that the operation is homogeneous
    /// of degree 2 - arity.
    void set_mu(int arity, const Tuple& t, const Vec& value) {
        int want = 2 - arity;
        for (size_t i : t) want += space.degree(i);
        for (size_t k = 0; k < value.size(); ++k)
            if (value[k] != 0 && space.degree(k) != want)
                throw ConsistencyError("AInfAlgebra: mu_" + std::to_string(arity) +
                                       " violates the degree-(2-n) rule");
        bool zero = true;
        for (const auto& c : value)
            if (c != 0) zero = false;
        if (zero)
            mu[static_cast<size_t>(arity)].erase(t);
        else
            mu[static_cast<size_t>(arity)][t] = value;
    }
};

/// Sum of shifted degrees of tuple entries in display positions [from, to).
inline int shifted_sum(const GradedSpace& s, const Tuple& t, size_t from, size_t to) {
    int acc = 0;
    for (size_t j = from; j < to; ++j) acc += s.shifted_degree(t[j]);
    return acc;
}

namespace detail {

inline bool vec_is_zero(const Vec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

inline void vec_axpy(Vec& acc, const Scalar& c, const Vec& x) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * x[i];
}

/// Multilinear evaluation of a table-backed operation on element arguments.
inline Vec eval_multilinear(const AInfAlgebra& a, int arity, const std::vector<Vec>& args) {
    Vec acc = a.zero();
    if (arity < 1 || arity > a.arity_bound) return acc;
    Tuple t(args.size());
    std::function<void(size_t, const Scalar&)> rec = [&](size_t slot, const Scalar& coeff) {
        if (slot == args.size()) {
            vec_axpy(acc, coeff, a.mu_eval(arity, t));
            return;
        }
        for (size_t b = 0; b < args[slot].size(); ++b) {
            if (args[slot][b] == 0) continue;
            t[slot] = b;
            rec(slot + 1, coeff * args[slot][b]);
        }
    };
    rec(0, Scalar(1));
    return acc;
}

} // namespace detail

/// Target algebra for morphisms between table-backed structures.
struct VecTarget {
    const AInfAlgebra* alg;

    using Elem = Vec;
    Elem zero() const { return alg->zero(); }
    static bool is_zero(const Elem& e) { return detail::vec_is_zero(e); }
    int max_arity() const { return alg->arity_bound; }
    Elem mu(const std::vector<Elem>& args) const {
        return detail::eval_multilinear(*alg, static_cast<int>(args.size()), args);
    }
    void axpy(Elem& acc, const Scalar& c, const Elem& x) const { detail::vec_axpy(acc, c, x); }
    static std::string str(const Elem& e) {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << scalar_string(e[i]);
        os << "]";
        return os.str();
    }
};

/// Target algebra backed by a presented dga, seen as an A-infinity algebra
/// with mu_1(a) = (-1)^{|a|} d a, mu_2(b, a) = (-1)^{|a|} b a and nothing
/// above arity 2.
struct DgaTarget {
    const PresentedDGA* dga;

    using Elem = NCPoly;
    Elem zero() const { return dga->zero(); }
    static bool is_zero(const Elem& e) { return e.is_zero(); }
    int max_arity() const { return 2; }

    Elem mu(const std::vector<Elem>& args) const {
        if (args.size() == 1) {
            Elem acc = zero();
            for (const auto& [deg, part] : homogeneous_parts(args[0])) {
                Scalar sgn = deg % 2 ? Scalar(-1) : Scalar(1);
                acc += sgn * dga->differentiate(part);
            }
            return acc;
        }
        if (args.size() == 2) {
            Elem acc = zero();
            for (const auto& [deg, part] : homogeneous_parts(args[1])) {
                Scalar sgn = deg % 2 ? Scalar(-1) : Scalar(1);
                acc += sgn * dga->multiply(args[0], part);
            }
            return acc;
        }
        return zero();
    }

    void axpy(Elem& acc, const Scalar& c, const Elem& x) const { acc += c * x; }

    std::string str(const Elem& e) const { return dga->poly_string(e); }

  private:
    std::vector<std::pair<int, NCPoly>> homogeneous_parts(const NCPoly& p) const {
        std::map<int, NCPoly> parts;
        for (const auto& [w, c] : p.terms()) {
            int deg = dga->word_degree(w);
            auto it = parts.find(deg);
            if (it == parts.end()) it = parts.emplace(deg, dga->zero()).first;
            it->second.add_term(w, c);
        }
        return {parts.begin(), parts.end()};
    }
};

/// Arity-indexed morphism components f_n of degree 1-n from a finite source
/// into a Target.  Values on unlisted tuples are zero.
template <class Target>
struct AInfMorphismT {
    const AInfAlgebra* source = nullptr;
    Target target;
    int arity_bound = 1;
    std::vector<std::map<Tuple, typename Target::Elem>> comp;

    AInfMorphismT() = default;
    AInfMorphismT(const AInfAlgebra* src, Target tgt, int bound)
        : source(src), target(std::move(tgt)), arity_bound(bound),
          comp(static_cast<size_t>(bound) + 1) {}

    typename Target::Elem eval(int arity, const Tuple& t) const {
        if (arity < 1 || arity >= static_cast<int>(comp.size())) return target.zero();
        auto it = comp[static_cast<size_t>(arity)].find(t);
        return it == comp[static_cast<size_t>(arity)].end() ? target.zero() : it->second;
    }

    void set(int arity, const Tuple& t, const typename Target::Elem& value) {
        if (Target::is_zero(value))
            comp[static_cast<size_t>(arity)].erase(t);
        else
            comp[static_cast<size_t>(arity)][t] = value;
    }
};

using AInfMorphism = AInfMorphismT<VecTarget>;
using MorphismToDga = AInfMorphismT<DgaTarget>;

/// Degree -n homotopy components between two morphisms with common source
/// and target.
struct Homotopy {
    std::vector<std::map<Tuple, Vec>> comp;

    explicit Homotopy(int bound = 0) : comp(static_cast<size_t>(bound) + 1) {}

    Vec eval(int arity, const Tuple& t, size_t target_dim) const {
        if (arity < 1 || arity >= static_cast<int>(comp.size())) return Vec(target_dim, Scalar(0));
        auto it = comp[static_cast<size_t>(arity)].find(t);
        return it == comp[static_cast<size_t>(arity)].end() ? Vec(target_dim, Scalar(0))
                                                            : it->second;
    }

    void set(int arity, const Tuple& t, const Vec& value) {
        if (arity >= static_cast<int>(comp.size())) comp.resize(static_cast<size_t>(arity) + 1);
        if (detail::vec_is_zero(value))
            comp[static_cast<size_t>(arity)].erase(t);
        else
            comp[static_cast<size_t>(arity)][t] = value;
    }
};

struct CheckEntry {
    int arity;
    Tuple tuple;
    std::string residual;
};

struct CheckReport {
    std::vector<CheckEntry> violations;
    int max_arity_checked = 0;

    bool pass() const { return violations.empty(); }
};

/// The generalized associativity relations: for each arity d <= max_arity
/// and basis tuple, the signed sum over insertions of mu_m into mu_{d-m+1}
/// must vanish.
inline CheckReport check_ainf_relations(const AInfAlgebra& a, int max_arity) {
    CheckReport rep;
    rep.max_arity_checked = max_arity;
    size_t dim = a.space.dim();
    for (int d = 1; d <= max_arity; ++d) {
        for_each_tuple(dim, static_cast<size_t>(d), [&](const Tuple& t) {
            Vec acc = a.zero();
            for (int m = 1; m <= d; ++m) {
                for (int n = 0; n + m <= d; ++n) {
                    size_t start = static_cast<size_t>(d - n - m);
                    Tuple block(t.begin() + static_cast<long>(start),
                                t.begin() + static_cast<long>(start) + m);
                    Vec inner = a.mu_eval(m, block);
                    if (detail::vec_is_zero(inner)) continue;
                    int sign = shifted_sum(a.space, t, static_cast<size_t>(d - n),
                                           static_cast<size_t>(d));
                    Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                    Tuple outer;
                    outer.reserve(static_cast<size_t>(d - m + 1));
                    outer.insert(outer.end(), t.begin(), t.begin() + static_cast<long>(start));
                    outer.push_back(0); // placeholder
                    outer.insert(outer.end(), t.begin() + static_cast<long>(start) + m, t.end());
                    for (size_t b = 0; b < dim; ++b) {
                        if (inner[b] == 0) continue;
                        outer[start] = b;
                        detail::vec_axpy(acc, sgn * inner[b], a.mu_eval(d - m + 1, outer));
                    }
                }
            }
            if (!detail::vec_is_zero(acc))
                rep.violations.push_back({d, t, VecTarget::str(acc)});
        });
    }
    return rep;
}

/// dga-to-A-infinity twist of a verified finite dga.
inline AInfAlgebra from_dga(const FiniteDGA& dga, int arity_bound) {
    if (auto fail = dga.verify())
        throw ConsistencyError("from_dga: input tables are not a dga: " + *fail);
    AInfAlgebra a(dga.space, arity_bound);
    size_t n = dga.dim();
    for (size_t i = 0; i < n; ++i) {
        Scalar sgn = dga.space.degree(i) % 2 ? Scalar(-1) : Scalar(1);
        Vec v(n, Scalar(0));
        for (size_t k = 0; k < n; ++k) v[k] = sgn * dga.d[i][k];
        if (!detail::vec_is_zero(v)) a.set_mu(1, {i}, v);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Scalar sgn = dga.space.degree(j) % 2 ? Scalar(-1) : Scalar(1);
            Vec v(n, Scalar(0));
            for (size_t k = 0; k < n; ++k) v[k] = sgn * dga.mult[i][j][k];
            if (!detail::vec_is_zero(v)) a.set_mu(2, {i, j}, v);
        }
    return a;
}

/// Morphism equations up to max_arity.  The unsigned side composes the
/// target operations with component blocks; the signed side inserts source
/// operations into the components.
template <class Target>
CheckReport check_morphism(const AInfMorphismT<Target>& f, int max_arity) {
    CheckReport rep;
    rep.max_arity_checked = max_arity;
    const AInfAlgebra& src = *f.source;
    size_t dim = src.space.dim();
    for (int d = 1; d <= max_arity; ++d) {
        for_each_tuple(dim, static_cast<size_t>(d), [&](const Tuple& t) {
            auto acc = f.target.zero();
            // Target side.
            int rmax = std::min(d, f.target.max_arity());
            for (int r = 1; r <= rmax; ++r) {
                for (const auto& parts : compositions(static_cast<size_t>(d),
                                                      static_cast<size_t>(r))) {
                    std::vector<typename Target::Elem> args;
                    args.reserve(parts.size());
                    size_t off = 0;
                    bool zero = false;
                    for (size_t pi = 0; pi < parts.size(); ++pi) {
                        Tuple block(t.begin() + static_cast<long>(off),
                                    t.begin() + static_cast<long>(off + parts[pi]));
                        off += parts[pi];
                        auto v = f.eval(static_cast<int>(parts[pi]), block);
                        if (Target::is_zero(v) && parts.size() == 1) zero = true;
                        args.push_back(std::move(v));
                    }
                    if (zero) continue;
                    auto v = f.target.mu(args);
                    f.target.axpy(acc, Scalar(1), v);
                }
            }
            // Source side, subtracted.
            for (int m = 1; m <= std::min(d, src.arity_bound); ++m) {
                for (int n = 0; n + m <= d; ++n) {
                    size_t start = static_cast<size_t>(d - n - m);
                    Tuple block(t.begin() + static_cast<long>(start),
                                t.begin() + static_cast<long>(start) + m);
                    Vec inner = src.mu_eval(m, block);
                    if (detail::vec_is_zero(inner)) continue;
                    int sign = shifted_sum(src.space, t, static_cast<size_t>(d - n),
                                           static_cast<size_t>(d));
                    Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                    Tuple outer;
                    outer.insert(outer.end(), t.begin(), t.begin() + static_cast<long>(start));
                    outer.push_back(0);
                    outer.insert(outer.end(), t.begin() + static_cast<long>(start) + m, t.end());
                    for (size_t b = 0; b < dim; ++b) {
                        if (inner[b] == 0) continue;
                        outer[start] = b;
                        f.target.axpy(acc, -sgn * inner[b], f.eval(d - m + 1, outer));
                    }
                }
            }
            if (!Target::is_zero(acc))
                rep.violations.push_back({d, t, f.target.str(acc)});
        });
    }
    return rep;
}

inline AInfMorphism identity_morphism(const AInfAlgebra& a, int arity_bound) {
    AInfMorphism id(&a, VecTarget{&a}, arity_bound);
    for (size_t i = 0; i < a.space.dim(); ++i) {
        Vec v = a.zero();
        v[i] = 1;
        id.set(1, {i}, v);
    }
    return id;
}

/// Standard composition (g after f): sum over ways of splitting the inputs
/// into blocks fed to f, with g applied to the block values.  Components
/// are computed up to arity_out, treating missing components as zero.
inline AInfMorphism compose_morphisms(const AInfMorphism& g, const AInfMorphism& f,
                                      int arity_out) {
    if (g.source->space.dim() != f.target.alg->space.dim() ||
        !(g.source->space == f.target.alg->space))
        throw ContextMismatchError("compose_morphisms: target of f is not source of g");
    AInfMorphism out(f.source, g.target, arity_out);
    size_t dim = f.source->space.dim();
    for (int d = 1; d <= arity_out; ++d) {
        for_each_tuple(dim, static_cast<size_t>(d), [&](const Tuple& t) {
            Vec acc = g.target.zero();
            for (int r = 1; r <= d; ++r) {
                for (const auto& parts : compositions(static_cast<size_t>(d),
                                                      static_cast<size_t>(r))) {
                    std::vector<Vec> args;
                    args.reserve(parts.size());
                    size_t off = 0;
                    for (size_t pi = 0; pi < parts.size(); ++pi) {
                        Tuple block(t.begin() + static_cast<long>(off),
                                    t.begin() + static_cast<long>(off + parts[pi]));
                        off += parts[pi];
                        args.push_back(f.eval(static_cast<int>(parts[pi]), block));
                    }
                    // g's r-arity component, expanded multilinearly.
                    Tuple gt(parts.size());
                    std::function<void(size_t, const Scalar&)> rec = [&](size_t slot,
                                                                          const Scalar& c) {
                        if (slot == parts.size()) {
                            detail::vec_axpy(acc, c, g.eval(static_cast<int>(parts.size()), gt));
                            return;
                        }
                        for (size_t b = 0; b < args[slot].size(); ++b) {
                            if (args[slot][b] == 0) continue;
                            gt[slot] = b;
                            rec(slot + 1, c * args[slot][b]);
                        }
                    };
                    rec(0, Scalar(1));
                }
            }
            out.set(d, t, acc);
        });
    }
    return out;
}

/// The homotopy equation between morphisms f and g via T:
/// f - g = T o (mu insertions) + mu o (f...f, T, g...g), all with the
/// module's uniform Koszul rule (T is odd and is charged the shifted
/// degrees of the arguments consumed by the g blocks).
inline CheckReport check_homotopy(const AInfMorphism& f, const AInfMorphism& g,
                                  const Homotopy& h, int max_arity) {
    CheckReport rep;
    rep.max_arity_checked = max_arity;
    const AInfAlgebra& src = *f.source;
    const AInfAlgebra& tgt = *f.target.alg;
    size_t dim = src.space.dim();
    size_t tdim = tgt.space.dim();
    for (int d = 1; d <= max_arity; ++d) {
        for_each_tuple(dim, static_cast<size_t>(d), [&](const Tuple& t) {
            Vec acc = f.eval(d, t);
            detail::vec_axpy(acc, Scalar(-1), g.eval(d, t));
            // T o source insertions.
            for (int m = 1; m <= std::min(d, src.arity_bound); ++m) {
                for (int n = 0; n + m <= d; ++n) {
                    size_t start = static_cast<size_t>(d - n - m);
                    Tuple block(t.begin() + static_cast<long>(start),
                                t.begin() + static_cast<long>(start) + m);
                    Vec inner = src.mu_eval(m, block);
                    if (detail::vec_is_zero(inner)) continue;
                    int sign = shifted_sum(src.space, t, static_cast<size_t>(d - n),
                                           static_cast<size_t>(d));
                    Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                    Tuple outer;
                    outer.insert(outer.end(), t.begin(), t.begin() + static_cast<long>(start));
                    outer.push_back(0);
                    outer.insert(outer.end(), t.begin() + static_cast<long>(start) + m, t.end());
                    for (size_t b = 0; b < dim; ++b) {
                        if (inner[b] == 0) continue;
                        outer[start] = b;
                        detail::vec_axpy(acc, -sgn * inner[b],
                                         h.eval(d - m + 1, outer, tdim));
                    }
                }
            }
            // mu(f..f, T, g..g) over all block splittings.
            for (int blocks = 1; blocks <= std::min(d, tgt.arity_bound); ++blocks) {
                for (const auto& parts : compositions(static_cast<size_t>(d),
                                                      static_cast<size_t>(blocks))) {
                    for (size_t tpos = 0; tpos < parts.size(); ++tpos) {
                        std::vector<Vec> args;
                        args.reserve(parts.size());
                        size_t off = 0;
                        size_t gargs_from = 0;
                        for (size_t pi = 0; pi < parts.size(); ++pi) {
                            Tuple block(t.begin() + static_cast<long>(off),
                                        t.begin() + static_cast<long>(off + parts[pi]));
                            off += parts[pi];
                            if (pi < tpos)
                                args.push_back(f.eval(static_cast<int>(parts[pi]), block));
                            else if (pi == tpos) {
                                args.push_back(h.eval(static_cast<int>(parts[pi]), block, tdim));
                                gargs_from = off;
                            } else
                                args.push_back(g.eval(static_cast<int>(parts[pi]), block));
                        }
                        int sign = shifted_sum(src.space, t, gargs_from,
                                               static_cast<size_t>(d));
                        Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                        Vec v = detail::eval_multilinear(tgt, static_cast<int>(parts.size()),
                                                         args);
                        detail::vec_axpy(acc, -sgn, v);
                    }
                }
            }
            if (!detail::vec_is_zero(acc))
                rep.violations.push_back({d, t, VecTarget::str(acc)});
        });
    }
    return rep;
}

/// Builds the morphism homotopic to f along T by solving the homotopy
/// equation for g arity by arity.  The result is a genuine morphism when f
/// is one; callers re-verify.
inline AInfMorphism perturb_by_homotopy(const AInfMorphism& f, const Homotopy& h,
                                        int arity_bound) {
    AInfMorphism g(f.source, f.target, arity_bound);
    size_t dim = f.source->space.dim();
    for (int d = 1; d <= arity_bound; ++d) {
        // With g's components known below arity d, the defect of the
        // homotopy equation at arity d is exactly f_d - g_d - (boundary),
        // evaluated with g_d temporarily zero.
        CheckReport local;
        const AInfAlgebra& src = *f.source;
        const AInfAlgebra& tgt = *f.target.alg;
        size_t tdim = tgt.space.dim();
        for_each_tuple(dim, static_cast<size_t>(d), [&](const Tuple& t) {
            Vec acc = f.eval(d, t);
            for (int m = 1; m <= std::min(d, src.arity_bound); ++m) {
                for (int n = 0; n + m <= d; ++n) {
                    size_t start = static_cast<size_t>(d - n - m);
                    Tuple block(t.begin() + static_cast<long>(start),
                                t.begin() + static_cast<long>(start) + m);
                    Vec inner = src.mu_eval(m, block);
                    if (detail::vec_is_zero(inner)) continue;
                    int sign = shifted_sum(src.space, t, static_cast<size_t>(d - n),
                                           static_cast<size_t>(d));
                    Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                    Tuple outer;
                    outer.insert(outer.end(), t.begin(), t.begin() + static_cast<long>(start));
                    outer.push_back(0);
                    outer.insert(outer.end(), t.begin() + static_cast<long>(start) + m, t.end());
                    for (size_t b = 0; b < dim; ++b) {
                        if (inner[b] == 0) continue;
                        outer[start] = b;
                        detail::vec_axpy(acc, -sgn * inner[b],
                                         h.eval(d - m + 1, outer, tdim));
                    }
                }
            }
            for (int blocks = 1; blocks <= std::min(d, tgt.arity_bound); ++blocks) {
                for (const auto& parts : compositions(static_cast<size_t>(d),
                                                      static_cast<size_t>(blocks))) {
                    for (size_t tpos = 0; tpos < parts.size(); ++tpos) {
                        std::vector<Vec> args;
                        size_t off = 0;
                        size_t gargs_from = 0;
                        for (size_t pi = 0; pi < parts.size(); ++pi) {
                            Tuple block(t.begin() + static_cast<long>(off),
                                        t.begin() + static_cast<long>(off + parts[pi]));
                            off += parts[pi];
                            if (pi < tpos)
                                args.push_back(f.eval(static_cast<int>(parts[pi]), block));
                            else if (pi == tpos) {
                                args.push_back(h.eval(static_cast<int>(parts[pi]), block, tdim));
                                gargs_from = off;
                            } else
                                args.push_back(g.eval(static_cast<int>(parts[pi]), block));
                        }
                        int sign = shifted_sum(src.space, t, gargs_from,
                                               static_cast<size_t>(d));
                        Scalar sgn = sign % 2 ? Scalar(-1) : Scalar(1);
                        Vec v = detail::eval_multilinear(tgt, static_cast<int>(parts.size()),
                                                         args);
                        detail::vec_axpy(acc, -sgn, v);
                    }
                }
            }
            g.set(d, t, acc);
        });
        (void)local;
    }
    return g;
}

/// True when the arity-1 component induces an isomorphism on the cohomology
/// of the mu_1 differentials (finite morphisms only).
inline bool induces_cohomology_iso(const AInfMorphism& f) {
    const AInfAlgebra& s = *f.source;
    const AInfAlgebra& t = *f.target.alg;
    size_t ns = s.space.dim(), nt = t.space.dim();
    // Columns = images of basis vectors.
    Mat ds = mat_zero(ns, ns), dt = mat_zero(nt, nt), f1 = mat_zero(nt, ns);
    for (size_t j = 0; j < ns; ++j) {
        Vec v = s.mu_eval(1, {j});
        for (size_t i = 0; i < ns; ++i) ds[i][j] = v[i];
        Vec w = f.eval(1, {j});
        for (size_t i = 0; i < nt; ++i) f1[i][j] = w[i];
    }
    for (size_t j = 0; j < nt; ++j) {
        Vec v = t.mu_eval(1, {j});
        for (size_t i = 0; i < nt; ++i) dt[i][j] = v[i];
    }
    auto ker = [&](const Mat& m) { return nullspace(m); };
    auto ker_s = ker(ds), ker_t = ker(dt);
    size_t rk_s = mat_rank(ds), rk_t = mat_rank(dt);
    size_t hs = ker_s.size() - rk_s, ht = ker_t.size() - rk_t;
    if (hs != ht) return false;
    // Induced map injective: f1(ker_s) together with im(dt) spans a space of
    // rank rk_t + hs.
    Mat stacked; // rows = vectors
    for (const auto& k : ker_s) {
        Vec img(nt, Scalar(0));
        for (size_t i = 0; i < nt; ++i)
            for (size_t j = 0; j < ns; ++j) img[i] += f1[i][j] * k[j];
        stacked.push_back(img);
    }
    size_t base_rank;
    {
        Mat imt;
        for (size_t j = 0; j < nt; ++j) {
            Vec col(nt);
            for (size_t i = 0; i < nt; ++i) col[i] = dt[i][j];
            imt.push_back(col);
        }
        base_rank = mat_rank(imt);
        for (auto& row : imt) stacked.push_back(row);
    }
    return mat_rank(stacked) == base_rank + hs;
}

} // namespace nodal
