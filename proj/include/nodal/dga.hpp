#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/ncpoly.hpp"

namespace nodal {

struct Generator {
    std::string name;
    int degree;
};

struct RewriteRule {
    std::string label; // stable identifier for reports and mutation tests
    Word lhs;
    NCPoly rhs;
};

/// One entry of the critical-pair analysis: the overlap word, the two
/// one-step reducts' normal forms, and whether they agree.
struct CriticalPair {
    size_t rule_a = 0;
    size_t rule_b = 0;
    Word overlap;
    NCPoly normal_a;
    NCPoly normal_b;
    bool joinable = false;

    CriticalPair(size_t a, size_t b, Word w, NCPoly na, NCPoly nb, bool j)
        : rule_a(a), rule_b(b), overlap(std::move(w)), normal_a(std::move(na)),
          normal_b(std::move(nb)), joinable(j) {}
};

struct ConsistencyReport {
    // d^2 residual per generator and graded-Leibniz residual per rule; only
    // nonzero residuals are recorded.
    std::vector<std::pair<std::string, NCPoly>> d_squared_failures;
    std::vector<std::pair<std::string, NCPoly>> leibniz_failures;
    std::vector<CriticalPair> critical_pairs; // all examined pairs
    int critical_length = 0;

    bool pass() const {
        if (!d_squared_failures.empty() || !leibniz_failures.empty()) return false;
        for (const auto& cp : critical_pairs)
            if (!cp.joinable) return false;
        return true;
    }

    size_t unjoinable_count() const {
        size_t n = 0;
        for (const auto& cp : critical_pairs)
            if (!cp.joinable) ++n;
        return n;
    }
};

/// A finitely presented graded algebra with differential: free words on the
/// generator table modulo a terminating rewriting system.  Instances are
/// immutable after construction; reduce/multiply/differentiate are pure.
class PresentedDGA {
  public:
    PresentedDGA(std::vector<Generator> gens, std::vector<RewriteRule> rules,
                 std::vector<NCPoly> differentials, int order)
        : gens_(std::move(gens)), rules_(std::move(rules)), diffs_(std::move(differentials)),
          order_(order) {
        if (diffs_.size() != gens_.size())
            throw ConsistencyError("PresentedDGA: one differential per generator required");
        for (const auto& d : diffs_) check_poly(d);
        for (size_t g = 0; g < gens_.size(); ++g) {
            if (!diffs_[g].is_zero()) {
                auto deg = poly_degree(diffs_[g]);
                if (!deg || *deg != gens_[g].degree + 1)
                    throw ConsistencyError("PresentedDGA: d(" + gens_[g].name +
                                           ") is not homogeneous of degree " +
                                           std::to_string(gens_[g].degree + 1));
            }
        }
        for (const auto& r : rules_) {
            if (r.lhs.empty()) throw ConsistencyError("PresentedDGA: empty rule lhs");
            check_word(r.lhs);
            check_poly(r.rhs);
            if (!r.rhs.is_zero()) {
                auto deg = poly_degree(r.rhs);
                if (!deg || *deg != word_degree(r.lhs))
                    throw ConsistencyError("PresentedDGA: rule " + r.label +
                                           " is not degree-homogeneous");
            }
            for (const auto& [w, c] : r.rhs.terms())
                if (!word_less(w, r.lhs))
                    throw ConsistencyError("PresentedDGA: rule " + r.label +
                                           " does not decrease the termination order");
        }
    }

    int order() const { return order_; }
    size_t generator_count() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const NCPoly& differential_of(int gen) const { return diffs_[static_cast<size_t>(gen)]; }

    std::optional<int> generator_id(const std::string& name) const {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    const std::string& generator_name(int id) const { return gens_[static_cast<size_t>(id)].name; }

    int word_degree(const Word& w) const {
        int d = 0;
        for (int g : w) d += gens_[static_cast<size_t>(g)].degree;
        return d;
    }

    /// Common degree of all words, when the polynomial is homogeneous; the
    /// zero polynomial has any degree.
    std::optional<int> poly_degree(const NCPoly& p) const {
        std::optional<int> deg;
        for (const auto& [w, c] : p.terms()) {
            int d = word_degree(w);
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
        return deg;
    }

    NCPoly zero() const { return NCPoly::zero(order_); }
    NCPoly unit() const { return NCPoly::unit(Series2::one(order_)); }

    NCPoly gen(int id) const {
        return NCPoly::term({id}, Series2::one(order_));
    }

    NCPoly gen(const std::string& name) const {
        auto id = generator_id(name);
        if (!id) throw DomainError("PresentedDGA: unknown generator '" + name + "'");
        return gen(*id);
    }

    NCPoly word_poly(const Word& w) const {
        check_word(w);
        return NCPoly::term(w, Series2::one(order_));
    }

    /// Normal form under leftmost rule application; terminates because every
    /// rule strictly decreases the word order.
    NCPoly reduce(const NCPoly& p) const {
        check_poly(p);
        NCPoly out(order_);
        std::vector<std::pair<Word, Series2>> work(p.terms().begin(), p.terms().end());
        while (!work.empty()) {
            auto [w, c] = work.back();
            work.pop_back();
            if (c.is_zero()) continue;
            auto m = find_redex(w);
            if (!m) {
                out.add_term(w, c);
                continue;
            }
            const RewriteRule& rule = rules_[m->second];
            size_t pos = m->first;
            Word prefix(w.begin(), w.begin() + static_cast<long>(pos));
            Word suffix(w.begin() + static_cast<long>(pos + rule.lhs.size()), w.end());
            for (const auto& [rw, rc] : rule.rhs.terms())
                work.emplace_back(word_concat(word_concat(prefix, rw), suffix), c * rc);
        }
        return out;
    }

    /// Reduced bilinear product.
    NCPoly multiply(const NCPoly& a, const NCPoly& b) const {
        check_poly(a);
        check_poly(b);
        NCPoly r(order_);
        for (const auto& [wa, ca] : a.terms())
            for (const auto& [wb, cb] : b.terms()) {
                Series2 c = ca * cb;
                if (!c.is_zero()) r.add_term(word_concat(wa, wb), c);
            }
        return reduce(r);
    }

    /// The degree-(+1) graded derivation extending the generator table:
    /// d(uv) = (du)v + (-1)^{deg u} u (dv), reduced.  Input must be
    /// degree-homogeneous.
    NCPoly differentiate(const NCPoly& p) const {
        check_poly(p);
        if (!poly_degree(p))
            throw DomainError("differentiate: inhomogeneous input");
        NCPoly r(order_);
        for (const auto& [w, c] : p.terms()) {
            int sign_deg = 0;
            for (size_t i = 0; i < w.size(); ++i) {
                const NCPoly& dg = diffs_[static_cast<size_t>(w[i])];
                if (!dg.is_zero()) {
                    Scalar sgn = (sign_deg % 2 == 0) ? Scalar(1) : Scalar(-1);
                    Word prefix(w.begin(), w.begin() + static_cast<long>(i));
                    Word suffix(w.begin() + static_cast<long>(i) + 1, w.end());
                    for (const auto& [dw, dc] : dg.terms())
                        r.add_term(word_concat(word_concat(prefix, dw), suffix), sgn * (c * dc));
                }
                sign_deg += gens_[static_cast<size_t>(w[i])].degree;
            }
        }
        return reduce(r);
    }

    /// Certifies the presentation: d^2 = 0 on generators, the graded
    /// Leibniz residual of every rule reduces to zero, and all critical
    /// pairs of overlapping rules up to the given word length join.
    ConsistencyReport check_consistency(int critical_length) const {
        ConsistencyReport rep;
        rep.critical_length = critical_length;
        for (size_t g = 0; g < gens_.size(); ++g) {
            NCPoly dd = differentiate(reduce(diffs_[g]));
            if (!dd.is_zero()) rep.d_squared_failures.emplace_back(gens_[g].name, dd);
        }
        for (const auto& rule : rules_) {
            NCPoly lhs_poly = NCPoly::term(rule.lhs, Series2::one(order_));
            NCPoly residual = reduce(differentiate_unreduced(lhs_poly) - differentiate_unreduced(rule.rhs));
            if (!residual.is_zero()) rep.leibniz_failures.emplace_back(rule.label, residual);
        }
        // Critical pairs: proper overlaps (suffix of lhs_a = prefix of
        // lhs_b) and containments (lhs_b inside lhs_a).
        for (size_t a = 0; a < rules_.size(); ++a) {
            for (size_t b = 0; b < rules_.size(); ++b) {
                const Word& la = rules_[a].lhs;
                const Word& lb = rules_[b].lhs;
                size_t maxk = std::min(la.size(), lb.size());
                for (size_t k = 1; k <= maxk; ++k) {
                    if (a == b && k == la.size() && k == lb.size()) continue;
                    if (!std::equal(la.end() - static_cast<long>(k), la.end(), lb.begin()))
                        continue;
                    Word overlap = la;
                    overlap.insert(overlap.end(), lb.begin() + static_cast<long>(k), lb.end());
                    if (static_cast<int>(overlap.size()) > critical_length) continue;
                    rep.critical_pairs.push_back(
                        make_pair_entry(a, b, overlap, 0, overlap.size() - lb.size() + 0));
                }
                if (lb.size() < la.size()) {
                    for (size_t t = 0; t + lb.size() <= la.size(); ++t) {
                        if (!std::equal(lb.begin(), lb.end(), la.begin() + static_cast<long>(t)))
                            continue;
                        if (static_cast<int>(la.size()) > critical_length) continue;
                        rep.critical_pairs.push_back(make_pair_entry(a, b, la, 0, t));
                    }
                }
            }
        }
        return rep;
    }

    std::string word_string(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) s += ".";
            s += gens_[static_cast<size_t>(w[i])].name;
        }
        return s;
    }

    std::string poly_string(const NCPoly& p) const {
        if (p.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : p.terms()) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << word_string(w);
        }
        return os.str();
    }

  private:
    std::optional<std::pair<size_t, size_t>> find_redex(const Word& w) const {
        for (size_t pos = 0; pos < w.size(); ++pos)
            for (size_t r = 0; r < rules_.size(); ++r) {
                const Word& lhs = rules_[r].lhs;
                if (pos + lhs.size() > w.size()) continue;
                if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(pos)))
                    return std::make_pair(pos, r);
            }
        return std::nullopt;
    }

    /// Leibniz extension without the final reduce, for residual reporting.
    NCPoly differentiate_unreduced(const NCPoly& p) const {
        NCPoly r(order_);
        for (const auto& [w, c] : p.terms()) {
            int sign_deg = 0;
            for (size_t i = 0; i < w.size(); ++i) {
                const NCPoly& dg = diffs_[static_cast<size_t>(w[i])];
                if (!dg.is_zero()) {
                    Scalar sgn = (sign_deg % 2 == 0) ? Scalar(1) : Scalar(-1);
                    Word prefix(w.begin(), w.begin() + static_cast<long>(i));
                    Word suffix(w.begin() + static_cast<long>(i) + 1, w.end());
                    for (const auto& [dw, dc] : dg.terms())
                        r.add_term(word_concat(word_concat(prefix, dw), suffix), sgn * (c * dc));
                }
                sign_deg += gens_[static_cast<size_t>(w[i])].degree;
            }
        }
        return r;
    }

    CriticalPair make_pair_entry(size_t a, size_t b, const Word& overlap, size_t pos_a,
                                 size_t pos_b) const {
        NCPoly na = reduce(apply_rule_at(overlap, a, pos_a));
        NCPoly nb = reduce(apply_rule_at(overlap, b, pos_b));
        return CriticalPair(a, b, overlap, na, nb, na == nb);
    }

    NCPoly apply_rule_at(const Word& w, size_t rule, size_t pos) const {
        const RewriteRule& r = rules_[rule];
        Word prefix(w.begin(), w.begin() + static_cast<long>(pos));
        Word suffix(w.begin() + static_cast<long>(pos + r.lhs.size()), w.end());
        NCPoly out(order_);
        for (const auto& [rw, rc] : r.rhs.terms())
            out.add_term(word_concat(word_concat(prefix, rw), suffix), rc);
        return out;
    }

    void check_word(const Word& w) const {
        for (int g : w)
            if (g < 0 || static_cast<size_t>(g) >= gens_.size())
                throw DomainError("PresentedDGA: unknown generator id " + std::to_string(g));
    }

    void check_poly(const NCPoly& p) const {
        if (p.order() != order_)
            throw ContextMismatchError("PresentedDGA: polynomial truncation order " +
                                       std::to_string(p.order()) + " != presentation order " +
                                       std::to_string(order_));
        for (const auto& [w, c] : p.terms()) check_word(w);
    }

    std::vector<Generator> gens_;
    std::vector<RewriteRule> rules_;
    std::vector<NCPoly> diffs_;
    int order_;
};

} // namespace nodal
