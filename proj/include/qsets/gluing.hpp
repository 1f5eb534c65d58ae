#pragma once

/*! \file
 * \brief Compatible families, gluings, the Q-set 𝔊(X) of compatible families,
 * the δ-quotient, and the gluing completion ℭ = (−/δ) ∘ 𝔊.
 *
 * Families are bitmasks over the carrier (bit i = point i), so every
 * family-level procedure is limited to carriers of at most 64 points and, for
 * exhaustive enumeration, to Limits::max_family_carrier.
 */

#include "checks.hpp"
#include "limits.hpp"
#include "morphism.hpp"
#include "qset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsets {

using Family = std::uint64_t;

namespace detail {

inline void guard_family_carrier(const QSet& x, const Limits& lim)
{
    if (x.size() > lim.max_family_carrier || x.size() > 63)
        throw Error(Errc::too_large, "family enumeration over " + std::to_string(x.size()) +
                                         " points exceeds the carrier cap of " +
                                         std::to_string(lim.max_family_carrier));
}

template <class F>
void for_each_member(Family a, F&& f)
{
    for (; a; a &= a - 1)
        f(static_cast<Point>(std::countr_zero(a)));
}

} // namespace detail

inline std::string family_name(const QSet& x, Family a)
{
    std::string s = "{";
    bool first = true;
    detail::for_each_member(a, [&](Point p) {
        if (!first)
            s += ",";
        s += x.name(p);
        first = false;
    });
    return s + "}";
}

/// ∀a,b ∈ A: δ(a,b) = Ea ⊗ Eb. The empty family is compatible.
inline bool is_compatible(const QSet& x, Family a)
{
    const auto& q = x.quantale();
    for (Family s = a; s; s &= s - 1) {
        const Point i = std::countr_zero(s);
        for (Family t = s; t; t &= t - 1) {
            const Point j = std::countr_zero(t);
            if (x.delta(i, j) != q.tensor(x.extent(i), x.extent(j)))
                return false;
        }
    }
    return true;
}

/// All compatible families in increasing bitmask order.
inline std::vector<Family> enumerate_compatible(const QSet& x, const Limits& lim = {})
{
    detail::guard_family_carrier(x, lim);
    std::vector<Family> out;
    const Family end = Family{1} << x.size();
    for (Family a = 0; a < end; ++a)
        if (is_compatible(x, a))
            out.push_back(a);
    return out;
}

/// ⋁_{a∈A} Ea.
inline Elem family_extent(const QSet& x, Family a)
{
    const auto& q = x.quantale();
    Elem acc = q.bottom();
    detail::for_each_member(a, [&](Point p) { acc = q.join(acc, x.extent(p)); });
    return acc;
}

/// x glues A when δ(a,x) = Ea for all a ∈ A and Ex = ⋁_{a∈A} Ea.
inline bool glues(const QSet& x, Point g, Family a)
{
    if (x.extent(g) != family_extent(x, a))
        return false;
    for (Family s = a; s; s &= s - 1) {
        const Point p = std::countr_zero(s);
        if (x.delta(p, g) != x.extent(p))
            return false;
    }
    return true;
}

struct GluingReport {
    Family family = 0;
    std::vector<Point> gluings;
    bool unique = false;
    bool compatible = false;         ///< implied whenever a gluing exists
    bool gluings_equivalent = true;  ///< all gluings pairwise δ-equivalent
};

/// Scans the carrier for gluings of A. A need not be compatible.
inline GluingReport gluings_of(const QSet& x, Family a)
{
    GluingReport r;
    r.family = a;
    for (Point g = 0; g < x.size(); ++g)
        if (glues(x, g, a))
            r.gluings.push_back(g);
    r.unique = r.gluings.size() == 1;
    r.compatible = is_compatible(x, a);
    for (std::size_t i = 0; i < r.gluings.size(); ++i)
        for (std::size_t j = i + 1; j < r.gluings.size(); ++j)
            r.gluings_equivalent = r.gluings_equivalent && delta_equivalent(x, r.gluings[i], r.gluings[j]);
    return r;
}

struct GluingCompleteness {
    bool complete = true;
    bool all_glued = true;   ///< every compatible family has at least one gluing
    bool extensional = true;
    std::optional<GluingReport> witness; ///< first family without exactly one gluing
    explicit operator bool() const noexcept { return complete; }
};

/// Every compatible family has exactly one gluing.
inline GluingCompleteness is_gluing_complete(const QSet& x, const Limits& lim = {})
{
    GluingCompleteness r;
    for (Family a : enumerate_compatible(x, lim)) {
        auto g = gluings_of(x, a);
        if (g.gluings.empty())
            r.all_glued = false;
        if (!g.unique) {
            if (r.complete)
                r.witness = g;
            r.complete = false;
        }
    }
    r.extensional = is_extensional(x).extensional;
    return r;
}

// ---------------------------------------------------------------------------
// 𝔊(X)

/// 𝔊(X) together with the family behind each of its points.
struct FamilySpace {
    QSet qset;
    QSet base;
    std::vector<Family> families; ///< increasing; point i of qset is families[i]

    std::optional<Point> index_of(Family a) const
    {
        auto it = std::lower_bound(families.begin(), families.end(), a);
        if (it == families.end() || *it != a)
            return std::nullopt;
        return static_cast<Point>(it - families.begin());
    }
};

/// δ(A,B) = ⋁_{a∈A, b∈B} δ(a,b). Validated through QSet::build.
inline FamilySpace gluings_qset(const QSet& x, const Limits& lim = {})
{
    auto fams = enumerate_compatible(x, lim);
    const auto& q = x.quantale();
    const std::size_t n = fams.size();
    std::vector<std::string> names;
    names.reserve(n);
    for (Family a : fams)
        names.push_back(family_name(x, a));
    // ⋁_{a∈A} δ(a, y) per family and point, then join over B
    std::vector<Elem> row(n * x.size(), q.bottom());
    for (std::size_t i = 0; i < n; ++i)
        for (Point y = 0; y < x.size(); ++y) {
            Elem acc = q.bottom();
            detail::for_each_member(fams[i], [&](Point a) { acc = q.join(acc, x.delta(a, y)); });
            row[i * x.size() + y] = acc;
        }
    std::vector<Elem> delta(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Elem acc = q.bottom();
            detail::for_each_member(fams[j], [&](Point b) { acc = q.join(acc, row[i * x.size() + b]); });
            delta[i * n + j] = delta[j * n + i] = acc;
        }
    return {QSet::build(q, std::move(names), std::move(delta)), x, std::move(fams)};
}

inline Family direct_image(const FunctionalMorphism& f, Family a)
{
    Family out = 0;
    detail::for_each_member(a, [&](Point p) { out |= Family{1} << f(p); });
    return out;
}

/// 𝔊(f): A ↦ f[A]. Throws std::logic_error if a direct image is not compatible.
inline FunctionalMorphism gluings_on_morphism(const FunctionalMorphism& f, const FamilySpace& gx,
                                              const FamilySpace& gy)
{
    std::vector<Point> m(gx.families.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto j = gy.index_of(direct_image(f, gx.families[i]));
        if (!j)
            throw std::logic_error("direct image of a compatible family is not compatible");
        m[i] = *j;
    }
    return FunctionalMorphism::make(gx.qset, gy.qset, std::move(m));
}

// ---------------------------------------------------------------------------
// δ-quotient

struct Quotient {
    QSet qset;
    DeltaPartition partition;
    FunctionalMorphism projection;
};

/// Quotients δ-equivalent points together. A class is named after its least
/// member, or "[a|b|…]" listing every member when `verbose` is set.
inline Quotient delta_quotient(const QSet& x, bool verbose = false)
{
    auto part = delta_partition(x);
    const std::size_t k = part.size();
    std::vector<std::string> names;
    for (const auto& b : part.blocks) {
        if (!verbose || b.size() == 1) {
            names.push_back(x.name(b.front()));
            continue;
        }
        std::string s = "[";
        for (std::size_t i = 0; i < b.size(); ++i)
            s += (i ? "|" : "") + x.name(b[i]);
        names.push_back(s + "]");
    }
    std::vector<Elem> delta(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Elem d = x.delta(part.representative(i), part.representative(j));
            for (Point a : part.blocks[i])
                for (Point b : part.blocks[j])
                    if (x.delta(a, b) != d)
                        throw std::logic_error("δ is not well defined on δ-classes");
            delta[i * k + j] = d;
        }
    auto qs = QSet::build(x.quantale(), std::move(names), std::move(delta));
    auto proj = FunctionalMorphism::make(x, qs, part.block_of);
    return {qs, std::move(part), std::move(proj)};
}

/// f/δ: [x] ↦ [f x].
inline FunctionalMorphism quotient_on_morphism(const FunctionalMorphism& f, const Quotient& qx, const Quotient& qy)
{
    std::vector<Point> m(qx.partition.size());
    for (std::size_t c = 0; c < m.size(); ++c) {
        m[c] = qy.partition.block_of[f(qx.partition.representative(c))];
        for (Point a : qx.partition.blocks[c])
            if (qy.partition.block_of[f(a)] != m[c])
                throw std::logic_error("δ-equivalence is not congruential for f");
    }
    return FunctionalMorphism::make(qx.qset, qy.qset, std::move(m));
}

/// Lifts a family over X/δ to its section of class representatives.
inline Family representative_section(const Quotient& qx, Family over_quotient)
{
    Family out = 0;
    detail::for_each_member(over_quotient,
                            [&](Point c) { out |= Family{1} << qx.partition.representative(c); });
    return out;
}

// ---------------------------------------------------------------------------
// Gluing completion

struct GluingCompletion {
    FamilySpace families;
    Quotient quotient;
    FunctionalMorphism unit; ///< x ↦ ⟦{x}⟧

    const QSet& qset() const noexcept { return quotient.qset; }
};

inline GluingCompletion gluing_completion(const QSet& x, const Limits& lim = {})
{
    auto fs = gluings_qset(x, lim);
    auto quo = delta_quotient(fs.qset);
    std::vector<Point> m(x.size());
    for (Point p = 0; p < x.size(); ++p)
        m[p] = quo.partition.block_of[*fs.index_of(Family{1} << p)];
    auto unit = FunctionalMorphism::make(x, quo.qset, std::move(m));
    return {std::move(fs), std::move(quo), std::move(unit)};
}

/// ℭ(f): ⟦A⟧ ↦ ⟦f[A]⟧.
inline FunctionalMorphism gluing_completion_on_morphism(const FunctionalMorphism& f, const GluingCompletion& cx,
                                                        const GluingCompletion& cy)
{
    auto gf = gluings_on_morphism(f, cx.families, cy.families);
    return quotient_on_morphism(gf, cx.quotient, cy.quotient);
}

/// Re-checks, on 𝔊(X), that the union of a compatible family of families is
/// compatible over X and glues that family. Exhaustive over the subsets of
/// 𝔊(X), so limited by Limits::max_family_carrier.
inline CheckList verify_family_lemmas(const FamilySpace& fs, const Limits& lim = {})
{
    CheckList out;
    const auto& g = fs.qset;
    std::size_t unions = 0;
    bool union_ok = true, glue_ok = true;
    std::string detail;
    for (Family fam : enumerate_compatible(g, lim)) {
        Family u = 0;
        detail::for_each_member(fam, [&](Point i) { u |= fs.families[i]; });
        ++unions;
        if (!is_compatible(fs.base, u)) {
            if (union_ok)
                detail = "union of " + family_name(g, fam) + " is not compatible";
            union_ok = false;
            continue;
        }
        if (!glues(g, *fs.index_of(u), fam)) {
            if (glue_ok)
                detail = "union does not glue " + family_name(g, fam);
            glue_ok = false;
        }
    }
    out.add("union of compatible families is compatible", union_ok, union_ok ? "" : detail);
    out.add("union glues its family", glue_ok, glue_ok ? std::to_string(unions) + " families" : detail);
    return out;
}

// ---------------------------------------------------------------------------
// Adjunction checks

namespace detail {

/// The counit ⟦A⟧ ↦ unique gluing of A for a gluing-complete K. Checks that
/// every family in a class has the same unique gluing.
inline std::optional<FunctionalMorphism> gluing_counit(const QSet& k, const GluingCompletion& ck, std::string& why)
{
    std::vector<Point> m(ck.quotient.partition.size(), 0);
    for (std::size_t c = 0; c < m.size(); ++c) {
        std::optional<Point> glue;
        for (Point member : ck.quotient.partition.blocks[c]) {
            auto r = gluings_of(k, ck.families.families[member]);
            if (!r.unique) {
                why = "family " + family_name(k, r.family) + " lacks a unique gluing";
                return std::nullopt;
            }
            if (glue && *glue != r.gluings.front()) {
                why = "equivalent families have different gluings";
                return std::nullopt;
            }
            glue = r.gluings.front();
        }
        m[c] = *glue;
    }
    auto v = check_functional(ck.qset(), k, m);
    if (!v) {
        why = "counit is not functional: " + v.describe();
        return std::nullopt;
    }
    return FunctionalMorphism::trusted(ck.qset(), k, std::move(m));
}

template <class Unit, class Extend>
void check_hom_bijection(CheckList& out, const QSet& x, const QSet& lx, const QSet& k,
                         const Unit& unit, const Extend& extend, const Limits& lim)
{
    auto homs_x = enumerate_functional_homs(x, k, lim);
    auto homs_lx = enumerate_functional_homs(lx, k, lim);
    out.add("|Hom(X,K)| = |Hom(LX,K)|", homs_x.size() == homs_lx.size(),
            std::to_string(homs_x.size()) + " vs " + std::to_string(homs_lx.size()));
    // h ↦ h∘η is injective, and f ↦ extend(f) is its inverse
    std::vector<std::vector<Point>> pulled;
    bool inverse_ok = true;
    for (const auto& h : homs_lx) {
        auto hf = compose_functional(h, unit);
        pulled.push_back(hf.map());
        if (!(extend(hf) == h))
            inverse_ok = false;
    }
    std::sort(pulled.begin(), pulled.end());
    const bool injective = std::adjacent_find(pulled.begin(), pulled.end()) == pulled.end();
    bool round_trip = true;
    for (const auto& f : homs_x)
        if (!(compose_functional(extend(f), unit) == f))
            round_trip = false;
    out.add("precomposition with the unit is injective", injective);
    out.add("extension along the unit is inverse to precomposition", inverse_ok && round_trip);
}

} // namespace detail

/// Instance-level check that ℭ is left adjoint to the inclusion of
/// gluing-complete Q-sets: unit/counit naturality on enumerated morphisms,
/// both zig-zag identities, and the hom bijection across the unit.
inline CheckList verify_gluing_adjunction(const QSet& x, const QSet& k, const Limits& lim = {})
{
    if (!is_gluing_complete(k, lim))
        throw Error(Errc::not_gluing_complete, "adjunction target must be gluing-complete");
    CheckList out;
    auto cx = gluing_completion(x, lim);
    auto ck = gluing_completion(k, lim);
    std::string why;
    auto eps_k = detail::gluing_counit(k, ck, why);
    out.add("counit ε_K well defined", eps_k.has_value(), why);
    if (!eps_k)
        return out;

    auto c_completion = is_gluing_complete(cx.qset(), lim);
    out.add("ℭX is gluing-complete", c_completion.complete);

    // (εL)∘(Lη) = id on ℭX
    {
        auto ccx = gluing_completion(cx.qset(), lim);
        auto l_eta = gluing_completion_on_morphism(cx.unit, cx, ccx);
        auto eps_l = detail::gluing_counit(cx.qset(), ccx, why);
        const bool ok = eps_l && compose_functional(*eps_l, l_eta) == identity(cx.qset());
        out.add("zig-zag (εL)∘(Lη) = id", ok, eps_l ? "" : why);
    }
    // (Rε)∘(ηR) = id on K
    out.add("zig-zag (Rε)∘(ηR) = id", compose_functional(*eps_k, ck.unit) == identity(k));

    bool nat_eta = true, nat_eps = true, unit_delta = true;
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b)
            unit_delta = unit_delta && cx.qset().delta(cx.unit(a), cx.unit(b)) == x.delta(a, b);
    for (const auto& f : enumerate_functional_homs(x, k, lim)) {
        auto cf = gluing_completion_on_morphism(f, cx, ck);
        nat_eta = nat_eta && compose_functional(cf, cx.unit) == compose_functional(ck.unit, f);
    }
    for (const auto& g : enumerate_functional_homs(k, k, lim)) {
        auto cg = gluing_completion_on_morphism(g, ck, ck);
        nat_eps = nat_eps && compose_functional(g, *eps_k) == compose_functional(*eps_k, cg);
    }
    out.add("unit preserves δ", unit_delta);
    out.add("η natural on Hom(X,K)", nat_eta);
    out.add("ε natural on Hom(K,K)", nat_eps);

    auto extend = [&](const FunctionalMorphism& f) {
        return compose_functional(*eps_k, gluing_completion_on_morphism(f, cx, ck));
    };
    detail::check_hom_bijection(out, x, cx.qset(), k, cx.unit, extend, lim);
    return out;
}

/// Same shape of check for −/δ as reflector onto extensional Q-sets.
inline CheckList verify_extensional_adjunction(const QSet& x, const QSet& k, const Limits& lim = {})
{
    if (!is_extensional(k))
        throw Error(Errc::property_required, "adjunction target must be extensional");
    CheckList out;
    auto qx = delta_quotient(x);
    auto qk = delta_quotient(k);
    // counit K/δ → K unwraps singleton classes
    std::vector<Point> unwrap(qk.partition.size());
    for (std::size_t c = 0; c < unwrap.size(); ++c)
        unwrap[c] = qk.partition.representative(c);
    auto eps_k = FunctionalMorphism::make(qk.qset, k, unwrap);
    out.add("X/δ is extensional", is_extensional(qx.qset).extensional);
    {
        auto qqx = delta_quotient(qx.qset);
        auto l_eta = quotient_on_morphism(qx.projection, qx, qqx);
        std::vector<Point> un(qqx.partition.size());
        for (std::size_t c = 0; c < un.size(); ++c)
            un[c] = qqx.partition.representative(c);
        auto eps_l = FunctionalMorphism::make(qqx.qset, qx.qset, un);
        out.add("zig-zag (εL)∘(Lη) = id", compose_functional(eps_l, l_eta) == identity(qx.qset));
    }
    out.add("zig-zag (Rε)∘(ηR) = id", compose_functional(eps_k, qk.projection) == identity(k));
    bool nat = true;
    for (const auto& f : enumerate_functional_homs(x, k, lim))
        nat = nat && compose_functional(quotient_on_morphism(f, qx, qk), qx.projection) ==
                         compose_functional(qk.projection, f);
    out.add("η natural on Hom(X,K)", nat);
    auto extend = [&](const FunctionalMorphism& f) {
        return compose_functional(eps_k, quotient_on_morphism(f, qx, qk));
    };
    detail::check_hom_bijection(out, x, qx.qset, k, qx.projection, extend, lim);
    return out;
}

} // namespace qsets
