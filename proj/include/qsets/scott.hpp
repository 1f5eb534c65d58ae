#pragma once

/*! \file
 * \brief Singletons, representability, Scott-completeness, the Q-set 𝔖(X) of
 * singletons, the completion it induces, and checks relating Scott- and
 * gluing-completeness.
 */

#include "checks.hpp"
#include "gluing.hpp"
#include "limits.hpp"
#include "morphism.hpp"
#include "qset.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsets {

/// A Q-valued vector indexed by the carrier.
using Singleton = std::vector<Elem>;

inline std::string singleton_name(const Quantale& q, const Singleton& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + q.name(s[i]);
    return out + ")";
}

inline Verdict check_singleton(const QSet& x, const Singleton& s)
{
    const auto& q = x.quantale();
    if (s.size() != x.size())
        return Verdict::fail("length", std::to_string(s.size()) + " values for " + std::to_string(x.size()) + " points");
    Elem total = q.bottom();
    for (Point a = 0; a < x.size(); ++a) {
        total = q.join(total, s[a]);
        if (q.tensor(s[a], x.extent(a)) != s[a])
            return Verdict::fail("σ(x)⊗Ex = σ(x)", x.name(a));
    }
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b) {
            if (!q.le(q.tensor(s[a], x.delta(a, b)), s[b]))
                return Verdict::fail("σ(x)⊗δ(x,y) ≤ σ(y)", x.name(a) + "," + x.name(b));
            if (!q.le(q.tensor(s[a], s[b]), x.delta(a, b)))
                return Verdict::fail("σ(x)⊗σ(y) ≤ δ(x,y)", x.name(a) + "," + x.name(b));
        }
    for (Point a = 0; a < x.size(); ++a)
        if (q.tensor(s[a], total) != s[a])
            return Verdict::fail("σ(x)⊗⋁σ = σ(x)", x.name(a));
    return {};
}

/// δ(−, p).
inline Singleton representable(const QSet& x, Point p)
{
    Singleton s(x.size());
    for (Point a = 0; a < x.size(); ++a)
        s[a] = x.delta(a, p);
    return s;
}

/// δ({−}, A) = ⋁_{a∈A} δ(−, a).
inline Singleton family_singleton(const QSet& x, Family fam)
{
    const auto& q = x.quantale();
    Singleton s(x.size(), q.bottom());
    for (Point y = 0; y < x.size(); ++y)
        detail::for_each_member(fam, [&](Point a) { s[y] = q.join(s[y], x.delta(y, a)); });
    return s;
}

/// All singletons, lexicographic in element index.
inline std::vector<Singleton> enumerate_singletons(const QSet& x, const Limits& lim = {})
{
    const auto& q = x.quantale();
    const std::size_t n = x.size();
    std::vector<std::vector<Elem>> dom(n);
    double space = 1;
    for (Point a = 0; a < n; ++a) {
        for (Elem v = 0; v < q.size(); ++v)
            if (q.tensor(v, x.extent(a)) == v)
                dom[a].push_back(v);
        space *= static_cast<double>(dom[a].size());
    }
    if (space > lim.max_search_space)
        throw Error(Errc::too_large, "singleton search space " + std::to_string(space) + " exceeds the configured bound");

    std::vector<Singleton> out;
    Singleton cur(n);
    auto fits = [&](Point k) {
        const Elem v = cur[k];
        if (!q.le(q.tensor(v, v), x.extent(k)))
            return false;
        for (Point a = 0; a < k; ++a) {
            if (!q.le(q.tensor(cur[a], x.delta(a, k)), v) || !q.le(q.tensor(v, x.delta(k, a)), cur[a]))
                return false;
            if (!q.le(q.tensor(cur[a], v), x.delta(a, k)))
                return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, Point k) -> void {
        if (k == n) {
            const Elem total = q.join([&] {
                ElemSet s = 0;
                for (Elem v : cur)
                    s |= ElemSet{1} << v;
                return s;
            }());
            for (Elem v : cur)
                if (q.tensor(v, total) != v)
                    return;
            out.push_back(cur);
            return;
        }
        for (Elem v : dom[k]) {
            cur[k] = v;
            if (fits(k))
                self(self, k + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

/// {x : ∀y σ(y) = δ(y,x)}.
inline std::vector<Point> representers(const QSet& x, const Singleton& s)
{
    std::vector<Point> out;
    for (Point p = 0; p < x.size(); ++p) {
        bool ok = true;
        for (Point y = 0; y < x.size() && ok; ++y)
            ok = s[y] == x.delta(y, p);
        if (ok)
            out.push_back(p);
    }
    return out;
}

struct ScottReport {
    std::vector<Singleton> singletons;
    std::vector<std::vector<Point>> representers; ///< parallel to singletons
    bool scott_complete = true;
    std::optional<std::size_t> witness;  ///< index of the first singleton without exactly one representer
    bool continuity_holds = true;        ///< σ(x_A) = ⋁_{a∈A} σ(a) wherever x_A glues a compatible A
    bool continuity_checked = false;

    std::size_t count() const noexcept { return singletons.size(); }
    explicit operator bool() const noexcept { return scott_complete; }
};

inline ScottReport is_scott_complete(const QSet& x, const Limits& lim = {})
{
    ScottReport r;
    r.singletons = enumerate_singletons(x, lim);
    for (std::size_t i = 0; i < r.singletons.size(); ++i) {
        r.representers.push_back(representers(x, r.singletons[i]));
        if (r.representers.back().size() != 1 && r.scott_complete) {
            r.scott_complete = false;
            r.witness = i;
        }
    }
    if (x.size() <= lim.max_family_carrier && x.size() <= 63) {
        const auto& q = x.quantale();
        r.continuity_checked = true;
        for (Family fam : enumerate_compatible(x, lim))
            for (Point g : gluings_of(x, fam).gluings)
                for (const auto& s : r.singletons) {
                    Elem acc = q.bottom();
                    detail::for_each_member(fam, [&](Point a) { acc = q.join(acc, s[a]); });
                    r.continuity_holds = r.continuity_holds && acc == s[g];
                }
    }
    return r;
}

// ---------------------------------------------------------------------------
// 𝔖(X)

struct SingletonSpace {
    QSet qset;
    QSet base;
    std::vector<Singleton> singletons; ///< point i of qset is singletons[i]

    std::optional<Point> index_of(const Singleton& s) const
    {
        auto it = std::lower_bound(singletons.begin(), singletons.end(), s);
        if (it == singletons.end() || *it != s)
            return std::nullopt;
        return static_cast<Point>(it - singletons.begin());
    }
};

namespace detail {

inline void require_strong(const Quantale& q, const Limits& lim, const char* what)
{
    if (!q.props().strong && !lim.force_strength)
        throw Error(Errc::strength_required, std::string(what) + " needs a strong quantale");
}

inline Elem singleton_delta(const Quantale& q, const Singleton& s, const Singleton& t)
{
    Elem acc = q.bottom();
    for (std::size_t i = 0; i < s.size(); ++i)
        acc = q.join(acc, q.tensor(s[i], t[i]));
    return acc;
}

} // namespace detail

/// δ(σ,ξ) = ⋁_x σ(x)⊗ξ(x) on all singletons. Strength-gated; under
/// Limits::force_strength a failed Q-set law raises NotAQSet.
inline SingletonSpace singletons_qset(const QSet& x, const Limits& lim = {})
{
    const auto& q = x.quantale();
    detail::require_strong(q, lim, "the Q-set of singletons");
    auto sing = enumerate_singletons(x, lim);
    const std::size_t n = sing.size();
    std::vector<std::string> names;
    for (const auto& s : sing)
        names.push_back(singleton_name(q, s));
    std::vector<Elem> delta(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            delta[i * n + j] = delta[j * n + i] = detail::singleton_delta(q, sing[i], sing[j]);
    for (std::size_t i = 0; i < n; ++i) {
        Elem total = q.bottom();
        for (Elem v : sing[i])
            total = q.join(total, v);
        if (delta[i * n + i] != total)
            throw Error(Errc::not_a_qset, "extent of " + names[i] + " is " + q.name(delta[i * n + i]) +
                                              ", not the join " + q.name(total));
    }
    std::optional<QSet> qs;
    try {
        qs = QSet::build(q, std::move(names), std::move(delta));
    } catch (const Error& e) {
        throw Error(Errc::not_a_qset, e.what());
    }
    return {*qs, x, std::move(sing)};
}

/// δ(σ_x, ξ) = ξ(x) for every point x and singleton ξ.
inline Verdict verify_yoneda(const SingletonSpace& sp)
{
    const auto& x = sp.base;
    for (Point p = 0; p < x.size(); ++p) {
        auto sx = sp.index_of(representable(x, p));
        if (!sx)
            return Verdict::fail("σ_x is a singleton", x.name(p));
        for (Point xi = 0; xi < sp.singletons.size(); ++xi)
            if (sp.qset.delta(*sx, xi) != sp.singletons[xi][p])
                return Verdict::fail("δ(σ_x,ξ) = ξ(x)", x.name(p) + "," + sp.qset.name(xi));
    }
    return {};
}

/// (𝔖f)(ξ) = ⋁_x δ(f x, −)⊗ξ(x).
inline Singleton push_singleton(const FunctionalMorphism& f, const Singleton& xi)
{
    const auto& y = f.cod();
    const auto& q = y.quantale();
    Singleton out(y.size(), q.bottom());
    for (Point b = 0; b < y.size(); ++b)
        for (Point a = 0; a < xi.size(); ++a)
            out[b] = q.join(out[b], q.tensor(y.delta(f(a), b), xi[a]));
    return out;
}

inline FunctionalMorphism singletons_on_morphism(const FunctionalMorphism& f, const SingletonSpace& sx,
                                                 const SingletonSpace& sy)
{
    std::vector<Point> m(sx.singletons.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto j = sy.index_of(push_singleton(f, sx.singletons[i]));
        if (!j)
            throw std::logic_error("image of a singleton is not a singleton");
        m[i] = *j;
    }
    return FunctionalMorphism::make(sx.qset, sy.qset, std::move(m));
}

enum class Certification { verified_by_enumeration, certified_by_theorem };

inline const char* certification_name(Certification c)
{
    return c == Certification::verified_by_enumeration ? "verified by enumeration" : "certified by theorem (strong Q)";
}

struct ScottCompletion {
    SingletonSpace space;
    FunctionalMorphism unit; ///< x ↦ δ(−,x)
    Certification certification = Certification::certified_by_theorem;
    bool complete = true;    ///< outcome of the enumeration when it ran

    const QSet& qset() const noexcept { return space.qset; }
};

inline FunctionalMorphism singleton_unit(const SingletonSpace& sp)
{
    std::vector<Point> m(sp.base.size());
    for (Point p = 0; p < m.size(); ++p) {
        auto i = sp.index_of(representable(sp.base, p));
        if (!i)
            throw std::logic_error("representable singleton missing");
        m[p] = *i;
    }
    return FunctionalMorphism::make(sp.base, sp.qset, std::move(m));
}

/// 𝔖(X) with its unit. When |𝔖X| ≤ Limits::max_double_enum the singletons
/// over 𝔖X are enumerated to confirm Scott-completeness.
inline ScottCompletion scott_completion(const QSet& x, const Limits& lim = {})
{
    auto sp = singletons_qset(x, lim);
    auto unit = singleton_unit(sp);
    ScottCompletion c{std::move(sp), std::move(unit)};
    if (c.space.singletons.size() <= lim.max_double_enum) {
        c.certification = Certification::verified_by_enumeration;
        c.complete = is_scott_complete(c.space.qset, lim).scott_complete;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Relational side

/// φ: X → 𝔖X and φ⁻¹: 𝔖X → X, both ξ(x).
inline std::pair<RelationalMorphism, RelationalMorphism> relational_iso_to_completion(const SingletonSpace& sp)
{
    const auto& x = sp.base;
    const std::size_t n = x.size(), m = sp.singletons.size();
    std::vector<Elem> fwd(n * m), bwd(m * n);
    for (Point p = 0; p < n; ++p)
        for (std::size_t s = 0; s < m; ++s)
            fwd[p * m + s] = bwd[s * n + p] = sp.singletons[s][p];
    return {RelationalMorphism::make(x, sp.qset, std::move(fwd)), RelationalMorphism::make(sp.qset, x, std::move(bwd))};
}

/// φ̌: x ↦ φ(x,−) into 𝔖(cod φ).
inline FunctionalMorphism induced_singleton_map(const RelationalMorphism& phi, const SingletonSpace& cod_space)
{
    detail::require_strong(phi.cod().quantale(), {}, "the induced singleton map");
    if (!(cod_space.base == phi.cod()))
        throw Error(Errc::domain_mismatch, "singleton space is over a different Q-set");
    std::vector<Point> m(phi.dom().size());
    for (Point a = 0; a < m.size(); ++a) {
        Singleton row(phi.cod().size());
        for (Point b = 0; b < row.size(); ++b)
            row[b] = phi(a, b);
        auto i = cod_space.index_of(row);
        if (!i)
            throw std::logic_error("row of a relational morphism is not a singleton");
        m[a] = *i;
    }
    return FunctionalMorphism::make(phi.dom(), cod_space.qset, std::move(m));
}

/// The functional morphism sending x to the representer of φ(x,−). The
/// codomain must be Scott-complete.
inline FunctionalMorphism functionalize(const RelationalMorphism& phi, const Limits& lim = {})
{
    const auto& k = phi.cod();
    auto rep = is_scott_complete(k, lim);
    if (!rep)
        throw Error(Errc::not_scott_complete,
                    "codomain singleton " + singleton_name(k.quantale(), rep.singletons[*rep.witness]) +
                        " has " + std::to_string(rep.representers[*rep.witness].size()) + " representers");
    std::vector<Point> m(phi.dom().size());
    for (Point a = 0; a < m.size(); ++a) {
        Singleton row(k.size());
        for (Point b = 0; b < row.size(); ++b)
            row[b] = phi(a, b);
        auto r = representers(k, row);
        if (r.size() != 1)
            throw Error(Errc::not_scott_complete, "row " + singleton_name(k.quantale(), row) + " is not represented");
        m[a] = r.front();
    }
    return FunctionalMorphism::make(phi.dom(), k, std::move(m));
}

// ---------------------------------------------------------------------------
// Adjunction and theorem checks

namespace detail {

inline std::optional<FunctionalMorphism> scott_counit(const SingletonSpace& sk, std::string& why)
{
    const auto& k = sk.base;
    std::vector<Point> m(sk.singletons.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto r = representers(k, sk.singletons[i]);
        if (r.size() != 1) {
            why = "singleton " + sk.qset.name(i) + " has " + std::to_string(r.size()) + " representers";
            return std::nullopt;
        }
        m[i] = r.front();
    }
    auto v = check_functional(sk.qset, k, m);
    if (!v) {
        why = "counit is not functional: " + v.describe();
        return std::nullopt;
    }
    return FunctionalMorphism::trusted(sk.qset, k, std::move(m));
}

} // namespace detail

/// Instance-level check that 𝔖 is left adjoint to the inclusion of
/// Scott-complete Q-sets. The zig-zag on 𝔖X resolves each 2-singleton
/// (𝔖η)(ξ) to its representer in 𝔖X without enumerating 𝔖𝔖X.
inline CheckList verify_scott_adjunction(const QSet& x, const QSet& k, const Limits& lim = {})
{
    detail::require_strong(x.quantale(), lim, "the Scott adjunction");
    if (!is_scott_complete(k, lim))
        throw Error(Errc::not_scott_complete, "adjunction target must be Scott-complete");
    CheckList out;
    auto sx = singletons_qset(x, lim);
    auto sk = singletons_qset(k, lim);
    auto eta_x = singleton_unit(sx);
    auto eta_k = singleton_unit(sk);
    std::string why;
    auto eps_k = detail::scott_counit(sk, why);
    out.add("counit ε_K well defined", eps_k.has_value(), why);
    if (!eps_k)
        return out;

    // (ε𝔖)∘(𝔖η) = id on 𝔖X
    {
        const auto& q = x.quantale();
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < sx.singletons.size() && ok; ++i) {
            const auto& xi = sx.singletons[i];
            // (𝔖η)(ξ)(τ) = ⋁_x δ(σ_x, τ)⊗ξ(x)
            Singleton two(sx.singletons.size(), q.bottom());
            for (Point t = 0; t < two.size(); ++t)
                for (Point a = 0; a < x.size(); ++a)
                    two[t] = q.join(two[t], q.tensor(sx.qset.delta(eta_x(a), t), xi[a]));
            auto r = representers(sx.qset, two);
            ok = r.size() == 1 && r.front() == i;
            if (!ok)
                detail = "at " + sx.qset.name(i);
        }
        out.add("zig-zag (ε𝔖)∘(𝔖η) = id", ok, detail);
    }
    out.add("zig-zag (Rε)∘(ηR) = id", compose_functional(*eps_k, eta_k) == identity(k));

    bool unit_delta = true, nat_eta = true, nat_eps = true, reps = true;
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b)
            unit_delta = unit_delta && sx.qset.delta(eta_x(a), eta_x(b)) == x.delta(a, b);
    for (const auto& f : enumerate_functional_homs(x, k, lim)) {
        auto sf = singletons_on_morphism(f, sx, sk);
        nat_eta = nat_eta && compose_functional(sf, eta_x) == compose_functional(eta_k, f);
        for (Point a = 0; a < x.size(); ++a)
            reps = reps && sf(eta_x(a)) == eta_k(f(a));
    }
    for (const auto& g : enumerate_functional_homs(k, k, lim)) {
        auto sg = singletons_on_morphism(g, sk, sk);
        nat_eps = nat_eps && compose_functional(g, *eps_k) == compose_functional(*eps_k, sg);
    }
    out.add("unit preserves δ", unit_delta);
    out.add("𝔖f(σ_x) = σ_{f x}", reps);
    out.add("η natural on Hom(X,K)", nat_eta);
    out.add("ε natural on Hom(K,K)", nat_eps);

    auto extend = [&](const FunctionalMorphism& f) { return compose_functional(*eps_k, singletons_on_morphism(f, sx, sk)); };
    detail::check_hom_bijection(out, x, sx.qset, k, eta_x, extend, lim);
    return out;
}

struct ScottGluingVerdict {
    bool scott_complete = false;
    bool gluing_complete = false;
    bool holds = true; ///< scott ⇒ gluing
};

inline ScottGluingVerdict verify_scott_implies_gluing(const QSet& x, const Limits& lim = {})
{
    ScottGluingVerdict v;
    v.scott_complete = is_scott_complete(x, lim).scott_complete;
    v.gluing_complete = is_gluing_complete(x, lim).complete;
    v.holds = !v.scott_complete || v.gluing_complete;
    return v;
}

/// (*σ): ∀x ∃y σ(x) ≤ σ(y) = Ey.
inline bool star_condition(const QSet& x, const Singleton& s)
{
    const auto& q = x.quantale();
    for (Point a = 0; a < x.size(); ++a) {
        bool found = false;
        for (Point y = 0; y < x.size() && !found; ++y)
            found = s[y] == x.extent(y) && q.le(s[a], s[y]);
        if (!found)
            return false;
    }
    return true;
}

struct ConnectionVerdict {
    bool applicable = false; ///< X extensional, as the statement assumes
    bool scott_complete = false;
    bool gluing_complete = false;
    bool star_holds = true;
    bool holds = true;       ///< scott ⇔ (gluing ∧ ∀σ (*σ))
    std::optional<Singleton> star_witness;
};

inline ConnectionVerdict verify_connection_theorem(const QSet& x, const Limits& lim = {})
{
    ConnectionVerdict v;
    v.applicable = is_extensional(x).extensional;
    auto sr = is_scott_complete(x, lim);
    v.scott_complete = sr.scott_complete;
    v.gluing_complete = is_gluing_complete(x, lim).complete;
    for (const auto& s : sr.singletons)
        if (!star_condition(x, s)) {
            v.star_holds = false;
            v.star_witness = s;
            break;
        }
    v.holds = !v.applicable || v.scott_complete == (v.gluing_complete && v.star_holds);
    return v;
}

} // namespace qsets
