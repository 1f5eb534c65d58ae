#pragma once

/*! \file
 * \brief Functional, relational and e-morphisms between Q-sets, their
 * composition, the graph functor, and hom-set enumeration.
 */

#include "checks.hpp"
#include "limits.hpp"
#include "qset.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsets {

// ---------------------------------------------------------------------------
// Functional morphisms

/// δ(x,x') ≤ δ(fx,fx') and E(fx) = Ex.
inline Verdict check_functional(const QSet& dom, const QSet& cod, std::span<const Point> map)
{
    if (!(dom.quantale() == cod.quantale()))
        return Verdict::fail("same quantale", "dom/cod");
    if (map.size() != dom.size())
        return Verdict::fail("total map", "size " + std::to_string(map.size()));
    for (Point y : map)
        if (y >= cod.size())
            return Verdict::fail("total map", "target out of range");
    const auto& q = dom.quantale();
    for (Point x = 0; x < dom.size(); ++x)
        if (cod.extent(map[x]) != dom.extent(x))
            return Verdict::fail("E(f x) = E x", dom.name(x));
    for (Point x = 0; x < dom.size(); ++x)
        for (Point y = x + 1; y < dom.size(); ++y)
            if (!q.le(dom.delta(x, y), cod.delta(map[x], map[y])))
                return Verdict::fail("δ(x,x') ≤ δ(f x,f x')", "(" + dom.name(x) + "," + dom.name(y) + ")");
    return {};
}

class FunctionalMorphism {
public:
    static FunctionalMorphism make(QSet dom, QSet cod, std::vector<Point> map)
    {
        if (auto v = check_functional(dom, cod, map); !v)
            throw Error(Errc::not_a_morphism, "functional: " + v.describe());
        return trusted(std::move(dom), std::move(cod), std::move(map));
    }

    /// No validation outside debug builds.
    static FunctionalMorphism trusted(QSet dom, QSet cod, std::vector<Point> map)
    {
#ifndef NDEBUG
        if (auto v = check_functional(dom, cod, map); !v)
            throw std::logic_error("invalid functional morphism: " + v.describe());
#endif
        return FunctionalMorphism(std::move(dom), std::move(cod), std::move(map));
    }

    const QSet& dom() const noexcept { return dom_; }
    const QSet& cod() const noexcept { return cod_; }
    const std::vector<Point>& map() const noexcept { return map_; }
    Point operator()(Point x) const { return map_.at(x); }

    friend bool operator==(const FunctionalMorphism& a, const FunctionalMorphism& b)
    {
        return a.map_ == b.map_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
    }

private:
    FunctionalMorphism(QSet dom, QSet cod, std::vector<Point> map)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map))
    {
    }

    QSet dom_, cod_;
    std::vector<Point> map_;
};

inline FunctionalMorphism identity(const QSet& x)
{
    std::vector<Point> m(x.size());
    for (Point i = 0; i < x.size(); ++i)
        m[i] = i;
    return FunctionalMorphism::trusted(x, x, std::move(m));
}

/// g ∘ f.
inline FunctionalMorphism compose_functional(const FunctionalMorphism& g, const FunctionalMorphism& f)
{
    if (!(f.cod() == g.dom()))
        throw Error(Errc::domain_mismatch, "cod(f) ≠ dom(g)");
    std::vector<Point> m(f.dom().size());
    for (Point x = 0; x < m.size(); ++x)
        m[x] = g(f(x));
    return FunctionalMorphism::trusted(f.dom(), g.cod(), std::move(m));
}

// ---------------------------------------------------------------------------
// Relational morphisms

inline Verdict check_relational(const QSet& dom, const QSet& cod, std::span<const Elem> table)
{
    if (!(dom.quantale() == cod.quantale()))
        return Verdict::fail("same quantale", "dom/cod");
    const auto& q = dom.quantale();
    const std::size_t nx = dom.size(), ny = cod.size();
    if (table.size() != nx * ny)
        return Verdict::fail("total table", "size " + std::to_string(table.size()));
    for (Elem v : table)
        if (v >= q.size())
            return Verdict::fail("total table", "value out of range");
    auto phi = [&](Point x, Point y) { return table[x * ny + y]; };
    auto pair = [&](Point x, Point y) { return "(" + dom.name(x) + "," + cod.name(y) + ")"; };
    for (Point x = 0; x < nx; ++x)
        for (Point y = 0; y < ny; ++y) {
            if (q.tensor(phi(x, y), cod.extent(y)) != phi(x, y))
                return Verdict::fail("φ(x,y)⊗Ey = φ(x,y)", pair(x, y));
            if (q.tensor(dom.extent(x), phi(x, y)) != phi(x, y))
                return Verdict::fail("Ex⊗φ(x,y) = φ(x,y)", pair(x, y));
            for (Point x2 = 0; x2 < nx; ++x2)
                if (!q.le(q.tensor(dom.delta(x, x2), phi(x, y)), phi(x2, y)))
                    return Verdict::fail("δ(x,x')⊗φ(x,y) ≤ φ(x',y)", pair(x, y) + " x'=" + dom.name(x2));
            for (Point y2 = 0; y2 < ny; ++y2) {
                if (!q.le(q.tensor(phi(x, y), cod.delta(y, y2)), phi(x, y2)))
                    return Verdict::fail("φ(x,y)⊗δ(y,y') ≤ φ(x,y')", pair(x, y) + " y'=" + cod.name(y2));
                if (!q.le(q.tensor(phi(x, y), phi(x, y2)), cod.delta(y, y2)))
                    return Verdict::fail("φ(x,y)⊗φ(x,y') ≤ δ(y,y')", pair(x, y) + " y'=" + cod.name(y2));
            }
        }
    for (Point x = 0; x < nx; ++x) {
        Elem acc = q.bottom();
        for (Point y = 0; y < ny; ++y)
            acc = q.join(acc, phi(x, y));
        if (acc != dom.extent(x))
            return Verdict::fail("⋁_y φ(x,y) = Ex", dom.name(x));
    }
    return {};
}

class RelationalMorphism {
public:
    static RelationalMorphism make(QSet dom, QSet cod, std::vector<Elem> table)
    {
        if (auto v = check_relational(dom, cod, table); !v)
            throw Error(Errc::not_a_morphism, "relational: " + v.describe());
        return trusted(std::move(dom), std::move(cod), std::move(table));
    }

    static RelationalMorphism trusted(QSet dom, QSet cod, std::vector<Elem> table)
    {
#ifndef NDEBUG
        if (auto v = check_relational(dom, cod, table); !v)
            throw std::logic_error("invalid relational morphism: " + v.describe());
#endif
        return RelationalMorphism(std::move(dom), std::move(cod), std::move(table));
    }

    const QSet& dom() const noexcept { return dom_; }
    const QSet& cod() const noexcept { return cod_; }
    const std::vector<Elem>& table() const noexcept { return table_; }
    Elem operator()(Point x, Point y) const { return table_[x * cod_.size() + y]; }

    friend bool operator==(const RelationalMorphism& a, const RelationalMorphism& b)
    {
        return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
    }

private:
    RelationalMorphism(QSet dom, QSet cod, std::vector<Elem> table)
        : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table))
    {
    }

    QSet dom_, cod_;
    std::vector<Elem> table_;
};

/// δ_X viewed as the relational identity on X.
inline RelationalMorphism delta_relation(const QSet& x)
{
    return RelationalMorphism::trusted(x, x, x.delta_table());
}

/// [ψ∘φ](x,z) = ⋁_y φ(x,y) ⊗ ψ(y,z).
inline RelationalMorphism compose_relational(const RelationalMorphism& psi, const RelationalMorphism& phi)
{
    if (!(phi.cod() == psi.dom()))
        throw Error(Errc::domain_mismatch, "cod(φ) ≠ dom(ψ)");
    const auto& q = phi.dom().quantale();
    const std::size_t nx = phi.dom().size(), ny = phi.cod().size(), nz = psi.cod().size();
    std::vector<Elem> t(nx * nz, q.bottom());
    for (Point x = 0; x < nx; ++x)
        for (Point z = 0; z < nz; ++z) {
            Elem acc = q.bottom();
            for (Point y = 0; y < ny; ++y)
                acc = q.join(acc, q.tensor(phi(x, y), psi(y, z)));
            t[x * nz + z] = acc;
        }
    return RelationalMorphism::trusted(phi.dom(), psi.cod(), std::move(t));
}

/// φ ≤ ψ pointwise.
inline bool pointwise_le(const RelationalMorphism& phi, const RelationalMorphism& psi)
{
    const auto& q = phi.dom().quantale();
    for (std::size_t i = 0; i < phi.table().size(); ++i)
        if (!q.le(phi.table()[i], psi.table()[i]))
            return false;
    return true;
}

/// (Graph f)(x,y) = δ(f x, y).
inline RelationalMorphism graph(const FunctionalMorphism& f)
{
    const auto& cod = f.cod();
    std::vector<Elem> t(f.dom().size() * cod.size());
    for (Point x = 0; x < f.dom().size(); ++x)
        for (Point y = 0; y < cod.size(); ++y)
            t[x * cod.size() + y] = cod.delta(f(x), y);
    return RelationalMorphism::trusted(f.dom(), cod, std::move(t));
}

// ---------------------------------------------------------------------------
// e-morphisms: functional morphisms up to an idempotent error e.
//
// Conditions: e ⊗ δ(x,x') ≤ δ(fx,fx') and E(fx) = e ⊗ Ex. With e the unit these
// are exactly the functional morphisms, and errors compose by ⊗.

inline Verdict check_e_morphism(const QSet& dom, const QSet& cod, std::span<const Point> map, Elem e)
{
    const auto& q = dom.quantale();
    if (!(dom.quantale() == cod.quantale()))
        return Verdict::fail("same quantale", "dom/cod");
    if (e >= q.size() || !q.is_idempotent(e))
        return Verdict::fail("error is idempotent", e < q.size() ? q.name(e) : "?");
    if (map.size() != dom.size())
        return Verdict::fail("total map", "size " + std::to_string(map.size()));
    for (Point y : map)
        if (y >= cod.size())
            return Verdict::fail("total map", "target out of range");
    for (Point x = 0; x < dom.size(); ++x)
        if (cod.extent(map[x]) != q.tensor(e, dom.extent(x)))
            return Verdict::fail("E(f x) = e⊗E x", dom.name(x));
    for (Point x = 0; x < dom.size(); ++x)
        for (Point y = 0; y < dom.size(); ++y)
            if (!q.le(q.tensor(e, dom.delta(x, y)), cod.delta(map[x], map[y])))
                return Verdict::fail("e⊗δ(x,x') ≤ δ(f x,f x')", "(" + dom.name(x) + "," + dom.name(y) + ")");
    return {};
}

class EMorphism {
public:
    static EMorphism make(QSet dom, QSet cod, std::vector<Point> map, Elem error)
    {
        if (auto v = check_e_morphism(dom, cod, map, error); !v)
            throw Error(Errc::not_a_morphism, "e-morphism: " + v.describe());
        return EMorphism(std::move(dom), std::move(cod), std::move(map), error);
    }

    const QSet& dom() const noexcept { return dom_; }
    const QSet& cod() const noexcept { return cod_; }
    const std::vector<Point>& map() const noexcept { return map_; }
    Elem error() const noexcept { return error_; }
    Point operator()(Point x) const { return map_.at(x); }

private:
    EMorphism(QSet dom, QSet cod, std::vector<Point> map, Elem error)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)), error_(error)
    {
    }

    QSet dom_, cod_;
    std::vector<Point> map_;
    Elem error_;
};

/// Composite of an e-morphism f and an e'-morphism g, carrying error e ⊗ e'.
/// The composite is re-checked.
inline EMorphism compose_e(const EMorphism& g, const EMorphism& f)
{
    if (!(f.cod() == g.dom()))
        throw Error(Errc::domain_mismatch, "cod(f) ≠ dom(g)");
    std::vector<Point> m(f.dom().size());
    for (Point x = 0; x < m.size(); ++x)
        m[x] = g(f(x));
    return EMorphism::make(f.dom(), g.cod(), std::move(m), f.dom().quantale().tensor(f.error(), g.error()));
}

// ---------------------------------------------------------------------------
// Equalizers

struct Equalizer {
    QSet qset;
    FunctionalMorphism inclusion;
};

/// The subset where f and g agree, with δ restricted.
inline Equalizer equalizer(const FunctionalMorphism& f, const FunctionalMorphism& g)
{
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
        throw Error(Errc::domain_mismatch, "equalizer of non-parallel morphisms");
    const auto& x = f.dom();
    std::vector<Point> keep;
    for (Point a = 0; a < x.size(); ++a)
        if (f(a) == g(a))
            keep.push_back(a);
    std::vector<std::string> names;
    std::vector<Elem> delta;
    for (Point a : keep)
        names.push_back(x.name(a));
    for (Point a : keep)
        for (Point b : keep)
            delta.push_back(x.delta(a, b));
    auto sub = QSet::build(x.quantale(), std::move(names), std::move(delta));
    return {sub, FunctionalMorphism::make(sub, x, keep)};
}

// ---------------------------------------------------------------------------
// Hom-set enumeration

/// All functional morphisms X → Y in lexicographic order of their maps.
inline std::vector<FunctionalMorphism> enumerate_functional_homs(const QSet& x, const QSet& y,
                                                                 const Limits& lim = {})
{
    if (!(x.quantale() == y.quantale()))
        throw Error(Errc::domain_mismatch, "hom between Q-sets over different quantales");
    const auto& q = x.quantale();
    {
        // candidates for each point are the targets of equal extent
        double space = 1;
        for (Point i = 0; i < x.size(); ++i) {
            std::size_t c = 0;
            for (Point t = 0; t < y.size(); ++t)
                c += y.extent(t) == x.extent(i);
            space *= static_cast<double>(c);
        }
        detail::guard_space(space, 1, lim, "functional homs");
    }
    std::vector<FunctionalMorphism> out;
    std::vector<Point> map(x.size());
    auto dfs = [&](auto&& self, Point i) -> void {
        if (i == x.size()) {
            out.push_back(FunctionalMorphism::trusted(x, y, map));
            return;
        }
        for (Point t = 0; t < y.size(); ++t) {
            if (y.extent(t) != x.extent(i))
                continue;
            bool ok = true;
            for (Point j = 0; j < i && ok; ++j)
                ok = q.le(x.delta(i, j), y.delta(t, map[j]));
            if (!ok)
                continue;
            map[i] = t;
            self(self, i + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

/// All relational morphisms X → Y, tables ordered lexicographically by
/// (x, y, element index). Cell values are restricted to q with Ex⊗q = q = q⊗Ey.
inline std::vector<RelationalMorphism> enumerate_relational_homs(const QSet& x, const QSet& y,
                                                                 const Limits& lim = {})
{
    if (!(x.quantale() == y.quantale()))
        throw Error(Errc::domain_mismatch, "hom between Q-sets over different quantales");
    const auto& q = x.quantale();
    if (x.size() > lim.max_rel_carrier || y.size() > lim.max_rel_carrier || q.size() > lim.max_rel_quantale)
        throw Error(Errc::too_large, "relational hom enumeration limited to |X|,|Y| ≤ " +
                                         std::to_string(lim.max_rel_carrier) + " and |Q| ≤ " +
                                         std::to_string(lim.max_rel_quantale));
    const std::size_t nx = x.size(), ny = y.size();
    std::vector<std::vector<Elem>> domain(nx * ny);
    for (Point a = 0; a < nx; ++a)
        for (Point b = 0; b < ny; ++b)
            for (std::size_t v = 0; v < q.size(); ++v)
                if (q.tensor(x.extent(a), Elem(v)) == v && q.tensor(Elem(v), y.extent(b)) == v)
                    domain[a * ny + b].push_back(Elem(v));

    std::vector<RelationalMorphism> out;
    std::vector<Elem> t(nx * ny, q.bottom());
    auto fits = [&](Point a, Point b, Elem v) {
        for (Point a2 = 0; a2 < a; ++a2) {
            Elem w = t[a2 * ny + b];
            if (!q.le(q.tensor(x.delta(a, a2), v), w) || !q.le(q.tensor(x.delta(a2, a), w), v))
                return false;
        }
        if (!q.le(q.tensor(v, v), y.extent(b)))
            return false;
        for (Point b2 = 0; b2 < b; ++b2) {
            Elem w = t[a * ny + b2];
            if (!q.le(q.tensor(v, y.delta(b, b2)), w) || !q.le(q.tensor(w, y.delta(b2, b)), v))
                return false;
            if (!q.le(q.tensor(v, w), y.delta(b, b2)))
                return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, std::size_t cell) -> void {
        if (cell == nx * ny) {
            if (check_relational(x, y, t))
                out.push_back(RelationalMorphism::trusted(x, y, t));
            return;
        }
        const Point a = cell / ny, b = cell % ny;
        for (Elem v : domain[cell]) {
            if (!fits(a, b, v))
                continue;
            t[cell] = v;
            if (b + 1 == ny) {
                Elem acc = q.bottom();
                for (Point b2 = 0; b2 < ny; ++b2)
                    acc = q.join(acc, t[a * ny + b2]);
                if (acc != x.extent(a))
                    continue;
            }
            self(self, cell + 1);
        }
        t[cell] = q.bottom();
    };
    dfs(dfs, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Faithfulness of Graph

struct FaithfulnessVerdict {
    bool faithful = true;
    std::size_t hom_count = 0;
    std::optional<std::pair<std::vector<Point>, std::vector<Point>>> witness; ///< two maps with equal graphs
    explicit operator bool() const noexcept { return faithful; }
};

/// Whether Graph is injective on Hom_f(X, Y).
inline FaithfulnessVerdict graph_faithful_on(const QSet& x, const QSet& y, const Limits& lim = {})
{
    auto homs = enumerate_functional_homs(x, y, lim);
    FaithfulnessVerdict v;
    v.hom_count = homs.size();
    std::vector<std::vector<Elem>> graphs;
    graphs.reserve(homs.size());
    for (const auto& f : homs)
        graphs.push_back(graph(f).table());
    for (std::size_t i = 0; i < homs.size() && v.faithful; ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j)
            if (graphs[i] == graphs[j]) {
                v.faithful = false;
                v.witness = std::pair{homs[i].map(), homs[j].map()};
                break;
            }
    return v;
}

} // namespace qsets
