#pragma once

/*! \file
 * \brief Q-sets: carriers with a quantale-valued similarity δ.
 *
 * Like Quantale, a QSet is an immutable handle over shared tables. Points are
 * opaque names; their declaration order is canonical.
 */

#include "quantale.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsets {

using Point = std::size_t;

class QSet {
public:
    /// Validates symmetry, transitivity and the extent law. `delta` is
    /// row-major over carrier × carrier.
    static QSet build(Quantale q, std::vector<std::string> carrier, std::vector<Elem> delta)
    {
        const std::size_t n = carrier.size();
        if (delta.size() != n * n)
            throw Error(Errc::malformed_table, "δ table is not total over the carrier");
        for (Elem v : delta)
            if (v >= q.size())
                throw Error(Errc::malformed_table, "δ table refers to an unknown element");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (carrier[i] == carrier[j])
                    throw Error(Errc::malformed_table, "duplicate point name " + carrier[i]);
        QSet x(std::move(q), std::move(carrier), std::move(delta));
        x.validate();
        return x;
    }

    /// Skips validation. For constructions whose validity is a theorem and is
    /// checked separately by the caller.
    static QSet trusted(Quantale q, std::vector<std::string> carrier, std::vector<Elem> delta)
    {
        return QSet(std::move(q), std::move(carrier), std::move(delta));
    }

    std::size_t size() const noexcept { return d_->carrier.size(); }
    bool empty() const noexcept { return d_->carrier.empty(); }
    const Quantale& quantale() const noexcept { return d_->q; }
    const std::string& name(Point x) const { return d_->carrier.at(x); }
    const std::vector<std::string>& carrier() const noexcept { return d_->carrier; }
    const std::vector<Elem>& delta_table() const noexcept { return d_->delta; }

    std::optional<Point> index_of(std::string_view nm) const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (d_->carrier[i] == nm)
                return i;
        return std::nullopt;
    }

    Elem delta(Point x, Point y) const noexcept { return d_->delta[x * size() + y]; }
    Elem extent(Point x) const noexcept { return delta(x, x); }

    friend bool operator==(const QSet& a, const QSet& b) noexcept
    {
        if (a.d_ == b.d_)
            return true;
        return a.d_->q == b.d_->q && a.d_->carrier == b.d_->carrier && a.d_->delta == b.d_->delta;
    }

private:
    struct Data {
        Quantale q;
        std::vector<std::string> carrier;
        std::vector<Elem> delta;
    };

    QSet(Quantale q, std::vector<std::string> carrier, std::vector<Elem> delta)
        : d_(std::make_shared<const Data>(Data{std::move(q), std::move(carrier), std::move(delta)}))
    {
    }

    void validate() const
    {
        const auto& q = quantale();
        const std::size_t n = size();
        auto triple = [&](Point a, Point b, Point c) {
            return "(" + name(a) + "," + name(b) + "," + name(c) + ")";
        };
        for (Point x = 0; x < n; ++x)
            for (Point y = x + 1; y < n; ++y)
                if (delta(x, y) != delta(y, x))
                    throw Error(Errc::not_symmetric, "δ(" + name(x) + "," + name(y) + ") ≠ δ(" + name(y) + "," +
                                                         name(x) + ")");
        for (Point x = 0; x < n; ++x)
            for (Point y = 0; y < n; ++y)
                if (q.tensor(extent(x), delta(x, y)) != delta(x, y))
                    throw Error(Errc::extent_law_fails, "E" + name(x) + "⊗δ(" + name(x) + "," + name(y) +
                                                            ") ≠ δ(" + name(x) + "," + name(y) + ") at " +
                                                            triple(x, x, y));
        for (Point x = 0; x < n; ++x)
            for (Point y = 0; y < n; ++y)
                for (Point z = 0; z < n; ++z)
                    if (!q.le(q.tensor(delta(x, y), delta(y, z)), delta(x, z)))
                        throw Error(Errc::not_transitive, "δ(x,y)⊗δ(y,z) ≰ δ(x,z) at " + triple(x, y, z));
    }

    std::shared_ptr<const Data> d_;
};

/// δ(x,y) ≤ Ex ∧ Ey for every pair. A consequence of the axioms over a
/// semicartesian quantale.
inline bool delta_below_extents(const QSet& x)
{
    const auto& q = x.quantale();
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b)
            if (!q.le(x.delta(a, b), q.meet(x.extent(a), x.extent(b))))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// δ-equivalence

/// δ(x,y) = Ex = Ey.
inline bool delta_equivalent(const QSet& x, Point a, Point b)
{
    return x.delta(a, b) == x.extent(a) && x.extent(a) == x.extent(b);
}

/// ∀z: δ(a,z) = δ(b,z), the other characterization of δ-equivalence.
inline bool same_delta_row(const QSet& x, Point a, Point b)
{
    for (Point z = 0; z < x.size(); ++z)
        if (x.delta(a, z) != x.delta(b, z))
            return false;
    return true;
}

struct DeltaPartition {
    std::vector<std::vector<Point>> blocks; ///< each block sorted; blocks ordered by least member
    std::vector<std::size_t> block_of;      ///< point -> block index

    Point representative(std::size_t block) const { return blocks.at(block).front(); }
    std::size_t size() const noexcept { return blocks.size(); }
};

/// Groups points by δ-equivalence. Throws std::logic_error if the relation is
/// not an equivalence or the two characterizations disagree, since both are
/// consequences of the Q-set axioms.
inline DeltaPartition delta_partition(const QSet& x)
{
    const std::size_t n = x.size();
    for (Point a = 0; a < n; ++a) {
        if (!delta_equivalent(x, a, a))
            throw std::logic_error("δ-equivalence is not reflexive");
        for (Point b = 0; b < n; ++b) {
            if (delta_equivalent(x, a, b) != same_delta_row(x, a, b))
                throw std::logic_error("δ-equivalence characterizations disagree at (" + x.name(a) + "," +
                                       x.name(b) + ")");
            if (delta_equivalent(x, a, b) != delta_equivalent(x, b, a))
                throw std::logic_error("δ-equivalence is not symmetric");
        }
    }
    DeltaPartition p;
    p.block_of.assign(n, n);
    for (Point a = 0; a < n; ++a) {
        if (p.block_of[a] != n)
            continue;
        const std::size_t id = p.blocks.size();
        p.blocks.emplace_back();
        for (Point b = a; b < n; ++b)
            if (delta_equivalent(x, a, b)) {
                if (p.block_of[b] != n)
                    throw std::logic_error("δ-equivalence is not transitive");
                p.block_of[b] = id;
                p.blocks.back().push_back(b);
            }
    }
    for (Point a = 0; a < n; ++a)
        for (Point b = 0; b < n; ++b)
            if ((p.block_of[a] == p.block_of[b]) != delta_equivalent(x, a, b))
                throw std::logic_error("δ-equivalence is not transitive");
    return p;
}

// ---------------------------------------------------------------------------
// Extensionality and separability

struct ExtensionalityVerdict {
    bool extensional = true;
    std::optional<std::pair<Point, Point>> witness; ///< a distinct δ-equivalent pair
    explicit operator bool() const noexcept { return extensional; }
};

inline ExtensionalityVerdict is_extensional(const QSet& x)
{
    auto p = delta_partition(x);
    for (const auto& b : p.blocks)
        if (b.size() > 1)
            return {false, std::pair{b[0], b[1]}};
    return {};
}

/// Injectivity of x ↦ δ(−,x), decided without going through the partition.
inline bool is_separable(const QSet& x)
{
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = a + 1; b < x.size(); ++b)
            if (same_delta_row(x, a, b))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline void require(bool ok, const char* flag, const char* what)
{
    if (!ok)
        throw Error(Errc::property_required, std::string(what) + " requires a " + flag + " quantale");
}

inline std::vector<Elem> elements_of(ElemSet s)
{
    std::vector<Elem> out;
    for (; s; s &= s - 1)
        out.push_back(static_cast<Elem>(std::countr_zero(s)));
    return out;
}

} // namespace detail

inline QSet empty_qset(const Quantale& q) { return QSet::build(q, {}, {}); }

/// E(Q) with δ(a,b) = a ⊗ b.
inline QSet terminal(const Quantale& q)
{
    auto es = detail::elements_of(q.idempotents());
    std::vector<std::string> names;
    std::vector<Elem> delta;
    for (Elem a : es)
        names.push_back(q.name(a));
    for (Elem a : es)
        for (Elem b : es)
            delta.push_back(q.tensor(a, b));
    return QSet::build(q, std::move(names), std::move(delta));
}

/// A one-point Q-set whose single point has the given extent.
inline QSet point(const Quantale& q, Elem extent, std::string name = "*")
{
    return QSet::build(q, {std::move(name)}, {extent});
}

/// Disjoint union; points are renamed "x@0" and "y@1", δ is ⊥ across.
inline QSet coproduct(const QSet& x, const QSet& y)
{
    if (!(x.quantale() == y.quantale()))
        throw Error(Errc::domain_mismatch, "coproduct of Q-sets over different quantales");
    const auto& q = x.quantale();
    const std::size_t n = x.size() + y.size();
    std::vector<std::string> names;
    for (const auto& s : x.carrier())
        names.push_back(s + "@0");
    for (const auto& s : y.carrier())
        names.push_back(s + "@1");
    std::vector<Elem> delta(n * n, q.bottom());
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b)
            delta[a * n + b] = x.delta(a, b);
    for (Point a = 0; a < y.size(); ++a)
        for (Point b = 0; b < y.size(); ++b)
            delta[(x.size() + a) * n + x.size() + b] = y.delta(a, b);
    return QSet::build(q, std::move(names), std::move(delta));
}

/// ∐_{i<n} E(Q): points "e@i", δ((e,i),(e',i')) = e∧e' if i = i', else ⊥.
inline QSet coproduct_of_terminals(const Quantale& q, std::size_t copies)
{
    if (copies == 0)
        throw Error(Errc::malformed_table, "index set must be nonempty");
    auto es = detail::elements_of(q.idempotents());
    const std::size_t n = es.size() * copies;
    std::vector<std::string> names;
    std::vector<Elem> delta(n * n, q.bottom());
    for (std::size_t i = 0; i < copies; ++i)
        for (Elem e : es)
            names.push_back(q.name(e) + "@" + std::to_string(i));
    for (std::size_t i = 0; i < copies; ++i)
        for (std::size_t a = 0; a < es.size(); ++a)
            for (std::size_t b = 0; b < es.size(); ++b)
                delta[(i * es.size() + a) * n + i * es.size() + b] = q.meet(es[a], es[b]);
    return QSet::build(q, std::move(names), std::move(delta));
}

/// Q itself with δ(x,y) = (x⊸y) ∧ (y⊸x).
inline QSet diagonal_qset(const Quantale& q)
{
    detail::require(q.props().integral, "integral", "diagonal_qset");
    const std::size_t n = q.size();
    std::vector<Elem> delta(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            delta[a * n + b] = q.meet(q.residue(Elem(a), Elem(b)), q.residue(Elem(b), Elem(a)));
    return QSet::build(q, q.names(), std::move(delta));
}

/// Q × E(Q) with δ((x,e),(y,a)) = a ⊗ e ⊗ [(x⊸y) ∧ (y⊸x)]. Points are "(x,e)".
inline QSet q_extent_qset(const Quantale& q)
{
    detail::require(q.props().integral, "integral", "q_extent_qset");
    auto es = detail::elements_of(q.idempotents());
    std::vector<std::pair<Elem, Elem>> pts;
    std::vector<std::string> names;
    for (std::size_t x = 0; x < q.size(); ++x)
        for (Elem e : es) {
            pts.emplace_back(Elem(x), e);
            names.push_back("(" + q.name(Elem(x)) + "," + q.name(e) + ")");
        }
    const std::size_t n = pts.size();
    std::vector<Elem> delta(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto [x, e] = pts[i];
            auto [y, a] = pts[j];
            Elem sim = q.meet(q.residue(x, y), q.residue(y, x));
            delta[i * n + j] = q.tensor(q.tensor(a, e), sim);
        }
    return QSet::build(q, std::move(names), std::move(delta));
}

/// Q itself with δ(x,y) = x ⊗ y off the diagonal and δ(x,x) = x⁺.
inline QSet upper_approx_qset(const Quantale& q)
{
    if (!q.has_upper_approximations())
        throw Error(Errc::property_required, "upper_approx_qset requires idempotent upper approximations");
    const std::size_t n = q.size();
    std::vector<Elem> delta(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            delta[a * n + b] = a == b ? *q.upper_idem(Elem(a)) : q.tensor(Elem(a), Elem(b));
    return QSet::build(q, q.names(), std::move(delta));
}

/// A subset S of a locale with δ = ∧.
inline QSet subset_locale_qset(const Quantale& q, ElemSet subset)
{
    detail::require(q.props().locale, "locale", "subset_locale_qset");
    if (subset & ~q.all())
        throw Error(Errc::malformed_table, "subset refers to an unknown element");
    auto es = detail::elements_of(subset);
    std::vector<std::string> names;
    std::vector<Elem> delta;
    for (Elem a : es)
        names.push_back(q.name(a));
    for (Elem a : es)
        for (Elem b : es)
            delta.push_back(q.meet(a, b));
    return QSet::build(q, std::move(names), std::move(delta));
}

/// Details of the module Q-set: besides δ, records for each pair whether the
/// join of the qualifying ideals itself qualifies.
struct ModuleQSet {
    QSet qset;
    std::vector<std::uint8_t> join_attained; ///< row-major over carrier²
};

/// Z/m as a module over Z/n (m | n), valued in the ideals of Z/n:
/// δ(x,y) = ⋁{I : I·x = I·y}.
inline ModuleQSet module_qset_detailed(unsigned n, unsigned m)
{
    if (n == 0 || m == 0 || n % m != 0)
        throw Error(Errc::bad_module_arith, "module Z/" + std::to_string(m) + " requires m | n for ring Z/" +
                                                std::to_string(n));
    Quantale q = ideals_quantale(n);
    auto gcd = [](unsigned a, unsigned b) {
        while (b) {
            a %= b;
            std::swap(a, b);
        }
        return a;
    };
    // ideal at index i is generated by the divisor div[i]; the submodule I·x of
    // Z/m generated by d·x is (gcd(d·x, m)).
    std::vector<unsigned> div;
    for (unsigned d = n; d >= 1; --d)
        if (n % d == 0)
            div.push_back(d);
    std::vector<std::string> names;
    for (unsigned x = 0; x < m; ++x)
        names.push_back(std::to_string(x));
    std::vector<Elem> delta(std::size_t{m} * m);
    std::vector<std::uint8_t> attained(std::size_t{m} * m);
    for (unsigned x = 0; x < m; ++x)
        for (unsigned y = 0; y < m; ++y) {
            ElemSet qualifying = 0;
            for (std::size_t i = 0; i < div.size(); ++i)
                if (gcd(div[i] * x % m, m) == gcd(div[i] * y % m, m))
                    qualifying |= ElemSet{1} << i;
            Elem j = q.join(qualifying);
            delta[x * m + y] = j;
            attained[x * m + y] = (qualifying >> j) & 1U;
        }
    return {QSet::build(q, std::move(names), std::move(delta)), std::move(attained)};
}

inline QSet module_qset(unsigned n, unsigned m) { return module_qset_detailed(n, m).qset; }

/// X ⨿ X with the two copies of A ⊆ X identified. Shared points keep their
/// names; other points become "x@0" / "x@1". Across branches,
/// δ = ⋁_{a∈A} δ(x,a) ⊗ δ(a,y). Returns the Q-set together with the two branch
/// inclusions as point maps.
struct DoubledQSet {
    QSet qset;
    std::vector<Point> upper, lower;
};

inline DoubledQSet doubled_along(const QSet& x, const std::vector<bool>& shared)
{
    const auto& q = x.quantale();
    if (shared.size() != x.size())
        throw Error(Errc::malformed_table, "subset mask does not match the carrier");
    struct Pt {
        Point base;
        int branch; // -1 when shared
    };
    std::vector<Pt> pts;
    std::vector<std::string> names;
    std::vector<Point> upper(x.size()), lower(x.size());
    for (Point a = 0; a < x.size(); ++a)
        if (shared[a]) {
            upper[a] = lower[a] = pts.size();
            pts.push_back({a, -1});
            names.push_back(x.name(a));
        }
    for (int br = 0; br < 2; ++br)
        for (Point a = 0; a < x.size(); ++a)
            if (!shared[a]) {
                (br == 0 ? upper : lower)[a] = pts.size();
                pts.push_back({a, br});
                names.push_back(x.name(a) + "@" + std::to_string(br));
            }
    const std::size_t n = pts.size();
    std::vector<Elem> delta(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& [a, bi] = pts[i];
            const auto& [b, bj] = pts[j];
            if (bi == -1 || bj == -1 || bi == bj) {
                delta[i * n + j] = x.delta(a, b);
            } else {
                Elem acc = q.bottom();
                for (Point s = 0; s < x.size(); ++s)
                    if (shared[s])
                        acc = q.join(acc, q.tensor(x.delta(a, s), x.delta(s, b)));
                delta[i * n + j] = acc;
            }
        }
    return {QSet::build(q, std::move(names), std::move(delta)), std::move(upper), std::move(lower)};
}

} // namespace qsets
