#pragma once

/*! \file
 * \brief Finite commutative quantales.
 *
 * A Quantale is an immutable handle: copies share the same tables. Elements
 * are addressed by their index in declaration order, which is also the
 * canonical order used by every enumeration and report.
 */

#include "error.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsets {

using Elem = std::uint8_t;
/// Bit i set means element i is a member.
using ElemSet = std::uint64_t;

inline constexpr std::size_t max_quantale_size = 64;

/// Property flags, computed once at construction.
struct QuantaleProps {
    bool commutative = false;
    bool semicartesian = false;
    bool integral = false;
    bool unital = false;
    bool idempotent = false;
    bool strong = false;
    bool divisible = false;
    bool locale = false;

    friend bool operator==(const QuantaleProps&, const QuantaleProps&) = default;
};

/// Result of the lower idempotent approximation: the join of all idempotents
/// e with e ≼ x, and whether that join is itself idempotent.
struct LowerApprox {
    Elem value;
    bool idempotent;
};

class Quantale;
QuantaleProps check_props(const Quantale& q);

class Quantale {
public:
    /// Builds from a generating relation (closed reflexively and transitively).
    static Quantale from_pairs(std::vector<std::string> names,
                               std::span<const std::pair<Elem, Elem>> le_pairs,
                               std::span<const Elem> tensor)
    {
        const std::size_t n = names.size();
        check_size(n);
        std::vector<std::uint8_t> le(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            le[i * n + i] = 1;
        for (auto [a, b] : le_pairs) {
            if (a >= n || b >= n)
                throw Error(Errc::malformed_table, "order pair refers to an unknown element");
            le[a * n + b] = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (le[i * n + k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (le[k * n + j])
                            le[i * n + j] = 1;
        return Quantale(std::move(names), std::move(le), tensor);
    }

    /// Builds from a full order matrix, which must already be a partial order.
    static Quantale from_matrix(std::vector<std::string> names, std::span<const std::uint8_t> le,
                                std::span<const Elem> tensor)
    {
        const std::size_t n = names.size();
        check_size(n);
        if (le.size() != n * n)
            throw Error(Errc::malformed_table, "order matrix is not " + std::to_string(n) + "x" + std::to_string(n));
        std::vector<std::uint8_t> m(le.begin(), le.end());
        for (auto& v : m)
            v = v ? 1 : 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!m[i * n + i])
                throw Error(Errc::not_a_lattice, "order is not reflexive at " + names[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (m[i * n + j] && m[j * n + k] && !m[i * n + k])
                        throw Error(Errc::not_a_lattice, "order is not transitive at (" + names[i] + "," +
                                                             names[j] + "," + names[k] + ")");
        return Quantale(std::move(names), std::move(m), tensor);
    }

    std::size_t size() const noexcept { return d_->n; }
    const std::string& name(Elem e) const { return d_->names.at(e); }
    const std::vector<std::string>& names() const noexcept { return d_->names; }

    std::optional<Elem> index_of(std::string_view nm) const
    {
        for (std::size_t i = 0; i < d_->n; ++i)
            if (d_->names[i] == nm)
                return static_cast<Elem>(i);
        return std::nullopt;
    }

    bool le(Elem a, Elem b) const noexcept { return d_->le[a * d_->n + b] != 0; }
    Elem join(Elem a, Elem b) const noexcept { return d_->join[a * d_->n + b]; }
    Elem meet(Elem a, Elem b) const noexcept { return d_->meet[a * d_->n + b]; }
    Elem tensor(Elem a, Elem b) const noexcept { return d_->tensor[a * d_->n + b]; }
    Elem top() const noexcept { return d_->top; }
    Elem bottom() const noexcept { return d_->bottom; }
    ElemSet all() const noexcept { return d_->n == 64 ? ~ElemSet{0} : (ElemSet{1} << d_->n) - 1; }

    /// Least upper bound of a subset; join of the empty set is ⊥.
    Elem join(ElemSet s) const noexcept
    {
        Elem acc = bottom();
        while (s) {
            acc = join(acc, static_cast<Elem>(std::countr_zero(s)));
            s &= s - 1;
        }
        return acc;
    }

    Elem meet(ElemSet s) const noexcept
    {
        Elem acc = top();
        while (s) {
            acc = meet(acc, static_cast<Elem>(std::countr_zero(s)));
            s &= s - 1;
        }
        return acc;
    }

    /// a ⊸ b: the largest c with a ⊗ c ≤ b.
    Elem residue(Elem a, Elem b) const noexcept { return d_->residue[a * d_->n + b]; }

    const QuantaleProps& props() const noexcept { return d_->props; }
    std::optional<Elem> unit() const noexcept { return d_->unit; }

    /// E(Q), the idempotent elements.
    ElemSet idempotents() const noexcept { return d_->idempotents; }
    bool is_idempotent(Elem e) const noexcept { return (d_->idempotents >> e) & 1U; }

    /// a ≼ b iff a = a ⊗ b.
    bool leq_mul(Elem a, Elem b) const noexcept { return tensor(a, b) == a; }

    /// x⁺ = min{e ∈ E(Q) : x ≼ e}, absent when that set has no least element.
    std::optional<Elem> upper_idem(Elem x) const noexcept
    {
        ElemSet cands = 0;
        for (std::size_t e = 0; e < size(); ++e)
            if (is_idempotent(static_cast<Elem>(e)) && leq_mul(x, static_cast<Elem>(e)))
                cands |= ElemSet{1} << e;
        for (ElemSet s = cands; s; s &= s - 1) {
            auto e = static_cast<Elem>(std::countr_zero(s));
            bool least = true;
            for (ElemSet t = cands; t && least; t &= t - 1)
                least = le(e, static_cast<Elem>(std::countr_zero(t)));
            if (least)
                return e;
        }
        return std::nullopt;
    }

    /// x⁻ = sup{e ∈ E(Q) : e ≼ x}.
    LowerApprox lower_idem(Elem x) const noexcept
    {
        ElemSet below = 0;
        for (std::size_t e = 0; e < size(); ++e)
            if (is_idempotent(static_cast<Elem>(e)) && leq_mul(static_cast<Elem>(e), x))
                below |= ElemSet{1} << e;
        Elem v = join(below);
        return {v, is_idempotent(v)};
    }

    bool has_upper_approximations() const noexcept
    {
        for (std::size_t x = 0; x < size(); ++x)
            if (!upper_idem(static_cast<Elem>(x)))
                return false;
        return true;
    }

    friend bool operator==(const Quantale& a, const Quantale& b) noexcept
    {
        if (a.d_ == b.d_)
            return true;
        return a.d_->names == b.d_->names && a.d_->le == b.d_->le && a.d_->tensor == b.d_->tensor;
    }

private:
    struct Data {
        std::size_t n = 0;
        std::vector<std::string> names;
        std::vector<std::uint8_t> le;
        std::vector<Elem> join, meet, tensor, residue;
        Elem top = 0, bottom = 0;
        ElemSet idempotents = 0;
        std::optional<Elem> unit;
        QuantaleProps props;
    };

    static void check_size(std::size_t n)
    {
        if (n == 0)
            throw Error(Errc::malformed_table, "a quantale needs at least one element");
        if (n > max_quantale_size)
            throw Error(Errc::too_large, "at most " + std::to_string(max_quantale_size) + " elements supported");
    }

    Quantale(std::vector<std::string> names, std::vector<std::uint8_t> le, std::span<const Elem> tensor)
        : d_(std::make_shared<Data>())
    {
        auto& d = *d_;
        const std::size_t n = names.size();
        d.n = n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (names[i] == names[j])
                    throw Error(Errc::malformed_table, "duplicate element name " + names[i]);
        if (tensor.size() != n * n)
            throw Error(Errc::malformed_table, "tensor table is not total");
        for (Elem v : tensor)
            if (v >= n)
                throw Error(Errc::malformed_table, "tensor table refers to an unknown element");
        d.names = std::move(names);
        d.le = std::move(le);
        d.tensor.assign(tensor.begin(), tensor.end());
        validate_lattice();
        validate_tensor();
        d.residue.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                ElemSet s = 0;
                for (std::size_t c = 0; c < n; ++c)
                    if (this->le(this->tensor(Elem(a), Elem(c)), Elem(b)))
                        s |= ElemSet{1} << c;
                d.residue[a * n + b] = join(s);
            }
        for (std::size_t a = 0; a < n; ++a)
            if (this->tensor(Elem(a), Elem(a)) == a)
                d.idempotents |= ElemSet{1} << a;
        for (std::size_t u = 0; u < n && !d.unit; ++u) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                ok = this->tensor(Elem(u), Elem(a)) == a;
            if (ok)
                d.unit = Elem(u);
        }
        d.props = check_props(*this);
    }

    void validate_lattice()
    {
        auto& d = *d_;
        const std::size_t n = d.n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (d.le[i * n + j] && d.le[j * n + i])
                    throw Error(Errc::not_a_lattice, "order is not antisymmetric: " + d.names[i] + " and " +
                                                         d.names[j] + " are mutually below each other");
        auto extremal = [&](bool least, auto bound) -> std::optional<Elem> {
            // least (resp. greatest) element among those satisfying `bound`
            for (std::size_t c = 0; c < n; ++c) {
                if (!bound(c))
                    continue;
                bool ok = true;
                for (std::size_t o = 0; o < n && ok; ++o)
                    if (bound(o))
                        ok = least ? d.le[c * n + o] : d.le[o * n + c];
                if (ok)
                    return Elem(c);
            }
            return std::nullopt;
        };
        auto bot = extremal(true, [](std::size_t) { return true; });
        auto top = extremal(false, [](std::size_t) { return true; });
        if (!bot || !top)
            throw Error(Errc::not_a_lattice, "order has no least or no greatest element");
        d.bottom = *bot;
        d.top = *top;
        d.join.resize(n * n);
        d.meet.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                auto j = extremal(true, [&](std::size_t c) { return d.le[a * n + c] && d.le[b * n + c]; });
                auto m = extremal(false, [&](std::size_t c) { return d.le[c * n + a] && d.le[c * n + b]; });
                if (!j || !m)
                    throw Error(Errc::not_a_lattice,
                                "no " + std::string(!j ? "join" : "meet") + " for {" + d.names[a] + "," + d.names[b] + "}");
                d.join[a * n + b] = d.join[b * n + a] = *j;
                d.meet[a * n + b] = d.meet[b * n + a] = *m;
            }
    }

    // In a finite lattice, distributivity over arbitrary joins is equivalent to
    // preserving ⊥ and binary joins, since every join is a finite fold.
    void validate_tensor() const
    {
        const auto& d = *d_;
        const std::size_t n = d.n;
        auto nm = [&](std::size_t i) { return d.names[i]; };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (tensor(Elem(a), Elem(b)) != tensor(Elem(b), Elem(a)))
                    throw Error(Errc::not_commutative, nm(a) + "⊗" + nm(b) + " ≠ " + nm(b) + "⊗" + nm(a));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (tensor(tensor(Elem(a), Elem(b)), Elem(c)) != tensor(Elem(a), tensor(Elem(b), Elem(c))))
                        throw Error(Errc::not_associative, "(" + nm(a) + "⊗" + nm(b) + ")⊗" + nm(c));
        for (std::size_t a = 0; a < n; ++a) {
            if (tensor(Elem(a), d.bottom) != d.bottom)
                throw Error(Errc::not_distributive, nm(a) + "⊗⊥ ≠ ⊥ (empty join)");
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    if (tensor(Elem(a), join(Elem(b), Elem(c))) !=
                        join(tensor(Elem(a), Elem(b)), tensor(Elem(a), Elem(c))))
                        throw Error(Errc::not_distributive,
                                    nm(a) + "⊗(" + nm(b) + "∨" + nm(c) + ") ≠ join of products");
        }
    }

    std::shared_ptr<Data> d_; // never mutated after construction
};

/// Recomputes every property flag from the order and tensor tables.
inline QuantaleProps check_props(const Quantale& q)
{
    const std::size_t n = q.size();
    QuantaleProps p;
    p.commutative = true;
    p.semicartesian = true;
    p.integral = true;
    p.idempotent = true;
    p.divisible = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = Elem(i);
        p.integral = p.integral && q.tensor(q.top(), a) == a;
        p.idempotent = p.idempotent && q.tensor(a, a) == a;
        for (std::size_t j = 0; j < n; ++j) {
            const auto b = Elem(j);
            p.commutative = p.commutative && q.tensor(a, b) == q.tensor(b, a);
            p.semicartesian = p.semicartesian && q.le(q.tensor(a, b), q.meet(a, b));
            if (q.le(a, b)) {
                bool witness = false;
                for (std::size_t c = 0; c < n && !witness; ++c)
                    witness = q.tensor(b, Elem(c)) == a;
                p.divisible = p.divisible && witness;
            }
        }
    }
    p.unital = false;
    for (std::size_t u = 0; u < n && !p.unital; ++u) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            ok = q.tensor(Elem(u), Elem(a)) == a;
        p.unital = ok;
    }

    // Strength: every subset A yields the pair (⋁A, ⋁{a⊗a}); closing the set of
    // such pairs under "add one element" reaches exactly the pairs of all subsets.
    std::vector<std::uint8_t> seen(n * n, 0);
    std::vector<std::pair<Elem, Elem>> stack{{q.bottom(), q.bottom()}};
    seen[q.bottom() * n + q.bottom()] = 1;
    p.strong = true;
    while (!stack.empty()) {
        auto [j, s] = stack.back();
        stack.pop_back();
        for (std::size_t e = 0; e < n; ++e)
            if (q.is_idempotent(Elem(e)) && q.le(Elem(e), j) && !q.le(Elem(e), s))
                p.strong = false;
        for (std::size_t a = 0; a < n; ++a) {
            Elem j2 = q.join(j, Elem(a));
            Elem s2 = q.join(s, q.tensor(Elem(a), Elem(a)));
            if (!seen[j2 * n + s2]) {
                seen[j2 * n + s2] = 1;
                stack.emplace_back(j2, s2);
            }
        }
    }

    p.locale = p.idempotent && p.semicartesian;
    return p;
}

/// True when ⊗ and ∧ agree on every pair.
inline bool tensor_is_meet(const Quantale& q)
{
    for (std::size_t a = 0; a < q.size(); ++a)
        for (std::size_t b = 0; b < q.size(); ++b)
            if (q.tensor(Elem(a), Elem(b)) != q.meet(Elem(a), Elem(b)))
                return false;
    return true;
}

/// Builds the lattice of ideals of Z/n under ideal product. Ideals are the
/// divisors d of n (ideal dZ/n), listed from (0) upwards; (d) is named "(d)"
/// except dZ/n with d = n, which is "(0)".
inline Quantale ideals_quantale(unsigned n)
{
    if (n == 0)
        throw Error(Errc::bad_module_arith, "ring Z/0 is not finite");
    std::vector<unsigned> divs;
    for (unsigned d = n; d >= 1; --d)
        if (n % d == 0)
            divs.push_back(d);
    if (divs.size() > max_quantale_size)
        throw Error(Errc::too_large, "too many ideals");
    const std::size_t k = divs.size();
    auto idx = [&](unsigned d) {
        for (std::size_t i = 0; i < k; ++i)
            if (divs[i] == d)
                return Elem(i);
        return Elem(0);
    };
    auto gcd = [](unsigned a, unsigned b) {
        while (b) {
            a %= b;
            std::swap(a, b);
        }
        return a;
    };
    std::vector<std::string> names;
    for (unsigned d : divs)
        names.push_back("(" + std::to_string(d == n ? 0 : d) + ")");
    std::vector<std::uint8_t> le(k * k, 0);
    std::vector<Elem> tensor(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            le[i * k + j] = divs[i] % divs[j] == 0 ? 1 : 0; // (a) ⊆ (b) iff b | a
            tensor[i * k + j] = idx(gcd(divs[i] * divs[j], n));
        }
    return Quantale::from_matrix(std::move(names), le, tensor);
}

} // namespace qsets
