#pragma once

/*! \file
 * \brief Enumeration of small quantales and Q-sets, a deterministic parallel
 * map, and the counterexample predicates used by `search`.
 */

#include "gluing.hpp"
#include "limits.hpp"
#include "morphism.hpp"
#include "qset.hpp"
#include "quantale.hpp"
#include "scott.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace qsets {

/// Applies fn to 0..n-1 on up to `threads` workers. Results are returned in
/// index order whatever the scheduling.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, unsigned threads, F&& fn)
{
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t i; !failed && (i = next.fetch_add(1)) < n;) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
            }
        }
    };
    const unsigned k = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (k <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < k; ++t)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

// ---------------------------------------------------------------------------
// Q-sets

namespace detail {

inline bool qset_table_valid(const Quantale& q, std::size_t n, const std::vector<Elem>& d)
{
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (q.tensor(d[x * n + x], d[x * n + y]) != d[x * n + y])
                return false;
            for (std::size_t z = 0; z < n; ++z)
                if (!q.le(q.tensor(d[x * n + y], d[y * n + z]), d[x * n + z]))
                    return false;
        }
    return true;
}

inline std::vector<std::vector<std::size_t>> permutations(std::size_t n)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// True when no relabeling of the carrier gives a lexicographically smaller table.
inline bool table_is_canonical(std::size_t n, const std::vector<Elem>& d,
                               const std::vector<std::vector<std::size_t>>& perms)
{
    for (const auto& p : perms)
        for (std::size_t i = 0; i < n * n; ++i) {
            const Elem v = d[p[i / n] * n + p[i % n]];
            if (v != d[i]) {
                if (v < d[i])
                    return false;
                break;
            }
        }
    return true;
}

} // namespace detail

inline std::string sweep_point_name(std::size_t i) { return "x" + std::to_string(i); }

/// Every valid Q-set on carriers x0..x{n-1} of size exactly n, in
/// lexicographic table order. With `up_to_iso` only one labeling per
/// isomorphism class is kept.
inline std::vector<QSet> enumerate_qsets(const Quantale& q, std::size_t n, bool up_to_iso = false)
{
    std::vector<QSet> out;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(sweep_point_name(i));
    const auto perms = up_to_iso ? detail::permutations(n) : std::vector<std::vector<std::size_t>>{};
    // cells of the upper triangle, diagonal first within each row
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            cells.emplace_back(i, j);
    std::vector<Elem> d(n * n, q.bottom());
    auto dfs = [&](auto&& self, std::size_t k) -> void {
        if (k == cells.size()) {
            if (detail::qset_table_valid(q, n, d) && (!up_to_iso || detail::table_is_canonical(n, d, perms)))
                out.push_back(QSet::trusted(q, names, d));
            return;
        }
        auto [i, j] = cells[k];
        for (Elem v = 0; v < q.size(); ++v) {
            if (i == j) {
                if (!q.is_idempotent(v))
                    continue;
            } else {
                const Elem ei = d[i * n + i], ej = d[j * n + j];
                if (q.tensor(ei, v) != v || q.tensor(ej, v) != v)
                    continue;
            }
            d[i * n + j] = d[j * n + i] = v;
            self(self, k + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

/// All Q-sets with 0..max_n points.
inline std::vector<QSet> sweep_qsets(const Quantale& q, std::size_t max_n, bool up_to_iso = false)
{
    std::vector<QSet> out;
    for (std::size_t n = 0; n <= max_n; ++n) {
        auto v = enumerate_qsets(q, n, up_to_iso);
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return out;
}

/// One random symmetric table of size n with idempotent extents; the caller
/// discards it when it is not a Q-set.
inline std::optional<QSet> random_qset(const Quantale& q, std::size_t n, std::mt19937_64& rng)
{
    std::vector<Elem> idem;
    for (Elem e = 0; e < q.size(); ++e)
        if (q.is_idempotent(e))
            idem.push_back(e);
    std::vector<Elem> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        d[i * n + i] = idem[std::uniform_int_distribution<std::size_t>(0, idem.size() - 1)(rng)];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Elem> dom;
            for (Elem v = 0; v < q.size(); ++v)
                if (q.tensor(d[i * n + i], v) == v && q.tensor(d[j * n + j], v) == v)
                    dom.push_back(v);
            d[i * n + j] = d[j * n + i] = dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)];
        }
    if (!detail::qset_table_valid(q, n, d))
        return std::nullopt;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(sweep_point_name(i));
    return QSet::trusted(q, std::move(names), std::move(d));
}

// ---------------------------------------------------------------------------
// Quantales

namespace detail {

inline std::vector<std::string> search_names(std::size_t n)
{
    if (n == 1)
        return {"⊥"};
    std::vector<std::string> v{"⊥"};
    for (std::size_t i = 1; i + 1 < n; ++i)
        v.push_back(std::string(1, char('a' + i - 1)));
    v.push_back("⊤");
    return v;
}

/// Lattices on 0..n-1 with 0 = ⊥ and n-1 = ⊤, one per isomorphism class.
inline std::vector<std::vector<std::uint8_t>> enumerate_lattices(std::size_t n)
{
    std::vector<std::vector<std::uint8_t>> out;
    if (n == 1) {
        out.push_back({1});
        return out;
    }
    const std::size_t m = n - 2;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 1; j + 1 < n; ++j)
            if (i != j)
                slots.emplace_back(i, j);
    const auto perms = permutations(m);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
        std::vector<std::uint8_t> le(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            le[i * n + i] = 1;
            le[0 * n + i] = 1;
            le[i * n + n - 1] = 1;
        }
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((bits >> s) & 1U)
                le[slots[s].first * n + slots[s].second] = 1;
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                if (a != b && le[a * n + b] && le[b * n + a])
                    ok = false;
                for (std::size_t c = 0; c < n && ok; ++c)
                    if (le[a * n + b] && le[b * n + c] && !le[a * n + c])
                        ok = false;
            }
        if (!ok)
            continue;
        // binary joins
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                std::size_t least = n;
                for (std::size_t c = 0; c < n; ++c) {
                    if (!le[a * n + c] || !le[b * n + c])
                        continue;
                    bool below_all = true;
                    for (std::size_t o = 0; o < n && below_all; ++o)
                        if (le[a * n + o] && le[b * n + o])
                            below_all = le[c * n + o];
                    if (below_all)
                        least = c;
                }
                ok = least < n;
            }
        if (!ok)
            continue;
        // canonical under relabeling of the middle elements
        bool canonical = true;
        for (const auto& p : perms) {
            auto img = [&](std::size_t i) { return (i == 0 || i == n - 1) ? i : p[i - 1] + 1; };
            for (std::size_t i = 0; i < n * n; ++i) {
                const auto v = le[img(i / n) * n + img(i % n)];
                if (v != le[i]) {
                    if (v < le[i])
                        canonical = false;
                    break;
                }
            }
            if (!canonical)
                break;
        }
        if (canonical)
            out.push_back(std::move(le));
    }
    return out;
}

} // namespace detail

/// Commutative quantales with exactly n elements, one per isomorphism
/// class, in a fixed order. By default only semicartesian ones.
inline std::vector<Quantale> enumerate_quantales(std::size_t n, bool semicartesian_only = true)
{
    std::vector<Quantale> out;
    const auto names = detail::search_names(n);
    for (const auto& le : detail::enumerate_lattices(n)) {
        auto leq = [&](std::size_t a, std::size_t b) { return le[a * n + b] != 0; };
        std::vector<std::size_t> meet(n * n), join(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (leq(c, a) && leq(c, b) && leq(meet[a * n + b], c))
                        meet[a * n + b] = c;
                    if (leq(a, c) && leq(b, c)) {
                        bool least = true;
                        for (std::size_t o = 0; o < n && least; ++o)
                            if (leq(a, o) && leq(b, o))
                                least = leq(c, o);
                        if (least)
                            join[a * n + b] = c;
                    }
                }
        // lattice automorphisms fixing ⊥ and ⊤
        std::vector<std::vector<std::size_t>> autos;
        for (auto p : detail::permutations(n > 2 ? n - 2 : 0)) {
            std::vector<std::size_t> img(n);
            for (std::size_t i = 0; i < n; ++i)
                img[i] = (i == 0 || i + 1 == n) ? i : p[i - 1] + 1;
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t b = 0; b < n && ok; ++b)
                    ok = leq(a, b) == leq(img[a], img[b]);
            if (ok)
                autos.push_back(img);
        }
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t a = 1; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                cells.emplace_back(a, b);
        std::vector<Elem> t(n * n, 0);
        auto dfs = [&](auto&& self, std::size_t k) -> void {
            if (k == cells.size()) {
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t c = 0; c < n; ++c) {
                            if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
                                return;
                            if (t[a * n + join[b * n + c]] != join[t[a * n + b] * n + t[a * n + c]])
                                return;
                        }
                for (const auto& img : autos)
                    for (std::size_t i = 0; i < n * n; ++i) {
                        // relabeled table at i: img⁻¹ applied through the automorphism
                        const std::size_t a = i / n, b = i % n;
                        const Elem v = t[img[a] * n + img[b]];
                        std::size_t vi = 0;
                        while (img[vi] != v)
                            ++vi;
                        if (vi != t[i]) {
                            if (vi < t[i])
                                return;
                            break;
                        }
                    }
                out.push_back(Quantale::from_matrix(names, le, t));
                return;
            }
            auto [a, b] = cells[k];
            for (std::size_t v = 0; v < n; ++v) {
                if (semicartesian_only && !leq(v, meet[a * n + b]))
                    continue;
                // monotone in each argument against already fixed cells
                bool mono = true;
                for (std::size_t j = 0; j < k && mono; ++j) {
                    auto [c, d] = cells[j];
                    const std::size_t w = t[c * n + d];
                    if ((leq(c, a) && leq(d, b)) || (leq(c, b) && leq(d, a)))
                        mono = leq(w, v);
                    if (mono && ((leq(a, c) && leq(b, d)) || (leq(b, c) && leq(a, d))))
                        mono = leq(v, w);
                }
                if (!mono)
                    continue;
                t[a * n + b] = t[b * n + a] = Elem(v);
                self(self, k + 1);
            }
            t[a * n + b] = t[b * n + a] = 0;
        };
        dfs(dfs, 0);
    }
    return out;
}

inline std::vector<Quantale> enumerate_quantales_up_to(std::size_t max_n, bool semicartesian_only = true)
{
    std::vector<Quantale> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        auto v = enumerate_quantales(n, semicartesian_only);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Predicates

enum class Predicate {
    gluing_not_scott,
    scott_not_gluing,
    non_strong_singletons_break,
    nonextensional_complete,
    discrete_hom_order_violation,
};

inline constexpr Predicate all_predicates[] = {Predicate::gluing_not_scott, Predicate::scott_not_gluing,
                                               Predicate::non_strong_singletons_break,
                                               Predicate::nonextensional_complete,
                                               Predicate::discrete_hom_order_violation};

inline const char* predicate_name(Predicate p)
{
    switch (p) {
    case Predicate::gluing_not_scott: return "gluing-not-scott";
    case Predicate::scott_not_gluing: return "scott-not-gluing";
    case Predicate::non_strong_singletons_break: return "non-strong-singletons-break";
    case Predicate::nonextensional_complete: return "nonextensional-complete";
    case Predicate::discrete_hom_order_violation: return "discrete-hom-order-violation";
    }
    return "";
}

inline std::optional<Predicate> parse_predicate(std::string_view s)
{
    for (Predicate p : all_predicates)
        if (s == predicate_name(p))
            return p;
    return std::nullopt;
}

/// A pair of distinct relational morphisms with φ ≤ ψ pointwise, if any.
struct HomOrderWitness {
    RelationalMorphism lower, upper;
};

inline std::optional<HomOrderWitness> discrete_hom_order_witness(const QSet& x, const QSet& y, const Limits& lim = {})
{
    auto homs = enumerate_relational_homs(x, y, lim);
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = 0; j < homs.size(); ++j)
            if (i != j && pointwise_le(homs[i], homs[j]))
                return HomOrderWitness{homs[i], homs[j]};
    return std::nullopt;
}

/// Empty when X does not hit the predicate, otherwise a short description.
inline std::optional<std::string> evaluate_predicate(Predicate p, const QSet& x, const Limits& lim = {})
{
    const auto& q = x.quantale();
    switch (p) {
    case Predicate::gluing_not_scott:
    case Predicate::scott_not_gluing: {
        const bool g = is_gluing_complete(x, lim).complete;
        auto s = is_scott_complete(x, lim);
        if (p == Predicate::gluing_not_scott && g && !s)
            return "unrepresented " + singleton_name(q, s.singletons[*s.witness]);
        if (p == Predicate::scott_not_gluing && s && !g)
            return std::string("Scott-complete but not gluing-complete");
        return std::nullopt;
    }
    case Predicate::non_strong_singletons_break: {
        if (q.props().strong)
            return std::nullopt;
        Limits forced = lim;
        forced.force_strength = true;
        try {
            auto sp = singletons_qset(x, forced);
            if (auto v = verify_yoneda(sp); !v)
                return "Yoneda fails: " + v.describe();
            if (sp.singletons.size() <= lim.max_double_enum && !is_scott_complete(sp.qset, lim))
                return std::string("𝔖X is not Scott-complete");
        } catch (const Error& e) {
            if (e.code() != Errc::not_a_qset)
                throw;
            return std::string(e.what());
        }
        return std::nullopt;
    }
    case Predicate::nonextensional_complete: {
        if (is_extensional(x).extensional)
            return std::nullopt;
        if (is_gluing_complete(x, lim))
            return std::string("gluing-complete but not extensional");
        if (is_scott_complete(x, lim))
            return std::string("Scott-complete but not extensional");
        return std::nullopt;
    }
    case Predicate::discrete_hom_order_violation: {
        if (x.size() > lim.max_rel_carrier || q.size() > lim.max_rel_quantale)
            return std::nullopt;
        for (const QSet& y : {x, terminal(q)})
            if (auto w = discrete_hom_order_witness(x, y, lim)) {
                std::string s = "comparable homs into " + std::string(y == x ? "X" : "E(Q)");
                return s;
            }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

struct SearchConfig {
    Predicate predicate = Predicate::gluing_not_scott;
    std::size_t max_quantale = 4;
    std::size_t max_carrier = 3;
    bool random = false;
    std::uint64_t seed = 0;
    std::size_t samples = 200; ///< random Q-set draws per quantale
    unsigned threads = 1;
    Limits limits{};
};

struct Finding {
    std::size_t quantale_index = 0;
    Quantale quantale;
    QSet qset;
    std::string detail;
};

struct SearchResult {
    std::size_t quantales = 0;
    std::size_t instances = 0;
    std::vector<Finding> findings;
};

/// Exhaustive mode visits every Q-set up to isomorphism; random mode draws
/// `samples` tables per quantale from a generator seeded by (seed, index).
inline SearchResult search(const SearchConfig& cfg)
{
    // strength can only fail outside the semicartesian range at these sizes
    const bool semicartesian_only = cfg.predicate != Predicate::non_strong_singletons_break;
    auto quantales = enumerate_quantales_up_to(cfg.max_quantale, semicartesian_only);
    struct Part {
        std::size_t instances = 0;
        std::vector<Finding> findings;
    };
    auto parts = parallel_map<Part>(quantales.size(), cfg.threads, [&](std::size_t i) {
        Part part;
        const auto& q = quantales[i];
        auto visit = [&](const QSet& x) {
            ++part.instances;
            if (auto d = evaluate_predicate(cfg.predicate, x, cfg.limits))
                part.findings.push_back({i, q, x, *d});
        };
        if (!cfg.random) {
            for (const auto& x : sweep_qsets(q, cfg.max_carrier, true))
                visit(x);
        } else {
            std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(i)};
            std::mt19937_64 rng(seq);
            std::uniform_int_distribution<std::size_t> size(0, cfg.max_carrier);
            for (std::size_t s = 0; s < cfg.samples; ++s)
                if (auto x = random_qset(q, size(rng), rng))
                    visit(*x);
        }
        return part;
    });
    SearchResult r;
    r.quantales = quantales.size();
    for (auto& p : parts) {
        r.instances += p.instances;
        for (auto& f : p.findings)
            r.findings.push_back(std::move(f));
    }
    return r;
}

} // namespace qsets
