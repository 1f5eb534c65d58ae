#pragma once

/*! \file
 * \brief Exhaustive theorem sweeps over all small Q-sets of a quantale.
 *
 * Each sweep returns a Report whose document holds one tally per statement:
 * `{checked, failed, witness?}`. Work is spread with parallel_map and merged
 * in index order, so the document does not depend on the thread count.
 */

#include "gluing.hpp"
#include "morphism.hpp"
#include "qset.hpp"
#include "report.hpp"
#include "scott.hpp"
#include "search.hpp"

#include <map>
#include <string>
#include <vector>

namespace qsets {

struct SweepConfig {
    std::size_t max_carrier = 3; ///< swept Q-sets have at most this many points
    std::size_t max_target = 2;  ///< adjunction targets K (besides E(Q)) have at most this many points
    std::size_t max_quad = 2;    ///< objects in associativity quadruples
    unsigned threads = 1;
    Limits limits{};
};

namespace detail {

struct Obs {
    std::string key;
    bool ok = true;
    bool finding = false;
    io::Json witness; ///< filled only on failure
};

class Tallies {
public:
    void add(const std::vector<Obs>& obs)
    {
        for (const auto& o : obs) {
            auto [it, fresh] = index_.try_emplace(o.key, rows_.size());
            if (fresh)
                rows_.push_back({o.key, o.finding, 0, 0, {}});
            auto& r = rows_[it->second];
            ++r.checked;
            if (!o.ok && r.failed++ == 0)
                r.witness = o.witness;
        }
    }

    void write(Report& rep, const std::string& section) const
    {
        io::Json sec = io::Json::object();
        for (const auto& r : rows_) {
            io::Json t;
            t["checked"] = r.checked;
            t["failed"] = r.failed;
            if (r.failed) {
                t["kind"] = r.finding ? "finding" : "violation";
                t["witness"] = r.witness;
                ++(r.finding ? rep.findings : rep.violations);
            }
            sec[r.key] = std::move(t);
        }
        rep.doc[section] = std::move(sec);
    }

private:
    struct Row {
        std::string key;
        bool finding;
        std::size_t checked, failed;
        io::Json witness;
    };
    std::vector<Row> rows_;
    std::map<std::string, std::size_t> index_;
};

class ObsList {
public:
    void add(std::string key, bool ok, const std::function<io::Json()>& witness = {}, bool finding = false)
    {
        Obs o{std::move(key), ok, finding, {}};
        if (!ok && witness)
            o.witness = witness();
        items.push_back(std::move(o));
    }
    std::vector<Obs> items;
};

inline io::Json witness_x(const QSet& x, const std::string& note = {})
{
    io::Json j = describe_qset(x);
    if (!note.empty())
        j["note"] = note;
    return j;
}

inline io::Json witness_pair(const QSet& x, const QSet& y, const std::string& note = {})
{
    io::Json j;
    j["x"] = describe_qset(x);
    j["y"] = describe_qset(y);
    if (!note.empty())
        j["note"] = note;
    return j;
}

/// X with its carrier listed in reverse order.
inline QSet reversed(const QSet& x)
{
    const std::size_t n = x.size();
    std::vector<std::string> names(x.carrier().rbegin(), x.carrier().rend());
    std::vector<Elem> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i * n + j] = x.delta(n - 1 - i, n - 1 - j);
    return QSet::build(x.quantale(), std::move(names), std::move(d));
}

inline std::vector<Elem> compose_tables(const Quantale& q, std::size_t nx, std::size_t ny, std::size_t nz,
                                        const std::vector<Elem>& phi, const std::vector<Elem>& psi)
{
    std::vector<Elem> t(nx * nz, q.bottom());
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            const Elem a = phi[x * ny + y];
            if (a == q.bottom())
                continue;
            for (std::size_t z = 0; z < nz; ++z)
                t[x * nz + z] = q.join(t[x * nz + z], q.tensor(a, psi[y * nz + z]));
        }
    return t;
}

} // namespace detail

/// Object-level statements for every labeled Q-set with at most
/// cfg.max_carrier points.
inline Report sweep_objects(const Quantale& q, const SweepConfig& cfg)
{
    const auto xs = sweep_qsets(q, cfg.max_carrier);
    const bool strong = q.props().strong;
    const auto& lim = cfg.limits;
    struct Out {
        std::vector<detail::Obs> obs;
        bool gluing = false, scott = false;
        std::size_t singletons = 0;
    };
    auto outs = parallel_map<Out>(xs.size(), cfg.threads, [&](std::size_t i) {
        const QSet& x = xs[i];
        detail::ObsList o;
        Out out;
        auto wx = [&](std::string note = {}) { return [&x, note] { return detail::witness_x(x, note); }; };

        const auto g = is_gluing_complete(x, lim);
        const auto s = is_scott_complete(x, lim);
        const auto ext = is_extensional(x);
        out.gluing = g.complete;
        out.scott = s.scott_complete;
        out.singletons = s.count();

        o.add("separable_iff_extensional", is_separable(x) == ext.extensional, wx());
        o.add("gluing_complete_iff_glued_and_extensional", g.complete == (g.all_glued && g.extensional), wx());
        o.add("scott_implies_gluing", !s.scott_complete || g.complete, wx());
        o.add("singleton_continuity", s.continuity_holds, wx());
        bool at_most_one = true;
        if (ext.extensional)
            for (const auto& r : s.representers)
                at_most_one = at_most_one && r.size() <= 1;
        o.add("extensional_at_most_one_representer", at_most_one, wx());
        {
            const auto y = detail::reversed(x);
            o.add("scott_complete_invariant_under_relabeling", is_scott_complete(y, lim).scott_complete == s.scott_complete,
                  wx());
        }
        {
            bool glue_reps = true;
            for (Family fam : enumerate_compatible(x, lim)) {
                const auto sa = family_singleton(x, fam);
                auto reps = representers(x, sa);
                auto glue = gluings_of(x, fam).gluings;
                glue_reps = glue_reps && reps == glue && check_singleton(x, sa).ok;
            }
            o.add("gluings_are_representers_of_family_singletons", glue_reps, wx());
        }
        {
            auto c = gluing_completion(x, lim);
            o.add("gluing_completion_is_gluing_complete", is_gluing_complete(c.qset(), lim).complete, wx());
            bool unit_delta = true;
            for (Point a = 0; a < x.size(); ++a)
                for (Point b = 0; b < x.size(); ++b)
                    unit_delta = unit_delta && c.qset().delta(c.unit(a), c.unit(b)) == x.delta(a, b);
            o.add("gluing_unit_preserves_delta", unit_delta, wx());
            o.add("family_lemmas", verify_family_lemmas(c.families, lim).ok(), wx());
        }
        if (strong) {
            auto sc = scott_completion(x, lim);
            if (sc.certification == Certification::verified_by_enumeration)
                o.add("scott_completion_is_scott_complete", sc.complete, wx());
            else
                o.add("scott_completion_certified_by_theorem", true);
            auto y = verify_yoneda(sc.space);
            o.add("yoneda", y.ok, wx(y.describe()));
            bool eq = false;
            std::string note;
            try {
                auto [fwd, bwd] = relational_iso_to_completion(sc.space);
                eq = compose_relational(bwd, fwd) == delta_relation(x) &&
                     compose_relational(fwd, bwd) == delta_relation(sc.qset());
            } catch (const Error& e) {
                note = e.what();
            }
            o.add("relational_iso_to_singletons", eq, wx(note));
        }
        if (ext.extensional) {
            auto cv = verify_connection_theorem(x, lim);
            o.add("connection_theorem", cv.holds, wx(), true);
        }
        out.obs = std::move(o.items);
        return out;
    });

    Report rep;
    detail::Tallies t;
    std::size_t n_gluing = 0, n_scott = 0, n_sing = 0;
    for (const auto& out : outs) {
        t.add(out.obs);
        n_gluing += out.gluing;
        n_scott += out.scott;
        n_sing += out.singletons;
    }
    rep.doc["qsets"] = xs.size();
    rep.doc["gluing_complete"] = n_gluing;
    rep.doc["scott_complete"] = n_scott;
    rep.doc["singletons"] = n_sing;
    t.write(rep, "checks");
    return rep;
}

/// Adjunction checks for every labeled X with at most cfg.max_carrier points
/// against complete targets K: complete Q-sets up to isomorphism with at
/// most cfg.max_target points, plus E(Q).
inline Report sweep_adjunctions(const Quantale& q, const SweepConfig& cfg)
{
    const auto xs = sweep_qsets(q, cfg.max_carrier);
    const auto& lim = cfg.limits;
    std::vector<QSet> gluing_targets, scott_targets, ext_targets;
    auto pool = sweep_qsets(q, cfg.max_target, true);
    pool.push_back(terminal(q));
    for (const auto& k : pool) {
        if (is_gluing_complete(k, lim))
            gluing_targets.push_back(k);
        if (is_scott_complete(k, lim))
            scott_targets.push_back(k);
        if (is_extensional(k).extensional)
            ext_targets.push_back(k);
    }
    const bool strong = q.props().strong;
    auto outs = parallel_map<std::vector<detail::Obs>>(xs.size(), cfg.threads, [&](std::size_t i) {
        const QSet& x = xs[i];
        detail::ObsList o;
        auto record = [&](const std::string& prefix, const QSet& k, const CheckList& cl, bool finding) {
            for (const auto& c : cl.items)
                o.add(prefix + ": " + c.name, c.ok,
                      [&] { return detail::witness_pair(x, k, c.detail); }, finding);
        };
        for (const auto& k : gluing_targets)
            record("gluing", k, verify_gluing_adjunction(x, k, lim), false);
        if (strong)
            for (const auto& k : scott_targets)
                record("scott", k, verify_scott_adjunction(x, k, lim), false);
        for (const auto& k : ext_targets)
            record("extensional", k, verify_extensional_adjunction(x, k, lim), true);
        return std::move(o.items);
    });
    Report rep;
    rep.doc["qsets"] = xs.size();
    rep.doc["gluing_targets"] = gluing_targets.size();
    rep.doc["scott_targets"] = strong ? scott_targets.size() : 0;
    rep.doc["extensional_targets"] = ext_targets.size();
    detail::Tallies t;
    for (const auto& obs : outs)
        t.add(obs);
    t.write(rep, "checks");
    return rep;
}

/// Morphism-level statements over Q-sets up to isomorphism: category laws,
/// Graph functoriality and faithfulness, the functionalize/graph round
/// trip, and discreteness of the relational hom order.
inline Report sweep_morphisms(const Quantale& q, const SweepConfig& cfg)
{
    const auto& lim = cfg.limits;
    const auto pool = sweep_qsets(q, std::min(cfg.max_carrier, lim.max_rel_carrier), true);
    const std::size_t n = pool.size();
    const bool strong = q.props().strong;

    // relational homs for every ordered pair, reused below
    auto rel = parallel_map<std::vector<RelationalMorphism>>(n * n, cfg.threads, [&](std::size_t i) {
        return enumerate_relational_homs(pool[i / n], pool[i % n], lim);
    });
    auto fun = parallel_map<std::vector<FunctionalMorphism>>(n * n, cfg.threads, [&](std::size_t i) {
        return enumerate_functional_homs(pool[i / n], pool[i % n], lim);
    });
    std::vector<bool> scott(n);
    for (std::size_t i = 0; i < n; ++i)
        scott[i] = is_scott_complete(pool[i], lim).scott_complete;

    Report rep;
    detail::Tallies t;
    std::size_t rel_total = 0, fun_total = 0;
    for (std::size_t i = 0; i < n * n; ++i) {
        rel_total += rel[i].size();
        fun_total += fun[i].size();
    }
    rep.doc["objects"] = n;
    rep.doc["relational_homs"] = rel_total;
    rep.doc["functional_homs"] = fun_total;

    // pairs (X,Y): identities, graph, faithfulness, hom order, functionalize
    auto pair_obs = parallel_map<std::vector<detail::Obs>>(n * n, cfg.threads, [&](std::size_t i) {
        const QSet& x = pool[i / n];
        const QSet& y = pool[i % n];
        detail::ObsList o;
        auto wp = [&](std::string note = {}) { return [&x, &y, note] { return detail::witness_pair(x, y, note); }; };
        const auto dx = delta_relation(x), dy = delta_relation(y);
        bool left = true, right = true;
        for (const auto& phi : rel[i]) {
            left = left && compose_relational(phi, dx) == phi;
            right = right && compose_relational(dy, phi) == phi;
        }
        o.add("relational_identity_left", left, wp());
        o.add("relational_identity_right", right, wp());
        bool fid = true, graph_valid = true, congruent = true;
        for (const auto& f : fun[i]) {
            fid = fid && compose_functional(f, identity(x)) == f && compose_functional(identity(y), f) == f;
            graph_valid = graph_valid && check_relational(x, y, graph(f).table()).ok;
            for (Point a = 0; a < x.size(); ++a)
                for (Point b = 0; b < x.size(); ++b)
                    if (delta_equivalent(x, a, b))
                        congruent = congruent && delta_equivalent(y, f(a), f(b));
        }
        for (const auto& phi : rel[i])
            for (Point a = 0; a < x.size(); ++a)
                for (Point b = 0; b < x.size(); ++b)
                    if (delta_equivalent(x, a, b))
                        for (Point c = 0; c < y.size(); ++c)
                            congruent = congruent && phi(a, c) == phi(b, c);
        o.add("functional_identity", fid, wp());
        o.add("graph_is_relational", graph_valid, wp());
        o.add("delta_equivalence_congruential", congruent, wp());

        auto hw = discrete_hom_order_witness(x, y, lim);
        o.add(strong ? "discrete_hom_order" : "discrete_hom_order_non_strong", !hw.has_value(), wp(), !strong);

        if (scott[i % n]) {
            bool fg = true, gf = true;
            std::string note;
            try {
                for (const auto& f : fun[i])
                    fg = fg && functionalize(graph(f), lim) == f;
                for (const auto& phi : rel[i])
                    gf = gf && graph(functionalize(phi, lim)) == phi;
            } catch (const Error& e) {
                fg = gf = false;
                note = e.what();
            }
            o.add("functionalize_after_graph", fg, wp(note));
            o.add("graph_after_functionalize", gf, wp(note));
        }
        return std::move(o.items);
    });
    for (const auto& obs : pair_obs)
        t.add(obs);

    // Y extensional ⇔ Graph is injective on Hom(X,Y) for every X in the pool
    {
        detail::ObsList o;
        for (std::size_t yi = 0; yi < n; ++yi) {
            bool all = true;
            for (std::size_t xi = 0; xi < n && all; ++xi)
                all = graph_faithful_on(pool[xi], pool[yi], lim).faithful;
            const QSet& y = pool[yi];
            o.add("graph_faithful_iff_extensional", all == is_extensional(y).extensional,
                  [&] { return detail::witness_x(y); });
        }
        t.add(o.items);
    }
    for (std::size_t xi = 0; xi < n; ++xi) {
        detail::ObsList o;
        o.add("graph_preserves_identity", graph(identity(pool[xi])) == delta_relation(pool[xi]),
              [&] { return detail::witness_x(pool[xi]); });
        t.add(o.items);
    }

    // triples X → Y → Z: Graph and functional composition
    auto triple_obs = parallel_map<std::vector<detail::Obs>>(n * n, cfg.threads, [&](std::size_t i) {
        const std::size_t xi = i / n, yi = i % n;
        detail::ObsList o;
        bool ok = true;
        for (std::size_t zi = 0; zi < n; ++zi)
            for (const auto& f : fun[xi * n + yi])
                for (const auto& g : fun[yi * n + zi])
                    ok = ok && graph(compose_functional(g, f)) == compose_relational(graph(g), graph(f));
        o.add("graph_preserves_composition", ok, [&] { return detail::witness_pair(pool[xi], pool[yi]); });
        return std::move(o.items);
    });
    for (const auto& obs : triple_obs)
        t.add(obs);

    // quadruples W → X → Y → Z: associativity on raw tables
    std::vector<std::size_t> small;
    for (std::size_t i = 0; i < n; ++i)
        if (pool[i].size() <= cfg.max_quad)
            small.push_back(i);
    const std::size_t m = small.size();
    auto quad_obs = parallel_map<std::vector<detail::Obs>>(m * m, cfg.threads, [&](std::size_t i) {
        const std::size_t w = small[i / m], x = small[i % m];
        detail::ObsList o;
        bool rel_ok = true, fun_ok = true;
        std::size_t triples = 0;
        for (std::size_t y : small)
            for (std::size_t z : small) {
                const std::size_t nw = pool[w].size(), nx = pool[x].size(), ny = pool[y].size(), nz = pool[z].size();
                for (const auto& chi : rel[w * n + x])
                    for (const auto& phi : rel[x * n + y]) {
                        const auto pc = detail::compose_tables(q, nw, nx, ny, chi.table(), phi.table());
                        for (const auto& psi : rel[y * n + z]) {
                            ++triples;
                            const auto lhs = detail::compose_tables(q, nw, ny, nz, pc, psi.table());
                            const auto rhs = detail::compose_tables(
                                q, nw, nx, nz, chi.table(), detail::compose_tables(q, nx, ny, nz, phi.table(), psi.table()));
                            rel_ok = rel_ok && lhs == rhs;
                        }
                    }
                for (const auto& h : fun[w * n + x])
                    for (const auto& f : fun[x * n + y])
                        for (const auto& g : fun[y * n + z])
                            fun_ok = fun_ok && compose_functional(compose_functional(g, f), h) ==
                                                   compose_functional(g, compose_functional(f, h));
            }
        o.add("relational_associativity", rel_ok, [&] { return detail::witness_pair(pool[w], pool[x]); });
        o.add("functional_associativity", fun_ok, [&] { return detail::witness_pair(pool[w], pool[x]); });
        return std::move(o.items);
    });
    for (const auto& obs : quad_obs)
        t.add(obs);

    t.write(rep, "checks");
    return rep;
}

/// All three sweeps under one document.
inline Report sweep_all(const Quantale& q, const SweepConfig& cfg)
{
    Report rep;
    rep.doc["quantale"] = describe_quantale(q);
    for (auto [name, fn] : {std::pair{"objects", &sweep_objects}, std::pair{"adjunctions", &sweep_adjunctions},
                            std::pair{"morphisms", &sweep_morphisms}}) {
        auto part = fn(q, cfg);
        rep.doc[name] = std::move(part.doc);
        rep.merge(part);
    }
    return rep;
}

} // namespace qsets
