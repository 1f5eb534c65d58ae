// qsets: command-line front end for the quantale / Q-set workbench.

#include <qsets/qsets.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

using namespace qsets;
using io::Json;

namespace {

struct Options {
    std::size_t max_carrier = 3;
    std::size_t max_quantale = 4;
    std::size_t max_target = 2;
    bool force_strength = false;
    bool strict = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "text";
    unsigned threads = 1;
    bool verbose = false;
    bool timings = false;

    Limits limits() const
    {
        Limits l;
        l.force_strength = force_strength;
        return l;
    }
};

Json names_of(const QSet& x, const std::vector<Point>& pts)
{
    Json a = Json::array();
    for (Point p : pts)
        a.push_back(x.name(p));
    return a;
}

std::string map_text(const FunctionalMorphism& f)
{
    std::string s;
    for (Point a = 0; a < f.dom().size(); ++a)
        s += (a ? " " : "") + f.dom().name(a) + "↦" + f.cod().name(f(a));
    return s.empty() ? "∅" : s;
}

Json table_json(const RelationalMorphism& phi)
{
    Json rows = Json::array();
    const auto& q = phi.dom().quantale();
    for (Point a = 0; a < phi.dom().size(); ++a) {
        Json r = Json::array();
        for (Point b = 0; b < phi.cod().size(); ++b)
            r.push_back(q.name(phi(a, b)));
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------

Report check_quantale(const Quantale& q)
{
    Report r;
    r.doc["command"] = "check-quantale";
    r.doc["elements"] = q.names();
    r.doc["top"] = q.name(q.top());
    r.doc["bottom"] = q.name(q.bottom());
    const Json desc = describe_quantale(q);
    r.doc["props"] = desc["props"];
    r.doc["unit"] = q.unit() ? q.name(*q.unit()) : "none";
    Json idem = Json::array();
    for (Elem e = 0; e < q.size(); ++e)
        if (q.is_idempotent(e))
            idem.push_back(q.name(e));
    r.doc["idempotents"] = std::move(idem);
    Json up = Json::object(), low = Json::object();
    for (Elem x = 0; x < q.size(); ++x) {
        auto u = q.upper_idem(x);
        up[q.name(x)] = u ? q.name(*u) : "none";
        auto l = q.lower_idem(x);
        low[q.name(x)] = q.name(l.value) + (l.idempotent ? "" : " (not idempotent)");
    }
    r.doc["upper_idem"] = std::move(up);
    r.doc["lower_idem"] = std::move(low);

    r.verdict("props_recomputed_agree", check_props(q) == q.props());
    bool adj = true, bottom = true;
    ElemSet image = 0;
    for (Elem a = 0; a < q.size(); ++a) {
        bottom = bottom && q.tensor(a, q.bottom()) == q.bottom();
        for (Elem b = 0; b < q.size(); ++b) {
            image |= ElemSet{1} << q.tensor(a, b);
            for (Elem c = 0; c < q.size(); ++c)
                adj = adj && q.le(q.tensor(a, c), b) == q.le(c, q.residue(a, b));
        }
    }
    r.verdict("residue_is_right_adjoint", adj);
    r.verdict("bottom_absorbs", bottom);
    r.verdict("top_square_is_join_of_image", q.tensor(q.top(), q.top()) == q.join(image));
    if (q.size() <= 16) {
        bool dist = true;
        for (Elem a = 0; a < q.size(); ++a)
            for (ElemSet s = 0; s <= q.all() && dist; ++s) {
                Elem rhs = q.bottom();
                for (ElemSet t = s; t; t &= t - 1)
                    rhs = q.join(rhs, q.tensor(a, Elem(std::countr_zero(t))));
                dist = q.tensor(a, q.join(s)) == rhs;
            }
        r.verdict("tensor_distributes_over_all_joins", dist);
    }
    const auto p = q.props();
    if (p.unital)
        r.verdict("semicartesian_and_unital_iff_integral", (p.semicartesian && p.unital) == p.integral);
    if (p.locale)
        r.verdict("locale_tensor_is_meet", tensor_is_meet(q));
    return r;
}

Report check_qset(const QSet& x, const Options& o)
{
    const auto lim = o.limits();
    const auto& q = x.quantale();
    Report r;
    r.doc["command"] = "check-qset";
    r.doc["carrier"] = x.carrier();
    r.doc["axioms"] = true; // construction validated them
    const auto ext = is_extensional(x);
    r.doc["extensional"] = ext.extensional;
    if (ext.witness)
        r.doc["extensional_witness"] = names_of(x, {ext.witness->first, ext.witness->second});
    const bool sep = is_separable(x);
    r.doc["separable"] = sep;
    r.verdict("separable_iff_extensional", sep == ext.extensional);

    const auto g = is_gluing_complete(x, lim);
    r.doc["gluing_complete"] = g.complete;
    if (g.witness) {
        r.doc["gluing_witness"] = family_name(x, g.witness->family);
        r.doc["gluing_witness_gluings"] = names_of(x, g.witness->gluings);
    }
    r.verdict("gluing_complete_iff_glued_and_extensional", g.complete == (g.all_glued && g.extensional));

    const auto s = is_scott_complete(x, lim);
    r.doc["singleton_count"] = s.count();
    r.doc["scott_complete"] = s.scott_complete;
    if (s.witness) {
        r.doc["scott_witness"] = singleton_name(q, s.singletons[*s.witness]);
        r.doc["scott_witness_representers"] = names_of(x, s.representers[*s.witness]);
    }
    r.verdict("scott_implies_gluing", !s.scott_complete || g.complete);
    if (s.continuity_checked)
        r.verdict("singleton_continuity_over_glued_families", s.continuity_holds);
    if (ext.extensional) {
        const auto cv = verify_connection_theorem(x, lim);
        r.verdict("connection_theorem", cv.holds, true);
        if (cv.star_witness)
            r.doc["star_condition_fails_for"] = singleton_name(q, *cv.star_witness);
    } else {
        r.doc["connection_theorem"] = "not applicable (X not extensional)";
    }
    return r;
}

Report singletons_report(const QSet& x, const Options& o)
{
    Report r;
    r.doc["command"] = "singletons";
    const auto s = is_scott_complete(x, o.limits());
    r.doc["count"] = s.count();
    Json list = Json::array();
    for (std::size_t i = 0; i < s.count(); ++i) {
        Json e;
        e["singleton"] = singleton_name(x.quantale(), s.singletons[i]);
        e["representers"] = names_of(x, s.representers[i]);
        list.push_back(std::move(e));
    }
    r.doc["singletons"] = std::move(list);
    r.doc["scott_complete"] = s.scott_complete;
    return r;
}

Report write_qset(const std::string& command, const QSet& result, const Options& o)
{
    Report r;
    r.doc["command"] = command;
    r.doc["size"] = result.size();
    r.doc["carrier"] = result.carrier();
    r.doc["extensional"] = is_extensional(result).extensional;
    if (!o.out.empty()) {
        io::write_text(o.out, io::dump(io::qset_to_json(result)));
        r.doc["written"] = true;
    }
    return r;
}

Report complete_cmd(const std::string& kind, const QSet& x, const Options& o)
{
    const auto lim = o.limits();
    if (kind == "gluing") {
        auto c = gluing_completion(x, lim);
        auto r = write_qset("complete gluing", c.qset(), o);
        r.verdict("result_is_gluing_complete", is_gluing_complete(c.qset(), lim).complete);
        Json unit = Json::object();
        for (Point p = 0; p < x.size(); ++p)
            unit[x.name(p)] = c.qset().name(c.unit(p));
        r.doc["unit"] = std::move(unit);
        if (o.verbose) {
            Json classes = Json::array();
            for (const auto& b : c.quotient.partition.blocks) {
                Json cl = Json::array();
                for (Point m : b)
                    cl.push_back(c.families.qset.name(m));
                classes.push_back(std::move(cl));
            }
            r.doc["classes"] = std::move(classes);
        }
        return r;
    }
    auto c = scott_completion(x, lim);
    auto r = write_qset("complete scott", c.qset(), o);
    r.doc["scott_complete"] = certification_name(c.certification);
    if (c.certification == Certification::verified_by_enumeration)
        r.verdict("result_is_scott_complete", c.complete);
    Json unit = Json::object();
    for (Point p = 0; p < x.size(); ++p)
        unit[x.name(p)] = c.qset().name(c.unit(p));
    r.doc["unit"] = std::move(unit);
    r.verdict("yoneda", verify_yoneda(c.space).ok);
    return r;
}

Report hom_cmd(const std::string& kind, const QSet& x, const QSet& y, const Options& o)
{
    Report r;
    r.doc["command"] = "hom " + kind;
    Json list = Json::array();
    if (kind == "functional") {
        auto homs = enumerate_functional_homs(x, y, o.limits());
        r.doc["count"] = homs.size();
        for (const auto& f : homs)
            list.push_back(map_text(f));
    } else {
        auto homs = enumerate_relational_homs(x, y, o.limits());
        r.doc["count"] = homs.size();
        for (const auto& phi : homs)
            list.push_back(table_json(phi));
    }
    r.doc["homs"] = std::move(list);
    return r;
}

Report verify_cmd(const std::string& suite, const Quantale& q, const std::vector<QSet>& xs, const Options& o)
{
    const auto lim = o.limits();
    auto need = [&](std::size_t n) {
        if (xs.size() < n)
            throw Error(Errc::parse_error, "suite " + suite + " needs " + std::to_string(n) + " Q-set files");
    };
    Report r;
    r.doc["command"] = "verify " + suite;
    if (suite == "sweep") {
        SweepConfig cfg;
        cfg.max_carrier = o.max_carrier;
        cfg.max_target = o.max_target;
        cfg.threads = o.threads;
        cfg.limits = lim;
        auto s = sweep_all(q, cfg);
        for (auto& [k, v] : s.doc.items())
            r.doc[k] = v;
        r.merge(s);
        return r;
    }
    need(1);
    const QSet& x = xs[0];
    if (suite == "scott-implies-gluing") {
        auto v = verify_scott_implies_gluing(x, lim);
        r.doc["scott_complete"] = v.scott_complete;
        r.doc["gluing_complete"] = v.gluing_complete;
        r.verdict("scott_implies_gluing", v.holds);
    } else if (suite == "connection") {
        auto v = verify_connection_theorem(x, lim);
        r.doc["applicable"] = v.applicable;
        r.doc["scott_complete"] = v.scott_complete;
        r.doc["gluing_complete"] = v.gluing_complete;
        r.doc["star_condition_holds"] = v.star_holds;
        if (v.star_witness)
            r.doc["star_condition_fails_for"] = singleton_name(q, *v.star_witness);
        r.verdict("connection_theorem", v.holds, true);
    } else if (suite == "equivalence" || suite == "yoneda") {
        auto sp = singletons_qset(x, lim);
        auto y = verify_yoneda(sp);
        r.verdict("yoneda", y.ok);
        if (!y.ok)
            r.doc["yoneda_witness"] = y.describe();
        if (suite == "equivalence") {
            auto [fwd, bwd] = relational_iso_to_completion(sp);
            r.verdict("inverse_after_forward_is_delta", compose_relational(bwd, fwd) == delta_relation(x));
            r.verdict("forward_after_inverse_is_delta", compose_relational(fwd, bwd) == delta_relation(sp.qset));
            if (is_scott_complete(x, lim)) {
                bool fg = true, gf = true;
                for (const auto& f : enumerate_functional_homs(x, x, lim))
                    fg = fg && functionalize(graph(f), lim) == f;
                for (const auto& phi : enumerate_relational_homs(x, x, lim))
                    gf = gf && graph(functionalize(phi, lim)) == phi;
                r.verdict("functionalize_after_graph_is_identity", fg);
                r.verdict("graph_after_functionalize_is_identity", gf);
            }
        }
    } else if (suite == "family-lemmas") {
        r.add_checks("checks", verify_family_lemmas(gluings_qset(x, lim), lim));
    } else if (suite == "gluing-adjunction" || suite == "scott-adjunction" || suite == "extensional-adjunction") {
        need(2);
        const QSet& k = xs[1];
        if (suite == "gluing-adjunction")
            r.add_checks("checks", verify_gluing_adjunction(x, k, lim));
        else if (suite == "scott-adjunction")
            r.add_checks("checks", verify_scott_adjunction(x, k, lim));
        else
            r.add_checks("checks", verify_extensional_adjunction(x, k, lim), true);
    } else if (suite == "graph-faithful") {
        need(2);
        auto v = graph_faithful_on(x, xs[1], lim);
        r.doc["hom_count"] = v.hom_count;
        r.doc["faithful"] = v.faithful;
        r.doc["codomain_extensional"] = is_extensional(xs[1]).extensional;
    } else if (suite == "discrete-hom-order") {
        need(2);
        auto w = discrete_hom_order_witness(x, xs[1], lim);
        r.verdict("discrete_hom_order", !w, !q.props().strong);
        if (w) {
            r.doc["lower"] = table_json(w->lower);
            r.doc["upper"] = table_json(w->upper);
        }
    } else {
        throw Error(Errc::parse_error, "unknown suite " + suite);
    }
    return r;
}

Report search_cmd(const std::string& predicate, const std::string& mode, std::size_t samples, const Options& o)
{
    SearchConfig cfg;
    auto p = parse_predicate(predicate);
    if (!p)
        throw Error(Errc::parse_error, "unknown predicate " + predicate);
    cfg.predicate = *p;
    cfg.max_quantale = o.max_quantale;
    cfg.max_carrier = o.max_carrier;
    cfg.random = mode == "random";
    cfg.seed = o.seed;
    cfg.samples = samples;
    cfg.threads = o.threads;
    cfg.limits = o.limits();
    auto res = search(cfg);
    Report r;
    r.doc["command"] = "search";
    r.doc["predicate"] = predicate;
    r.doc["mode"] = mode;
    r.doc["quantales"] = res.quantales;
    r.doc["instances"] = res.instances;
    r.doc["hits"] = res.findings.size();
    Json list = Json::array();
    for (const auto& f : res.findings) {
        Json e;
        e["quantale_index"] = f.quantale_index;
        e["quantale"] = io::quantale_to_json(f.quantale);
        e["qset"] = describe_qset(f.qset);
        e["detail"] = f.detail;
        list.push_back(std::move(e));
    }
    r.doc["instances_found"] = std::move(list);
    // a hit on a predicate that a proven statement rules out is a violation
    if (!res.findings.empty() && (cfg.predicate == Predicate::scott_not_gluing ||
                                  cfg.predicate == Predicate::nonextensional_complete))
        ++r.violations;
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Workbench for finite commutative quantales and Q-sets"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--max-carrier", o.max_carrier, "Largest carrier in searches and sweeps");
    app.add_option("--max-quantale", o.max_quantale, "Largest quantale in searches");
    app.add_option("--max-target", o.max_target, "Largest adjunction target in sweeps (besides E(Q))");
    app.add_flag("--force-strength", o.force_strength, "Build singleton Q-sets over non-strong quantales");
    app.add_flag("--strict", o.strict, "Exit 1 on findings as well as violations");
    app.add_option("--seed", o.seed, "Seed for random search");
    app.add_option("-o,--output", o.out, "Output file");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1U, 256U));
    app.add_flag("--verbose", o.verbose, "Print full classes and extra detail");
    app.add_flag("--timings", o.timings, "Add wall-clock timings to the report");

    std::string qpath, xpath, ypath, kind, suite, predicate = "gluing-not-scott", mode = "exhaustive";
    std::vector<std::string> qset_paths;
    std::size_t samples = 200;

    auto* cq = app.add_subcommand("check-quantale", "Validate a quantale and report its properties");
    cq->add_option("quantale", qpath)->required();
    auto* cx = app.add_subcommand("check-qset", "Decide extensionality and both completeness notions");
    cx->add_option("quantale", qpath)->required();
    cx->add_option("qset", xpath)->required();
    auto* quo = app.add_subcommand("quotient", "Quotient δ-equivalent points");
    quo->add_option("quantale", qpath)->required();
    quo->add_option("qset", xpath)->required();
    auto* comp = app.add_subcommand("complete", "Gluing or Scott completion");
    comp->add_option("kind", kind)->required()->check(CLI::IsMember({"gluing", "scott"}));
    comp->add_option("quantale", qpath)->required();
    comp->add_option("qset", xpath)->required();
    auto* sing = app.add_subcommand("singletons", "List singletons and their representers");
    sing->add_option("quantale", qpath)->required();
    sing->add_option("qset", xpath)->required();
    auto* hom = app.add_subcommand("hom", "Enumerate a hom-set");
    hom->add_option("kind", kind)->required()->check(CLI::IsMember({"functional", "relational"}));
    hom->add_option("quantale", qpath)->required();
    hom->add_option("dom", xpath)->required();
    hom->add_option("cod", ypath)->required();
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"sweep", "scott-implies-gluing", "connection", "equivalence", "yoneda", "family-lemmas",
                               "gluing-adjunction", "scott-adjunction", "extensional-adjunction", "graph-faithful",
                               "discrete-hom-order"}));
    ver->add_option("quantale", qpath)->required();
    ver->add_option("qsets", qset_paths);
    auto* srch = app.add_subcommand("search", "Search small quantales and Q-sets for a property");
    srch->add_option("--predicate", predicate)
        ->check(CLI::IsMember({"gluing-not-scott", "scott-not-gluing", "non-strong-singletons-break",
                               "nonextensional-complete", "discrete-hom-order-violation"}));
    srch->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
    srch->add_option("--samples", samples, "Random draws per quantale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Report rep;
    try {
        std::optional<Quantale> q;
        if (!qpath.empty())
            q = io::load_quantale(qpath);
        auto load = [&](const std::string& p) { return io::load_qset(p, q); };
        if (*cq)
            rep = check_quantale(*q);
        else if (*cx)
            rep = check_qset(load(xpath), o);
        else if (*quo) {
            const QSet x = load(xpath);
            auto qt = delta_quotient(x, o.verbose);
            rep = write_qset("quotient", qt.qset, o);
            rep.verdict("result_is_extensional", is_extensional(qt.qset).extensional);
        } else if (*comp)
            rep = complete_cmd(kind, load(xpath), o);
        else if (*sing)
            rep = singletons_report(load(xpath), o);
        else if (*hom)
            rep = hom_cmd(kind, load(xpath), load(ypath), o);
        else if (*ver) {
            std::vector<QSet> xs;
            for (const auto& p : qset_paths)
                xs.push_back(load(p));
            rep = verify_cmd(suite, *q, xs, o);
        } else if (*srch)
            rep = search_cmd(predicate, mode, samples, o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // an internal theorem check tripped
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    }

    rep.doc["violations"] = rep.violations;
    rep.doc["findings"] = rep.findings;
    if (o.timings)
        rep.doc["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::string text = render(rep, o.format == "json");
    const bool writes_qset = *quo || *comp;
    if (!o.out.empty() && !writes_qset)
        io::write_text(o.out, text);
    else
        std::cout << text;
    return rep.exit_code(o.strict);
}
