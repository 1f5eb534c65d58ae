// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <path-to-qsets-cli> <fixtures-dir>

#include "qsets/qsets.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace qsets;
namespace fs = std::filesystem;

namespace {

fs::path cli, fixtures;

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    Run r;
    const std::string cmd = "\"" + cli.string() + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fx(const std::string& name) { return "\"" + (fixtures / name).string() + "\""; }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Tally {
    std::size_t checked = 0, failed = 0;
};

/// Sums the named check rows over several sweep reports.
Tally rows(const std::vector<Report>& reps, const std::vector<std::string>& keys)
{
    Tally t;
    for (const auto& r : reps)
        for (const auto& k : keys) {
            const auto& checks = r.doc.at("checks");
            if (!checks.contains(k))
                continue;
            t.checked += checks[k]["checked"].get<std::size_t>();
            t.failed += checks[k]["failed"].get<std::size_t>();
        }
    return t;
}

bool clean(const Tally& t) { return t.checked > 0 && t.failed == 0; }

std::string tally_text(const Tally& t)
{
    return std::to_string(t.checked) + " checked, " + std::to_string(t.failed) + " failed";
}

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail)
{
    std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << what << ": " << detail << "\n" << std::flush;
    failures += !ok;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: acceptance <qsets-cli> <fixtures-dir>\n";
        return 2;
    }
    cli = argv[1];
    fixtures = argv[2];

    const Quantale b4 = io::load_quantale(fixtures / "b4.quantale");
    const Quantale chain3 = io::load_quantale(fixtures / "chain3.quantale");
    const Quantale l3 = io::load_quantale(fixtures / "l3-mv.quantale");
    const Quantale diamond = io::load_quantale(fixtures / "diamond-nonstrong.quantale");
    const std::vector<Quantale> swept{b4, chain3};

    // 1. separation example through the CLI
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r = run("check-qset " + fx("b4.quantale") + " " + fx("s-counterexample.qset") + " --format json");
        const double dt = seconds_since(t0);
        bool ok = r.status == 0;
        std::string detail;
        if (ok) {
            auto j = io::Json::parse(r.out);
            ok = j.value("gluing_complete", false) && !j.value("scott_complete", true) &&
                 j.value("scott_witness", std::string()) == "(⊥,⊥,¬a)";
            detail = "gluing_complete=" + j["gluing_complete"].dump() + " scott_complete=" + j["scott_complete"].dump() +
                     " witness=" + j.value("scott_witness", std::string("?"));
        } else {
            detail = "exit status " + std::to_string(r.status);
        }
        ok = ok && dt < 1.0;
        std::ostringstream s;
        s.precision(3);
        s << std::fixed << dt;
        report(1, ok, "B4 separation example", detail + ", " + s.str() + " s");
    }

    // 2. no Scott-complete Q-set fails gluing-completeness
    {
        auto t0 = std::chrono::steady_clock::now();
        std::size_t total = 0, bad = 0;
        for (const auto& q : swept)
            for (const auto& x : sweep_qsets(q, 3)) {
                ++total;
                bad += is_scott_complete(x).scott_complete && !is_gluing_complete(x).complete;
            }
        const double dt = seconds_since(t0);
        std::ostringstream s;
        s.precision(2);
        s << std::fixed << dt;
        report(2, bad == 0 && total > 0 && dt < 60.0, "Scott ⇒ gluing sweep (|X| ≤ 3, B4 and chain3)",
               std::to_string(total) + " Q-sets, " + std::to_string(bad) + " Scott∧¬gluing, " + s.str() + " s");
    }

    // 3. completions are complete
    {
        std::size_t objects = 0, gluing_bad = 0, double_enum = 0, scott_bad = 0, beyond = 0;
        for (const auto& q : {b4, chain3, l3})
            for (const auto& x : sweep_qsets(q, 3, true)) {
                ++objects;
                gluing_bad += !is_gluing_complete(gluing_completion(x).qset()).complete;
                auto sp = singletons_qset(x);
                if (sp.singletons.size() <= 8) {
                    ++double_enum;
                    scott_bad += !is_scott_complete(sp.qset).scott_complete;
                } else {
                    ++beyond;
                }
            }
        report(3, gluing_bad == 0 && scott_bad == 0 && double_enum > 0, "ℭX gluing-complete, 𝔖X Scott-complete",
               std::to_string(objects) + " objects; ℭ failures " + std::to_string(gluing_bad) + "; 𝔖 double-enumerated " +
                   std::to_string(double_enum) + " with " + std::to_string(scott_bad) + " failures (" +
                   std::to_string(beyond) + " with |𝔖X| > 8 not enumerated)");
    }

    std::vector<Report> adj, obj, mor;
    for (const auto& q : swept) {
        adj.push_back(sweep_adjunctions(q, SweepConfig{}));
        obj.push_back(sweep_objects(q, SweepConfig{}));
        mor.push_back(sweep_morphisms(q, SweepConfig{}));
    }

    // 4. adjunctions
    {
        std::vector<std::string> keys;
        for (const auto& r : adj)
            for (const auto& [k, v] : r.doc.at("checks").items())
                if (k.rfind("gluing: ", 0) == 0 || k.rfind("scott: ", 0) == 0)
                    if (std::find(keys.begin(), keys.end(), k) == keys.end())
                        keys.push_back(k);
        auto t = rows(adj, keys);
        bool zig = false, card = false;
        for (const auto& k : keys) {
            zig = zig || k.find("zig-zag") != std::string::npos;
            card = card || k.find("|Hom(X,K)| = |Hom(LX,K)|") != std::string::npos;
        }
        report(4, clean(t) && zig && card, "gluing and Scott adjunctions",
               std::to_string(keys.size()) + " kinds of check, " + tally_text(t));
    }

    // 5. category laws
    {
        auto t = rows(mor,
                      {"relational_identity_left", "relational_identity_right", "functional_identity",
                       "relational_associativity", "functional_associativity", "graph_preserves_identity",
                       "graph_preserves_composition"});
        // associativity on sampled composable triples with objects up to three points
        std::size_t sampled = 0, bad = 0;
        for (const auto& q : swept) {
            auto pool = sweep_qsets(q, 3, true);
            std::mt19937_64 rng(2024);
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            for (int trial = 0; trial < 300; ++trial) {
                const QSet &w = pool[pick(rng)], &x = pool[pick(rng)], &y = pool[pick(rng)], &z = pool[pick(rng)];
                auto a = enumerate_relational_homs(w, x), b = enumerate_relational_homs(x, y),
                     c = enumerate_relational_homs(y, z);
                if (a.empty() || b.empty() || c.empty())
                    continue;
                const auto& chi = a[rng() % a.size()];
                const auto& phi = b[rng() % b.size()];
                const auto& psi = c[rng() % c.size()];
                ++sampled;
                bad += !(compose_relational(psi, compose_relational(phi, chi)) ==
                         compose_relational(compose_relational(psi, phi), chi));
            }
        }
        report(5, clean(t) && bad == 0 && sampled > 0, "identity, associativity, Graph functoriality",
               tally_text(t) + "; sampled triples over |X| ≤ 3: " + std::to_string(sampled) + ", " +
                   std::to_string(bad) + " failed");
    }

    // 6. relational equivalence
    {
        auto a = rows(obj, {"relational_iso_to_singletons"});
        auto b = rows(mor, {"functionalize_after_graph", "graph_after_functionalize"});
        report(6, clean(a) && clean(b), "φ/φ⁻¹ composites and functionalize/graph round trips",
               "composites " + tally_text(a) + "; round trips " + tally_text(b));
    }

    // 7. Yoneda
    {
        auto t = rows(obj, {"yoneda"});
        report(7, clean(t), "Yoneda δ(σ_x, ξ) = ξ(x)", tally_text(t));
    }

    // 8. locales
    {
        std::size_t locales = 0, bad = 0;
        for (const auto& q : enumerate_quantales_up_to(6))
            if (q.props().locale) {
                ++locales;
                bad += !tensor_is_meet(q);
            }
        bad += !tensor_is_meet(b4) || !tensor_is_meet(chain3);
        report(8, bad == 0 && locales > 0, "locale tensor equals meet",
               std::to_string(locales) + " locales up to 6 elements plus fixtures, " + std::to_string(bad) + " failed");
    }

    // 9. discrete hom order
    {
        auto strong = rows(mor, {"discrete_hom_order"});
        auto l3r = sweep_morphisms(l3, SweepConfig{});
        strong.checked += l3r.doc["checks"]["discrete_hom_order"]["checked"].get<std::size_t>();
        strong.failed += l3r.doc["checks"]["discrete_hom_order"]["failed"].get<std::size_t>();
        std::size_t pairs = 0, comparable = 0;
        auto pool = sweep_qsets(diamond, 2, true);
        for (const auto& x : pool)
            for (const auto& y : pool) {
                ++pairs;
                comparable += discrete_hom_order_witness(x, y).has_value();
            }
        report(9, clean(strong), "discrete hom order over strong quantales",
               tally_text(strong) + "; non-strong diamond: " + std::to_string(comparable) + " of " +
                   std::to_string(pairs) + " pairs have comparable homs (finding)");
    }

    // 10. Graph faithful ⇔ extensional
    {
        auto t = rows(mor, {"graph_faithful_iff_extensional"});
        report(10, clean(t), "Graph faithful for all X ⇔ Y extensional", tally_text(t));
    }

    // 11. thread-count independence
    {
        std::vector<std::pair<std::string, std::string>> cmds{
            {"verify sweep " + fx("b4.quantale") + " --format json", "verify sweep B4"},
            {"verify sweep " + fx("chain3.quantale"), "verify sweep chain3"},
            {"search --predicate gluing-not-scott --format json", "search gluing-not-scott"},
            {"search --predicate non-strong-singletons-break --mode random --seed 7 --samples 100",
             "random search"},
        };
        bool ok = true;
        std::string detail;
        for (const auto& [args, label] : cmds) {
            auto a = run(args + " --threads 1"), b = run(args + " --threads 4");
            const bool same = a.status == b.status && a.out == b.out && !a.out.empty();
            ok = ok && same;
            detail += (detail.empty() ? "" : ", ") + label + (same ? " identical" : " DIFFERS") + " (" +
                      std::to_string(a.out.size()) + " bytes)";
        }
        report(11, ok, "byte-identical reports across thread counts", detail);
    }

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << "\n";
    return failures ? 1 : 0;
}
