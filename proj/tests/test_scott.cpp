#include "common.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qsets;

namespace {

std::vector<QSet> pool(const Quantale& q, std::size_t n = 3) { return sweep_qsets(q, n, true); }

Singleton named(const Quantale& q, std::initializer_list<const char*> names)
{
    Singleton s;
    for (const char* n : names)
        s.push_back(fx::el(q, n));
    return s;
}

} // namespace

TEST(Scott, RepresentablesAndFamilySingletons)
{
    for (const auto& x : pool(fx::b4())) {
        for (Point p = 0; p < x.size(); ++p)
            EXPECT_TRUE(oracle::is_singleton(x, representable(x, p)));
        for (Family a : enumerate_compatible(x)) {
            auto s = family_singleton(x, a);
            EXPECT_TRUE(oracle::is_singleton(x, s));
            // a point glues A exactly when it represents σ_A
            std::vector<Point> gl = gluings_of(x, a).gluings;
            EXPECT_EQ(representers(x, s), gl);
        }
    }
}

TEST(Scott, EnumerationMatchesBruteForce)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3(), fx::z4()})
        for (const auto& x : sweep_qsets(q, 3)) {
            auto lib = enumerate_singletons(x);
            auto ref = oracle::singletons(x);
            ASSERT_EQ(lib, ref);
            for (const auto& s : lib)
                EXPECT_EQ(representers(x, s).size(), oracle::representers(x, s));
            EXPECT_EQ(is_scott_complete(x).scott_complete, oracle::scott_complete(x));
        }
}

TEST(Scott, CheckSingletonNamesTheAxiom)
{
    auto q = fx::b4();
    auto s = fx::s();
    EXPECT_TRUE(check_singleton(s, named(q, {"⊥", "⊥", "¬a"})));
    EXPECT_FALSE(check_singleton(s, named(q, {"⊥", "¬a", "⊥"})));
    EXPECT_FALSE(check_singleton(s, named(q, {"⊤", "⊥", "⊥"})));
}

TEST(Scott, TerminalHasOneSingletonPerIdempotent)
{
    auto t = terminal(fx::b4());
    EXPECT_EQ(enumerate_singletons(t).size(), 4U);
    EXPECT_TRUE(is_scott_complete(t).scott_complete);
}

TEST(Scott, SeparationExample)
{
    auto q = fx::b4();
    auto s = fx::s();
    auto r = is_scott_complete(s);
    EXPECT_FALSE(r.scott_complete);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.singletons[*r.witness], named(q, {"⊥", "⊥", "¬a"}));
    EXPECT_EQ(singleton_name(q, r.singletons[*r.witness]), "(⊥,⊥,¬a)");
    EXPECT_TRUE(r.representers[*r.witness].empty());
    EXPECT_EQ(r.count(), oracle::singletons(s).size());
    EXPECT_TRUE(is_gluing_complete(s).complete);
    EXPECT_FALSE(star_condition(s, r.singletons[*r.witness]));
}

TEST(Scott, EmptyQSetIsNotScottComplete)
{
    auto r = is_scott_complete(empty_qset(fx::b4()));
    EXPECT_FALSE(r.scott_complete);
    ASSERT_EQ(r.count(), 1U);
    EXPECT_TRUE(r.singletons[0].empty());
}

TEST(Scott, ScottImpliesGluing)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3(), fx::z4()})
        for (const auto& x : sweep_qsets(q, 3)) {
            auto v = verify_scott_implies_gluing(x);
            EXPECT_TRUE(v.holds);
            if (oracle::scott_complete(x)) {
                EXPECT_TRUE(oracle::gluing_complete(x));
            }
        }
}

TEST(Scott, ContinuityOverGluedFamilies)
{
    for (const auto& x : sweep_qsets(fx::b4(), 3)) {
        auto r = is_scott_complete(x);
        EXPECT_TRUE(r.continuity_checked);
        EXPECT_TRUE(r.continuity_holds);
    }
}

TEST(Scott, SingletonSpaceOfNamedExamples)
{
    auto t = terminal(fx::b4());
    auto st = singletons_qset(t);
    EXPECT_TRUE(fx::isomorphic(st.qset, t));
    auto ss = singletons_qset(fx::s());
    EXPECT_EQ(ss.qset.size(), oracle::singletons(fx::s()).size());
    EXPECT_EQ(ss.qset.size(), 4U);
    EXPECT_TRUE(oracle::scott_complete(ss.qset));
    auto c = scott_completion(fx::s());
    EXPECT_EQ(c.certification, Certification::verified_by_enumeration);
    EXPECT_TRUE(c.complete);
}

TEST(Scott, YonedaAndUnit)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3()})
        for (const auto& x : pool(q)) {
            auto sp = singletons_qset(x);
            EXPECT_TRUE(verify_yoneda(sp));
            auto unit = singleton_unit(sp);
            for (Point p = 0; p < x.size(); ++p)
                for (std::size_t i = 0; i < sp.singletons.size(); ++i)
                    EXPECT_EQ(sp.qset.delta(unit(p), i), sp.singletons[i][p]);
            for (Point a = 0; a < x.size(); ++a)
                for (Point b = 0; b < x.size(); ++b)
                    EXPECT_EQ(sp.qset.delta(unit(a), unit(b)), x.delta(a, b));
        }
}

TEST(Scott, CompletionIsScottComplete)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3()})
        for (const auto& x : pool(q)) {
            auto c = scott_completion(x);
            if (c.space.singletons.size() <= 8) {
                EXPECT_EQ(c.certification, Certification::verified_by_enumeration);
                EXPECT_TRUE(oracle::scott_complete(c.qset()));
            }
            EXPECT_TRUE(c.complete);
        }
}

TEST(Scott, SingletonMapIsFunctorial)
{
    auto xs = pool(fx::b4(), 2);
    for (const auto& x : xs) {
        auto sx = singletons_qset(x);
        EXPECT_EQ(singletons_on_morphism(identity(x), sx, sx), identity(sx.qset));
        for (const auto& y : xs) {
            auto sy = singletons_qset(y);
            for (const auto& f : enumerate_functional_homs(x, y)) {
                auto sf = singletons_on_morphism(f, sx, sy);
                for (Point p = 0; p < x.size(); ++p)
                    EXPECT_EQ(sy.singletons[sf(*sx.index_of(representable(x, p)))], representable(y, f(p)));
                for (const auto& z : xs) {
                    auto sz = singletons_qset(z);
                    for (const auto& g : enumerate_functional_homs(y, z))
                        EXPECT_EQ(singletons_on_morphism(compose_functional(g, f), sx, sz),
                                  compose_functional(singletons_on_morphism(g, sy, sz), sf));
                }
            }
        }
    }
}

TEST(Scott, RelationalIsoComposites)
{
    auto q = fx::b4();
    for (const auto& x : {terminal(q), fx::s(), empty_qset(q), fx::twobot()}) {
        auto sp = singletons_qset(x);
        auto [fwd, bwd] = relational_iso_to_completion(sp);
        EXPECT_EQ(compose_relational(bwd, fwd), delta_relation(x));
        EXPECT_EQ(compose_relational(fwd, bwd), delta_relation(sp.qset));
    }
    for (const auto& x : pool(fx::chain3())) {
        auto sp = singletons_qset(x);
        auto [fwd, bwd] = relational_iso_to_completion(sp);
        EXPECT_EQ(compose_relational(bwd, fwd), delta_relation(x));
        EXPECT_EQ(compose_relational(fwd, bwd), delta_relation(sp.qset));
    }
}

TEST(Scott, InducedSingletonMapOfAGraph)
{
    auto xs = pool(fx::b4(), 2);
    for (const auto& x : xs)
        for (const auto& y : xs) {
            auto sy = singletons_qset(y);
            for (const auto& f : enumerate_functional_homs(x, y)) {
                auto m = induced_singleton_map(graph(f), sy);
                for (Point p = 0; p < x.size(); ++p)
                    EXPECT_EQ(sy.singletons[m(p)], representable(y, f(p)));
            }
        }
}

TEST(Scott, FunctionalizeRoundTrips)
{
    auto q = fx::b4();
    auto t = terminal(q);
    EXPECT_EQ(functionalize(delta_relation(t)), identity(t));
    for (const auto& x : pool(q))
        for (const auto& phi : enumerate_relational_homs(x, t)) {
            auto f = functionalize(phi);
            EXPECT_EQ(graph(f), phi);
        }
    for (const auto& x : pool(q, 2))
        for (const auto& f : enumerate_functional_homs(x, t))
            EXPECT_EQ(functionalize(graph(f)), f);
}

TEST(Scott, FunctionalizeIntoSeparationExampleFails)
{
    auto m = io::load_morphism(fx::dir() / "unrepresented.morphism");
    const auto& phi = std::get<RelationalMorphism>(m);
    try {
        functionalize(phi);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_scott_complete);
        EXPECT_NE(std::string(e.what()).find("(⊥,⊥,¬a)"), std::string::npos);
    }
}

TEST(Scott, ConnectionTheorem)
{
    auto q = fx::b4();
    auto t = verify_connection_theorem(terminal(q));
    EXPECT_TRUE(t.applicable);
    EXPECT_TRUE(t.scott_complete);
    EXPECT_TRUE(t.gluing_complete);
    EXPECT_TRUE(t.star_holds);
    EXPECT_TRUE(t.holds);
    auto s = verify_connection_theorem(fx::s());
    EXPECT_TRUE(s.applicable);
    EXPECT_FALSE(s.scott_complete);
    EXPECT_TRUE(s.gluing_complete);
    EXPECT_FALSE(s.star_holds);
    ASSERT_TRUE(s.star_witness);
    EXPECT_EQ(*s.star_witness, named(q, {"⊥", "⊥", "¬a"}));
    EXPECT_TRUE(s.holds);
}

TEST(Scott, AdjunctionOnNamedExamples)
{
    auto q = fx::b4();
    auto t = terminal(q);
    for (const auto& x : {fx::s(), fx::twobot(), empty_qset(q), t}) {
        auto r = verify_scott_adjunction(x, t);
        EXPECT_TRUE(r.ok()) << r.first_failure()->name;
        EXPECT_EQ(oracle::functional_homs(x, t).size(), oracle::functional_homs(singletons_qset(x).qset, t).size());
    }
    try {
        verify_scott_adjunction(t, fx::s());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_scott_complete);
    }
}

TEST(Scott, StrengthIsRequired)
{
    auto q = fx::diamond();
    auto x = point(q, q.top());
    try {
        singletons_qset(x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::strength_required);
    }
    EXPECT_THROW(scott_completion(x), Error);
    Limits forced;
    forced.force_strength = true;
    auto sp = singletons_qset(x, forced);
    EXPECT_EQ(sp.singletons.size(), oracle::singletons(x).size());
}

TEST(Scott, SingletonGuard)
{
    Limits lim;
    lim.max_search_space = 4;
    EXPECT_THROW(enumerate_singletons(terminal(fx::b4()), lim), Error);
}
