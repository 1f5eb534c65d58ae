#include "common.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qsets;

namespace {

std::vector<QSet> pool(const Quantale& q, std::size_t n) { return sweep_qsets(q, n, true); }

} // namespace

TEST(Morphism, FunctionalHomsMatchBruteForce)
{
    for (const auto& q : {fx::b4(), fx::chain3()}) {
        auto xs = pool(q, 3);
        for (const auto& x : xs)
            for (const auto& y : xs) {
                auto homs = enumerate_functional_homs(x, y);
                auto ref = oracle::functional_homs(x, y);
                ASSERT_EQ(homs.size(), ref.size());
                for (std::size_t i = 0; i < homs.size(); ++i)
                    EXPECT_EQ(homs[i].map(), ref[i]);
            }
    }
}

TEST(Morphism, RelationalHomsMatchBruteForce)
{
    for (const auto& q : {fx::b4(), fx::chain3()}) {
        auto xs = pool(q, 2);
        for (const auto& x : xs)
            for (const auto& y : xs) {
                auto homs = enumerate_relational_homs(x, y);
                auto ref = oracle::relational_homs(x, y);
                ASSERT_EQ(homs.size(), ref.size());
                for (std::size_t i = 0; i < homs.size(); ++i)
                    EXPECT_EQ(homs[i].table(), ref[i]);
            }
    }
}

TEST(Morphism, RelationalHomsIntoSeparationExample)
{
    auto s = fx::s();
    auto t = terminal(fx::b4());
    for (const auto& x : {s, point(fx::b4(), fx::el(fx::b4(), "¬a"))}) {
        EXPECT_EQ(enumerate_relational_homs(x, s).size(), oracle::relational_homs(x, s).size());
        EXPECT_EQ(enumerate_relational_homs(x, t).size(), oracle::relational_homs(x, t).size());
    }
}

TEST(Morphism, DeltaIsTheRelationalIdentity)
{
    for (const auto& x : pool(fx::b4(), 3)) {
        auto d = delta_relation(x);
        EXPECT_TRUE(check_relational(x, x, d.table()));
        if (x.size() > 2)
            continue;
        for (const auto& y : pool(fx::b4(), 2))
            for (const auto& phi : enumerate_relational_homs(x, y)) {
                EXPECT_EQ(compose_relational(phi, d), phi);
                EXPECT_EQ(compose_relational(delta_relation(y), phi), phi);
            }
    }
}

TEST(Morphism, RelationalCompositionMatchesOracleAndAssociates)
{
    auto q = fx::chain3();
    auto xs = pool(q, 2);
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& z : xs) {
                auto f = enumerate_relational_homs(x, y);
                auto g = enumerate_relational_homs(y, z);
                auto h = enumerate_relational_homs(z, x);
                for (const auto& phi : f)
                    for (const auto& psi : g) {
                        auto c = compose_relational(psi, phi);
                        EXPECT_EQ(c.table(), oracle::compose(q, x.size(), y.size(), z.size(), phi.table(), psi.table()));
                        EXPECT_TRUE(oracle::relational(x, z, c.table()));
                        for (const auto& chi : h)
                            EXPECT_EQ(compose_relational(chi, c), compose_relational(compose_relational(chi, psi), phi));
                    }
            }
}

TEST(Morphism, GraphIsAFunctor)
{
    for (const auto& q : {fx::b4(), fx::chain3()}) {
        auto xs = pool(q, 3);
        for (const auto& x : xs) {
            EXPECT_EQ(graph(identity(x)), delta_relation(x));
            for (const auto& y : xs) {
                auto fs = enumerate_functional_homs(x, y);
                for (const auto& f : fs)
                    EXPECT_TRUE(oracle::relational(x, y, graph(f).table()));
                if (x.size() + y.size() > 5)
                    continue;
                for (const auto& z : xs) {
                    if (z.size() > 2)
                        continue;
                    for (const auto& f : fs)
                        for (const auto& g : enumerate_functional_homs(y, z))
                            EXPECT_EQ(graph(compose_functional(g, f)), compose_relational(graph(g), graph(f)));
                }
            }
        }
    }
}

TEST(Morphism, GraphIdentifiesEquivalentTargets)
{
    auto q = fx::b4();
    auto y = fx::twobot();
    auto x = point(q, q.bottom());
    auto f = FunctionalMorphism::make(x, y, {0});
    auto g = FunctionalMorphism::make(x, y, {1});
    EXPECT_FALSE(f == g);
    EXPECT_EQ(graph(f), graph(g));
}

TEST(Morphism, GraphFaithfulness)
{
    auto q = fx::b4();
    EXPECT_TRUE(graph_faithful_on(fx::s(), terminal(q)).faithful);
    auto v = graph_faithful_on(point(q, q.bottom()), fx::twobot());
    EXPECT_FALSE(v.faithful);
    EXPECT_EQ(v.hom_count, 2U);
}

// Graph is faithful on Hom(X, Y) for every X exactly when Y is extensional.
TEST(Morphism, GraphFaithfulForAllSourcesIffTargetExtensional)
{
    for (const auto& q : {fx::b4(), fx::chain3()}) {
        auto xs = pool(q, 3);
        for (const auto& y : xs) {
            bool all = true;
            for (const auto& x : xs)
                all = all && graph_faithful_on(x, y).faithful;
            EXPECT_EQ(all, oracle::extensional(y));
        }
    }
}

TEST(Morphism, EveryHomIntoTerminalIsUnique)
{
    for (const auto& q : {fx::b4(), fx::chain3()}) {
        auto t = terminal(q);
        for (const auto& x : sweep_qsets(q, 3))
            EXPECT_EQ(oracle::functional_homs(x, t).size(), 1U);
    }
}

TEST(Morphism, FunctionalIsUnitMorphism)
{
    auto q = fx::b4();
    ASSERT_TRUE(q.unit());
    for (const auto& x : pool(q, 2))
        for (const auto& y : pool(q, 2))
            for (const auto& f : enumerate_functional_homs(x, y))
                EXPECT_NO_THROW(EMorphism::make(x, y, f.map(), *q.unit()));
}

TEST(Morphism, EMorphismsCompose)
{
    auto q = fx::b4();
    auto xs = pool(q, 2);
    auto idem = oracle::members(q.idempotents());
    std::size_t composed = 0;
    auto maps = [](const QSet& x, const QSet& y) {
        std::vector<std::vector<Point>> out;
        std::vector<Point> m(x.size());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == x.size()) {
                out.push_back(m);
                return;
            }
            for (Point t = 0; t < y.size(); ++t) {
                m[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    };
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& z : xs)
                for (Elem e : idem)
                    for (Elem e2 : idem)
                        for (const auto& m1 : maps(x, y)) {
                            if (!check_e_morphism(x, y, m1, e))
                                continue;
                            auto f = EMorphism::make(x, y, m1, e);
                            for (const auto& m2 : maps(y, z)) {
                                if (!check_e_morphism(y, z, m2, e2))
                                    continue;
                                auto g = EMorphism::make(y, z, m2, e2);
                                auto c = compose_e(g, f);
                                EXPECT_EQ(c.error(), q.tensor(e, e2));
                                ++composed;
                            }
                        }
    EXPECT_GT(composed, 0U);
}

TEST(Morphism, RejectsInvalidMorphisms)
{
    auto q = fx::b4();
    auto s = fx::s();
    try {
        FunctionalMorphism::make(s, s, {2, 1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_a_morphism);
    }
    try {
        RelationalMorphism::make(s, s, std::vector<Elem>(9, q.top()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_a_morphism);
    }
    try {
        compose_functional(identity(s), identity(terminal(q)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::domain_mismatch);
    }
    try {
        enumerate_relational_homs(coproduct_of_terminals(q, 2), s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_large);
    }
    try {
        enumerate_functional_homs(s, terminal(fx::chain3()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::domain_mismatch);
    }
}

TEST(Morphism, FunctionalEnumerationGuard)
{
    Limits lim;
    lim.max_search_space = 10;
    auto q = fx::chain3();
    auto x = coproduct_of_terminals(q, 3);
    EXPECT_THROW(enumerate_functional_homs(x, x, lim), Error);
}

// Over a strong quantale distinct relational morphisms are never pointwise comparable.
TEST(Morphism, DiscreteHomOrderOverStrongQuantales)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3()}) {
        ASSERT_TRUE(q.props().strong);
        auto xs = pool(q, 2);
        for (const auto& x : xs)
            for (const auto& y : xs)
                EXPECT_FALSE(discrete_hom_order_witness(x, y).has_value());
    }
}
