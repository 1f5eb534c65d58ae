#include "common.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qsets;

namespace {

Errc build_error(const Quantale& q, std::vector<std::string> carrier, std::vector<Elem> delta)
{
    try {
        QSet::build(q, std::move(carrier), std::move(delta));
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected a rejection";
    return Errc::parse_error;
}

std::vector<Elem> canonical_table(std::size_t n, const std::vector<Elem>& d)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Elem> best = d;
    do {
        std::vector<Elem> t(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t[i * n + j] = d[p[i] * n + p[j]];
        best = std::min(best, t);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

} // namespace

TEST(QSet, TerminalIsIdempotentsUnderMeet)
{
    auto q = fx::b4();
    auto t = terminal(q);
    EXPECT_EQ(t.carrier(), (std::vector<std::string>{"⊥", "a", "¬a", "⊤"}));
    for (Point a = 0; a < t.size(); ++a)
        for (Point b = 0; b < t.size(); ++b)
            EXPECT_EQ(t.delta(a, b), q.meet(Elem(a), Elem(b)));
    EXPECT_TRUE(oracle::is_qset(q, t.size(), t.delta_table()));
    EXPECT_EQ(t, fx::qset("terminal-b4"));
}

TEST(QSet, EmptyIsValidAndExtensional)
{
    auto e = empty_qset(fx::b4());
    EXPECT_TRUE(e.empty());
    EXPECT_TRUE(is_extensional(e).extensional);
    EXPECT_TRUE(is_separable(e));
}

TEST(QSet, TwoBottomsAreEquivalent)
{
    auto x = fx::twobot();
    EXPECT_TRUE(delta_equivalent(x, 0, 1));
    auto v = is_extensional(x);
    EXPECT_FALSE(v.extensional);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(*v.witness, (std::pair<Point, Point>{0, 1}));
    EXPECT_EQ(coproduct(point(fx::b4(), 0), point(fx::b4(), 0)).delta_table(), x.delta_table());
}

TEST(QSet, TerminalIsExtensional)
{
    auto t = terminal(fx::b4());
    for (Point a = 0; a < t.size(); ++a)
        for (Point b = 0; b < t.size(); ++b)
            EXPECT_EQ(delta_equivalent(t, a, b), a == b);
    EXPECT_TRUE(is_extensional(t).extensional);
}

TEST(QSet, SubsetLocaleGivesSeparationExample)
{
    auto q = fx::b4();
    ElemSet s = (ElemSet{1} << fx::el(q, "⊥")) | (ElemSet{1} << fx::el(q, "a")) | (ElemSet{1} << fx::el(q, "⊤"));
    EXPECT_EQ(subset_locale_qset(q, s), fx::s());
}

TEST(QSet, ModuleZ4OverItsIdeals)
{
    // ideals of Z/4 as subsets, in quantale order (0) < (2) < (1)
    const std::vector<std::set<unsigned>> ideals{{0}, {0, 2}, {0, 1, 2, 3}};
    auto mul = [](const std::set<unsigned>& i, unsigned x) {
        std::set<unsigned> out;
        for (unsigned r : i)
            out.insert(r * x % 4);
        return out;
    };
    auto m = module_qset_detailed(4, 4);
    auto q = m.qset.quantale();
    EXPECT_EQ(q, ideals_quantale(4));
    for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y) {
            std::vector<Elem> qualifying;
            for (Elem i = 0; i < 3; ++i)
                if (mul(ideals[i], x) == mul(ideals[i], y))
                    qualifying.push_back(i);
            EXPECT_EQ(m.qset.delta(x, y), oracle::sup(q, qualifying)) << x << "," << y;
            EXPECT_TRUE(m.join_attained[x * 4 + y]);
        }
    EXPECT_EQ(m.qset.delta(1, 3), fx::el(q, "(1)"));
    EXPECT_EQ(m.qset.extent(2), fx::el(q, "(1)"));
    EXPECT_EQ(m.qset, fx::qset("module-z4"));
    EXPECT_THROW(module_qset(4, 3), Error);
}

TEST(QSet, RejectsBadTables)
{
    auto q = fx::b4();
    const Elem bot = 0, a = fx::el(q, "a"), na = fx::el(q, "¬a"), top = fx::el(q, "⊤");
    EXPECT_EQ(build_error(q, {"x", "y"}, {top, a, bot, top}), Errc::not_symmetric);
    EXPECT_EQ(build_error(q, {"x", "y"}, {a, na, na, top}), Errc::extent_law_fails);
    EXPECT_EQ(build_error(q, {"x", "y", "z"}, {top, top, bot, top, top, top, bot, top, top}), Errc::not_transitive);
    EXPECT_EQ(build_error(q, {"x"}, {}), Errc::malformed_table);
    EXPECT_EQ(build_error(q, {"x", "x"}, {top, top, top, top}), Errc::malformed_table);
    // an extent must be idempotent
    EXPECT_EQ(build_error(fx::l3(), {"x"}, {1}), Errc::extent_law_fails);
}

TEST(QSet, EnumerationMatchesBruteForce)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3()}) {
        const std::size_t max_n = q.size() == 4 ? 2 : 3;
        for (std::size_t n = 0; n <= max_n; ++n) {
            auto tables = oracle::all_qset_tables(q, n);
            auto lib = enumerate_qsets(q, n);
            ASSERT_EQ(lib.size(), tables.size()) << n;
            std::set<std::vector<Elem>> a(tables.begin(), tables.end()), b;
            for (const auto& x : lib)
                b.insert(x.delta_table());
            EXPECT_EQ(a, b);

            std::set<std::vector<Elem>> classes;
            for (const auto& t : tables)
                classes.insert(canonical_table(n, t));
            auto iso = enumerate_qsets(q, n, true);
            EXPECT_EQ(iso.size(), classes.size());
            for (std::size_t i = 0; i < iso.size(); ++i)
                for (std::size_t j = i + 1; j < iso.size(); ++j)
                    EXPECT_FALSE(fx::isomorphic(iso[i], iso[j]));
        }
    }
}

TEST(QSet, ThreePointB4TablesMatchBruteForce)
{
    auto q = fx::b4();
    EXPECT_EQ(enumerate_qsets(q, 3).size(), oracle::all_qset_tables(q, 3).size());
}

TEST(QSet, ExtensionalAgreesWithOracleAndSeparability)
{
    for (const auto& q : {fx::b4(), fx::chain3()})
        for (const auto& x : sweep_qsets(q, 3)) {
            EXPECT_EQ(is_extensional(x).extensional, oracle::extensional(x));
            EXPECT_EQ(is_separable(x), is_extensional(x).extensional);
            EXPECT_TRUE(delta_below_extents(x));
        }
}

TEST(QSet, PartitionBlocksAreEquivalenceClasses)
{
    for (const auto& x : sweep_qsets(fx::b4(), 3)) {
        auto p = delta_partition(x);
        for (Point a = 0; a < x.size(); ++a)
            for (Point b = 0; b < x.size(); ++b)
                EXPECT_EQ(p.block_of[a] == p.block_of[b], oracle::equivalent(x, a, b));
    }
}

TEST(QSet, DerivedConstructionsAreQSets)
{
    for (const auto& q : {fx::b4(), fx::chain3(), fx::l3(), fx::z4()}) {
        for (const auto& x : {diagonal_qset(q), q_extent_qset(q), upper_approx_qset(q), coproduct_of_terminals(q, 2)})
            EXPECT_TRUE(oracle::is_qset(q, x.size(), x.delta_table()));
    }
    EXPECT_THROW(diagonal_qset(fx::diamond()), Error);
    EXPECT_THROW(subset_locale_qset(fx::l3(), 1), Error);
}

TEST(QSet, EqualizerOfDoublingInclusionsIsSharedSubset)
{
    auto x = terminal(fx::b4());
    std::vector<bool> shared{true, true, false, false};
    auto d = doubled_along(x, shared);
    auto up = FunctionalMorphism::make(x, d.qset, d.upper);
    auto lo = FunctionalMorphism::make(x, d.qset, d.lower);
    auto eq = equalizer(up, lo);
    EXPECT_EQ(eq.qset.carrier(), (std::vector<std::string>{"⊥", "a"}));
}

TEST(QSet, CoproductKeepsBothSides)
{
    auto q = fx::b4();
    auto c = coproduct(fx::s(), terminal(q));
    EXPECT_EQ(c.size(), 7U);
    EXPECT_EQ(c.delta(0, 3), q.bottom());
    EXPECT_EQ(c.delta(1, 1), fx::el(q, "a"));
}
