#include "common.hpp"

#include <gtest/gtest.h>

using namespace qsets;

namespace {

void expect_clean(const Report& r)
{
    EXPECT_EQ(r.violations, 0U) << render_text(r.doc);
    EXPECT_EQ(r.exit_code(false), 0);
}

} // namespace

TEST(Suite, SweepsAreCleanOverB4)
{
    auto r = sweep_all(fx::b4(), SweepConfig{});
    expect_clean(r);
    EXPECT_EQ(r.doc["objects"]["qsets"], 255);
}

TEST(Suite, SweepsAreCleanOverChain3)
{
    auto r = sweep_all(fx::chain3(), SweepConfig{});
    expect_clean(r);
    EXPECT_EQ(r.doc["objects"]["qsets"], 105);
}

TEST(Suite, SweepsAreCleanOverL3)
{
    expect_clean(sweep_all(fx::l3(), SweepConfig{}));
}

TEST(Suite, ReportsDoNotDependOnThreadCount)
{
    SweepConfig one, many;
    many.threads = 4;
    auto a = sweep_all(fx::b4(), one), b = sweep_all(fx::b4(), many);
    EXPECT_EQ(io::dump(a.doc), io::dump(b.doc));
    EXPECT_EQ(render_text(a.doc), render_text(b.doc));
}

TEST(Suite, EveryCheckRan)
{
    auto r = sweep_all(fx::b4(), SweepConfig{});
    for (const char* section : {"objects", "adjunctions", "morphisms"})
        for (const auto& [name, row] : r.doc[section]["checks"].items()) {
            EXPECT_GT(row["checked"].get<std::size_t>(), 0U) << section << ": " << name;
            EXPECT_EQ(row["failed"], 0) << section << ": " << name;
        }
}
