#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsets {

/// Outcome of an axiom check; names the violated axiom and its witness tuple.
struct Verdict {
    bool ok = true;
    std::string axiom;
    std::string witness;

    static Verdict fail(std::string axiom, std::string witness) { return {false, std::move(axiom), std::move(witness)}; }
    explicit operator bool() const noexcept { return ok; }
    std::string describe() const { return ok ? "ok" : axiom + " at " + witness; }
};

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

/// Named checks accumulated by the verification routines, in execution order.
struct CheckList {
    std::vector<Check> items;

    void add(std::string name, bool ok, std::string detail = {})
    {
        items.push_back({std::move(name), ok, std::move(detail)});
    }

    bool ok() const noexcept
    {
        for (const auto& c : items)
            if (!c.ok)
                return false;
        return true;
    }

    const Check* first_failure() const noexcept
    {
        for (const auto& c : items)
            if (!c.ok)
                return &c;
        return nullptr;
    }
};

} // namespace qsets
