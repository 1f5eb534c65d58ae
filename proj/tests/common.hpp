#pragma once

#include "qsets/qsets.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

namespace fx {

inline std::filesystem::path dir() { return QSETS_FIXTURES_DIR; }

inline qsets::Quantale quantale(const std::string& name) { return qsets::io::load_quantale(dir() / (name + ".quantale")); }
inline qsets::QSet qset(const std::string& name) { return qsets::io::load_qset(dir() / (name + ".qset")); }

inline qsets::Quantale b4() { return quantale("b4"); }
inline qsets::Quantale chain3() { return quantale("chain3"); }
inline qsets::Quantale l3() { return quantale("l3-mv"); }
inline qsets::Quantale z4() { return quantale("ideals-z4"); }
inline qsets::Quantale diamond() { return quantale("diamond-nonstrong"); }

inline qsets::Elem el(const qsets::Quantale& q, const std::string& name) { return *q.index_of(name); }

/// The separation example S = {⊥, a, ⊤} ⊆ B4.
inline qsets::QSet s() { return qset("s-counterexample"); }

inline qsets::QSet twobot() { return qset("twobot"); }

/// Whether some relabeling of the carrier turns x into y (same quantale).
inline bool isomorphic(const qsets::QSet& x, const qsets::QSet& y)
{
    if (x.size() != y.size())
        return false;
    std::vector<std::size_t> p(x.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (std::size_t a = 0; a < x.size() && ok; ++a)
            for (std::size_t b = 0; b < x.size() && ok; ++b)
                ok = x.delta(a, b) == y.delta(p[a], p[b]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

} // namespace fx
