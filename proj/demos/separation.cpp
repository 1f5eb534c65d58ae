// Builds B4 and the three-point Q-set S = {⊥, a, ⊤} in code, then compares
// its two completions.
#include "qsets/qsets.hpp"

#include <iostream>

using namespace qsets;

int main()
{
    // ⊥ < a, ¬a < ⊤ with ⊗ = ∧
    std::vector<std::pair<Elem, Elem>> le{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    std::vector<Elem> meet{0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3};
    const auto q = Quantale::from_pairs({"⊥", "a", "¬a", "⊤"}, le, meet);

    // δ(x, y) = x ∧ y on the chain ⊥ < a < ⊤
    const Elem pts[] = {0, 1, 3};
    std::vector<Elem> delta;
    for (Elem x : pts)
        for (Elem y : pts)
            delta.push_back(q.meet(x, y));
    const auto s = QSet::build(q, {"⊥", "a", "⊤"}, delta);

    const auto g = is_gluing_complete(s);
    const auto sc = is_scott_complete(s);
    std::cout << "gluing complete: " << std::boolalpha << g.complete << "\n";
    std::cout << "scott complete:  " << sc.scott_complete << "\n";
    if (sc.witness)
        std::cout << "unrepresented:   " << singleton_name(q, sc.singletons[*sc.witness]) << "\n";

    const auto c = scott_completion(s);
    std::cout << "|S(S)| = " << c.qset().size() << ", complete: " << c.complete << "\n";
    for (Point p = 0; p < s.size(); ++p)
        std::cout << "  " << s.name(p) << " -> " << c.qset().name(c.unit(p)) << "\n";
}
