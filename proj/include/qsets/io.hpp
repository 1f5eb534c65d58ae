#pragma once

/*! \file
 * \brief JSON files for quantales, Q-sets and morphisms.
 *
 * Quantale:
 * \code{.json}
 * { "elements": ["⊥","a","¬a","⊤"],
 *   "le": [["⊥","a"], ["⊥","¬a"], ["a","⊤"], ["¬a","⊤"]],
 *   "tensor": [["a","a","a"], ["a","¬a","⊥"], ...] }
 * \endcode
 * `le` is either a list of pairs generating the order reflexively and
 * transitively, or a full 0/1 matrix in element order. `tensor` lists
 * triples `[x, y, x⊗y]`; each unordered pair must appear, the mirrored
 * entry is implied, and a mirrored entry that disagrees is rejected.
 *
 * Q-set:
 * \code{.json}
 * { "quantale": "b4.quantale" | { ...inline... },
 *   "carrier": ["x", "y"],
 *   "delta": [["x","x","⊤"], ["x","y","a"], ["y","y","⊤"]] }
 * \endcode
 * Every unordered pair of points needs a cell. A relative quantale path is
 * resolved against the Q-set file's directory. The field may be omitted
 * when the caller supplies the quantale.
 *
 * Morphism:
 * \code{.json}
 * { "kind": "functional" | "relational" | "e",
 *   "dom": <Q-set path or inline>, "cod": <Q-set path or inline>,
 *   "map": [["x","y"], ...],           // functional and e
 *   "table": [["x","y","a"], ...],     // relational; missing cells are ⊥
 *   "error": "a" }                     // e only
 * \endcode
 */

#include "morphism.hpp"
#include "qset.hpp"
#include "quantale.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qsets::io {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

inline const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline std::string as_string(const Json& j, const char* what)
{
    if (!j.is_string())
        fail(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline std::vector<std::string> string_list(const Json& j, const char* what)
{
    if (!j.is_array())
        fail(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j)
        out.push_back(as_string(e, what));
    return out;
}

inline const Json& tuple(const Json& j, std::size_t n, const char* what)
{
    if (!j.is_array() || j.size() != n)
        fail(std::string(what) + " entries must have " + std::to_string(n) + " components");
    return j;
}

inline Elem elem(const Quantale& q, const Json& j)
{
    auto nm = as_string(j, "element");
    auto e = q.index_of(nm);
    if (!e)
        fail("unknown element \"" + nm + "\"");
    return *e;
}

inline Point point(const QSet& x, const Json& j)
{
    auto nm = as_string(j, "point");
    auto p = x.index_of(nm);
    if (!p)
        fail("unknown point \"" + nm + "\"");
    return *p;
}

inline std::optional<std::size_t> find(const std::vector<std::string>& names, const std::string& nm)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == nm)
            return i;
    return std::nullopt;
}

inline std::size_t name_index(const std::vector<std::string>& names, const Json& j, const char* what)
{
    auto nm = as_string(j, what);
    auto i = find(names, nm);
    if (!i)
        fail(std::string("unknown ") + what + " \"" + nm + "\"");
    return *i;
}

/// Fills a symmetric n×n table from triples; every unordered pair is required.
template <class Index, class Value>
std::vector<Elem> symmetric_table(const Json& triples, std::size_t n, Index idx, Value val, const char* what,
                                  Errc conflict)
{
    if (!triples.is_array())
        fail(std::string(what) + " must be an array of triples");
    constexpr Elem unset = 0xFF;
    std::vector<Elem> t(n * n, unset);
    for (const auto& e : triples) {
        tuple(e, 3, what);
        const std::size_t i = idx(e[0]), j = idx(e[1]);
        const Elem v = val(e[2]);
        for (auto [r, c] : {std::pair{i, j}, std::pair{j, i}}) {
            if (t[r * n + c] != unset && t[r * n + c] != v)
                throw Error(conflict, std::string(what) + " gives two values at (" + e[0].get<std::string>() + "," +
                                          e[1].get<std::string>() + ")");
            t[r * n + c] = v;
        }
    }
    for (std::size_t i = 0; i < n * n; ++i)
        if (t[i] == unset)
            throw Error(Errc::malformed_table, std::string(what) + " is not total");
    return t;
}

} // namespace detail

inline Json read_json(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        detail::fail("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        detail::fail(path.string() + ": " + e.what());
    }
}

namespace detail {

inline bool scalar_array(const Json& j)
{
    return std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

inline void dump_to(const Json& j, std::size_t indent, std::string& out)
{
    const std::string pad(indent + 2, ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [k, v] : j.items()) {
            out += pad + Json(k).dump() + ": ";
            dump_to(v, indent + 2, out);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += std::string(indent, ' ') + "}";
    } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
        // arrays of scalar tuples stay one tuple per line
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            dump_to(j[i], indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(indent, ' ') + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i)
            out += (i ? ", " : "") + j[i].dump();
        out += "]";
    } else {
        out += j.dump();
    }
}

} // namespace detail

/// Indented JSON with scalar arrays kept on one line.
inline std::string dump(const Json& j)
{
    std::string out;
    detail::dump_to(j, 0, out);
    return out + "\n";
}

inline void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::parse_error, "cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------------------
// Quantales

inline Quantale quantale_from_json(const Json& j)
{
    auto names = detail::string_list(detail::field(j, "elements"), "elements");
    const std::size_t n = names.size();
    if (n == 0)
        throw Error(Errc::malformed_table, "a quantale needs at least one element");
    if (n > max_quantale_size)
        throw Error(Errc::too_large, "too many elements");
    auto idx = [&](const Json& e) { return detail::name_index(names, e, "element"); };
    auto tensor = detail::symmetric_table(detail::field(j, "tensor"), n, idx, [&](const Json& e) { return Elem(idx(e)); },
                                          "tensor", Errc::not_commutative);
    const Json& le = detail::field(j, "le");
    if (!le.is_array())
        detail::fail("le must be an array");
    const bool matrix = le.size() == n && std::all_of(le.begin(), le.end(), [&](const Json& row) {
        return row.is_array() && row.size() == n && std::all_of(row.begin(), row.end(), [](const Json& c) {
                   return c.is_number_integer() || c.is_boolean();
               });
    });
    if (matrix) {
        std::vector<std::uint8_t> m(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Json& c = le[a][b];
                const int v = c.is_boolean() ? int(c.get<bool>()) : c.get<int>();
                if (v != 0 && v != 1)
                    detail::fail("le matrix entries must be 0 or 1");
                m[a * n + b] = std::uint8_t(v);
            }
        return Quantale::from_matrix(std::move(names), m, tensor);
    }
    std::vector<std::pair<Elem, Elem>> pairs;
    for (const auto& e : le) {
        detail::tuple(e, 2, "le");
        pairs.emplace_back(Elem(idx(e[0])), Elem(idx(e[1])));
    }
    return Quantale::from_pairs(std::move(names), pairs, tensor);
}

/// Emits the covering pairs of the order and the upper triangle of ⊗.
inline Json quantale_to_json(const Quantale& q)
{
    Json j;
    j["elements"] = q.names();
    Json le = Json::array();
    for (Elem a = 0; a < q.size(); ++a)
        for (Elem b = 0; b < q.size(); ++b) {
            if (a == b || !q.le(a, b))
                continue;
            bool cover = true;
            for (Elem c = 0; c < q.size() && cover; ++c)
                cover = c == a || c == b || !(q.le(a, c) && q.le(c, b));
            if (cover)
                le.push_back({q.name(a), q.name(b)});
        }
    j["le"] = std::move(le);
    Json t = Json::array();
    for (Elem a = 0; a < q.size(); ++a)
        for (Elem b = a; b < q.size(); ++b)
            t.push_back({q.name(a), q.name(b), q.name(q.tensor(a, b))});
    j["tensor"] = std::move(t);
    return j;
}

inline Quantale load_quantale(const fs::path& path) { return quantale_from_json(read_json(path)); }

// ---------------------------------------------------------------------------
// Q-sets

/// `supplied` wins when the document has no quantale; when both exist they
/// must be equal.
inline QSet qset_from_json(const Json& j, const std::optional<Quantale>& supplied, const fs::path& base_dir = {})
{
    std::optional<Quantale> q = supplied;
    if (j.is_object() && j.contains("quantale")) {
        const Json& qj = j.at("quantale");
        Quantale own = qj.is_string() ? load_quantale(base_dir / qj.get<std::string>()) : quantale_from_json(qj);
        if (supplied && !(own == *supplied))
            detail::fail("the Q-set's quantale differs from the one supplied");
        q = own;
    }
    if (!q)
        detail::fail("no quantale given for the Q-set");
    auto carrier = detail::string_list(detail::field(j, "carrier"), "carrier");
    const std::size_t n = carrier.size();
    auto idx = [&](const Json& e) { return detail::name_index(carrier, e, "point"); };
    auto delta = detail::symmetric_table(detail::field(j, "delta"), n, idx,
                                         [&](const Json& e) { return detail::elem(*q, e); }, "delta",
                                         Errc::not_symmetric);
    return QSet::build(*q, std::move(carrier), std::move(delta));
}

/// The quantale is always written inline.
inline Json qset_to_json(const QSet& x)
{
    Json j;
    j["quantale"] = quantale_to_json(x.quantale());
    j["carrier"] = x.carrier();
    Json d = Json::array();
    const auto& q = x.quantale();
    for (Point a = 0; a < x.size(); ++a)
        for (Point b = a; b < x.size(); ++b)
            d.push_back({x.name(a), x.name(b), q.name(x.delta(a, b))});
    j["delta"] = std::move(d);
    return j;
}

inline QSet load_qset(const fs::path& path, const std::optional<Quantale>& supplied = std::nullopt)
{
    return qset_from_json(read_json(path), supplied, path.parent_path());
}

// ---------------------------------------------------------------------------
// Morphisms

using AnyMorphism = std::variant<FunctionalMorphism, RelationalMorphism, EMorphism>;

inline AnyMorphism morphism_from_json(const Json& j, const std::optional<Quantale>& supplied = std::nullopt,
                                      const fs::path& base_dir = {})
{
    auto side = [&](const char* key) {
        const Json& s = detail::field(j, key);
        if (s.is_string()) {
            const fs::path p = base_dir / s.get<std::string>();
            return qset_from_json(read_json(p), supplied, p.parent_path());
        }
        return qset_from_json(s, supplied, base_dir);
    };
    const auto kind = detail::as_string(detail::field(j, "kind"), "kind");
    QSet dom = side("dom"), cod = side("cod");
    if (!(dom.quantale() == cod.quantale()))
        throw Error(Errc::domain_mismatch, "domain and codomain use different quantales");
    if (kind == "relational") {
        const auto& q = dom.quantale();
        std::vector<Elem> t(dom.size() * cod.size(), q.bottom());
        const Json& rows = detail::field(j, "table");
        if (!rows.is_array())
            detail::fail("table must be an array of triples");
        std::vector<bool> seen(t.size());
        for (const auto& e : rows) {
            detail::tuple(e, 3, "table");
            const std::size_t c = detail::point(dom, e[0]) * cod.size() + detail::point(cod, e[1]);
            if (seen[c])
                throw Error(Errc::malformed_table, "table lists a cell twice");
            seen[c] = true;
            t[c] = detail::elem(q, e[2]);
        }
        return RelationalMorphism::make(dom, cod, std::move(t));
    }
    if (kind != "functional" && kind != "e")
        detail::fail("kind must be functional, relational or e");
    std::vector<Point> m(dom.size(), Point(-1));
    const Json& pairs = detail::field(j, "map");
    if (!pairs.is_array())
        detail::fail("map must be an array of pairs");
    for (const auto& e : pairs) {
        detail::tuple(e, 2, "map");
        const Point a = detail::point(dom, e[0]);
        if (m[a] != Point(-1))
            throw Error(Errc::malformed_table, "map lists a point twice");
        m[a] = detail::point(cod, e[1]);
    }
    for (Point v : m)
        if (v == Point(-1))
            throw Error(Errc::malformed_table, "map is not total");
    if (kind == "functional")
        return FunctionalMorphism::make(dom, cod, std::move(m));
    return EMorphism::make(dom, cod, std::move(m), detail::elem(dom.quantale(), detail::field(j, "error")));
}

inline Json morphism_to_json(const AnyMorphism& any)
{
    Json j;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            j["kind"] = std::is_same_v<T, FunctionalMorphism> ? "functional"
                        : std::is_same_v<T, RelationalMorphism> ? "relational"
                                                                 : "e";
            j["dom"] = qset_to_json(f.dom());
            j["cod"] = qset_to_json(f.cod());
            if constexpr (std::is_same_v<T, RelationalMorphism>) {
                Json t = Json::array();
                for (Point a = 0; a < f.dom().size(); ++a)
                    for (Point b = 0; b < f.cod().size(); ++b)
                        t.push_back({f.dom().name(a), f.cod().name(b), f.dom().quantale().name(f(a, b))});
                j["table"] = std::move(t);
            } else {
                Json m = Json::array();
                for (Point a = 0; a < f.dom().size(); ++a)
                    m.push_back({f.dom().name(a), f.cod().name(f(a))});
                j["map"] = std::move(m);
                if constexpr (std::is_same_v<T, EMorphism>)
                    j["error"] = f.dom().quantale().name(f.error());
            }
        },
        any);
    return j;
}

inline AnyMorphism load_morphism(const fs::path& path, const std::optional<Quantale>& supplied = std::nullopt)
{
    return morphism_from_json(read_json(path), supplied, path.parent_path());
}

} // namespace qsets::io
