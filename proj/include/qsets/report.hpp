#pragma once

/*! \file
 * \brief Reports: an ordered JSON document plus verdict tallies, rendered
 * either as JSON or as flat `key: value` lines with the same field names.
 */

#include "checks.hpp"
#include "io.hpp"
#include "qset.hpp"
#include "quantale.hpp"

#include <string>

namespace qsets {

struct Report {
    io::Json doc = io::Json::object();
    std::size_t violations = 0; ///< failed checks of proven statements
    std::size_t findings = 0;   ///< failed checks of unproven statements

    /// Records a theorem check; `finding` marks statements the tool treats as conjectures.
    void verdict(const std::string& key, bool ok, bool finding = false)
    {
        doc[key] = ok;
        if (!ok)
            ++(finding ? findings : violations);
    }

    void add_checks(const std::string& key, const CheckList& list, bool finding = false)
    {
        io::Json arr = io::Json::array();
        for (const auto& c : list.items) {
            io::Json e;
            e["check"] = c.name;
            e["ok"] = c.ok;
            if (!c.detail.empty())
                e["detail"] = c.detail;
            arr.push_back(std::move(e));
            if (!c.ok)
                ++(finding ? findings : violations);
        }
        doc[key] = std::move(arr);
    }

    void merge(const Report& other)
    {
        violations += other.violations;
        findings += other.findings;
    }

    int exit_code(bool strict) const { return (violations > 0 || (strict && findings > 0)) ? 1 : 0; }
};

namespace detail {

inline std::string scalar_text(const io::Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

inline bool is_flat_array(const io::Json& j)
{
    for (const auto& e : j)
        if (e.is_structured() && !(e.is_array() && is_flat_array(e)))
            return false;
    return true;
}

inline std::string flat_array_text(const io::Json& j)
{
    std::string s = "[";
    bool first = true;
    for (const auto& e : j) {
        s += first ? "" : ", ";
        s += e.is_array() ? flat_array_text(e) : scalar_text(e);
        first = false;
    }
    return s + "]";
}

inline void render_lines(const io::Json& j, const std::string& prefix, std::string& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            render_lines(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (j.is_array() && !is_flat_array(j)) {
        std::size_t i = 0;
        for (const auto& e : j)
            render_lines(e, prefix + "[" + std::to_string(i++) + "]", out);
        return;
    }
    out += prefix + ": " + (j.is_array() ? flat_array_text(j) : scalar_text(j)) + "\n";
}

} // namespace detail

inline std::string render_text(const io::Json& doc)
{
    std::string out;
    detail::render_lines(doc, "", out);
    return out;
}

inline std::string render(const Report& r, bool json) { return json ? io::dump(r.doc) : render_text(r.doc); }

/// Compact description of a quantale for findings and headers.
inline io::Json describe_quantale(const Quantale& q)
{
    io::Json j = io::quantale_to_json(q);
    const auto p = q.props();
    io::Json props;
    props["commutative"] = p.commutative;
    props["semicartesian"] = p.semicartesian;
    props["integral"] = p.integral;
    props["unital"] = p.unital;
    props["idempotent"] = p.idempotent;
    props["strong"] = p.strong;
    props["divisible"] = p.divisible;
    props["locale"] = p.locale;
    j["props"] = std::move(props);
    return j;
}

inline io::Json describe_qset(const QSet& x)
{
    io::Json j;
    j["carrier"] = x.carrier();
    io::Json d = io::Json::array();
    for (Point a = 0; a < x.size(); ++a) {
        io::Json row = io::Json::array();
        for (Point b = 0; b < x.size(); ++b)
            row.push_back(x.quantale().name(x.delta(a, b)));
        d.push_back(std::move(row));
    }
    j["delta"] = std::move(d);
    return j;
}

} // namespace qsets
