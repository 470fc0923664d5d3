#include "hc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hc/errors.hpp"
#include "json.hpp"

namespace hc::io {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

const json& need(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing '") + key + "' in " + where);
    return *it;
}

int need_int(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer())
        throw ParseError(std::string("'") + key + "' must be an integer in " + where);
    return v.get<int>();
}

Rational to_rational(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return make_rational(v.get<long long>());
    throw ParseError(std::string(what) + " must be a rational \"p/q\" string or an integer");
}

handle::ModelHandle parse_handle(const json& j, int doc_n, const std::string& id) {
    if (!j.is_object()) throw ParseError("handle '" + id + "' must be an object");
    handle::ModelHandle h;
    h.n = doc_n;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw ParseError("handle 'n' must be an integer");
        if (j["n"].get<int>() != doc_n)
            throw InvalidData("handle '" + id + "' declares n different from the document");
    }
    h.k = need_int(j, "k", ("handle '" + id + "'").c_str());
    h.b = to_rational(need(j, "b", "handle"), "b");
    h.b_prime = to_rational(need(j, "b_prime", "handle"), "b_prime");
    h.level = to_rational(need(j, "level", "handle"), "level");
    const json& cs = need(j, "c_sq", "handle");
    if (!cs.is_array()) throw ParseError("'c_sq' must be an array of rationals");
    for (const auto& e : cs) h.c_sq.push_back(to_rational(e, "c_sq entry"));
    handle::check_handle(h);  // InvalidData on semantic breakage
    return h;
}

} // namespace

InputDocument parse_document_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("document root must be an object");
    InputDocument doc;
    doc.version = need_int(j, "version", "document");
    if (doc.version != 1)
        throw ParseError("unsupported document version " + std::to_string(doc.version));
    doc.n = need_int(j, "n", "document");

    const json& m = need(j, "morse", "document");
    if (!m.is_object()) throw ParseError("'morse' must be an object");
    doc.morse.n = doc.n;
    const json& cps = need(m, "critical_points", "morse");
    if (!cps.is_array()) throw ParseError("'critical_points' must be an array");
    for (const auto& c : cps) {
        morse::CriticalPoint p;
        const json& idv = need(c, "id", "critical point");
        if (!idv.is_string()) throw ParseError("critical point 'id' must be a string");
        p.id = idv.get<std::string>();
        p.index = need_int(c, "index", "critical point");
        if (c.contains("h")) p.h_value = to_rational(c["h"], "h");
        doc.morse.points.push_back(std::move(p));
    }
    if (m.contains("boundary")) {
        if (!m["boundary"].is_array()) throw ParseError("'boundary' must be an array of triples");
        for (const auto& t : m["boundary"]) {
            const json& pv = need(t, "p", "boundary triple");
            const json& qv = need(t, "q", "boundary triple");
            if (!pv.is_string() || !qv.is_string())
                throw ParseError("boundary 'p' and 'q' must be critical point ids");
            const json& av = need(t, "a", "boundary triple");
            if (!av.is_number_integer()) throw ParseError("boundary 'a' must be an integer");
            auto key = std::make_pair(pv.get<std::string>(), qv.get<std::string>());
            if (!doc.morse.boundary.emplace(key, av.get<long long>()).second)
                throw InvalidData("duplicate boundary pair (" + key.first + ", " + key.second +
                                  ")");
        }
    }
    if (m.contains("allow_multiple_minima")) {
        if (!m["allow_multiple_minima"].is_boolean())
            throw ParseError("'allow_multiple_minima' must be a boolean");
        doc.morse.allow_multiple_minima = m["allow_multiple_minima"].get<bool>();
    }

    if (j.contains("handles")) {
        const json& hs = j["handles"];
        if (!hs.is_object()) throw ParseError("'handles' must map critical point ids to handles");
        for (auto it = hs.begin(); it != hs.end(); ++it) {
            const std::string id = it.key();
            auto cp = std::find_if(doc.morse.points.begin(), doc.morse.points.end(),
                                   [&](const morse::CriticalPoint& p) { return p.id == id; });
            if (cp == doc.morse.points.end())
                throw InvalidData("handle '" + id + "' references no critical point");
            handle::ModelHandle h = parse_handle(it.value(), doc.n, id);
            if (h.k != cp->index)
                throw InvalidData("handle '" + id + "' has k=" + std::to_string(h.k) +
                                  " but the critical point has index " +
                                  std::to_string(cp->index));
            doc.handles.emplace_back(id, std::move(h));
        }
        std::sort(doc.handles.begin(), doc.handles.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) throw ParseError("'options' must be an object");
        if (o.contains("window")) {
            const json& w = o["window"];
            if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
                !w[1].is_number_integer())
                throw ParseError("'window' must be [lo, hi] integers");
            contact::Window win{w[0].get<int>(), w[1].get<int>()};
            if (win.lo > win.hi) throw InvalidData("window lower bound exceeds upper bound");
            doc.options.window = win;
        }
        if (o.contains("m_o")) {
            if (!o["m_o"].is_number_integer()) throw ParseError("'m_o' must be an integer");
            const long long mo = o["m_o"].get<long long>();
            if (mo < 1) throw InvalidData("m_o must be at least 1");
            doc.options.m_o = mo;
        }
        if (o.contains("action_cutoff"))
            doc.options.action_cutoff = to_rational(o["action_cutoff"], "action_cutoff");
        if (o.contains("seed")) {
            if (!o["seed"].is_number_integer()) throw ParseError("'seed' must be an integer");
            doc.options.seed = o["seed"].get<std::uint64_t>();
        }
    }
    return doc;
}

InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open document '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document_text(ss.str());
}

const handle::ModelHandle* find_handle(const InputDocument& doc, const std::string& id) {
    for (const auto& [hid, h] : doc.handles)
        if (hid == id) return &h;
    return nullptr;
}

Format parse_format(const std::string& name) {
    if (name == "human") return Format::Human;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ParseError("unknown format '" + name + "' (use human, csv, or json)");
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

void render_table(const Table& t, Format f, std::ostream& out) {
    switch (f) {
        case Format::Human: {
            for (const auto& [k, v] : t.meta) out << k << ": " << v << "\n";
            std::vector<std::size_t> w(t.columns.size());
            for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = t.columns[c].size();
            for (const auto& row : t.rows)
                for (std::size_t c = 0; c < row.size() && c < w.size(); ++c)
                    w[c] = std::max(w[c], row[c].size());
            auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    out << cells[c];
                    if (c + 1 < cells.size())
                        out << std::string(w[c] - cells[c].size() + 2, ' ');
                }
                out << "\n";
            };
            line(t.columns);
            std::size_t total = 0;
            for (std::size_t c = 0; c < w.size(); ++c) total += w[c] + (c + 1 < w.size() ? 2 : 0);
            out << std::string(total, '-') << "\n";
            for (const auto& row : t.rows) line(row);
            break;
        }
        case Format::Csv: {
            for (const auto& [k, v] : t.meta) out << "# " << k << "=" << v << "\n";
            auto join = [&](const std::vector<std::string>& cells) {
                for (std::size_t c = 0; c < cells.size(); ++c)
                    out << cells[c] << (c + 1 < cells.size() ? "," : "");
                out << "\n";
            };
            join(t.columns);
            for (const auto& row : t.rows) join(row);
            break;
        }
        case Format::Json: {
            ordered j;
            j["version"] = 1;
            j["command"] = t.command;
            ordered meta = ordered::object();
            for (const auto& [k, v] : t.meta) meta[k] = v;
            j["meta"] = meta;
            j["columns"] = t.columns;
            ordered rows = ordered::array();
            for (const auto& row : t.rows) rows.push_back(row);
            j["rows"] = rows;
            out << j.dump(2) << "\n";
            break;
        }
    }
}

} // namespace hc::io
