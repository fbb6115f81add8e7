#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arbec/engine.hpp"
#include "arbec/errors.hpp"
#include "arbec/graph.hpp"

namespace arbec {

// trace file: one header line `n=<int> eps=<decimal> mode=<warmup|full>
// [alpha=<int>] [cert=<int>]`, then one event per line, `I u v` or `D u v`.
// `#` starts a comment, blank lines are skipped.

struct TraceEvent {
    bool is_insert = true;
    Vertex u = 0;
    Vertex v = 0;
    bool operator==(const TraceEvent&) const = default;
};

struct Trace {
    std::size_t n = 0;
    double epsilon = 0.5;
    Mode mode = Mode::full;
    std::optional<int> alpha; // promised density bound, needed for warmup replays
    std::optional<int> cert;  // generator's density certificate
    std::vector<TraceEvent> events;
    bool operator==(const Trace&) const = default;
};

// shortest round-tripping decimal form.
inline std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw internal_error("double formatting failed");
    return std::string(buf, p);
}

namespace detail {

inline std::string strip(const std::string& line) {
    std::string s = line;
    if (auto pos = s.find('#'); pos != std::string::npos) s.resize(pos);
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline long long parse_int(const std::string& tok, std::size_t lineno) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
    return v;
}

inline double parse_decimal(const std::string& tok, std::size_t lineno) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(lineno) + ": bad decimal '" + tok + "'");
    }
}

} // namespace detail

inline Trace parse_trace(std::istream& in) {
    Trace t;
    bool have_header = false, have_n = false, have_eps = false, have_mode = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        if (!have_header) {
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw parse_error("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "n") {
                    long long n = detail::parse_int(val, lineno);
                    if (n < 1) throw parse_error("line " + std::to_string(lineno) + ": n must be positive");
                    t.n = static_cast<std::size_t>(n);
                    have_n = true;
                } else if (key == "eps") {
                    t.epsilon = detail::parse_decimal(val, lineno);
                    if (t.epsilon <= 0.0 || t.epsilon >= 1.0)
                        throw parse_error("line " + std::to_string(lineno) + ": eps must be in (0,1)");
                    have_eps = true;
                } else if (key == "mode") {
                    if (val == "warmup")
                        t.mode = Mode::warmup;
                    else if (val == "full")
                        t.mode = Mode::full;
                    else
                        throw parse_error("line " + std::to_string(lineno) + ": unknown mode '" + val + "'");
                    have_mode = true;
                } else if (key == "alpha") {
                    t.alpha = static_cast<int>(detail::parse_int(val, lineno));
                } else if (key == "cert") {
                    t.cert = static_cast<int>(detail::parse_int(val, lineno));
                } else {
                    throw parse_error("line " + std::to_string(lineno) + ": unknown header key '" + key + "'");
                }
            }
            if (!have_n || !have_eps || !have_mode)
                throw parse_error("line " + std::to_string(lineno) + ": header needs n, eps and mode");
            have_header = true;
            continue;
        }
        std::string op;
        long long u = -1, v = -1;
        if (!(ss >> op >> u >> v) || (op != "I" && op != "D"))
            throw parse_error("line " + std::to_string(lineno) + ": expected 'I u v' or 'D u v'");
        std::string rest;
        if (ss >> rest)
            throw parse_error("line " + std::to_string(lineno) + ": trailing tokens");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= t.n || static_cast<std::size_t>(v) >= t.n)
            throw parse_error("line " + std::to_string(lineno) + ": vertex out of range");
        if (u == v) throw parse_error("line " + std::to_string(lineno) + ": self-loop");
        t.events.push_back({op == "I", static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (!have_header) throw parse_error("missing trace header");
    return t;
}

inline void write_trace(std::ostream& os, const Trace& t) {
    os << "n=" << t.n << " eps=" << format_double(t.epsilon) << " mode="
       << (t.mode == Mode::warmup ? "warmup" : "full");
    if (t.alpha) os << " alpha=" << *t.alpha;
    if (t.cert) os << " cert=" << *t.cert;
    os << "\n";
    for (const TraceEvent& ev : t.events)
        os << (ev.is_insert ? "I " : "D ") << ev.u << " " << ev.v << "\n";
}

// every insert lands on an absent pair and every delete on a live one.
inline void validate_trace(const Trace& t) {
    std::set<EdgeKey> live;
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const TraceEvent& ev = t.events[i];
        EdgeKey e(ev.u, ev.v);
        if (ev.is_insert) {
            if (!live.insert(e).second)
                throw parse_error("event " + std::to_string(i + 1) + ": insert of live edge " + e.str());
        } else if (live.erase(e) == 0) {
            throw parse_error("event " + std::to_string(i + 1) + ": delete of absent edge " + e.str());
        }
    }
}

inline Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return parse_trace(in);
}

inline void save_trace(const std::string& path, const Trace& t) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_trace(out, t);
}

// graph file: `n=<int>` then `u v` per edge. coloring file: `u v c` per edge.

inline DynGraph parse_graph_file(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    std::optional<DynGraph> g;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (!g) {
            if (line.rfind("n=", 0) != 0)
                throw parse_error("line " + std::to_string(lineno) + ": expected n=<int>");
            long long n = detail::parse_int(line.substr(2), lineno);
            if (n < 1) throw parse_error("line " + std::to_string(lineno) + ": n must be positive");
            g.emplace(static_cast<std::size_t>(n));
            continue;
        }
        std::istringstream ss(line);
        long long u = -1, v = -1;
        if (!(ss >> u >> v)) throw parse_error("line " + std::to_string(lineno) + ": expected 'u v'");
        try {
            g->insert_edge(EdgeKey(static_cast<Vertex>(u), static_cast<Vertex>(v)));
        } catch (const std::exception& ex) {
            throw parse_error("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    if (!g) throw parse_error("missing graph header");
    return *g;
}

inline void write_graph_file(std::ostream& os, const DynGraph& g) {
    os << "n=" << g.vertex_count() << "\n";
    for (const EdgeKey& e : g.edges()) os << e.a << " " << e.b << "\n";
}

inline std::map<EdgeKey, int> parse_coloring_file(std::istream& in) {
    std::map<EdgeKey, int> chi;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        long long u = -1, v = -1, c = 0;
        if (!(ss >> u >> v >> c) || c < 1)
            throw parse_error("line " + std::to_string(lineno) + ": expected 'u v color'");
        try {
            EdgeKey e(static_cast<Vertex>(u), static_cast<Vertex>(v));
            if (!chi.emplace(e, static_cast<int>(c)).second)
                throw parse_error("line " + std::to_string(lineno) + ": duplicate edge " + e.str());
        } catch (const std::invalid_argument& ex) {
            throw parse_error("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return chi;
}

inline void write_coloring_file(std::ostream& os, const std::map<EdgeKey, int>& chi) {
    for (const auto& [e, c] : chi) os << e.a << " " << e.b << " " << c << "\n";
}

} // namespace arbec
