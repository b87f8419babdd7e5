#include "flexautomata/sample_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <limits>
#include <system_error>

#include "flexautomata/error.hpp"

namespace flexautomata {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Non-blank lines with their 1-based numbers. CR before LF is stripped.
std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        ++number;
        auto tokens = split_ws(raw);
        if (!tokens.empty()) lines.push_back(Line{number, std::move(tokens)});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

template <typename Int>
std::optional<Int> to_int(std::string_view tok) {
    Int v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

std::optional<double> to_real(std::string_view tok) {
    if (tok.empty()) return std::nullopt;
    double v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

std::uint64_t need_uint(const Line& l, std::size_t idx, const char* what) {
    auto v = to_int<std::uint64_t>(l.tokens.at(idx));
    if (!v) throw ParseError(l.number, std::string("expected non-negative integer ") + what + ", got '" +
                                           std::string(l.tokens[idx]) + "'");
    return *v;
}

double need_real(const Line& l, std::size_t idx, const char* what) {
    auto v = to_real(l.tokens.at(idx));
    if (!v) throw ParseError(l.number, std::string("expected real ") + what + ", got '" +
                                           std::string(l.tokens[idx]) + "'");
    return *v;
}

SymbolInstance parse_symbol_token(std::string_view tok, bool augmented, std::size_t line) {
    SymbolInstance inst;
    std::string_view head = tok;
    if (augmented) {
        if (auto slash = tok.find('/'); slash != std::string_view::npos) {
            auto t = to_real(tok.substr(slash + 1));
            if (!t || !std::isfinite(*t)) {
                throw ParseError(line, "malformed target in '" + std::string(tok) + "'");
            }
            inst.target = *t;
            head = tok.substr(0, slash);
        }
        if (auto colon = head.find(':'); colon != std::string_view::npos) {
            std::string_view attrs = head.substr(colon + 1);
            head = head.substr(0, colon);
            std::size_t p = 0;
            while (true) {
                std::size_t comma = attrs.find(',', p);
                std::string_view part = attrs.substr(p, comma == std::string_view::npos ? attrs.npos : comma - p);
                auto v = to_real(part);
                if (!v || !std::isfinite(*v)) {
                    throw ParseError(line, "malformed attribute in '" + std::string(tok) + "'");
                }
                inst.attributes.push_back(*v);
                if (comma == std::string_view::npos) break;
                p = comma + 1;
            }
        }
    }
    auto sym = to_int<Symbol>(head);
    if (!sym) throw ParseError(line, "expected symbol index, got '" + std::string(tok) + "'");
    inst.symbol = *sym;
    return inst;
}

bool is_empty_data_line(const Line& l, bool augmented) {
    std::string_view lab = l.tokens[0];
    bool label_ok = lab == "0" || lab == "1" || (augmented && lab == "?");
    return label_ok && l.tokens[1] == "0";
}

Sample parse_impl(std::string_view text, bool augmented) {
    auto lines = split_lines(text);
    Sample sample;
    std::optional<std::uint64_t> declared_traces;
    std::optional<std::uint64_t> declared_alphabet;
    std::size_t header_line = 0;
    std::size_t first = 0;

    if (!lines.empty() && lines[0].tokens.size() == 2 && !is_empty_data_line(lines[0], augmented) &&
        to_int<std::uint64_t>(lines[0].tokens[0]) && to_int<std::uint64_t>(lines[0].tokens[1])) {
        declared_traces = need_uint(lines[0], 0, "trace count");
        declared_alphabet = need_uint(lines[0], 1, "alphabet size");
        header_line = lines[0].number;
        first = 1;
    }

    std::optional<std::size_t> arity;
    Symbol max_symbol = 0;
    bool any_symbol = false;

    for (std::size_t li = first; li < lines.size(); ++li) {
        const Line& l = lines[li];
        if (l.tokens.size() < 2) throw ParseError(l.number, "expected 'label length symbols...'");
        Trace trace;
        std::string_view lab = l.tokens[0];
        if (lab == "1") {
            trace.label = TraceLabel::Positive;
        } else if (lab == "0") {
            trace.label = TraceLabel::Negative;
        } else if (augmented && lab == "?") {
            trace.label = TraceLabel::Unlabeled;
        } else {
            throw ParseError(l.number, "invalid label '" + std::string(lab) + "'");
        }
        const std::uint64_t length = need_uint(l, 1, "length");
        const std::size_t found = l.tokens.size() - 2;
        if (length != found) {
            throw ParseError(l.number, "length mismatch: declared " + std::to_string(length) + ", found " +
                                           std::to_string(found) + " symbols");
        }
        trace.symbols.reserve(found);
        for (std::size_t k = 2; k < l.tokens.size(); ++k) {
            SymbolInstance inst = parse_symbol_token(l.tokens[k], augmented, l.number);
            if (declared_alphabet && inst.symbol >= *declared_alphabet) {
                throw ParseError(l.number, "symbol " + std::to_string(inst.symbol) + " outside declared alphabet of size " +
                                               std::to_string(*declared_alphabet));
            }
            if (!arity) {
                arity = inst.attributes.size();
            } else if (*arity != inst.attributes.size()) {
                throw ParseError(l.number, "attribute arity mismatch: expected " + std::to_string(*arity) + ", found " +
                                               std::to_string(inst.attributes.size()));
            }
            max_symbol = std::max(max_symbol, inst.symbol);
            any_symbol = true;
            trace.symbols.push_back(std::move(inst));
        }
        sample.traces.push_back(std::move(trace));
    }

    if (declared_traces && *declared_traces != sample.traces.size()) {
        throw ParseError(header_line, "header declares " + std::to_string(*declared_traces) + " traces, found " +
                                          std::to_string(sample.traces.size()));
    }
    std::size_t alpha = declared_alphabet ? static_cast<std::size_t>(*declared_alphabet)
                                          : (any_symbol ? static_cast<std::size_t>(max_symbol) + 1 : 0);
    sample.alphabet = numeric_alphabet(alpha);
    sample.attribute_arity = arity.value_or(0);
    return sample;
}

const char* label_token(TraceLabel l) {
    switch (l) {
    case TraceLabel::Positive: return "1";
    case TraceLabel::Negative: return "0";
    case TraceLabel::Unlabeled: return "?";
    }
    return "?";
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string short_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

Sample parse_abbadingo(std::string_view text) { return parse_impl(text, false); }

Sample parse_augmented(std::string_view text) { return parse_impl(text, true); }

std::string write_abbadingo(const Sample& s) {
    std::ostringstream os;
    os << s.traces.size() << ' ' << s.alphabet.size() << '\n';
    for (const auto& t : s.traces) {
        if (t.label == TraceLabel::Unlabeled) throw InputError("the classic format cannot encode unlabeled traces");
        os << label_token(t.label) << ' ' << t.size();
        for (const auto& inst : t.symbols) os << ' ' << inst.symbol;
        os << '\n';
    }
    return os.str();
}

std::string write_augmented(const Sample& s) {
    std::ostringstream os;
    os << s.traces.size() << ' ' << s.alphabet.size() << '\n';
    for (const auto& t : s.traces) {
        os << label_token(t.label) << ' ' << t.size();
        for (const auto& inst : t.symbols) {
            os << ' ' << inst.symbol;
            for (std::size_t i = 0; i < inst.attributes.size(); ++i) {
                os << (i == 0 ? ':' : ',') << format_real(inst.attributes[i]);
            }
            if (inst.target) os << '/' << format_real(*inst.target);
        }
        os << '\n';
    }
    return os.str();
}

std::string write_dot(const Automaton& a, const DotOptions& options) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(options.graph_name) << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle, fontsize=10];\n";
    for (StateId id : a.state_ids()) {
        const State& st = a.state(id);
        const StateAggregate& g = st.stats;
        std::string label = std::to_string(id);
        if (options.show_targets) {
            if (auto m = g.target_mean()) label += "\\n" + short_real(*m);
        }
        if (options.show_counts) {
            label += "\\n[" + std::to_string(g.total_count) + "]";
            if (g.end_pos_count + g.end_neg_count > 0) {
                label += " [" + std::to_string(g.end_pos_count) + ":" + std::to_string(g.end_neg_count) + "]";
            }
        }
        os << "  s" << id << " [label=\"" << label << "\"";
        if (st.accepting) os << ", shape=doublecircle";
        if (st.rejecting) os << ", shape=box, style=filled, fillcolor=lightgray";
        if (a.has_start() && a.start() == id) os << ", penwidth=2";
        os << "];\n";
    }
    for (StateId id : a.state_ids()) {
        const StateAggregate& g = a.state(id).stats;
        for (const auto& [sym, dst] : a.transitions(id)) {
            std::string name = sym < a.alphabet_size() ? a.alphabet()[sym] : std::to_string(sym);
            std::string label = dot_escape(name);
            if (options.show_counts) label += " [" + std::to_string(g.out_count(sym)) + "]";
            os << "  s" << id << " -> s" << dst << " [label=\"" << label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

// Model text layout:
//   flexautomata-model 1
//   alphabet <n> <name0> ... <name(n-1)>
//   state <id> <label> <count> <target_sum> <target_sumsq> <target_count> <end_pos> <end_neg> <end_unl> <arity> <attr sums...>
//   trans <src> <sym> <dst> <count>
//   start <id>
// label is one of + - ? (and +- for a state flagged both ways, which fails integrity).
std::string save_model(const Automaton& a) {
    std::ostringstream os;
    os << "flexautomata-model 1\n";
    os << "alphabet " << a.alphabet_size();
    for (const auto& name : a.alphabet()) {
        if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos) {
            throw InputError("alphabet name '" + name + "' cannot be saved (empty or contains whitespace)");
        }
        os << ' ' << name;
    }
    os << '\n';
    for (StateId id : a.state_ids()) {
        const State& st = a.state(id);
        const StateAggregate& g = st.stats;
        std::string label = st.accepting && st.rejecting ? "+-" : st.accepting ? "+" : st.rejecting ? "-" : "?";
        os << "state " << id << ' ' << label << ' ' << g.total_count << ' ' << format_real(g.target_sum) << ' '
           << format_real(g.target_sumsq) << ' ' << g.target_count << ' ' << g.end_pos_count << ' '
           << g.end_neg_count << ' ' << g.end_unlabeled_count << ' ' << g.attribute_sums.size();
        for (double x : g.attribute_sums) os << ' ' << format_real(x);
        os << '\n';
    }
    for (StateId id : a.state_ids()) {
        const StateAggregate& g = a.state(id).stats;
        for (const auto& [sym, dst] : a.transitions(id)) {
            os << "trans " << id << ' ' << sym << ' ' << dst << ' ' << g.out_count(sym) << '\n';
        }
    }
    if (a.has_start()) os << "start " << a.start() << '\n';
    return os.str();
}

Automaton load_model(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "empty model text");
    const Line& hdr = lines[0];
    if (hdr.tokens.size() != 2 || hdr.tokens[0] != "flexautomata-model") {
        throw ParseError(hdr.number, "missing 'flexautomata-model' header");
    }
    if (hdr.tokens[1] != "1") {
        throw ParseError(hdr.number, "unsupported model version '" + std::string(hdr.tokens[1]) + "'");
    }
    if (lines.size() < 2 || lines[1].tokens[0] != "alphabet") {
        throw ParseError(lines.size() < 2 ? hdr.number + 1 : lines[1].number, "expected alphabet line");
    }
    const Line& al = lines[1];
    if (al.tokens.size() < 2) throw ParseError(al.number, "alphabet line lacks a size");
    const std::uint64_t n = need_uint(al, 1, "alphabet size");
    if (al.tokens.size() != n + 2) throw ParseError(al.number, "alphabet size does not match the number of names");
    std::vector<std::string> names;
    for (std::size_t i = 2; i < al.tokens.size(); ++i) names.emplace_back(al.tokens[i]);
    Automaton a(std::move(names));

    bool have_start = false;
    for (std::size_t li = 2; li < lines.size(); ++li) {
        const Line& l = lines[li];
        std::string_view kind = l.tokens[0];
        if (kind == "state") {
            if (l.tokens.size() < 11) throw ParseError(l.number, "state line too short");
            const auto id = need_uint(l, 1, "state id");
            State st;
            std::string_view lab = l.tokens[2];
            if (lab == "+") {
                st.accepting = true;
            } else if (lab == "-") {
                st.rejecting = true;
            } else if (lab == "+-") {
                st.accepting = st.rejecting = true;
            } else if (lab != "?") {
                throw ParseError(l.number, "invalid state label '" + std::string(lab) + "'");
            }
            StateAggregate& g = st.stats;
            g.total_count = need_uint(l, 3, "count");
            g.target_sum = need_real(l, 4, "target sum");
            g.target_sumsq = need_real(l, 5, "target sum of squares");
            g.target_count = need_uint(l, 6, "target count");
            g.end_pos_count = need_uint(l, 7, "positive end count");
            g.end_neg_count = need_uint(l, 8, "negative end count");
            g.end_unlabeled_count = need_uint(l, 9, "unlabeled end count");
            const auto arity = need_uint(l, 10, "arity");
            if (l.tokens.size() != 11 + arity) throw ParseError(l.number, "attribute sums do not match arity");
            for (std::size_t k = 0; k < arity; ++k) g.attribute_sums.push_back(need_real(l, 11 + k, "attribute sum"));
            if (id > std::numeric_limits<StateId>::max()) throw ParseError(l.number, "state id out of range");
            if (a.contains(static_cast<StateId>(id))) {
                throw ParseError(l.number, "duplicate state " + std::to_string(id));
            }
            a.add_state(static_cast<StateId>(id), std::move(st));
        } else if (kind == "trans") {
            if (l.tokens.size() != 5) throw ParseError(l.number, "expected 'trans src sym dst count'");
            const auto src = static_cast<StateId>(need_uint(l, 1, "source"));
            const auto sym = static_cast<Symbol>(need_uint(l, 2, "symbol"));
            const auto dst = static_cast<StateId>(need_uint(l, 3, "target"));
            const auto count = need_uint(l, 4, "count");
            if (!a.contains(src) || !a.contains(dst)) {
                throw IntegrityError("line " + std::to_string(l.number) + ": transition refers to a missing state");
            }
            if (sym >= a.alphabet_size()) {
                throw IntegrityError("line " + std::to_string(l.number) + ": symbol outside alphabet");
            }
            if (a.next(src, sym)) {
                throw ParseError(l.number, "duplicate transition from " + std::to_string(src) + " on " +
                                               std::to_string(sym) + " (automaton must be deterministic)");
            }
            a.set_transition(src, sym, dst);
            if (count > 0) a.state(src).stats.out_counts[sym] = count;
        } else if (kind == "start") {
            if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'start id'");
            if (have_start) throw ParseError(l.number, "duplicate start line");
            const auto id = static_cast<StateId>(need_uint(l, 1, "start id"));
            if (!a.contains(id)) throw IntegrityError("line " + std::to_string(l.number) + ": start state missing");
            a.set_start(id);
            have_start = true;
        } else {
            throw ParseError(l.number, "unknown record '" + std::string(kind) + "'");
        }
    }
    auto violations = check_integrity(a);
    if (!violations.empty()) {
        std::string msg = "loaded model violates invariants:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw IntegrityError(msg);
    }
    return a;
}

} // namespace flexautomata
