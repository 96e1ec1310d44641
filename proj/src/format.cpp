#include "tileterm/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace tileterm {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t col)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + msg),
      line_(line),
      col_(col) {}

namespace {

enum class Tok { Ident, Colon, LBrace, RBrace, Dash, RArrow, LArrow, Header, Quote, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') ++line, col = 1;
            else ++col;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            std::size_t l0 = line, c0 = col;
            advance(2);
            while (i < src.size() && !(src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/'))
                advance();
            if (i >= src.size()) throw ParseError("unterminated comment", l0, c0);
            advance(2);
            continue;
        }
        Token t{Tok::End, "", line, col};
        if (ident_char(c)) {
            std::size_t s = i;
            while (i < src.size() && ident_char(src[i])) advance();
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(s, i - s));
        } else if (c == ':') {
            t.kind = Tok::Colon, advance();
        } else if (c == '{') {
            t.kind = Tok::LBrace, advance();
        } else if (c == '}') {
            t.kind = Tok::RBrace, advance();
        } else if (c == '\'') {
            t.kind = Tok::Quote, advance();
        } else if (c == '-') {
            if (i + 1 < src.size() && src[i + 1] == '>') t.kind = Tok::RArrow, advance(2);
            else t.kind = Tok::Dash, advance();
        } else if (c == '<' && i + 1 < src.size() && src[i + 1] == '-') {
            t.kind = Tok::LArrow, advance(2);
        } else if (c == '=') {
            std::size_t n = 0;
            while (i < src.size() && src[i] == '=') advance(), ++n;
            if (n < 3) throw ParseError("expected '==='", t.line, t.col);
            t.kind = Tok::Header;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const char* tok_name(Tok k) {
    switch (k) {
        case Tok::Ident: return "identifier";
        case Tok::Colon: return "':'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Dash: return "'-'";
        case Tok::RArrow: return "'->'";
        case Tok::LArrow: return "'<-'";
        case Tok::Header: return "'==='";
        case Tok::Quote: return "'''";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }

    const Token& expect(Tok k) {
        if (!at(k))
            throw ParseError(std::string("expected ") + tok_name(k) + ", found " +
                                 (at(Tok::Ident) ? "'" + peek().text + "'" : tok_name(peek().kind)),
                             peek().line, peek().col);
        return toks_[pos_++];
    }

    // item* up to (not including) '}' or end of input.
    LabeledGraph graph_items() {
        LabeledGraph g;
        while (at(Tok::Ident)) {
            auto v = vertex(g);
            while (at(Tok::Dash) || at(Tok::LArrow)) {
                struct Arrow {
                    Token id;
                    std::string label;
                    bool forward;
                };
                std::vector<Arrow> arrows;
                while (at(Tok::Dash) || at(Tok::LArrow)) {
                    bool forward = at(Tok::Dash);
                    ++pos_;
                    auto id = expect(Tok::Ident);
                    expect(Tok::Colon);
                    auto lab = expect(Tok::Ident).text;
                    expect(forward ? Tok::RArrow : Tok::Dash);
                    arrows.push_back({id, lab, forward});
                }
                auto w = vertex(g);
                for (const auto& a : arrows) {
                    if (g.find_edge(a.id.text))
                        throw ParseError("duplicate edge id '" + a.id.text + "'", a.id.line, a.id.col);
                    if (a.forward) g.add_edge(a.id.text, v, w, a.label);
                    else g.add_edge(a.id.text, w, v, a.label);
                }
                v = w;
            }
        }
        return g;
    }

    LabeledGraph graph_literal() {
        if (at(Tok::LBrace)) {
            ++pos_;
            auto g = graph_items();
            expect(Tok::RBrace);
            return g;
        }
        return graph_items();
    }

    std::size_t pos_ = 0;

private:
    std::size_t vertex(LabeledGraph& g) {
        auto id = expect(Tok::Ident);
        expect(Tok::Colon);
        auto lab = expect(Tok::Ident);
        if (auto existing = g.find_vertex(id.text)) {
            if (g.vertex(*existing).label != lab.text)
                throw ParseError("vertex '" + id.text + "' is used with labels '" +
                                     g.vertex(*existing).label + "' and '" + lab.text + "'",
                                 lab.line, lab.col);
            return *existing;
        }
        return g.add_vertex(id.text, lab.text);
    }

    std::vector<Token> toks_;
};

std::set<std::string> atoms(const std::string& id) {
    std::set<std::string> out;
    std::stringstream ss(id);
    std::string part;
    while (std::getline(ss, part, '.'))
        if (!part.empty()) out.insert(part);
    return out;
}

bool contains(const std::set<std::string>& big, const std::set<std::string>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

}  // namespace

LabeledGraph parse_graph(std::string_view text) {
    Parser p(text);
    auto g = p.graph_literal();
    p.expect(Tok::End);
    return g;
}

GraphMorphism infer_morphism(const GraphPtr& dom, const GraphPtr& cod, const std::string& what) {
    const auto& d = *dom;
    const auto& c = *cod;
    std::vector<std::size_t> vm(d.vertex_count()), em(d.edge_count());
    for (std::size_t i = 0; i < d.vertex_count(); ++i) {
        const auto& v = d.vertex(i);
        std::vector<std::size_t> cands;
        if (auto hit = c.find_vertex(v.id)) {
            cands.push_back(*hit);
        } else {
            auto a = atoms(v.id);
            for (std::size_t j = 0; j < c.vertex_count(); ++j)
                if (contains(atoms(c.vertex(j).id), a)) cands.push_back(j);
        }
        if (cands.empty()) throw MorphismError(what + ": vertex '" + v.id + "' has no image");
        if (cands.size() > 1) {
            std::vector<std::string> names;
            for (auto j : cands) names.push_back(c.vertex(j).id);
            throw MorphismError(what + ": vertex '" + v.id + "' has ambiguous image (" + join(names) + ")");
        }
        if (c.vertex(cands[0]).label != v.label)
            throw MorphismError(what + ": vertex '" + v.id + "' changes label");
        vm[i] = cands[0];
    }
    for (std::size_t i = 0; i < d.edge_count(); ++i) {
        const auto& e = d.edge(i);
        auto fits = [&](std::size_t j) {
            const auto& t = c.edge(j);
            return t.src == vm[e.src] && t.tgt == vm[e.tgt] && t.label == e.label;
        };
        std::vector<std::size_t> cands;
        if (auto hit = c.find_edge(e.id)) {
            if (!fits(*hit))
                throw MorphismError(what + ": edge '" + e.id +
                                    "' has a same-named image with other endpoints or label");
            cands.push_back(*hit);
        } else {
            auto a = atoms(e.id);
            for (std::size_t j = 0; j < c.edge_count(); ++j)
                if (contains(atoms(c.edge(j).id), a) && fits(j)) cands.push_back(j);
            if (cands.empty())
                for (std::size_t j = 0; j < c.edge_count(); ++j)
                    if (fits(j)) cands.push_back(j);
        }
        if (cands.empty()) throw MorphismError(what + ": edge '" + e.id + "' has no image");
        if (cands.size() > 1) {
            std::vector<std::string> names;
            for (auto j : cands) names.push_back(c.edge(j).id);
            throw MorphismError(what + ": edge '" + e.id + "' has ambiguous image (" + join(names) + ")");
        }
        em[i] = cands[0];
    }
    return GraphMorphism(dom, cod, std::move(vm), std::move(em));
}

std::vector<PbpoRule> parse_system(std::string_view text) {
    Parser p(text);
    std::vector<PbpoRule> rules;
    std::set<std::string> names;
    while (!p.at(Tok::End)) {
        auto head = p.expect(Tok::Header);
        auto name = p.expect(Tok::Ident);
        p.expect(Tok::Header);
        if (!names.insert(name.text).second)
            throw ParseError("duplicate rule name '" + name.text + "'", name.line, name.col);
        std::map<std::string, GraphPtr> objs;
        while (p.at(Tok::Ident)) {
            auto g = p.expect(Tok::Ident);
            std::string key = g.text;
            if (p.at(Tok::Quote)) {
                p.expect(Tok::Quote);
                key += "'";
            }
            if (key != "L" && key != "L'" && key != "K" && key != "K'" && key != "R")
                throw ParseError("unknown graph '" + key + "' (expected L, L', K, K' or R)", g.line, g.col);
            if (objs.count(key)) throw ParseError("graph " + key + " given twice", g.line, g.col);
            p.expect(Tok::LBrace);
            auto lit = p.graph_items();
            p.expect(Tok::RBrace);
            objs[key] = share(std::move(lit));
        }
        for (const char* k : {"L", "L'", "K", "K'", "R"})
            if (!objs.count(k))
                throw ParseError("rule '" + name.text + "' lacks graph " + k, head.line, head.col);
        try {
            auto L = objs["L"], Lp = objs["L'"], K = objs["K"], Kp = objs["K'"], R = objs["R"];
            PbpoRule rule{name.text,
                          L,
                          Lp,
                          K,
                          Kp,
                          R,
                          infer_morphism(K, L, "l: K -> L"),
                          infer_morphism(K, R, "r: K -> R"),
                          infer_morphism(L, Lp, "tL: L -> L'"),
                          infer_morphism(K, Kp, "tK: K -> K'"),
                          infer_morphism(Kp, Lp, "l': K' -> L'"),
                          std::nullopt};
            auto diag = validate_rule(rule);
            if (!diag.ok()) throw MorphismError(join(diag.errors));
            rules.push_back(complete_rule(std::move(rule)));
        } catch (const MorphismError& e) {
            throw ParseError("rule '" + name.text + "': " + e.what(), head.line, head.col);
        }
    }
    return rules;
}

Tile parse_tile(std::string_view text, std::string name) {
    return {std::move(name), share(parse_graph(text))};
}

namespace {

std::vector<std::string> items(const LabeledGraph& g) {
    std::vector<std::size_t> eord(g.edge_count());
    for (std::size_t i = 0; i < eord.size(); ++i) eord[i] = i;
    std::sort(eord.begin(), eord.end(),
              [&](auto a, auto b) { return g.edge(a).id < g.edge(b).id; });
    auto vtext = [&](std::size_t v) { return g.vertex(v).id + ":" + g.vertex(v).label; };
    std::vector<std::string> out;
    std::vector<char> touched(g.vertex_count(), 0);
    for (auto i : eord) {
        const auto& e = g.edge(i);
        touched[e.src] = touched[e.tgt] = 1;
        out.push_back(vtext(e.src) + " -" + e.id + ":" + e.label + "-> " + vtext(e.tgt));
    }
    std::vector<std::size_t> iso;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!touched[v]) iso.push_back(v);
    std::sort(iso.begin(), iso.end(), [&](auto a, auto b) { return g.vertex(a).id < g.vertex(b).id; });
    for (auto v : iso) out.push_back(vtext(v));
    return out;
}

}  // namespace

std::string serialize_graph(const LabeledGraph& g) {
    std::string s = "{";
    for (const auto& it : items(g)) s += " " + it;
    return s + " }";
}

std::string serialize_tile(const LabeledGraph& g) {
    std::string s;
    for (const auto& it : items(g)) s += it + "\n";
    return s;
}

std::string serialize_system(const std::vector<PbpoRule>& rules) {
    std::string s;
    for (const auto& r : rules) {
        if (!s.empty()) s += "\n";
        s += "=== " + r.name + " ===\n";
        s += "L  " + serialize_graph(*r.L) + "\n";
        s += "L' " + serialize_graph(*r.Lp) + "\n";
        s += "K  " + serialize_graph(*r.K) + "\n";
        s += "K' " + serialize_graph(*r.Kp) + "\n";
        s += "R  " + serialize_graph(*r.R) + "\n";
    }
    return s;
}

}  // namespace tileterm
