#include "ccgram/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ccgram {

Grammar::Grammar(Alphabet alphabet, std::vector<Symbol> initials,
                 std::vector<Production> productions)
    : alphabet_(std::move(alphabet)),
      initials_(std::move(initials)),
      productions_(std::move(productions)) {
    // Drop duplicate productions, keeping first occurrences.
    {
        std::vector<Production> unique;
        for (auto& p : productions_) {
            if (std::find(unique.begin(), unique.end(), p) == unique.end())
                unique.push_back(std::move(p));
        }
        productions_ = std::move(unique);
    }

    for (const auto& p : productions_) {
        if (nonterminal_set_.insert(p.head).second)
            nonterminals_.push_back(p.head);
    }
    for (Symbol s : initials_) {
        if (nonterminal_set_.insert(s).second)
            nonterminals_.push_back(s);
    }

    {
        SymbolSet seen;
        for (Symbol s : initials_)
            if (!seen.insert(s).second)
                throw std::invalid_argument("duplicate initial nonterminal: " + s.name());
    }
    for (Symbol s : nonterminals_) {
        if (alphabet_.contains(s))
            throw std::invalid_argument("symbol is both terminal and nonterminal: " +
                                        s.name());
    }
    for (const auto& p : productions_) {
        for (Symbol s : p.body) {
            if (!alphabet_.contains(s) && !nonterminal_set_.count(s))
                throw std::invalid_argument("unknown symbol in production body: " +
                                            s.name());
        }
    }
}

void Grammar::validate_word(const Word& w) const {
    for (Symbol s : w) {
        if (is_nonterminal(s))
            throw std::invalid_argument("nonterminal in word: " + s.name());
        if (!alphabet_.contains(s))
            throw std::invalid_argument("symbol not in alphabet: " + s.name());
    }
}

void Grammar::validate_form(const Form& f) const {
    for (Symbol s : f) {
        if (!alphabet_.contains(s) && !is_nonterminal(s))
            throw std::invalid_argument("unknown symbol in form: " + s.name());
    }
}

bool operator==(const Grammar& a, const Grammar& b) {
    if (a.alphabet() != b.alphabet() || a.initials() != b.initials())
        return false;
    auto key = [](const Production& p) {
        std::vector<std::uint32_t> k{p.head.id()};
        for (Symbol s : p.body)
            k.push_back(s.id());
        return k;
    };
    std::vector<std::vector<std::uint32_t>> pa, pb;
    for (const auto& p : a.productions())
        pa.push_back(key(p));
    for (const auto& p : b.productions())
        pb.push_back(key(p));
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb)
        return false;
    std::set<std::uint32_t> va, vb;
    for (Symbol s : a.nonterminals())
        va.insert(s.id());
    for (Symbol s : b.nonterminals())
        vb.insert(s.id());
    return va == vb;
}

// ---------------------------------------------------------------------------
// Parsing

parse_error::parse_error(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;  // comment until end of line
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return tokens;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
    std::optional<std::vector<Symbol>> starts;
    std::optional<std::vector<Symbol>> order;
    std::size_t starts_line = 0;
    std::vector<Production> productions;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tokens = tokenize_line(raw);
        if (tokens.empty())
            continue;

        if (tokens[0].text == "start:" || tokens[0].text.rfind("start:", 0) == 0) {
            if (starts)
                throw parse_error(lineno, tokens[0].column, "duplicate start declaration");
            // Re-join and split on commas; symbols may sit flush against them.
            std::string rest;
            if (tokens[0].text.size() > 6)
                rest = tokens[0].text.substr(6);
            for (std::size_t i = 1; i < tokens.size(); ++i)
                rest += " " + tokens[i].text;
            std::vector<Symbol> list;
            std::string item;
            auto flush = [&](std::size_t col) {
                std::string trimmed;
                for (char c : item)
                    if (!std::isspace(static_cast<unsigned char>(c)))
                        trimmed += c;
                if (trimmed.empty())
                    throw parse_error(lineno, col, "empty entry in start list");
                list.push_back(Symbol(trimmed));
                item.clear();
            };
            for (char c : rest) {
                if (c == ',')
                    flush(tokens[0].column);
                else
                    item += c;
            }
            flush(tokens[0].column);
            starts = std::move(list);
            starts_line = lineno;
            continue;
        }

        if (tokens[0].text == "order:" || tokens[0].text.rfind("order:", 0) == 0) {
            if (order)
                throw parse_error(lineno, tokens[0].column, "duplicate order declaration");
            std::vector<Symbol> list;
            if (tokens[0].text.size() > 6)
                list.push_back(Symbol(tokens[0].text.substr(6)));
            for (std::size_t i = 1; i < tokens.size(); ++i)
                list.push_back(Symbol(tokens[i].text));
            if (list.empty())
                throw parse_error(lineno, tokens[0].column, "empty order declaration");
            order = std::move(list);
            continue;
        }

        // Production line: HEAD -> body | body | ...
        if (tokens.size() < 2 || tokens[1].text != "->")
            throw parse_error(lineno, tokens.size() > 1 ? tokens[1].column : tokens[0].column,
                              "expected '->' after production head");
        if (tokens[0].text == "eps" || tokens[0].text == "->" || tokens[0].text == "|")
            throw parse_error(lineno, tokens[0].column, "invalid production head");
        Symbol head{tokens[0].text};

        std::vector<std::vector<Token>> segments(1);
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            if (tokens[i].text == "|")
                segments.emplace_back();
            else
                segments.back().push_back(tokens[i]);
        }
        for (const auto& seg : segments) {
            if (seg.empty())
                throw parse_error(lineno, tokens[0].column, "empty production body");
            Form body;
            bool is_eps = seg.size() == 1 && seg[0].text == "eps";
            if (!is_eps) {
                for (const auto& t : seg) {
                    if (t.text == "eps")
                        throw parse_error(lineno, t.column,
                                          "\"eps\" must stand alone in a body");
                    if (t.text == "->")
                        throw parse_error(lineno, t.column, "unexpected '->' in body");
                    body.push_back(Symbol(t.text));
                }
            }
            productions.push_back({head, std::move(body)});
        }
    }

    if (!starts)
        throw parse_error(lineno + 1, 1, "missing start declaration");

    SymbolSet heads;
    for (const auto& p : productions)
        heads.insert(p.head);
    SymbolSet nonterminals = heads;
    SymbolSet body_symbols;
    for (const auto& p : productions)
        for (Symbol s : p.body)
            body_symbols.insert(s);
    for (Symbol s : *starts) {
        if (!heads.count(s) && body_symbols.count(s))
            throw parse_error(starts_line, 1,
                              "undeclared start symbol (used as a terminal): " + s.name());
        nonterminals.insert(s);
    }

    // Terminals in first-occurrence order across production bodies.
    std::vector<Symbol> terminals;
    SymbolSet seen;
    for (const auto& p : productions) {
        for (Symbol s : p.body) {
            if (!nonterminals.count(s) && seen.insert(s).second)
                terminals.push_back(s);
        }
    }

    if (order) {
        SymbolSet declared;
        for (Symbol s : *order) {
            if (nonterminals.count(s))
                throw parse_error(1, 1, "order declares a nonterminal: " + s.name());
            if (!declared.insert(s).second)
                throw parse_error(1, 1, "duplicate symbol in order: " + s.name());
        }
        for (Symbol s : terminals)
            if (!declared.count(s))
                throw parse_error(1, 1, "order is missing terminal: " + s.name());
        terminals = *order;
    }

    return Grammar(Alphabet(std::move(terminals)), std::move(*starts),
                   std::move(productions));
}

std::string format_grammar(const Grammar& g) {
    std::string out;
    if (!g.alphabet().terminals().empty()) {
        out += "order:";
        for (Symbol s : g.alphabet().terminals())
            out += " " + s.name();
        out += "\n";
    }
    out += "start: ";
    for (std::size_t i = 0; i < g.initials().size(); ++i) {
        if (i > 0)
            out += ", ";
        out += g.initials()[i].name();
    }
    out += "\n";

    for (Symbol head : g.nonterminals()) {
        std::vector<const Production*> ps;
        for (const auto& p : g.productions())
            if (p.head == head)
                ps.push_back(&p);
        if (ps.empty())
            continue;
        out += head.name() + " ->";
        for (std::size_t i = 0; i < ps.size(); ++i) {
            out += i == 0 ? " " : " | ";
            out += format_word_spaced(ps[i]->body);
        }
        out += "\n";
    }
    return out;
}

Grammar with_alphabet(const Grammar& g, const Alphabet& alphabet) {
    for (Symbol s : g.alphabet().terminals())
        if (!alphabet.contains(s))
            throw std::invalid_argument("target alphabet is missing terminal: " + s.name());
    return Grammar(alphabet, g.initials(), g.productions());
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

std::unordered_map<Symbol, std::size_t, SymbolHash> index_of(const Grammar& g) {
    std::unordered_map<Symbol, std::size_t, SymbolHash> idx;
    for (std::size_t i = 0; i < g.nonterminals().size(); ++i)
        idx.emplace(g.nonterminals()[i], i);
    return idx;
}

}  // namespace

Analysis::Analysis(const Grammar& g) : grammar_(&g) {
    const auto n = g.nonterminals().size();
    auto idx = index_of(g);
    productive_.assign(n, false);
    nonempty_.assign(n, false);
    infinite_.assign(n, false);
    min_words_.assign(n, std::nullopt);

    // Productivity: least fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            std::size_t hi = idx.at(p.head);
            if (productive_[hi])
                continue;
            bool all = true;
            for (Symbol s : p.body)
                if (g.is_nonterminal(s) && !productive_[idx.at(s)]) {
                    all = false;
                    break;
                }
            if (all) {
                productive_[hi] = true;
                changed = true;
            }
        }
    }

    // Derives a non-empty word: least fixpoint over productive bodies.
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            std::size_t hi = idx.at(p.head);
            if (nonempty_[hi])
                continue;
            bool all_productive = true;
            bool some_nonempty = false;
            for (Symbol s : p.body) {
                if (g.is_nonterminal(s)) {
                    if (!productive_[idx.at(s)]) {
                        all_productive = false;
                        break;
                    }
                    if (nonempty_[idx.at(s)])
                        some_nonempty = true;
                } else {
                    some_nonempty = true;
                }
            }
            if (all_productive && some_nonempty) {
                nonempty_[hi] = true;
                changed = true;
            }
        }
    }

    // Minimal words: settle nonterminals in order of their lenlex-least
    // candidate (the combining function is monotone and inflationary, so
    // the least unsettled candidate is final).
    const Alphabet& sigma = g.alphabet();
    std::size_t settled_count = 0;
    while (settled_count < n) {
        std::optional<Word> best;
        std::size_t best_i = 0;
        for (const auto& p : g.productions()) {
            std::size_t hi = idx.at(p.head);
            if (min_words_[hi])
                continue;
            Word cand;
            bool ok = true;
            for (Symbol s : p.body) {
                if (g.is_nonterminal(s)) {
                    const auto& m = min_words_[idx.at(s)];
                    if (!m) {
                        ok = false;
                        break;
                    }
                    cand.insert(cand.end(), m->begin(), m->end());
                } else {
                    cand.push_back(s);
                }
            }
            if (!ok)
                continue;
            if (!best || lenlex_less(cand, *best, sigma)) {
                best = std::move(cand);
                best_i = hi;
            }
        }
        if (!best)
            break;
        min_words_[best_i] = std::move(*best);
        ++settled_count;
    }

    // Finiteness: a productive nonterminal is infinite iff it reaches a
    // strongly connected component that contains an expanding edge. An
    // edge A -> B exists for each occurrence of B in a body of A whose
    // sibling symbols are all productive; it is expanding when some
    // sibling derives a non-empty word.
    struct Edge {
        std::size_t to;
        bool expanding;
    };
    std::vector<std::vector<Edge>> edges(n);
    for (const auto& p : g.productions()) {
        std::size_t hi = idx.at(p.head);
        if (!productive_[hi])
            continue;
        for (std::size_t occ = 0; occ < p.body.size(); ++occ) {
            Symbol b = p.body[occ];
            if (!g.is_nonterminal(b))
                continue;
            std::size_t bi = idx.at(b);
            if (!productive_[bi])
                continue;
            bool siblings_productive = true;
            bool expanding = false;
            for (std::size_t j = 0; j < p.body.size(); ++j) {
                if (j == occ)
                    continue;
                Symbol s = p.body[j];
                if (g.is_nonterminal(s)) {
                    std::size_t si = idx.at(s);
                    if (!productive_[si]) {
                        siblings_productive = false;
                        break;
                    }
                    if (nonempty_[si])
                        expanding = true;
                } else {
                    expanding = true;
                }
            }
            if (siblings_productive)
                edges[hi].push_back({bi, expanding});
        }
    }

    // Tarjan SCC (iterative).
    std::vector<int> scc(n, -1), low(n, 0), disc(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int timer = 0, scc_count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] != -1)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> call;  // node, edge index
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [u, ei] = call.back();
            if (ei == 0) {
                disc[u] = low[u] = timer++;
                stack.push_back(u);
                on_stack[u] = true;
            }
            if (ei < edges[u].size()) {
                std::size_t v = edges[u][ei].to;
                ++ei;
                if (disc[v] == -1)
                    call.push_back({v, 0});
                else if (on_stack[v])
                    low[u] = std::min(low[u], disc[v]);
            } else {
                if (low[u] == disc[u]) {
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc[w] = scc_count;
                        if (w == u)
                            break;
                    }
                    ++scc_count;
                }
                std::size_t done = u;
                call.pop_back();
                if (!call.empty()) {
                    auto& [pu, pei] = call.back();
                    (void)pei;
                    low[pu] = std::min(low[pu], low[done]);
                }
            }
        }
    }

    std::vector<bool> pumping_node(n, false);
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& e : edges[u])
            if (e.expanding && scc[u] == scc[e.to])
                pumping_node[u] = true;

    // Infinite = reaches a pumping node (reverse reachability).
    std::vector<std::vector<std::size_t>> rev(n);
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& e : edges[u])
            rev[e.to].push_back(u);
    std::vector<std::size_t> work;
    for (std::size_t u = 0; u < n; ++u)
        if (pumping_node[u]) {
            infinite_[u] = true;
            work.push_back(u);
        }
    while (!work.empty()) {
        std::size_t v = work.back();
        work.pop_back();
        for (std::size_t u : rev[v])
            if (!infinite_[u]) {
                infinite_[u] = true;
                work.push_back(u);
            }
    }
}

std::size_t Analysis::index(Symbol nonterminal) const {
    const auto& nts = grammar_->nonterminals();
    for (std::size_t i = 0; i < nts.size(); ++i)
        if (nts[i] == nonterminal)
            return i;
    throw std::invalid_argument("not a nonterminal: " + nonterminal.name());
}

bool Analysis::productive(Symbol nonterminal) const {
    return productive_[index(nonterminal)];
}

std::vector<Symbol> Analysis::productive_set() const {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < grammar_->nonterminals().size(); ++i)
        if (productive_[i])
            out.push_back(grammar_->nonterminals()[i]);
    return out;
}

bool Analysis::derives_nonempty(Symbol nonterminal) const {
    return nonempty_[index(nonterminal)];
}

const std::optional<Word>& Analysis::min_word(Symbol nonterminal) const {
    return min_words_[index(nonterminal)];
}

std::optional<Word> Analysis::min_word(const Form& form) const {
    grammar_->validate_form(form);
    Word out;
    for (Symbol s : form) {
        if (grammar_->is_nonterminal(s)) {
            const auto& m = min_words_[index(s)];
            if (!m)
                return std::nullopt;
            out.insert(out.end(), m->begin(), m->end());
        } else {
            out.push_back(s);
        }
    }
    return out;
}

bool Analysis::finite_language(Symbol nonterminal) const {
    return !infinite_[index(nonterminal)];
}

std::vector<Symbol> productive_set(const Grammar& g) {
    return Analysis(g).productive_set();
}

std::optional<Word> min_word(const Grammar& g, const Form& form) {
    return Analysis(g).min_word(form);
}

bool is_finite_language(const Grammar& g, Symbol nonterminal) {
    return Analysis(g).finite_language(nonterminal);
}

Grammar prune_empty(const Grammar& g) {
    Analysis a(g);
    std::vector<Production> kept;
    for (const auto& p : g.productions()) {
        if (!a.productive(p.head))
            continue;
        bool ok = true;
        for (Symbol s : p.body)
            if (g.is_nonterminal(s) && !a.productive(s)) {
                ok = false;
                break;
            }
        if (ok)
            kept.push_back(p);
    }
    std::vector<Symbol> initials;
    for (Symbol s : g.initials())
        if (a.productive(s))
            initials.push_back(s);
    return Grammar(g.alphabet(), std::move(initials), std::move(kept));
}

// ---------------------------------------------------------------------------
// Bounded languages

BoundedLanguage::BoundedLanguage(const Grammar& g, std::size_t max_len)
    : grammar_(&g), max_len_(max_len) {
    const auto n = g.nonterminals().size();
    auto idx = index_of(g);
    table_.assign(n, std::vector<WordSet>(max_len + 1));

    for (std::size_t len = 0; len <= max_len; ++len) {
        bool changed = true;
        while (changed) {
            changed = false;
            // Two-phase: generate against the current tables, then insert.
            std::vector<std::pair<std::size_t, Word>> found;
            for (const auto& p : g.productions()) {
                std::size_t hi = idx.at(p.head);
                // Recursive composition of the body at total length `len`.
                struct Gen {
                    const Grammar& g;
                    const std::vector<std::vector<WordSet>>& table;
                    const std::unordered_map<Symbol, std::size_t, SymbolHash>& idx;
                    std::size_t target;
                    std::vector<std::pair<std::size_t, Word>>* out;
                    std::size_t head_index;

                    void walk(const Form& body, std::size_t pos, Word& acc) {
                        std::size_t remaining = target - acc.size();
                        if (pos == body.size()) {
                            if (remaining == 0)
                                out->push_back({head_index, acc});
                            return;
                        }
                        Symbol s = body[pos];
                        if (!g.is_nonterminal(s)) {
                            if (remaining == 0)
                                return;
                            acc.push_back(s);
                            walk(body, pos + 1, acc);
                            acc.pop_back();
                            return;
                        }
                        const auto& rows = table[idx.at(s)];
                        for (std::size_t m = 0; m <= remaining; ++m) {
                            for (const Word& w : rows[m]) {
                                std::size_t before = acc.size();
                                acc.insert(acc.end(), w.begin(), w.end());
                                walk(body, pos + 1, acc);
                                acc.resize(before);
                            }
                        }
                    }
                };
                Word acc;
                Gen{g, table_, idx, len, &found, hi}.walk(p.body, 0, acc);
            }
            for (auto& [hi, w] : found) {
                if (table_[hi][len].insert(std::move(w)).second)
                    changed = true;
            }
        }
    }
}

std::size_t BoundedLanguage::index(Symbol nonterminal) const {
    const auto& nts = grammar_->nonterminals();
    for (std::size_t i = 0; i < nts.size(); ++i)
        if (nts[i] == nonterminal)
            return i;
    throw std::invalid_argument("not a nonterminal: " + nonterminal.name());
}

const WordSet& BoundedLanguage::exactly(Symbol nonterminal, std::size_t len) const {
    if (len > max_len_)
        throw std::invalid_argument("length exceeds the enumeration bound");
    return table_[index(nonterminal)][len];
}

WordSet BoundedLanguage::words(Symbol nonterminal) const {
    return words(nonterminal, max_len_);
}

WordSet BoundedLanguage::words(Symbol nonterminal, std::size_t bound) const {
    WordSet out;
    const auto& rows = table_[index(nonterminal)];
    for (std::size_t len = 0; len <= bound && len < rows.size(); ++len)
        out.insert(rows[len].begin(), rows[len].end());
    return out;
}

void BoundedLanguage::combine(const Form& form, std::size_t total, WordSet& out) const {
    struct Gen {
        const BoundedLanguage& bl;
        std::size_t target;
        WordSet* out;
        void walk(const Form& form, std::size_t pos, Word& acc) {
            std::size_t remaining = target - acc.size();
            if (pos == form.size()) {
                if (remaining == 0)
                    out->insert(acc);
                return;
            }
            Symbol s = form[pos];
            if (!bl.grammar_->is_nonterminal(s)) {
                if (remaining == 0)
                    return;
                acc.push_back(s);
                walk(form, pos + 1, acc);
                acc.pop_back();
                return;
            }
            const auto& rows = bl.table_[bl.index(s)];
            for (std::size_t m = 0; m <= remaining && m < rows.size(); ++m) {
                for (const Word& w : rows[m]) {
                    std::size_t before = acc.size();
                    acc.insert(acc.end(), w.begin(), w.end());
                    walk(form, pos + 1, acc);
                    acc.resize(before);
                }
            }
        }
    };
    Word acc;
    Gen{*this, total, &out}.walk(form, 0, acc);
}

WordSet BoundedLanguage::words(const Form& form, std::size_t bound) const {
    grammar_->validate_form(form);
    WordSet out;
    for (std::size_t len = 0; len <= bound && len <= max_len_; ++len)
        combine(form, len, out);
    return out;
}

WordSet BoundedLanguage::language(std::size_t bound) const {
    WordSet out;
    for (Symbol s : grammar_->initials()) {
        auto ws = words(s, bound);
        out.insert(ws.begin(), ws.end());
    }
    return out;
}

bool BoundedLanguage::contains(const Word& w) const {
    if (w.size() > max_len_)
        throw std::invalid_argument("word exceeds the enumeration bound");
    for (Symbol s : grammar_->initials())
        if (table_[index(s)][w.size()].count(w))
            return true;
    return false;
}

WordSet enumerate_words(const Grammar& g, const Form& form, std::size_t max_len) {
    return BoundedLanguage(g, max_len).words(form, max_len);
}

WordSet enumerate_language(const Grammar& g, std::size_t max_len) {
    return BoundedLanguage(g, max_len).language(max_len);
}

Form parse_form(std::string_view text, const Grammar& g) {
    // Same shape as parse_word, but symbols may also be nonterminals.
    std::vector<std::string> tokens;
    {
        std::string cur;
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty())
                    tokens.push_back(std::move(cur)), cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty())
            tokens.push_back(std::move(cur));
    }
    if (tokens.size() == 1 && tokens[0] == "eps")
        return {};
    auto known = [&](Symbol s) { return g.is_terminal(s) || g.is_nonterminal(s); };
    Form out;
    bool all_known = !tokens.empty();
    for (const auto& t : tokens) {
        Symbol s{t};
        if (!known(s))
            all_known = false;
        out.push_back(s);
    }
    if (all_known)
        return out;
    if (tokens.size() == 1) {
        out.clear();
        for (char c : tokens[0]) {
            Symbol s{std::string_view(&c, 1)};
            if (!known(s))
                throw std::invalid_argument("unknown symbol in form: " + std::string(1, c));
            out.push_back(s);
        }
        return out;
    }
    if (tokens.empty())
        throw std::invalid_argument("empty form (use \"eps\")");
    for (const auto& t : tokens)
        if (!known(Symbol(t)))
            throw std::invalid_argument("unknown symbol in form: " + t);
    return out;
}

}  // namespace ccgram
