#include "ccgram/dfa.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "ccgram/grammar.hpp"  // parse_error

namespace ccgram {

Dfa::Dfa(Alphabet alphabet, std::size_t state_count, std::size_t init,
         std::vector<std::size_t> accepting, std::vector<std::vector<std::size_t>> delta)
    : alphabet_(std::move(alphabet)), init_(init), delta_(std::move(delta)) {
    if (state_count == 0)
        throw std::invalid_argument("a DFA needs at least one state");
    if (delta_.size() != state_count)
        throw std::invalid_argument("transition table size mismatch");
    if (init_ >= state_count)
        throw std::invalid_argument("initial state out of range");
    accepting_.assign(state_count, false);
    for (std::size_t q : accepting) {
        if (q >= state_count)
            throw std::invalid_argument("accepting state out of range");
        accepting_[q] = true;
    }
    for (const auto& row : delta_) {
        if (row.size() != alphabet_.size())
            throw std::invalid_argument("transition table is not total");
        for (std::size_t q : row)
            if (q >= state_count)
                throw std::invalid_argument("transition target out of range");
    }
}

std::vector<std::size_t> Dfa::accepting_states() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < accepting_.size(); ++q)
        if (accepting_[q])
            out.push_back(q);
    return out;
}

std::size_t Dfa::run(const Word& w) const {
    std::size_t q = init_;
    for (Symbol a : w)
        q = step(q, a);
    return q;
}

Dfa Dfa::reindexed(const Alphabet& target) const {
    if (target.size() != alphabet_.size())
        throw std::invalid_argument("alphabet mismatch");
    for (Symbol s : alphabet_.terminals())
        if (!target.contains(s))
            throw std::invalid_argument("alphabet mismatch: " + s.name());
    std::vector<std::vector<std::size_t>> delta(state_count(),
                                                std::vector<std::size_t>(target.size()));
    for (std::size_t q = 0; q < state_count(); ++q)
        for (std::size_t r = 0; r < alphabet_.size(); ++r)
            delta[q][target.rank(alphabet_.terminals()[r])] = delta_[q][r];
    return Dfa(target, state_count(), init_, accepting_states(), std::move(delta));
}

bool dfa_member(const Dfa& d, const Word& w) {
    return d.is_accepting(d.run(w));
}

Dfa dfa_complement(const Dfa& d) {
    std::vector<std::size_t> accepting;
    std::vector<std::vector<std::size_t>> delta;
    for (std::size_t q = 0; q < d.state_count(); ++q) {
        if (!d.is_accepting(q))
            accepting.push_back(q);
        std::vector<std::size_t> row;
        for (std::size_t r = 0; r < d.alphabet().size(); ++r)
            row.push_back(d.step_rank(q, r));
        delta.push_back(std::move(row));
    }
    return Dfa(d.alphabet(), d.state_count(), d.init(), std::move(accepting),
               std::move(delta));
}

Dfa dfa_intersect(const Dfa& d1, const Dfa& d2raw) {
    Dfa d2 = d2raw.reindexed(d1.alphabet());
    const auto& sigma = d1.alphabet();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::size_t>> states;
    auto intern = [&](std::size_t a, std::size_t b) {
        auto [it, fresh] = ids.emplace(std::make_pair(a, b), states.size());
        if (fresh)
            states.push_back({a, b});
        return it->second;
    };
    std::size_t init = intern(d1.init(), d2.init());
    std::vector<std::vector<std::size_t>> delta;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [a, b] = states[i];
        std::vector<std::size_t> row;
        for (std::size_t r = 0; r < sigma.size(); ++r)
            row.push_back(intern(d1.step_rank(a, r), d2.step_rank(b, r)));
        delta.push_back(std::move(row));
    }
    std::vector<std::size_t> accepting;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (d1.is_accepting(states[i].first) && d2.is_accepting(states[i].second))
            accepting.push_back(i);
    return Dfa(sigma, states.size(), init, std::move(accepting), std::move(delta));
}

Dfa dfa_minimize(const Dfa& d) {
    const auto k = d.alphabet().size();

    // Reachable restriction.
    std::vector<std::size_t> order;
    std::vector<long> id(d.state_count(), -1);
    order.push_back(d.init());
    id[d.init()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t t = d.step_rank(order[i], r);
            if (id[t] < 0) {
                id[t] = static_cast<long>(order.size());
                order.push_back(t);
            }
        }

    // Moore partition refinement on reachable states.
    std::size_t n = order.size();
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i)
        block[i] = d.is_accepting(order[i]) ? 1 : 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> sig{block[i]};
            for (std::size_t r = 0; r < k; ++r)
                sig.push_back(block[id[d.step_rank(order[i], r)]]);
            auto [it, fresh] = sig_ids.emplace(std::move(sig), sig_ids.size());
            (void)fresh;
            next[i] = it->second;
        }
        if (next == block)
            break;
        block = std::move(next);
    }

    // Canonical renumbering: BFS over blocks from the initial block.
    std::size_t block_count = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<std::size_t> repr(block_count, n);
    for (std::size_t i = 0; i < n; ++i)
        if (repr[block[i]] == n)
            repr[block[i]] = i;
    std::vector<long> canon(block_count, -1);
    std::vector<std::size_t> bfs;
    canon[block[0]] = 0;
    bfs.push_back(block[0]);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        std::size_t b = bfs[i];
        std::size_t src = repr[b];
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t tb = block[id[d.step_rank(order[src], r)]];
            if (canon[tb] < 0) {
                canon[tb] = static_cast<long>(bfs.size());
                bfs.push_back(tb);
            }
        }
    }

    std::size_t m = bfs.size();
    std::vector<std::vector<std::size_t>> delta(m, std::vector<std::size_t>(k));
    std::vector<std::size_t> accepting;
    for (std::size_t b : bfs) {
        std::size_t q = static_cast<std::size_t>(canon[b]);
        std::size_t src = repr[b];
        for (std::size_t r = 0; r < k; ++r)
            delta[q][r] =
                static_cast<std::size_t>(canon[block[id[d.step_rank(order[src], r)]]]);
        if (d.is_accepting(order[src]))
            accepting.push_back(q);
    }
    return Dfa(d.alphabet(), m, 0, std::move(accepting), std::move(delta));
}

Dfa dfa_none(const Alphabet& a) {
    return Dfa(a, 1, 0, {}, {std::vector<std::size_t>(a.size(), 0)});
}

Dfa dfa_all(const Alphabet& a) {
    return Dfa(a, 1, 0, {0}, {std::vector<std::size_t>(a.size(), 0)});
}

Dfa substring_avoiding_dfa(const std::vector<Word>& patterns, const Alphabet& a) {
    for (const Word& p : patterns) {
        for (Symbol s : p)
            if (!a.contains(s))
                throw std::invalid_argument("pattern symbol not in alphabet: " + s.name());
        if (p.empty())
            return dfa_none(a);  // every word contains the empty factor
    }
    if (patterns.empty())
        return dfa_all(a);

    const std::size_t k = a.size();
    // Keyword tree.
    struct Node {
        std::vector<long> child;
        std::size_t fail = 0;
        bool match = false;
        explicit Node(std::size_t k) : child(k, -1) {}
    };
    std::vector<Node> trie{Node(k)};
    for (const Word& p : patterns) {
        std::size_t cur = 0;
        for (Symbol s : p) {
            std::size_t r = a.rank(s);
            if (trie[cur].child[r] < 0) {
                trie[cur].child[r] = static_cast<long>(trie.size());
                trie.emplace_back(k);
            }
            cur = static_cast<std::size_t>(trie[cur].child[r]);
        }
        trie[cur].match = true;
    }

    // Failure links, breadth-first; a node matches if any suffix does.
    std::deque<std::size_t> queue;
    for (std::size_t r = 0; r < k; ++r) {
        long c = trie[0].child[r];
        if (c >= 0) {
            trie[c].fail = 0;
            queue.push_back(static_cast<std::size_t>(c));
        }
    }
    auto goto_state = [&](std::size_t q, std::size_t r) {
        while (trie[q].child[r] < 0 && q != 0)
            q = trie[q].fail;
        long c = trie[q].child[r];
        return c < 0 ? 0 : static_cast<std::size_t>(c);
    };
    while (!queue.empty()) {
        std::size_t q = queue.front();
        queue.pop_front();
        for (std::size_t r = 0; r < k; ++r) {
            long c = trie[q].child[r];
            if (c < 0)
                continue;
            std::size_t f = goto_state(trie[q].fail, r);
            trie[c].fail = f;
            trie[c].match = trie[c].match || trie[f].match;
            queue.push_back(static_cast<std::size_t>(c));
        }
    }

    // Collapse matching nodes onto a dead state and complement: the
    // non-dead states accept.
    std::vector<long> state_of(trie.size(), -1);
    std::vector<std::size_t> live;
    for (std::size_t q = 0; q < trie.size(); ++q) {
        if (!trie[q].match) {
            state_of[q] = static_cast<long>(live.size());
            live.push_back(q);
        }
    }
    std::size_t dead = live.size();
    std::vector<std::vector<std::size_t>> delta(live.size() + 1,
                                                std::vector<std::size_t>(k, dead));
    std::vector<std::size_t> accepting;
    for (std::size_t i = 0; i < live.size(); ++i) {
        accepting.push_back(i);
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t t = goto_state(live[i], r);
            delta[i][r] = trie[t].match ? dead : static_cast<std::size_t>(state_of[t]);
        }
    }
    return Dfa(a, live.size() + 1, 0, std::move(accepting), std::move(delta));
}

// ---------------------------------------------------------------------------
// Transition monoid

namespace {

struct MapHash {
    std::size_t operator()(const std::vector<std::size_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::size_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

TransitionMonoid::TransitionMonoid(const Dfa& d) : dfa_(dfa_minimize(d)) {
    const std::size_t n = dfa_.state_count();
    const auto& sigma = dfa_.alphabet();

    std::unordered_map<std::vector<std::size_t>, std::size_t, MapHash> ids;
    std::vector<std::size_t> identity(n);
    for (std::size_t q = 0; q < n; ++q)
        identity[q] = q;
    elements_.push_back({identity, {}});
    ids.emplace(identity, 0);

    letter_elem_.assign(sigma.size(), 0);

    for (std::size_t i = 0; i < elements_.size(); ++i) {
        // Copy: elements_ may reallocate while we extend.
        MonoidElement e = elements_[i];
        for (std::size_t r = 0; r < sigma.size(); ++r) {
            std::vector<std::size_t> m(n);
            for (std::size_t q = 0; q < n; ++q)
                m[q] = dfa_.step_rank(e.map[q], r);
            auto it = ids.find(m);
            std::size_t mi;
            if (it == ids.end()) {
                mi = elements_.size();
                Word w = e.witness;
                w.push_back(sigma.terminals()[r]);
                elements_.push_back({m, std::move(w)});
                ids.emplace(std::move(m), mi);
            } else {
                mi = it->second;
            }
            if (i == 0)
                letter_elem_[r] = mi;
        }
    }

    table_.assign(elements_.size(), std::vector<std::size_t>(elements_.size()));
    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (std::size_t j = 0; j < elements_.size(); ++j) {
            std::vector<std::size_t> m(n);
            for (std::size_t q = 0; q < n; ++q)
                m[q] = elements_[j].map[elements_[i].map[q]];
            table_[i][j] = ids.at(m);
        }
}

std::size_t TransitionMonoid::letter_element(Symbol a) const {
    return letter_elem_[dfa_.alphabet().rank(a)];
}

std::size_t TransitionMonoid::element_of(const Word& w) const {
    std::size_t e = identity();
    for (Symbol a : w)
        e = table_[e][letter_element(a)];
    return e;
}

bool TransitionMonoid::accepting_class(std::size_t e) const {
    return dfa_.is_accepting(elements_[e].map[dfa_.init()]);
}

std::vector<Word> TransitionMonoid::representatives() const {
    std::vector<Word> out;
    for (const auto& e : elements_)
        out.push_back(e.witness);
    return out;
}

TransitionMonoid transition_monoid(const Dfa& d) {
    return TransitionMonoid(d);
}

// ---------------------------------------------------------------------------
// File format

Dfa parse_dfa(std::string_view text) {
    std::vector<std::string> state_names;
    std::unordered_map<std::string, std::size_t> state_ids;
    std::optional<std::string> init_name;
    std::optional<std::vector<std::string>> accepting_names;
    std::vector<Symbol> letters;
    SymbolSet letter_set;
    // (state, letter name, target)
    std::vector<std::tuple<std::string, std::string, std::string>> transitions;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.resize(pos);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string t;
        while (ls >> t)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        if (tokens[0] == "states:") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (state_ids.emplace(tokens[i], state_names.size()).second)
                    state_names.push_back(tokens[i]);
                else
                    throw parse_error(lineno, 1, "duplicate state: " + tokens[i]);
            }
        } else if (tokens[0] == "init:") {
            if (init_name)
                throw parse_error(lineno, 1, "duplicate init declaration");
            if (tokens.size() != 2)
                throw parse_error(lineno, 1, "init: expects one state");
            init_name = tokens[1];
        } else if (tokens[0] == "accepting:") {
            if (accepting_names)
                throw parse_error(lineno, 1, "duplicate accepting declaration");
            accepting_names = std::vector<std::string>(tokens.begin() + 1, tokens.end());
        } else {
            if (tokens.size() != 4 || tokens[2] != "->")
                throw parse_error(lineno, 1, "expected \"q a -> q'\"");
            transitions.emplace_back(tokens[0], tokens[1], tokens[3]);
            Symbol a{tokens[1]};
            if (letter_set.insert(a).second)
                letters.push_back(a);
        }
    }
    if (state_names.empty())
        throw parse_error(lineno + 1, 1, "missing states declaration");
    if (!init_name)
        throw parse_error(lineno + 1, 1, "missing init declaration");
    if (!accepting_names)
        throw parse_error(lineno + 1, 1, "missing accepting declaration");

    Alphabet sigma{letters};
    auto state_id = [&](const std::string& name) {
        auto it = state_ids.find(name);
        if (it == state_ids.end())
            throw std::invalid_argument("unknown state: " + name);
        return it->second;
    };
    const std::size_t n = state_names.size();
    std::vector<std::vector<long>> delta(n, std::vector<long>(sigma.size(), -1));
    for (const auto& [q, a, q2] : transitions) {
        auto& cell = delta[state_id(q)][sigma.rank(Symbol(a))];
        if (cell >= 0)
            throw std::invalid_argument("duplicate transition from " + q + " on " + a);
        cell = static_cast<long>(state_id(q2));
    }
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(sigma.size()));
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < sigma.size(); ++r) {
            if (delta[q][r] < 0)
                throw std::invalid_argument("transition table is not total: state " +
                                            state_names[q] + " on " +
                                            sigma.terminals()[r].name());
            table[q][r] = static_cast<std::size_t>(delta[q][r]);
        }
    std::vector<std::size_t> accepting;
    for (const auto& name : *accepting_names)
        accepting.push_back(state_id(name));
    return Dfa(std::move(sigma), n, state_id(*init_name), std::move(accepting),
               std::move(table));
}

std::string format_dfa(const Dfa& d) {
    auto name = [](std::size_t q) { return "q" + std::to_string(q); };
    std::string out = "states:";
    for (std::size_t q = 0; q < d.state_count(); ++q)
        out += " " + name(q);
    out += "\ninit: " + name(d.init()) + "\naccepting:";
    for (std::size_t q : d.accepting_states())
        out += " " + name(q);
    out += "\n";
    for (std::size_t q = 0; q < d.state_count(); ++q)
        for (std::size_t r = 0; r < d.alphabet().size(); ++r)
            out += name(q) + " " + d.alphabet().terminals()[r].name() + " -> " +
                   name(d.step_rank(q, r)) + "\n";
    return out;
}

}  // namespace ccgram
