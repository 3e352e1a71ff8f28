#include "ccgram/pda.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ccgram {

Symbol stack_bottom() {
    return Symbol("$");
}

Symbol context_marker() {
    return Symbol("#");
}

Pda::Pda(std::vector<std::string> state_names, std::size_t init,
         std::vector<std::size_t> accepting, Alphabet input_alphabet,
         std::vector<Symbol> stack_alphabet, std::vector<PdaTransition> transitions)
    : state_names_(std::move(state_names)),
      init_(init),
      input_alphabet_(std::move(input_alphabet)),
      stack_alphabet_(std::move(stack_alphabet)),
      transitions_(std::move(transitions)) {
    if (state_names_.empty())
        throw std::invalid_argument("a PDA needs at least one state");
    if (init_ >= state_names_.size())
        throw std::invalid_argument("initial state out of range");
    accepting_.assign(state_names_.size(), false);
    for (std::size_t q : accepting) {
        if (q >= state_names_.size())
            throw std::invalid_argument("accepting state out of range");
        accepting_[q] = true;
    }
    SymbolSet stack_set(stack_alphabet_.begin(), stack_alphabet_.end());
    if (!stack_set.count(stack_bottom()))
        throw std::invalid_argument("stack alphabet must contain $");
    for (const auto& t : transitions_) {
        if (t.from >= state_names_.size() || t.to >= state_names_.size())
            throw std::invalid_argument("transition state out of range");
        if (t.input && !input_alphabet_.contains(*t.input))
            throw std::invalid_argument("transition input outside alphabet: " +
                                        t.input->name());
        if (!stack_set.count(t.top))
            throw std::invalid_argument("transition stack symbol outside alphabet: " +
                                        t.top.name());
        for (Symbol s : t.push)
            if (!stack_set.count(s))
                throw std::invalid_argument("pushed symbol outside stack alphabet: " +
                                            s.name());
    }
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const auto& t = transitions_[i];
        std::uint64_t in = t.input ? t.input->id() : ~std::uint64_t{0};
        index_.emplace(std::make_tuple(t.from, in, t.top.id()), i);  // first one wins
    }
}

std::vector<std::size_t> Pda::accepting_states() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < accepting_.size(); ++q)
        if (accepting_[q])
            out.push_back(q);
    return out;
}

const PdaTransition* Pda::find(std::size_t q, std::optional<Symbol> input,
                               Symbol top) const {
    std::uint64_t in = input ? input->id() : ~std::uint64_t{0};
    auto it = index_.find(std::make_tuple(q, in, top.id()));
    return it == index_.end() ? nullptr : &transitions_[it->second];
}

DeterminismReport is_deterministic(const Pda& m) {
    DeterminismReport report{true, {}};
    const auto& ts = m.transitions();
    std::map<std::pair<std::size_t, std::uint32_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ts.size(); ++i)
        groups[{ts[i].from, ts[i].top.id()}].push_back(i);
    for (const auto& [key, members] : groups) {
        (void)key;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                std::size_t i = members[a], j = members[b];
                bool clash = ts[i].input == ts[j].input ||  // duplicate triple
                             !ts[i].input || !ts[j].input;  // epsilon vs lettered
                if (clash) {
                    report.deterministic = false;
                    report.conflicts.emplace_back(i, j);
                }
            }
        }
    }
    return report;
}

namespace {

bool stack_marker_ok(const std::vector<Symbol>& stack) {
    if (stack.empty())
        return true;  // an emptied stack just halts the run
    for (std::size_t i = 0; i + 1 < stack.size(); ++i)
        if (stack[i] == stack_bottom())
            return false;
    return stack.back() == stack_bottom();
}

}  // namespace

RunResult run(const Pda& m, const Word& w, std::size_t step_limit) {
    if (!is_deterministic(m).deterministic)
        throw std::invalid_argument("run requires a deterministic machine");
    for (Symbol a : w)
        if (!m.input_alphabet().contains(a))
            throw std::invalid_argument("input symbol outside machine alphabet: " +
                                        a.name());

    PdaConfig cfg{m.init(), w, {stack_bottom()}};
    RunResult result{RunStatus::reject, {cfg}};
    for (std::size_t step = 0; step <= step_limit; ++step) {
        if (cfg.remaining.empty() && cfg.stack.size() == 1 &&
            cfg.stack[0] == stack_bottom() && m.is_accepting(cfg.state)) {
            result.status = RunStatus::accept;
            return result;
        }
        if (cfg.stack.empty())
            return result;  // reject: no move can fire
        Symbol top = cfg.stack.front();
        const PdaTransition* t = m.find(cfg.state, std::nullopt, top);
        if (!t && !cfg.remaining.empty())
            t = m.find(cfg.state, cfg.remaining.front(), top);
        if (!t)
            return result;  // reject: halted in a non-accepting configuration
        PdaConfig next;
        next.state = t->to;
        next.remaining = t->input ? Word(cfg.remaining.begin() + 1, cfg.remaining.end())
                                  : cfg.remaining;
        next.stack = t->push;
        next.stack.insert(next.stack.end(), cfg.stack.begin() + 1, cfg.stack.end());
        if (!stack_marker_ok(next.stack))
            throw std::runtime_error("end-of-stack marker not preserved by transition");
        cfg = std::move(next);
        result.trace.push_back(cfg);
    }
    result.status = RunStatus::limit_exceeded;
    return result;
}

bool check_one_turn(const Pda& m) {
    for (const auto& t : m.transitions()) {
        if (t.from == m.init()) {
            if (t.push.empty())
                return false;  // the stack may never shrink before the turn
        } else {
            if (t.to == m.init())
                return false;
            if (t.push.size() > 1)
                return false;  // the stack may never grow after the turn
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// The context DPDA

namespace {

struct MwBuilder {
    const ContextGrammar& cg;
    const ReductionSystem& rules;
    std::size_t bound;  // N
    const Word& wp;
    WordSet targets;  // minimal words of the productive initials of G_w

    std::vector<std::string> names;
    std::set<std::string> taken_names;
    std::vector<std::optional<BufferState>> buffers;
    std::map<std::pair<Word, Word>, std::size_t> ids;
    std::deque<std::size_t> queue;
    std::vector<PdaTransition> transitions;

    Word whole(const Word& u, const Word& v) const {
        Word m = u;
        m.insert(m.end(), wp.begin(), wp.end());
        m.insert(m.end(), v.begin(), v.end());
        return m;
    }

    std::string fresh_name(std::string base) {
        while (!taken_names.insert(base).second)
            base += "'";
        return base;
    }

    std::size_t intern(Word u, Word v) {
        auto it = ids.find(std::make_pair(u, v));
        if (it != ids.end())
            return it->second;
        if (u.size() > bound || v.size() > bound)
            throw std::runtime_error(
                "context DPDA buffer overflow: a reduction step needs a buffer "
                "longer than the bound " +
                std::to_string(bound));
        std::size_t id = names.size();
        names.push_back(fresh_name(format_symbols(u) + "#" + format_symbols(v)));
        buffers.push_back(BufferState{u, v});
        ids.emplace(std::make_pair(std::move(u), std::move(v)), id);
        queue.push_back(id);
        return id;
    }

    // The reduction move: the lenlex-least single-step successor of
    // u w' v, split back into buffer halves around w'.
    std::pair<Word, Word> reduce_target(const Word& u, const Word& v) const {
        auto results = one_step_results(rules, whole(u, v));
        if (results.empty())
            throw std::logic_error("reduce_target called on an irreducible word");
        if (wp.empty()) {
            // All splits share the concatenation; take the shortest left
            // half that fits both buffers.
            const Word& m = results.front();
            std::size_t lx = m.size() > bound ? m.size() - bound : 0;
            return {Word(m.begin(), m.begin() + lx), Word(m.begin() + lx, m.end())};
        }
        std::optional<std::pair<Word, Word>> best;
        std::optional<Word> best_key;
        for (const Word& m : results) {
            // The primed letters of a successor are exactly w', contiguous.
            std::size_t p0 = m.size(), p1 = 0;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (cg.extended.is_primed(m[i])) {
                    p0 = std::min(p0, i);
                    p1 = i;
                }
            if (p0 == m.size() || p1 - p0 + 1 != wp.size() ||
                !std::equal(wp.begin(), wp.end(), m.begin() + p0))
                throw std::logic_error("reduction step does not preserve the marked word");
            Word x(m.begin(), m.begin() + p0);
            Word y(m.begin() + p1 + 1, m.end());
            Word key = x;
            key.insert(key.end(), y.begin(), y.end());
            if (!best || lenlex_less(key, *best_key, cg.extended) ||
                (key == *best_key && lenlex_less(x, best->first, cg.extended))) {
                best = {std::move(x), std::move(y)};
                best_key = std::move(key);
            }
        }
        return *best;
    }
};

}  // namespace

ContextDpda build_context_dpda(const Grammar& g, const Word& w) {
    ContextGrammar cg = build_context_grammar(g, w);
    ReductionSystem rules = extract_reduction(cg.gw);
    Analysis analysis(cg.gw);

    std::size_t bound = 0;
    for (const auto& p : cg.gw.productions()) {
        auto body_min = analysis.min_word(p.body);
        if (!body_min)
            continue;
        bound = std::max(bound, body_min->size());
        bound = std::max(bound, analysis.min_word(p.head)->size());
    }

    WordSet targets;
    for (Symbol s : cg.gw.initials())
        if (const auto& m = analysis.min_word(s))
            targets.insert(*m);

    const auto& base = cg.extended.unprimed();
    std::vector<Symbol> input_letters = base;
    input_letters.push_back(context_marker());
    Alphabet input_alphabet{input_letters};
    std::vector<Symbol> stack_alphabet = base;
    stack_alphabet.push_back(stack_bottom());

    MwBuilder b{cg, rules, bound, cg.primed_word, std::move(targets),
                {},  {},    {},    {},            {},
                {}};
    b.names.push_back(b.fresh_name("q0"));
    b.buffers.push_back(std::nullopt);

    std::size_t switch_state = b.intern({}, {});
    for (Symbol a : stack_alphabet) {
        for (Symbol letter : base)
            b.transitions.push_back({0, letter, a, {letter, a}, 0});
        b.transitions.push_back({0, context_marker(), a, {a}, switch_state});
    }

    while (!b.queue.empty()) {
        std::size_t id = b.queue.front();
        b.queue.pop_front();
        const Word u = b.buffers[id]->left;   // copies: interning may reallocate
        const Word v = b.buffers[id]->right;
        Word uwv = b.whole(u, v);
        if (!is_irreducible(rules, uwv)) {
            auto [x, y] = b.reduce_target(u, v);
            std::size_t t = b.intern(std::move(x), std::move(y));
            for (Symbol a : stack_alphabet)
                b.transitions.push_back({id, std::nullopt, a, {a}, t});
            continue;
        }
        if (u.size() < bound) {
            for (Symbol a : base) {
                Word nu{a};
                nu.insert(nu.end(), u.begin(), u.end());
                std::size_t t = b.intern(std::move(nu), v);
                b.transitions.push_back({id, std::nullopt, a, {}, t});
            }
        }
        if (v.size() < bound) {
            for (Symbol letter : base) {
                Word nv = v;
                nv.push_back(letter);
                std::size_t t = b.intern(u, std::move(nv));
                for (Symbol a : stack_alphabet) {
                    if (a == stack_bottom() || u.size() == bound)
                        b.transitions.push_back({id, letter, a, {a}, t});
                }
            }
        }
    }

    std::vector<std::size_t> accepting;
    for (std::size_t q = 1; q < b.names.size(); ++q)
        if (b.targets.count(b.whole(b.buffers[q]->left, b.buffers[q]->right)))
            accepting.push_back(q);

    Pda pda{std::move(b.names), 0,          std::move(accepting),
            std::move(input_alphabet),      std::move(stack_alphabet),
            std::move(b.transitions)};
    return {std::move(pda), std::move(cg), std::move(rules), bound,
            std::move(b.buffers)};
}

// ---------------------------------------------------------------------------
// Bounded equivalence

namespace {

struct Settled {
    bool dead = false;
    bool limit = false;
    bool accepts = false;  // would accept if the input ended here
    std::size_t state = 0;
    std::vector<Symbol> stack;
};

Settled settle(const Pda& m, std::size_t state, std::vector<Symbol> stack,
               std::size_t step_limit) {
    Settled s;
    s.state = state;
    s.stack = std::move(stack);
    for (std::size_t step = 0;; ++step) {
        if (s.stack.size() == 1 && s.stack[0] == stack_bottom() &&
            m.is_accepting(s.state))
            s.accepts = true;
        if (s.stack.empty())
            return s;
        if (step >= step_limit) {
            s.limit = true;
            return s;
        }
        const PdaTransition* t = m.find(s.state, std::nullopt, s.stack.front());
        if (!t)
            return s;
        std::vector<Symbol> next = t->push;
        next.insert(next.end(), s.stack.begin() + 1, s.stack.end());
        if (!stack_marker_ok(next))
            throw std::runtime_error("end-of-stack marker not preserved by transition");
        s.stack = std::move(next);
        s.state = t->to;
    }
}

std::optional<Settled> step_letter(const Pda& m, const Settled& from, Symbol a,
                                   std::size_t step_limit, bool& limit_flag) {
    if (from.dead || from.stack.empty())
        return std::nullopt;
    const PdaTransition* t = m.find(from.state, a, from.stack.front());
    if (!t)
        return std::nullopt;
    std::vector<Symbol> next = t->push;
    next.insert(next.end(), from.stack.begin() + 1, from.stack.end());
    if (!stack_marker_ok(next))
        throw std::runtime_error("end-of-stack marker not preserved by transition");
    Settled s = settle(m, t->to, std::move(next), step_limit);
    if (s.limit)
        limit_flag = true;
    return s;
}

struct PairKey {
    bool dead1, dead2;
    std::size_t s1, s2;
    std::vector<Symbol> k1, k2;
    friend bool operator<(const PairKey& a, const PairKey& b) {
        return std::tie(a.dead1, a.dead2, a.s1, a.s2, a.k1, a.k2) <
               std::tie(b.dead1, b.dead2, b.s1, b.s2, b.k1, b.k2);
    }
};

}  // namespace

BoundedEquivResult bounded_equiv(const Pda& m1, const Pda& m2, std::size_t max_len,
                                 std::size_t step_limit) {
    if (!is_deterministic(m1).deterministic || !is_deterministic(m2).deterministic)
        throw std::invalid_argument("bounded_equiv requires deterministic machines");
    SymbolSet a1(m1.input_alphabet().terminals().begin(),
                 m1.input_alphabet().terminals().end());
    SymbolSet a2(m2.input_alphabet().terminals().begin(),
                 m2.input_alphabet().terminals().end());
    if (a1 != a2)
        throw std::invalid_argument("bounded_equiv requires a shared input alphabet");

    bool limit_flag = false;
    struct Node {
        Word prefix;
        Settled c1, c2;
    };
    auto key_of = [](const Node& n) {
        return PairKey{n.c1.dead, n.c2.dead, n.c1.state, n.c2.state, n.c1.stack,
                       n.c2.stack};
    };

    Node root;
    root.c1 = settle(m1, m1.init(), {stack_bottom()}, step_limit);
    root.c2 = settle(m2, m2.init(), {stack_bottom()}, step_limit);
    if (root.c1.limit || root.c2.limit)
        return {EquivStatus::limit_exceeded, std::nullopt};
    if (root.c1.accepts != root.c2.accepts)
        return {EquivStatus::counterexample, Word{}};

    std::set<PairKey> seen{key_of(root)};
    std::deque<Node> queue{std::move(root)};
    auto dead = [](const std::optional<Settled>& s) { return !s.has_value(); };

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (node.prefix.size() >= max_len)
            continue;
        for (Symbol a : m1.input_alphabet().terminals()) {
            std::optional<Settled> n1 =
                node.c1.dead ? std::optional<Settled>{}
                             : step_letter(m1, node.c1, a, step_limit, limit_flag);
            std::optional<Settled> n2 =
                node.c2.dead ? std::optional<Settled>{}
                             : step_letter(m2, node.c2, a, step_limit, limit_flag);
            if (limit_flag)
                return {EquivStatus::limit_exceeded, std::nullopt};
            Word prefix = node.prefix;
            prefix.push_back(a);
            bool acc1 = !dead(n1) && n1->accepts;
            bool acc2 = !dead(n2) && n2->accepts;
            if (acc1 != acc2)
                return {EquivStatus::counterexample, std::move(prefix)};
            if (dead(n1) && dead(n2))
                continue;  // both reject every extension
            Node next;
            next.prefix = std::move(prefix);
            next.c1 = dead(n1) ? Settled{true, false, false, 0, {}} : std::move(*n1);
            next.c2 = dead(n2) ? Settled{true, false, false, 0, {}} : std::move(*n2);
            if (seen.insert(key_of(next)).second)
                queue.push_back(std::move(next));
        }
    }
    return {EquivStatus::equal_up_to_bound, std::nullopt};
}

// ---------------------------------------------------------------------------
// Dump format

std::string format_pda(const Pda& m) {
    std::string out = "init: " + m.state_name(m.init()) + "\naccepting:";
    for (std::size_t q : m.accepting_states())
        out += " " + m.state_name(q);
    out += "\nalphabet:";
    for (Symbol a : m.input_alphabet().terminals())
        out += " " + a.name();
    out += "\n";
    for (const auto& t : m.transitions()) {
        out += m.state_name(t.from) + " " + (t.input ? t.input->name() : "eps") + " " +
               t.top.name() + " /";
        if (t.push.empty()) {
            out += " eps";
        } else {
            for (Symbol s : t.push)
                out += " " + s.name();
        }
        out += " " + m.state_name(t.to) + "\n";
    }
    return out;
}

Pda parse_pda(std::string_view text) {
    std::optional<std::string> init_name;
    std::optional<std::vector<std::string>> accepting_names;
    std::vector<Symbol> letters;
    SymbolSet letter_set;
    bool alphabet_declared = false;

    struct RawTransition {
        std::string from, input, top, to;
        std::vector<std::string> push;
    };
    std::vector<RawTransition> raw;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string t;
        while (ls >> t)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        if (tokens[0] == "init:") {
            if (tokens.size() != 2)
                throw parse_error(lineno, 1, "init: expects one state");
            init_name = tokens[1];
        } else if (tokens[0] == "accepting:") {
            accepting_names = std::vector<std::string>(tokens.begin() + 1, tokens.end());
        } else if (tokens[0] == "alphabet:") {
            alphabet_declared = true;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                Symbol a{tokens[i]};
                if (letter_set.insert(a).second)
                    letters.push_back(a);
            }
        } else {
            if (tokens.size() < 6 || tokens[3] != "/")
                throw parse_error(lineno, 1,
                                  "expected \"q a sigma / rho... q'\" transition");
            RawTransition rt;
            rt.from = tokens[0];
            rt.input = tokens[1];
            rt.top = tokens[2];
            rt.push.assign(tokens.begin() + 4, tokens.end() - 1);
            rt.to = tokens.back();
            raw.push_back(std::move(rt));
        }
    }
    if (!init_name)
        throw parse_error(lineno + 1, 1, "missing init declaration");
    if (!accepting_names)
        throw parse_error(lineno + 1, 1, "missing accepting declaration");

    std::vector<std::string> names;
    std::map<std::string, std::size_t> ids;
    auto intern = [&](const std::string& n) {
        auto [it, fresh] = ids.emplace(n, names.size());
        if (fresh)
            names.push_back(n);
        return it->second;
    };
    intern(*init_name);
    for (const auto& n : *accepting_names)
        intern(n);

    std::vector<Symbol> stack_syms{stack_bottom()};
    SymbolSet stack_set{stack_bottom()};
    std::vector<PdaTransition> transitions;
    for (const auto& rt : raw) {
        PdaTransition t;
        t.from = intern(rt.from);
        t.to = intern(rt.to);
        if (rt.input != "eps") {
            Symbol a{rt.input};
            t.input = a;
            if (!alphabet_declared && letter_set.insert(a).second)
                letters.push_back(a);
        }
        t.top = Symbol(rt.top);
        if (stack_set.insert(t.top).second)
            stack_syms.push_back(t.top);
        if (!(rt.push.size() == 1 && rt.push[0] == "eps")) {
            for (const auto& s : rt.push) {
                Symbol sym{s};
                t.push.push_back(sym);
                if (stack_set.insert(sym).second)
                    stack_syms.push_back(sym);
            }
        }
        transitions.push_back(std::move(t));
    }

    std::vector<std::size_t> accepting;
    for (const auto& n : *accepting_names)
        accepting.push_back(ids.at(n));
    return Pda(std::move(names), ids.at(*init_name), std::move(accepting),
               Alphabet(letters), std::move(stack_syms), std::move(transitions));
}

}  // namespace ccgram
