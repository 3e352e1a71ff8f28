#include "ccgram/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ccgram {

Morphism::Morphism(Alphabet domain, std::unordered_map<Symbol, Symbol, SymbolHash> mapping)
    : domain_(std::move(domain)), map_(std::move(mapping)) {
    for (Symbol a : domain_.terminals()) {
        auto it = map_.find(a);
        if (it == map_.end())
            throw std::invalid_argument("morphism is not total: " + a.name());
        if (!domain_.contains(it->second))
            throw std::invalid_argument("morphism image outside alphabet: " +
                                        it->second.name());
    }
    for (const auto& [a, b] : map_) {
        if (!domain_.contains(a))
            throw std::invalid_argument("morphism domain symbol outside alphabet: " +
                                        a.name());
        preimages_[b].push_back(a);
    }
    for (auto& [b, pre] : preimages_)
        std::sort(pre.begin(), pre.end(),
                  [&](Symbol x, Symbol y) { return domain_.rank(x) < domain_.rank(y); });
}

Morphism Morphism::identity(const Alphabet& domain) {
    std::unordered_map<Symbol, Symbol, SymbolHash> m;
    for (Symbol a : domain.terminals())
        m.emplace(a, a);
    return Morphism(domain, std::move(m));
}

Morphism Morphism::unpriming(const Alphabet& primed_alphabet) {
    if (!primed_alphabet.has_priming())
        throw std::invalid_argument("alphabet carries no primed copy");
    std::unordered_map<Symbol, Symbol, SymbolHash> m;
    for (Symbol a : primed_alphabet.unprimed()) {
        m.emplace(a, a);
        m.emplace(primed_alphabet.prime_of(a), a);
    }
    return Morphism(primed_alphabet, std::move(m));
}

Symbol Morphism::apply(Symbol a) const {
    auto it = map_.find(a);
    if (it == map_.end())
        throw std::invalid_argument("symbol outside morphism domain: " + a.name());
    return it->second;
}

Word Morphism::apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Symbol a : w)
        out.push_back(apply(a));
    return out;
}

const std::vector<Symbol>& Morphism::preimages(Symbol a) const {
    auto it = preimages_.find(a);
    return it == preimages_.end() ? no_preimages_ : it->second;
}

// ---------------------------------------------------------------------------
// Weak omega-reduction

WordSet finite_language(const Analysis& a, Symbol nonterminal) {
    const Grammar& g = a.grammar();
    if (!a.finite_language(nonterminal))
        throw std::invalid_argument("language of " + nonterminal.name() + " is infinite");

    // Kleene iteration over the finite-language fragment. The sets are
    // bounded by the true (finite) languages, so this terminates.
    std::unordered_map<Symbol, WordSet, SymbolHash> lang;
    for (Symbol nt : g.nonterminals())
        if (a.productive(nt) && a.finite_language(nt))
            lang.emplace(nt, WordSet{});

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            auto it = lang.find(p.head);
            if (it == lang.end())
                continue;
            bool usable = true;
            for (Symbol s : p.body)
                if (g.is_nonterminal(s) && !lang.count(s)) {
                    usable = false;  // unproductive or infinite sibling
                    break;
                }
            if (!usable)
                continue;
            std::vector<Word> partial{{}};
            for (Symbol s : p.body) {
                std::vector<Word> next;
                if (g.is_nonterminal(s)) {
                    for (const Word& prefix : partial)
                        for (const Word& w : lang.at(s)) {
                            Word e = prefix;
                            e.insert(e.end(), w.begin(), w.end());
                            next.push_back(std::move(e));
                        }
                } else {
                    for (const Word& prefix : partial) {
                        Word e = prefix;
                        e.push_back(s);
                        next.push_back(std::move(e));
                    }
                }
                partial = std::move(next);
            }
            for (auto& w : partial)
                if (it->second.insert(std::move(w)).second)
                    changed = true;
        }
    }
    return lang.at(nonterminal);
}

Grammar weak_omega_reduce(const Grammar& g) {
    Analysis a(g);

    SymbolSet kept;  // infinite-language nonterminals and all initials
    for (Symbol nt : g.nonterminals())
        if (a.productive(nt) && !a.finite_language(nt))
            kept.insert(nt);
    for (Symbol s : g.initials())
        kept.insert(s);

    std::unordered_map<Symbol, std::vector<Word>, SymbolHash> inlined;
    for (Symbol nt : g.nonterminals()) {
        if (kept.count(nt) || !a.productive(nt))
            continue;
        auto ws = finite_language(a, nt);
        inlined.emplace(nt, std::vector<Word>(ws.begin(), ws.end()));
    }
    // Deterministic substitution order.
    for (auto& [nt, ws] : inlined)
        std::sort(ws.begin(), ws.end(), LenLexLess{&g.alphabet()});

    std::vector<Production> productions;
    for (const auto& p : g.productions()) {
        if (!kept.count(p.head))
            continue;
        std::vector<Form> partial{{}};
        for (Symbol s : p.body) {
            std::vector<Form> next;
            if (g.is_nonterminal(s) && !kept.count(s)) {
                if (!a.productive(s)) {
                    partial.clear();  // empty substitution: production vanishes
                    break;
                }
                for (const Form& prefix : partial)
                    for (const Word& w : inlined.at(s)) {
                        Form e = prefix;
                        e.insert(e.end(), w.begin(), w.end());
                        next.push_back(std::move(e));
                    }
            } else {
                for (const Form& prefix : partial) {
                    Form e = prefix;
                    e.push_back(s);
                    next.push_back(std::move(e));
                }
            }
            partial = std::move(next);
        }
        for (auto& body : partial)
            productions.push_back({p.head, std::move(body)});
    }
    return Grammar(g.alphabet(), g.initials(), std::move(productions));
}

// ---------------------------------------------------------------------------
// Inverse morphism

Grammar inverse_morphism(const Grammar& g, const Morphism& h) {
    if (!(g.alphabet() == h.domain()))
        throw std::invalid_argument("morphism domain differs from grammar alphabet");

    std::vector<Production> productions;
    for (const auto& p : g.productions()) {
        std::vector<Form> partial{{}};
        for (Symbol s : p.body) {
            std::vector<Form> next;
            if (g.is_nonterminal(s)) {
                for (const Form& prefix : partial) {
                    Form e = prefix;
                    e.push_back(s);
                    next.push_back(std::move(e));
                }
            } else {
                const auto& pre = h.preimages(s);
                for (const Form& prefix : partial)
                    for (Symbol q : pre) {
                        Form e = prefix;
                        e.push_back(q);
                        next.push_back(std::move(e));
                    }
            }
            partial = std::move(next);
            if (partial.empty())
                break;  // a terminal without preimages kills the production
        }
        for (auto& body : partial)
            productions.push_back({p.head, std::move(body)});
    }
    return Grammar(g.alphabet(), g.initials(), std::move(productions));
}

// ---------------------------------------------------------------------------
// Regular intersection

const AnnotatedNonterminal& RegularIntersection::annotation(Symbol nonterminal) const {
    for (const auto& ann : annotations)
        if (ann.symbol == nonterminal)
            return ann;
    throw std::invalid_argument("no annotation for: " + nonterminal.name());
}

RegularIntersection intersect_regular_full(const Grammar& g, const Dfa& d) {
    TransitionMonoid monoid(d.reindexed(g.alphabet()));

    // Realizable classes per nonterminal: the least fixpoint of composing
    // body classes along productions.
    std::unordered_map<Symbol, std::set<std::size_t>, SymbolHash> classes;
    for (Symbol nt : g.nonterminals())
        classes.emplace(nt, std::set<std::size_t>{});
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            std::set<std::size_t> acc{monoid.identity()};
            bool ok = true;
            for (Symbol s : p.body) {
                std::set<std::size_t> step;
                if (g.is_nonterminal(s)) {
                    const auto& ks = classes.at(s);
                    if (ks.empty()) {
                        ok = false;
                        break;
                    }
                    for (std::size_t e : acc)
                        for (std::size_t k : ks)
                            step.insert(monoid.compose(e, k));
                } else {
                    std::size_t le = monoid.letter_element(s);
                    for (std::size_t e : acc)
                        step.insert(monoid.compose(e, le));
                }
                acc = std::move(step);
            }
            if (!ok)
                continue;
            auto& ka = classes.at(p.head);
            for (std::size_t e : acc)
                if (ka.insert(e).second)
                    changed = true;
        }
    }

    // Fresh names for the annotated nonterminals.
    SymbolSet taken;
    for (Symbol s : g.alphabet().terminals())
        taken.insert(s);
    for (Symbol s : g.nonterminals())
        taken.insert(s);
    std::map<std::pair<Symbol, std::size_t>, Symbol> named;
    std::vector<AnnotatedNonterminal> annotations;
    for (Symbol nt : g.nonterminals()) {
        for (std::size_t e : classes.at(nt)) {
            std::string name = nt.name() + "^" + std::to_string(e);
            while (taken.count(Symbol(name)))
                name += "'";
            Symbol fresh{name};
            taken.insert(fresh);
            named.emplace(std::make_pair(nt, e), fresh);
            annotations.push_back({fresh, nt, e});
        }
    }

    std::vector<Symbol> initials;
    for (Symbol s : g.initials())
        for (std::size_t e : classes.at(s))
            if (monoid.accepting_class(e))
                initials.push_back(named.at({s, e}));

    // Productions: every assignment of realizable classes to the body's
    // nonterminal occurrences; the head class is the composition.
    std::vector<Production> productions;
    for (const auto& p : g.productions()) {
        struct Choice {
            Form body;
            std::size_t cls;
        };
        std::vector<Choice> partial{{{}, monoid.identity()}};
        for (Symbol s : p.body) {
            std::vector<Choice> next;
            if (g.is_nonterminal(s)) {
                for (const auto& c : partial)
                    for (std::size_t e : classes.at(s)) {
                        Choice n = c;
                        n.body.push_back(named.at({s, e}));
                        n.cls = monoid.compose(c.cls, e);
                        next.push_back(std::move(n));
                    }
            } else {
                std::size_t le = monoid.letter_element(s);
                for (const auto& c : partial) {
                    Choice n = c;
                    n.body.push_back(s);
                    n.cls = monoid.compose(c.cls, le);
                    next.push_back(std::move(n));
                }
            }
            partial = std::move(next);
            if (partial.empty())
                break;
        }
        for (auto& c : partial)
            productions.push_back({named.at({p.head, c.cls}), std::move(c.body)});
    }

    Grammar result = prune_empty(
        Grammar(g.alphabet(), std::move(initials), std::move(productions)));
    std::vector<AnnotatedNonterminal> surviving;
    for (const auto& ann : annotations)
        if (result.is_nonterminal(ann.symbol))
            surviving.push_back(ann);
    return {std::move(result), std::move(monoid), std::move(surviving)};
}

Grammar intersect_regular(const Grammar& g, const Dfa& d) {
    return intersect_regular_full(g, d).grammar;
}

// ---------------------------------------------------------------------------
// Context grammar

namespace {

// Words over the unprimed half of a primed alphabet.
Dfa unprimed_only_dfa(const Alphabet& extended) {
    const std::size_t k = extended.size();
    std::vector<std::vector<std::size_t>> delta(2, std::vector<std::size_t>(k, 1));
    for (std::size_t r = 0; r < k; ++r)
        if (!extended.is_primed(extended.terminals()[r]))
            delta[0][r] = 0;
    return Dfa(extended, 2, 0, {0}, std::move(delta));
}

// left . mid . right, where left and right accept only unprimed words and
// mid is a fixed all-primed word. For non-empty mid the first primed
// letter pins the decomposition, so a chain of the two automata through
// mid is deterministic as-is; for empty mid the concatenation is built by
// a subset construction.
Dfa concat_through_word(const Dfa& left, const Word& mid, const Dfa& right,
                        const Alphabet& extended) {
    const std::size_t k = extended.size();

    if (!mid.empty()) {
        const std::size_t nl = left.state_count();
        const std::size_t chain = mid.size() - 1;  // positions 1..|mid|-1
        const std::size_t nr = right.state_count();
        const std::size_t dead = nl + chain + nr;
        auto chain_state = [&](std::size_t i) {  // after reading mid[0..i)
            return i == mid.size() ? nl + chain + right.init() : nl + (i - 1);
        };
        std::vector<std::vector<std::size_t>> delta(dead + 1,
                                                    std::vector<std::size_t>(k, dead));
        for (std::size_t q = 0; q < nl; ++q)
            for (std::size_t r = 0; r < k; ++r) {
                Symbol a = extended.terminals()[r];
                if (extended.is_primed(a))
                    delta[q][r] = (left.is_accepting(q) && a == mid[0]) ? chain_state(1)
                                                                        : dead;
                else
                    delta[q][r] = left.step_rank(q, r);
            }
        for (std::size_t i = 1; i <= chain; ++i)
            for (std::size_t r = 0; r < k; ++r)
                delta[nl + i - 1][r] =
                    extended.terminals()[r] == mid[i] ? chain_state(i + 1) : dead;
        for (std::size_t q = 0; q < nr; ++q)
            for (std::size_t r = 0; r < k; ++r) {
                Symbol a = extended.terminals()[r];
                delta[nl + chain + q][r] =
                    extended.is_primed(a) ? dead : nl + chain + right.step_rank(q, r);
            }
        std::vector<std::size_t> accepting;
        for (std::size_t q = 0; q < nr; ++q)
            if (right.is_accepting(q))
                accepting.push_back(nl + chain + q);
        return Dfa(extended, dead + 1, left.init(), std::move(accepting),
                   std::move(delta));
    }

    // Subset construction for left . right. NFA states: left states as-is,
    // right states shifted; accepting left states spawn right's initial.
    const std::size_t nl = left.state_count();
    auto closure = [&](std::set<std::size_t> s) {
        for (std::size_t q : s)
            if (q < nl && left.is_accepting(q)) {
                s.insert(nl + right.init());
                break;
            }
        return s;
    };
    std::map<std::set<std::size_t>, std::size_t> ids;
    std::vector<std::set<std::size_t>> subsets;
    auto intern = [&](std::set<std::size_t> s) {
        auto [it, fresh] = ids.emplace(s, subsets.size());
        if (fresh)
            subsets.push_back(std::move(s));
        return it->second;
    };
    std::size_t init = intern(closure({left.init()}));
    std::vector<std::vector<std::size_t>> delta;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::vector<std::size_t> row;
        for (std::size_t r = 0; r < k; ++r) {
            std::set<std::size_t> next;
            for (std::size_t q : subsets[i]) {
                if (q < nl)
                    next.insert(left.step_rank(q, r));
                else
                    next.insert(nl + right.step_rank(q - nl, r));
            }
            row.push_back(intern(closure(std::move(next))));
        }
        delta.push_back(std::move(row));
    }
    std::vector<std::size_t> accepting;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t q : subsets[i])
            if (q >= nl && right.is_accepting(q - nl)) {
                accepting.push_back(i);
                break;
            }
    return Dfa(extended, subsets.size(), init, std::move(accepting), std::move(delta));
}

}  // namespace

ContextGrammar build_context_grammar(const Grammar& g, const Word& w) {
    if (g.alphabet().has_priming())
        throw std::invalid_argument("grammar alphabet already carries primed letters");
    g.validate_word(w);

    Alphabet extended = primed_extension(g.alphabet());
    Morphism h = Morphism::unpriming(extended);
    Word primed_word = extended.prime(w);

    Grammar g_ext = with_alphabet(g, extended);
    Grammar g_prime = prune_empty(inverse_morphism(g_ext, h));

    ReductionSystem base_rules = extract_reduction(g);
    std::vector<Word> patterns;
    for (const auto& r : base_rules.rules())
        patterns.push_back(r.lhs);
    Dfa irreducible =
        dfa_intersect(substring_avoiding_dfa(patterns, extended), unprimed_only_dfa(extended));
    Dfa context_dfa =
        dfa_minimize(concat_through_word(irreducible, primed_word, irreducible, extended));

    RegularIntersection gw_prime = intersect_regular_full(g_prime, context_dfa);
    Grammar gw = prune_empty(weak_omega_reduce(gw_prime.grammar));

    return {std::move(extended), std::move(h),       std::move(primed_word),
            std::move(g_prime),  std::move(irreducible), std::move(context_dfa),
            std::move(gw_prime), std::move(gw)};
}

Grammar build_gw(const Grammar& g, const Word& w) {
    return build_context_grammar(g, w).gw;
}

}  // namespace ccgram
