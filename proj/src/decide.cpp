#include "ccgram/decide.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "ccgram/transform.hpp"

namespace ccgram {

DyckCounts dyck_normal_form(const Word& w, Symbol open, Symbol close) {
    if (open == close)
        throw std::invalid_argument("open and close must differ");
    DyckCounts c{0, 0};
    for (Symbol s : w) {
        if (s == open) {
            ++c.openers;
        } else if (s == close) {
            if (c.openers > 0)
                --c.openers;  // cancel an () pair
            else
                ++c.closers;
        } else {
            throw std::invalid_argument("symbol outside {" + open.name() + "," +
                                        close.name() + "}: " + s.name());
        }
    }
    return c;
}

CongruenceOracle CongruenceOracle::dyck(Symbol open, Symbol close) {
    return CongruenceOracle(Kind::dyck, [open, close](const Word& w, const Word& x) {
        return dyck_normal_form(w, open, close) == dyck_normal_form(x, open, close)
                   ? Truth::yes
                   : Truth::no;
    });
}

CongruenceOracle CongruenceOracle::syntactic(const Dfa& d) {
    auto monoid = std::make_shared<TransitionMonoid>(d);
    return CongruenceOracle(Kind::regular_syntactic,
                            [monoid](const Word& w, const Word& x) {
                                return monoid->element_of(w) == monoid->element_of(x)
                                           ? Truth::yes
                                           : Truth::no;
                            });
}

CongruenceOracle CongruenceOracle::joinability(ReductionSystem sys, std::size_t budget) {
    auto shared = std::make_shared<ReductionSystem>(std::move(sys));
    return CongruenceOracle(Kind::rewrite_joinability,
                            [shared, budget](const Word& w, const Word& x) {
                                return joinable(*shared, w, x, budget) ==
                                               Joinability::joined
                                           ? Truth::yes
                                           : Truth::unknown;
                            });
}

CongruenceOracle CongruenceOracle::grammar_contexts(const Grammar& g, std::size_t bound) {
    struct State {
        Grammar g;
        std::size_t bound;
        std::optional<BoundedLanguage> lang;
        std::size_t lang_len = 0;
    };
    auto st = std::make_shared<State>(State{g, bound, std::nullopt, 0});
    return CongruenceOracle(
        Kind::grammar_contexts, [st](const Word& w, const Word& x) {
            std::size_t need = 2 * st->bound + std::max(w.size(), x.size());
            if (!st->lang || st->lang_len < need) {
                st->lang.emplace(st->g, need);
                st->lang_len = need;
            }
            auto member = [&](Word u, const Word& mid, const Word& v) {
                u.insert(u.end(), mid.begin(), mid.end());
                u.insert(u.end(), v.begin(), v.end());
                return st->lang->contains(u);
            };
            for (const Word& u : all_words_up_to(st->g.alphabet(), st->bound))
                for (const Word& v : all_words_up_to(st->g.alphabet(), st->bound))
                    if (member(u, w, v) != member(u, x, v))
                        return Truth::no;
            return Truth::unknown;  // bounded agreement proves nothing
        });
}

Truth CongruenceOracle::decide(const Word& w, const Word& x) const {
    return fn_(w, x);
}

CongruenceOracle syntactic_oracle(const Dfa& d) {
    return CongruenceOracle::syntactic(d);
}

// ---------------------------------------------------------------------------
// Word congruence

namespace {

Word splice(const Word& u, const Word& mid, const Word& v) {
    Word out = u;
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

CongruenceVerdict congruent(const Grammar& g, const Word& w, const Word& x,
                            std::size_t bound, std::size_t join_budget) {
    g.validate_word(w);
    g.validate_word(x);

    ReductionSystem sys = extract_reduction(g);
    if (joinable(sys, w, x, join_budget) == Joinability::joined)
        return {Truth::yes, std::nullopt, bound};

    ContextDpda mw = build_context_dpda(g, w);
    ContextDpda mx = build_context_dpda(g, x);
    auto r = bounded_equiv(mw.pda, mx.pda, bound);
    if (r.status != EquivStatus::counterexample)
        return {Truth::unknown, std::nullopt, bound};

    // The distinguishing input must have the u#v shape: anything else lies
    // in neither language.
    const Word& y = *r.witness;
    auto sep = std::find(y.begin(), y.end(), context_marker());
    if (sep == y.end() || std::find(sep + 1, y.end(), context_marker()) != y.end())
        throw std::logic_error("counterexample is not a context word");
    ContextWitness witness{Word(y.begin(), sep), Word(sep + 1, y.end())};

    // Cross-check the witness against the enumerated language.
    Word uwv = splice(witness.left, w, witness.right);
    Word uxv = splice(witness.left, x, witness.right);
    BoundedLanguage lang(g, std::max(uwv.size(), uxv.size()));
    if (lang.contains(uwv) == lang.contains(uxv))
        throw std::logic_error(
            "context witness failed the enumeration cross-check; "
            "the grammar is likely not Clark-congruential");
    return {Truth::no, std::move(witness), bound};
}

// ---------------------------------------------------------------------------
// Grammar equivalence

EquivVerdict cc_equiv(const Grammar& g1, const Grammar& g2, std::size_t bound,
                      std::size_t join_budget) {
    // The two grammars may declare their terminals in different orders or
    // use different letter sets; both sides are re-targeted onto one
    // shared alphabet (g1's order first, then g2's extras).
    std::vector<Symbol> merged = g1.alphabet().terminals();
    for (Symbol s : g2.alphabet().terminals())
        if (!g1.alphabet().contains(s))
            merged.push_back(s);
    Alphabet shared{merged};
    Grammar a = with_alphabet(g1, shared);
    Grammar b = with_alphabet(g2, shared);

    Analysis an_a(a), an_b(b);
    ReductionSystem sys_a = extract_reduction(an_a);
    ReductionSystem sys_b = extract_reduction(an_b);

    std::vector<Word> refutations;
    bool saw_unknown = false;

    auto check_t_inclusion = [&](const Grammar& from, const Analysis& an,
                                 const Grammar& to, const ReductionSystem& to_sys) {
        for (Symbol s : from.initials()) {
            const auto& t = an.min_word(s);
            if (!t)
                continue;
            if (!member_by_reduction(to, to_sys, *t).member)
                refutations.push_back(*t);  // in one language, not the other
        }
    };
    check_t_inclusion(a, an_a, b, sys_b);
    check_t_inclusion(b, an_b, a, sys_a);

    auto check_rules = [&](const ReductionSystem& rules, const Grammar& same,
                           const ReductionSystem& same_sys, const Grammar& other,
                           const ReductionSystem& other_sys) {
        for (const auto& rule : rules.rules()) {
            auto verdict = congruent(other, rule.lhs, rule.rhs, bound, join_budget);
            if (verdict.truth == Truth::unknown) {
                saw_unknown = true;
                continue;
            }
            if (verdict.truth == Truth::yes)
                continue;
            // The context separates the sides in `other`; since the rule is
            // a congruence of `same`, one instantiated word tells the
            // languages apart.
            bool found = false;
            for (const Word* side : {&rule.lhs, &rule.rhs}) {
                Word word = splice(verdict.witness->left, *side, verdict.witness->right);
                bool in_same = member_by_reduction(same, same_sys, word).member;
                bool in_other = member_by_reduction(other, other_sys, word).member;
                if (in_same != in_other) {
                    refutations.push_back(std::move(word));
                    found = true;
                }
            }
            if (!found)
                throw std::logic_error(
                    "memberships of a separated context agree on both grammars; "
                    "an input is likely not Clark-congruential");
        }
    };
    check_rules(sys_a, a, sys_a, b, sys_b);
    check_rules(sys_b, b, sys_b, a, sys_a);

    if (!refutations.empty()) {
        std::sort(refutations.begin(), refutations.end(), LenLexLess{&shared});
        return {Truth::no, refutations.front()};
    }
    if (saw_unknown)
        return {Truth::unknown, std::nullopt};
    return {Truth::yes, std::nullopt};
}

// ---------------------------------------------------------------------------
// Alignment

AlignmentVerdict is_aligned(const Grammar& g, const CongruenceOracle& oracle) {
    Grammar pruned = prune_empty(g);
    Analysis an(pruned);
    bool saw_unknown = false;
    for (const auto& p : pruned.productions()) {
        const auto& head_min = an.min_word(p.head);
        auto body_min = an.min_word(p.body);
        switch (oracle.decide(*head_min, *body_min)) {
            case Truth::yes:
                break;
            case Truth::no:
                return {Truth::no, p};
            case Truth::unknown:
                saw_unknown = true;
                break;
        }
    }
    return {saw_unknown ? Truth::unknown : Truth::yes, std::nullopt};
}

AlignmentVerdict is_cc_regular_case(const Grammar& g, const Dfa& d,
                                    std::size_t sanity_bound) {
    Dfa aligned = d.reindexed(g.alphabet());
    BoundedLanguage lang(g, sanity_bound);
    for (const Word& w : all_words_up_to(g.alphabet(), sanity_bound))
        if (dfa_member(aligned, w) != lang.contains(w))
            throw std::runtime_error(
                "the DFA and the grammar disagree on \"" + format_word(w) +
                "\"; the DFA must accept exactly the grammar's language");
    return is_aligned(g, syntactic_oracle(aligned));
}

}  // namespace ccgram
