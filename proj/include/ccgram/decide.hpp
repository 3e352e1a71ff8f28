#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "ccgram/dfa.hpp"
#include "ccgram/grammar.hpp"
#include "ccgram/pda.hpp"
#include "ccgram/rewrite.hpp"

namespace ccgram {

enum class Truth { yes, no, unknown };

/// The class of w under the congruence generated by () ~ eps: the unique
/// pair (m, n) with w ~ )^m (^n, computed by one left-to-right scan.
struct DyckCounts {
    std::size_t closers;  // m
    std::size_t openers;  // n
    friend bool operator==(DyckCounts a, DyckCounts b) {
        return a.closers == b.closers && a.openers == b.openers;
    }
};
DyckCounts dyck_normal_form(const Word& w, Symbol open, Symbol close);

/// A three-valued decision procedure for a congruence on words. Definite
/// answers are sound for the congruence the kind denotes; the dyck and
/// regular-syntactic kinds are exact and never answer unknown.
class CongruenceOracle {
public:
    enum class Kind { dyck, regular_syntactic, rewrite_joinability, grammar_contexts };

    /// The congruence generated by (open close) ~ eps on a two-letter
    /// alphabet. Exact.
    static CongruenceOracle dyck(Symbol open, Symbol close);
    /// The syntactic congruence of the DFA's language, decided on the
    /// transition monoid of the minimal automaton. Exact.
    static CongruenceOracle syntactic(const Dfa& d);
    /// The congruence generated by a reduction system; yes comes from a
    /// joinability certificate, everything else is unknown.
    static CongruenceOracle joinability(ReductionSystem sys, std::size_t budget);
    /// Bounded refutation against the grammar's language: no when some
    /// context up to the bound distinguishes, unknown otherwise.
    static CongruenceOracle grammar_contexts(const Grammar& g, std::size_t bound);

    Truth decide(const Word& w, const Word& x) const;
    Kind kind() const { return kind_; }

private:
    CongruenceOracle(Kind kind, std::function<Truth(const Word&, const Word&)> fn)
        : kind_(kind), fn_(std::move(fn)) {}
    Kind kind_;
    std::function<Truth(const Word&, const Word&)> fn_;
};

/// The exact syntactic-congruence oracle of a regular language.
CongruenceOracle syntactic_oracle(const Dfa& d);

struct ContextWitness {
    Word left;
    Word right;
};

struct CongruenceVerdict {
    Truth truth;
    std::optional<ContextWitness> witness;  // set on no
    std::size_t bound;                      // the context bound that was used
};

/// Three-valued syntactic congruence w.r.t. L(g) for a Clark-congruential
/// grammar (a caller-asserted precondition): yes from a joinability
/// certificate in the grammar's reduction system; no from a distinguishing
/// context found by comparing the context DPDAs of w and x up to the
/// bound, cross-checked against the enumerated language; unknown when the
/// bounds run out.
CongruenceVerdict congruent(const Grammar& g, const Word& w, const Word& x,
                            std::size_t bound = 8, std::size_t join_budget = 10000);

struct EquivVerdict {
    Truth truth;
    std::optional<Word> witness;  // a word in exactly one language, on no
};

/// Language equivalence of two Clark-congruential grammars, decided
/// through the four inclusions: the minimal words of each side's initials
/// belong to the other language, and each side's reduction rules are
/// congruences of the other language. Refutations carry the lenlex-least
/// witness word found.
EquivVerdict cc_equiv(const Grammar& g1, const Grammar& g2, std::size_t bound = 8,
                      std::size_t join_budget = 10000);

struct AlignmentVerdict {
    Truth truth;
    std::optional<Production> witness;  // first offending production, on no
};

/// Alignment of a grammar with a decidable congruence: after pruning
/// empty-language nonterminals, checks min(A) ~ min(alpha) for every
/// production A -> alpha.
AlignmentVerdict is_aligned(const Grammar& g, const CongruenceOracle& oracle);

/// Exact Clark-congruentiality check for a grammar whose language is given
/// as a DFA; the claim L(d) = L(g) is sanity-checked on all words up to
/// the bound and a mismatch is an error.
AlignmentVerdict is_cc_regular_case(const Grammar& g, const Dfa& d,
                                    std::size_t sanity_bound = 8);

}  // namespace ccgram
