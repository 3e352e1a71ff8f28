#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccgram/dfa.hpp"
#include "ccgram/grammar.hpp"

namespace ccgram {

/// One rewrite rule; the right side is strictly lenlex-smaller than the
/// left, so every system is Noetherian.
struct RewriteRule {
    Word lhs;
    Word rhs;

    friend bool operator==(const RewriteRule& a, const RewriteRule& b) {
        return a.lhs == b.lhs && a.rhs == b.rhs;
    }
};

/// A finite set of strictly decreasing rules, stored deduplicated in
/// lenlex order of (lhs, rhs).
class ReductionSystem {
public:
    ReductionSystem(Alphabet alphabet, std::vector<RewriteRule> rules);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }

private:
    Alphabet alphabet_;
    std::vector<RewriteRule> rules_;
};

/// The reduction system of a grammar: one rule min(alpha) -> min(A) per
/// production A -> alpha whose body has a non-empty language, with
/// reflexive rules dropped.
ReductionSystem extract_reduction(const Grammar& g);
ReductionSystem extract_reduction(const Analysis& a);

enum class ReduceStrategy {
    leftmost,        // leftmost match position, rules tried in rule order
    minimal_result,  // the lenlex-least among all single-step results
};

/// All single-step results, deduplicated, in lenlex order.
std::vector<Word> one_step_results(const ReductionSystem& sys, const Word& w);

bool is_irreducible(const ReductionSystem& sys, const Word& w);

/// One reduction step; absent iff the word is irreducible.
std::optional<Word> reduce_step(const ReductionSystem& sys, const Word& w,
                                ReduceStrategy strategy);

/// Iterated reduce_step until irreducible. Terminates: every step is a
/// strict lenlex decrease.
Word normalize(const ReductionSystem& sys, const Word& w, ReduceStrategy strategy);

/// The whole chain w = w0, w1, ..., wr with wr irreducible.
std::vector<Word> normalize_trace(const ReductionSystem& sys, const Word& w,
                                  ReduceStrategy strategy);

/// Reduction-based membership: walks a reduction chain from w and answers
/// true as soon as the current word equals min(A) for a productive initial
/// A, false when the chain ends elsewhere. Exact only when the caller
/// guarantees the grammar is Clark-congruential; the chain is reported
/// either way.
struct MembershipResult {
    bool member;
    std::vector<Word> chain;  // words visited, first is the input
    std::size_t steps() const { return chain.size() - 1; }
};
MembershipResult member_by_reduction(const Grammar& g, const ReductionSystem& sys,
                                     const Word& w,
                                     ReduceStrategy strategy = ReduceStrategy::leftmost);

enum class Joinability { joined, unknown };

/// Breadth-first search of the two reduction graphs for a common
/// descendant, memoized, stopping after expanding `node_budget` words.
/// `joined` certifies that w and x are congruent for the congruence the
/// system generates; `unknown` certifies nothing.
Joinability joinable(const ReductionSystem& sys, const Word& w, const Word& x,
                     std::size_t node_budget);

/// Critical pair: a peak word with two distinct one-step results, obtained
/// from overlapping or contained left-hand sides.
struct CriticalPair {
    Word peak;
    Word left;
    Word right;
};

std::vector<CriticalPair> critical_pairs(const ReductionSystem& sys);

/// Joins every critical pair within the budget. A peak with two distinct
/// normal forms witnesses non-confluence outright; when every pair joins,
/// the system is reported confluent up to the budget.
struct ConfluenceReport {
    bool confluent;
    std::optional<CriticalPair> witness;            // the offending peak
    std::optional<std::pair<Word, Word>> normal_forms;
};
ConfluenceReport confluence_report(const ReductionSystem& sys, std::size_t budget);

/// DFA for the irreducible words: the factor-avoiding automaton of the
/// left-hand sides.
Dfa irreducible_word_dfa(const ReductionSystem& sys);

}  // namespace ccgram
