#include "ccgram/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ccgram {

ReductionSystem::ReductionSystem(Alphabet alphabet, std::vector<RewriteRule> rules)
    : alphabet_(std::move(alphabet)) {
    for (const auto& r : rules) {
        for (Symbol s : r.lhs)
            alphabet_.rank(s);
        for (Symbol s : r.rhs)
            alphabet_.rank(s);
        if (lenlex_compare(r.rhs, r.lhs, alphabet_) >= 0)
            throw std::invalid_argument("rewrite rule is not strictly decreasing: " +
                                        format_word(r.lhs) + " -> " + format_word(r.rhs));
    }
    std::sort(rules.begin(), rules.end(), [&](const RewriteRule& a, const RewriteRule& b) {
        auto c = lenlex_compare(a.lhs, b.lhs, alphabet_);
        if (c != 0)
            return c < 0;
        return lenlex_less(a.rhs, b.rhs, alphabet_);
    });
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    rules_ = std::move(rules);
}

ReductionSystem extract_reduction(const Analysis& a) {
    const Grammar& g = a.grammar();
    std::vector<RewriteRule> rules;
    for (const auto& p : g.productions()) {
        auto body_min = a.min_word(p.body);
        if (!body_min)
            continue;
        const auto& head_min = a.min_word(p.head);
        if (*body_min == *head_min)
            continue;  // reflexive pairs carry nothing
        rules.push_back({std::move(*body_min), *head_min});
    }
    return ReductionSystem(g.alphabet(), std::move(rules));
}

ReductionSystem extract_reduction(const Grammar& g) {
    return extract_reduction(Analysis(g));
}

namespace {

bool matches_at(const Word& w, const Word& pattern, std::size_t pos) {
    if (pos + pattern.size() > w.size())
        return false;
    return std::equal(pattern.begin(), pattern.end(), w.begin() + pos);
}

Word replace_at(const Word& w, std::size_t pos, std::size_t len, const Word& repl) {
    Word out;
    out.reserve(w.size() - len + repl.size());
    out.insert(out.end(), w.begin(), w.begin() + pos);
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + pos + len, w.end());
    return out;
}

}  // namespace

std::vector<Word> one_step_results(const ReductionSystem& sys, const Word& w) {
    std::vector<Word> out;
    for (std::size_t pos = 0; pos < w.size(); ++pos)
        for (const auto& r : sys.rules())
            if (matches_at(w, r.lhs, pos))
                out.push_back(replace_at(w, pos, r.lhs.size(), r.rhs));
    std::sort(out.begin(), out.end(), LenLexLess{&sys.alphabet()});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_irreducible(const ReductionSystem& sys, const Word& w) {
    for (std::size_t pos = 0; pos < w.size(); ++pos)
        for (const auto& r : sys.rules())
            if (matches_at(w, r.lhs, pos))
                return false;
    return true;
}

std::optional<Word> reduce_step(const ReductionSystem& sys, const Word& w,
                                ReduceStrategy strategy) {
    if (strategy == ReduceStrategy::leftmost) {
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            for (const auto& r : sys.rules())
                if (matches_at(w, r.lhs, pos))
                    return replace_at(w, pos, r.lhs.size(), r.rhs);
        return std::nullopt;
    }
    auto results = one_step_results(sys, w);
    if (results.empty())
        return std::nullopt;
    return results.front();
}

Word normalize(const ReductionSystem& sys, const Word& w, ReduceStrategy strategy) {
    Word cur = w;
    while (auto next = reduce_step(sys, cur, strategy))
        cur = std::move(*next);
    return cur;
}

std::vector<Word> normalize_trace(const ReductionSystem& sys, const Word& w,
                                  ReduceStrategy strategy) {
    std::vector<Word> chain{w};
    while (auto next = reduce_step(sys, chain.back(), strategy))
        chain.push_back(std::move(*next));
    return chain;
}

MembershipResult member_by_reduction(const Grammar& g, const ReductionSystem& sys,
                                     const Word& w, ReduceStrategy strategy) {
    g.validate_word(w);
    Analysis a(g);
    WordSet targets;
    for (Symbol s : g.initials())
        if (const auto& m = a.min_word(s))
            targets.insert(*m);

    std::vector<Word> chain{w};
    while (true) {
        if (targets.count(chain.back()))
            return {true, std::move(chain)};
        auto next = reduce_step(sys, chain.back(), strategy);
        if (!next)
            return {false, std::move(chain)};
        chain.push_back(std::move(*next));
    }
}

// ---------------------------------------------------------------------------
// Joinability

namespace detail {

enum class JoinOutcome { joined, disjoint, budget_exhausted };

// Explores descendants of w and x breadth-first, checking for a common
// word. `disjoint` means both descendant sets were exhausted.
JoinOutcome join_search(const ReductionSystem& sys, const Word& w, const Word& x,
                        std::size_t node_budget) {
    if (w == x)
        return JoinOutcome::joined;
    WordSet seen_w{w}, seen_x{x};
    std::deque<std::pair<Word, bool>> frontier;  // word, from-w side
    frontier.push_back({w, true});
    frontier.push_back({x, false});
    if (seen_x.count(w))
        return JoinOutcome::joined;
    std::size_t expanded = 0;
    while (!frontier.empty()) {
        if (expanded >= node_budget)
            return JoinOutcome::budget_exhausted;
        auto [word, from_w] = std::move(frontier.front());
        frontier.pop_front();
        ++expanded;
        auto& mine = from_w ? seen_w : seen_x;
        auto& other = from_w ? seen_x : seen_w;
        for (auto& next : one_step_results(sys, word)) {
            if (other.count(next))
                return JoinOutcome::joined;
            if (mine.insert(next).second)
                frontier.push_back({std::move(next), from_w});
        }
    }
    return JoinOutcome::disjoint;
}

}  // namespace detail

Joinability joinable(const ReductionSystem& sys, const Word& w, const Word& x,
                     std::size_t node_budget) {
    if (node_budget == 0)
        throw std::invalid_argument("joinability budget must be positive");
    return detail::join_search(sys, w, x, node_budget) == detail::JoinOutcome::joined
               ? Joinability::joined
               : Joinability::unknown;
}

// ---------------------------------------------------------------------------
// Critical pairs

std::vector<CriticalPair> critical_pairs(const ReductionSystem& sys) {
    const auto& rules = sys.rules();
    std::vector<CriticalPair> out;
    auto add = [&](Word peak, Word a, Word b) {
        if (a == b)
            return;
        if (lenlex_less(b, a, sys.alphabet()))
            std::swap(a, b);
        CriticalPair cp{std::move(peak), std::move(a), std::move(b)};
        for (const auto& existing : out)
            if (existing.peak == cp.peak && existing.left == cp.left &&
                existing.right == cp.right)
                return;
        out.push_back(std::move(cp));
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& l1 = rules[i].lhs;
            const Word& l2 = rules[j].lhs;

            // Proper overlaps: a non-empty suffix of l1 equals a prefix of
            // l2, neither side containing the other.
            for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
                if (!std::equal(l1.end() - k, l1.end(), l2.begin()))
                    continue;
                Word peak = l1;
                peak.insert(peak.end(), l2.begin() + k, l2.end());
                Word a = replace_at(peak, 0, l1.size(), rules[i].rhs);
                Word b = replace_at(peak, l1.size() - k, l2.size(), rules[j].rhs);
                add(std::move(peak), std::move(a), std::move(b));
            }

            // Containments: l2 occurs inside l1 (same-position identical
            // applications are trivial and skipped).
            for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
                if (i == j && pos == 0 && l2.size() == l1.size())
                    continue;
                if (!matches_at(l1, l2, pos))
                    continue;
                Word a = rules[i].rhs;
                Word b = replace_at(l1, pos, l2.size(), rules[j].rhs);
                add(l1, std::move(a), std::move(b));
            }
        }
    }

    std::sort(out.begin(), out.end(), [&](const CriticalPair& a, const CriticalPair& b) {
        auto c = lenlex_compare(a.peak, b.peak, sys.alphabet());
        if (c != 0)
            return c < 0;
        c = lenlex_compare(a.left, b.left, sys.alphabet());
        if (c != 0)
            return c < 0;
        return lenlex_less(a.right, b.right, sys.alphabet());
    });
    return out;
}

ConfluenceReport confluence_report(const ReductionSystem& sys, std::size_t budget) {
    for (const auto& cp : critical_pairs(sys)) {
        if (detail::join_search(sys, cp.left, cp.right, budget) ==
            detail::JoinOutcome::joined)
            continue;
        Word nf_left = normalize(sys, cp.left, ReduceStrategy::leftmost);
        Word nf_right = normalize(sys, cp.right, ReduceStrategy::leftmost);
        if (nf_left == nf_right)
            continue;  // the two branches join after all
        // One peak, two distinct normal forms: a genuine witness.
        return {false, cp, std::make_pair(std::move(nf_left), std::move(nf_right))};
    }
    return {true, std::nullopt, std::nullopt};
}

Dfa irreducible_word_dfa(const ReductionSystem& sys) {
    std::vector<Word> patterns;
    for (const auto& r : sys.rules())
        patterns.push_back(r.lhs);
    return substring_avoiding_dfa(patterns, sys.alphabet());
}

}  // namespace ccgram
