#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ccgram/alphabet.hpp"
#include "ccgram/symbols.hpp"

namespace ccgram {

/// A total deterministic finite automaton. The transition table is indexed
/// by state and by the rank of the letter in the alphabet.
class Dfa {
public:
    Dfa(Alphabet alphabet, std::size_t state_count, std::size_t init,
        std::vector<std::size_t> accepting,
        std::vector<std::vector<std::size_t>> delta);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return delta_.size(); }
    std::size_t init() const { return init_; }
    bool is_accepting(std::size_t q) const { return accepting_[q]; }
    std::vector<std::size_t> accepting_states() const;

    std::size_t step(std::size_t q, Symbol a) const {
        return delta_[q][alphabet_.rank(a)];
    }
    std::size_t step_rank(std::size_t q, std::size_t letter_rank) const {
        return delta_[q][letter_rank];
    }
    std::size_t run(const Word& w) const;

    /// Same automaton with the letter columns re-indexed to another
    /// alphabet over the same symbol set.
    Dfa reindexed(const Alphabet& target) const;

    friend bool operator==(const Dfa& a, const Dfa& b) {
        return a.alphabet_ == b.alphabet_ && a.init_ == b.init_ &&
               a.accepting_ == b.accepting_ && a.delta_ == b.delta_;
    }

private:
    Alphabet alphabet_;
    std::size_t init_;
    std::vector<bool> accepting_;
    std::vector<std::vector<std::size_t>> delta_;
};

bool dfa_member(const Dfa& d, const Word& w);
Dfa dfa_complement(const Dfa& d);
/// Product automaton over the shared letter set (d2 may order it
/// differently); only reachable pairs are materialized.
Dfa dfa_intersect(const Dfa& d1, const Dfa& d2);
/// Canonical minimal DFA: reachable-state restriction, Moore partition
/// refinement, then breadth-first renumbering in alphabet order.
Dfa dfa_minimize(const Dfa& d);

/// Accepts exactly the words over the alphabet (0 or 1 states beyond none).
Dfa dfa_none(const Alphabet& a);  // empty language
Dfa dfa_all(const Alphabet& a);   // full language

/// Accepts exactly the words containing no pattern as a factor: a keyword
/// tree with failure links, collapsed onto a dead state at every match,
/// then complemented. An empty pattern set yields the full language; an
/// epsilon pattern yields the empty language.
Dfa substring_avoiding_dfa(const std::vector<Word>& patterns, const Alphabet& a);

/// One element of a DFA's transition monoid: the state map some word
/// induces, together with the lenlex-least word found to induce it.
struct MonoidElement {
    std::vector<std::size_t> map;
    Word witness;
};

/// The transition monoid of the (minimized) automaton, discovered by a
/// breadth-first walk from the identity that extends witnesses in alphabet
/// order, so every witness is the lenlex-least word for its element. Two
/// words are syntactically congruent for the DFA's language iff they map
/// to the same element.
class TransitionMonoid {
public:
    explicit TransitionMonoid(const Dfa& d);

    const Dfa& dfa() const { return dfa_; }
    const std::vector<MonoidElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    std::size_t identity() const { return 0; }
    std::size_t letter_element(Symbol a) const;
    std::size_t compose(std::size_t e, std::size_t f) const { return table_[e][f]; }
    std::size_t element_of(const Word& w) const;

    /// True when the element's class lies inside the language.
    bool accepting_class(std::size_t e) const;

    /// Representative set C: the witnesses, in element discovery order.
    std::vector<Word> representatives() const;

private:
    Dfa dfa_;
    std::vector<MonoidElement> elements_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> letter_elem_;
};

TransitionMonoid transition_monoid(const Dfa& d);

/// DFA file format: "states:", "init:", "accepting:" lines plus one
/// "q a -> q'" line per transition; '#' starts a comment. The alphabet is
/// the letters in first-occurrence order; the table must be total.
Dfa parse_dfa(std::string_view text);
std::string format_dfa(const Dfa& d);

}  // namespace ccgram
