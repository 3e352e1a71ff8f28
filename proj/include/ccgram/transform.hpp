#pragma once

#include <unordered_map>
#include <vector>

#include "ccgram/dfa.hpp"
#include "ccgram/grammar.hpp"
#include "ccgram/rewrite.hpp"

namespace ccgram {

/// A strictly alphabetic morphism: a total letter-to-letter map on its
/// domain alphabet, extended pointwise to words.
class Morphism {
public:
    Morphism(Alphabet domain, std::unordered_map<Symbol, Symbol, SymbolHash> mapping);

    /// The identity morphism.
    static Morphism identity(const Alphabet& domain);
    /// The unpriming morphism of a primed alphabet: a |-> a, a' |-> a.
    static Morphism unpriming(const Alphabet& primed_alphabet);

    const Alphabet& domain() const { return domain_; }
    Symbol apply(Symbol a) const;
    Word apply(const Word& w) const;
    const std::vector<Symbol>& preimages(Symbol a) const;

private:
    Alphabet domain_;
    std::unordered_map<Symbol, Symbol, SymbolHash> map_;
    std::unordered_map<Symbol, std::vector<Symbol>, SymbolHash> preimages_;
    std::vector<Symbol> no_preimages_;
};

/// Weak omega-reduction: non-initial nonterminals with a finite language
/// are eliminated by substituting their full languages into production
/// bodies. Surviving nonterminals keep their languages exactly, and the
/// transformation preserves Clark-congruentiality.
Grammar weak_omega_reduce(const Grammar& g);

/// The exact (finite) language of a finite-language nonterminal.
WordSet finite_language(const Analysis& a, Symbol nonterminal);

/// Inverse image under a strictly alphabetic morphism: every terminal
/// occurrence in every body is replaced by each of its preimages. The
/// result is a grammar over the morphism's domain with
/// L(result, A) = h^-1(L(g, A)) for every nonterminal A.
Grammar inverse_morphism(const Grammar& g, const Morphism& h);

/// A nonterminal of a regular intersection: the source nonterminal
/// together with the syntactic class (a transition-monoid element) its
/// words realize.
struct AnnotatedNonterminal {
    Symbol symbol;       // the fresh nonterminal in the result grammar
    Symbol base;         // the source nonterminal
    std::size_t cls;     // element index in the monoid
};

/// Regular intersection with annotations and the monoid retained for
/// inspection; L(grammar, A^e) = L(g, A) restricted to the class e, and
/// the overall language is L(g) intersected with the DFA's language.
/// Unproductive annotated nonterminals are pruned.
struct RegularIntersection {
    Grammar grammar;
    TransitionMonoid monoid;
    std::vector<AnnotatedNonterminal> annotations;

    const AnnotatedNonterminal& annotation(Symbol nonterminal) const;
};

RegularIntersection intersect_regular_full(const Grammar& g, const Dfa& d);
Grammar intersect_regular(const Grammar& g, const Dfa& d);

/// The context-grammar pipeline for a word w over the grammar's alphabet:
/// prime the alphabet, take the inverse image under the unpriming
/// morphism, intersect with R w' R where R is the set of irreducible
/// unprimed words, then weakly omega-reduce. Empty-language nonterminals
/// are pruned after every stage. The result's language is
///   { u w' v : u, v irreducible over the base alphabet, u w v in L(g) }.
struct ContextGrammar {
    Alphabet extended;            // base alphabet plus primed copies
    Morphism unprime;             // h
    Word primed_word;             // w'
    Grammar g_prime;              // inverse image of g under h, pruned
    Dfa irreducible_dfa;          // R
    Dfa context_dfa;              // R w' R
    RegularIntersection gw_prime; // before omega-reduction, pruned
    Grammar gw;                   // the final context grammar
};

ContextGrammar build_context_grammar(const Grammar& g, const Word& w);
Grammar build_gw(const Grammar& g, const Word& w);

}  // namespace ccgram
