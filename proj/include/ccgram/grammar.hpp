#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccgram/alphabet.hpp"
#include "ccgram/symbols.hpp"

namespace ccgram {

struct Production {
    Symbol head;
    Form body;

    friend bool operator==(const Production& a, const Production& b) {
        return a.head == b.head && a.body == b.body;
    }
};

/// A context-free grammar: nonterminals are the production heads together
/// with the initial symbols; everything else appearing in a body must be a
/// terminal of the alphabet. Terminal and nonterminal names are disjoint.
///
/// Immutable after construction; all operations on grammars are pure.
class Grammar {
public:
    Grammar(Alphabet alphabet, std::vector<Symbol> initials,
            std::vector<Production> productions);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Symbol>& initials() const { return initials_; }
    const std::vector<Production>& productions() const { return productions_; }

    /// Nonterminals in first-mention order (heads in production order, then
    /// production-less initials).
    const std::vector<Symbol>& nonterminals() const { return nonterminals_; }

    bool is_nonterminal(Symbol s) const { return nonterminal_set_.count(s) != 0; }
    bool is_terminal(Symbol s) const { return alphabet_.contains(s); }

    /// Throws if the word mentions a nonterminal or an unknown symbol.
    void validate_word(const Word& w) const;
    /// Throws if the form mentions a symbol that is neither a terminal nor
    /// a nonterminal of this grammar.
    void validate_form(const Form& f) const;

private:
    Alphabet alphabet_;
    std::vector<Symbol> initials_;
    std::vector<Production> productions_;
    std::vector<Symbol> nonterminals_;
    SymbolSet nonterminal_set_;
};

/// Structural equality: same ordered alphabet, same initial list, same
/// nonterminal set and the same set of productions (order-insensitive).
bool operator==(const Grammar& a, const Grammar& b);
inline bool operator!=(const Grammar& a, const Grammar& b) { return !(a == b); }

struct parse_error : std::runtime_error {
    parse_error(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line;
    std::size_t column;
};

/// Parses the grammar file format: '#' comments, exactly one "start:"
/// line, an optional "order:" line fixing (and possibly extending) the
/// terminal order, and "A -> body | body" production lines with
/// whitespace-separated symbols, "eps" denoting the empty body.
Grammar parse_grammar(std::string_view text);

/// Renders a grammar in the file format; the output re-parses to an equal
/// grammar. Priming marks on the alphabet are not representable and are
/// dropped.
std::string format_grammar(const Grammar& g);

/// Re-targets the grammar onto another alphabet, which must contain every
/// terminal the grammar uses and must not clash with its nonterminals.
Grammar with_alphabet(const Grammar& g, const Alphabet& alphabet);

/// Productivity, minimal words and finiteness for one grammar, computed
/// once. Holds a pointer to the grammar; keep the grammar alive.
class Analysis {
public:
    explicit Analysis(const Grammar& g);

    bool productive(Symbol nonterminal) const;
    std::vector<Symbol> productive_set() const;

    /// True iff the nonterminal derives some non-empty terminal word.
    bool derives_nonempty(Symbol nonterminal) const;

    /// The lenlex-minimal word of L(G, A); absent iff the language is empty.
    const std::optional<Word>& min_word(Symbol nonterminal) const;
    /// Minimal word of a sentential form: the concatenation of the
    /// per-symbol minima; absent iff some symbol has an empty language.
    std::optional<Word> min_word(const Form& form) const;

    bool finite_language(Symbol nonterminal) const;

    const Grammar& grammar() const { return *grammar_; }

private:
    const Grammar* grammar_;
    std::vector<bool> productive_;
    std::vector<bool> nonempty_;
    std::vector<bool> infinite_;
    std::vector<std::optional<Word>> min_words_;
    std::size_t index(Symbol nonterminal) const;
};

std::vector<Symbol> productive_set(const Grammar& g);
std::optional<Word> min_word(const Grammar& g, const Form& form);
bool is_finite_language(const Grammar& g, Symbol nonterminal);

/// Removes every nonterminal with an empty language, all productions that
/// mention one, and empty-language initials. Surviving nonterminals keep
/// their languages.
Grammar prune_empty(const Grammar& g);

/// Length-stratified bounded-language table: for every nonterminal, the
/// exact set of derivable words of each length up to the bound. Computed
/// with a per-length fixpoint, so epsilon- and unit-cycles terminate.
class BoundedLanguage {
public:
    BoundedLanguage(const Grammar& g, std::size_t max_len);

    std::size_t max_len() const { return max_len_; }

    /// Words of L(G, A) of length exactly `len`.
    const WordSet& exactly(Symbol nonterminal, std::size_t len) const;
    /// Words of L(G, A) of length <= bound (bound defaults to max_len).
    WordSet words(Symbol nonterminal) const;
    WordSet words(Symbol nonterminal, std::size_t bound) const;
    /// Words of L(G, alpha) of length <= bound.
    WordSet words(const Form& form, std::size_t bound) const;
    /// Words of L(G) = union over initials, length <= bound.
    WordSet language(std::size_t bound) const;
    WordSet language() const { return language(max_len_); }

    bool contains(const Word& w) const;

    const Grammar& grammar() const { return *grammar_; }

private:
    const Grammar* grammar_;
    std::size_t max_len_;
    std::vector<std::vector<WordSet>> table_;  // [nonterminal index][length]
    std::size_t index(Symbol nonterminal) const;
    void combine(const Form& form, std::size_t total, WordSet& out) const;
};

/// { w in L(G, alpha) : |w| <= max_len }.
WordSet enumerate_words(const Grammar& g, const Form& form, std::size_t max_len);
/// { w in L(G) : |w| <= max_len }.
WordSet enumerate_language(const Grammar& g, std::size_t max_len);

/// Parses a sentential form over the grammar's symbols; "eps" is the empty
/// form, with the same per-character fallback as parse_word.
Form parse_form(std::string_view text, const Grammar& g);

}  // namespace ccgram
