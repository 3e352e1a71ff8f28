#pragma once

#include <compare>
#include <cstddef>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccgram/symbols.hpp"

namespace ccgram {

/// A finite terminal alphabet carrying the total order used by the
/// length-lexicographic word order. The terminal list is the order:
/// earlier means smaller.
///
/// When the priming construction is active the alphabet additionally
/// partitions into the unprimed half and a disjoint bijective primed copy.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> terminals);

    const std::vector<Symbol>& terminals() const { return terminals_; }
    std::size_t size() const { return terminals_.size(); }
    bool contains(Symbol a) const { return ranks_.count(a) != 0; }

    /// Position of `a` in the order. Throws std::invalid_argument for
    /// symbols outside the alphabet.
    std::size_t rank(Symbol a) const;

    bool has_priming() const { return !primed_.empty(); }
    const std::vector<Symbol>& unprimed() const { return unprimed_; }
    const std::vector<Symbol>& primed() const { return primed_; }
    bool is_primed(Symbol a) const { return base_of_.count(a) != 0; }
    Symbol prime_of(Symbol a) const;
    Symbol base_of(Symbol a) const;

    /// Primes every letter of `w` (priming must be active).
    Word prime(const Word& w) const;
    /// Strips primes; unprimed letters are fixed.
    Word unprime(const Word& w) const;

    /// Equality compares the ordered terminal list only; priming marks are
    /// presentation metadata and do not affect the order.
    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.terminals_ == b.terminals_;
    }
    friend bool operator!=(const Alphabet& a, const Alphabet& b) {
        return !(a == b);
    }

private:
    std::vector<Symbol> terminals_;
    std::unordered_map<Symbol, std::size_t, SymbolHash> ranks_;

    std::vector<Symbol> unprimed_;
    std::vector<Symbol> primed_;
    std::unordered_map<Symbol, Symbol, SymbolHash> prime_of_;
    std::unordered_map<Symbol, Symbol, SymbolHash> base_of_;

    friend Alphabet primed_extension(const Alphabet& base);
};

/// Extends `base` with a fresh primed copy of every letter: the result
/// orders all of Sigma_0 before all of Sigma_1, each half keeping the
/// base's relative order. Primed names are the base name with an
/// apostrophe appended (more are appended if that name is taken).
Alphabet primed_extension(const Alphabet& base);

/// Length-lexicographic comparison: shorter words first, equal lengths
/// compared letter-wise by the alphabet order.
std::strong_ordering lenlex_compare(const Word& x, const Word& y, const Alphabet& a);

bool lenlex_less(const Word& x, const Word& y, const Alphabet& a);

struct LenLexLess {
    const Alphabet* alphabet;
    bool operator()(const Word& x, const Word& y) const {
        return lenlex_less(x, y, *alphabet);
    }
};

std::vector<Word> lenlex_sorted(std::vector<Word> words, const Alphabet& a);
std::vector<Word> lenlex_sorted(const WordSet& words, const Alphabet& a);

/// All words of length <= max_len, in increasing lenlex order.
std::vector<Word> all_words_up_to(const Alphabet& a, std::size_t max_len);

/// Parses a word: "eps" is the empty word; otherwise whitespace-separated
/// symbol names, with a fallback to per-character splitting when the text
/// is a single token that is not itself a symbol.
Word parse_word(std::string_view text, const Alphabet& a);

}  // namespace ccgram
