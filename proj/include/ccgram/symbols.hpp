#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ccgram {

/// An interned symbol name. Construction interns the name into a
/// process-wide table, so equality and hashing are O(1).
///
/// The `<` order is interning order; it is stable within a process but
/// carries no linguistic meaning. Use Alphabet::rank for the terminal
/// order.
class Symbol {
public:
    Symbol() : id_(0) {}
    explicit Symbol(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const { return id_; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
    friend bool operator<(Symbol a, Symbol b) { return a.id_ < b.id_; }

private:
    std::uint32_t id_;
};

/// A word: a sequence of terminal symbols. The empty vector is epsilon.
using Word = std::vector<Symbol>;

/// A sentential form: a sequence that may mix terminals and nonterminals.
using Form = std::vector<Symbol>;

struct SymbolHash {
    std::size_t operator()(Symbol s) const { return s.id(); }
};

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (Symbol s : w) {
            h ^= s.id();
            h *= 1099511628211ull;
        }
        return h;
    }
};

using WordSet = std::unordered_set<Word, WordHash>;
using SymbolSet = std::unordered_set<Symbol, SymbolHash>;

/// Concatenated symbol names; "eps" for the empty word.
std::string format_word(const Word& w);

/// Concatenated symbol names; empty string for the empty word.
std::string format_symbols(const Word& w);

/// Space-separated symbol names; "eps" for the empty word. This form is
/// unambiguous for multi-character symbols and is what the file formats use.
std::string format_word_spaced(const Word& w);

}  // namespace ccgram
