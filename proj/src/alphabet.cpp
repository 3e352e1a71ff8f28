#include "ccgram/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccgram {

Alphabet::Alphabet(std::vector<Symbol> terminals) : terminals_(std::move(terminals)) {
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
        if (!ranks_.emplace(terminals_[i], i).second)
            throw std::invalid_argument("duplicate terminal in alphabet: " +
                                        terminals_[i].name());
    }
}

std::size_t Alphabet::rank(Symbol a) const {
    auto it = ranks_.find(a);
    if (it == ranks_.end())
        throw std::invalid_argument("symbol not in alphabet: " + a.name());
    return it->second;
}

Symbol Alphabet::prime_of(Symbol a) const {
    auto it = prime_of_.find(a);
    if (it == prime_of_.end())
        throw std::invalid_argument("no primed copy for symbol: " + a.name());
    return it->second;
}

Symbol Alphabet::base_of(Symbol a) const {
    auto it = base_of_.find(a);
    if (it == base_of_.end())
        throw std::invalid_argument("symbol is not primed: " + a.name());
    return it->second;
}

Word Alphabet::prime(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Symbol s : w)
        out.push_back(prime_of(s));
    return out;
}

Word Alphabet::unprime(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Symbol s : w) {
        auto it = base_of_.find(s);
        out.push_back(it == base_of_.end() ? s : it->second);
    }
    return out;
}

Alphabet primed_extension(const Alphabet& base) {
    if (base.has_priming())
        throw std::invalid_argument("alphabet already carries a primed copy");
    std::vector<Symbol> all = base.terminals();
    SymbolSet taken(all.begin(), all.end());
    std::vector<Symbol> primes;
    primes.reserve(all.size());
    for (Symbol s : base.terminals()) {
        std::string name = s.name() + "'";
        while (taken.count(Symbol(name)))
            name += "'";
        Symbol p{name};
        taken.insert(p);
        primes.push_back(p);
    }
    all.insert(all.end(), primes.begin(), primes.end());

    Alphabet out(std::move(all));
    out.unprimed_ = base.terminals();
    out.primed_ = primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        out.prime_of_.emplace(base.terminals()[i], primes[i]);
        out.base_of_.emplace(primes[i], base.terminals()[i]);
    }
    return out;
}

std::strong_ordering lenlex_compare(const Word& x, const Word& y, const Alphabet& a) {
    if (x.size() != y.size())
        return x.size() <=> y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t rx = a.rank(x[i]);
        std::size_t ry = a.rank(y[i]);
        if (rx != ry)
            return rx <=> ry;
    }
    return std::strong_ordering::equal;
}

bool lenlex_less(const Word& x, const Word& y, const Alphabet& a) {
    return lenlex_compare(x, y, a) < 0;
}

std::vector<Word> lenlex_sorted(std::vector<Word> words, const Alphabet& a) {
    std::sort(words.begin(), words.end(), LenLexLess{&a});
    return words;
}

std::vector<Word> lenlex_sorted(const WordSet& words, const Alphabet& a) {
    return lenlex_sorted(std::vector<Word>(words.begin(), words.end()), a);
}

std::vector<Word> all_words_up_to(const Alphabet& a, std::size_t max_len) {
    std::vector<Word> out;
    out.push_back({});
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Symbol s : a.terminals()) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        level_begin = level_end;
        if (a.size() == 0)
            break;
    }
    return out;
}

namespace {

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i > start)
            tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& a) {
    auto tokens = split_tokens(text);
    if (tokens.size() == 1 && tokens[0] == "eps")
        return {};
    Word out;
    bool all_known = true;
    for (const auto& t : tokens) {
        Symbol s{t};
        if (!a.contains(s))
            all_known = false;
        out.push_back(s);
    }
    if (all_known && !tokens.empty())
        return out;
    if (tokens.size() == 1) {
        // Per-character fallback for compact single-character alphabets.
        out.clear();
        for (char c : tokens[0]) {
            Symbol s{std::string_view(&c, 1)};
            if (!a.contains(s))
                throw std::invalid_argument("symbol not in alphabet: " +
                                            std::string(1, c));
            out.push_back(s);
        }
        return out;
    }
    if (tokens.empty())
        throw std::invalid_argument("empty word (use \"eps\" for the empty word)");
    for (const auto& t : tokens)
        if (!a.contains(Symbol(t)))
            throw std::invalid_argument("symbol not in alphabet: " + t);
    return out;
}

}  // namespace ccgram
