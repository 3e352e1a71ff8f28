#include "ccgram/symbols.hpp"

#include <mutex>
#include <unordered_map>

namespace ccgram {

namespace {

struct SymbolTable {
    std::mutex mutex;
    std::vector<std::string> names;
    std::unordered_map<std::string_view, std::uint32_t> ids;

    SymbolTable() {
        names.reserve(256);
        names.emplace_back("");  // id 0: the empty name
        ids.emplace(names.back(), 0);
    }

    std::uint32_t intern(std::string_view name) {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = ids.find(name);
        if (it != ids.end())
            return it->second;
        names.emplace_back(name);
        auto id = static_cast<std::uint32_t>(names.size() - 1);
        ids.emplace(names.back(), id);
        return id;
    }

    const std::string& name_of(std::uint32_t id) {
        std::lock_guard<std::mutex> lock(mutex);
        return names[id];
    }
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(table().intern(name)) {}

const std::string& Symbol::name() const {
    return table().name_of(id_);
}

std::string format_word(const Word& w) {
    if (w.empty())
        return "eps";
    return format_symbols(w);
}

std::string format_symbols(const Word& w) {
    std::string out;
    for (Symbol s : w)
        out += s.name();
    return out;
}

std::string format_word_spaced(const Word& w) {
    if (w.empty())
        return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += w[i].name();
    }
    return out;
}

}  // namespace ccgram
