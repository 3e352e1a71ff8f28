#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ccgram/grammar.hpp"
#include "ccgram/rewrite.hpp"
#include "ccgram/transform.hpp"

namespace ccgram {

/// The end-of-stack marker "$".
Symbol stack_bottom();
/// The context separator "#".
Symbol context_marker();

struct PdaTransition {
    std::size_t from;
    std::optional<Symbol> input;  // absent = epsilon move
    Symbol top;                   // popped stack symbol
    std::vector<Symbol> push;     // pushed sequence, top first
    std::size_t to;
};

/// A pushdown automaton accepting by "accepting state and the stack holds
/// exactly $". Runs start from <init, w, $>.
class Pda {
public:
    Pda(std::vector<std::string> state_names, std::size_t init,
        std::vector<std::size_t> accepting, Alphabet input_alphabet,
        std::vector<Symbol> stack_alphabet, std::vector<PdaTransition> transitions);

    std::size_t state_count() const { return state_names_.size(); }
    const std::string& state_name(std::size_t q) const { return state_names_[q]; }
    std::size_t init() const { return init_; }
    bool is_accepting(std::size_t q) const { return accepting_[q]; }
    std::vector<std::size_t> accepting_states() const;
    const Alphabet& input_alphabet() const { return input_alphabet_; }
    const std::vector<Symbol>& stack_alphabet() const { return stack_alphabet_; }
    const std::vector<PdaTransition>& transitions() const { return transitions_; }

    /// The first transition for (state, letter-or-epsilon, stack top), if
    /// any; on deterministic machines it is the unique one.
    const PdaTransition* find(std::size_t q, std::optional<Symbol> input, Symbol top) const;

private:
    std::vector<std::string> state_names_;
    std::size_t init_;
    std::vector<bool> accepting_;
    Alphabet input_alphabet_;
    std::vector<Symbol> stack_alphabet_;
    std::vector<PdaTransition> transitions_;
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint32_t>, std::size_t> index_;
};

/// Both determinism conditions: at most one transition per (state, input,
/// top), and no state/top carrying both an epsilon and a lettered move.
/// Violations are reported as pairs of transition indices.
struct DeterminismReport {
    bool deterministic;
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;
};
DeterminismReport is_deterministic(const Pda& m);

struct PdaConfig {
    std::size_t state;
    Word remaining;
    std::vector<Symbol> stack;  // top first; bottom is always $
};

enum class RunStatus { accept, reject, limit_exceeded };

struct RunResult {
    RunStatus status;
    std::vector<PdaConfig> trace;
};

/// Simulates a deterministic machine; accepts as soon as a configuration
/// with empty input, stack exactly $, and an accepting state is reached.
/// Throws on nondeterministic machines. A step-limit overrun is reported
/// distinctly, never as a rejection.
RunResult run(const Pda& m, const Word& w, std::size_t step_limit = 10000);

/// Structural one-turn check: from the initial state the stack never
/// shrinks (every push has length >= 1); away from it the stack never
/// grows (every push has length <= 1) and the initial state is never
/// re-entered.
bool check_one_turn(const Pda& m);

/// The left/right input buffers a context-DPDA state carries.
struct BufferState {
    Word left;
    Word right;
};

/// The context DPDA for (g, w): accepts u#v iff u w' v lies in the context
/// grammar's language, i.e. iff u and v are irreducible and u w v is in
/// L(g) (exact for Clark-congruential g). Only reachable states are built.
struct ContextDpda {
    Pda pda;
    ContextGrammar context;                         // the G_w pipeline
    ReductionSystem rules;                          // reduction system of G_w
    std::size_t buffer_bound;                       // N
    std::vector<std::optional<BufferState>> buffers;  // per state; init has none
};

ContextDpda build_context_dpda(const Grammar& g, const Word& w);

enum class EquivStatus { equal_up_to_bound, counterexample, limit_exceeded };

struct BoundedEquivResult {
    EquivStatus status;
    std::optional<Word> witness;  // lenlex-least distinguishing word
};

/// Compares acceptance of two deterministic machines on every word up to
/// the length bound, sharing work through a breadth-first trie of
/// configuration pairs. Epsilon-move runaways surface as limit_exceeded.
BoundedEquivResult bounded_equiv(const Pda& m1, const Pda& m2, std::size_t max_len,
                                 std::size_t step_limit = 10000);

/// Text dump: "init:", "accepting:", "alphabet:" headers plus one
/// transition per line as "q a sigma / rho q'", with "eps" for an epsilon
/// input or an empty push.
std::string format_pda(const Pda& m);
Pda parse_pda(std::string_view text);

}  // namespace ccgram
