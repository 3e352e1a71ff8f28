#include "ccgram/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccgram/decide.hpp"
#include "ccgram/grammar.hpp"
#include "ccgram/pda.hpp"
#include "ccgram/rewrite.hpp"
#include "ccgram/transform.hpp"

namespace ccgram::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Grammar load_grammar(const std::string& path) {
    return parse_grammar(read_file(path));
}

Dfa load_dfa(const std::string& path) {
    return parse_dfa(read_file(path));
}

ReduceStrategy strategy_of(const std::string& name) {
    if (name == "leftmost")
        return ReduceStrategy::leftmost;
    if (name == "minimal" || name == "minimal-result")
        return ReduceStrategy::minimal_result;
    throw std::runtime_error("unknown strategy: " + name);
}

// Morphism file: one "a -> b" line per mapped letter; '#' comments.
// Letters of the grammar that the file leaves unmapped map to themselves;
// letters the file introduces extend the alphabet (in file order).
Morphism parse_morphism_file(const std::string& text, const Grammar& g) {
    std::vector<std::pair<Symbol, Symbol>> pairs;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto pos = raw.find('#'); pos != std::string::npos)
            raw.resize(pos);
        std::istringstream ls(raw);
        std::vector<std::string> tokens;
        std::string t;
        while (ls >> t)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        if (tokens.size() != 3 || tokens[1] != "->")
            throw parse_error(lineno, 1, "expected \"a -> b\" in morphism file");
        pairs.emplace_back(Symbol(tokens[0]), Symbol(tokens[2]));
    }

    std::vector<Symbol> letters = g.alphabet().terminals();
    SymbolSet seen(letters.begin(), letters.end());
    for (const auto& [from, to] : pairs) {
        if (seen.insert(from).second)
            letters.push_back(from);
        if (seen.insert(to).second)
            letters.push_back(to);
    }
    Alphabet domain{letters};
    std::unordered_map<Symbol, Symbol, SymbolHash> mapping;
    for (const auto& [from, to] : pairs)
        if (!mapping.emplace(from, to).second)
            throw std::runtime_error("morphism maps " + from.name() + " twice");
    for (Symbol a : domain.terminals())
        mapping.emplace(a, a);
    return Morphism(std::move(domain), std::move(mapping));
}

int truth_status(Truth t) {
    switch (t) {
        case Truth::yes:
            return 0;
        case Truth::no:
            return 1;
        case Truth::unknown:
            return 2;
    }
    return 11;
}

std::string context_str(const ContextWitness& w) {
    return format_symbols(w.left) + "#" + format_symbols(w.right);
}

std::string production_str(const Production& p) {
    return p.head.name() + " -> " + format_word_spaced(p.body);
}

void warn_cc_assumption(std::ostream& err, bool trusted, bool certified) {
    if (!trusted && !certified)
        err << "warning: the verdict assumes the grammar is Clark-congruential; "
               "pass --trust-cc to silence this warning\n";
}

// Runs the exact regular-case check; yes certifies, no is a hard error.
bool certify_cc(const Grammar& g, const std::string& dfa_path) {
    auto verdict = is_cc_regular_case(g, load_dfa(dfa_path));
    if (verdict.truth == Truth::no)
        throw std::runtime_error("grammar is not Clark-congruential: production " +
                                 production_str(*verdict.witness) + " is misaligned");
    return verdict.truth == Truth::yes;
}

void print_config(std::ostream& out, const Pda& m, const PdaConfig& c) {
    out << "  <" << m.state_name(c.state) << ", " << format_word(c.remaining) << ", ";
    for (Symbol s : c.stack)
        out << s.name();
    out << ">\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"grammar analysis toolkit for Clark-congruential grammars"};
    app.require_subcommand(1);

    std::string grammar_path, grammar2_path, dfa_path, pda_path, map_path, cc_dfa_path,
        cc_dfa2_path;
    std::string word_text, word2_text, form_text, oracle_spec, context_word;
    std::string strategy_name = "leftmost";
    std::size_t bound = 8, budget = 10000, step_limit = 10000, length = 0;
    bool trace = false, trust_cc = false, emit = false;
    bool flag_omega = false;

    auto* minword = app.add_subcommand("minword", "minimal word of a sentential form");
    minword->add_option("grammar", grammar_path)->required();
    minword->add_option("form", form_text);

    auto* rules = app.add_subcommand("rules", "print the reduction system");
    rules->add_option("grammar", grammar_path)->required();

    auto* reduce = app.add_subcommand("reduce", "normalize a word");
    reduce->add_option("grammar", grammar_path)->required();
    reduce->add_option("word", word_text)->required();
    reduce->add_option("--strategy", strategy_name, "leftmost or minimal");
    reduce->add_flag("--trace", trace);

    auto* member = app.add_subcommand("member", "membership by reduction");
    member->add_option("grammar", grammar_path)->required();
    member->add_option("word", word_text)->required();
    member->add_option("--strategy", strategy_name);
    member->add_flag("--trace", trace);
    member->add_flag("--trust-cc", trust_cc);
    member->add_option("--cc-dfa", cc_dfa_path, "DFA of the language; certifies CC-ness");

    auto* enumerate = app.add_subcommand("enumerate", "language up to a length");
    enumerate->add_option("grammar", grammar_path)->required();
    enumerate->add_option("length", length)->required();

    auto* transform = app.add_subcommand("transform", "apply one grammar transformation");
    transform->add_option("grammar", grammar_path)->required();
    transform->add_flag("--omega", flag_omega, "weak omega-reduction");
    transform->add_option("--inverse-morphism", map_path, "morphism map file");
    transform->add_option("--intersect", dfa_path, "DFA file");
    transform->add_option("--context-grammar", context_word, "word w");

    auto* ctxg = app.add_subcommand("context-grammar", "the context grammar of a word");
    ctxg->add_option("grammar", grammar_path)->required();
    ctxg->add_option("word", word_text)->required();

    auto* ctxd = app.add_subcommand("context-dpda", "the context DPDA of a word");
    ctxd->add_option("grammar", grammar_path)->required();
    ctxd->add_option("word", word_text)->required();
    ctxd->add_flag("--emit", emit, "print the full machine dump");

    auto* runpda = app.add_subcommand("run-pda", "run a machine dump on a word");
    runpda->add_option("machine", pda_path)->required();
    runpda->add_option("word", word_text)->required();
    runpda->add_flag("--trace", trace);
    runpda->add_option("--step-limit", step_limit);

    auto* congr = app.add_subcommand("congruent", "three-valued word congruence");
    congr->add_option("grammar", grammar_path)->required();
    congr->add_option("word", word_text)->required();
    congr->add_option("other", word2_text)->required();
    congr->add_option("--bound", bound);
    congr->add_option("--budget", budget);
    congr->add_flag("--trust-cc", trust_cc);
    congr->add_option("--cc-dfa", cc_dfa_path);

    auto* equiv = app.add_subcommand("equiv", "three-valued grammar equivalence");
    equiv->add_option("grammar", grammar_path)->required();
    equiv->add_option("other", grammar2_path)->required();
    equiv->add_option("--bound", bound);
    equiv->add_option("--budget", budget);
    equiv->add_flag("--trust-cc", trust_cc);
    equiv->add_option("--cc-dfa1", cc_dfa_path);
    equiv->add_option("--cc-dfa2", cc_dfa2_path);

    auto* aligned = app.add_subcommand("aligned", "alignment with a congruence");
    aligned->add_option("grammar", grammar_path)->required();
    aligned->add_option("--oracle", oracle_spec, "dyck or dfa:<file>")->required();

    auto* recog = app.add_subcommand("recognize-regular",
                                     "exact CC check against a DFA of the language");
    recog->add_option("grammar", grammar_path)->required();
    recog->add_option("dfa", dfa_path)->required();

    std::vector<const char*> argv{"ccgram"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*minword) {
            Grammar g = load_grammar(grammar_path);
            Analysis an(g);
            if (form_text.empty()) {
                for (Symbol nt : g.nonterminals()) {
                    const auto& m = an.min_word(nt);
                    out << nt.name() << ": " << (m ? format_word(*m) : "none") << "\n";
                }
                return 0;
            }
            auto m = an.min_word(parse_form(form_text, g));
            out << (m ? format_word(*m) : "none") << "\n";
            return m ? 0 : 1;
        }

        if (*rules) {
            Grammar g = load_grammar(grammar_path);
            for (const auto& r : extract_reduction(g).rules())
                out << format_word(r.lhs) << " -> " << format_word(r.rhs) << "\n";
            return 0;
        }

        if (*reduce) {
            Grammar g = load_grammar(grammar_path);
            auto sys = extract_reduction(g);
            Word w = parse_word(word_text, g.alphabet());
            auto chain = normalize_trace(sys, w, strategy_of(strategy_name));
            if (trace)
                for (const auto& step : chain)
                    out << format_word(step) << "\n";
            else
                out << format_word(chain.back()) << "\n";
            return 0;
        }

        if (*member) {
            Grammar g = load_grammar(grammar_path);
            bool certified = !cc_dfa_path.empty() && certify_cc(g, cc_dfa_path);
            warn_cc_assumption(err, trust_cc, certified);
            auto sys = extract_reduction(g);
            Word w = parse_word(word_text, g.alphabet());
            auto result = member_by_reduction(g, sys, w, strategy_of(strategy_name));
            if (trace)
                for (const auto& step : result.chain)
                    out << format_word(step) << "\n";
            out << (result.member ? "YES" : "NO") << "\n";
            return result.member ? 0 : 1;
        }

        if (*enumerate) {
            Grammar g = load_grammar(grammar_path);
            auto words = enumerate_language(g, length);
            for (const auto& w : lenlex_sorted(words, g.alphabet()))
                out << format_word(w) << "\n";
            return 0;
        }

        if (*transform) {
            Grammar g = load_grammar(grammar_path);
            int chosen = int(flag_omega) + int(!map_path.empty()) +
                         int(!dfa_path.empty()) + int(!context_word.empty());
            if (chosen != 1)
                throw std::runtime_error(
                    "transform needs exactly one of --omega, --inverse-morphism, "
                    "--intersect, --context-grammar");
            Grammar result = [&] {
                if (flag_omega)
                    return weak_omega_reduce(g);
                if (!map_path.empty()) {
                    Morphism h = parse_morphism_file(read_file(map_path), g);
                    return inverse_morphism(with_alphabet(g, h.domain()), h);
                }
                if (!dfa_path.empty())
                    return intersect_regular(g, load_dfa(dfa_path));
                return build_gw(g, parse_word(context_word, g.alphabet()));
            }();
            out << format_grammar(result);
            return 0;
        }

        if (*ctxg) {
            Grammar g = load_grammar(grammar_path);
            out << format_grammar(build_gw(g, parse_word(word_text, g.alphabet())));
            return 0;
        }

        if (*ctxd) {
            Grammar g = load_grammar(grammar_path);
            auto m = build_context_dpda(g, parse_word(word_text, g.alphabet()));
            if (emit) {
                out << format_pda(m.pda);
            } else {
                out << "states: " << m.pda.state_count() << "\n"
                    << "transitions: " << m.pda.transitions().size() << "\n"
                    << "accepting: " << m.pda.accepting_states().size() << "\n"
                    << "buffer-bound: " << m.buffer_bound << "\n"
                    << "deterministic: "
                    << (is_deterministic(m.pda).deterministic ? "yes" : "no") << "\n"
                    << "one-turn: " << (check_one_turn(m.pda) ? "yes" : "no") << "\n";
            }
            return 0;
        }

        if (*runpda) {
            Pda m = parse_pda(read_file(pda_path));
            Word w = parse_word(word_text, m.input_alphabet());
            auto result = ccgram::run(m, w, step_limit);
            if (trace)
                for (const auto& c : result.trace)
                    print_config(out, m, c);
            switch (result.status) {
                case RunStatus::accept:
                    out << "ACCEPT\n";
                    return 0;
                case RunStatus::reject:
                    out << "REJECT\n";
                    return 1;
                case RunStatus::limit_exceeded:
                    out << "LIMIT " << step_limit << "\n";
                    return 2;
            }
        }

        if (*congr) {
            Grammar g = load_grammar(grammar_path);
            bool certified = !cc_dfa_path.empty() && certify_cc(g, cc_dfa_path);
            warn_cc_assumption(err, trust_cc, certified);
            auto verdict = congruent(g, parse_word(word_text, g.alphabet()),
                                     parse_word(word2_text, g.alphabet()), bound, budget);
            switch (verdict.truth) {
                case Truth::yes:
                    out << "YES\n";
                    break;
                case Truth::no:
                    out << "NO " << context_str(*verdict.witness) << "\n";
                    break;
                case Truth::unknown:
                    out << "UNKNOWN " << bound << "\n";
                    break;
            }
            return truth_status(verdict.truth);
        }

        if (*equiv) {
            Grammar g1 = load_grammar(grammar_path);
            Grammar g2 = load_grammar(grammar2_path);
            bool certified1 = !cc_dfa_path.empty() && certify_cc(g1, cc_dfa_path);
            bool certified2 = !cc_dfa2_path.empty() && certify_cc(g2, cc_dfa2_path);
            warn_cc_assumption(err, trust_cc, certified1 && certified2);
            auto verdict = cc_equiv(g1, g2, bound, budget);
            switch (verdict.truth) {
                case Truth::yes:
                    out << "YES\n";
                    break;
                case Truth::no:
                    out << "NO " << format_word(*verdict.witness) << "\n";
                    break;
                case Truth::unknown:
                    out << "UNKNOWN " << bound << "\n";
                    break;
            }
            return truth_status(verdict.truth);
        }

        if (*aligned) {
            Grammar g = load_grammar(grammar_path);
            auto oracle = [&]() -> CongruenceOracle {
                if (oracle_spec == "dyck") {
                    Symbol open{"("}, close{")"};
                    for (Symbol s : g.alphabet().terminals())
                        if (s != open && s != close)
                            throw std::runtime_error(
                                "the dyck oracle needs the alphabet {(,)}, got " +
                                s.name());
                    return CongruenceOracle::dyck(open, close);
                }
                if (oracle_spec.rfind("dfa:", 0) == 0)
                    return syntactic_oracle(load_dfa(oracle_spec.substr(4)));
                throw std::runtime_error("unknown oracle: " + oracle_spec);
            }();
            auto verdict = is_aligned(g, oracle);
            switch (verdict.truth) {
                case Truth::yes:
                    out << "YES\n";
                    break;
                case Truth::no:
                    out << "NO " << production_str(*verdict.witness) << "\n";
                    break;
                case Truth::unknown:
                    out << "UNKNOWN\n";
                    break;
            }
            return truth_status(verdict.truth);
        }

        if (*recog) {
            Grammar g = load_grammar(grammar_path);
            auto verdict = is_cc_regular_case(g, load_dfa(dfa_path));
            if (verdict.truth == Truth::yes)
                out << "YES\n";
            else
                out << "NO " << production_str(*verdict.witness) << "\n";
            return truth_status(verdict.truth);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 10;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 11;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 10;
    }
    return 10;
}

}  // namespace ccgram::cli
