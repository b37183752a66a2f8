#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace aridlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// State-count or iteration budget exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// A floor/comparison could not be resolved at the maximum working precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

enum class Reading { msd, lsd };

// Digits in reading order (index 0 is read first).
using Word = std::vector<int>;

/// Deterministic finite automaton with output over the digit alphabet
/// {0,...,k-1}.  States are dense indices; delta is total.
struct Dfao {
    int k = 2;
    Reading reading = Reading::msd;
    int initial = 0;
    std::vector<int> delta;   // delta[s*k + d]
    std::vector<int> output;  // output[s]

    int size() const { return static_cast<int>(output.size()); }
    int step(int s, int d) const { return delta[static_cast<std::size_t>(s) * k + d]; }
    int walk(int s, const Word& w) const;

    int run(uint64_t n) const;
    int run(const mpz_class& n) const;
    int run_word(const Word& w) const { return output[walk(initial, w)]; }

    // Throws Error if delta is not total or indices are out of range.
    void validate() const;
};

// Base-k digits of n, oriented per `reading`; (0)_k is the empty word.
Word canonical_digits(const mpz_class& n, int k, Reading reading);
Word canonical_digits(uint64_t n, int k, Reading reading);
mpz_class word_value(const Word& w, int k, Reading reading);

/// Moore partition refinement; result is reachable, minimal, and states are
/// renumbered by BFS discovery from the initial state (digit order), so the
/// minimal automaton is canonical up to the word function.
Dfao minimize(const Dfao& a);

/// Pointwise combination: run(result, n) == combine(run(a, n), run(b, n)).
/// Throws Error on base or reading mismatch.
Dfao product(const Dfao& a, const Dfao& b, const std::function<int(int, int)>& combine);

/// Reading-direction conversion via the transition-monoid construction:
/// states of the result are composed transition actions S -> S.  Throws
/// ResourceError if more than `state_cap` states are generated.
Dfao reverse_reading(const Dfao& a, std::size_t state_cap = 1000000);

/// Normalizes the automaton so that redundant zeros (leading zeros in MSD
/// mode, trailing zeros in LSD read order) never change the output.
Dfao make_zero_robust(const Dfao& a);

/// Converts (if needed) to the requested reading direction, then normalizes
/// zero-robust and minimizes.
Dfao with_reading(const Dfao& a, Reading r, std::size_t state_cap = 1000000);

/// Word-function equality; requires same k and reading direction.
bool same_function(const Dfao& a, const Dfao& b);

/// Sequence equality (n |-> output), insensitive to reading direction.
bool same_sequence(const Dfao& a, const Dfao& b, std::size_t state_cap = 1000000);

bool is_zero_robust(const Dfao& a, int max_pad = 8, int trials = 256, uint64_t seed = 1);

struct AutomatonAnalysis {
    std::vector<char> accessible;
    std::vector<char> coaccessible;  // w.r.t. the requested output value
    std::vector<char> trim;          // accessible && coaccessible
    std::vector<int> scc_id;         // per state
    int scc_count = 0;
    std::vector<std::vector<int>> scc_members;
    std::vector<std::vector<int>> scc_dag;  // condensation edges, deduplicated
};

AutomatonAnalysis analyze(const Dfao& a, int target);

// Shortest word from `from` to any state satisfying `goal`, or nullopt.
// `allowed` (if non-empty) restricts the traversal to marked states.
std::optional<Word> shortest_word(const Dfao& a, int from,
                                  const std::function<bool(int)>& goal,
                                  const std::vector<char>& allowed = {});

std::string to_text(const Dfao& a);
Dfao dfao_from_text(const std::string& text);

}  // namespace aridlab
