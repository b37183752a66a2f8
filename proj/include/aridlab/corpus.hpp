#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aridlab/dfao.hpp"
#include "aridlab/growth.hpp"
#include "aridlab/seqkit.hpp"

namespace aridlab {

/// Finite set of prohibited digit words; the derived indicator accepts n
/// iff (n)_k contains no prohibited word as a factor.
struct ProhibitedFactorFamily {
    int k = 2;
    std::vector<Word> prohibited;
};

/// Indicator automaton of the factor-free integers (Aho-Corasick over the
/// digit alphabet), zero-robust and minimized, MSD reading.
Dfao bfree_automaton(const ProhibitedFactorFamily& family);

Dfao thue_morse_automaton();

/// Indicator of {k^t : t >= 0} over base k (accepts 1 0^*).
Dfao powers_automaton(int k);

/// Factor variant: rejects n whose binary expansion contains 1 0^l 1 with
/// l odd.  Differs from the classical sequence at arguments with a
/// trailing odd zero-block (e.g. n = 2).
Dfao baum_sweet_factor_automaton();

/// Classical variant: additionally rejects an odd trailing block of zeros.
Dfao baum_sweet_classical_automaton();

/// Indicator of integers with strictly alternating binary digits.
Dfao alternating_automaton();

std::vector<std::string> corpus_names();

/// Builds a named corpus automaton; `param` carries the base for powers(k)
/// or the prohibited words (as digit strings, comma separated) for bfree.
Dfao build_named_automaton(const std::string& name, const std::string& param = "");

/// Named sequences that are not 2-automatic (Fibonacci word variants).
Sequence build_named_sequence(const std::string& name, uint64_t horizon = 1 << 20);

// --- Zeckendorf representation ---------------------------------------------

/// Digits v_d ... v_2 (most significant first) of the greedy Fibonacci
/// representation n = sum v_i F_i with F_2 = 1, F_3 = 2; never two adjacent
/// ones.  n = 0 gives the empty word.
std::vector<int> zeckendorf(uint64_t n);
uint64_t zeckendorf_value(const std::vector<int>& digits);
/// w_Fib(n): the v_2 digit (0 if absent).
int fibonacci_word_zeckendorf(uint64_t n);

// --- Linear recurrence value sets ------------------------------------------

struct LinRecSpec {
    std::vector<long> coeffs;        // c_1 ... c_n
    std::vector<mpz_class> initial;  // a_0 ... a_{n-1}
};

struct LinRecValues {
    std::vector<mpz_class> sorted_values;  // deduplicated
    bool contains(const mpz_class& v) const;
};

LinRecValues linrec_values(const LinRecSpec& spec, std::size_t count);

// --- Standard-set decomposition for rank <= 1 arid sets --------------------

struct StandardSet {
    // {scale * k^(period*l) + offset : l >= 0} when exponential,
    // a single value when finite.
    bool exponential = false;
    mpq_class scale;
    mpq_class offset;
    int period = 1;  // t in k^(t l)
    mpz_class finite_value;
};

struct StandardDecomposition {
    int k = 2;
    std::vector<StandardSet> sets;
};

/// Converts each rank-1 basic arid component v0 w^l v1 to the closed form
/// a k^(|w| l) + b; rank-0 components become finite values.  Throws Error
/// if the decomposition has rank > 1.  Verified against the automaton for
/// all members below `verify_bound`.
StandardDecomposition standard_decompose(const Dfao& indicator, int target = 1,
                                         const mpz_class& verify_bound = mpz_class(1) << 32);

std::vector<mpz_class> standard_members_below(const StandardDecomposition& d,
                                              const mpz_class& bound);

}  // namespace aridlab
