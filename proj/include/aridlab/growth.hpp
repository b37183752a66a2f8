#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aridlab/dfao.hpp"

namespace aridlab {

/// { v0 w1^l1 v1 ... wr^lr vr : l_i >= 0 } as base-k words.
struct BasicAridSet {
    int k = 2;
    std::vector<Word> bridges;  // v_0 ... v_r
    std::vector<Word> pumps;    // w_1 ... w_r, all nonempty
    std::vector<char> positive; // l_i >= 1 instead of >= 0 (per pump)

    int rank() const { return static_cast<int>(pumps.size()); }
    std::string to_string() const;
};

struct AridDecomposition {
    int k = 2;
    std::vector<BasicAridSet> parts;
    int rank() const;
};

struct NotAridEvidence {
    int state;
    Word loop1, loop2;  // noncommuting cycles at `state`
};

struct Classification {
    bool arid = false;
    int rank = 0;                          // meaningful when arid
    std::optional<NotAridEvidence> evidence;  // present when not arid
};

/// The MSD automaton on which classify/arid_decompose operate: minimized,
/// with leading-zero words routed to a rejecting sink so that its language
/// is exactly the canonical accepted words.  Evidence states returned by
/// classify refer to this machine.
Dfao classification_machine(const Dfao& indicator, int target = 1);

/// Growth dichotomy on the trim part of an MSD indicator automaton: either
/// every trim SCC is a simple cycle (arid, rank = max number of cycle SCCs
/// on a condensation path) or some trim state carries two noncommuting
/// loops (returned as evidence).
Classification classify(const Dfao& indicator, int target = 1);

/// Exact |{n in [0, limit) : run = target}| by digit dynamic programming.
mpz_class count_below(const Dfao& indicator, const mpz_class& limit, int target = 1);

/// Exact |{n in [M, M+N) : run = target}|.
mpz_class count_range(const Dfao& indicator, const mpz_class& m, const mpz_class& n,
                      int target = 1);

/// Enumerates accepting paths through the cycle-SCC DAG of the trim
/// automaton; the union of the emitted basic sets equals the accepted
/// language (verified by automaton equivalence).  Requires classify = arid.
AridDecomposition arid_decompose(const Dfao& indicator, int target = 1);

/// Complete DFA accepting exactly the words denoted by the decomposition
/// (output 1 on acceptance).  Used for verification and membership.
Dfao decomposition_automaton(const AridDecomposition& d);

bool decomposition_matches_automaton(const AridDecomposition& d, const Dfao& indicator,
                                     int target = 1);

/// A ∩ vΣ*, re-decomposed.  Empty restrictions yield an empty decomposition.
AridDecomposition prefix_restrict(const Dfao& indicator, const Word& v, int target = 1);
/// A ∩ Σ*u, re-decomposed.
AridDecomposition suffix_restrict(const Dfao& indicator, const Word& u, int target = 1);

/// Shortest prefix v (BFS by length) whose restriction A ∩ vΣ* is nonempty
/// and has rank <= 1.
std::pair<Word, AridDecomposition> find_rank1_prefix(const Dfao& indicator, int target = 1);

struct PumpingWitness {
    Word word;        // (n)_k, MSD
    Word u0, v, u1;   // word = u0 v u1, v nonempty
    int pump_constant;  // N = state count of the minimized automaton
    int window_start;   // L
};

/// Repeated-state factorization of the run on (n)_k inside the window
/// [L, L+N]; pumped values are checked constant for t <= 8.
PumpingWitness pumping_witness(const Dfao& a, const mpz_class& n, int window_start);

}  // namespace aridlab
