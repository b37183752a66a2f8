#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aridlab/dfao.hpp"
#include "aridlab/growth.hpp"

namespace aridlab {

/// Shifted finite-sums witness from a pair of noncommuting loops at an
/// accepting-reachable state of the canonical MSD machine.
struct IpsWitness {
    int k = 2;
    int state = 0;       // witness state in `machine`
    Word u0;             // access word, initial -> state
    Word v1, v2;         // equal-length loops at state, [v1]_k < [v2]_k
    Word u1;             // state -> accepting
    Dfao machine;        // the automaton the words refer to

    /// n_i = ([v2]_k - [v1]_k) * k^((i-1)|v1| + |u1|), i = 1..count.
    std::vector<mpz_class> generators(int count) const;
    /// N_t = [u0 v1^t u1]_k, t = 1..count.
    std::vector<mpz_class> shifts(int count) const;
};

/// Constructive direction of the arid/IPS dichotomy; throws Error if the
/// set is arid.
IpsWitness ips_witness(const Dfao& indicator, int target = 1);

/// Claim data of the shifted-IP construction: an accepting state s with a
/// zero word z = 0^l and a non-zero-power loop word v closing the diagram
/// delta(s,z)=s', delta(s,v)=s, delta(s',z)=s', delta(s',v)=s on the LSD
/// automaton.
struct ShiftedIpWitness {
    int k = 2;
    int s = 0, s_prime = 0;
    int l = 0;           // |z| = |v|
    Word v;              // LSD word, not a power of 0
    Word access;         // LSD word, initial -> s
    mpz_class shift;     // N = [access^R]_k
    Dfao machine;        // LSD automaton the states refer to

    /// n_i = k^((i-1) l + |access|) [v^R]_k, i = 1..count.
    std::vector<mpz_class> generators(int count) const;
};

/// Bounded check of the everywhere-factor hypothesis: every digit word of
/// length <= max_len embeds in some accepted representation.  Returns a
/// failing factor (MSD orientation) or nullopt.
std::optional<Word> factor_universality_failure(const Dfao& indicator, int max_len = 8,
                                                int target = 1);

/// Constructive proof of the shifted-IP property: pair-scheduling word,
/// zero-tail stabilization, and the Claim diagram; throws Error with the
/// failing factor if the (bounded) hypothesis check fails.
ShiftedIpWitness shifted_ip_witness(const Dfao& indicator, int factor_check_len = 8,
                                    int target = 1);

struct FsReport {
    bool ok = true;
    mpz_class checked = 0;
    std::optional<mpz_class> first_failure;
    std::string detail;
};

/// Exhaustive finite-sums membership: with `shifts` empty, every nonempty
/// subset sum of the generators; otherwise for each t the sums n_alpha +
/// shifts[t-1] over alpha subset of {1..t} (including the empty subset).
FsReport verify_fs(const Dfao& indicator, const std::vector<mpz_class>& generators,
                   const std::vector<mpz_class>& shifts = {}, int target = 1);

/// Failing sum n_alpha with n_alpha - m >= 0 and n_alpha - m not in E, if
/// one exists among nonempty subsets of the generators.
std::optional<mpz_class> translate_ip_failure(const Dfao& indicator,
                                              const std::vector<mpz_class>& generators,
                                              const mpz_class& m, int target = 1);

}  // namespace aridlab
