#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aridlab/dfao.hpp"
#include "aridlab/genpoly.hpp"
#include "aridlab/setalg.hpp"

namespace aridlab {

/// Total map N0 -> small integers, backed by an automaton, an expression,
/// or a black-box function with a declared horizon.
struct Sequence {
    std::function<int(uint64_t)> fn;
    uint64_t horizon = UINT64_MAX;       // largest evaluable argument
    std::optional<Dfao> automaton;       // present for automaton-backed sequences
    std::string name;

    int operator()(uint64_t n) const {
        if (n > horizon) throw Error("sequence evaluated beyond its horizon");
        return fn(n);
    }

    static Sequence from_dfao(const Dfao& a, std::string name = "");
    static Sequence from_function(std::function<int(uint64_t)> f, uint64_t horizon,
                                  std::string name = "");
    static Sequence from_prefix(std::vector<int> values, std::string name = "");
    /// eval(e, n) reduced mod m (expression must be integer-valued).
    static Sequence from_genpoly_mod(const ExprPtr& e, long m, std::string name = "",
                                     const EvalOptions& opt = {});
    /// Indicator of the threshold set ||inner(n)|| < epsilon(n).
    static Sequence from_sparse_spec(const SparseGenPolySpec& spec, std::string name = "",
                                     const EvalOptions& opt = {});
};

struct KernelElement {
    int l = 0;
    mpz_class r;   // canonical representative: n -> seq(k^l n + r)
    Dfao automaton;  // minimized LSD automaton of the element
};

struct KernelTable {
    int k = 2;
    std::vector<KernelElement> elements;
    std::vector<int> closure;  // closure[e * k + d]: element for n -> elem(k n + d)
    int size() const { return static_cast<int>(elements.size()); }
    std::string to_text() const;
};

/// Full finite k-kernel of an automatic sequence; elements are the states
/// of the minimized zero-robust LSD automaton, distinctness certified by
/// pairwise automaton equivalence.
KernelTable kernel_exact(const Dfao& a, std::size_t state_cap = 1000000);

/// LSD automaton with kernel elements as states, closure edges as
/// transitions, and element values at 0 as outputs.
Dfao dfao_from_kernel(const KernelTable& t);

struct KernelProfile {
    int k = 2;
    int l_max = 0;
    int prefix_len = 0;
    std::vector<std::size_t> level_counts;  // distinct truncated vectors per level
    std::vector<std::vector<int>> vectors_at_lmax;  // deduplicated, sorted
    bool saturating() const;
};

/// Distinct truncated kernel vectors (f(k^l n + r))_{n < prefix_len} per
/// level; a profile that keeps growing is evidence of non-automaticity.
/// Merging by prefix can undercount but never overcount.
KernelProfile kernel_empirical(const Sequence& f, int k, int l_max, int prefix_len);

struct WeakPeriodicityWitness {
    uint64_t a = 1, b = 0;
    uint64_t q = 0, r = 0, r2 = 0;
    bool exact = false;  // certified by automaton equivalence (vs bounded horizon)
    uint64_t horizon = 0;
};

struct WeakPeriodicityResult {
    std::optional<WeakPeriodicityWitness> witness;
    uint64_t q_max = 0;
    uint64_t horizon = 0;
};

/// Searches q <= q_max, 0 <= r < r' < 2q for f(a(qn+r)+b) = f(a(qn+r')+b)
/// on n <= N; automaton-backed witnesses are upgraded to exact via
/// affine_preimage equivalence.  Exhaustion is a result, not an error.
WeakPeriodicityResult weak_periodicity_search(const Sequence& f, uint64_t a, uint64_t b,
                                              uint64_t q_max, uint64_t N);

/// Indicator automaton of Z = {n : run(f, n) != pattern[n mod period]}.
Dfao mismatch_set(const Dfao& f, int period, const std::vector<int>& pattern);

/// Pattern of the given period minimizing the exact uniform density of the
/// mismatch set (enumerates value^period candidates).
std::pair<std::vector<int>, Dfao> mismatch_best_pattern(const Dfao& f, int period,
                                                        std::size_t max_patterns = 4096);

}  // namespace aridlab
