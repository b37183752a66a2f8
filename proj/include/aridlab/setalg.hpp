#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "aridlab/dfao.hpp"

namespace aridlab {

/// Indicator of {n in E : n = r (mod m)} (product with a mod-m tracker).
Dfao congruence_filter(const Dfao& a, uint64_t m, uint64_t r, int target = 1);

/// Automaton computing n -> run(a, alpha*n + beta), built as an LSD carry
/// machine over (state, carry) pairs and minimized.
Dfao affine_preimage(const Dfao& a, uint64_t alpha, uint64_t beta,
                     std::size_t state_cap = 1000000);

/// Indicator of {n : c*n in E}; the beta = 0 affine case.
Dfao scale_preimage(const Dfao& a, uint64_t c, std::size_t state_cap = 1000000);

/// Automaton over base k^e computing the same sequence as `a` (base k);
/// big digits expand to e small digits, leading-zero padded.
Dfao base_group(const Dfao& a, int e);

struct DensityReport {
    bool exact = false;  // uniform density established
    std::map<int, mpq_class> rho;  // per output value, when exact
    struct ComponentDensity {
        int scc = 0;
        std::map<int, mpq_class> rho;  // length-64 word fractions
    };
    std::vector<ComponentDensity> components;  // terminal components examined
    struct WindowPoint {
        mpz_class N;
        mpz_class max_count;
        double ratio = 0;
    };
    std::vector<WindowPoint> profile;
    std::string method;
    uint64_t seed = 0;
};

/// Word-statistics densities: exact transfer counts of length-L words from
/// every state of every terminal (closed, strongly connected) component;
/// uniform density is reported exact iff the fractions agree across all
/// those states and are stationary at L = 16, 32, 64.
DensityReport uniform_density(const Dfao& a, int L = 64);

/// max over sampled window positions M (always including M = 0) of
/// |E cap [M, M+N)|; each window count is exact digit DP.
mpz_class max_window_count(const Dfao& a, const mpz_class& N, int samples = 64,
                           uint64_t seed = 1, int target = 1);

/// Window-estimate profile over a ladder of window lengths; exact per-window
/// counts when automaton-backed.
DensityReport banach_estimate(const Dfao& a, const std::vector<mpz_class>& ladder,
                              int samples = 64, uint64_t seed = 1, int target = 1);

/// Sampled variant for black-box sequences evaluable below `horizon`.
DensityReport banach_estimate(const std::function<int(uint64_t)>& f, uint64_t horizon,
                              const std::vector<uint64_t>& ladder, int samples = 64,
                              uint64_t seed = 1, int target = 1);

}  // namespace aridlab
