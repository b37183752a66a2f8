#include "aridlab/seqkit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "aridlab/growth.hpp"

namespace aridlab {

// --- Sequence adapters ------------------------------------------------------

Sequence Sequence::from_dfao(const Dfao& a, std::string name) {
    Sequence s;
    s.automaton = a;
    s.fn = [a](uint64_t n) { return a.run(n); };
    s.horizon = UINT64_MAX;
    s.name = std::move(name);
    return s;
}

Sequence Sequence::from_function(std::function<int(uint64_t)> f, uint64_t horizon,
                                 std::string name) {
    Sequence s;
    s.fn = std::move(f);
    s.horizon = horizon;
    s.name = std::move(name);
    return s;
}

Sequence Sequence::from_prefix(std::vector<int> values, std::string name) {
    if (values.empty()) throw Error("Sequence::from_prefix: empty prefix");
    uint64_t horizon = values.size() - 1;
    Sequence s;
    s.fn = [vals = std::move(values)](uint64_t n) { return vals[n]; };
    s.horizon = horizon;
    s.name = std::move(name);
    return s;
}

Sequence Sequence::from_genpoly_mod(const ExprPtr& e, long m, std::string name,
                                    const EvalOptions& opt) {
    if (m < 1) throw Error("Sequence::from_genpoly_mod: modulus must be >= 1");
    Sequence s;
    s.fn = [e, m, opt](uint64_t n) {
        mpz_class v = eval_floor(e, mpz_class(static_cast<unsigned long>(n)), opt);
        return static_cast<int>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m)));
    };
    s.horizon = UINT64_MAX;
    s.name = std::move(name);
    return s;
}

Sequence Sequence::from_sparse_spec(const SparseGenPolySpec& spec, std::string name,
                                    const EvalOptions& opt) {
    Sequence s;
    s.fn = [spec, opt](uint64_t n) {
        return sparse_member(spec, mpz_class(static_cast<unsigned long>(n)), opt) ? 1 : 0;
    };
    s.horizon = UINT64_MAX;
    s.name = std::move(name);
    return s;
}

// --- exact kernel -----------------------------------------------------------

KernelTable kernel_exact(const Dfao& a, std::size_t state_cap) {
    Dfao m = with_reading(a, Reading::lsd, state_cap);
    KernelTable table;
    table.k = m.k;
    // Representatives (l, r) by BFS over LSD digit words; minimize() has
    // already renumbered states in BFS discovery order, so state i is
    // discovered in order.
    std::vector<std::pair<int, mpz_class>> rep(m.size(), {-1, 0});
    std::vector<int> order;
    rep[m.initial] = {0, 0};
    order.push_back(m.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int s = order[i];
        mpz_class base = 1;
        for (int j = 0; j < rep[s].first; ++j) base *= m.k;
        for (int d = 0; d < m.k; ++d) {
            int t = m.step(s, d);
            if (rep[t].first < 0) {
                rep[t] = {rep[s].first + 1, rep[s].second + base * d};
                order.push_back(t);
            }
        }
    }
    for (int s = 0; s < m.size(); ++s) {
        KernelElement e;
        e.l = rep[s].first;
        e.r = rep[s].second;
        Dfao sub = m;
        sub.initial = s;
        e.automaton = minimize(sub);
        table.elements.push_back(std::move(e));
    }
    table.closure.resize(static_cast<std::size_t>(m.size()) * m.k);
    for (int s = 0; s < m.size(); ++s)
        for (int d = 0; d < m.k; ++d)
            table.closure[static_cast<std::size_t>(s) * m.k + d] = m.step(s, d);
    // Distinctness certificate: pairwise automaton inequivalence.
    if (table.size() <= 64) {
        for (int i = 0; i < table.size(); ++i)
            for (int j = i + 1; j < table.size(); ++j)
                if (same_function(table.elements[i].automaton, table.elements[j].automaton))
                    throw Error("internal: kernel elements not distinct");
    }
    return table;
}

Dfao dfao_from_kernel(const KernelTable& t) {
    if (t.closure.size() != static_cast<std::size_t>(t.size()) * t.k)
        throw Error("dfao_from_kernel: table not closed");
    Dfao a;
    a.k = t.k;
    a.reading = Reading::lsd;
    a.initial = 0;
    a.delta = t.closure;
    for (const auto& e : t.elements) a.output.push_back(e.automaton.run(uint64_t(0)));
    a.validate();
    return a;
}

std::string KernelTable::to_text() const {
    std::ostringstream out;
    out << aridlab::to_text(dfao_from_kernel(*this));
    for (int i = 0; i < size(); ++i)
        out << "# kernel state=" << i << " l=" << elements[i].l
            << " r=" << elements[i].r.get_str() << "\n";
    return out.str();
}

// --- empirical kernel -------------------------------------------------------

bool KernelProfile::saturating() const {
    if (level_counts.size() < 2) return true;
    return level_counts[level_counts.size() - 1] == level_counts[level_counts.size() - 2];
}

KernelProfile kernel_empirical(const Sequence& f, int k, int l_max, int prefix_len) {
    if (k < 2 || l_max < 0 || prefix_len < 1) throw Error("kernel_empirical: bad parameters");
    KernelProfile profile;
    profile.k = k;
    profile.l_max = l_max;
    profile.prefix_len = prefix_len;
    uint64_t kl = 1;
    for (int l = 0; l <= l_max; ++l) {
        uint64_t top = kl * static_cast<uint64_t>(prefix_len - 1) + (kl - 1);
        if (top > f.horizon) throw Error("kernel_empirical: horizon exhausted at level " +
                                         std::to_string(l));
        std::set<std::vector<int>> distinct;
        for (uint64_t r = 0; r < kl; ++r) {
            std::vector<int> vec(static_cast<std::size_t>(prefix_len));
            for (int n = 0; n < prefix_len; ++n)
                vec[static_cast<std::size_t>(n)] = f(kl * static_cast<uint64_t>(n) + r);
            distinct.insert(std::move(vec));
        }
        profile.level_counts.push_back(distinct.size());
        if (l == l_max)
            profile.vectors_at_lmax.assign(distinct.begin(), distinct.end());
        kl *= static_cast<uint64_t>(k);
    }
    return profile;
}

// --- weak periodicity -------------------------------------------------------

WeakPeriodicityResult weak_periodicity_search(const Sequence& f, uint64_t a, uint64_t b,
                                              uint64_t q_max, uint64_t N) {
    WeakPeriodicityResult result;
    result.q_max = q_max;
    result.horizon = N;
    // memoize f(a*m + b) over the argument grid m = q*n + r
    std::vector<int> cache;
    auto value_at = [&](uint64_t m) {
        if (m >= cache.size()) cache.resize(m + 1, -1);
        if (cache[m] < 0) cache[m] = f(a * m + b);
        return cache[m];
    };
    for (uint64_t q = 1; q <= q_max; ++q) {
        for (uint64_t r = 0; r + 1 < 2 * q; ++r) {
            for (uint64_t r2 = r + 1; r2 < 2 * q; ++r2) {
                bool ok = true;
                for (uint64_t n = 0; n <= N; ++n) {
                    if (value_at(q * n + r) != value_at(q * n + r2)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                WeakPeriodicityWitness w;
                w.a = a;
                w.b = b;
                w.q = q;
                w.r = r;
                w.r2 = r2;
                w.horizon = N;
                if (f.automaton) {
                    Dfao g1 = affine_preimage(*f.automaton, a * q, a * r + b);
                    Dfao g2 = affine_preimage(*f.automaton, a * q, a * r2 + b);
                    if (!same_sequence(g1, g2)) continue;  // bounded-only, keep searching
                    w.exact = true;
                }
                result.witness = w;
                return result;
            }
        }
    }
    return result;
}

// --- mismatch sets ----------------------------------------------------------

Dfao mismatch_set(const Dfao& f, int period, const std::vector<int>& pattern) {
    if (period < 1 || static_cast<int>(pattern.size()) != period)
        throw Error("mismatch_set: pattern length must equal period");
    Dfao msd = with_reading(f, Reading::msd);
    Dfao tracker;
    tracker.k = msd.k;
    tracker.reading = Reading::msd;
    tracker.initial = 0;
    tracker.output = pattern;
    tracker.delta.resize(static_cast<std::size_t>(period) * msd.k);
    for (int v = 0; v < period; ++v)
        for (int d = 0; d < msd.k; ++d)
            tracker.delta[static_cast<std::size_t>(v) * msd.k + d] =
                (v * msd.k + d) % period;
    Dfao z = product(msd, tracker, [](int x, int y) { return x != y ? 1 : 0; });
    return minimize(z);
}

std::pair<std::vector<int>, Dfao> mismatch_best_pattern(const Dfao& f, int period,
                                                        std::size_t max_patterns) {
    Dfao msd = with_reading(f, Reading::msd);
    std::set<int> alphabet(msd.output.begin(), msd.output.end());
    std::vector<int> values(alphabet.begin(), alphabet.end());
    std::size_t total = 1;
    for (int i = 0; i < period; ++i) {
        total *= values.size();
        if (total > max_patterns)
            throw ResourceError("mismatch_best_pattern: too many candidate patterns");
    }
    auto density_of = [&](const Dfao& z) {
        DensityReport rep = uniform_density(z);
        if (rep.exact) {
            auto it = rep.rho.find(1);
            return it == rep.rho.end() ? mpq_class(0) : it->second;
        }
        mpz_class bound = mpz_class(1) << 20;
        mpq_class q(count_below(z, bound), bound);
        q.canonicalize();
        return q;
    };
    std::optional<mpq_class> best_density;
    std::vector<int> best_pattern;
    Dfao best_automaton;
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<int> pattern(static_cast<std::size_t>(period));
        std::size_t rem = c;
        for (int i = 0; i < period; ++i) {
            pattern[static_cast<std::size_t>(i)] = values[rem % values.size()];
            rem /= values.size();
        }
        Dfao z = mismatch_set(msd, period, pattern);
        mpq_class d = density_of(z);
        if (!best_density || d < *best_density) {
            best_density = d;
            best_pattern = pattern;
            best_automaton = z;
        }
    }
    return {best_pattern, best_automaton};
}

}  // namespace aridlab
