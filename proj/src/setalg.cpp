#include "aridlab/setalg.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "aridlab/growth.hpp"

namespace aridlab {

Dfao congruence_filter(const Dfao& a, uint64_t m, uint64_t r, int target) {
    if (m < 1) throw Error("congruence_filter: m must be >= 1");
    if (r >= m) throw Error("congruence_filter: r must satisfy 0 <= r < m");
    Dfao msd = with_reading(a, Reading::msd);
    Dfao tracker;
    tracker.k = msd.k;
    tracker.reading = Reading::msd;
    tracker.initial = 0;
    tracker.output.resize(m);
    tracker.delta.resize(m * static_cast<std::size_t>(msd.k));
    for (uint64_t v = 0; v < m; ++v) {
        tracker.output[v] = v == r ? 1 : 0;
        for (int d = 0; d < msd.k; ++d)
            tracker.delta[v * msd.k + d] =
                static_cast<int>((v * msd.k + static_cast<uint64_t>(d)) % m);
    }
    Dfao filtered = product(msd, tracker, [target](int x, int y) {
        return x == target && y == 1 ? 1 : 0;
    });
    return minimize(filtered);
}

Dfao affine_preimage(const Dfao& a, uint64_t alpha, uint64_t beta, std::size_t state_cap) {
    if (alpha < 1) throw Error("affine_preimage: alpha must be >= 1");
    Dfao m = with_reading(a, Reading::lsd, state_cap);
    const uint64_t k = static_cast<uint64_t>(m.k);

    // output of (s, c): feed the remaining carry digits, then read tau
    auto flush_output = [&](int s, uint64_t c) {
        while (c > 0) {
            s = m.step(s, static_cast<int>(c % k));
            c /= k;
        }
        return m.output[s];
    };

    std::map<std::pair<int, uint64_t>, int> index;
    std::vector<std::pair<int, uint64_t>> states;
    auto intern = [&](int s, uint64_t c) {
        auto [it, fresh] = index.emplace(std::make_pair(s, c), static_cast<int>(states.size()));
        if (fresh) {
            states.emplace_back(s, c);
            if (states.size() > state_cap)
                throw ResourceError("affine_preimage: state cap exceeded");
        }
        return it->second;
    };
    Dfao out;
    out.k = m.k;
    out.reading = Reading::lsd;
    out.initial = intern(m.initial, beta);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [s, c] = states[i];
        out.output.push_back(flush_output(s, c));
        for (int d = 0; d < m.k; ++d) {
            uint64_t fed = alpha * static_cast<uint64_t>(d) + c;
            int t = m.step(s, static_cast<int>(fed % k));
            out.delta.push_back(intern(t, fed / k));
        }
    }
    return minimize(out);
}

Dfao scale_preimage(const Dfao& a, uint64_t c, std::size_t state_cap) {
    return affine_preimage(a, c, 0, state_cap);
}

Dfao base_group(const Dfao& a, int e) {
    if (e < 1) throw Error("base_group: exponent must be >= 1");
    Dfao m = with_reading(a, Reading::msd);
    mpz_class big = 1;
    for (int i = 0; i < e; ++i) big *= m.k;
    if (!big.fits_sint_p() || big > 4096) throw Error("base_group: k^e too large");
    const int K = static_cast<int>(big.get_si());
    Dfao out;
    out.k = K;
    out.reading = Reading::msd;
    out.initial = m.initial;
    out.output = m.output;
    out.delta.resize(static_cast<std::size_t>(m.size()) * K);
    for (int s = 0; s < m.size(); ++s)
        for (int D = 0; D < K; ++D) {
            // expand the big digit to e base-k digits, most significant first
            int t = s;
            for (int pos = e - 1; pos >= 0; --pos) {
                int div = 1;
                for (int i = 0; i < pos; ++i) div *= m.k;
                t = m.step(t, (D / div) % m.k);
            }
            out.delta[static_cast<std::size_t>(s) * K + D] = t;
        }
    return minimize(out);
}

DensityReport uniform_density(const Dfao& a0, int L) {
    Dfao a = with_reading(a0, Reading::msd);
    DensityReport report;
    report.method = "terminal-scc-transfer";
    AutomatonAnalysis an = analyze(a, 1);

    std::set<int> alphabet(a.output.begin(), a.output.end());
    std::vector<int> snapshots;
    for (int l : {L / 4, L / 2, L})
        if (l >= 1) snapshots.push_back(l);

    // counts[s][y] = #{words u of current length : tau(delta(s,u)) = y}
    using Row = std::map<int, mpz_class>;
    std::vector<Row> counts(a.size());
    for (int s = 0; s < a.size(); ++s) counts[s][a.output[s]] = 1;
    std::map<int, std::vector<Row>> at_length;
    mpz_class total = 1;
    std::map<int, mpz_class> totals;
    for (int l = 1; l <= L; ++l) {
        std::vector<Row> next(a.size());
        for (int s = 0; s < a.size(); ++s)
            for (int d = 0; d < a.k; ++d)
                for (const auto& [y, c] : counts[a.step(s, d)]) next[s][y] += c;
        counts = std::move(next);
        total *= a.k;
        if (std::find(snapshots.begin(), snapshots.end(), l) != snapshots.end()) {
            at_length[l] = counts;
            totals[l] = total;
        }
    }

    std::vector<int> terminal;
    for (int c = 0; c < an.scc_count; ++c)
        if (an.scc_dag[c].empty()) terminal.push_back(c);

    bool uniform = true;
    std::map<int, mpq_class> reference;
    bool have_reference = false;
    for (int c : terminal) {
        DensityReport::ComponentDensity cd;
        cd.scc = c;
        for (int s : an.scc_members[c]) {
            for (int l : snapshots) {
                std::map<int, mpq_class> frac;
                for (int y : alphabet) {
                    auto it = at_length[l][s].find(y);
                    mpq_class f(it == at_length[l][s].end() ? mpz_class(0) : it->second,
                                totals[l]);
                    f.canonicalize();
                    frac[y] = f;
                }
                if (!have_reference) {
                    reference = frac;
                    have_reference = true;
                } else if (frac != reference) {
                    uniform = false;
                }
                if (l == snapshots.back() && s == an.scc_members[c].front())
                    cd.rho = frac;
            }
        }
        report.components.push_back(std::move(cd));
    }
    if (uniform && have_reference) {
        report.exact = true;
        report.rho = reference;
    }
    return report;
}

mpz_class max_window_count(const Dfao& a, const mpz_class& N, int samples, uint64_t seed,
                           int target) {
    Dfao msd = a.reading == Reading::msd ? a : with_reading(a, Reading::msd);
    std::mt19937_64 rng(seed);
    mpz_class best = count_range(msd, 0, N, target);
    for (int i = 1; i < samples; ++i) {
        mpz_class m = mpz_class(rng() & ((uint64_t(1) << 40) - 1));
        mpz_class c = count_range(msd, m, N, target);
        if (c > best) best = c;
    }
    return best;
}

DensityReport banach_estimate(const Dfao& a, const std::vector<mpz_class>& ladder,
                              int samples, uint64_t seed, int target) {
    DensityReport report;
    report.method = "window-exact-sampled-positions";
    report.seed = seed;
    for (const mpz_class& N : ladder) {
        DensityReport::WindowPoint p;
        p.N = N;
        p.max_count = max_window_count(a, N, samples, seed, target);
        p.ratio = mpq_class(p.max_count, N).get_d();
        report.profile.push_back(std::move(p));
    }
    return report;
}

DensityReport banach_estimate(const std::function<int(uint64_t)>& f, uint64_t horizon,
                              const std::vector<uint64_t>& ladder, int samples,
                              uint64_t seed, int target) {
    DensityReport report;
    report.method = "window-sampled";
    report.seed = seed;
    std::mt19937_64 rng(seed);
    for (uint64_t N : ladder) {
        if (N == 0 || N > horizon) throw Error("banach_estimate: window exceeds horizon");
        uint64_t max_count = 0;
        for (int i = 0; i < samples; ++i) {
            uint64_t m = i == 0 ? 0 : rng() % (horizon - N + 1);
            uint64_t c = 0;
            for (uint64_t j = 0; j < N; ++j)
                if (f(m + j) == target) ++c;
            max_count = std::max(max_count, c);
        }
        DensityReport::WindowPoint p;
        p.N = mpz_class(static_cast<unsigned long>(N));
        p.max_count = mpz_class(static_cast<unsigned long>(max_count));
        p.ratio = static_cast<double>(max_count) / static_cast<double>(N);
        report.profile.push_back(std::move(p));
    }
    return report;
}

}  // namespace aridlab
