#include "aridlab/combinat.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace aridlab {

namespace {

mpz_class pow_k(int k, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(k), e);
    return r;
}

Word repeat(const Word& w, std::size_t times) {
    Word r;
    r.reserve(w.size() * times);
    for (std::size_t i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

}  // namespace

// --- IPS witness ------------------------------------------------------------

std::vector<mpz_class> IpsWitness::generators(int count) const {
    mpz_class diff = word_value(v2, k, Reading::msd) - word_value(v1, k, Reading::msd);
    std::vector<mpz_class> gens;
    mpz_class p = pow_k(k, u1.size());
    mpz_class step = pow_k(k, v1.size());
    for (int i = 1; i <= count; ++i) {
        gens.push_back(diff * p);
        p *= step;
    }
    return gens;
}

std::vector<mpz_class> IpsWitness::shifts(int count) const {
    std::vector<mpz_class> out;
    for (int t = 1; t <= count; ++t) {
        Word w = u0;
        Word mid = repeat(v1, static_cast<std::size_t>(t));
        w.insert(w.end(), mid.begin(), mid.end());
        w.insert(w.end(), u1.begin(), u1.end());
        out.push_back(word_value(w, k, Reading::msd));
    }
    return out;
}

IpsWitness ips_witness(const Dfao& indicator, int target) {
    Classification cls = classify(indicator, target);
    if (cls.arid) throw Error("ips_witness: set is arid, no witness exists");
    const NotAridEvidence& ev = *cls.evidence;
    Dfao machine = classification_machine(indicator, target);

    IpsWitness w;
    w.k = machine.k;
    w.state = ev.state;
    w.machine = machine;
    w.v1 = repeat(ev.loop1, ev.loop2.size());
    w.v2 = repeat(ev.loop2, ev.loop1.size());
    if (word_value(w.v1, w.k, Reading::msd) > word_value(w.v2, w.k, Reading::msd))
        std::swap(w.v1, w.v2);
    auto u0 = shortest_word(machine, machine.initial, [&](int q) { return q == ev.state; });
    auto u1 = shortest_word(machine, ev.state,
                            [&](int q) { return machine.output[q] == target; });
    if (!u0 || !u1) throw Error("internal: evidence state not trim");
    w.u0 = *u0;
    w.u1 = *u1;
    // loop sanity
    if (machine.walk(ev.state, w.v1) != ev.state || machine.walk(ev.state, w.v2) != ev.state)
        throw Error("internal: equalized words are not loops");
    return w;
}

// --- shifted IP -------------------------------------------------------------

std::vector<mpz_class> ShiftedIpWitness::generators(int count) const {
    mpz_class vval = word_value(v, k, Reading::lsd);
    std::vector<mpz_class> gens;
    mpz_class p = pow_k(k, access.size());
    mpz_class step = pow_k(k, static_cast<unsigned long>(l));
    for (int i = 1; i <= count; ++i) {
        gens.push_back(vval * p);
        p *= step;
    }
    return gens;
}

std::optional<Word> factor_universality_failure(const Dfao& indicator, int max_len,
                                                int target) {
    Dfao m = with_reading(indicator, Reading::lsd);
    AutomatonAnalysis an = analyze(m, target);
    for (int len = 1; len <= max_len; ++len) {
        double total = 1;
        for (int i = 0; i < len; ++i) total *= m.k;
        if (total > 1e6) throw ResourceError("factor_universality_failure: too many words");
        Word w(static_cast<std::size_t>(len), 0);
        for (;;) {
            // w holds the factor in MSD orientation; the LSD automaton
            // reads it reversed
            Word lsd(w.rbegin(), w.rend());
            bool embeddable = false;
            for (int q = 0; q < m.size() && !embeddable; ++q)
                if (an.coaccessible[m.walk(q, lsd)]) embeddable = true;
            if (!embeddable) return w;
            int pos = len - 1;
            while (pos >= 0 && w[static_cast<std::size_t>(pos)] == m.k - 1) {
                w[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++w[static_cast<std::size_t>(pos)];
        }
    }
    return std::nullopt;
}

ShiftedIpWitness shifted_ip_witness(const Dfao& indicator, int factor_check_len,
                                    int target) {
    if (auto bad = factor_universality_failure(indicator, factor_check_len, target)) {
        std::string digits;
        for (int d : *bad) digits += std::to_string(d);
        throw Error("shifted_ip_witness: everywhere-factor hypothesis fails for factor " +
                    digits);
    }
    Dfao m = with_reading(indicator, Reading::lsd);
    const int n = m.size();

    // pair-scheduling word w over all n^2 state pairs, with per-pair offsets
    Word w;
    std::vector<std::size_t> offset_after;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
    for (const auto& [si, ti] : pairs) {
        int cur = m.walk(si, w);
        auto path = shortest_word(m, cur, [&](int q) { return q == ti; });
        if (path) w.insert(w.end(), path->begin(), path->end());
        offset_after.push_back(w.size());
    }

    // find q0 and a continuation containing a nonzero digit that accepts
    auto nonzero_path_to_accept = [&](int from) -> std::optional<Word> {
        // BFS over (state, seen-nonzero)
        std::vector<int> parent(2 * n, -1), via(2 * n, -1);
        std::vector<char> seen(2 * n, 0);
        std::vector<int> queue{from};  // node = state + n * flag
        seen[from] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int node = queue[i];
            int state = node % n, flag = node / n;
            if (flag == 1 && m.output[state] == target) {
                Word path;
                while (node != from) {
                    path.push_back(via[node]);
                    node = parent[node];
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            for (int d = 0; d < m.k; ++d) {
                int nf = flag || d != 0;
                int next = m.step(state, d) + n * nf;
                if (!seen[next]) {
                    seen[next] = 1;
                    parent[next] = node;
                    via[next] = d;
                    queue.push_back(next);
                }
            }
        }
        return std::nullopt;
    };

    int q0 = -1, s = -1;
    Word y;
    for (int cand = 0; cand < n; ++cand) {
        int t = m.walk(cand, w);
        if (auto path = nonzero_path_to_accept(t)) {
            q0 = cand;
            y = *path;
            s = m.walk(t, y);
            break;
        }
    }
    if (q0 < 0)
        throw Error("shifted_ip_witness: no accepting continuation found "
                    "(hypothesis fails beyond the checked factor length)");

    Word zeros_n(static_cast<std::size_t>(n), 0);
    int s_tilde = m.walk(s, zeros_n);

    // return word from s_tilde to s per the scheduling construction
    Word v_tilde;
    {
        std::size_t j = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i].first == q0 && pairs[i].second == s_tilde) {
                j = i;
                break;
            }
        if (j == std::numeric_limits<std::size_t>::max())
            throw Error("internal: pair enumeration incomplete");
        v_tilde.assign(w.begin() + static_cast<std::ptrdiff_t>(offset_after[j]), w.end());
        v_tilde.insert(v_tilde.end(), y.begin(), y.end());
        if (m.walk(s_tilde, v_tilde) != s)
            throw Error("shifted_ip_witness: scheduling invariant failed "
                        "(hypothesis fails beyond the checked factor length)");
    }

    // zero-tail stabilization: first repeat on the 0-trajectory from s
    int i0 = -1, j0 = -1;
    {
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        int cur = s;
        for (int step = 0; step <= n; ++step) {
            if (pos[static_cast<std::size_t>(cur)] >= 0) {
                i0 = pos[static_cast<std::size_t>(cur)];
                j0 = step;
                break;
            }
            pos[static_cast<std::size_t>(cur)] = step;
            cur = m.step(cur, 0);
        }
    }
    if (i0 < 0) throw Error("internal: zero trajectory has no repeat");
    int period = j0 - i0;
    int mm = period;
    while (mm <= i0) mm += period;  // smallest multiple of the period exceeding i0

    Word zeros_m(static_cast<std::size_t>(mm), 0);
    int s_prime = m.walk(s, zeros_m);
    Word u = zeros_n;
    u.insert(u.end(), v_tilde.begin(), v_tilde.end());
    if (m.walk(s_prime, u) != s) throw Error("internal: u does not return s' to s");

    Word block = zeros_m;
    block.insert(block.end(), u.begin(), u.end());
    Word v = repeat(block, static_cast<std::size_t>(mm));
    int l = static_cast<int>(v.size());
    Word z(static_cast<std::size_t>(l), 0);

    // the Claim diagram
    if (m.walk(s, z) != s_prime || m.walk(s, v) != s || m.walk(s_prime, z) != s_prime ||
        m.walk(s_prime, v) != s || m.output[s] != target)
        throw Error("internal: claim relations failed");

    auto access = shortest_word(m, m.initial, [&](int q) { return q == s; });
    if (!access) throw Error("internal: witness state unreachable");

    ShiftedIpWitness out;
    out.k = m.k;
    out.s = s;
    out.s_prime = s_prime;
    out.l = l;
    out.v = v;
    out.access = *access;
    out.shift = word_value(*access, m.k, Reading::lsd);
    out.machine = m;
    return out;
}

// --- finite-sums verification ------------------------------------------------

FsReport verify_fs(const Dfao& indicator, const std::vector<mpz_class>& generators,
                   const std::vector<mpz_class>& shifts, int target) {
    if (generators.size() > 20) throw Error("verify_fs: at most 20 generators");
    for (const mpz_class& g : generators)
        if (g <= 0) throw Error("verify_fs: generators must be positive");
    FsReport report;
    const std::size_t T = generators.size();
    auto subset_sum = [&](uint64_t mask) {
        mpz_class sum = 0;
        for (std::size_t i = 0; i < T; ++i)
            if (mask & (uint64_t(1) << i)) sum += generators[i];
        return sum;
    };
    auto check = [&](const mpz_class& value) {
        ++report.checked;
        if (indicator.run(value) != target && report.ok) {
            report.ok = false;
            report.first_failure = value;
        }
    };
    if (shifts.empty()) {
        for (uint64_t mask = 1; mask < (uint64_t(1) << T); ++mask) check(subset_sum(mask));
    } else {
        std::size_t tmax = std::min(shifts.size(), T);
        for (std::size_t t = 1; t <= tmax; ++t)
            for (uint64_t mask = 0; mask < (uint64_t(1) << t); ++mask)
                check(subset_sum(mask) + shifts[t - 1]);
    }
    if (!report.ok && report.first_failure)
        report.detail = "first failing sum: " + report.first_failure->get_str();
    return report;
}

std::optional<mpz_class> translate_ip_failure(const Dfao& indicator,
                                              const std::vector<mpz_class>& generators,
                                              const mpz_class& m, int target) {
    if (generators.size() > 20) throw Error("translate_ip_failure: at most 20 generators");
    const std::size_t T = generators.size();
    for (uint64_t mask = 1; mask < (uint64_t(1) << T); ++mask) {
        mpz_class sum = 0;
        for (std::size_t i = 0; i < T; ++i)
            if (mask & (uint64_t(1) << i)) sum += generators[i];
        mpz_class shifted = sum - m;
        if (shifted >= 0 && indicator.run(shifted) != target) return sum;
    }
    return std::nullopt;
}

}  // namespace aridlab
