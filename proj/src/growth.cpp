#include "aridlab/growth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace aridlab {

namespace {

std::string word_str(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (int d : w) {
        if (d < 10) s += static_cast<char>('0' + d);
        else s += "[" + std::to_string(d) + "]";
    }
    return s;
}

/// MSD automaton whose language is exactly the canonical accepted words:
/// words with a leading zero are routed to a rejecting sink, so ranks and
/// decompositions are not inflated by leading-zero padding.
Dfao canonical_language(const Dfao& a, int target) {
    Dfao m = with_reading(a, Reading::msd);
    int n = m.size();
    Dfao b = m;
    int fresh = n, dead = n + 1;
    b.output.push_back(m.output[m.initial]);
    b.output.push_back(target == 0 ? 1 : 0);  // any non-target value
    b.delta.resize(static_cast<std::size_t>(n + 2) * b.k);
    for (int d = 0; d < b.k; ++d) {
        b.delta[static_cast<std::size_t>(fresh) * b.k + d] =
            d == 0 ? dead : m.step(m.initial, d);
        b.delta[static_cast<std::size_t>(dead) * b.k + d] = dead;
    }
    b.initial = fresh;
    return minimize(b);
}

struct SccInfo {
    AutomatonAnalysis an;
    std::vector<char> cyclic;              // per SCC: has at least one internal edge
    std::vector<char> simple;              // per SCC: cyclic and a simple cycle
    std::vector<int> internal_out_degree;  // per state
};

SccInfo scc_info(const Dfao& a, int target) {
    SccInfo info;
    info.an = analyze(a, target);
    info.cyclic.assign(info.an.scc_count, 0);
    info.simple.assign(info.an.scc_count, 1);
    info.internal_out_degree.assign(a.size(), 0);
    for (int s = 0; s < a.size(); ++s)
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            if (info.an.scc_id[s] == info.an.scc_id[t]) {
                ++info.internal_out_degree[s];
                info.cyclic[info.an.scc_id[s]] = 1;
            }
        }
    for (int s = 0; s < a.size(); ++s)
        if (info.internal_out_degree[s] > 1) info.simple[info.an.scc_id[s]] = 0;
    return info;
}

// Unique internal cycle through `p` in a simple-cycle SCC: digits and states.
void cycle_from(const Dfao& a, const SccInfo& info, int p, Word& digits,
                std::vector<int>& states) {
    digits.clear();
    states.clear();
    int scc = info.an.scc_id[p];
    int cur = p;
    do {
        states.push_back(cur);
        bool advanced = false;
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(cur, d);
            if (info.an.scc_id[t] == scc) {
                digits.push_back(d);
                cur = t;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw Error("internal: cycle_from on acyclic SCC");
    } while (cur != p);
}

Classification classify_machine(const Dfao& a, int target) {
    Classification result;
    SccInfo info = scc_info(a, target);
    const auto& an = info.an;

    // Noncommuting-loop search on trim SCCs.
    for (int s = 0; s < a.size(); ++s) {
        if (!an.trim[s] || info.internal_out_degree[s] < 2) continue;
        int scc = an.scc_id[s];
        std::vector<char> allowed(a.size(), 0);
        for (int t : an.scc_members[scc]) allowed[t] = 1;
        NotAridEvidence ev;
        ev.state = s;
        Word* loops[2] = {&ev.loop1, &ev.loop2};
        int found = 0;
        for (int d = 0; d < a.k && found < 2; ++d) {
            int t = a.step(s, d);
            if (an.scc_id[t] != scc) continue;
            auto back = shortest_word(a, t, [&](int q) { return q == s; }, allowed);
            if (!back) throw Error("internal: SCC member cannot return");
            loops[found]->assign(1, d);
            loops[found]->insert(loops[found]->end(), back->begin(), back->end());
            ++found;
        }
        // Distinct first digits guarantee loop1 loop2 != loop2 loop1.
        result.arid = false;
        result.evidence = ev;
        return result;
    }

    result.arid = true;
    // rank: longest condensation path among trim SCCs, counting cyclic SCCs
    if (!an.trim[a.initial]) {
        result.rank = 0;  // empty language
        return result;
    }
    std::vector<char> scc_trim(an.scc_count, 0);
    for (int s = 0; s < a.size(); ++s)
        if (an.trim[s]) scc_trim[an.scc_id[s]] = 1;
    std::vector<int> memo(an.scc_count, -1);
    auto best = [&](auto&& self, int c) -> int {
        if (memo[c] >= 0) return memo[c];
        int r = info.cyclic[c] ? 1 : 0;
        int follow = 0;
        for (int nc : an.scc_dag[c])
            if (scc_trim[nc]) follow = std::max(follow, self(self, nc));
        return memo[c] = r + follow;
    };
    result.rank = best(best, an.scc_id[a.initial]);
    return result;
}

AridDecomposition decompose_machine(const Dfao& a, int target) {
    AridDecomposition out;
    out.k = a.k;
    Classification cls = classify_machine(a, target);
    if (!cls.arid) throw Error("arid_decompose: automaton is not arid");
    SccInfo info = scc_info(a, target);
    const auto& an = info.an;
    if (!an.trim[a.initial]) return out;

    struct Partial {
        std::vector<Word> bridges;
        std::vector<Word> pumps;
    };
    auto emit = [&](const Partial& part, const Word& last_bridge) {
        BasicAridSet b;
        b.k = a.k;
        b.bridges = part.bridges;
        b.bridges.push_back(last_bridge);
        b.pumps = part.pumps;
        b.positive.assign(b.pumps.size(), 0);
        out.parts.push_back(std::move(b));
    };

    auto dfs = [&](auto&& self, int p, Partial part, Word bridge) -> void {
        int scc = an.scc_id[p];
        if (info.cyclic[scc]) {
            Word cyc;
            std::vector<int> cyc_states;
            cycle_from(a, info, p, cyc, cyc_states);
            part.bridges.push_back(bridge);
            part.pumps.push_back(cyc);
            Word walk;  // path from p to the current cycle position
            for (std::size_t i = 0; i < cyc_states.size(); ++i) {
                int q = cyc_states[i];
                if (a.output[q] == target) emit(part, walk);
                for (int d = 0; d < a.k; ++d) {
                    int t = a.step(q, d);
                    if (an.scc_id[t] == scc || !an.trim[t]) continue;
                    Word next = walk;
                    next.push_back(d);
                    self(self, t, part, next);
                }
                walk.push_back(cyc[i]);
            }
        } else {
            if (a.output[p] == target) emit(part, bridge);
            for (int d = 0; d < a.k; ++d) {
                int t = a.step(p, d);
                if (!an.trim[t]) continue;
                Word next = bridge;
                next.push_back(d);
                self(self, t, part, next);
            }
        }
    };
    dfs(dfs, a.initial, Partial{}, Word{});
    return out;
}

}  // namespace

std::string BasicAridSet::to_string() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < bridges.size(); ++i) {
        if (i) s << " (" << word_str(pumps[i - 1]) << ")" << (positive[i - 1] ? "+" : "*") << " ";
        s << word_str(bridges[i]);
    }
    return s.str();
}

int AridDecomposition::rank() const {
    int r = 0;
    for (const auto& p : parts) r = std::max(r, p.rank());
    return r;
}

Dfao classification_machine(const Dfao& indicator, int target) {
    return canonical_language(indicator, target);
}

Classification classify(const Dfao& indicator, int target) {
    return classify_machine(canonical_language(indicator, target), target);
}

mpz_class count_below(const Dfao& indicator, const mpz_class& limit, int target) {
    Dfao a = indicator.reading == Reading::msd ? indicator : with_reading(indicator, Reading::msd);
    if (limit <= 0) return 0;
    mpz_class total = 0;
    if (a.output[a.initial] == target) total += 1;  // n = 0, empty word
    mpz_class top = limit - 1;
    if (top == 0) return total;
    Word digits = canonical_digits(top, a.k, Reading::msd);
    const int len = static_cast<int>(digits.size());
    // cnt[r][s]: words of length r from s ending in a target state
    std::vector<std::vector<mpz_class>> cnt(len);
    cnt[0].assign(a.size(), 0);
    for (int s = 0; s < a.size(); ++s) cnt[0][s] = a.output[s] == target ? 1 : 0;
    for (int r = 1; r < len; ++r) {
        cnt[r].assign(a.size(), 0);
        for (int s = 0; s < a.size(); ++s)
            for (int d = 0; d < a.k; ++d) cnt[r][s] += cnt[r - 1][a.step(s, d)];
    }
    // canonical words shorter than |digits|
    for (int l = 1; l < len; ++l)
        for (int d = 1; d < a.k; ++d) total += cnt[l - 1][a.step(a.initial, d)];
    // length == |digits|, lexicographically <= digits
    int state = a.initial;
    for (int i = 0; i < len; ++i) {
        int lo = i == 0 ? 1 : 0;
        for (int d = lo; d < digits[i]; ++d) {
            int rem = len - i - 1;
            total += cnt[rem][a.step(state, d)];
        }
        state = a.step(state, digits[i]);
    }
    if (a.output[state] == target) total += 1;  // n == top itself
    return total;
}

mpz_class count_range(const Dfao& indicator, const mpz_class& m, const mpz_class& n, int target) {
    Dfao a = indicator.reading == Reading::msd ? indicator : with_reading(indicator, Reading::msd);
    return count_below(a, m + n, target) - count_below(a, m, target);
}

AridDecomposition arid_decompose(const Dfao& indicator, int target) {
    Dfao machine = canonical_language(indicator, target);
    AridDecomposition d = decompose_machine(machine, target);
    if (!decomposition_matches_automaton(d, machine, target))
        throw Error("arid_decompose: verification mismatch (internal bug)");
    return d;
}

Dfao decomposition_automaton(const AridDecomposition& d) {
    const int k = d.k;
    // epsilon-NFA over the basic-set patterns
    std::vector<std::vector<std::vector<int>>> trans;  // node -> digit -> targets
    std::vector<std::vector<int>> eps;
    std::vector<char> accept;
    std::vector<int> starts;
    auto add_node = [&]() {
        trans.emplace_back(k);
        eps.emplace_back();
        accept.push_back(0);
        return static_cast<int>(trans.size()) - 1;
    };
    auto chain = [&](int from, const Word& w) {
        for (int digit : w) {
            int nxt = add_node();
            trans[from][digit].push_back(nxt);
            from = nxt;
        }
        return from;
    };
    for (const auto& part : d.parts) {
        int cur = add_node();
        starts.push_back(cur);
        cur = chain(cur, part.bridges[0]);
        for (std::size_t i = 0; i < part.pumps.size(); ++i) {
            const Word& w = part.pumps[i];
            if (w.empty()) throw Error("decomposition_automaton: empty pump word");
            if (part.positive[i]) cur = chain(cur, w);  // mandatory first copy
            int junction = add_node();
            eps[cur].push_back(junction);
            // loop: junction --w--> junction
            int mid = junction;
            for (std::size_t j = 0; j + 1 < w.size(); ++j) {
                int nxt = add_node();
                trans[mid][w[j]].push_back(nxt);
                mid = nxt;
            }
            trans[mid][w.back()].push_back(junction);
            cur = chain(junction, part.bridges[i + 1]);
        }
        accept[cur] = 1;
    }

    auto closure = [&](std::set<int> s) {
        std::deque<int> queue(s.begin(), s.end());
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int t : eps[v])
                if (s.insert(t).second) queue.push_back(t);
        }
        return s;
    };

    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> subsets;
    auto intern = [&](std::set<int> s) {
        auto [it, fresh] = index.emplace(std::move(s), static_cast<int>(subsets.size()));
        if (fresh) subsets.push_back(it->first);
        return it->second;
    };
    Dfao dfa;
    dfa.k = k;
    dfa.reading = Reading::msd;
    dfa.initial = intern(closure(std::set<int>(starts.begin(), starts.end())));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::set<int> cur = subsets[i];
        for (int digit = 0; digit < k; ++digit) {
            std::set<int> nxt;
            for (int v : cur)
                for (int t : trans[v][digit]) nxt.insert(t);
            intern(closure(std::move(nxt)));
        }
    }
    dfa.output.resize(subsets.size());
    dfa.delta.resize(subsets.size() * k);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::set<int> cur = subsets[i];
        dfa.output[i] = 0;
        for (int v : cur)
            if (accept[v]) dfa.output[i] = 1;
        for (int digit = 0; digit < k; ++digit) {
            std::set<int> nxt;
            for (int v : cur)
                for (int t : trans[v][digit]) nxt.insert(t);
            dfa.delta[i * k + digit] = index.at(closure(std::move(nxt)));
        }
    }
    return minimize(dfa);
}

bool decomposition_matches_automaton(const AridDecomposition& d, const Dfao& indicator,
                                     int target) {
    Dfao lang = decomposition_automaton(d);
    Dfao a = indicator.reading == Reading::msd ? indicator : reverse_reading(indicator);
    Dfao ind = a;
    for (auto& o : ind.output) o = o == target ? 1 : 0;
    return same_function(minimize(ind), lang);
}

AridDecomposition prefix_restrict(const Dfao& indicator, const Word& v, int target) {
    Dfao machine = canonical_language(indicator, target);
    Dfao sub = machine;
    sub.initial = machine.walk(machine.initial, v);
    AridDecomposition d = decompose_machine(minimize(sub), target);
    for (auto& part : d.parts) {
        Word merged = v;
        merged.insert(merged.end(), part.bridges[0].begin(), part.bridges[0].end());
        part.bridges[0] = std::move(merged);
    }
    d.k = indicator.k;
    return d;
}

AridDecomposition suffix_restrict(const Dfao& indicator, const Word& u, int target) {
    Dfao machine = canonical_language(indicator, target);
    Dfao quot = machine;
    for (int s = 0; s < machine.size(); ++s)
        quot.output[s] = machine.output[machine.walk(s, u)] == target ? 1 : 0;
    AridDecomposition d = decompose_machine(minimize(quot), 1);
    for (auto& part : d.parts) {
        Word& last = part.bridges.back();
        last.insert(last.end(), u.begin(), u.end());
    }
    d.k = indicator.k;
    return d;
}

std::pair<Word, AridDecomposition> find_rank1_prefix(const Dfao& indicator, int target) {
    Dfao machine = canonical_language(indicator, target);
    int max_len = 4 * machine.size() + 4;
    std::deque<Word> queue{Word{}};
    while (!queue.empty()) {
        Word v = queue.front();
        queue.pop_front();
        AridDecomposition d = prefix_restrict(indicator, v, target);
        if (!d.parts.empty() && d.rank() <= 1) return {v, d};
        if (static_cast<int>(v.size()) < max_len) {
            for (int digit = 0; digit < indicator.k; ++digit) {
                Word nxt = v;
                nxt.push_back(digit);
                queue.push_back(nxt);
            }
        }
    }
    throw ResourceError("find_rank1_prefix: no rank-1 prefix within the length bound");
}

PumpingWitness pumping_witness(const Dfao& a, const mpz_class& n, int window_start) {
    Dfao m = with_reading(a, Reading::msd);
    const int state_count = m.size();
    Word w = canonical_digits(n, m.k, Reading::msd);
    const int len = static_cast<int>(w.size());
    if (len < state_count)
        throw Error("pumping_witness: |(n)_k| must be at least the state count");
    if (window_start < 0 || window_start > len - state_count)
        throw Error("pumping_witness: window start out of range");
    std::vector<int> trace(len + 1);
    trace[0] = m.initial;
    for (int i = 0; i < len; ++i) trace[i + 1] = m.step(trace[i], w[i]);
    std::map<int, int> seen;
    int lo = window_start, hi = window_start + state_count;
    int i = -1, j = -1;
    for (int pos = lo; pos <= hi; ++pos) {
        auto [it, fresh] = seen.emplace(trace[pos], pos);
        if (!fresh) {
            i = it->second;
            j = pos;
            break;
        }
    }
    if (i < 0) throw Error("internal: pigeonhole failed in pumping_witness");
    PumpingWitness pw;
    pw.word = w;
    pw.u0.assign(w.begin(), w.begin() + i);
    pw.v.assign(w.begin() + i, w.begin() + j);
    pw.u1.assign(w.begin() + j, w.end());
    pw.pump_constant = state_count;
    pw.window_start = window_start;
    int base = m.run_word(w);
    for (int t = 0; t <= 8; ++t) {
        Word pumped = pw.u0;
        for (int rep = 0; rep < t; ++rep) pumped.insert(pumped.end(), pw.v.begin(), pw.v.end());
        pumped.insert(pumped.end(), pw.u1.begin(), pw.u1.end());
        if (m.run_word(pumped) != base)
            throw Error("internal: pumped value changed");
    }
    return pw;
}

}  // namespace aridlab
