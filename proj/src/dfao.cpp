#include "aridlab/dfao.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace aridlab {

int Dfao::walk(int s, const Word& w) const {
    for (int d : w) s = step(s, d);
    return s;
}

int Dfao::run(uint64_t n) const { return run_word(canonical_digits(n, k, reading)); }

int Dfao::run(const mpz_class& n) const { return run_word(canonical_digits(n, k, reading)); }

void Dfao::validate() const {
    if (k < 2) throw Error("dfao: base must be >= 2");
    const std::size_t ns = output.size();
    if (ns == 0) throw Error("dfao: no states");
    if (delta.size() != ns * k) throw Error("dfao: transition table is not total");
    if (initial < 0 || static_cast<std::size_t>(initial) >= ns)
        throw Error("dfao: initial state out of range");
    for (int t : delta)
        if (t < 0 || static_cast<std::size_t>(t) >= ns)
            throw Error("dfao: transition target out of range");
}

Word canonical_digits(const mpz_class& n, int k, Reading reading) {
    if (n < 0) throw Error("canonical_digits: negative input");
    Word w;
    mpz_class m = n;
    while (m > 0) {
        mpz_class q, r;
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), k);
        w.push_back(static_cast<int>(r.get_ui()));
        m = q;
    }
    // built least-significant first
    if (reading == Reading::msd) std::reverse(w.begin(), w.end());
    return w;
}

Word canonical_digits(uint64_t n, int k, Reading reading) {
    Word w;
    while (n > 0) {
        w.push_back(static_cast<int>(n % k));
        n /= k;
    }
    if (reading == Reading::msd) std::reverse(w.begin(), w.end());
    return w;
}

mpz_class word_value(const Word& w, int k, Reading reading) {
    mpz_class v = 0;
    if (reading == Reading::msd) {
        for (int d : w) v = v * k + d;
    } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it) v = v * k + *it;
    }
    return v;
}

namespace {

std::vector<char> reachable_mask(const Dfao& a) {
    std::vector<char> seen(a.size(), 0);
    std::deque<int> queue{a.initial};
    seen[a.initial] = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

// Renumber states by BFS discovery order from the initial state.
Dfao bfs_canonical(const Dfao& a) {
    std::vector<int> order(a.size(), -1);
    int next = 0;
    std::deque<int> queue{a.initial};
    order[a.initial] = next++;
    std::vector<int> discovered{a.initial};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            if (order[t] < 0) {
                order[t] = next++;
                discovered.push_back(t);
                queue.push_back(t);
            }
        }
    }
    Dfao b;
    b.k = a.k;
    b.reading = a.reading;
    b.initial = 0;
    b.output.resize(next);
    b.delta.resize(static_cast<std::size_t>(next) * a.k);
    for (int s : discovered) {
        int ns = order[s];
        b.output[ns] = a.output[s];
        for (int d = 0; d < a.k; ++d) b.delta[static_cast<std::size_t>(ns) * a.k + d] = order[a.step(s, d)];
    }
    return b;
}

}  // namespace

Dfao minimize(const Dfao& a) {
    a.validate();
    std::vector<char> reach = reachable_mask(a);

    // Moore refinement over reachable states.
    std::vector<int> cls(a.size(), -1);
    int num_classes = 0;
    {
        std::map<int, int> by_output;
        for (int s = 0; s < a.size(); ++s) {
            if (!reach[s]) continue;
            auto [it, fresh] = by_output.emplace(a.output[s], static_cast<int>(by_output.size()));
            cls[s] = it->second;
        }
        num_classes = static_cast<int>(by_output.size());
    }
    while (true) {
        std::map<std::vector<int>, int> sig_to_cls;
        std::vector<int> next_cls(a.size(), -1);
        for (int s = 0; s < a.size(); ++s) {
            if (!reach[s]) continue;
            std::vector<int> sig;
            sig.reserve(a.k + 1);
            sig.push_back(cls[s]);
            for (int d = 0; d < a.k; ++d) sig.push_back(cls[a.step(s, d)]);
            auto [it, fresh] = sig_to_cls.emplace(std::move(sig), static_cast<int>(sig_to_cls.size()));
            next_cls[s] = it->second;
        }
        int new_count = static_cast<int>(sig_to_cls.size());
        cls = std::move(next_cls);
        if (new_count == num_classes) break;
        num_classes = new_count;
    }
    Dfao b;
    b.k = a.k;
    b.reading = a.reading;
    b.initial = cls[a.initial];
    b.output.assign(num_classes, 0);
    b.delta.assign(static_cast<std::size_t>(num_classes) * a.k, 0);
    for (int s = 0; s < a.size(); ++s) {
        if (!reach[s]) continue;
        int c = cls[s];
        b.output[c] = a.output[s];
        for (int d = 0; d < a.k; ++d) b.delta[static_cast<std::size_t>(c) * a.k + d] = cls[a.step(s, d)];
    }
    return bfs_canonical(b);
}

Dfao product(const Dfao& a, const Dfao& b, const std::function<int(int, int)>& combine) {
    if (a.k != b.k) throw Error("product: base mismatch");
    if (a.reading != b.reading) throw Error("product: reading-direction mismatch");
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int s, int t) {
        auto [it, fresh] = index.emplace(std::make_pair(s, t), static_cast<int>(pairs.size()));
        if (fresh) pairs.emplace_back(s, t);
        return it->second;
    };
    Dfao p;
    p.k = a.k;
    p.reading = a.reading;
    p.initial = intern(a.initial, b.initial);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs[i];
        for (int d = 0; d < a.k; ++d) intern(a.step(s, d), b.step(t, d));
    }
    p.output.resize(pairs.size());
    p.delta.resize(pairs.size() * a.k);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs[i];
        p.output[i] = combine(a.output[s], b.output[t]);
        for (int d = 0; d < a.k; ++d)
            p.delta[i * a.k + d] = index.at({a.step(s, d), b.step(t, d)});
    }
    return p;
}

Dfao reverse_reading(const Dfao& a, std::size_t state_cap) {
    a.validate();
    const int n = a.size();
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> maps;
    auto intern = [&](std::vector<int> m) {
        auto [it, fresh] = index.emplace(std::move(m), static_cast<int>(maps.size()));
        if (fresh) {
            maps.push_back(it->first);
            if (maps.size() > state_cap)
                throw ResourceError("reverse_reading: state cap exceeded");
        }
        return it->second;
    };
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    Dfao b;
    b.k = a.k;
    b.reading = a.reading == Reading::msd ? Reading::lsd : Reading::msd;
    b.initial = intern(identity);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::vector<int> cur = maps[i];
        for (int d = 0; d < a.k; ++d) {
            // new digit is read earlier in the original direction:
            // act(w d_orig) = act(w) o act(d_orig)
            std::vector<int> nm(n);
            for (int s = 0; s < n; ++s) nm[s] = cur[a.step(s, d)];
            intern(std::move(nm));
        }
    }
    b.output.resize(maps.size());
    b.delta.resize(maps.size() * a.k);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        b.output[i] = a.output[maps[i][a.initial]];
        std::vector<int> cur = maps[i];
        for (int d = 0; d < a.k; ++d) {
            std::vector<int> nm(n);
            for (int s = 0; s < n; ++s) nm[s] = cur[a.step(s, d)];
            b.delta[i * a.k + d] = index.at(nm);
        }
    }
    return minimize(b);
}

Dfao make_zero_robust(const Dfao& a) {
    a.validate();
    if (a.reading == Reading::msd) {
        // Fresh initial state that absorbs leading zeros.
        Dfao b = a;
        int fresh = b.size();
        b.output.push_back(a.output[a.initial]);
        b.delta.resize(b.delta.size() + a.k);
        for (int d = 0; d < a.k; ++d)
            b.delta[static_cast<std::size_t>(fresh) * a.k + d] =
                d == 0 ? fresh : a.step(a.initial, d);
        b.initial = fresh;
        return minimize(b);
    }
    // LSD: output is taken at the last checkpoint before a (possibly empty)
    // run of trailing zeros; states are (state, checkpoint output) pairs.
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int s, int out) {
        auto [it, fresh] = index.emplace(std::make_pair(s, out), static_cast<int>(pairs.size()));
        if (fresh) pairs.emplace_back(s, out);
        return it->second;
    };
    Dfao b;
    b.k = a.k;
    b.reading = Reading::lsd;
    b.initial = intern(a.initial, a.output[a.initial]);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [s, out] = pairs[i];
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            intern(t, d == 0 ? out : a.output[t]);
        }
    }
    b.output.resize(pairs.size());
    b.delta.resize(pairs.size() * a.k);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [s, out] = pairs[i];
        b.output[i] = out;
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            b.delta[i * a.k + d] = index.at({t, d == 0 ? out : a.output[t]});
        }
    }
    return minimize(b);
}

Dfao with_reading(const Dfao& a, Reading r, std::size_t state_cap) {
    Dfao b = a.reading == r ? a : reverse_reading(a, state_cap);
    return minimize(make_zero_robust(b));
}

bool same_function(const Dfao& a, const Dfao& b) {
    if (a.k != b.k || a.reading != b.reading) return false;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    pairs.emplace_back(a.initial, b.initial);
    index.emplace(pairs[0], 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs[i];
        if (a.output[s] != b.output[t]) return false;
        for (int d = 0; d < a.k; ++d) {
            std::pair<int, int> nx{a.step(s, d), b.step(t, d)};
            if (index.emplace(nx, static_cast<int>(pairs.size())).second) pairs.push_back(nx);
        }
    }
    return true;
}

bool same_sequence(const Dfao& a, const Dfao& b, std::size_t state_cap) {
    if (a.k != b.k) return false;
    Dfao na = with_reading(a, Reading::msd, state_cap);
    Dfao nb = with_reading(b, Reading::msd, state_cap);
    return same_function(na, nb);
}

bool is_zero_robust(const Dfao& a, int max_pad, int trials, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick_n(0, (uint64_t(1) << 40) - 1);
    std::uniform_int_distribution<int> pick_pad(1, max_pad);
    for (int t = 0; t < trials; ++t) {
        uint64_t n = pick_n(rng);
        Word w = canonical_digits(n, a.k, a.reading);
        int base = a.run_word(w);
        Word padded = w;
        int pad = pick_pad(rng);
        if (a.reading == Reading::msd)
            padded.insert(padded.begin(), pad, 0);
        else
            padded.insert(padded.end(), pad, 0);
        if (a.run_word(padded) != base) return false;
    }
    return true;
}

AutomatonAnalysis analyze(const Dfao& a, int target) {
    a.validate();
    AutomatonAnalysis r;
    const int n = a.size();
    r.accessible = reachable_mask(a);

    // reverse BFS from states whose output is the target value
    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < n; ++s)
        for (int d = 0; d < a.k; ++d) rev[a.step(s, d)].push_back(s);
    r.coaccessible.assign(n, 0);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s)
        if (a.output[s] == target) {
            r.coaccessible[s] = 1;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : rev[s])
            if (!r.coaccessible[p]) {
                r.coaccessible[p] = 1;
                queue.push_back(p);
            }
    }
    r.trim.resize(n);
    for (int s = 0; s < n; ++s) r.trim[s] = r.accessible[s] && r.coaccessible[s];

    // iterative Tarjan
    r.scc_id.assign(n, -1);
    std::vector<int> low(n), disc(n, -1), stk;
    std::vector<char> on_stack(n, 0);
    int timer = 0;
    struct Frame {
        int s;
        int edge;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        disc[root] = low[root] = timer++;
        stk.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < a.k) {
                int t = a.step(f.s, f.edge++);
                if (disc[t] < 0) {
                    disc[t] = low[t] = timer++;
                    stk.push_back(t);
                    on_stack[t] = 1;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.s] = std::min(low[f.s], disc[t]);
                }
            } else {
                if (low[f.s] == disc[f.s]) {
                    int id = r.scc_count++;
                    r.scc_members.emplace_back();
                    int t;
                    do {
                        t = stk.back();
                        stk.pop_back();
                        on_stack[t] = 0;
                        r.scc_id[t] = id;
                        r.scc_members.back().push_back(t);
                    } while (t != f.s);
                }
                int s = f.s;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().s] = std::min(low[frames.back().s], low[s]);
            }
        }
    }

    r.scc_dag.assign(r.scc_count, {});
    for (int s = 0; s < n; ++s)
        for (int d = 0; d < a.k; ++d) {
            int u = r.scc_id[s], v = r.scc_id[a.step(s, d)];
            if (u != v) r.scc_dag[u].push_back(v);
        }
    for (auto& edges : r.scc_dag) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    return r;
}

std::optional<Word> shortest_word(const Dfao& a, int from, const std::function<bool(int)>& goal,
                                  const std::vector<char>& allowed) {
    std::vector<int> parent(a.size(), -2);
    std::vector<int> via(a.size(), -1);
    std::deque<int> queue{from};
    parent[from] = -1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (goal(s)) {
            Word w;
            for (int cur = s; parent[cur] != -1; cur = parent[cur]) w.push_back(via[cur]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (int d = 0; d < a.k; ++d) {
            int t = a.step(s, d);
            if (!allowed.empty() && !allowed[t]) continue;
            if (parent[t] == -2) {
                parent[t] = s;
                via[t] = d;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

std::string to_text(const Dfao& a) {
    std::ostringstream out;
    out << "dfao k=" << a.k << " states=" << a.size() << " initial=" << a.initial
        << " reading=" << (a.reading == Reading::msd ? "msd" : "lsd") << "\n";
    for (int s = 0; s < a.size(); ++s) {
        out << "state " << s << " output=" << a.output[s];
        for (int d = 0; d < a.k; ++d) out << " " << d << ":" << a.step(s, d);
        out << "\n";
    }
    return out.str();
}

Dfao dfao_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Dfao a;
    int declared_states = -1;
    std::vector<char> seen_state;
    bool header_done = false;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError("dfao text, line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (!header_done) {
            if (tag != "dfao") fail("expected header line");
            std::string field;
            std::string reading_str;
            while (ls >> field) {
                auto eq = field.find('=');
                if (eq == std::string::npos) fail("malformed header field '" + field + "'");
                std::string key = field.substr(0, eq), val = field.substr(eq + 1);
                if (key == "k") a.k = std::stoi(val);
                else if (key == "states") declared_states = std::stoi(val);
                else if (key == "initial") a.initial = std::stoi(val);
                else if (key == "reading") reading_str = val;
                else fail("unknown header key '" + key + "'");
            }
            if (a.k < 2) fail("base must be >= 2");
            if (declared_states <= 0) fail("missing or invalid state count");
            if (reading_str == "msd") a.reading = Reading::msd;
            else if (reading_str == "lsd") a.reading = Reading::lsd;
            else fail("reading must be msd or lsd");
            a.output.assign(declared_states, 0);
            a.delta.assign(static_cast<std::size_t>(declared_states) * a.k, -1);
            seen_state.assign(declared_states, 0);
            header_done = true;
            continue;
        }
        if (tag != "state") fail("expected state line");
        int idx;
        if (!(ls >> idx)) fail("missing state index");
        if (idx < 0 || idx >= declared_states) fail("state index out of range");
        if (seen_state[idx]) fail("duplicate state line");
        seen_state[idx] = 1;
        std::string field;
        if (!(ls >> field) || field.rfind("output=", 0) != 0) fail("missing output field");
        a.output[idx] = std::stoi(field.substr(7));
        int transitions = 0;
        while (ls >> field) {
            auto colon = field.find(':');
            if (colon == std::string::npos) fail("malformed transition '" + field + "'");
            int d = std::stoi(field.substr(0, colon));
            int t = std::stoi(field.substr(colon + 1));
            if (d < 0 || d >= a.k) fail("digit out of range");
            if (t < 0 || t >= declared_states) fail("transition target out of range");
            if (a.delta[static_cast<std::size_t>(idx) * a.k + d] != -1) fail("duplicate digit");
            a.delta[static_cast<std::size_t>(idx) * a.k + d] = t;
            ++transitions;
        }
        if (transitions != a.k) fail("missing transitions");
    }
    if (!header_done) throw ParseError("dfao text: empty input");
    for (int s = 0; s < declared_states; ++s)
        if (!seen_state[s])
            throw ParseError("dfao text: no line for state " + std::to_string(s));
    a.validate();
    return a;
}

}  // namespace aridlab
