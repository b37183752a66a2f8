#include "aridlab/corpus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aridlab {

namespace {

Dfao finish(Dfao a) {
    a.validate();
    return minimize(make_zero_robust(a));
}

}  // namespace

Dfao bfree_automaton(const ProhibitedFactorFamily& family) {
    if (family.k < 2) throw Error("bfree_automaton: base must be >= 2");
    for (const Word& w : family.prohibited) {
        if (w.empty()) throw Error("bfree_automaton: empty prohibited word");
        for (int d : w)
            if (d < 0 || d >= family.k) throw Error("bfree_automaton: digit out of range");
    }
    const int k = family.k;
    // Aho-Corasick trie with failure links; a match routes to a dead state.
    std::vector<std::vector<int>> child;  // trie children, -1 if absent
    std::vector<int> fail;
    std::vector<char> match;
    auto add_node = [&]() {
        child.emplace_back(k, -1);
        fail.push_back(0);
        match.push_back(0);
        return static_cast<int>(child.size()) - 1;
    };
    add_node();  // root = 0
    for (const Word& w : family.prohibited) {
        int cur = 0;
        for (int d : w) {
            if (child[cur][d] < 0) child[cur][d] = add_node();
            cur = child[cur][d];
        }
        match[cur] = 1;
    }
    // BFS failure links; goto function completed in place.
    std::vector<int> queue;
    for (int d = 0; d < k; ++d) {
        if (child[0][d] < 0) {
            child[0][d] = 0;
        } else {
            fail[child[0][d]] = 0;
            queue.push_back(child[0][d]);
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int u = queue[i];
        if (match[fail[u]]) match[u] = 1;
        for (int d = 0; d < k; ++d) {
            int v = child[u][d];
            if (v < 0) {
                child[u][d] = child[fail[u]][d];
            } else {
                fail[v] = child[fail[u]][d];
                queue.push_back(v);
            }
        }
    }
    int n = static_cast<int>(child.size());
    Dfao a;
    a.k = k;
    a.reading = Reading::msd;
    a.initial = 0;
    int dead = n;
    a.output.resize(n + 1);
    a.delta.resize(static_cast<std::size_t>(n + 1) * k);
    for (int s = 0; s < n; ++s) {
        a.output[s] = match[s] ? 0 : 1;
        for (int d = 0; d < k; ++d) {
            int t = match[s] ? dead : child[s][d];
            if (t != dead && match[t]) t = dead;
            a.delta[static_cast<std::size_t>(s) * k + d] = t;
        }
    }
    a.output[dead] = 0;
    for (int d = 0; d < k; ++d) a.delta[static_cast<std::size_t>(dead) * k + d] = dead;
    return finish(a);
}

Dfao thue_morse_automaton() {
    Dfao a;
    a.k = 2;
    a.reading = Reading::msd;
    a.initial = 0;
    a.output = {0, 1};
    a.delta = {0, 1, 1, 0};
    return finish(a);
}

Dfao powers_automaton(int k) {
    if (k < 2) throw Error("powers_automaton: base must be >= 2");
    Dfao a;
    a.k = k;
    a.reading = Reading::msd;
    a.initial = 0;
    // 0 = start, 1 = after leading 1, 2 = dead
    a.output = {0, 1, 0};
    a.delta.resize(3 * static_cast<std::size_t>(k));
    for (int d = 0; d < k; ++d) {
        a.delta[0 * k + d] = d == 1 ? 1 : 2;
        a.delta[1 * k + d] = d == 0 ? 1 : 2;
        a.delta[2 * k + d] = 2;
    }
    return finish(a);
}

Dfao baum_sweet_factor_automaton() {
    // rejects words containing 1 0^l 1 with l odd
    // 0 = no one seen, 1 = last block parity even, 2 = parity odd, 3 = dead
    Dfao a;
    a.k = 2;
    a.reading = Reading::msd;
    a.initial = 0;
    a.output = {1, 1, 1, 0};
    a.delta = {
        0, 1,  // state 0: 0 -> 0, 1 -> 1
        2, 1,  // state 1: 0 -> 2, 1 -> 1 (l = 0, even)
        1, 3,  // state 2: 0 -> 1, 1 -> dead (l odd)
        3, 3,  // dead
    };
    return finish(a);
}

Dfao baum_sweet_classical_automaton() {
    // accepts words with no odd-length block of zeros (including the last)
    // 0 = current zero-run even (possibly empty), 1 = run odd, 2 = dead
    Dfao a;
    a.k = 2;
    a.reading = Reading::msd;
    a.initial = 0;
    a.output = {1, 0, 0};
    a.delta = {
        1, 0,  // even: 0 -> odd, 1 -> even
        0, 2,  // odd: 0 -> even, 1 -> dead (odd run closed)
        2, 2,
    };
    return finish(a);
}

Dfao alternating_automaton() {
    // 0 = start, 1 = last digit 0, 2 = last digit 1, 3 = dead
    Dfao a;
    a.k = 2;
    a.reading = Reading::msd;
    a.initial = 0;
    a.output = {1, 1, 1, 0};
    a.delta = {
        1, 2,
        3, 2,
        1, 3,
        3, 3,
    };
    return finish(a);
}

namespace {

Dfao rank2_example_automaton() {
    // {[1 0^a 1 0^b]_2 : a, b >= 0}
    // 0 = start, 1 = after first 1, 2 = after second 1, 3 = dead
    Dfao a;
    a.k = 2;
    a.reading = Reading::msd;
    a.initial = 0;
    a.output = {0, 0, 1, 0};
    a.delta = {
        3, 1,
        1, 2,
        2, 3,
        3, 3,
    };
    return finish(a);
}

ProhibitedFactorFamily parse_bfree_param(const std::string& param) {
    ProhibitedFactorFamily family;
    family.k = 2;
    std::string words = param;
    auto colon = param.find(':');
    if (colon != std::string::npos && param.rfind("k=", 0) == 0) {
        family.k = std::stoi(param.substr(2, colon - 2));
        words = param.substr(colon + 1);
    }
    std::stringstream ss(words);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Word w;
        for (char c : item) {
            if (c < '0' || c > '9') throw Error("bfree: prohibited words must be digit strings");
            w.push_back(c - '0');
        }
        family.prohibited.push_back(std::move(w));
    }
    if (family.prohibited.empty()) throw Error("bfree: no prohibited words given");
    return family;
}

}  // namespace

std::vector<std::string> corpus_names() {
    return {"thue_morse",      "baum_sweet_factor", "baum_sweet_classical",
            "powers",          "bfree",             "alternating",
            "rank2",           "fib_word_sturmian", "fib_word_morphic",
            "fib_word_zeckendorf"};
}

Dfao build_named_automaton(const std::string& name, const std::string& param) {
    if (name == "thue_morse") return thue_morse_automaton();
    if (name == "baum_sweet_factor") return baum_sweet_factor_automaton();
    if (name == "baum_sweet_classical") return baum_sweet_classical_automaton();
    if (name == "alternating") return alternating_automaton();
    if (name == "rank2") return rank2_example_automaton();
    if (name == "powers") return powers_automaton(param.empty() ? 2 : std::stoi(param));
    if (name == "bfree") return bfree_automaton(parse_bfree_param(param));
    throw Error("unknown corpus automaton '" + name + "'");
}

Sequence build_named_sequence(const std::string& name, uint64_t horizon) {
    if (name == "fib_word_zeckendorf") {
        return Sequence::from_function([](uint64_t n) { return fibonacci_word_zeckendorf(n); },
                                       UINT64_MAX, name);
    }
    if (name == "fib_word_morphic") {
        std::vector<int> word{0};
        while (word.size() <= horizon) {
            std::vector<int> next;
            next.reserve(2 * word.size());
            for (int c : word) {
                if (c == 0) {
                    next.push_back(0);
                    next.push_back(1);
                } else {
                    next.push_back(0);
                }
            }
            word = std::move(next);
        }
        word.resize(horizon + 1);
        return Sequence::from_prefix(std::move(word), name);
    }
    if (name == "fib_word_sturmian") {
        // floor((2-phi)(n+2)) - floor((2-phi)(n+1))
        ExprPtr e = parse_expr("floor((2-phi)*(n+2)) - floor((2-phi)*(n+1))");
        EvalOptions opt;
        opt.p0 = 128;
        return Sequence::from_function(
            [e, opt](uint64_t n) {
                return static_cast<int>(
                    eval(e, mpz_class(static_cast<unsigned long>(n)), opt)
                        .value.rational()
                        .get_num()
                        .get_si());
            },
            UINT64_MAX, name);
    }
    // automaton-backed names fall through
    return Sequence::from_dfao(build_named_automaton(name), name);
}

// --- Zeckendorf -------------------------------------------------------------

namespace {
// F[i] = F_i with F_2 = 1, F_3 = 2 (indices 0,1 unused)
std::vector<uint64_t> fib_up_to(uint64_t n) {
    std::vector<uint64_t> f{0, 0, 1, 2};
    while (f.back() <= n) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    return f;
}
}  // namespace

std::vector<int> zeckendorf(uint64_t n) {
    if (n == 0) return {};
    std::vector<uint64_t> f = fib_up_to(n);
    std::size_t d = f.size() - 1;
    while (f[d] > n) --d;
    std::vector<int> digits;
    uint64_t rem = n;
    for (std::size_t i = d; i >= 2; --i) {
        if (f[i] <= rem) {
            digits.push_back(1);
            rem -= f[i];
        } else {
            digits.push_back(0);
        }
    }
    if (rem != 0) throw Error("internal: zeckendorf remainder");
    return digits;
}

uint64_t zeckendorf_value(const std::vector<int>& digits) {
    std::vector<uint64_t> f{0, 0, 1, 2};
    while (f.size() < digits.size() + 2) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    uint64_t v = 0;
    std::size_t d = digits.size() + 1;  // index of the leading digit
    for (std::size_t j = 0; j < digits.size(); ++j) {
        if (digits[j] && digits[j] != 1) throw Error("zeckendorf_value: digits must be 0/1");
        if (digits[j]) v += f[d - j];
    }
    return v;
}

int fibonacci_word_zeckendorf(uint64_t n) {
    std::vector<int> d = zeckendorf(n);
    return d.empty() ? 0 : d.back();
}

// --- linear recurrences -----------------------------------------------------

bool LinRecValues::contains(const mpz_class& v) const {
    return std::binary_search(sorted_values.begin(), sorted_values.end(), v);
}

LinRecValues linrec_values(const LinRecSpec& spec, std::size_t count) {
    if (count > 1000000) throw Error("linrec_values: count too large");
    if (spec.coeffs.empty() || spec.initial.size() != spec.coeffs.size())
        throw Error("linrec_values: order mismatch between coeffs and initial terms");
    std::vector<mpz_class> terms = spec.initial;
    const std::size_t order = spec.coeffs.size();
    while (terms.size() < count) {
        mpz_class next = 0;
        for (std::size_t i = 0; i < order; ++i)
            next += spec.coeffs[i] * terms[terms.size() - 1 - i];
        terms.push_back(next);
    }
    terms.resize(count);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    LinRecValues v;
    v.sorted_values = std::move(terms);
    return v;
}

// --- standard-set decomposition ---------------------------------------------

StandardDecomposition standard_decompose(const Dfao& indicator, int target,
                                         const mpz_class& verify_bound) {
    AridDecomposition d = arid_decompose(indicator, target);
    if (d.rank() > 1) throw Error("standard_decompose: decomposition has rank > 1");
    StandardDecomposition out;
    out.k = d.k;
    const int k = d.k;
    for (const BasicAridSet& part : d.parts) {
        if (part.rank() == 0) {
            StandardSet s;
            s.exponential = false;
            s.finite_value = word_value(part.bridges[0], k, Reading::msd);
            out.sets.push_back(std::move(s));
            continue;
        }
        const Word& v0 = part.bridges[0];
        const Word& w = part.pumps[0];
        const Word& v1 = part.bridges[1];
        const int t = static_cast<int>(w.size());
        mpz_class kt = 1;
        for (int i = 0; i < t; ++i) kt *= k;
        mpz_class kv1 = 1;
        for (std::size_t i = 0; i < v1.size(); ++i) kv1 *= k;
        mpq_class wfrac(word_value(w, k, Reading::msd), kt - 1);
        wfrac.canonicalize();
        StandardSet s;
        s.exponential = true;
        s.period = t;
        s.scale = mpq_class(kv1) * (mpq_class(word_value(v0, k, Reading::msd)) + wfrac);
        s.offset = mpq_class(word_value(v1, k, Reading::msd)) - mpq_class(kv1) * wfrac;
        s.scale.canonicalize();
        s.offset.canonicalize();
        if (part.positive[0]) {
            // l >= 1: fold one mandatory pump copy into the scale
            s.scale *= mpq_class(kt);
            s.scale.canonicalize();
        }
        out.sets.push_back(std::move(s));
    }
    // round trip: members below the bound match the automaton exactly
    std::vector<mpz_class> members = standard_members_below(out, verify_bound);
    Dfao msd = with_reading(indicator, Reading::msd);
    for (const mpz_class& m : members)
        if (msd.run(m) != target)
            throw Error("standard_decompose: verification mismatch (extra member)");
    if (mpz_class(static_cast<long>(members.size())) != count_below(msd, verify_bound, target))
        throw Error("standard_decompose: verification mismatch (missing members)");
    return out;
}

std::vector<mpz_class> standard_members_below(const StandardDecomposition& d,
                                              const mpz_class& bound) {
    std::vector<mpz_class> members;
    for (const StandardSet& s : d.sets) {
        if (!s.exponential) {
            if (s.finite_value >= 0 && s.finite_value < bound) members.push_back(s.finite_value);
            continue;
        }
        mpz_class kt = 1;
        for (int i = 0; i < s.period; ++i) kt *= d.k;
        mpq_class power = 1;
        for (;;) {
            mpq_class value = s.scale * power + s.offset;
            value.canonicalize();
            if (value.get_den() != 1)
                throw Error("standard_members_below: non-integer progression value");
            mpz_class v(value.get_num());
            if (v >= bound) break;
            if (v >= 0) members.push_back(v);
            power *= kt;
        }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

}  // namespace aridlab
