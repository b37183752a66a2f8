#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "aridlab/corpus.hpp"
#include "aridlab/dfao.hpp"

using namespace aridlab;

namespace {

int popcount_parity(uint64_t n) { return __builtin_popcountll(n) & 1; }

bool has_factor_00(uint64_t n) {
    if (n == 0) return false;
    int prev = -1;
    // scan binary digits
    for (int i = 63; i >= 0; --i) {
        if (!(n >> i)) continue;
        break;
    }
    int top = 63;
    while (top > 0 && !((n >> top) & 1)) --top;
    for (int i = top; i >= 0; --i) {
        int b = static_cast<int>((n >> i) & 1);
        if (b == 0 && prev == 0) return true;
        prev = b;
    }
    return false;
}

Dfao duplicate_states(const Dfao& a, int copies) {
    // same function, states duplicated `copies` times
    Dfao b;
    b.k = a.k;
    b.reading = a.reading;
    b.initial = a.initial;
    int n = a.size();
    for (int c = 0; c < copies; ++c)
        for (int s = 0; s < n; ++s) {
            b.output.push_back(a.output[s]);
            for (int d = 0; d < a.k; ++d) {
                int target = a.step(s, d);
                int copy = (c + s + d) % copies;  // arbitrary copy choice
                b.delta.push_back(copy * n + target);
            }
        }
    return b;
}

}  // namespace

TEST_CASE("thue-morse runs match digit-sum parity") {
    Dfao tm = thue_morse_automaton();
    CHECK(tm.run(uint64_t(0)) == 0);
    CHECK(tm.run(uint64_t(3)) == 0);
    CHECK(tm.run(uint64_t(5)) == 0);
    CHECK(tm.run(uint64_t(7)) == 1);
    for (uint64_t n = 0; n < 4096; ++n) CHECK(tm.run(n) == popcount_parity(n));
}

TEST_CASE("factor-indicator automaton matches brute-force factor scan") {
    Dfao f00 = bfree_automaton({2, {{0, 0}}});
    CHECK(f00.run(uint64_t(4)) == 0);  // binary 100 contains 00
    CHECK(f00.run(uint64_t(5)) == 1);
    for (uint64_t n = 0; n < 4096; ++n) CHECK(f00.run(n) == (has_factor_00(n) ? 0 : 1));
}

TEST_CASE("minimize reaches canonical sizes") {
    Dfao tm = thue_morse_automaton();
    CHECK(tm.size() == 2);  // corpus constructor already minimizes
    Dfao fat = duplicate_states(tm, 4);
    CHECK(fat.size() == 8);
    Dfao slim = minimize(fat);
    CHECK(slim.size() == 2);
    for (uint64_t n = 0; n < 512; ++n) CHECK(slim.run(n) == tm.run(n));

    Dfao constant;
    constant.k = 2;
    constant.initial = 0;
    constant.output = {7, 7, 7};
    constant.delta = {1, 2, 0, 2, 1, 0};
    CHECK(minimize(constant).size() == 1);

    // robust machine: leading-zero state, ok-after-1, ok-after-0, dead
    Dfao f00 = bfree_automaton({2, {{0, 0}}});
    CHECK(minimize(f00).size() == f00.size());
    CHECK(f00.size() == 4);
    // plain machine on canonical words: ok-after-1, ok-after-0, dead
    Dfao plain;
    plain.k = 2;
    plain.initial = 0;
    plain.output = {1, 1, 0};
    plain.delta = {1, 0, 2, 0, 2, 2};
    CHECK(minimize(plain).size() == 3);
    for (uint64_t n = 0; n < 1024; ++n) CHECK(plain.run(n) == f00.run(n));
}

TEST_CASE("minimize is idempotent and preserves runs") {
    std::mt19937_64 rng(7);
    for (const char* name : {"thue_morse", "baum_sweet_factor", "alternating"}) {
        Dfao a = build_named_automaton(name);
        Dfao m = minimize(a);
        CHECK(minimize(m).size() == m.size());
        for (int i = 0; i < 10000; ++i) {
            uint64_t n = rng() & 0xFFFFFFFFull;
            CHECK(m.run(n) == a.run(n));
        }
    }
}

TEST_CASE("product combines pointwise") {
    Dfao tm = thue_morse_automaton();
    Dfao equal = product(tm, tm, [](int x, int y) { return x == y ? 1 : 0; });
    CHECK(minimize(equal).size() == 1);
    for (uint64_t n = 0; n < 256; ++n) CHECK(equal.run(n) == 1);

    // parity of n automaton (LSD would be easier; MSD tracks value mod 2)
    Dfao parity;
    parity.k = 2;
    parity.reading = Reading::msd;
    parity.initial = 0;
    parity.output = {0, 1};
    parity.delta = {0, 1, 0, 1};
    Dfao x = product(tm, parity, [](int a, int b) { return a ^ b; });
    for (uint64_t n = 0; n < 4096; ++n)
        CHECK(x.run(n) == (popcount_parity(n) ^ static_cast<int>(n & 1)));

    Dfao f00 = bfree_automaton({2, {{0, 0}}});
    Dfao f11 = bfree_automaton({2, {{1, 1}}});
    Dfao both = product(f00, f11, [](int a, int b) { return a && b ? 1 : 0; });
    std::vector<uint64_t> members;
    for (uint64_t n = 0; n < 64; ++n)
        if (both.run(n) == 1) members.push_back(n);
    CHECK(members == std::vector<uint64_t>{0, 1, 2, 5, 10, 21, 42});
    Dfao alt = alternating_automaton();
    CHECK(same_sequence(both, alt));
}

TEST_CASE("reading-direction conversion preserves the sequence") {
    for (const char* name : {"thue_morse", "baum_sweet_factor", "alternating"}) {
        Dfao a = build_named_automaton(name);
        Dfao lsd = reverse_reading(a);
        CHECK(lsd.reading == Reading::lsd);
        for (uint64_t n = 0; n < (1 << 14); ++n) CHECK(lsd.run(n) == a.run(n));
        Dfao back = reverse_reading(lsd);
        CHECK(back.reading == Reading::msd);
        for (uint64_t n = 0; n < (1 << 14); ++n) CHECK(back.run(n) == a.run(n));
    }
    Dfao constant;
    constant.k = 2;
    constant.initial = 0;
    constant.output = {3};
    constant.delta = {0, 0};
    CHECK(reverse_reading(constant).size() == 1);
}

TEST_CASE("zero-robust normalization is padding-insensitive") {
    std::mt19937_64 rng(11);
    for (const char* name : {"thue_morse", "baum_sweet_factor", "powers", "alternating"}) {
        Dfao a = build_named_automaton(name);
        CHECK(is_zero_robust(a));
        Dfao lsd = with_reading(a, Reading::lsd);
        CHECK(is_zero_robust(lsd));
        for (int trial = 0; trial < 200; ++trial) {
            uint64_t n = rng() & 0xFFFFFF;
            Word w = canonical_digits(n, a.k, Reading::msd);
            Word padded(static_cast<std::size_t>(rng() % 9), 0);
            padded.insert(padded.end(), w.begin(), w.end());
            CHECK(a.run_word(padded) == a.run(n));
        }
    }
}

TEST_CASE("canonical digits and word values round trip") {
    CHECK(canonical_digits(uint64_t(0), 2, Reading::msd).empty());
    CHECK(canonical_digits(uint64_t(6), 2, Reading::msd) == Word{1, 1, 0});
    CHECK(canonical_digits(uint64_t(6), 2, Reading::lsd) == Word{0, 1, 1});
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        mpz_class n = mpz_class(rng()) * mpz_class(rng());
        for (int k : {2, 3, 10}) {
            Word w = canonical_digits(n, k, Reading::msd);
            CHECK(word_value(w, k, Reading::msd) == n);
            Word l = canonical_digits(n, k, Reading::lsd);
            CHECK(word_value(l, k, Reading::lsd) == n);
        }
    }
}

TEST_CASE("analysis: accessibility, coaccessibility, SCCs") {
    Dfao f00 = bfree_automaton({2, {{0, 0}}});
    AutomatonAnalysis an = analyze(f00, 1);
    int trim = 0, coacc = 0;
    for (int s = 0; s < f00.size(); ++s) {
        if (an.trim[s]) ++trim;
        if (an.coaccessible[s]) ++coacc;
    }
    CHECK(trim == 3);
    CHECK(coacc == 3);  // dead state excluded

    Dfao zero;
    zero.k = 2;
    zero.initial = 0;
    zero.output = {0};
    zero.delta = {0, 0};
    AutomatonAnalysis z = analyze(zero, 1);
    CHECK(!z.coaccessible[0]);

    Dfao pow2 = powers_automaton(2);
    AutomatonAnalysis p = analyze(pow2, 1);
    int ptrim = 0;
    for (int s = 0; s < pow2.size(); ++s)
        if (p.trim[s]) ++ptrim;
    CHECK(ptrim == 2);
}

TEST_CASE("text format round trip and parse errors") {
    for (const char* name : {"thue_morse", "powers", "alternating"}) {
        Dfao a = build_named_automaton(name);
        std::string text = to_text(a);
        Dfao b = dfao_from_text(text);
        CHECK(b.k == a.k);
        CHECK(b.size() == a.size());
        CHECK(to_text(b) == text);
        CHECK(same_function(a, b));
    }
    CHECK_THROWS_AS(dfao_from_text("dfao k=2 states=1 initial=0 reading=msd\n"
                                   "state 0 output=0 0:0\n"),
                    ParseError);  // missing transition
    CHECK_THROWS_AS(dfao_from_text("dfao k=2 states=1 initial=0 reading=msd\n"
                                   "state 0 output=0 0:0 1:0\n"
                                   "state 0 output=0 0:0 1:0\n"),
                    ParseError);  // duplicate state
    CHECK_THROWS_AS(dfao_from_text("dfao k=2 states=1 initial=0 reading=msd\n"
                                   "state 0 output=0 0:0 2:0\n"),
                    ParseError);  // digit out of range
    CHECK_THROWS_AS(dfao_from_text("dfao k=2 states=2 initial=0 reading=msd\n"
                                   "state 0 output=0 0:0 1:1\n"),
                    ParseError);  // missing state line
}

TEST_CASE("serialization is canonical after minimization") {
    Dfao tm = thue_morse_automaton();
    Dfao fat = duplicate_states(tm, 3);
    CHECK(to_text(minimize(fat)) == to_text(minimize(tm)));
}
