#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "aridlab/corpus.hpp"
#include "aridlab/growth.hpp"
#include "aridlab/setalg.hpp"

using namespace aridlab;

namespace {

Dfao f00() { return bfree_automaton({2, {{0, 0}}}); }

mpz_class brute_count(const Dfao& a, uint64_t lo, uint64_t hi) {
    mpz_class c = 0;
    for (uint64_t n = lo; n < hi; ++n)
        if (a.run(n) == 1) ++c;
    return c;
}

}  // namespace

TEST_CASE("classification: arid ranks and non-arid evidence") {
    Classification pw = classify(powers_automaton(2));
    CHECK(pw.arid);
    CHECK(pw.rank == 1);

    Classification p3 = classify(powers_automaton(3));
    CHECK(p3.arid);
    CHECK(p3.rank == 1);

    Classification r2 = classify(build_named_automaton("rank2"));
    CHECK(r2.arid);
    CHECK(r2.rank == 2);

    Classification nf = classify(f00());
    CHECK(!nf.arid);
    REQUIRE(nf.evidence.has_value());
    Dfao machine = classification_machine(f00());
    const NotAridEvidence& ev = *nf.evidence;
    CHECK(machine.walk(ev.state, ev.loop1) == ev.state);
    CHECK(machine.walk(ev.state, ev.loop2) == ev.state);
    // noncommutation
    Word ab = ev.loop1, ba = ev.loop2;
    ab.insert(ab.end(), ev.loop2.begin(), ev.loop2.end());
    ba.insert(ba.end(), ev.loop1.begin(), ev.loop1.end());
    CHECK(ab != ba);

    CHECK(!classify(thue_morse_automaton()).arid);
    CHECK(!classify(baum_sweet_factor_automaton()).arid);
    CHECK(classify(alternating_automaton()).arid);
    CHECK(classify(alternating_automaton()).rank == 1);
}

TEST_CASE("classification is invariant under minimize and base grouping") {
    for (const char* name : {"powers", "rank2", "alternating", "baum_sweet_factor"}) {
        Dfao a = build_named_automaton(name);
        Classification c1 = classify(a);
        Classification c2 = classify(minimize(a));
        CHECK(c1.arid == c2.arid);
        if (c1.arid) CHECK(c1.rank == c2.rank);
        Classification c4 = classify(base_group(a, 2));
        CHECK(c1.arid == c4.arid);
        if (c1.arid) CHECK(c1.rank == c4.rank);
    }
}

TEST_CASE("exact counting by digit DP") {
    Dfao pw = powers_automaton(2);
    CHECK(count_below(pw, mpz_class(1) << 20) == 20);
    CHECK(count_range(f00(), 1, 15) == 11);

    Dfao tm = thue_morse_automaton();
    for (int L = 1; L <= 20; ++L)
        CHECK(count_below(tm, mpz_class(1) << L) == mpz_class(1) << (L - 1));

    // cross-check against brute force
    for (const char* name : {"powers", "rank2", "alternating", "thue_morse"}) {
        Dfao a = build_named_automaton(name);
        CHECK(count_below(a, 5000) == brute_count(a, 0, 5000));
        CHECK(count_range(a, 1234, 3000) == brute_count(a, 1234, 4234));
    }

    // split consistency
    std::mt19937_64 rng(5);
    Dfao bs = baum_sweet_factor_automaton();
    for (int i = 0; i < 20; ++i) {
        mpz_class m = mpz_class(rng() % 1000000);
        mpz_class n1 = mpz_class(rng() % 100000);
        mpz_class n2 = mpz_class(rng() % 100000);
        CHECK(count_range(bs, m, n1 + n2) ==
              count_range(bs, m, n1) + count_range(bs, m + n1, n2));
    }
}

TEST_CASE("arid decomposition matches the automaton language") {
    AridDecomposition pw = arid_decompose(powers_automaton(2));
    CHECK(pw.rank() == 1);
    REQUIRE(pw.parts.size() == 1);
    CHECK(pw.parts[0].bridges == std::vector<Word>{{1}, {}});
    CHECK(pw.parts[0].pumps == std::vector<Word>{{0}});

    AridDecomposition r2 = arid_decompose(build_named_automaton("rank2"));
    CHECK(r2.rank() == 2);
    REQUIRE(r2.parts.size() == 1);
    CHECK(r2.parts[0].bridges == std::vector<Word>{{1}, {1}, {}});
    CHECK(r2.parts[0].pumps == std::vector<Word>{{0}, {0}});

    // union of {2^l} and {3*4^l}
    Dfao three4;
    {
        // accepts 11 (00)^l
        three4.k = 2;
        three4.initial = 0;
        three4.output = {0, 0, 1, 0, 0};
        // 0 -1-> 1 -1-> 2(acc); 2 -0-> 3 -0-> 2; else dead 4
        three4.delta = {
            4, 1,
            4, 2,
            3, 4,
            2, 4,
            4, 4,
        };
        three4 = minimize(make_zero_robust(three4));
    }
    Dfao uni = product(powers_automaton(2), three4,
                       [](int a, int b) { return a || b ? 1 : 0; });
    AridDecomposition du = arid_decompose(uni);
    CHECK(du.rank() == 1);
    CHECK(du.parts.size() >= 2);  // decompositions need not be minimal
    CHECK(decomposition_matches_automaton(du, classification_machine(uni)));
    Dfao dua = decomposition_automaton(du);
    for (uint64_t n = 0; n < 1 << 16; ++n) {
        bool member = (n & (n - 1)) == 0 && n > 0;  // power of two
        for (uint64_t v = 3; v <= n; v *= 4) member = member || v == n;
        CHECK((dua.run_word(canonical_digits(n, 2, Reading::msd)) == 1) == member);
    }
}

TEST_CASE("decomposition automaton accepts exactly the denoted words") {
    BasicAridSet b;
    b.k = 2;
    b.bridges = {{1}, {1}, {}};
    b.pumps = {{0}, {0}};
    b.positive = {0, 0};
    AridDecomposition d;
    d.k = 2;
    d.parts = {b};
    Dfao a = decomposition_automaton(d);
    auto member = [&](uint64_t n) {
        Word w = canonical_digits(n, 2, Reading::msd);
        return a.run_word(w) == 1;
    };
    CHECK(member(0b11));      // 1 1
    CHECK(member(0b101));     // 1 0 1
    CHECK(member(0b1001));    // 1 00 1
    CHECK(member(0b110));     // 1 1 0
    CHECK(member(0b10100));   // 1 0 1 00
    CHECK(!member(0b111));
    CHECK(!member(0b1));
    CHECK(!member(0));

    // positivity flag: l >= 1 forces at least one pump copy
    b.positive = {1, 0};
    d.parts = {b};
    Dfao ap = decomposition_automaton(d);
    CHECK(ap.run_word(canonical_digits(uint64_t(0b101), 2, Reading::msd)) == 1);
    CHECK(ap.run_word(canonical_digits(uint64_t(0b11), 2, Reading::msd)) == 0);
}

TEST_CASE("prefix and suffix restriction") {
    Dfao r2 = build_named_automaton("rank2");
    AridDecomposition pre = prefix_restrict(r2, {1, 0, 0, 1});
    CHECK(!pre.parts.empty());
    CHECK(pre.rank() == 1);
    for (const auto& part : pre.parts) {
        Word v(part.bridges[0].begin(),
               part.bridges[0].begin() + std::min<std::size_t>(4, part.bridges[0].size()));
        CHECK(v == Word{1, 0, 0, 1});
    }

    // v = empty: the set itself
    AridDecomposition all = prefix_restrict(r2, {});
    CHECK(all.rank() == 2);
    CHECK(decomposition_matches_automaton(all, classification_machine(r2)));

    AridDecomposition pw = prefix_restrict(powers_automaton(2), {1, 0});
    CHECK(pw.rank() == 1);
    REQUIRE(pw.parts.size() == 1);
    CHECK(pw.parts[0].bridges[0] == Word{1, 0});

    // suffix: words of the rank-2 set ending in 1: 1 0^a 1
    AridDecomposition suf = suffix_restrict(r2, {1});
    CHECK(suf.rank() == 1);
    Dfao sufa = decomposition_automaton(suf);
    for (uint64_t n = 1; n < 2048; ++n) {
        Word w = canonical_digits(n, 2, Reading::msd);
        bool expect = r2.run(n) == 1 && w.back() == 1;
        CHECK((sufa.run_word(w) == 1) == expect);
    }

    auto [v, dec] = find_rank1_prefix(r2);
    CHECK(!dec.parts.empty());
    CHECK(dec.rank() <= 1);
}

TEST_CASE("empty restrictions give empty decompositions") {
    AridDecomposition d = prefix_restrict(powers_automaton(2), {0});
    CHECK(d.parts.empty());
    AridDecomposition d2 = prefix_restrict(powers_automaton(2), {1, 1});
    CHECK(d2.parts.empty());
}

TEST_CASE("pumping witness factorizations") {
    Dfao pw = powers_automaton(2);
    PumpingWitness w = pumping_witness(pw, mpz_class(1) << 10, 3);
    CHECK(!w.v.empty());
    CHECK(static_cast<int>(w.u0.size()) >= w.window_start);
    for (int d : w.v) CHECK(d == 0);  // zero-block pump

    Dfao f = f00();
    PumpingWitness wf = pumping_witness(f, mpz_class(0b101010101), 2);
    CHECK(!wf.v.empty());

    Dfao tm = thue_morse_automaton();
    PumpingWitness wt = pumping_witness(tm, mpz_class(0b1011001101), 0);
    CHECK(!wt.v.empty());
    CHECK(wt.v.size() <= 2);

    // |digits(1)| = 1 < state count: pigeonhole precondition fails
    CHECK_THROWS_AS(pumping_witness(tm, mpz_class(1), 0), Error);
    // window start past the end of the digit string
    CHECK_THROWS_AS(pumping_witness(tm, mpz_class(0b1011001101), 99), Error);
}

TEST_CASE("growth dichotomy bounds at desk scale") {
    // arid: count <= C (log2 N)^r with C from N = 2^10
    for (const char* name : {"powers", "rank2", "alternating"}) {
        Dfao a = build_named_automaton(name);
        Classification c = classify(a);
        REQUIRE(c.arid);
        double c10 = mpz_get_d(count_below(a, mpz_class(1) << 10).get_mpz_t());
        double C = std::ceil(c10 / std::pow(10.0, c.rank));
        for (int L = 10; L <= 24; L += 2) {
            double cnt = mpz_get_d(count_below(a, mpz_class(1) << L).get_mpz_t());
            CHECK(cnt <= C * std::pow(static_cast<double>(L), c.rank) + 1e-9);
        }
    }
    // non-arid: count >= N^alpha with positive fitted alpha
    for (const char* name : {"thue_morse", "baum_sweet_factor"}) {
        Dfao a = build_named_automaton(name);
        CHECK(!classify(a).arid);
        double alpha = 1.0;
        for (int L = 10; L <= 24; L += 2) {
            double cnt = mpz_get_d(count_below(a, mpz_class(1) << L).get_mpz_t());
            alpha = std::min(alpha, std::log2(cnt) / L);
        }
        CHECK(alpha > 0.5);
        for (int L = 10; L <= 24; L += 2) {
            double cnt = mpz_get_d(count_below(a, mpz_class(1) << L).get_mpz_t());
            CHECK(cnt >= std::pow(2.0, alpha * L) - 1e-6 * cnt - 2);
        }
    }
}
