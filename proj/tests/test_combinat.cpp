#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aridlab/combinat.hpp"
#include "aridlab/corpus.hpp"

using namespace aridlab;

namespace {

Dfao f00() { return bfree_automaton({2, {{0, 0}}}); }
Dfao f11() { return bfree_automaton({2, {{1, 1}}}); }

Dfao contains_101() {
    Dfao a = bfree_automaton({2, {{1, 0, 1}}});
    for (int& o : a.output) o = 1 - o;  // complement: expansions containing 101
    return a;
}

Dfao all_of_n0() {
    Dfao a;
    a.k = 2;
    a.initial = 0;
    a.output = {1};
    a.delta = {0, 0};
    return a;
}

}  // namespace

TEST_CASE("ips witnesses carry verifiable loop structure") {
    for (const Dfao& a : {f00(), f11(), thue_morse_automaton(), baum_sweet_factor_automaton()}) {
        IpsWitness w = ips_witness(a);
        const Dfao& m = w.machine;
        CHECK(w.v1.size() == w.v2.size());
        CHECK(word_value(w.v1, w.k, Reading::msd) < word_value(w.v2, w.k, Reading::msd));
        CHECK(m.walk(m.initial, w.u0) == w.state);
        CHECK(m.walk(w.state, w.v1) == w.state);
        CHECK(m.walk(w.state, w.v2) == w.state);
        CHECK(m.output[m.walk(w.state, w.u1)] == 1);
        // every shift N_t is itself a member
        for (const mpz_class& N : w.shifts(6)) CHECK(a.run(N) == 1);
        for (const mpz_class& g : w.generators(6)) CHECK(g > 0);
    }
}

TEST_CASE("shifted finite sums of the witness generators stay in the set") {
    for (const Dfao& a : {f00(), f11(), thue_morse_automaton(), baum_sweet_factor_automaton()}) {
        IpsWitness w = ips_witness(a);
        FsReport rep = verify_fs(a, w.generators(8), w.shifts(8));
        CHECK(rep.ok);
        CHECK(rep.checked > 0);
        CHECK(!rep.first_failure.has_value());
    }
}

TEST_CASE("arid sets admit no ips witness") {
    CHECK_THROWS_AS(ips_witness(powers_automaton(2)), Error);
    CHECK_THROWS_AS(ips_witness(alternating_automaton()), Error);
    CHECK_THROWS_AS(ips_witness(build_named_automaton("rank2")), Error);
}

TEST_CASE("finite-sums verification semantics and counterexamples") {
    // sums of distinct powers of 4 have isolated ones: all in the 11-free set
    Dfao a = f11();
    std::vector<mpz_class> gens;
    for (int i = 0; i < 10; ++i) gens.push_back(mpz_class(1) << (2 * i));
    FsReport rep = verify_fs(a, gens);
    CHECK(rep.ok);
    CHECK(rep.checked == 1023);  // 2^10 - 1 nonempty subsets

    // 1 + 2 = 3 = (11)_2 breaks it
    FsReport bad = verify_fs(a, {mpz_class(2), mpz_class(1)});
    CHECK(!bad.ok);
    REQUIRE(bad.first_failure.has_value());
    CHECK(*bad.first_failure == 3);
    CHECK(a.run(*bad.first_failure) == 0);
    CHECK(!bad.detail.empty());

    // shifted mode: per-length shifts, empty subset included
    FsReport sh = verify_fs(a, gens, {mpz_class(0), mpz_class(4096)});
    CHECK(sh.ok);
    CHECK(sh.checked == 2 + 4);  // t=1: 2 masks, t=2: 4 masks

    CHECK_THROWS_AS(verify_fs(a, {mpz_class(0)}), Error);
    CHECK_THROWS_AS(verify_fs(a, std::vector<mpz_class>(21, mpz_class(1))), Error);
}

TEST_CASE("translated ip sums leave the set for most translations") {
    Dfao a = f11();
    std::vector<mpz_class> gens;
    for (int i = 0; i < 10; ++i) gens.push_back(mpz_class(1) << (2 * i));
    CHECK(!translate_ip_failure(a, gens, 0).has_value());
    int failures = 0;
    for (long m = 1; m <= 16; ++m) {
        auto fail = translate_ip_failure(a, gens, m);
        if (fail) {
            ++failures;
            mpz_class shifted = *fail - m;
            CHECK(shifted >= 0);
            CHECK(a.run(shifted) == 0);  // certificate really fails
        }
    }
    CHECK(failures >= 12);  // the set is not translation-invariantly ip
}

TEST_CASE("everywhere-factor hypothesis check") {
    CHECK(factor_universality_failure(f11(), 6) == Word{1, 1});
    CHECK(!factor_universality_failure(thue_morse_automaton(), 6).has_value());
    CHECK(!factor_universality_failure(contains_101(), 6).has_value());
    CHECK(!factor_universality_failure(all_of_n0(), 6).has_value());
    // with no failing factor, the enumeration hits its word budget
    CHECK_THROWS_AS(factor_universality_failure(thue_morse_automaton(), 25), ResourceError);
}

TEST_CASE("shifted-ip witnesses close the claim diagram") {
    for (const Dfao& a : {contains_101(), all_of_n0(), thue_morse_automaton()}) {
        ShiftedIpWitness w = shifted_ip_witness(a);
        const Dfao& m = w.machine;
        REQUIRE(w.l == static_cast<int>(w.v.size()));
        Word z(static_cast<std::size_t>(w.l), 0);
        CHECK(m.walk(w.s, z) == w.s_prime);
        CHECK(m.walk(w.s, w.v) == w.s);
        CHECK(m.walk(w.s_prime, z) == w.s_prime);
        CHECK(m.walk(w.s_prime, w.v) == w.s);
        CHECK(m.output[w.s] == 1);
        CHECK(m.walk(m.initial, w.access) == w.s);
        bool nonzero = false;
        for (int d : w.v) nonzero = nonzero || d != 0;
        CHECK(nonzero);

        // N + FS(n_1..n_6) subset of the set, empty sums included
        std::vector<mpz_class> gens = w.generators(6);
        std::vector<mpz_class> shifts(6, w.shift);
        FsReport rep = verify_fs(a, gens, shifts);
        CHECK(rep.ok);
    }
    // the 11-free set contains arbitrarily long members but fails the
    // hypothesis at the factor 11
    CHECK_THROWS_AS(shifted_ip_witness(f11()), Error);
}
