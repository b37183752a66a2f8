// aridlab: automata, growth classification, generalised polynomials, and
// combinatorial witnesses from one command-line tool.
//
// Exit codes: 0 success; 1 analysis-negative result (failed --expect,
// failed verification, sequences differ); 2 usage error; 3 unresolved
// precision.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aridlab/combinat.hpp"
#include "aridlab/corpus.hpp"
#include "aridlab/dynamics.hpp"
#include "aridlab/genpoly.hpp"
#include "aridlab/growth.hpp"
#include "aridlab/seqkit.hpp"
#include "aridlab/setalg.hpp"

using namespace aridlab;

namespace {

struct AutomatonInput {
    std::string dfao_path;
    std::string corpus;
    std::string param;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dfao", dfao_path, "automaton file in the DFAO text format");
        cmd->add_option("--corpus", corpus, "named corpus automaton (see `corpus list`)");
        cmd->add_option("--param", param,
                        "corpus parameter (base for powers, prohibited words for bfree)");
    }

    Dfao load() const {
        if (!dfao_path.empty()) {
            std::ifstream in(dfao_path);
            if (!in) throw CLI::ValidationError("--dfao", "cannot open " + dfao_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            return dfao_from_text(buf.str());
        }
        if (!corpus.empty()) return build_named_automaton(corpus, param);
        throw CLI::ValidationError("input", "need --dfao or --corpus");
    }
};

std::string word_str(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (int d : w) s += static_cast<char>('0' + d);
    return s;
}

Word parse_word(const std::string& s) {
    Word w;
    if (s == "e") return w;
    for (char c : s) {
        if (c < '0' || c > '9') throw CLI::ValidationError("word", "digits only: " + s);
        w.push_back(c - '0');
    }
    return w;
}

std::vector<mpz_class> parse_mpz_list(const std::string& s) {
    std::vector<mpz_class> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.emplace_back(item);
    return out;
}

std::string q_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automatic sequences, arid sets, and generalised polynomials"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- classify ----------------------------------------------------------
    auto* c_classify = app.add_subcommand("classify", "arid/non-arid growth dichotomy");
    AutomatonInput in_classify;
    in_classify.attach(c_classify);
    int classify_target = 1;
    std::string expect;
    c_classify->add_option("--target", classify_target, "output value defining the set");
    c_classify->add_option("--expect", expect, "arid | not-arid (exit 1 on mismatch)")
        ->check(CLI::IsMember({"arid", "not-arid"}));
    c_classify->callback([&] {
        Dfao a = in_classify.load();
        Classification c = classify(a, classify_target);
        if (c.arid) {
            std::printf("arid rank=%d\n", c.rank);
        } else {
            std::printf("not-arid state=%d loop1=%s loop2=%s\n", c.evidence->state,
                        word_str(c.evidence->loop1).c_str(),
                        word_str(c.evidence->loop2).c_str());
        }
        if (!expect.empty() && (expect == "arid") != c.arid) exit_code = 1;
    });

    // ---- count -------------------------------------------------------------
    auto* c_count = app.add_subcommand("count", "exact member counts by digit DP");
    AutomatonInput in_count;
    in_count.attach(c_count);
    std::string below = "1048576", from = "0";
    int count_target = 1;
    c_count->add_option("--below", below, "count members in [--from, --from + --below)");
    c_count->add_option("--from", from, "window start (default 0)");
    c_count->add_option("--target", count_target, "output value defining the set");
    c_count->callback([&] {
        Dfao a = in_count.load();
        mpz_class c = count_range(a, mpz_class(from), mpz_class(below), count_target);
        std::printf("count=%s\n", c.get_str().c_str());
    });

    // ---- decompose ---------------------------------------------------------
    auto* c_dec = app.add_subcommand("decompose", "basic arid set decomposition");
    AutomatonInput in_dec;
    in_dec.attach(c_dec);
    std::string dec_prefix, dec_suffix;
    int dec_target = 1;
    c_dec->add_option("--prefix", dec_prefix, "restrict to words starting with these digits");
    c_dec->add_option("--suffix", dec_suffix, "restrict to words ending with these digits");
    c_dec->add_option("--target", dec_target, "output value defining the set");
    c_dec->callback([&] {
        Dfao a = in_dec.load();
        AridDecomposition d;
        if (!dec_prefix.empty())
            d = prefix_restrict(a, parse_word(dec_prefix), dec_target);
        else if (!dec_suffix.empty())
            d = suffix_restrict(a, parse_word(dec_suffix), dec_target);
        else
            d = arid_decompose(a, dec_target);
        std::printf("rank=%d parts=%zu\n", d.rank(), d.parts.size());
        for (const BasicAridSet& p : d.parts) std::printf("part %s\n", p.to_string().c_str());
    });

    // ---- kernel ------------------------------------------------------------
    auto* c_kernel = app.add_subcommand("kernel", "exact kernel or empirical profile");
    AutomatonInput in_kernel;
    in_kernel.attach(c_kernel);
    std::string kernel_expr;
    int kernel_mod = 2, kernel_k = 2, kernel_lmax = 8, kernel_prefix = 64;
    bool kernel_csv = false;
    c_kernel->add_option("--expr", kernel_expr, "expression (empirical profile mode)");
    c_kernel->add_option("--mod", kernel_mod, "reduce expression values mod m (default 2)");
    c_kernel->add_option("--k", kernel_k, "kernel base for empirical mode (default 2)");
    c_kernel->add_option("--lmax", kernel_lmax, "deepest kernel level (default 8)");
    c_kernel->add_option("--prefix", kernel_prefix, "truncation length (default 64)");
    c_kernel->add_flag("--csv", kernel_csv, "emit the profile as CSV");
    c_kernel->callback([&] {
        if (!kernel_expr.empty()) {
            Sequence s = Sequence::from_genpoly_mod(parse_expr(kernel_expr), kernel_mod);
            KernelProfile p = kernel_empirical(s, kernel_k, kernel_lmax, kernel_prefix);
            if (kernel_csv) std::printf("level,distinct\n");
            for (std::size_t l = 0; l < p.level_counts.size(); ++l)
                std::printf(kernel_csv ? "%zu,%zu\n" : "level=%zu distinct=%zu\n", l,
                            p.level_counts[l]);
            std::printf("saturating=%s\n", p.saturating() ? "yes" : "no");
        } else {
            KernelTable t = kernel_exact(in_kernel.load());
            std::printf("kernel size=%d\n%s", t.size(), t.to_text().c_str());
        }
    });

    // ---- weakperiod --------------------------------------------------------
    auto* c_wp = app.add_subcommand("weakperiod", "search for agreeing residues mod q");
    AutomatonInput in_wp;
    in_wp.attach(c_wp);
    std::string wp_expr;
    int wp_mod = 2;
    uint64_t wp_a = 1, wp_b = 0, wp_qmax = 8, wp_n = 2048;
    c_wp->add_option("--expr", wp_expr, "expression sequence instead of an automaton");
    c_wp->add_option("--mod", wp_mod, "reduce expression values mod m (default 2)");
    c_wp->add_option("--a", wp_a, "restrict to the progression a*n + b (default a=1)");
    c_wp->add_option("--b", wp_b, "restrict to the progression a*n + b (default b=0)");
    c_wp->add_option("--qmax", wp_qmax, "largest modulus tried (default 8)");
    c_wp->add_option("--n", wp_n, "bounded-check horizon (default 2048)");
    c_wp->callback([&] {
        Sequence s = wp_expr.empty()
                         ? Sequence::from_dfao(in_wp.load())
                         : Sequence::from_genpoly_mod(parse_expr(wp_expr), wp_mod);
        WeakPeriodicityResult r = weak_periodicity_search(s, wp_a, wp_b, wp_qmax, wp_n);
        if (r.witness) {
            std::printf("witness q=%llu r=%llu r2=%llu %s\n",
                        static_cast<unsigned long long>(r.witness->q),
                        static_cast<unsigned long long>(r.witness->r),
                        static_cast<unsigned long long>(r.witness->r2),
                        r.witness->exact ? "exact" : "bounded");
        } else {
            std::printf("exhausted qmax=%llu horizon=%llu\n",
                        static_cast<unsigned long long>(r.q_max),
                        static_cast<unsigned long long>(r.horizon));
            exit_code = 1;
        }
    });

    // ---- witness -----------------------------------------------------------
    auto* c_wit = app.add_subcommand("witness", "shifted finite-sums structure");
    c_wit->require_subcommand(1);

    auto* c_ips = c_wit->add_subcommand("ips", "loops witness for non-arid sets");
    AutomatonInput in_ips;
    in_ips.attach(c_ips);
    int ips_terms = 8, ips_target = 1;
    c_ips->add_option("--terms", ips_terms, "generators/shifts emitted (default 8)");
    c_ips->add_option("--target", ips_target, "output value defining the set");
    c_ips->callback([&] {
        Dfao a = in_ips.load();
        IpsWitness w = ips_witness(a, ips_target);
        std::printf("state=%d u0=%s v1=%s v2=%s u1=%s\n", w.state, word_str(w.u0).c_str(),
                    word_str(w.v1).c_str(), word_str(w.v2).c_str(), word_str(w.u1).c_str());
        for (const mpz_class& g : w.generators(ips_terms))
            std::printf("generator %s\n", g.get_str().c_str());
        for (const mpz_class& n : w.shifts(ips_terms))
            std::printf("shift %s\n", n.get_str().c_str());
        FsReport rep = verify_fs(a, w.generators(ips_terms), w.shifts(ips_terms), ips_target);
        std::printf("verified %s/%s sums\n",
                    mpz_class(rep.checked - (rep.ok ? 0 : 1)).get_str().c_str(),
                    rep.checked.get_str().c_str());
        if (!rep.ok) exit_code = 1;
    });

    auto* c_sip = c_wit->add_subcommand("shifted-ip", "zero-tail witness construction");
    AutomatonInput in_sip;
    in_sip.attach(c_sip);
    int sip_check = 8, sip_terms = 6, sip_target = 1;
    c_sip->add_option("--check-len", sip_check, "factor-hypothesis check bound (default 8)");
    c_sip->add_option("--terms", sip_terms, "generators emitted (default 6)");
    c_sip->add_option("--target", sip_target, "output value defining the set");
    c_sip->callback([&] {
        Dfao a = in_sip.load();
        ShiftedIpWitness w = shifted_ip_witness(a, sip_check, sip_target);
        std::printf("s=%d s'=%d l=%d v=%s access=%s shift=%s\n", w.s, w.s_prime, w.l,
                    word_str(w.v).c_str(), word_str(w.access).c_str(),
                    w.shift.get_str().c_str());
        std::vector<mpz_class> gens = w.generators(sip_terms);
        for (const mpz_class& g : gens) std::printf("generator %s\n", g.get_str().c_str());
        FsReport rep = verify_fs(a, gens, std::vector<mpz_class>(gens.size(), w.shift),
                                 sip_target);
        std::printf("verified %s/%s sums\n",
                    mpz_class(rep.checked - (rep.ok ? 0 : 1)).get_str().c_str(),
                    rep.checked.get_str().c_str());
        if (!rep.ok) exit_code = 1;
    });

    auto* c_vfs = c_wit->add_subcommand("verify-fs", "exhaustive finite-sums membership");
    AutomatonInput in_vfs;
    in_vfs.attach(c_vfs);
    std::string vfs_gens, vfs_shifts;
    int vfs_target = 1;
    c_vfs->add_option("--generators", vfs_gens, "comma-separated generators")->required();
    c_vfs->add_option("--shifts", vfs_shifts, "comma-separated shifts N_t (optional)");
    c_vfs->add_option("--target", vfs_target, "output value defining the set");
    c_vfs->callback([&] {
        Dfao a = in_vfs.load();
        FsReport rep = verify_fs(a, parse_mpz_list(vfs_gens),
                                 vfs_shifts.empty() ? std::vector<mpz_class>{}
                                                    : parse_mpz_list(vfs_shifts),
                                 vfs_target);
        std::printf("checked=%s ok=%s\n", rep.checked.get_str().c_str(),
                    rep.ok ? "yes" : "no");
        if (!rep.ok) {
            std::printf("%s\n", rep.detail.c_str());
            exit_code = 1;
        }
    });

    // ---- density -----------------------------------------------------------
    auto* c_den = app.add_subcommand("density", "symbol densities and window estimates");
    c_den->require_subcommand(1);

    auto* c_uni = c_den->add_subcommand("uniform", "terminal-component transfer counts");
    AutomatonInput in_uni;
    in_uni.attach(c_uni);
    int uni_len = 64;
    c_uni->add_option("--length", uni_len, "word length ladder top (default 64)");
    c_uni->callback([&] {
        DensityReport rep = uniform_density(in_uni.load(), uni_len);
        std::printf("exact=%s method=%s\n", rep.exact ? "yes" : "no", rep.method.c_str());
        for (const auto& [value, rho] : rep.rho)
            std::printf("value=%d density=%s\n", value, q_str(rho).c_str());
    });

    auto* c_ban = c_den->add_subcommand("banach", "max-window count profile");
    AutomatonInput in_ban;
    in_ban.attach(c_ban);
    std::string ban_ladder = "1024,65536,1048576";
    int ban_samples = 64, ban_target = 1;
    uint64_t ban_seed = 1;
    bool ban_csv = false;
    c_ban->add_option("--ladder", ban_ladder, "window lengths (default 1024,65536,1048576)");
    c_ban->add_option("--samples", ban_samples, "window positions per length (default 64)");
    c_ban->add_option("--seed", ban_seed, "sampling seed (default 1)");
    c_ban->add_option("--target", ban_target, "output value defining the set");
    c_ban->add_flag("--csv", ban_csv, "emit the profile as CSV");
    c_ban->callback([&] {
        DensityReport rep = banach_estimate(in_ban.load(), parse_mpz_list(ban_ladder),
                                            ban_samples, ban_seed, ban_target);
        if (ban_csv) std::printf("window,max_count,ratio\n");
        for (const auto& pt : rep.profile)
            std::printf(ban_csv ? "%s,%s,%.6f\n" : "window=%s max_count=%s ratio=%.6f\n",
                        pt.N.get_str().c_str(), pt.max_count.get_str().c_str(), pt.ratio);
    });

    // ---- eval --------------------------------------------------------------
    auto* c_eval = app.add_subcommand("eval", "evaluate a generalised polynomial");
    std::string eval_expr, eval_n = "0";
    long eval_p0 = 64, eval_pmax = 4096;
    bool eval_floor_flag = false;
    c_eval->add_option("--expr", eval_expr, "expression to evaluate")->required();
    c_eval->add_option("--n", eval_n, "argument (default 0)");
    c_eval->add_option("--p0", eval_p0, "starting precision in bits (default 64)");
    c_eval->add_option("--pmax", eval_pmax, "maximum precision in bits (default 4096)");
    c_eval->add_flag("--floor", eval_floor_flag, "apply an outermost floor");
    c_eval->callback([&] {
        ExprPtr e = parse_expr(eval_expr);
        EvalOptions opt{eval_p0, eval_pmax};
        if (eval_floor_flag) {
            std::printf("floor=%s\n", eval_floor(e, mpz_class(eval_n), opt).get_str().c_str());
            return;
        }
        EvalOutcome out = eval(e, mpz_class(eval_n), opt);
        if (out.value.exact())
            std::printf("exact %s\n", q_str(out.value.rational()).c_str());
        else
            std::printf("interval [%s, %s] precision=%ld\n",
                        q_str(out.value.lower()).c_str(), q_str(out.value.upper()).c_str(),
                        static_cast<long>(out.precision_used));
    });

    // ---- discrepancy -------------------------------------------------------
    auto* c_dis = app.add_subcommand("discrepancy", "star discrepancy of frac(lambda*e(a*n))");
    std::string dis_expr, dis_lambda = "1";
    long dis_n = 1000, dis_stride = 1, dis_p0 = 64, dis_pmax = 4096;
    c_dis->add_option("--expr", dis_expr, "expression")->required();
    c_dis->add_option("--n", dis_n, "number of sample points (default 1000)");
    c_dis->add_option("--lambda", dis_lambda, "rational multiplier (default 1)");
    c_dis->add_option("--stride", dis_stride, "argument stride a (default 1)");
    c_dis->add_option("--p0", dis_p0, "starting precision in bits (default 64)");
    c_dis->add_option("--pmax", dis_pmax, "maximum precision in bits (default 4096)");
    c_dis->callback([&] {
        mpq_class lambda(dis_lambda);
        lambda.canonicalize();
        double d = star_discrepancy(parse_expr(dis_expr), dis_n, lambda, dis_stride,
                                    {dis_p0, dis_pmax});
        std::printf("D*=%.6f N=%ld\n", d, dis_n);
    });

    // ---- orbit -------------------------------------------------------------
    auto* c_orbit = app.add_subcommand("orbit", "skew-product torus dynamics");
    auto* c_ov = c_orbit->add_subcommand("verify", "orbit = closed form, plus mod bridge");
    std::string ov_poly = "0,0,1";
    long ov_mod = 2;
    unsigned long ov_n = 10000;
    c_ov->add_option("--poly", ov_poly, "coefficients c0,c1,... (default 0,0,1)");
    c_ov->add_option("--mod", ov_mod, "modulus m (default 2)");
    c_ov->add_option("--n", ov_n, "verification horizon (default 10000)");
    c_ov->callback([&] {
        std::vector<mpq_class> p;
        for (const mpz_class& c : parse_mpz_list(ov_poly)) p.emplace_back(c);
        BinomialLift lift = binomial_lift(p, ov_mod);
        SkewSystem s = skew_from_lift(lift);
        OrbitVerifyReport rep = verify_identity(s, ov_n);
        BridgeReport bridge = verify_mod_bridge(lift, ov_n);
        std::printf("dimension=%d identity=%s bridge=%s checked=%lu\n", s.d,
                    rep.ok ? "ok" : "failed", bridge.ok ? "ok" : "failed", rep.checked);
        if (!rep.ok || !bridge.ok) exit_code = 1;
    });

    // ---- setalg ------------------------------------------------------------
    auto* c_set = app.add_subcommand("setalg", "automatic-set transformations");
    c_set->require_subcommand(1);

    auto* c_filter = c_set->add_subcommand("filter", "intersect with n = r (mod m)");
    AutomatonInput in_filter;
    in_filter.attach(c_filter);
    uint64_t fil_m = 2, fil_r = 0;
    c_filter->add_option("--m", fil_m, "modulus")->required();
    c_filter->add_option("--r", fil_r, "residue (default 0)");
    c_filter->callback(
        [&] { std::printf("%s", to_text(congruence_filter(in_filter.load(), fil_m, fil_r)).c_str()); });

    auto* c_affine = c_set->add_subcommand("affine", "preimage under n -> alpha*n + beta");
    AutomatonInput in_affine;
    in_affine.attach(c_affine);
    uint64_t aff_alpha = 1, aff_beta = 0;
    c_affine->add_option("--alpha", aff_alpha, "multiplier")->required();
    c_affine->add_option("--beta", aff_beta, "offset (default 0)");
    c_affine->callback([&] {
        std::printf("%s", to_text(affine_preimage(in_affine.load(), aff_alpha, aff_beta)).c_str());
    });

    auto* c_scale = c_set->add_subcommand("scale", "preimage under n -> c*n");
    AutomatonInput in_scale;
    in_scale.attach(c_scale);
    uint64_t scale_c = 1;
    c_scale->add_option("--c", scale_c, "scale factor")->required();
    c_scale->callback(
        [&] { std::printf("%s", to_text(scale_preimage(in_scale.load(), scale_c)).c_str()); });

    // ---- corpus ------------------------------------------------------------
    auto* c_corpus = app.add_subcommand("corpus", "named reference constructions");
    c_corpus->require_subcommand(1);
    auto* c_list = c_corpus->add_subcommand("list", "enumerate corpus names");
    c_list->callback([] {
        for (const std::string& name : corpus_names()) std::printf("%s\n", name.c_str());
    });
    auto* c_build = c_corpus->add_subcommand("build", "emit an automaton as text");
    std::string build_name, build_param;
    c_build->add_option("--name", build_name, "corpus name")->required();
    c_build->add_option("--param", build_param, "corpus parameter");
    c_build->callback(
        [&] { std::printf("%s", to_text(build_named_automaton(build_name, build_param)).c_str()); });

    // ---- compare -----------------------------------------------------------
    auto* c_cmp = app.add_subcommand("compare", "sequence agreement and mismatch sets");
    AutomatonInput in_cmp;
    in_cmp.attach(c_cmp);
    std::string cmp_dfao2, cmp_corpus2, cmp_param2;
    int cmp_period = 0;
    c_cmp->add_option("--dfao2", cmp_dfao2, "second automaton file");
    c_cmp->add_option("--corpus2", cmp_corpus2, "second corpus automaton");
    c_cmp->add_option("--param2", cmp_param2, "second corpus parameter");
    c_cmp->add_option("--period", cmp_period,
                      "also report the best periodic pattern of this period");
    c_cmp->callback([&] {
        Dfao a = in_cmp.load();
        if (!cmp_dfao2.empty() || !cmp_corpus2.empty()) {
            AutomatonInput second{cmp_dfao2, cmp_corpus2, cmp_param2};
            Dfao b = second.load();
            bool equal = same_sequence(a, b);
            std::printf("agree=%s\n", equal ? "yes" : "no");
            if (!equal) exit_code = 1;
            return;
        }
        if (cmp_period < 1)
            throw CLI::ValidationError("compare", "need a second automaton or --period");
        auto [pattern, z] = mismatch_best_pattern(a, cmp_period);
        std::string pat;
        for (std::size_t i = 0; i < pattern.size(); ++i)
            pat += (i ? "," : "") + std::to_string(pattern[i]);
        Classification c = classify(z);
        std::printf("pattern=%s\n", pat.c_str());
        if (c.arid)
            std::printf("mismatch arid rank=%d count_below_2^20=%s\n", c.rank,
                        count_below(z, mpz_class(1) << 20).get_str().c_str());
        else
            std::printf("mismatch not-arid count_below_2^20=%s\n",
                        count_below(z, mpz_class(1) << 20).get_str().c_str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const PrecisionError& e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
