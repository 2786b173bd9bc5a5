// constforge -- command-line front end: catalog listing, certified identity
// verification, generating-function spot checks, exact power-series proofs,
// congruence sweeps, convergence profiling and reference constants.

#include "constforge/congruence.hpp"
#include "constforge/elementary.hpp"
#include "constforge/power_series.hpp"
#include "constforge/sequences.hpp"
#include "constforge/series.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace cf = constforge;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

long default_digits() {
    if (const char* env = std::getenv("CONSTFORGE_DIGITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 10) return v;
    }
    return 100;
}

void print_report_table(const cf::series::EvalReport& rep) {
    std::printf("%-14s %6ld digits %8ld terms  %-4s  gap<%s  %ldms\n",
                rep.id.c_str(), rep.digits, rep.terms, rep.status().c_str(),
                [&] {
                    // two-significant-digit scientific form of the gap bound
                    cf::real::Ball g = cf::real::Ball::from_rat(rep.gap, 32);
                    char buf[64];
                    mpfr_snprintf(buf, sizeof buf, "%.1Re", g.center());
                    return std::string(buf);
                }()
                    .c_str(),
                rep.ms);
    std::printf("    lhs = %s\n", rep.lhs.decimal(60).c_str());
    std::printf("    rhs = %s\n", rep.rhs.decimal(60).c_str());
}

void print_cong_table(const cf::cong::CongruenceReport& rep) {
    std::printf("%-4s p=%-6llu lhs=%-12llu rhs=%-12llu %s%s%s\n",
                cf::cong::congruence_name(rep.id).c_str(),
                static_cast<unsigned long long>(rep.p),
                static_cast<unsigned long long>(rep.lhs),
                static_cast<unsigned long long>(rep.rhs), rep.status_str().c_str(),
                rep.note.empty() ? "" : "  # ", rep.note.c_str());
}

struct CheckJson {
    std::string check;
    long order;
    cf::ps::CheckResult result;
    std::string to_json() const {
        return "{\"check\":\"" + check + "\",\"order\":" + std::to_string(order) +
               ",\"status\":\"" + (result.ok ? "pass" : "fail") +
               "\",\"first_bad\":" + std::to_string(result.first_bad) + "}";
    }
};

cf::QuadExt parse_x_or_throw(const std::string& text) {
    auto x = cf::QuadExt::parse(text);
    if (!x)
        throw cf::DomainError("cannot parse argument x: \"" + text +
                              "\" (expected a, a/c, sqrt(d) or (a+b*sqrt(d))/c with "
                              "d in {0,2,3,5})");
    return *x;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constforge: certified evaluation of fast-converging "
                 "central-binomial series and empirical congruence checks"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    app.add_flag("--json", json, "emit one JSON object per line");

    long digits = default_digits();
    int jobs = 1;

    auto* cmd_list = app.add_subcommand("list", "list the series catalog");

    auto* cmd_verify = app.add_subcommand("verify", "verify one catalog identity");
    std::string verify_id;
    cmd_verify->add_option("--id", verify_id, "catalog id, e.g. S1.1")->required();
    cmd_verify->add_option("--digits", digits, "certified decimal digits");

    auto* cmd_verify_all =
        app.add_subcommand("verify-all", "verify every non-profile-only identity");
    cmd_verify_all->add_option("--digits", digits, "certified decimal digits");
    cmd_verify_all->add_option("--jobs", jobs, "worker threads");

    auto* cmd_gf = app.add_subcommand(
        "gf", "check a generating-function identity at an argument x");
    std::string gf_family, gf_x;
    cmd_gf->add_option("--family", gf_family,
                       "GF1.4 GF1.7 GF1.10 GF1.17 GF2.1 GF-DK3 GF-DK4")
        ->required();
    cmd_gf->add_option("--x", gf_x, "argument, e.g. 3, 1/2, (1+1*sqrt(5))/2")
        ->required();
    cmd_gf->add_option("--digits", digits, "certified decimal digits");

    auto* cmd_ps = app.add_subcommand(
        "ps-verify", "exact power-series identity checks over the rationals");
    long order = 41;
    cmd_ps->add_option("--order", order, "truncation order (z^N)");

    auto* cmd_prod = app.add_subcommand(
        "prod-coeff", "exact product-coefficient and coefficient-ratio checks");
    long kmax = 50;
    cmd_prod->add_option("--kmax", kmax, "largest k checked");

    auto* cmd_cong =
        app.add_subcommand("cong", "sweep a congruence over a prime range");
    std::string cong_id;
    std::uint64_t pmin = 5, pmax = 100;
    cmd_cong->add_option("--id", cong_id, "C1a C1b C2a C2b CS6")->required();
    cmd_cong->add_option("--pmin", pmin, "lower end of the prime range");
    cmd_cong->add_option("--pmax", pmax, "upper end of the prime range");
    cmd_cong->add_option("--jobs", jobs, "worker threads");

    auto* cmd_profile = app.add_subcommand(
        "profile", "partial-sum accuracy profile against the closed form");
    std::string profile_id;
    long terms = 100;
    cmd_profile->add_option("--id", profile_id, "catalog id")->required();
    cmd_profile->add_option("--terms", terms, "number of terms");

    auto* cmd_pi = app.add_subcommand("pi", "print the reference pi enclosure");
    cmd_pi->add_option("--digits", digits, "certified decimal digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (digits < 10) throw std::invalid_argument("--digits must be >= 10");
        if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");

        if (cmd_list->parsed()) {
            for (const auto& s : cf::series::catalog()) {
                if (json) {
                    std::string line = "{\"id\":\"" + s.id + "\",\"formula\":\"" +
                                       s.formula + "\",\"rhs\":\"" +
                                       cf::cf::to_string(s.rhs) + "\",\"profile_only\":" +
                                       (s.profile_only ? "true" : "false") + "}";
                    std::printf("%s\n", line.c_str());
                } else {
                    std::printf("%-12s %-44s = %s%s\n", s.id.c_str(), s.formula.c_str(),
                                cf::cf::to_string(s.rhs).c_str(),
                                s.profile_only ? "   [profile-only]" : "");
                }
            }
            return kExitPass;
        }

        if (cmd_verify->parsed()) {
            auto rep = cf::series::verify_identity(verify_id, digits);
            if (json)
                std::printf("%s\n", rep.to_json().c_str());
            else
                print_report_table(rep);
            return rep.pass ? kExitPass : kExitFail;
        }

        if (cmd_verify_all->parsed()) {
            auto reps = cf::series::verify_all(digits, jobs);
            bool all_pass = true;
            long pass_count = 0;
            for (const auto& rep : reps) {
                all_pass = all_pass && rep.pass;
                pass_count += rep.pass ? 1 : 0;
                if (json)
                    std::printf("%s\n", rep.to_json().c_str());
                else
                    print_report_table(rep);
            }
            if (!json)
                std::printf("%ld/%zu identities verified at %ld digits\n", pass_count,
                            reps.size(), digits);
            return all_pass ? kExitPass : kExitFail;
        }

        if (cmd_gf->parsed()) {
            auto family = cf::series::parse_gf_family(gf_family);
            if (!family)
                throw std::invalid_argument("unknown generating-function family: " +
                                            gf_family);
            cf::QuadExt x = parse_x_or_throw(gf_x);
            auto rep = cf::series::gf_check(*family, x, digits);
            if (json)
                std::printf("%s\n", rep.to_json().c_str());
            else
                print_report_table(rep);
            return rep.pass ? kExitPass : kExitFail;
        }

        if (cmd_ps->parsed()) {
            if (order < 3) throw std::invalid_argument("--order must be >= 3");
            CheckJson c22{"2.2", order, cf::ps::verify_2_2(order)};
            CheckJson c23{"2.3", order, cf::ps::verify_2_3(order)};
            for (const auto& c : {c22, c23}) {
                if (json)
                    std::printf("%s\n", c.to_json().c_str());
                else if (c.result.ok)
                    std::printf("identity (%s) exact through z^%ld: pass\n",
                                c.check.c_str(), order);
                else
                    std::printf(
                        "identity (%s) FAILS first at coefficient z^%ld\n",
                        c.check.c_str(), c.result.first_bad);
            }
            return (c22.result.ok && c23.result.ok) ? kExitPass : kExitFail;
        }

        if (cmd_prod->parsed()) {
            if (kmax < 1) throw std::invalid_argument("--kmax must be >= 1");
            CheckJson pc{"product-coeff", kmax, cf::ps::verify_product_coeff(kmax)};
            CheckJson cr{"coeff-ratio", kmax, cf::ps::verify_coeff_ratio(kmax)};
            for (const auto& c : {pc, cr}) {
                if (json)
                    std::printf("%s\n", c.to_json().c_str());
                else if (c.result.ok)
                    std::printf("%s exact for k <= %ld: pass\n", c.check.c_str(), kmax);
                else
                    std::printf("%s FAILS first at k = %ld\n", c.check.c_str(),
                                c.result.first_bad);
            }
            return (pc.result.ok && cr.result.ok) ? kExitPass : kExitFail;
        }

        if (cmd_cong->parsed()) {
            auto id = cf::cong::parse_congruence_id(cong_id);
            if (!id) throw std::invalid_argument("unknown congruence id: " + cong_id);
            if (pmin > pmax)
                throw std::invalid_argument("--pmin must not exceed --pmax");
            auto reps = cf::cong::sweep(*id, pmin, pmax, jobs);
            bool any_fail = false;
            for (const auto& rep : reps) {
                any_fail = any_fail || rep.status == cf::cong::CongruenceReport::Status::Fail;
                if (json)
                    std::printf("%s\n", rep.to_json().c_str());
                else
                    print_cong_table(rep);
            }
            if (!json)
                std::printf("%zu primes checked\n", reps.size());
            return any_fail ? kExitFail : kExitPass;
        }

        if (cmd_profile->parsed()) {
            if (terms < 0) throw std::invalid_argument("--terms must be >= 0");
            auto points = cf::series::profile(profile_id, terms);
            for (const auto& pt : points) {
                if (json)
                    std::printf("{\"k\":%ld,\"digits\":%.1f}\n", pt.k,
                                pt.correct_digits);
                else
                    std::printf("k=%-8ld %.1f correct digits\n", pt.k,
                                pt.correct_digits);
            }
            return kExitPass;
        }

        if (cmd_pi->parsed()) {
            mpfr_prec_t prec =
                static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.321928095) + 16;
            cf::real::Ball pi = cf::real::const_pi(prec);
            if (json)
                std::printf("{\"digits\":%ld,\"value\":\"%s\"}\n", digits,
                            pi.decimal(static_cast<std::size_t>(digits)).c_str());
            else
                std::printf("%s\n", pi.decimal(static_cast<std::size_t>(digits)).c_str());
            return kExitPass;
        }
    } catch (const cf::DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitUsage;
    } catch (const cf::series::RefusedError& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        // includes the hard divisibility violations, which signal a bug in
        // this program rather than in the mathematics
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
