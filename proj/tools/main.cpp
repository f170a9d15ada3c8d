// nucembed: exact norms of diagonal operators on mixed-norm sequence spaces,
// dyadic box-packing analysis, and the embedding classifier, behind one
// reproducible command line.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "nucembed/classifier.hpp"
#include "nucembed/geometry.hpp"
#include "nucembed/oracles.hpp"

using namespace nucembed;
using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        std::string tok = csv.substr(pos, next - pos);
        if (!tok.empty()) {
            try {
                std::size_t used = 0;
                double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back(v);
            } catch (...) {
                throw std::invalid_argument("malformed number '" + tok + "'");
            }
        }
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

std::vector<long long> parse_ints(const std::string& csv) {
    std::vector<long long> out;
    for (double v : parse_reals(csv)) {
        if (v != std::floor(v)) throw std::invalid_argument("expected integers, got '" + csv + "'");
        out.push_back(static_cast<long long>(v));
    }
    return out;
}

// Flat-value rendering shared by the json/csv/plain output modes.
void emit(const json& obj, const std::string& format) {
    if (format == "json") {
        std::cout << obj.dump() << "\n";
        return;
    }
    auto scalar = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return "";
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_float()) return fmt_double(v.get<double>());
        if (v.is_array()) {
            std::string joined;
            for (const auto& e : v) {
                if (!joined.empty()) joined += ";";
                joined += e.is_string() ? e.get<std::string>() : e.dump();
            }
            return joined;
        }
        return v.dump();
    };
    if (format == "csv") {
        std::string header, row;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!header.empty()) {
                header += ",";
                row += ",";
            }
            header += it.key();
            std::string cell = scalar(it.value());
            if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
            row += cell;
        }
        std::cout << header << "\n" << row << "\n";
        return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it)
        std::cout << it.key() << "=" << scalar(it.value()) << "\n";
}

json verdict_json(const EmbeddingVerdict& v) { return json::parse(verdict_report(v)); }

// ---------------------------------------------------------------------------
// verify batteries
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string suite = "nuclear";
    int instances = 100;
    long long maxdim = 6;
    long budget = 10000;
    std::uint64_t seed = 0;
    bool inject_fault = false;
    std::string format = "plain";
};

Exponent pick_exponent(std::mt19937_64& rng) {
    static const Exponent ladder[] = {Exponent::of(1),        Exponent::of(Rat(4, 3)), Exponent::of(Rat(3, 2)),
                                      Exponent::of(2),        Exponent::of(3),         Exponent::of(4),
                                      Exponent::inf()};
    return ladder[std::uniform_int_distribution<std::size_t>(0, std::size(ladder) - 1)(rng)];
}

DiagonalOperator random_instance(std::mt19937_64& rng, long long maxdim) {
    std::uniform_int_distribution<long long> nblocks(1, 3);
    std::vector<long long> blocks(static_cast<std::size_t>(nblocks(rng)), 1);
    long long remaining = maxdim - static_cast<long long>(blocks.size());
    for (auto& m : blocks) {
        if (remaining <= 0) break;
        long long e = std::uniform_int_distribution<long long>(0, remaining)(rng);
        m += e;
        remaining -= e;
    }
    auto src = MixedSpaceSpec::finite_unit(pick_exponent(rng), pick_exponent(rng), blocks);
    auto dst = MixedSpaceSpec::finite_unit(pick_exponent(rng), pick_exponent(rng), blocks);
    BlockVector lam = BlockVector::zeros_like(src);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    for (auto& b : lam.blocks)
        for (auto& v : b) v = entry(rng);
    return DiagonalOperator(std::move(lam), src, dst);
}

int run_verify(const VerifyOptions& opt) {
    int failures = 0;
    json rows = json::array();
    auto note = [&](const std::string& name, double ref, double got, double tol, bool pass) {
        if (!pass) ++failures;
        if (opt.format == "json") {
            rows.push_back(json{{"case", name},
                                {"reference", ref},
                                {"value", got},
                                {"tolerance", tol},
                                {"status", pass ? "pass" : "FAIL"}});
        } else {
            std::cout << (pass ? "pass  " : "FAIL  ") << name << "  reference=" << fmt_double(ref)
                      << " value=" << fmt_double(got) << " tol=" << fmt_double(tol) << "\n";
        }
    };

    if (opt.suite == "nuclear" || opt.suite == "all") {
        for (int i = 0; i < opt.instances; ++i) {
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(i) * 7919 + 1);
            auto d = random_instance(rng, opt.maxdim);
            double exact = diag_nuclear_exact(d);
            if (opt.inject_fault && i == 0) exact *= 1.0 + 1e-3;
            auto cert = diag_nuclear_oracle(d, opt.budget, opt.seed + static_cast<std::uint64_t>(i));
            double tol = 1e-9 * (1.0 + std::fabs(exact));
            bool pass = std::fabs(exact - cert.value) <= tol && cert.value <= exact + tol;
            note("nuclear/" + std::to_string(i), exact, cert.value, tol, pass);
        }
    }
    if (opt.suite == "opnorm" || opt.suite == "all") {
        long budget = std::max(opt.budget, 50000L);
        for (int i = 0; i < opt.instances; ++i) {
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(i) * 104729 + 2);
            auto d = random_instance(rng, std::min<long long>(opt.maxdim, 8));
            long long n = d.src.total_dim();
            std::vector<double> mat(static_cast<std::size_t>(n * n), 0.0);
            auto lam = d.lambda.flat();
            for (long long k = 0; k < n; ++k)
                mat[static_cast<std::size_t>(k * n + k)] = lam[static_cast<std::size_t>(k)];
            double exact = diag_op_norm_exact(d);
            double found = dense_op_norm_oracle(DenseOperator(mat, d.src, d.dst), budget,
                                                opt.seed + static_cast<std::uint64_t>(i));
            double tol = 1e-6 * (1.0 + exact);
            bool pass = found <= exact + 1e-9 * (1.0 + exact) && found >= exact - tol;
            note("opnorm/" + std::to_string(i), exact, found, tol, pass);
        }
    }
    if (opt.suite == "boxpack" || opt.suite == "all") {
        std::vector<std::pair<std::string, DomainSpec>> domains;
        domains.emplace_back("box-unit", DomainSpec::box({Rat(1), Rat(1)}));
        domains.emplace_back("box-rect", DomainSpec::box({Rat(3, 2), Rat(2, 3)}));
        domains.emplace_back("power-1/2", DomainSpec::power_cusp(Rat(1, 2)));
        domains.emplace_back("power-1", DomainSpec::power_cusp(Rat(1)));
        domains.emplace_back("power-2", DomainSpec::power_cusp(Rat(2)));
        domains.emplace_back("log-2", DomainSpec::log_cusp(Rat(2)));
        std::vector<long long> comb_counts = {1, 2, 4};
        domains.emplace_back("comb", comb_domain(comb_counts, 2));
        for (const auto& [name, dom] : domains) {
            auto profile = boxpack_profile(dom, 0, 7);
            bool pass = true;
            for (std::size_t i = 1; i < profile.rows.size(); ++i)
                if (profile.rows[i - 1].count > 0 &&
                    profile.rows[i].count < (1ULL << dom.d) * profile.rows[i - 1].count)
                    pass = false;
            if (dom.kind == DomainSpec::Kind::box) {
                Rat vol(1);
                for (const auto& s : dom.sides) vol = vol * s;
                for (const auto& row : profile.rows) {
                    Rat packed(static_cast<long long>(row.count), 1LL << (dom.d * row.j));
                    if (!(packed <= vol)) pass = false;
                }
            }
            note("boxpack/" + name, 0.0, 0.0, 0.0, pass);
        }
    }
    if (opt.format == "json") {
        std::cout << json{{"suite", opt.suite}, {"failures", failures}, {"rows", rows}}.dump() << "\n";
    } else {
        std::cout << (failures == 0 ? "all comparisons passed" : "FAILURES: " + std::to_string(failures))
                  << "\n";
    }
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact diagonal-operator norms on mixed-norm sequence spaces, box packing, and the embedding classifier"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::string format = "json";
    std::uint64_t seed = 0;
    long budget = 10000;

    // --- exponents ---------------------------------------------------------
    auto* cmd_exp = app.add_subcommand("exponents", "star and tong exponents for an exponent quadruple");
    std::string e_p1, e_p2, e_q1, e_q2;
    cmd_exp->add_option("--p1", e_p1)->required();
    cmd_exp->add_option("--p2", e_p2)->required();
    cmd_exp->add_option("--q1", e_q1)->required();
    cmd_exp->add_option("--q2", e_q2)->required();
    cmd_exp->add_option("--format", format);

    // --- norm --------------------------------------------------------------
    auto* cmd_norm = app.add_subcommand("norm", "mixed (quasi-)norm of a block vector");
    std::string n_p = "2", n_q = "2", n_blocks, n_weights, n_x;
    cmd_norm->add_option("--p", n_p);
    cmd_norm->add_option("--q", n_q);
    cmd_norm->add_option("--blocks", n_blocks)->required();
    cmd_norm->add_option("--weights", n_weights);
    cmd_norm->add_option("--x", n_x)->required();
    cmd_norm->add_option("--format", format);

    // --- diag-opnorm / diag-nuclear -----------------------------------------
    std::string d_p1 = "2", d_p2 = "2", d_q1 = "2", d_q2 = "2", d_blocks, d_lambda;
    bool d_oracle = false;
    auto add_diag_options = [&](CLI::App* cmd) {
        cmd->add_option("--p1", d_p1);
        cmd->add_option("--p2", d_p2);
        cmd->add_option("--q1", d_q1);
        cmd->add_option("--q2", d_q2);
        cmd->add_option("--blocks", d_blocks)->required();
        cmd->add_option("--lambda", d_lambda)->required();
        cmd->add_option("--format", format);
        cmd->add_option("--seed", seed);
        cmd->add_option("--budget", budget);
    };
    auto* cmd_opnorm = app.add_subcommand("diag-opnorm", "exact operator norm of a diagonal operator");
    add_diag_options(cmd_opnorm);
    auto* cmd_nuclear = app.add_subcommand("diag-nuclear", "exact nuclear norm of a diagonal operator");
    add_diag_options(cmd_nuclear);
    cmd_nuclear->add_flag("--oracle", d_oracle, "also run the trace-duality oracle");

    // --- verify --------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "closed form vs oracle batteries");
    VerifyOptions vopt;
    cmd_verify->add_option("--suite", vopt.suite)->check(CLI::IsMember({"nuclear", "opnorm", "boxpack", "all"}));
    cmd_verify->add_option("--instances", vopt.instances);
    cmd_verify->add_option("--maxdim", vopt.maxdim);
    cmd_verify->add_option("--budget", vopt.budget);
    cmd_verify->add_option("--seed", vopt.seed);
    cmd_verify->add_flag("--inject-fault", vopt.inject_fault,
                         "negative-control fixture: corrupt one reference value");
    cmd_verify->add_option("--format", vopt.format)->check(CLI::IsMember({"plain", "json"}));

    // --- boxpack --------------------------------------------------------------
    auto* cmd_box = app.add_subcommand("boxpack", "dyadic box-packing profile and growth exponent");
    std::string b_kind, b_alpha, b_beta, b_side, b_counts, b_domain_file;
    int b_d = 2, b_jmin = 1, b_jmax = 8;
    bool b_measure = false;
    cmd_box->add_option("--kind", b_kind);
    cmd_box->add_option("--alpha", b_alpha);
    cmd_box->add_option("--beta", b_beta);
    cmd_box->add_option("--side", b_side);
    cmd_box->add_option("--counts", b_counts);
    cmd_box->add_option("--d", b_d);
    cmd_box->add_option("--domain", b_domain_file, "key-value domain configuration file");
    cmd_box->add_option("--jmin", b_jmin);
    cmd_box->add_option("--jmax", b_jmax);
    cmd_box->add_flag("--measure", b_measure, "also estimate b through the inner-region measure");
    cmd_box->add_option("--format", format);

    // --- classify --------------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "compactness/nuclearity verdicts");
    cmd_classify->require_subcommand(1);
    std::string c_scale = "B", c_s1, c_s2, c_p1 = "2", c_p2 = "2", c_q1 = "2", c_q2 = "2";
    int c_d = 2;
    std::string c_b;
    double c_b_est = 0.0, c_b_stderr = 0.0;
    bool c_binf = false, c_limsup_pos = false, c_limsup_zero = false, c_nqb = false, c_finmeas = false;

    auto add_space_options = [&](CLI::App* cmd) {
        cmd->add_option("--scale", c_scale)->check(CLI::IsMember({"B", "F"}));
        cmd->add_option("--s1", c_s1)->required();
        cmd->add_option("--s2", c_s2)->required();
        cmd->add_option("--p1", c_p1);
        cmd->add_option("--p2", c_p2);
        cmd->add_option("--q1", c_q1);
        cmd->add_option("--q2", c_q2);
        cmd->add_option("--d", c_d);
        cmd->add_option("--format", format);
    };
    auto* cls_bounded = cmd_classify->add_subcommand("bounded", "bounded Lipschitz domain");
    add_space_options(cls_bounded);
    auto* cls_quasi = cmd_classify->add_subcommand("quasi-bounded", "quasi-bounded domain");
    add_space_options(cls_quasi);
    cls_quasi->add_flag("--binf", c_binf, "b is infinite");
    cls_quasi->add_option("--b", c_b, "exact rational b");
    auto* opt_stderr = cls_quasi->add_option("--b-stderr", c_b_stderr);
    cls_quasi->add_option("--b-est", c_b_est)->needs(opt_stderr);
    cls_quasi->add_flag("--limsup-positive", c_limsup_pos);
    cls_quasi->add_flag("--limsup-zero", c_limsup_zero);
    cls_quasi->add_flag("--not-quasi-bounded", c_nqb);
    cls_quasi->add_flag("--finite-measure", c_finmeas);

    auto* cls_seq = cmd_classify->add_subcommand("sequence", "weighted vector-valued sequence spaces");
    std::string s_bgeo = "0", s_bpoly = "0", s_mgeo = "0", s_mpoly = "0", s_p1 = "2", s_p2 = "2", s_q1 = "2",
                s_q2 = "2";
    cls_seq->add_option("--beta-geo", s_bgeo);
    cls_seq->add_option("--beta-poly", s_bpoly);
    cls_seq->add_option("--m-geo", s_mgeo);
    cls_seq->add_option("--m-poly", s_mpoly);
    cls_seq->add_option("--p1", s_p1);
    cls_seq->add_option("--p2", s_p2);
    cls_seq->add_option("--q1", s_q1);
    cls_seq->add_option("--q2", s_q2);
    cls_seq->add_option("--format", format);

    try {
        app.parse(argc, argv);

        if (*cmd_exp) {
            auto p1 = Exponent::parse(e_p1), p2 = Exponent::parse(e_p2);
            auto q1 = Exponent::parse(e_q1), q2 = Exponent::parse(e_q2);
            json out;
            out["p_star"] = star_exponent(p1, p2).str();
            out["t_p"] = tong_exponent(p1, p2).str();
            out["q_star"] = star_exponent(q1, q2).str();
            out["t_q"] = tong_exponent(q1, q2).str();
            emit(out, format);
            return 0;
        }

        if (*cmd_norm) {
            auto blocks = parse_ints(n_blocks);
            std::vector<double> weights(blocks.size(), 1.0);
            if (!n_weights.empty()) weights = parse_reals(n_weights);
            auto spec = MixedSpaceSpec::finite(Exponent::parse(n_q), Exponent::parse(n_p), blocks, weights);
            auto x = BlockVector::from_flat(spec, parse_reals(n_x));
            emit(json{{"norm", mixed_norm(spec, x)}}, format);
            return 0;
        }

        if (*cmd_opnorm || *cmd_nuclear) {
            auto blocks = parse_ints(d_blocks);
            auto src = MixedSpaceSpec::finite_unit(Exponent::parse(d_q1), Exponent::parse(d_p1), blocks);
            auto dst = MixedSpaceSpec::finite_unit(Exponent::parse(d_q2), Exponent::parse(d_p2), blocks);
            DiagonalOperator d(BlockVector::from_flat(src, parse_reals(d_lambda)), src, dst);
            if (*cmd_opnorm) {
                emit(json{{"value", diag_op_norm_exact(d)}}, format);
                return 0;
            }
            json out;
            out["value"] = diag_nuclear_exact(d);
            if (d_oracle) {
                auto cert = diag_nuclear_oracle(d, budget, seed);
                out["oracle"] = cert.value;
                out["oracle_method"] = std::string(cert_method_name(cert.method));
                out["rank_one_upper"] = diag_nuclear_rank_one_upper(d).value;
            }
            emit(out, format);
            return 0;
        }

        if (*cmd_verify) return run_verify(vopt);

        if (*cmd_box) {
            DomainSpec dom = [&] {
                if (!b_domain_file.empty()) {
                    std::ifstream in(b_domain_file);
                    if (!in) throw std::invalid_argument("cannot open domain file '" + b_domain_file + "'");
                    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
                    return DomainSpec::parse(text);
                }
                std::string text = "kind=" + b_kind;
                if (!b_alpha.empty()) text += " alpha=" + b_alpha;
                if (!b_beta.empty()) text += " beta=" + b_beta;
                if (!b_side.empty()) text += " side=" + b_side;
                if (!b_counts.empty()) text += " counts=" + b_counts;
                text += " d=" + std::to_string(b_d);
                return DomainSpec::parse(text);
            }();
            auto profile = boxpack_profile(dom, b_jmin, b_jmax);
            if (format == "csv") {
                std::cout << profile_csv(profile);
                return 0;
            }
            auto est = estimate_b(profile);
            json out;
            out["d"] = dom.d;
            json rows = json::array();
            for (const auto& row : profile.rows) rows.push_back(json{{"j", row.j}, {"b_j", row.count}});
            out["rows"] = rows;
            out["b_hat"] = est.b_hat;
            out["stderr"] = est.stderr_;
            out["window"] = json::array({est.j_window.first, est.j_window.second});
            out["log_correction"] = est.log_correction;
            if (auto analytic = dom.analytic_b()) out["analytic_b"] = analytic->str();
            if (b_measure) {
                std::vector<double> grid;
                for (int k = 6; k <= 16; ++k) grid.push_back(std::exp2(-k));
                auto mest = estimate_b_via_measure(dom, grid);
                out["b_hat_measure"] = mest.b_hat;
                out["stderr_measure"] = mest.stderr_;
            }
            emit(out, format);
            return 0;
        }

        if (*cls_bounded || *cls_quasi) {
            FunctionSpaceParams src, dst;
            src.scale = dst.scale = (c_scale == "F" ? Scale::F : Scale::B);
            src.s = Rat::parse(c_s1);
            dst.s = Rat::parse(c_s2);
            src.p = Exponent::parse(c_p1);
            dst.p = Exponent::parse(c_p2);
            src.q = Exponent::parse(c_q1);
            dst.q = Exponent::parse(c_q2);
            src.d = dst.d = c_d;
            if (*cls_bounded) {
                emit(verdict_json(classify_bounded_domain(src, dst)), format);
                return 0;
            }
            std::optional<bool> limsup;
            if (c_limsup_pos) limsup = true;
            if (c_limsup_zero) limsup = false;
            bool has_best = cls_quasi->count("--b-est") > 0;
            DomainInfo dom = [&] {
                if (c_nqb) return DomainInfo::not_quasi_bounded();
                if (c_finmeas) return DomainInfo::finite_measure();
                if (c_binf) return DomainInfo::quasi_bounded_infinite();
                if (!c_b.empty()) return DomainInfo::quasi_bounded(Rat::parse(c_b), limsup);
                if (has_best) {
                    BExponentEstimate est;
                    est.b_hat = c_b_est;
                    est.stderr_ = c_b_stderr;
                    return DomainInfo::quasi_bounded_estimate(est, limsup);
                }
                throw std::invalid_argument("classify quasi-bounded: give --binf, --b, --b-est/--b-stderr, "
                                            "--not-quasi-bounded or --finite-measure");
            }();
            emit(verdict_json(classify_quasi_bounded(src, dst, dom)), format);
            return 0;
        }

        if (*cls_seq) {
            GrowthFamily beta{Rat::parse(s_bgeo), Rat::parse(s_bpoly)};
            GrowthFamily m{Rat::parse(s_mgeo), Rat::parse(s_mpoly)};
            auto p1 = Exponent::parse(s_p1), p2 = Exponent::parse(s_p2);
            auto q1 = Exponent::parse(s_q1), q2 = Exponent::parse(s_q2);
            auto v = classify_sequence_embedding(beta, m, p1, p2, q1, q2);
            json out = verdict_json(v);
            if (v.nuclear != Status::not_applicable) {
                auto series = embedding_nuclear_norm(beta, m, p1, p2, q1, q2);
                out["nuclear_norm"] = series.divergent ? json("inf") : json(series.value);
            }
            emit(out, format);
            return 0;
        }

        std::cerr << "error: unknown subcommand\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
