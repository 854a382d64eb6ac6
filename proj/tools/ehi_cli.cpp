// Command-line driver: run named verification scenarios, either from the
// built-in suites or from a JSON config, and emit a JSON report.
#include "ehi/ehi.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string>

using namespace ehi;
using nlohmann::json;

namespace {

struct Context {
    std::mt19937_64 rng;
    double tol_scale = 1.0;
    int threads = 1;

    cplx on_circle(double r) {
        std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
        return std::polar(r, ang(rng));
    }
    cplx rand_pt(double lo, double hi) {
        std::uniform_real_distribution<double> rad(lo, hi);
        return on_circle(rad(rng));
    }
    std::vector<cplx> rand_vec(size_t k, double lo, double hi) {
        std::vector<cplx> v(k);
        for (auto& x : v) x = rand_pt(lo, hi);
        return v;
    }
    std::vector<cplx> balanced(size_t m, int n, cplx t, cplx target, double mod) {
        std::vector<cplx> a(m);
        cplx prod = cpow_int(t, 2 * n - 2);
        for (size_t i = 0; i + 1 < m; ++i) {
            a[i] = on_circle(mod);
            prod *= a[i];
        }
        a[m - 1] = target / prod;
        return a;
    }
    QuadOptions opts(double tol, int nmax = 512) const {
        QuadOptions o;
        o.tol = tol;
        o.n_max = nmax;
        o.threads = threads;
        o.strict = false;
        return o;
    }
};

double rel_err(cplx a, cplx b) {
    double s = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / s;
}

struct Outcome {
    double residual;
    double tolerance;
};

const cplx kP(0.05, 0.0);
const cplx kQ(0.35, 0.0);
const cplx kT(0.6, 0.0);

using Scenario = std::function<Outcome(Context&)>;

const std::map<std::string, Scenario>& scenario_table() {
    static const std::map<std::string, Scenario> table = {
        {"theta-gamma-functional",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             for (int i = 0; i < 200; ++i) {
                 cplx p = c.rand_pt(0.05, 0.3), q = c.rand_pt(0.05, 0.3);
                 cplx u = c.rand_pt(0.4, 1.6);
                 worst = std::max(worst, rel_err(theta(p * u, p), -theta(u, p) / u));
                 worst = std::max(worst,
                                  rel_err(ell_gamma(q * u, p, q), theta(u, p) * ell_gamma(u, p, q)));
                 worst = std::max(worst, rel_err(ell_gamma(u, p, q) * ell_gamma(p * q / u, p, q),
                                                 cplx(1.0)));
             }
             return {worst, 1e-12};
         }},
        {"pairing-symmetry",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             for (int i = 0; i < 200; ++i) {
                 cplx p = c.rand_pt(0.05, 0.3);
                 cplx u = c.rand_pt(0.4, 1.6), v = c.rand_pt(0.4, 1.6);
                 worst = std::max(worst, rel_err(e_pair(u, v, p), -e_pair(v, u, p)));
                 worst = std::max(worst, rel_err(e_pair(u, cplx(1.0) / v, p), e_pair(u, v, p)));
             }
             return {worst, 1e-12};
         }},
        {"interpolation-kronecker",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             EllipticPairing ep{cplx(0.15, 0.0)};
             for (auto [s, n] : {std::pair{2, 3}, {3, 2}}) {
                 auto cc = c.rand_vec(static_cast<size_t>(s), 0.4, 0.75);
                 IndexedBasisOrder basis(s, n);
                 for (size_t i = 0; i < basis.size(); ++i)
                     for (size_t j = 0; j < basis.size(); ++j) {
                         cplx v = E_eval(cc, basis[i], reference_point(cc, basis[j], kT), kT, ep);
                         worst = std::max(worst,
                                          std::abs(v - ((i == j) ? cplx(1.0) : cplx(0.0))));
                     }
             }
             return {worst, 1e-10};
         }},
        {"interpolation-identities",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             EllipticPairing ep{cplx(0.15, 0.0)};
             for (int s = 2; s <= 3; ++s) {
                 int n = 2;
                 auto cc = c.rand_vec(static_cast<size_t>(s), 0.35, 0.75);
                 auto z = c.rand_vec(static_cast<size_t>(n), 0.5, 1.4);
                 for (const auto& mu : enumerate_compositions(s, n)) {
                     worst = std::max(worst, rel_err(E_eval(cc, mu, z, kT, ep),
                                                     E_explicit(cc, mu, z, kT, ep)));
                     cplx u = c.rand_pt(0.5, 1.2);
                     std::vector<cplx> zu(static_cast<size_t>(n));
                     for (int i = 0; i < n; ++i) zu[static_cast<size_t>(i)] = cpow_int(kT, i) * u;
                     worst = std::max(worst, rel_err(special_value(cc, mu, u, kT, cplx(0.15, 0.0)),
                                                     E_eval(cc, mu, zu, kT, ep)));
                 }
             }
             return {worst, 1e-9};
         }},
        {"transition-determinants",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             cplx p15(0.15, 0.0);
             for (auto [r, n] : {std::pair{2, 2}, {3, 1}}) {
                 auto cI = c.rand_vec(static_cast<size_t>(r) - 1, 0.4, 0.75);
                 cplx src = c.rand_pt(0.4, 0.75), tgt = c.rand_pt(0.4, 0.75);
                 auto C = transC_matrix(cI, src, tgt, n, kT, p15);
                 worst = std::max(worst, rel_err(det_gauss(C),
                                                 transC_det_closed(cI, src, tgt, n, kT, p15)));
                 int m = 2 * r + 4;
                 auto a = c.balanced(static_cast<size_t>(m), n, kT, cplx(1.0), 0.55);
                 std::vector<int> I;
                 for (int i = 1; i < r; ++i) I.push_back(i);
                 auto B = B_matrix(a, I, m - 1, 0, n, p15, kT);
                 worst = std::max(worst, rel_err(det_gauss(B),
                                                 B_det_closed(a, I, m - 1, 0, n, p15, kT)));
             }
             return {worst, 1e-9};
         }},
        {"connection-determinants",
         [](Context& c) -> Outcome {
             double worst = 0.0;
             for (int r : {1, 2}) {
                 int m = 2 * r + 4, n = r == 1 ? 2 : 1;
                 auto a1 = c.balanced(static_cast<size_t>(m), n, kT, cplx(1.0), 0.55);
                 auto a2 = c.balanced(static_cast<size_t>(m), n, kT, kP * kQ, 0.55);
                 auto u = c.rand_vec(static_cast<size_t>(r) - 1, 0.45, 0.6);
                 for (int k : {0, r}) {
                     worst = std::max(worst, rel_err(det_gauss(Atilde_matrix(a1, n, k, kP, kQ, kT)),
                                                     detAtilde_closed(a1, n, k, kP, kQ, kT)));
                     worst = std::max(worst, rel_err(det_gauss(A_cal_matrix(a2, n, k, kP, kQ, kT)),
                                                     detA_cal_closed(a2, n, k, kP, kQ, kT)));
                     worst = std::max(worst,
                                      rel_err(det_gauss(A_rescaled_matrix(a2, u, n, k, kP, kQ, kT)),
                                              detA_rescaled_closed(a2, u, n, k, kP, kQ, kT)));
                 }
             }
             return {worst, 1e-9};
         }},
        {"normalization-constant",
         [](Context&) -> Outcome {
             double worst = 0.0;
             for (int r = 1; r <= 4; ++r)
                 for (int n = 1; n <= 4; ++n)
                     worst = std::max(worst, rel_err(c_rn_closed(r, n, kP, kQ, kT),
                                                     c_rn_recurrence(r, n, kP, kQ, kT)));
             return {worst, 1e-12};
         }},
        {"selberg-n1",
         [](Context& c) -> Outcome {
             auto a = c.balanced(6, 1, kT, kP * kQ, 0.6);
             auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
             QuadResult r = pair_phi(a, kP, kQ, kT, one, 1, c.opts(1e-13, 2048));
             return {rel_err(r.value, selberg_closed(a, 1, kP, kQ, kT)), 1e-10};
         }},
        {"selberg-n2",
         [](Context& c) -> Outcome {
             auto a = c.balanced(6, 2, kT, kP * kQ, 0.7);
             auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
             QuadResult r = pair_phi(a, kP, kQ, kT, one, 2, c.opts(1e-10));
             return {rel_err(r.value, selberg_closed(a, 2, kP, kQ, kT)), 1e-7};
         }},
        {"shift-equation-n1",
         [](Context& c) -> Outcome {
             auto a = c.balanced(6, 1, kT, kP * kQ, 0.6);
             auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
             QuadResult base = pair_phi(a, kP, kQ, kT, one, 1, c.opts(1e-13, 1024));
             double worst = 0.0;
             for (int k : {0, 2}) {
                 auto ash = a;
                 ash[static_cast<size_t>(k)] *= kQ;
                 ash[5] /= kQ;
                 QuadResult sh = pair_phi(ash, kP, kQ, kT, one, 1, c.opts(1e-13, 1024));
                 worst = std::max(worst, rel_err(sh.value / base.value,
                                                 selberg_shift_coeff(a, 1, k, kP, kQ, kT)));
             }
             return {worst, 1e-9};
         }},
        {"pairing-det-r2n1",
         [](Context& c) -> Outcome {
             auto a = c.balanced(8, 1, kT, kP * kQ, 0.68);
             auto x = c.rand_vec(2, 0.45, 0.6);
             auto y = c.rand_vec(2, 0.45, 0.6);
             auto K = K_matrix(a, x, y, 1, kP, kQ, kT, c.opts(1e-12));
             return {rel_err(det_gauss(K), detK_axy_closed(a, x, y, 1, kP, kQ, kT)), 1e-8};
         }},
        {"shift-system-r2n1",
         [](Context& c) -> Outcome {
             auto a = c.balanced(8, 1, kT, kP * kQ, 0.68);
             auto x = c.rand_vec(2, 0.45, 0.62);
             auto y = c.rand_vec(2, 0.45, 0.62);
             auto K0 = K_matrix(a, x, y, 1, kP, kQ, kT, c.opts(1e-12));
             double worst = 0.0;
             std::vector<cplx> u = {c.on_circle(0.57)};
             for (int k : {0, 2}) {
                 auto ash = a;
                 ash[static_cast<size_t>(k)] *= kQ;
                 ash[7] /= kQ;
                 auto Ksh = K_matrix(ash, x, y, 1, kP, kQ, kT, c.opts(1e-12));
                 auto MK = mat_mul(M_matrix(a, x, u, 1, k, kP, kQ, kT), K0);
                 double sK = 0.0;
                 for (const auto& row : Ksh)
                     for (cplx e : row) sK = std::max(sK, std::abs(e));
                 for (size_t i = 0; i < Ksh.size(); ++i)
                     for (size_t j = 0; j < Ksh.size(); ++j)
                         worst = std::max(worst, std::abs(Ksh[i][j] - MK[i][j]) / sK);
             }
             return {worst, 1e-7};
         }},
        {"coboundary-n1",
         [](Context& c) -> Outcome {
             auto b = c.balanced(6, 1, kT, kP * kQ, 0.74);
             b[5] /= kP * kQ;
             cplx b5 = b[5];
             std::vector<cplx> head(b.begin(), b.begin() + 2);
             EllipticPairing ep{kP};
             TorusFn w = [&b](const std::vector<cplx>& z) {
                 return phi_weight(z, b, kP, kQ, kT);
             };
             Composition top = {1, 0};
             auto fr = [&](const std::vector<cplx>& z) {
                 return E_eval(head, top, z, kT, ep) * e_pair(b5, z[0], kQ);
             };
             double scale = std::abs(torus_integrate(w, fr, 1, c.opts(1e-12)).value);
             Composition lam = {0, 0};
             auto f = [&](const std::vector<cplx>& z) {
                 return nabla_expansion(b, 2, lam, z, kP, kT) * e_pair(b5, z[0], kQ);
             };
             double res = std::abs(torus_integrate(w, f, 1, c.opts(1e-12)).value) / scale;
             return {res, 1e-8};
         }},
        {"gustafson-nr-n1",
         [](Context& c) -> Outcome {
             std::vector<cplx> a(6);
             cplx prod(1.0);
             for (int i = 0; i < 5; ++i) {
                 a[static_cast<size_t>(i)] = c.on_circle(0.55);
                 prod *= a[static_cast<size_t>(i)];
             }
             a[5] = kQ / prod;
             TorusFn w = [&a](const std::vector<cplx>& z) {
                 return sphi_weight(z, a, kQ, kT);
             };
             auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
             QuadResult r = torus_integrate(w, one, 1, c.opts(1e-12, 1024));
             return {rel_err(r.value, gustafson_nr_closed(a, 1, kQ, kT)), 1e-9};
         }},
        {"gustafson-aw-n1",
         [](Context& c) -> Outcome {
             auto a = c.rand_vec(4, 0.45, 0.6);
             TorusFn w = [&a](const std::vector<cplx>& z) {
                 return sphi_tilde_weight(z, a, kQ, kT);
             };
             auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
             QuadResult r = torus_integrate(w, one, 1, c.opts(1e-13, 1024));
             return {rel_err(r.value, gustafson_aw_closed(a, 1, kQ, kT)), 1e-10};
         }},
        {"schur-transition-det",
         [](Context& c) -> Outcome {
             auto x = c.rand_vec(3, 0.45, 0.62);
             auto C = schur_transition_matrix(x, 2, kT);
             return {rel_err(det_gauss(C), schur_transition_det_closed(x, 2, kT)), 1e-9};
         }},
        {"trig-limit",
         [](Context& c) -> Outcome {
             EllipticPairing tiny{cplx(1e-6, 0.0)};
             TrigPairing tp;
             auto cc = c.rand_vec(2, 0.45, 0.65);
             auto z = c.rand_vec(2, 0.8, 1.1);
             double worst = 0.0;
             IndexedBasisOrder basis(2, 2);
             for (size_t i = 0; i < basis.size(); ++i)
                 worst = std::max(worst, rel_err(E_eval(cc, basis[i], z, kT, tiny),
                                                 E_eval(cc, basis[i], z, kT, tp)));
             return {worst, 1e-4};
         }},
    };
    return table;
}

const std::vector<std::string> kSuiteIdentities = {
    "theta-gamma-functional", "pairing-symmetry",        "interpolation-kronecker",
    "interpolation-identities", "transition-determinants", "connection-determinants",
    "normalization-constant",
};

const std::vector<std::string> kSuiteTrig = {
    "gustafson-nr-n1", "gustafson-aw-n1", "schur-transition-det", "trig-limit",
};

std::vector<std::string> suite_paper_core() {
    std::vector<std::string> all = kSuiteIdentities;
    for (const char* s : {"selberg-n1", "selberg-n2", "shift-equation-n1", "pairing-det-r2n1",
                          "shift-system-r2n1", "coboundary-n1"})
        all.push_back(s);
    all.insert(all.end(), kSuiteTrig.begin(), kSuiteTrig.end());
    return all;
}

int run_scenarios(const std::vector<std::string>& names, uint64_t seed, int threads,
                  double tol_scale, const std::string& json_path) {
    json report;
    report["schema_version"] = 1;
    report["seed"] = seed;
    report["tol_scale"] = tol_scale;
    report["results"] = json::array();
    bool all_ok = true;
    for (const auto& name : names) {
        auto it = scenario_table().find(name);
        if (it == scenario_table().end()) {
            std::fprintf(stderr, "unknown scenario: %s\n", name.c_str());
            return 2;
        }
        Context ctx;
        ctx.rng.seed(seed ^ std::hash<std::string>{}(name));
        ctx.tol_scale = tol_scale;
        ctx.threads = threads;
        auto t0 = std::chrono::steady_clock::now();
        Outcome out = it->second(ctx);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double tol = out.tolerance * tol_scale;
        bool ok = out.residual < tol;
        all_ok = all_ok && ok;
        std::printf("%-28s %s  residual %.2e  (tol %.0e, %.1fs)\n", name.c_str(),
                    ok ? "PASS" : "FAIL", out.residual, tol, secs);
        std::fflush(stdout);
        report["results"].push_back({{"name", name},
                                     {"passed", ok},
                                     {"residual", out.residual},
                                     {"tolerance", tol},
                                     {"seconds", secs}});
    }
    report["all_passed"] = all_ok;
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) {
            std::fprintf(stderr, "cannot write report: %s\n", json_path.c_str());
            return 2;
        }
        f << report.dump(2) << "\n";
    }
    return all_ok ? 0 : 1;
}

std::vector<std::string> parse_config(const std::string& path, uint64_t& seed,
                                      double& tol_scale) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config file not readable: " + path);
    json cfg = json::parse(f); // throws with line/column diagnostics
    if (!cfg.is_object()) throw std::runtime_error("config root must be an object");
    if (cfg.contains("seed")) {
        if (!cfg["seed"].is_number_unsigned()) throw std::runtime_error("field 'seed' must be a nonnegative integer");
        seed = cfg["seed"].get<uint64_t>();
    }
    if (cfg.contains("tol_scale")) {
        if (!cfg["tol_scale"].is_number()) throw std::runtime_error("field 'tol_scale' must be a number");
        tol_scale = cfg["tol_scale"].get<double>();
    }
    std::vector<std::string> names;
    if (!cfg.contains("scenarios")) throw std::runtime_error("missing field 'scenarios'");
    if (!cfg["scenarios"].is_array()) throw std::runtime_error("field 'scenarios' must be an array");
    for (const auto& s : cfg["scenarios"]) {
        if (s.is_string()) {
            names.push_back(s.get<std::string>());
        } else if (s.is_object() && s.contains("name") && s["name"].is_string()) {
            names.push_back(s["name"].get<std::string>());
        } else {
            throw std::runtime_error("each scenario must be a name or an object with 'name'");
        }
    }
    return names;
}

cplx parse_cplx(const std::string& re, const std::string& im) {
    return cplx(std::stod(re), std::stod(im));
}

int do_eval(const std::vector<std::string>& args) {
    try {
        if (args.empty()) throw std::runtime_error("eval: missing function name");
        const std::string& fn = args[0];
        cplx v;
        if (fn == "theta" && args.size() == 4) {
            v = theta(parse_cplx(args[1], args[2]), cplx(std::stod(args[3]), 0.0));
        } else if (fn == "gamma" && args.size() == 5) {
            v = ell_gamma(parse_cplx(args[1], args[2]), cplx(std::stod(args[3]), 0.0),
                          cplx(std::stod(args[4]), 0.0));
        } else if (fn == "epair" && args.size() == 6) {
            v = e_pair(parse_cplx(args[1], args[2]), parse_cplx(args[3], args[4]),
                       cplx(std::stod(args[5]), 0.0));
        } else if (fn == "crn" && args.size() == 6) {
            v = c_rn_closed(std::stoi(args[1]), std::stoi(args[2]),
                            cplx(std::stod(args[3]), 0.0), cplx(std::stod(args[4]), 0.0),
                            cplx(std::stod(args[5]), 0.0));
        } else {
            throw std::runtime_error(
                "eval: expected one of\n"
                "  theta u_re u_im p\n"
                "  gamma u_re u_im p q\n"
                "  epair u_re u_im v_re v_im p\n"
                "  crn r n p q t");
        }
        std::printf("%.17g %+.17gi\n", v.real(), v.imag());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"determinant identities for BC-type hypergeometric pairings"};
    app.require_subcommand(1);
    app.fallthrough();
    uint64_t seed = 20240817;
    int threads = 1;
    double tol_scale = 1.0;
    std::string json_path;
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--threads", threads, "quadrature worker threads");
    app.add_option("--tol-scale", tol_scale, "multiply all tolerances");
    app.add_option("--json", json_path, "write the JSON report here");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run scenarios from a JSON config");
    run->add_option("config", config_path, "config file")->required();

    std::string suite_name;
    auto* suite = app.add_subcommand("suite", "run a built-in suite");
    suite->add_option("name", suite_name, "paper-core | identities | trig")->required();

    std::vector<std::string> eval_args;
    auto* ev = app.add_subcommand("eval", "evaluate a scalar function");
    ev->add_option("args", eval_args, "function and arguments");
    ev->allow_extras();

    CLI11_PARSE(app, argc, argv);

    if (ev->parsed()) return do_eval(eval_args);

    std::vector<std::string> names;
    if (run->parsed()) {
        try {
            names = parse_config(config_path, seed, tol_scale);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
    } else {
        if (suite_name == "paper-core") names = suite_paper_core();
        else if (suite_name == "identities") names = kSuiteIdentities;
        else if (suite_name == "trig") names = kSuiteTrig;
        else {
            std::fprintf(stderr, "unknown suite: %s\n", suite_name.c_str());
            return 2;
        }
    }
    return run_scenarios(names, seed, threads, tol_scale, json_path);
}
