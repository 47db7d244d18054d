#include "ssm/diophantine.hpp"
#include "ssm/error.hpp"
#include "ssm/fourier.hpp"
#include "ssm/io.hpp"
#include "ssm/renewal.hpp"
#include "ssm/uniqueness.hpp"

#include <CLI11.hpp>

#ifdef SSM_HAVE_OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ssm;

struct RunConfig {
    std::string input;
    long precision = 128;
    std::uint64_t seed = 12345;
    long samples = 100000;
    std::string delta = "1/1024";
    double C = 4.0;
    std::string out;
    std::string format = "csv";
    int threads = 0;
};

Json load_input(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) fail("InvalidArgument", "cannot open input: " + arg);
    Json j;
    in >> j;
    return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) fail("InvalidArgument", "cannot open output: " + cfg.out);
    out << text;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_input = true) {
    if (needs_input)
        cmd->add_option("input", cfg.input, "input file path or inline JSON")->required();
    cmd->add_option("--precision", cfg.precision, "working precision in bits (>= 64)")
        ->check(CLI::Range(64L, 65536L));
    cmd->add_option("--seed", cfg.seed, "64-bit RNG seed");
    cmd->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--delta", cfg.delta, "scale-ladder cutoff (rational in (0,1/4])");
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", cfg.threads, "worker threads (default: hardware)");
}

void apply_threads(const RunConfig& cfg) {
#ifdef SSM_HAVE_OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
    (void)cfg;
#endif
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-similar measures: Fourier decay, digit changes, uniqueness"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("SSM_PRECISION_BITS")) cfg.precision = std::atol(env);

    // classify
    auto* classify = app.add_subcommand("classify", "uniqueness/multiplicity verdict");
    add_common(classify, cfg);

    // fourier eval | scan | calibrate
    auto* fourier = app.add_subcommand("fourier", "Fourier transform of the measure");
    fourier->require_subcommand(1);
    std::string omega_str = "1";
    double omega_min = 1.0, omega_max = 10000.0;
    int points = 64;
    std::pair<int, int> pair_idx{1, 2};
    std::string pair_str = "1,2";
    std::string svg_path;
    std::string bound_kind = "both";

    auto* feval = fourier->add_subcommand("eval", "evaluate mu_hat at one omega");
    feval->add_option("--omega", omega_str, "frequency (rational)")->required();
    add_common(feval, cfg);

    auto* fscan = fourier->add_subcommand("scan", "log-spaced sweep with decay bounds");
    fscan->add_option("--omega-min", omega_min);
    fscan->add_option("--omega-max", omega_max);
    fscan->add_option("--points", points)->check(CLI::PositiveNumber);
    fscan->add_option("--pair", pair_str, "equal-exponent pair, e.g. 1,2");
    fscan->add_option("--C", cfg.C, "constant in the decay bounds");
    fscan->add_option("--svg", svg_path, "also write an SVG plot here");
    add_common(fscan, cfg);

    auto* fcal = fourier->add_subcommand("calibrate", "find the smallest admissible C");
    fcal->add_option("--omega-min", omega_min);
    fcal->add_option("--omega-max", omega_max);
    fcal->add_option("--points", points)->check(CLI::PositiveNumber);
    fcal->add_option("--pair", pair_str);
    fcal->add_option("--bound", bound_kind)->check(CLI::IsMember({"exp", "prod", "both"}));
    add_common(fcal, cfg);

    // dc
    auto* dc = app.add_subcommand("dc", "digit-change count along the lambda ladder");
    std::string x_str, eps_str = "1/10";
    dc->add_option("--x", x_str, "x as decimal, p/q, [coords], pi, or root:...")->required();
    dc->add_option("--epsilon", eps_str, "threshold in (0,1/2)")->required();
    add_common(dc, cfg);

    // recover
    auto* recover = app.add_subcommand("recover", "recover a field approximant from a ladder");
    std::string alpha_str;
    int rec_n = 8, rec_K = 3;
    recover->add_option("--alpha", alpha_str)->required();
    recover->add_option("--n", rec_n)->required();
    recover->add_option("--K", rec_K)->required();
    recover->add_option("--epsilon", eps_str)->required();
    add_common(recover, cfg);

    // liouville
    auto* liou = app.add_subcommand("liouville", "search for Liouville witnesses");
    int H = 10, budget = 64;
    liou->add_option("--alpha", alpha_str)->required();
    liou->add_option("--H", H)->required();
    liou->add_option("--budget", budget, "largest ladder scale n attempted");
    add_common(liou, cfg);

    // renewal [sim]
    auto* renewal = app.add_subcommand("renewal", "renewal-walk hitting probabilities");
    int kmax = 30;
    std::string steps_str = "1,2", probs_str = "1/2,1/2";
    renewal->add_option("--kmax", kmax);
    renewal->add_option("--steps", steps_str);
    renewal->add_option("--probs", probs_str);
    auto* rsim = renewal->add_subcommand("sim", "simulate the stopped martingale weight");
    int sim_t = 20;
    long trials = 10000;
    rsim->add_option("--t", sim_t, "stopping depth");
    rsim->add_option("--trials", trials);
    rsim->add_option("--omega", omega_str)->required();
    rsim->add_option("--pair", pair_str);
    add_common(rsim, cfg);

    // gamma
    auto* gamma = app.add_subcommand("gamma", "Minkowski-box witness gamma_R");
    double R = 10.0, C_gamma = 0.0;
    gamma->add_option("--R", R)->required();
    gamma->add_option("--C", C_gamma, "box constant (default: from the covolume)");
    add_common(gamma, cfg);

    // rewrite
    auto* rewrite = app.add_subcommand("rewrite", "equal-exponent rewriting of the system");
    int rw_j = 2;
    rewrite->add_option("--j", rw_j, "index with a_j != a_1 (1-based)")->required();
    add_common(rewrite, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        apply_threads(cfg);
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(cfg.precision);
        Rat delta = parse_rational(cfg.delta);
        auto parse_pair = [&]() {
            auto comma = pair_str.find(',');
            if (comma == std::string::npos)
                fail("InvalidArgument", "--pair needs two comma-separated indices");
            pair_idx.first = std::stoi(pair_str.substr(0, comma));
            pair_idx.second = std::stoi(pair_str.substr(comma + 1));
        };

        if (*classify) {
            auto built = ifs_from_json(load_input(cfg.input), prec);
            Verdict v = classify_uniqueness(built);
            emit(cfg, verdict_to_json(v).dump(2));
        } else if (*feval) {
            Ifs ifs = ifs_from_json_checked(load_input(cfg.input), prec);
            Rat w = parse_rational(omega_str);
            ComplexBall mu = mu_hat(ifs, w, delta, prec);
            if (cfg.format == "json") {
                Json j;
                j["omega"] = rational_to_string(w);
                j["re"] = ball_to_decimal(mu.re());
                j["im"] = ball_to_decimal(mu.im());
                j["abs"] = ball_to_decimal(mu.abs());
                j["radius"] = ball_to_decimal(mu.abs().rad_ball(), 6);
                emit(cfg, j.dump(2));
            } else {
                std::ostringstream os;
                os << "omega,re,im,abs,radius\n";
                os << rational_to_string(w) << ',' << ball_to_decimal(mu.re()) << ','
                   << ball_to_decimal(mu.im()) << ',' << ball_to_decimal(mu.abs()) << ','
                   << ball_to_decimal(mu.abs().rad_ball(), 6) << '\n';
                emit(cfg, os.str());
            }
        } else if (*fscan) {
            Ifs ifs = ifs_from_json_checked(load_input(cfg.input), prec);
            parse_pair();
            auto grid = log_grid(omega_min, omega_max, points);
            auto rows = fourier_scan(ifs, pair_idx.first, pair_idx.second, grid, cfg.C, delta,
                                     prec);
            if (!svg_path.empty()) {
                std::ofstream svg(svg_path);
                if (!svg) fail("InvalidArgument", "cannot open svg output: " + svg_path);
                svg << decay_svg(rows);
            }
            emit(cfg, decay_csv(rows));
        } else if (*fcal) {
            Ifs ifs = ifs_from_json_checked(load_input(cfg.input), prec);
            parse_pair();
            auto grid = log_grid(omega_min, omega_max, points);
            Json j;
            if (bound_kind == "exp" || bound_kind == "both") {
                auto cal = calibrate(ifs, pair_idx.first, pair_idx.second, grid, BoundKind::Exp,
                                     delta, prec);
                j["C_exp"] = cal.C_hat;
            }
            if (bound_kind == "prod" || bound_kind == "both") {
                auto cal = calibrate(ifs, pair_idx.first, pair_idx.second, grid, BoundKind::Prod,
                                     delta, prec);
                j["C_prod"] = cal.C_hat;
            }
            j["grid_points"] = points;
            j["omega_min"] = omega_min;
            j["omega_max"] = omega_max;
            emit(cfg, j.dump(2));
        } else if (*dc) {
            FieldPtr field = field_from_json(load_input(cfg.input), prec);
            RealExpr x = real_expr_from_string(x_str, field);
            DCQuery q{std::move(x), field, parse_rational(eps_str)};
            auto rows = dc_rows(q);
            if (cfg.format == "json") {
                long count = 0;
                for (const auto& r : rows)
                    if (r.counted) ++count;
                Json j;
                j["count"] = count;
                j["ladder_length"] = rows.size();
                emit(cfg, j.dump(2));
            } else {
                emit(cfg, dc_csv(rows));
            }
        } else if (*recover) {
            FieldPtr field = field_from_json(load_input(cfg.input), prec);
            RealExpr alpha = real_expr_from_string(alpha_str, field);
            auto res = recover_beta(alpha, field, rec_n, rec_K, parse_rational(eps_str));
            emit(cfg, recovery_to_json(res).dump(2));
        } else if (*liou) {
            FieldPtr field = field_from_json(load_input(cfg.input), prec);
            RealExpr alpha = real_expr_from_string(alpha_str, field);
            auto ws = liouville_search(alpha, field, H, budget);
            emit(cfg, liouville_to_json(ws, true).dump(2));
        } else if (*rsim) {
            Ifs ifs = ifs_from_json_checked(load_input(cfg.input), prec);
            parse_pair();
            double w = parse_rational(omega_str).get_d();
            auto est = simulate_stopped(ifs, pair_idx.first, pair_idx.second, w, sim_t, trials,
                                        cfg.seed);
            std::cerr << "seed: " << est.seed << "\n";
            Json j;
            j["mean"] = est.mean;
            j["stderr"] = est.stderr_mean;
            j["trials"] = est.n_trials;
            j["seed"] = est.seed;
            j["t"] = sim_t;
            j["max_overshoot"] = est.max_overshoot;
            emit(cfg, j.dump(2));
        } else if (*renewal) {
            auto steps_q = parse_rational_list(steps_str);
            std::vector<int> steps;
            for (const Rat& s : steps_q) {
                if (s.get_den() != 1) fail("InvalidArgument", "steps must be integers");
                steps.push_back(static_cast<int>(s.get_num().get_si()));
            }
            WalkSpec spec = WalkSpec::make(std::move(steps), parse_rational_list(probs_str));
            auto probs = hitting_probs(spec, kmax);
            emit(cfg, renewal_csv(probs));
        } else if (*gamma) {
            FieldPtr field = field_from_json(load_input(cfg.input), prec);
            auto w = gamma_search(field, R, C_gamma);
            emit(cfg, gamma_to_json(w).dump(2));
        } else if (*rewrite) {
            Ifs ifs = ifs_from_json_checked(load_input(cfg.input), prec);
            Ifs norm = normalize(ifs);
            auto res = equal_ratio_rewrite(norm, rw_j);
            Json j = ifs_to_json(res.ifs);
            j["b"] = Json::array();
            for (const Rat& c : res.b.coords()) j["b"].push_back(rational_to_string(c));
            if (res.prime) j["prime"] = res.prime;
            emit(cfg, j.dump(2));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
