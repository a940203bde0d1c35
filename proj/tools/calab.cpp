#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ca/analysis.hpp"
#include "ca/io.hpp"
#include "ca/mult.hpp"
#include "ca/reduction.hpp"
#include "ca/tiles.hpp"

namespace {

using namespace ca;

constexpr int kOk = 0, kFalse = 1, kUndecided = 2, kInputError = 3;

CellularAutomaton load_rule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open rule file " + path);
    return io::parse_rule_file(in);
}

tiles::TileSet load_tiles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tile file " + path);
    return io::parse_tile_file(in);
}

std::string show_config(const Configuration& x) {
    const Alphabet& a = x.alphabet();
    std::string s = a.format(x.left_period()) + "|" + a.format(x.center()) + "|" +
                    a.format(x.right_period());
    if (x.center_start() != 0) s += " @ " + std::to_string(x.center_start());
    return s;
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::True: return "yes";
        case Verdict::False: return "no";
        default: return "undecided";
    }
}

int run_check(const std::string& rulefile) {
    CellularAutomaton f = load_rule(rulefile);
    DecisionResult inj = is_injective(f);
    DecisionResult sur = is_surjective(f);
    std::cout << "injective: " << verdict_str(inj.verdict) << '\n';
    if (inj.collision) {
        std::cout << "  collision: " << show_config(inj.collision->first) << '\n';
        std::cout << "  collision: " << show_config(inj.collision->second) << '\n';
    }
    std::cout << "surjective: " << verdict_str(sur.verdict) << '\n';
    if (sur.orphan) std::cout << "  orphan: " << f.alphabet().format(*sur.orphan) << '\n';
    std::cout << "reversible: "
              << verdict_str(inj.verdict == Verdict::True && sur.verdict == Verdict::True
                                 ? Verdict::True
                             : inj.verdict == Verdict::Undecided ||
                                     sur.verdict == Verdict::Undecided
                                 ? Verdict::Undecided
                                 : Verdict::False)
              << '\n';
    if (inj.verdict == Verdict::Undecided || sur.verdict == Verdict::Undecided)
        return kUndecided;
    if (inj.verdict == Verdict::False || sur.verdict == Verdict::False) return kFalse;
    return kOk;
}

std::string rat(const mpq_class& v) {
    return v.get_str() + " (" + std::to_string(v.get_d()) + ")";
}

int run_lyap(const std::string& rulefile, const std::string& config_spec, int n,
             const std::string& direction, const std::string& mode, const std::string& method,
             int p, int q) {
    int rc = kOk;
    if (mode == "avg") {
        if (p <= 0 || q <= 0) throw Error("--avg needs -p and -q");
        std::cout << "n,avg,avg_over_n\n";
        for (int i = 1; i <= n; ++i) {
            if (method == "closed") {
                mult::AvgBreakdown b = mult::avg_exponent_closed(p, q, i);
                std::cout << i << ',' << b.I.get_str() << ',' << b.normalized.get_d() << '\n';
            } else if (method == "brute") {
                try {
                    mult::AvgBreakdown b = mult::partition_sizes_bruteforce(p, q, i);
                    std::cout << i << ',' << b.I.get_str() << ',' << b.normalized.get_d() << '\n';
                } catch (const CapExceeded&) {
                    std::cout << i << ",undecided,undecided\n";
                    rc = kUndecided;
                }
            } else if (method == "sample") {
                std::mt19937_64 rng(1000003ull * p + 1009ull * q + i);
                const int samples = 2000;
                double sum = 0;
                std::vector<Symbol> w(i + 1);
                for (int s = 0; s < samples; ++s) {
                    for (auto& d : w) d = (Symbol)(rng() % (p * q));
                    sum += mult::lambda_minus_word(p, q, i, w);
                }
                double avg = sum / samples;
                std::cout << i << ',' << avg << ',' << avg / i << '\n';
            } else {
                throw Error("unknown method \"" + method + "\"");
            }
        }
        return rc;
    }
    CellularAutomaton f = load_rule(rulefile);
    std::cout << "n,lambda,lambda_over_n\n";
    for (int i = 1; i <= n; ++i) {
        ExponentReport r = mode == "max"
                               ? max_lambda_finite(f, i, direction)
                               : lambda_finite(f, io::parse_config_spec(f.alphabet(), config_spec),
                                               i, direction);
        if (r.undecided) {
            std::cout << i << ",undecided,undecided\n";
            rc = kUndecided;
        } else {
            std::cout << i << ',' << r.lambda << ',' << (double)r.lambda / i << '\n';
        }
    }
    return rc;
}

int run_mult(const std::string& action, int p, int q, int n, int k, int t,
             const std::string& out_path, const std::string& method) {
    if (action == "gen") {
        CellularAutomaton f = mult::make_mult_ca(p, q);  // q holds the base here
        std::string text = io::serialize(f);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw Error("cannot write " + out_path);
            out << text;
        }
        return kOk;
    }
    if (action == "lemmas") {
        mult::DigitLemmaReport r = mult::check_digit_lemmas(p, q, k, t);
        std::cout << r.summary() << '\n';
        return r.counterexamples == 0 && r.odometer_ok ? kOk : kFalse;
    }
    if (action == "witness") {
        mult::WitnessReport r = mult::witness_pair(p, q, n);
        std::cout << "x: " << show_config(r.x) << '\n';
        std::cout << "y: " << show_config(r.y) << '\n';
        std::cout << "differ only at origin: " << (r.differ_only_at_origin ? "yes" : "no")
                  << '\n';
        std::cout << "diverges at steps 0.." << n << ": "
                  << (r.diverges_every_step ? "yes" : "no") << '\n';
        return r.differ_only_at_origin && r.diverges_every_step ? kOk : kFalse;
    }
    if (action == "avg") {
        mult::AvgBreakdown b = method == "brute" ? mult::partition_sizes_bruteforce(p, q, n)
                                                 : mult::avg_exponent_closed(p, q, n);
        std::cout << "p,q,n," << p << ',' << q << ',' << n << '\n';
        for (int i = 0; i < (int)b.P.size(); ++i)
            std::cout << "P[" << i << "]," << b.P[i].get_str() << '\n';
        for (int i = 0; i < (int)b.d.size(); ++i)
            std::cout << "d[" << i << "]," << b.d[i].get_str() << '\n';
        std::cout << "kappa," << b.kappa << '\n';
        std::cout << "avg," << rat(b.I) << '\n';
        std::cout << "avg_over_n," << rat(b.normalized) << '\n';
        std::cout << "log_base " << p * q << "(" << p << ")," << b.log_base_p << '\n';
        return kOk;
    }
    throw Error("unknown mult action \"" + action + "\"");
}

int run_tiles(const std::string& action, const std::string& tilefile) {
    tiles::TileSet ts = load_tiles(tilefile);
    if (action == "check") {
        tiles::DeterminismFlags fl = tiles::check_determinism(ts);
        std::cout << "ne-deterministic: " << (fl.ne ? "yes" : "no") << '\n';
        if (fl.ne_violation)
            std::cout << "  violation: " << fl.ne_violation->first << " vs "
                      << fl.ne_violation->second << '\n';
        std::cout << "sw-deterministic: " << (fl.sw ? "yes" : "no") << '\n';
        if (fl.sw_violation)
            std::cout << "  violation: " << fl.sw_violation->first << " vs "
                      << fl.sw_violation->second << '\n';
        std::cout << "two-way-deterministic: " << (fl.two_way ? "yes" : "no") << '\n';
        return fl.two_way ? kOk : kFalse;
    }
    if (action == "complete") {
        std::cout << io::serialize(tiles::complete(ts));
        return kOk;
    }
    if (action == "toca") {
        std::cout << io::serialize(tiles::ca_from_tileset(ts));
        return kOk;
    }
    throw Error("unknown tiles action \"" + action + "\"");
}

std::vector<bool> parse_b_spec(const Alphabet& a, const std::string& spec) {
    std::vector<bool> B(a.size(), false);
    if (spec.empty() || spec == "none") return B;
    if (spec == "all") {
        B.assign(a.size(), true);
        return B;
    }
    std::istringstream in(spec);
    std::string name;
    while (std::getline(in, name, ',')) B[a.index(name)] = true;
    return B;
}

int run_reduce(const std::string& action, const std::string& rulefile, const std::string& b_spec,
               const std::string& target, int n, const std::string& out_path) {
    CellularAutomaton G = load_rule(rulefile);
    std::vector<bool> B = parse_b_spec(G.alphabet(), b_spec);
    reduction::ReductionBundle bundle =
        target == "fullshift" ? reduction::build_fullshift_F(G, B)
                              : reduction::build_sofic_F(G, B);
    if (action == "build") {
        std::cout << "target," << bundle.target << '\n';
        std::cout << "alphabet_size," << bundle.alpha.size() << '\n';
        for (const auto& c : bundle.checks)
            std::cout << "check," << c.name << ',' << (c.ok ? "pass" : "fail") << ',' << c.detail
                      << '\n';
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) throw Error("cannot write " + out_path);
            out << io::serialize(bundle.particle);
        }
        return bundle.all_checks_pass() ? kOk : kFalse;
    }
    if (action == "speed") {
        reduction::SpeedReport r = reduction::speed_dichotomy_experiment(bundle, n);
        std::cout << "step,front\n";
        for (std::size_t i = 0; i < r.trace.positions.size(); ++i)
            std::cout << i + 1 << ',' << r.trace.positions[i] << '\n';
        std::cout << "slope," << r.slope << '\n';
        std::cout << "classification," << r.classification << '\n';
        std::cout << "witness_found," << (r.witness_found ? "yes" : "no") << '\n';
        if (r.empty_c_level) std::cout << "empty_c_level," << *r.empty_c_level << '\n';
        return r.classification == "inconclusive" ? kUndecided : kOk;
    }
    throw Error("unknown reduce action \"" + action + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laboratory for one-dimensional reversible cellular automata"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker shards (output independent of the value)");

    // check
    std::string rulefile;
    auto* check = app.add_subcommand("check", "decide injectivity/surjectivity of a rule file");
    check->add_option("rulefile", rulefile)->required();

    // lyap
    std::string ly_rule, ly_config = "0|0|0", ly_dir = "left", ly_method = "brute";
    int ly_n = 5, ly_p = 0, ly_q = 0;
    bool ly_max = false, ly_point = false, ly_avg = false;
    auto* lyap = app.add_subcommand("lyap", "finite-horizon Lyapunov exponent tables (CSV)");
    lyap->add_option("rulefile", ly_rule);
    lyap->add_option("--config", ly_config, "configuration spec LEFT|CENTER|RIGHT");
    lyap->add_option("-n", ly_n, "largest horizon")->required();
    lyap->add_option("--direction", ly_dir)->check(CLI::IsMember({"left", "right"}));
    lyap->add_flag("--max", ly_max, "maximum over all configurations");
    lyap->add_flag("--point", ly_point, "at the configuration from --config");
    lyap->add_flag("--avg", ly_avg, "average exponent of a multiplication rule");
    lyap->add_option("--method", ly_method)->check(CLI::IsMember({"brute", "closed", "sample"}));
    lyap->add_option("-p", ly_p, "multiplier (with --avg)");
    lyap->add_option("-q", ly_q, "cofactor (with --avg)");

    // mult
    std::string mu_action, mu_out;
    int mu_p = 0, mu_qn = 0, mu_n = 0, mu_k = 3, mu_t = 1;
    std::string mu_method = "closed";
    auto* mult_cmd = app.add_subcommand("mult", "multiplication automata toolbox");
    mult_cmd->add_option("action", mu_action)
        ->required()
        ->check(CLI::IsMember({"gen", "lemmas", "witness", "avg"}));
    mult_cmd->add_option("p", mu_p)->required();
    mult_cmd->add_option("qn", mu_qn, "base (gen) or cofactor q (others)")->required();
    mult_cmd->add_option("n", mu_n, "horizon (witness, avg)");
    mult_cmd->add_option("--k", mu_k, "word length for lemma checks");
    mult_cmd->add_option("--t", mu_t, "step count for lemma checks");
    mult_cmd->add_option("-o", mu_out, "output file (gen)");
    mult_cmd->add_option("--method", mu_method)->check(CLI::IsMember({"brute", "closed"}));

    // tiles
    std::string ti_action, ti_file;
    auto* tiles_cmd = app.add_subcommand("tiles", "Wang tile set toolbox");
    tiles_cmd->add_option("action", ti_action)
        ->required()
        ->check(CLI::IsMember({"check", "complete", "toca"}));
    tiles_cmd->add_option("tilefile", ti_file)->required();

    // reduce
    std::string re_action, re_rule, re_b, re_target = "sofic", re_out;
    int re_n = 60;
    auto* reduce_cmd = app.add_subcommand("reduce", "defect-speed reduction constructions");
    reduce_cmd->add_option("action", re_action)
        ->required()
        ->check(CLI::IsMember({"build", "speed"}));
    reduce_cmd->add_option("rulefile", re_rule)->required();
    reduce_cmd->add_option("--B", re_b, "marked inner symbols: all, none, or name,name,...");
    reduce_cmd->add_option("--target", re_target)->check(CLI::IsMember({"sofic", "fullshift"}));
    reduce_cmd->add_option("-n", re_n, "steps for the speed experiment");
    reduce_cmd->add_option("-o", re_out, "write the particle rule file here (build)");

    try {
        app.parse(argc, argv);
        if (check->parsed()) return run_check(rulefile);
        if (lyap->parsed()) {
            int modes = (int)ly_max + (int)ly_point + (int)ly_avg;
            if (modes != 1) throw ca::Error("choose exactly one of --max, --point, --avg");
            std::string mode = ly_max ? "max" : ly_point ? "point" : "avg";
            if (mode != "avg" && ly_rule.empty()) throw ca::Error("rulefile required");
            return run_lyap(ly_rule, ly_config, ly_n, ly_dir, mode, ly_method, ly_p, ly_q);
        }
        if (mult_cmd->parsed())
            return run_mult(mu_action, mu_p, mu_qn, mu_n, mu_k, mu_t, mu_out, mu_method);
        if (tiles_cmd->parsed()) return run_tiles(ti_action, ti_file);
        if (reduce_cmd->parsed())
            return run_reduce(re_action, re_rule, re_b, re_target, re_n, re_out);
        return kInputError;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    } catch (const ca::CapExceeded& e) {
        std::cerr << "undecided: " << e.what() << '\n';
        return kUndecided;
    } catch (const ca::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
