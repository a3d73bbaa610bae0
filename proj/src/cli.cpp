#include "dlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlab/bounds.hpp"
#include "dlab/errors.hpp"
#include "dlab/moments.hpp"
#include "dlab/montecarlo.hpp"
#include "dlab/parallel.hpp"
#include "dlab/polyio.hpp"

namespace dlab::cli {

namespace {

using Value = std::variant<std::int64_t, double, std::string, bool>;
using Record = std::vector<std::pair<std::string, Value>>;

// Bad input that is not a flag-grammar error (e.g. a malformed polynomial file).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string subcommand;
    std::optional<std::int64_t> B, N;
    std::optional<double> T, alpha, r;
    std::int64_t samples = 100'000;
    std::int64_t seed = 0;
    std::string threads = "auto";
    std::string poly = "ones";
    std::optional<std::string> format;
    std::optional<std::string> out_path;
    bool deterministic = false;
    std::optional<std::string> emit_poly;
    std::optional<std::int64_t> panels;
    std::int64_t base = 2;
    bool bruteforce = false, tally = false;
    bool helson = false, interpolation = false, lcm_sum = false, moment_shape = false;
};

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json to_json(const Value& v) {
    return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

std::string to_csv_cell(const Value& v) {
    struct {
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const { return fmt17(x); }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
            return q + "\"";
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    } visitor;
    return std::visit(visitor, v);
}

class Writer {
public:
    Writer(std::ostream& os, bool csv) : os_(os), csv_(csv) {}

    void header(const nlohmann::ordered_json& config) {
        if (csv_)
            os_ << "# " << config.dump() << "\n";
        else
            os_ << config.dump() << "\n";
    }

    void note(const nlohmann::ordered_json& j) {
        if (csv_)
            os_ << "# " << j.dump() << "\n";
        else
            os_ << j.dump() << "\n";
    }

    // Records of one kind share a CSV header; JSON emits one object per line.
    void record(const std::string& kind, const Record& rec) {
        if (!csv_) {
            nlohmann::ordered_json j;
            j["record"] = kind;
            for (const auto& [k, v] : rec) j[k] = to_json(v);
            os_ << j.dump() << "\n";
            return;
        }
        std::string head;
        for (const auto& [k, v] : rec) head += (head.empty() ? "" : ",") + k;
        if (head != last_head_) {
            os_ << head << "\n";
            last_head_ = head;
        }
        std::string row;
        for (std::size_t i = 0; i < rec.size(); ++i) row += (i ? "," : "") + to_csv_cell(rec[i].second);
        os_ << row << "\n";
    }

private:
    std::ostream& os_;
    bool csv_;
    std::string last_head_;
};

unsigned parse_threads(const std::string& s) {
    if (s == "auto") return 0;
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos == s.size() && v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("--threads", "expected a positive integer or \"auto\", got \"" + s + "\"");
}

u64 require_N(const Options& o, const char* what) {
    if (!o.N) throw UsageError(std::string(what) + " requires --N");
    if (*o.N < 1) throw UsageError("--N must be >= 1");
    return static_cast<u64>(*o.N);
}

// Coefficient exponent of a "coeff:j^-a" family name.
std::optional<double> coefficient_exponent(const std::string& name) {
    const std::string prefix = "coeff:j^-";
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    try {
        std::size_t pos = 0;
        const double a = std::stod(name.substr(prefix.size()), &pos);
        if (pos + prefix.size() == name.size()) return a;
    } catch (const std::exception&) {
    }
    throw UsageError("--poly: malformed coefficient family \"" + name + "\"");
}

bool is_family_name(const std::string& name) {
    return name == "ones" || name == "coprime-primes" || name == "prime-powers" || name.rfind("coeff:", 0) == 0;
}

CoprimeSystem resolve_system(const std::string& name, u64 n) {
    if (n < 2) throw UsageError("--N must be >= 2 for coprime families");
    if (name == "coprime-primes") return coprime_set(CoprimeStrategy::primes, n);
    if (name == "prime-powers") return coprime_set(CoprimeStrategy::prime_powers, n);
    if (const auto a = coefficient_exponent(name)) {
        const double e = *a;
        return coprime_set(CoprimeStrategy::primes, n).reweighted([e](u64 j) { return std::pow(double(j), -e); });
    }
    throw UsageError("--poly: \"" + name + "\" is not a coprime family (coprime-primes, prime-powers, coeff:j^-a)");
}

DirichletPolynomial resolve_poly(const Options& o) {
    if (o.poly == "ones") return DirichletPolynomial::ones(require_N(o, "--poly ones"));
    if (is_family_name(o.poly)) return DirichletPolynomial::from_system(resolve_system(o.poly, require_N(o, "--poly")));
    try {
        return read_polynomial(o.poly);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

void maybe_emit(const Options& o, const DirichletPolynomial& D) {
    if (o.emit_poly) write_polynomial(D, *o.emit_poly);
}

void cmd_moments(const Options& o, Writer& w) {
    const auto D = resolve_poly(o);
    maybe_emit(o, D);
    const auto method = o.bruteforce ? MomentMethod::brute_force : MomentMethod::parseval_convolution;
    const auto rep = moment_report(D, method);
    w.record("moments", {{"term_count", std::int64_t(rep.term_count)},
                         {"max_frequency", std::int64_t(D.max_frequency())},
                         {"m2", rep.m2},
                         {"m4", rep.m4},
                         {"method", std::string(o.bruteforce ? "brute_force" : "parseval_convolution")}});
}

const char* method_name(EnergyMethod m) {
    switch (m) {
        case EnergyMethod::totient_grouping: return "totient_grouping";
        case EnergyMethod::representation_function: return "representation_function";
        case EnergyMethod::quadruple_bruteforce: return "quadruple_bruteforce";
    }
    return "unknown";
}

void cmd_energy(const Options& o, Writer& w, unsigned threads) {
    if (!o.B || *o.B < 1) throw UsageError("energy requires --B >= 1");
    const u64 B = static_cast<u64>(*o.B);
    const EnergyCount c = o.bruteforce ? multiplicative_energy_bruteforce(B)
                          : o.tally    ? multiplicative_energy_tally(B, threads)
                                       : multiplicative_energy(B);
    w.record("energy", {{"B", std::int64_t(c.B)}, {"count", std::int64_t(c.count)}, {"method", std::string(method_name(c.method))}});
}

void cmd_acz_scan(const Options& o, Writer& w) {
    const u64 top = o.B ? static_cast<u64>(*o.B) : 100'000;
    if (top < 10) throw UsageError("acz-scan requires --B >= 10");
    std::vector<u64> grid;
    for (u64 b = 10; b <= top; b *= 10) {
        grid.push_back(b);
        if (3 * b <= top) grid.push_back(3 * b);
    }
    if (grid.back() != top) grid.push_back(top);
    double last_residual = 0.0;
    for (u64 b : grid) {
        const auto c = multiplicative_energy(b);
        const auto pred = acz_prediction(b, ZetaConvention::analytic_derivative);
        const double bb = static_cast<double>(b) * static_cast<double>(b);
        last_residual = (static_cast<double>(c.count) - pred.main) / bb;
        w.record("acz", {{"B", std::int64_t(b)}, {"count", std::int64_t(c.count)}, {"main_term", pred.main},
                         {"residual_over_B2", last_residual}});
    }
    const double c_positive = acz_constant(ZetaConvention::positive_sum);
    const double c_analytic = acz_constant(ZetaConvention::analytic_derivative);
    const bool positive_ok = std::abs(last_residual - c_positive) <= 0.05;
    const bool analytic_ok = std::abs(last_residual - c_analytic) <= 0.05;
    nlohmann::ordered_json s;
    s["record"] = "summary";
    s["B"] = top;
    s["residual_over_B2"] = last_residual;
    s["C_positive_sum_convention"] = c_positive;
    s["C_analytic_convention"] = c_analytic;
    s["matches"] = positive_ok == analytic_ok ? (positive_ok ? "both" : "neither")
                                           : (positive_ok ? "positive_sum" : "analytic_derivative");
    s["note"] = "zeta'(2) := +sum ln n/n^2 (positive sum) vs the analytic derivative -sum ln n/n^2";
    w.note(s);
}

void cmd_bounds(const Options& o, Writer& w, unsigned threads) {
    const double r = o.r.value_or(1.0);
    const bool all = !(o.helson || o.interpolation || o.lcm_sum || o.moment_shape);
    const u64 N = require_N(o, "bounds");
    auto emit = [&](const char* name, double value, std::string details) {
        w.record("bound", {{"name", std::string(name)}, {"value", value}, {"N", std::int64_t(N)}, {"r", r},
                           {"details", std::move(details)}});
    };
    if (all || o.helson) {
        if (o.poly != "ones") throw UsageError("--helson applies to --poly ones only");
        emit("helson", helson_bound(N), "sum_inv_d=" + fmt17(helson_sum(N)));
    }
    if (all || o.interpolation || o.lcm_sum) {
        const auto D = resolve_poly(o);
        maybe_emit(o, D);
        if (all || o.interpolation) {
            const double m2 = second_moment(D), m4 = fourth_moment(D);
            emit("interpolation", interpolation_lower_bound(m2, m4, r), "m2=" + fmt17(m2) + ";m4=" + fmt17(m4));
        }
        if (all || o.lcm_sum) emit("lcm_sum", lcm_sum_bound(D, threads), "max_frequency=" + std::to_string(D.max_frequency()));
    }
    if ((all || o.moment_shape) && o.poly == "ones" && N >= 2) {
        const auto rep = moment_bound_report(N, r);
        emit("moment_shape", rep.value,
             "m4=" + fmt17(rep.parameters.at("m4")) + ";shape=" + fmt17(rep.parameters.at("shape")));
    }
}

void cmd_mc_norm(const Options& o, Writer& w, unsigned threads) {
    const auto D = resolve_poly(o);
    maybe_emit(o, D);
    const auto L = bohr_lift(D);
    const auto est = estimate_torus_norm(L, o.alpha.value_or(1.0), static_cast<u64>(o.samples),
                                         static_cast<u64>(o.seed), threads);
    w.record("mc_norm", {{"mean", est.mean}, {"stderr", est.std_error}, {"n_samples", std::int64_t(est.n_samples)},
                         {"seed", std::int64_t(est.master_seed)}, {"alpha", est.alpha},
                         {"terms", std::int64_t(D.size())}, {"dimension", std::int64_t(L.dimension())}});
}

void cmd_clt_verify(const Options& o, Writer& w, unsigned threads) {
    const std::string name = o.poly == "ones" ? "coprime-primes" : o.poly;
    const u64 top = o.N ? static_cast<u64>(*o.N) : 8192;
    std::vector<u64> grid;
    for (u64 n = top; n >= 4; n /= 4) grid.insert(grid.begin(), n);
    if (grid.empty()) throw UsageError("clt-verify requires --N >= 4");
    std::vector<CoprimeSystem> family;
    for (u64 n : grid) family.push_back(resolve_system(name, n));
    const auto conds = check_conditions(family);
    const auto curve = clt_ratio_curve(family, static_cast<u64>(o.samples), static_cast<u64>(o.seed), threads);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& p = curve[i];
        w.record("clt", {{"n", std::int64_t(p.index_n)}, {"k", std::int64_t(p.k)}, {"B_n", p.energy_B},
                         {"ratio", p.ratio}, {"stderr", p.std_error}, {"limit_constant", p.limit_constant},
                         {"cond2_ratio", conds[i].cond2_ratio}});
    }
    nlohmann::ordered_json s;
    s["record"] = "note";
    s["limit_constant"] = steinhaus_limit().modulus_mean;
    s["unit_covariance_constant"] = unit_covariance_limit();
    s["covariance"] = {0.5, 0.0, 0.0, 0.5};
    s["note"] = "ratio targets E|N(0, I/2)| = sqrt(pi)/2; the alternative (pi/2)^(1/2) exceeds the L2 ceiling of 1, "
                "and the off-diagonal covariance [[0,1/2],[1/2,0]] is read as diag(1/2,1/2)";
    w.note(s);
}

void cmd_lacunary(const Options& o, Writer& w, unsigned threads) {
    const u64 n = o.N ? static_cast<u64>(*o.N) : 4096;
    if (n < 1) throw UsageError("lacunary requires --N >= 1");
    if (o.base < 2) throw UsageError("--a must be >= 2");
    std::vector<u64> exps(n);
    for (u64 k = 0; k < n; ++k) exps[k] = k + 1;
    const auto res = lacunary_l1_ratio(static_cast<u64>(o.base), exps, static_cast<std::size_t>(o.panels.value_or(64)),
                                       LacunaryMethod::automatic, static_cast<u64>(o.samples), static_cast<u64>(o.seed),
                                       threads);
    w.record("lacunary", {{"a", o.base}, {"n", std::int64_t(n)}, {"ratio", res.ratio}, {"stderr", res.std_error},
                          {"method", std::string(res.method == LacunaryMethod::quadrature ? "quadrature" : "digit_sampling")},
                          {"limit", lacunary_limit()}, {"flagged_claim", std::sqrt(std::numbers::pi / 2.0)}});
    nlohmann::ordered_json s;
    s["record"] = "note";
    s["note"] = "limit is E|N(0,1/2)| = 1/sqrt(pi); the claim E|g| = (pi/2)^(1/2) for standard normal g "
                "is flagged (classical value sqrt(2/pi))";
    w.note(s);
}

void cmd_montgomery(const Options& o, Writer& w, unsigned threads) {
    const u64 N = require_N(o, "montgomery");
    const double T = o.T.value_or(1e4);
    if (!(T > 0.0)) throw UsageError("--T must be positive");
    const auto panels = static_cast<std::size_t>(o.panels.value_or(static_cast<std::int64_t>(std::ceil(T / 2.0))));
    const double theta = montgomery_theta(N, T, panels, threads);
    w.record("montgomery", {{"N", std::int64_t(N)}, {"T", T}, {"panels", std::int64_t(panels)}, {"theta", theta},
                            {"within_bound", std::abs(theta) <= 1.0 + 1e-6}});
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json config_record(const Options& o, const std::string& format, unsigned threads) {
    nlohmann::ordered_json c;
    c["record"] = "config";
    c["subcommand"] = o.subcommand;
    c["seed"] = o.seed;
    c["threads"] = o.threads;
    c["resolved_threads"] = resolve_threads(threads);
    c["format"] = format;
    c["out"] = o.out_path ? nlohmann::ordered_json(*o.out_path) : nlohmann::ordered_json(nullptr);
    c["poly"] = o.poly;
    auto opt = [&](const char* k, const auto& v) {
        if (v) c[k] = *v;
        else c[k] = nullptr;
    };
    opt("B", o.B);
    opt("N", o.N);
    opt("T", o.T);
    opt("alpha", o.alpha);
    opt("r", o.r);
    opt("panels", o.panels);
    c["samples"] = o.samples;
    c["a"] = o.base;
    c["deterministic"] = o.deterministic;
    if (!o.deterministic) c["timestamp"] = timestamp();
    return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Dirichlet polynomial norm laboratory", "dlab"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--B", o.B, "Box size for multiplicative energy");
    app.add_option("--N", o.N, "Polynomial length / family index");
    app.add_option("--T", o.T, "Integration horizon");
    app.add_option("--alpha", o.alpha, "Norm exponent (> 0)");
    app.add_option("--r", o.r, "Bound exponent in (0, 2)");
    app.add_option("--samples", o.samples, "Monte Carlo sample count");
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--threads", o.threads, "Worker threads or \"auto\"");
    app.add_option("--poly", o.poly, "ones | coprime-primes | prime-powers | coeff:j^-a | <path.json>");
    app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out_path, "Output file (default stdout)");
    app.add_flag("--deterministic", o.deterministic, "Suppress the timestamp field");
    app.add_option("--emit-poly", o.emit_poly, "Write the resolved polynomial to this file");
    app.add_option("--panels", o.panels, "Quadrature panels");
    app.add_option("--a", o.base, "Lacunary base");
    app.add_flag("--bruteforce", o.bruteforce, "Use the brute-force route");
    app.add_flag("--tally", o.tally, "Use the product-tally route (energy)");
    app.add_flag("--helson", o.helson, "Helson bound");
    app.add_flag("--interpolation", o.interpolation, "Interpolation bound");
    app.add_flag("--lcm-sum", o.lcm_sum, "lcm-sum bound");
    app.add_flag("--moment-shape", o.moment_shape, "Exact-moment bound with the N^(1/2)/(ln N)^(1/r-1/2) shape");
    for (const char* name : {"moments", "energy", "acz-scan", "bounds", "mc-norm", "clt-verify", "lacunary", "montgomery"})
        app.add_subcommand(name)->callback([&o, name] { o.subcommand = name; });

    unsigned threads = 0;
    try {
        app.parse(argc, argv);
        threads = parse_threads(o.threads);
        if (o.samples < 2) throw CLI::ValidationError("--samples", "must be >= 2");
        if (o.seed < 0) throw CLI::ValidationError("--seed", "must be non-negative");
        if (o.alpha && !(*o.alpha > 0.0)) throw CLI::ValidationError("--alpha", "must be > 0");
        if (o.panels && *o.panels < 1) throw CLI::ValidationError("--panels", "must be >= 1");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "dlab: " << e.what() << "\n";
        return 2;
    }

    const bool csv_default = o.subcommand == "acz-scan" || o.subcommand == "clt-verify";
    const std::string format = o.format.value_or(csv_default ? "csv" : "json");

    std::ostringstream buffer;
    Writer w(buffer, format == "csv");
    try {
        w.header(config_record(o, format, threads));
        const auto& s = o.subcommand;
        if (s == "moments") cmd_moments(o, w);
        else if (s == "energy") cmd_energy(o, w, threads);
        else if (s == "acz-scan") cmd_acz_scan(o, w);
        else if (s == "bounds") cmd_bounds(o, w, threads);
        else if (s == "mc-norm") cmd_mc_norm(o, w, threads);
        else if (s == "clt-verify") cmd_clt_verify(o, w, threads);
        else if (s == "lacunary") cmd_lacunary(o, w, threads);
        else if (s == "montgomery") cmd_montgomery(o, w, threads);
    } catch (const UsageError& e) {
        err << "dlab " << o.subcommand << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "dlab " << o.subcommand << ": " << e.what() << "\n";
        return 1;
    }

    if (o.out_path) {
        std::ofstream f(*o.out_path);
        if (!f) {
            err << "dlab: cannot write " << *o.out_path << "\n";
            return 1;
        }
        f << buffer.str();
    } else {
        out << buffer.str();
    }
    return 0;
}

}  // namespace dlab::cli
