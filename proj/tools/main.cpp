// cubeball: command-line front end. Every command prints one machine-readable
// record (JSON) or a CSV block on stdout; diagnostics go to stderr.
// Exit codes: 0 ok, 1 numerical failure, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubeball/lattice.hpp"
#include "cubeball/lyapunov.hpp"
#include "cubeball/rng.hpp"
#include "cubeball/selftest.hpp"
#include "cubeball/volume.hpp"

namespace {

using namespace cubeball;

// Violations of command contracts that CLI11 cannot see (e.g. a randomized
// method without --seed) are usage errors, not numerical failures.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x",
                                  static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Insertion-ordered JSON object builder; all reals go through fmt17 so the
// encoding round-trips doubles losslessly.
class JsonObj {
  public:
    JsonObj& num(const std::string& k, double v) {
        key(k);
        body_ += fmt17(v);
        return *this;
    }
    JsonObj& integer(const std::string& k, long long v) {
        key(k);
        body_ += std::to_string(v);
        return *this;
    }
    JsonObj& uinteger(const std::string& k, std::uint64_t v) {
        key(k);
        body_ += std::to_string(v);
        return *this;
    }
    JsonObj& text(const std::string& k, const std::string& v) {
        key(k);
        body_ += '"' + json_escape(v) + '"';
        return *this;
    }
    JsonObj& boolean(const std::string& k, bool v) {
        key(k);
        body_ += v ? "true" : "false";
        return *this;
    }
    JsonObj& raw(const std::string& k, const std::string& v) {
        key(k);
        body_ += v;
        return *this;
    }
    std::string dump() const { return "{" + body_ + "}"; }

  private:
    void key(const std::string& k) {
        if (!body_.empty()) body_ += ',';
        body_ += '"' + json_escape(k) + "\":";
    }
    std::string body_;
};

std::string json_num_array(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += fmt17(xs[i]);
    }
    return out + "]";
}

void emit_record(const std::string& command, const JsonObj& inputs,
                 const JsonObj& results, double err_est,
                 const std::uint64_t* seed) {
    JsonObj rec;
    rec.text("schema_version", "1");
    rec.text("command", command);
    rec.raw("inputs", inputs.dump());
    rec.raw("results", results.dump());
    rec.num("err_est", err_est);
    if (seed) rec.uinteger("seed", *seed);
    std::cout << rec.dump() << "\n";
}

std::string params_json(const std::map<std::string, double>& params) {
    JsonObj o;
    for (const auto& [k, v] : params) o.num(k, v);
    return o.dump();
}

CdfMethod method_from_name(const std::string& name) {
    if (name == "auto") return CdfMethod::automatic;
    if (name == "closed") return CdfMethod::closed;
    if (name == "fourier") return CdfMethod::fourier;
    if (name == "laplace") return CdfMethod::laplace;
    if (name == "laguerre") return CdfMethod::laguerre;
    if (name == "recursive") return CdfMethod::recursive;
    if (name == "mc") return CdfMethod::mc;
    if (name == "clt") return CdfMethod::clt;
    throw UsageError("unknown method: " + name);
}

double parse_real(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw UsageError(what + ": cannot parse '" + text + "' as a number");
    }
    if (pos != text.size())
        throw UsageError(what + ": trailing characters in '" + text + "'");
    return v;
}

BoxSpec parse_bounds(const std::string& spec) {
    BoxSpec box;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty())
            throw UsageError(
                "vol-box --bounds: empty entry (doubled or leading ';')");
        const std::size_t comma = item.find(',');
        if (comma == std::string::npos)
            throw UsageError("vol-box --bounds: entry '" + item +
                             "' is not of the form lo,hi");
        box.lo.push_back(parse_real(item.substr(0, comma), "vol-box --bounds"));
        box.hi.push_back(
            parse_real(item.substr(comma + 1), "vol-box --bounds"));
    }
    try {
        box.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("vol-box --bounds: ") + e.what());
    }
    return box;
}

struct CdfArgs {
    int n = 0;
    double s = 0.0;
    std::string method = "auto";
    double tol = 0.0;
    long terms = 0;
    long samples = 1000000L;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string format = "json";
};

int run_cdf(const CdfArgs& a) {
    CdfOptions opts;
    opts.method = method_from_name(a.method);
    if (a.tol > 0.0) opts.tol = a.tol;
    if (a.terms > 0) opts.series.max_terms = a.terms;
    opts.samples = a.samples;
    if (opts.method == CdfMethod::mc) {
        if (!a.seed_given)
            throw UsageError("cdf --method mc requires an explicit --seed");
        opts.rng = RngState{a.seed, 0, 0};
    }
    const CdfEstimate e = cdf(a.n, a.s, opts);
    const std::string resolved = cdf_method_name(e.method);

    if (a.format == "csv") {
        std::cout << "n,s,F,err_est,method\n"
                  << a.n << "," << fmt17(a.s) << "," << fmt17(e.value) << ","
                  << fmt17(e.err_est) << "," << resolved << "\n";
        return 0;
    }
    JsonObj inputs;
    inputs.integer("n", a.n).num("s", a.s).text("method", a.method);
    if (a.tol > 0.0) inputs.num("tol", a.tol);
    if (a.terms > 0) inputs.integer("terms", a.terms);
    if (opts.method == CdfMethod::mc) inputs.integer("samples", a.samples);
    JsonObj results;
    results.num("F", e.value).text("method", resolved);
    results.raw("params", params_json(e.params));
    emit_record("cdf", inputs, results, e.err_est,
                opts.method == CdfMethod::mc ? &a.seed : nullptr);
    return 0;
}

int run_pdf(int n, double s, const std::string& format) {
    const double f = pdf_closed(n, s);
    if (format == "csv") {
        std::cout << "n,s,f\n" << n << "," << fmt17(s) << "," << fmt17(f)
                  << "\n";
        return 0;
    }
    JsonObj inputs;
    inputs.integer("n", n).num("s", s);
    JsonObj results;
    results.num("f", f);
    emit_record("pdf", inputs, results, 4e-16, nullptr);
    return 0;
}

struct TableArgs {
    int n = 0;
    double s_min = 0.0;
    double s_max = 0.0;
    long steps = 0;
    std::string method = "auto";
    std::string format = "csv";
};

int run_table(const TableArgs& a) {
    if (a.steps < 1) throw UsageError("table --steps must be >= 1");
    if (!(a.s_max >= a.s_min))
        throw UsageError("table: require --s-min <= --s-max");
    CdfOptions opts;
    opts.method = method_from_name(a.method);
    if (opts.method == CdfMethod::mc)
        throw UsageError("table does not support --method mc");

    std::vector<double> ss(a.steps), fs(a.steps);
    std::vector<bool> has_pdf(a.steps, false);
    std::vector<double> pdfs(a.steps, 0.0);
    for (long i = 0; i < a.steps; ++i) {
        const double s =
            a.steps == 1
                ? a.s_min
                : a.s_min + (a.s_max - a.s_min) *
                                (static_cast<double>(i) / (a.steps - 1));
        ss[i] = s;
        fs[i] = cdf(a.n, s, opts).value;
        if (a.n == 2 || a.n == 3) {
            pdfs[i] = pdf_closed(a.n, s);
            has_pdf[i] = true;
        }
    }
    if (a.format == "csv") {
        std::cout << "s,F,f\n";
        for (long i = 0; i < a.steps; ++i) {
            std::cout << fmt17(ss[i]) << "," << fmt17(fs[i]) << ",";
            if (has_pdf[i]) std::cout << fmt17(pdfs[i]);
            std::cout << "\n";
        }
        return 0;
    }
    JsonObj inputs;
    inputs.integer("n", a.n)
        .num("s_min", a.s_min)
        .num("s_max", a.s_max)
        .integer("steps", a.steps)
        .text("method", a.method);
    std::string fcol = "[";
    for (long i = 0; i < a.steps; ++i) {
        if (i) fcol += ',';
        fcol += has_pdf[i] ? fmt17(pdfs[i]) : std::string("null");
    }
    fcol += "]";
    JsonObj results;
    results.raw("s", json_num_array(ss)).raw("F", json_num_array(fs));
    results.raw("f", fcol);
    emit_record("table", inputs, results, 0.0, nullptr);
    return 0;
}

struct VolBoxArgs {
    std::string bounds;
    std::string method = "laplace";
    long samples = 1000000L;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int run_vol_box(const VolBoxArgs& a) {
    const BoxSpec box = parse_bounds(a.bounds);
    double measure = 1.0;
    for (int i = 0; i < box.dim(); ++i) measure *= box.hi[i] - box.lo[i];

    double err = 0.0;
    double volume = 0.0;
    if (a.method == "mc") {
        if (!a.seed_given)
            throw UsageError("vol-box --method mc requires an explicit --seed");
        volume = box_ball_volume_mc(box, a.samples, RngState{a.seed, 0, 0},
                                    &err);
    } else {
        volume = box_ball_volume(box, {}, &err);
    }
    JsonObj inputs;
    inputs.text("bounds", a.bounds).text("method", a.method);
    if (a.method == "mc") inputs.integer("samples", a.samples);
    JsonObj results;
    results.num("volume", volume).num("fraction", volume / measure);
    results.num("box_measure", measure);
    emit_record("vol-box", inputs, results, err,
                a.method == "mc" ? &a.seed : nullptr);
    return 0;
}

struct LyapArgs {
    std::string ensemble;
    std::string method;
    long m = 10000;
    long trials = 100;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int run_lyapunov(const LyapArgs& a) {
    const EnsembleId e =
        a.ensemble == "u2b" ? EnsembleId::u2b : EnsembleId::u3s;
    LyapunovResult r;
    if (a.method == "mc") {
        if (!a.seed_given)
            throw UsageError(
                "lyapunov --method mc requires an explicit --seed");
        r = lyapunov_mc(e, a.m, a.trials, RngState{a.seed, 0, 0});
    } else {
        r = lyapunov_exact(e);
    }
    JsonObj inputs;
    inputs.text("ensemble", a.ensemble).text("method", a.method);
    if (a.method == "mc")
        inputs.integer("m", a.m).integer("trials", a.trials);
    JsonObj results;
    results.num("two_mu1", r.two_mu1).num("mu1", r.mu1);
    results.raw("params", params_json(r.params));
    emit_record("lyapunov", inputs, results, r.err_est,
                a.method == "mc" ? &a.seed : nullptr);
    return 0;
}

struct LatticeArgs {
    long samples = 0;
    long bins = 0;
    std::uint64_t seed = 0;
    std::string format = "csv";
};

int run_lattice_exp(const LatticeArgs& a) {
    const LatticeExperiment ex =
        lattice_experiment(a.samples, static_cast<int>(a.bins),
                           RngState{a.seed, 0, 0});
    if (a.format == "csv") {
        std::cout << "t,empirical,analytic\n";
        for (std::size_t i = 0; i < ex.bin_centers.size(); ++i)
            std::cout << fmt17(ex.bin_centers[i]) << ","
                      << fmt17(ex.empirical[i]) << "," << fmt17(ex.analytic[i])
                      << "\n";
        return 0;
    }
    JsonObj inputs;
    inputs.integer("samples", a.samples).integer("bins", a.bins);
    JsonObj results;
    results.num("ks_stat", ex.ks_stat).num("max_length", ex.max_length);
    results.raw("t", json_num_array(ex.bin_centers));
    results.raw("empirical", json_num_array(ex.empirical));
    results.raw("analytic", json_num_array(ex.analytic));
    emit_record("lattice-exp", inputs, results, 0.0, &a.seed);
    return 0;
}

int run_selftest_cmd(const std::string& level) {
    const SelftestReport rep = run_selftest(level == "full");
    std::string checks = "[";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const SelftestCheck& c = rep.checks[i];
        if (i) checks += ',';
        JsonObj o;
        o.text("name", c.name)
            .text("status", c.status)
            .num("measured", c.measured)
            .num("bound", c.bound)
            .text("detail", c.detail);
        checks += o.dump();
    }
    checks += "]";
    JsonObj rec;
    rec.text("schema_version", "1");
    rec.text("command", "selftest");
    rec.text("level", rep.level);
    rec.boolean("all_pass", rep.all_pass);
    rec.text("laguerre_status", rep.laguerre_status);
    rec.num("elapsed_seconds", rep.elapsed_seconds);
    rec.raw("checks", checks);
    std::cout << rec.dump() << "\n";
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cubeball: distribution of sums of squared uniforms, cube-ball "
        "volumes, Lyapunov exponents of random matrix products, and complex "
        "lattice reduction experiments.\n"
        "Defaults: tol 1e-8 (laplace) / 1e-5 (fourier); samples 1000000; "
        "Laplace inversion uses a 64-node Talbot contour.\n"
        "Randomized commands require an explicit --seed."};
    app.require_subcommand(1);

    CdfArgs ca;
    CLI::App* cdf_cmd = app.add_subcommand(
        "cdf", "Evaluate F_n(s) = Pr(sum of n squared uniforms <= s)");
    cdf_cmd->add_option("--n", ca.n, "dimension n >= 1")->required();
    cdf_cmd->add_option("--s", ca.s, "evaluation point")->required();
    cdf_cmd->add_option("--method", ca.method,
                        "auto|closed|fourier|laplace|laguerre|recursive|mc|clt"
                        " (default auto)")
        ->check(CLI::IsMember({"auto", "closed", "fourier", "laplace",
                               "laguerre", "recursive", "mc", "clt"}));
    cdf_cmd->add_option("--tol", ca.tol,
                        "target tolerance; default 1e-8 for laplace, 1e-5 for "
                        "fourier, 1e-7 for recursive");
    cdf_cmd->add_option("--terms", ca.terms, "series term budget");
    cdf_cmd->add_option("--samples", ca.samples,
                        "Monte Carlo sample count (default 1000000)");
    CLI::Option* cdf_seed = cdf_cmd->add_option(
        "--seed", ca.seed, "RNG seed (required for --method mc)");
    cdf_cmd->add_option("--format", ca.format, "json|csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    int pdf_n = 0;
    double pdf_s = 0.0;
    std::string pdf_format = "json";
    CLI::App* pdf_cmd =
        app.add_subcommand("pdf", "Evaluate the closed-form density F_n'(s)");
    pdf_cmd->add_option("--n", pdf_n, "dimension, 2 or 3")
        ->required()
        ->check(CLI::IsMember({2, 3}));
    pdf_cmd->add_option("--s", pdf_s, "evaluation point")->required();
    pdf_cmd->add_option("--format", pdf_format, "json|csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    TableArgs ta;
    CLI::App* table_cmd = app.add_subcommand(
        "table", "Tabulate F_n (and the density when n is 2 or 3)");
    table_cmd->add_option("--n", ta.n, "dimension")->required();
    table_cmd->add_option("--s-min", ta.s_min, "first s value")->required();
    table_cmd->add_option("--s-max", ta.s_max, "last s value")->required();
    table_cmd->add_option("--steps", ta.steps, "number of rows")->required();
    table_cmd->add_option("--method", ta.method, "evaluation method");
    table_cmd->add_option("--format", ta.format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    VolBoxArgs va;
    CLI::App* vol_cmd = app.add_subcommand(
        "vol-box", "Volume of an axis-aligned box clipped to the unit ball");
    vol_cmd->add_option("--bounds", va.bounds,
                        "per-axis bounds \"a1,b1;a2,b2;...\"")
        ->required();
    vol_cmd->add_option("--method", va.method, "laplace|mc (default laplace)")
        ->check(CLI::IsMember({"laplace", "mc"}));
    vol_cmd->add_option("--samples", va.samples,
                        "Monte Carlo sample count (default 1000000)");
    CLI::Option* vol_seed = vol_cmd->add_option(
        "--seed", va.seed, "RNG seed (required for --method mc)");

    LyapArgs la;
    CLI::App* lyap_cmd = app.add_subcommand(
        "lyapunov", "Top Lyapunov exponent of random matrix products");
    lyap_cmd->add_option("--ensemble", la.ensemble, "u2b|u3s")
        ->required()
        ->check(CLI::IsMember({"u2b", "u3s"}));
    lyap_cmd->add_option("--method", la.method, "exact|mc")
        ->required()
        ->check(CLI::IsMember({"exact", "mc"}));
    lyap_cmd->add_option("--m", la.m,
                         "steps per Monte Carlo trial (default 10000)");
    lyap_cmd->add_option("--trials", la.trials,
                         "Monte Carlo trials (default 100)");
    CLI::Option* lyap_seed = lyap_cmd->add_option(
        "--seed", la.seed, "RNG seed (required for --method mc)");

    LatticeArgs xa;
    CLI::App* lat_cmd = app.add_subcommand(
        "lattice-exp",
        "Shortest-vector length histogram for reduced random SL(2,C) bases");
    lat_cmd->add_option("--samples", xa.samples, "number of bases")
        ->required();
    lat_cmd->add_option("--bins", xa.bins, "histogram bins")->required();
    lat_cmd->add_option("--seed", xa.seed, "RNG seed")->required();
    lat_cmd->add_option("--format", xa.format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string st_level = "quick";
    CLI::App* st_cmd = app.add_subcommand(
        "selftest", "Cross-method consistency matrix and invariant suite");
    st_cmd->add_option("--level", st_level, "quick|full (default quick)")
        ->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ca.seed_given = cdf_seed->count() > 0;
        va.seed_given = vol_seed->count() > 0;
        la.seed_given = lyap_seed->count() > 0;
        if (app.got_subcommand(cdf_cmd)) return run_cdf(ca);
        if (app.got_subcommand(pdf_cmd))
            return run_pdf(pdf_n, pdf_s, pdf_format);
        if (app.got_subcommand(table_cmd)) return run_table(ta);
        if (app.got_subcommand(vol_cmd)) return run_vol_box(va);
        if (app.got_subcommand(lyap_cmd)) return run_lyapunov(la);
        if (app.got_subcommand(lat_cmd)) return run_lattice_exp(xa);
        if (app.got_subcommand(st_cmd)) return run_selftest_cmd(st_level);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
