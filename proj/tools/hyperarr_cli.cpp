#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hyperarr/hyperarr.hpp"

using namespace hyperarr;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

const char* kCsvHelp =
    "CSV output columns: quantity,mode,seed,field,value. Nested values are\n"
    "flattened into dotted field names; exact rationals are written as p/q.";

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string method;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> m;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> order_seed;
    std::uint64_t samples = 1'000'000;
    std::size_t jobs = 1;
    std::string format = "json";
    std::string cache_dir;
    std::string level = "quick";
    bool deterministic = false;
};

struct Outcome {
    Json values = Json::object();
    std::string mode;
    int status = 0;
};

Json int_json(const Integer& x) {
    if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
        return x.convert_to<std::int64_t>();
    return x.str();
}

Json rational_json(const Rational& q) { return q.str(); }

Json estimate_json(const Estimate& e) {
    return Json{{"hits", e.hits}, {"samples", e.samples}, {"value", e.value}, {"ci_low", e.ci_low}, {"ci_high", e.ci_high}};
}

Configuration load_input(const std::string& input) {
    if (input.empty()) throw ConfigError("--input is required");
    if (auto b = builtin_configuration(input)) return *b;
    if (!std::filesystem::exists(input)) throw ConfigError("unknown configuration '" + input + "'");
    std::ifstream in(input);
    return parse_configuration(in);
}

void require_method(const std::string& method, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (method == a) return;
    throw ConfigError("unsupported --method '" + method + "'");
}

std::optional<StatsStore> open_store(const RunConfig& cfg) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    return StatsStore(std::filesystem::path(cfg.cache_dir) / "stats.json");
}

// Runs compute() unless the stats store already holds the result.
Outcome cached(const RunConfig& cfg, const StatsKey& key, const std::function<Outcome()>& compute) {
    auto store = open_store(cfg);
    if (store) {
        if (auto hit = store->lookup(key)) {
            Outcome o;
            o.values = Json::parse(hit->at("values").dump());
            o.mode = hit->at("mode").get<std::string>();
            o.status = hit->at("status").get<int>();
            return o;
        }
    }
    Outcome o = compute();
    if (store) {
        store->record(key, nlohmann::json{{"values", nlohmann::json::parse(o.values.dump())}, {"mode", o.mode}, {"status", o.status}});
        store->save();
    }
    return o;
}

Outcome run_chambers(const RunConfig& cfg) {
    const auto H = load_input(cfg.input);
    const std::string method = cfg.method.empty() ? "both" : cfg.method;
    require_method(method, {"zaslavsky", "deletion-restriction", "both"});
    Outcome o;
    o.mode = method;
    o.values["points"] = H.size();
    o.values["ambient_dim"] = H.ambient_dim();
    std::optional<Integer> z, d;
    if (method != "deletion-restriction") {
        LatticeOptions lopt;
        lopt.jobs = cfg.jobs;
        const auto L = cached_lattice(H, cfg.cache_dir, lopt);
        z = chambers_zaslavsky(L);
        o.values["zaslavsky"] = int_json(*z);
        o.values["flats"] = L.size();
    }
    if (method != "zaslavsky") {
        d = chambers_deletion_restriction(H);
        o.values["deletion_restriction"] = int_json(*d);
    }
    if (z && d) {
        o.values["agree"] = *z == *d;
        if (*z != *d) o.status = kExitVerification;
    }
    return o;
}

Outcome run_eta(const RunConfig& cfg) {
    const auto H = load_input(cfg.input);
    const std::string method = cfg.method.empty() ? "all" : cfg.method;
    require_method(method, {"order", "homology", "flags", "all"});
    Outcome o;
    o.mode = method;
    Order order = identity_order(H.size());
    if (cfg.order_seed) {
        std::mt19937_64 rng(*cfg.order_seed);
        order = random_order(H.size(), rng);
    }
    o.values["order"] = Json::array();
    for (auto i : order) o.values["order"].push_back(i);
    std::optional<Rational> a, b, c;
    if (method == "order" || method == "all") {
        EtaOptions eopt;
        eopt.jobs = cfg.jobs;
        a = Rational(eta_star_via_order(H, order, eopt));
        o.values["eta_order"] = int_json(numerator(*a));
    }
    if (method == "homology" || method == "all") {
        b = Rational(eta_star_via_homology(H));
        o.values["eta_homology"] = int_json(numerator(*b));
    }
    if (method == "flags" || method == "all") {
        if (H.empty()) throw PreconditionViolation("eta: flag formula needs a nonempty configuration");
        c = eta_star_via_flags(H, uniform_probability(H.size()));
        o.values["eta_flags"] = rational_json(*c);
    }
    if (method == "all") {
        const bool agree = *a == *b && *b == *c;
        o.values["agree"] = agree;
        if (!agree) o.status = kExitVerification;
    }
    return o;
}

Outcome run_homology(const RunConfig& cfg) {
    const auto H = load_input(cfg.input);
    Outcome o;
    o.mode = "gf2";
    Json ranks = Json::object();
    for (long d = -1; d <= static_cast<long>(H.ambient_dim()); ++d) ranks[std::to_string(d)] = homology_rank(H, d);
    o.values["reduced_ranks"] = ranks;
    SpanOracle so(H);
    if (!H.empty() && has_full_span(so)) {
        const auto r = relative_ranks(H);
        o.values["rank_rel"] = r.rank_rel;
        o.values["rank_skel"] = r.rank_skel;
        o.values["rank_abs"] = r.rank_abs;
        o.values["exact"] = r.exact();
        if (!r.exact()) o.status = kExitVerification;
    }
    return o;
}

Outcome run_threshold(const RunConfig& cfg) {
    return cached(cfg, {"threshold", cfg.n, 0, "all", 0}, [&] {
        ThresholdOptions topt;
        topt.cache_dir = cfg.cache_dir;
        topt.jobs = cfg.jobs;
        const auto t = threshold_count(cfg.n, topt);
        Outcome o;
        o.mode = "zaslavsky+deletion-restriction" + std::string(t.separability ? "+separability" : "");
        o.values["count"] = int_json(t.count);
        o.values["zaslavsky"] = int_json(t.zaslavsky);
        if (t.deletion_restriction) o.values["deletion_restriction"] = int_json(*t.deletion_restriction);
        if (t.separability) o.values["separability"] = int_json(*t.separability);
        o.values["schlafli_upper"] = int_json(t.schlafli_upper);
        o.values["lower_bound"] = rational_json(t.lower_bound);
        o.values["asym"] = int_json(t.asym);
        o.values["ratio_to_asym"] = rational_json(t.ratio_to_asym);
        o.values["ratio_to_asym_approx"] = to_double(t.ratio_to_asym);
        o.values["agree"] = t.agree();
        o.values["bounds_hold"] = t.bounds_hold();
        if (!t.agree() || !t.bounds_hold()) o.status = kExitVerification;
        return o;
    });
}

Json singular_json(const SingularityReport& r) {
    Json v;
    v["n"] = r.n;
    if (r.singular_count) v["singular_count"] = int_json(*r.singular_count);
    v["total"] = int_json(r.total);
    if (r.P) {
        v["P"] = rational_json(*r.P);
        v["P_approx"] = to_double(*r.P);
    }
    if (r.estimate) v["estimate"] = estimate_json(*r.estimate);
    if (r.asym_ratio_exact) v["asym_ratio_exact"] = rational_json(*r.asym_ratio_exact);
    if (r.asym_ratio) {
        v["asym_ratio"] = *r.asym_ratio;
        v["asym_ratio_ci"] = {*r.asym_ratio_low, *r.asym_ratio_high};
    }
    return v;
}

Outcome run_singular(const RunConfig& cfg) {
    const std::string method = cfg.method.empty() ? "exact" : cfg.method;
    require_method(method, {"exact", "bruteforce", "mc"});
    const std::uint64_t seed = method == "mc" ? cfg.seed : 0;
    const std::size_t k = method == "mc" ? static_cast<std::size_t>(cfg.samples) : 0;
    return cached(cfg, {"singular", cfg.n, k, method, seed}, [&] {
        Outcome o;
        o.mode = method;
        if (method == "exact")
            o.values = singular_json(singular_exact(cfg.n, cfg.jobs));
        else if (method == "bruteforce")
            o.values = singular_json(singular_bruteforce(cfg.n, cfg.jobs));
        else
            o.values = singular_json(singular_mc(cfg.n, cfg.samples, cfg.seed, cfg.jobs));
        return o;
    });
}

Outcome run_delta(const RunConfig& cfg) {
    const std::string method = cfg.method.empty() ? "exhaustive" : cfg.method;
    require_method(method, {"exhaustive", "mc"});
    const std::uint64_t seed = method == "mc" ? cfg.seed : 0;
    return cached(cfg, {"delta", cfg.n, cfg.k, method, seed}, [&] {
        Outcome o;
        o.mode = method;
        if (cfg.n < 1) throw ConfigError("--n must be >= 1");
        if (method == "exhaustive") {
            DeltaOptions dopt;
            dopt.jobs = cfg.jobs;
            if (cfg.k) {
                o.values["delta"] = rational_json(delta_exact(cfg.n, cfg.k, dopt));
            } else {
                const auto t = delta_table(cfg.n, dopt);
                for (const auto& [k, d] : t.delta) o.values["delta"][std::to_string(k)] = rational_json(d);
                o.values["monotone"] = t.monotone();
            }
        } else {
            if (cfg.k) {
                o.values["delta"] = estimate_json(delta_mc(cfg.n, cfg.k, cfg.samples, cfg.seed, cfg.jobs));
            } else {
                const auto t = delta_table_mc(cfg.n, cfg.samples, cfg.seed, cfg.jobs);
                for (const auto& [k, e] : t.estimates) o.values["delta"][std::to_string(k)] = estimate_json(e);
                o.values["monotone"] = t.monotone();
            }
        }
        return o;
    });
}

Outcome run_gamma(const RunConfig& cfg) {
    return cached(cfg, {"gamma", cfg.n, cfg.k, cfg.m ? "m=" + std::to_string(*cfg.m) : "spectrum", cfg.seed}, [&] {
        const auto chain = projection_chain(cfg.n, cfg.seed);
        GammaOptions gopt;
        gopt.jobs = cfg.jobs;
        const auto g = gamma_spectrum(cfg.n, cfg.k, chain, gopt);
        Outcome o;
        o.mode = g.projector;
        for (const auto& [m, x] : g.gamma) o.values["gamma"][std::to_string(m)] = rational_json(x);
        if (cfg.m) o.values["gamma_m"] = rational_json(g.gamma.count(*cfg.m) ? g.gamma.at(*cfg.m) : Rational(0));
        o.values["independent_subsets"] = int_json(g.independent);
        o.values["epsilon"] = rational_json(g.epsilon);
        o.values["epsilon_delta"] = rational_json(g.epsilon_delta);
        if (g.epsilon_direct) o.values["epsilon_direct"] = rational_json(*g.epsilon_direct);
        o.values["delta_k"] = rational_json(g.delta_k);
        o.values["delta_k1"] = rational_json(g.delta_k1);
        o.values["consistent"] = g.consistent();
        if (!g.consistent()) o.status = kExitVerification;
        return o;
    });
}

Outcome run_lo_gap(const RunConfig& cfg) {
    const auto r = check_LO_gap(cfg.n, cfg.jobs);
    Outcome o;
    o.mode = "exhaustive";
    o.values["window"] = r.window;
    for (const auto& [m, x] : r.gamma) o.values["gamma"][std::to_string(m)] = rational_json(x);
    o.values["holds"] = r.holds;
    if (!r.holds) o.status = kExitVerification;
    return o;
}

Outcome run_decomposition(const RunConfig& cfg) {
    const auto r = check_row_decomposition(cfg.n, 3, cfg.jobs);
    Outcome o;
    o.mode = "exhaustive";
    o.values["singular_tuples"] = int_json(r.singular_tuples);
    o.values["repeat_tuples"] = int_json(r.repeat_tuples);
    o.values["delta"] = rational_json(r.delta);
    o.values["distinct_tuples"] = int_json(r.distinct_tuples);
    o.values["holds"] = r.decomposition_holds;
    if (r.raw_singular) {
        o.values["raw_singular"] = int_json(*r.raw_singular);
        o.values["raw_matches"] = *r.raw_matches;
    }
    if (!r.decomposition_holds || !r.raw_matches.value_or(true)) o.status = kExitVerification;
    return o;
}

Outcome run_repeat_rows(const RunConfig& cfg) {
    const auto r = two_close_rows_count(cfg.n);
    Outcome o;
    o.mode = r.enumerated ? "enumerated+closed-form" : "closed-form";
    o.values["closed_form"] = int_json(r.closed_form);
    if (r.enumerated) o.values["enumerated"] = int_json(*r.enumerated);
    o.values["tuples"] = int_json(r.tuples);
    o.values["fraction"] = rational_json(r.fraction);
    o.values["fraction_approx"] = to_double(r.fraction);
    o.values["heuristic"] = r.heuristic;
    if (r.enumerated && *r.enumerated != r.closed_form) o.status = kExitVerification;
    return o;
}

Outcome run_delta_increment(const RunConfig& cfg) {
    DeltaOptions dopt;
    dopt.jobs = cfg.jobs;
    const auto r = check_delta_increment(cfg.n, cfg.k, cfg.samples, cfg.seed, dopt);
    Outcome o;
    o.mode = r.mode;
    o.values["lhs"] = r.lhs;
    if (r.lhs_exact) o.values["lhs_exact"] = rational_json(*r.lhs_exact);
    if (r.lower) o.values["delta_k"] = estimate_json(*r.lower);
    if (r.upper) o.values["delta_k1"] = estimate_json(*r.upper);
    o.values["rhs"] = r.rhs;
    o.values["holds"] = r.holds;
    return o;
}

Outcome run_report(const RunConfig& cfg) {
    Outcome o;
    o.mode = "report";
    const std::size_t nmax = cfg.n ? cfg.n : 4;
    for (std::size_t n = 1; n <= std::min<std::size_t>(nmax, 4); ++n) {
        ThresholdOptions topt;
        topt.cache_dir = cfg.cache_dir;
        topt.jobs = cfg.jobs;
        const auto b = bounds_report(n, topt);
        Json j;
        j["P"] = int_json(b.threshold.count);
        j["eta_star"] = b.eta_star;
        j["schlafli_upper"] = int_json(b.threshold.schlafli_upper);
        j["lower_bound"] = rational_json(b.threshold.lower_bound);
        j["ratio_to_asym"] = rational_json(b.threshold.ratio_to_asym);
        j["ratio_to_asym_approx"] = to_double(b.threshold.ratio_to_asym);
        j["holds"] = b.holds();
        if (!b.holds()) o.status = kExitVerification;
        o.values["threshold"][std::to_string(n)] = j;
    }
    TrendOptions topt;
    topt.samples = cfg.samples;
    topt.seed = cfg.seed;
    topt.jobs = cfg.jobs;
    const auto t = singular_trend(topt);
    for (const auto& p : t.points)
        o.values["singular_ratio"][std::to_string(p.n)] = Json{{"mode", p.mode}, {"ratio", p.ratio}, {"ci", {p.low, p.high}}};
    o.values["singular_trend_monotone_toward_one"] = t.monotone_toward_one;
    o.values["singular_trend_flagged"] = t.flagged;
    return o;
}

Outcome run_verify_cmd(const RunConfig& cfg) {
    VerifyOptions vopt;
    vopt.level = cfg.level;
    vopt.seed = cfg.seed;
    vopt.jobs = cfg.jobs;
    vopt.deterministic = cfg.deterministic;
    const auto r = run_verify(vopt);
    Outcome o;
    o.mode = cfg.level;
    o.values = r.to_json();
    if (!r.ok()) o.status = kExitVerification;
    return o;
}

Outcome run_stats(const RunConfig& cfg) {
    auto store = open_store(cfg);
    if (!store) throw ConfigError("stats: --cache-dir or HYPERARR_CACHE_DIR is required");
    std::ostringstream csv;
    store->write_csv(csv);
    Outcome o;
    o.mode = "export";
    o.values["entries"] = store->size();
    o.values["csv"] = csv.str();
    return o;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        bool scalar = true;
        for (const auto& v : j) scalar = scalar && !v.is_structured();
        if (scalar) {
            std::string s;
            for (const auto& v : j) s += (s.empty() ? "" : " ") + (v.is_string() ? v.get<std::string>() : v.dump());
            out.emplace_back(prefix, s);
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void emit(const RunConfig& cfg, const Json& doc) {
    if (cfg.subcommand == "stats" && cfg.format == "csv") {
        std::cout << doc.at("values").at("csv").get<std::string>();
        return;
    }
    if (cfg.format == "json") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc.at("values"), "", rows);
    const std::string quantity = doc.at("quantity").get<std::string>();
    const std::string mode = doc.at("mode").get<std::string>();
    const std::string seed = doc.at("seed").dump();
    if (cfg.format == "csv") {
        std::cout << "quantity,mode,seed,field,value\n";
        for (const auto& [f, v] : rows)
            std::cout << csv_field(quantity) << ',' << csv_field(mode) << ',' << seed << ',' << csv_field(f) << ','
                      << csv_field(v) << '\n';
    } else {
        std::cout << quantity << " (" << mode << ", seed " << seed << ")\n";
        for (const auto& [f, v] : rows) std::cout << "  " << f << ": " << v << '\n';
        if (doc.contains("runtime_seconds")) std::cout << "  runtime_seconds: " << doc["runtime_seconds"].dump() << '\n';
    }
}

Json inputs_json(const RunConfig& cfg) {
    Json in;
    if (!cfg.input.empty()) in["input"] = cfg.input;
    if (!cfg.method.empty()) in["method"] = cfg.method;
    if (cfg.n) in["n"] = cfg.n;
    if (cfg.k) in["k"] = cfg.k;
    if (cfg.m) in["m"] = *cfg.m;
    if (cfg.order_seed) in["order_seed"] = *cfg.order_seed;
    if (cfg.subcommand == "singular" || cfg.subcommand == "delta" || cfg.subcommand == "report" ||
        cfg.subcommand == "delta-increment")
        in["samples"] = cfg.samples;
    if (cfg.subcommand == "verify") in["level"] = cfg.level;
    in["jobs"] = cfg.jobs;
    return in;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations on projective point configurations and hyperplane arrangements."};
    app.footer(kCsvHelp);
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* env = std::getenv("HYPERARR_CACHE_DIR")) cfg.cache_dir = env;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Seed for random orders, projections and Monte Carlo streams");
        sub->add_option("--jobs", cfg.jobs, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--cache-dir", cfg.cache_dir, "Cache directory (overrides HYPERARR_CACHE_DIR)");
        sub->add_flag("--deterministic", cfg.deterministic, "Omit timings so identical runs give identical output");
    };
    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        common(s);
        return s;
    };
    auto input = [&](CLI::App* s) {
        s->add_option("--input", cfg.input, "Built-in name (E1..E20, simplex1..8, line3, line3plus) or file")->required();
    };
    auto nopt = [&](CLI::App* s, bool required) {
        auto* o = s->add_option("--n", cfg.n, "Cube dimension n");
        if (required) o->required();
    };

    auto* chambers = sub("chambers", "Chamber count of the arrangement");
    input(chambers);
    chambers->add_option("--method", cfg.method, "zaslavsky | deletion-restriction | both");
    auto* eta = sub("eta", "eta-star of a configuration");
    input(eta);
    eta->add_option("--method", cfg.method, "order | homology | flags | all");
    eta->add_option("--order-seed", cfg.order_seed, "Use a random order drawn from this seed");
    auto* homology = sub("homology", "Reduced and relative GF(2) homology ranks");
    input(homology);
    auto* threshold = sub("threshold", "Number of threshold functions P(2,n) with bounds");
    nopt(threshold, true);
    auto* singular = sub("singular", "Singularity probability of random sign matrices");
    nopt(singular, true);
    singular->add_option("--method", cfg.method, "exact | bruteforce | mc");
    singular->add_option("--samples", cfg.samples, "Monte Carlo samples");
    auto* delta = sub("delta", "Fraction of dependent k-tuples of E_n");
    nopt(delta, true);
    delta->add_option("--k", cfg.k, "Tuple size (omit for the whole table)");
    delta->add_option("--method", cfg.method, "exhaustive | mc");
    delta->add_option("--samples", cfg.samples, "Monte Carlo samples");
    auto* gamma = sub("gamma", "gamma spectrum of the projected cube");
    nopt(gamma, true);
    gamma->add_option("--k", cfg.k, "Subset size k (1..n)")->required();
    gamma->add_option("--m", cfg.m, "Report gamma^m for this m");
    auto* lo = sub("lo-gap", "Vanishing window of the gamma spectrum (n = 4, 5)");
    nopt(lo, true);
    auto* dec = sub("decomposition", "Repeated-row plus dependent-tuple split of singular matrices (n <= 4)");
    nopt(dec, true);
    auto* rep = sub("repeat-rows", "Row tuples over E_n with a repeated row (n <= 5)");
    nopt(rep, true);
    auto* incr = sub("delta-increment", "Compare delta_{n,k+1} - delta_{n,k} with (k-1)/2^n");
    nopt(incr, true);
    incr->add_option("--k", cfg.k, "k")->required();
    incr->add_option("--samples", cfg.samples, "Monte Carlo samples when exhaustive mode is over budget");
    auto* verify = sub("verify", "Run the invariant suite");
    verify->add_option("--level", cfg.level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    auto* report = sub("report", "Threshold bounds and singularity ratio trend");
    nopt(report, false);
    report->add_option("--samples", cfg.samples, "Monte Carlo samples per n for n > 6");
    sub("stats", "Export the stats store (use --format csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        const auto& s = cfg.subcommand;
        if (s == "chambers") out = run_chambers(cfg);
        else if (s == "eta") out = run_eta(cfg);
        else if (s == "homology") out = run_homology(cfg);
        else if (s == "threshold") out = run_threshold(cfg);
        else if (s == "singular") out = run_singular(cfg);
        else if (s == "delta") out = run_delta(cfg);
        else if (s == "gamma") out = run_gamma(cfg);
        else if (s == "lo-gap") out = run_lo_gap(cfg);
        else if (s == "decomposition") out = run_decomposition(cfg);
        else if (s == "repeat-rows") out = run_repeat_rows(cfg);
        else if (s == "delta-increment") out = run_delta_increment(cfg);
        else if (s == "verify") out = run_verify_cmd(cfg);
        else if (s == "report") out = run_report(cfg);
        else if (s == "stats") out = run_stats(cfg);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    }

    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["code_version"] = kCodeVersion;
    doc["quantity"] = cfg.subcommand;
    doc["inputs"] = inputs_json(cfg);
    doc["mode"] = out.mode;
    doc["seed"] = cfg.seed;
    doc["values"] = out.values;
    if (!cfg.deterministic)
        doc["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cfg, doc);
    return out.status;
}
