// Command-line harness: reproducible campaigns over the library's samplers
// and statistical gates.  Campaign commands write a directory of artifacts
// (manifest.json, report.json, tables/*.csv); utility commands dump JSON.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rsklab/hammersley.hpp"
#include "rsklab/plancherel.hpp"
#include "rsklab/rng.hpp"
#include "rsklab/stats.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/verify.hpp"
#include "rsklab/young.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace rsklab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitPass = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

constexpr std::uint32_t kUnsetU32 = ~std::uint32_t(0);
constexpr double kUnsetF = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Small utilities.

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string now_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

/// Whitespace- or comma-separated decimals.
std::vector<double> parse_letters(std::string text, const char* what) {
    for (char& ch : text)
        if (ch == ',') ch = ' ';
    std::istringstream in(text);
    std::vector<double> out;
    double v = 0;
    while (in >> v)
        out.push_back(v);
    if (!in.eof()) {
        std::string tail;
        in.clear();
        in >> tail;
        throw std::invalid_argument(std::string(what) + ": not a decimal: '" + tail + "'");
    }
    return out;
}

/// Distinct uniform letters (ties redrawn so insertion never sees one).
std::vector<double> generated_letters(std::uint64_t n, std::uint64_t seed) {
    Rng rng = make_replicate_rng(seed, 0);
    std::vector<double> word;
    word.reserve(n);
    std::unordered_set<double> seen;
    while (word.size() < n) {
        const double u = uniform01(rng);
        if (seen.insert(u).second)
            word.push_back(u);
    }
    return word;
}

// ---------------------------------------------------------------------------
// CSV assembly: cells holding commas or quotes are quoted, so gate names can
// appear verbatim.

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos)
        return cell;
    std::string quoted = "\"";
    for (char ch : cell) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string csv_cell(const std::string& v) { return csv_quote(v); }
std::string csv_cell(const char* v) { return csv_quote(v); }
std::string csv_cell(bool v) { return v ? "1" : "0"; }
std::string csv_cell(double v) { return fmt_double(v); }
template <class T>
    requires std::integral<T>
std::string csv_cell(T v) {
    return std::to_string(v);
}

class Csv {
public:
    explicit Csv(std::string header) : text_(std::move(header)) { text_ += '\n'; }

    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((text_ += (first ? "" : ","), text_ += csv_cell(cells), first = false), ...);
        text_ += '\n';
    }

    std::string str() && { return std::move(text_); }

private:
    std::string text_;
};

// ---------------------------------------------------------------------------
// Campaign artifacts: report.json and tables/*.csv depend only on (config,
// seed); manifest.json additionally records the environment (jobs, wall
// clock, timestamp) and the derived replicate seeds.

class CampaignWriter {
public:
    CampaignWriter(std::string command, ordered_json config, std::uint64_t seed,
                   std::uint64_t replicates, unsigned jobs, std::string out_dir)
        : command_(std::move(command)),
          config_(std::move(config)),
          seed_(seed),
          replicates_(replicates),
          jobs_(jobs),
          dir_(std::move(out_dir)),
          hash_(hex64(fnv1a64(config_.dump()))),
          start_(std::chrono::steady_clock::now()) {}

    const std::string& config_hash() const { return hash_; }

    void table(const std::string& name, std::string csv) {
        tables_.emplace_back(name, std::move(csv));
    }

    /// Full report with the config header prepended to the payload.
    ordered_json report(const ordered_json& payload) const {
        ordered_json out;
        out["command"] = command_;
        out["version"] = kVersion;
        out["config"] = config_;
        out["config_hash"] = hash_;
        out["seed"] = seed_;
        for (auto it = payload.begin(); it != payload.end(); ++it)
            out[it.key()] = *it;
        return out;
    }

    void write(const ordered_json& full_report) const {
        if (dir_.empty())
            return;
        namespace fs = std::filesystem;
        const fs::path dir(dir_);
        write_text(dir / "report.json", full_report.dump(2) + "\n");

        ordered_json table_paths = ordered_json::array();
        for (const auto& [name, csv] : tables_) {
            write_text(dir / "tables" / (name + ".csv"), csv);
            table_paths.push_back("tables/" + name + ".csv");
        }

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        ordered_json manifest;
        manifest["command"] = command_;
        manifest["version"] = kVersion;
        manifest["generated_at"] = now_utc();
        manifest["config"] = config_;
        manifest["config_hash"] = hash_;
        manifest["seed"] = seed_;
        manifest["seed_scheme"] =
            "replicate i draws from mt19937_64 seeded with "
            "splitmix64(seed + 0x9E3779B97F4A7C15 * (i + 1))";
        manifest["replicates"] = replicates_;
        ordered_json seeds = ordered_json::array();
        for (std::uint64_t i = 0; i < replicates_ && i < 64; ++i)
            seeds.push_back(replicate_seed(seed_, i));
        manifest["replicate_seeds"] = std::move(seeds);
        manifest["jobs"] = jobs_;
        manifest["wall_seconds"] = wall;
        ordered_json files;
        files["report"] = "report.json";
        files["tables"] = std::move(table_paths);
        manifest["files"] = std::move(files);
        write_text(dir / "manifest.json", manifest.dump(2) + "\n");
        std::printf("wrote %s\n", dir.string().c_str());
    }

private:
    std::string command_;
    ordered_json config_;
    std::uint64_t seed_;
    std::uint64_t replicates_;
    unsigned jobs_;
    std::string dir_;
    std::string hash_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, std::string>> tables_;
};

// ---------------------------------------------------------------------------
// JSON converters.

ordered_json gates_json(const std::vector<GateResult>& gates) {
    ordered_json arr = ordered_json::array();
    for (const auto& g : gates)
        arr.push_back({{"name", g.name},
                       {"pass", g.pass},
                       {"value", g.value},
                       {"threshold", g.threshold}});
    return arr;
}

ordered_json fit_json(const PointFitReport& fit) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : fit.rows)
        rows.push_back({{"row", r.row},
                        {"events", r.events},
                        {"cells", r.cells},
                        {"count_mean", r.count_mean},
                        {"count_mean_se", r.count_mean_se},
                        {"count_var", r.count_var},
                        {"count_var_se", r.count_var_se},
                        {"count_histogram", r.count_histogram},
                        {"chi2_stat", r.chi2_stat},
                        {"chi2_df", r.chi2_df},
                        {"chi2_p", r.chi2_p},
                        {"gap_count", r.gap_count},
                        {"gap_mean", r.gap_mean},
                        {"gap_mean_se", r.gap_mean_se},
                        {"ks_stat", r.ks_stat},
                        {"ks_p", r.ks_p}});
    ordered_json cross = ordered_json::array();
    for (const auto& c : fit.cross)
        cross.push_back({{"row_a", c.row_a},
                         {"row_b", c.row_b},
                         {"covariance", c.covariance},
                         {"se", c.se}});
    return {{"rate", fit.rate},
            {"alpha", fit.alpha},
            {"window", {fit.window_lo, fit.window_hi}},
            {"replicates", fit.replicates},
            {"rows", std::move(rows)},
            {"cross", std::move(cross)}};
}

void print_gates(const std::vector<GateResult>& gates) {
    for (const auto& g : gates)
        std::printf("[%s] %-44s value=%-14.6g threshold=%.6g\n",
                    g.pass ? "PASS" : "FAIL", g.name.c_str(), g.value, g.threshold);
}

int verdict(bool pass) {
    std::printf("VERDICT: %s\n", pass ? "pass" : "reject");
    return pass ? kExitPass : kExitReject;
}

// ---------------------------------------------------------------------------
// Shared option block; 0 / NaN / kUnsetU32 mean "use the command default".

struct Cli {
    std::string id;
    std::string out;
    std::string word;
    std::string input;
    std::string trace_path;
    bool trace = false;

    std::uint64_t n = 0;
    std::uint64_t ell = 0;
    std::uint32_t k = kUnsetU32;
    double c = kUnsetF;
    double w = kUnsetF;
    double alpha = kUnsetF;
    std::uint64_t reps = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    std::size_t enum_limit = kDefaultEnumLimit;
    std::uint64_t words = 0;
    std::uint64_t max_len = 0;
    std::uint32_t campaigns = 0;
};

// ---------------------------------------------------------------------------
// rsk: word -> insertion/recording pair dump.

int run_rsk(const Cli& cli) {
    ordered_json config;
    std::vector<double> word;
    bool seeded = false;
    if (!cli.word.empty()) {
        config["source"] = "word";
        word = parse_letters(cli.word, "rsk --word");
    } else if (!cli.input.empty()) {
        config["source"] = "file";
        config["input"] = cli.input;
        word = parse_letters(slurp(cli.input), "rsk input file");
    } else {
        config["source"] = "generated";
        config["n"] = cli.n;
        config["seed"] = cli.seed;
        word = generated_letters(cli.n, cli.seed);
        seeded = true;
    }
    if (cli.k != kUnsetU32)
        config["k"] = cli.k;

    const RskResult result = rsk(word);

    ordered_json out;
    out["command"] = "rsk";
    out["version"] = kVersion;
    out["config"] = config;
    out["config_hash"] = hex64(fnv1a64(config.dump()));
    if (seeded)
        out["seed"] = cli.seed;
    out["letters"] = word.size();
    out["word"] = word;
    out["shape"] = result.shape().rows;
    out["P"] = result.P.rows();
    out["Q"] = result.Q.rows();

    if (cli.k != kUnsetU32) {
        BottomRows state(cli.k);
        ordered_json labels = ordered_json::array();
        for (double a : word) {
            const std::uint32_t label = state.insert(a);
            labels.push_back(label == BottomRows::beyond ? cli.k + 1 : label);
        }
        ordered_json rows = ordered_json::array();
        for (std::uint32_t y = 0; y <= cli.k; ++y)
            rows.push_back(state.row(y));
        out["bottom_rows"] = std::move(rows);
        out["labels"] = std::move(labels);
    }

    const std::string text = out.dump(2) + "\n";
    if (cli.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text(cli.out, text);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// grow: Plancherel growth trajectory.

int run_grow(const Cli& cli) {
    ordered_json config;
    config["n"] = cli.n;
    config["seed"] = cli.seed;
    config["enum_limit"] = cli.enum_limit;

    Rng rng = make_replicate_rng(cli.seed, 0);
    YoungDiagram mu;
    std::vector<std::uint32_t> trace;
    if (cli.trace)
        trace.reserve(cli.n);
    for (std::uint64_t i = 0; i < cli.n; ++i) {
        const std::size_t row = transition_step(mu, rng, cli.enum_limit);
        if (cli.trace)
            trace.push_back(static_cast<std::uint32_t>(row));
    }

    ordered_json out;
    out["command"] = "grow";
    out["version"] = kVersion;
    out["config"] = config;
    out["config_hash"] = hex64(fnv1a64(config.dump()));
    out["seed"] = cli.seed;
    out["boxes"] = mu.box_count();
    out["shape"] = mu.rows;
    if (cli.trace)
        out["trace"] = trace;

    const std::string text = out.dump(2) + "\n";
    if (cli.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text(cli.out, text);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// hammersley: multi-line particle process run.

int run_hammersley(const Cli& cli) {
    const std::uint32_t k = cli.k == kUnsetU32 ? 0 : cli.k;
    ordered_json config;
    std::vector<SpaceTimePoint> points;
    bool seeded = false;
    if (!cli.input.empty()) {
        config["source"] = "file";
        config["input"] = cli.input;
        const std::vector<double> values = parse_letters(slurp(cli.input), "hammersley input");
        if (values.size() % 2 != 0)
            throw std::invalid_argument("hammersley: input must hold x t pairs");
        points.reserve(values.size() / 2);
        for (std::size_t i = 0; i < values.size(); i += 2)
            points.push_back({values[i], values[i + 1]});
    } else {
        config["source"] = "generated";
        config["n"] = cli.n;
        config["seed"] = cli.seed;
        seeded = true;
        const std::vector<double> letters = generated_letters(cli.n, cli.seed);
        points.reserve(letters.size());
        for (std::size_t i = 0; i < letters.size(); ++i)
            points.push_back({letters[i], double(i + 1)});
    }
    config["k"] = k;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].t > points[i - 1].t))
            throw std::invalid_argument("hammersley: driving times must strictly increase");

    const MultiLineRun run = run_multiline(points, k);

    ordered_json lines = ordered_json::array();
    ordered_json events = ordered_json::array();
    ordered_json corners = ordered_json::array();
    for (std::uint32_t y = 0; y <= k; ++y) {
        lines.push_back(run.lines[y].positions());
        events.push_back(run.traces[y].events.size());
        corners.push_back(run.traces[y].corners.size());
    }

    ordered_json out;
    out["command"] = "hammersley";
    out["version"] = kVersion;
    out["config"] = config;
    out["config_hash"] = hex64(fnv1a64(config.dump()));
    if (seeded)
        out["seed"] = cli.seed;
    out["points"] = points.size();
    out["lines"] = std::move(lines);
    out["events_per_line"] = std::move(events);
    out["corners_per_line"] = std::move(corners);

    if (!cli.trace_path.empty()) {
        Csv trace("line,seq,t,x_to,x_from");
        for (std::uint32_t y = 0; y <= k; ++y) {
            std::size_t seq = 0;
            for (const LineEvent& ev : run.traces[y].events) {
                if (ev.is_jump())
                    trace.row(y, seq, ev.t, ev.x_to, *ev.x_from);
                else
                    trace.row(y, seq, ev.t, ev.x_to, "");
                ++seq;
            }
        }
        write_text(cli.trace_path, std::move(trace).str());
    }

    const std::string text = out.dump(2) + "\n";
    if (cli.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text(cli.out, text);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// verify: statistical and exact verification campaigns.

void point_fit_tables(CampaignWriter& writer, const PointFitReport& fit,
                      const std::vector<GateResult>& gates, std::uint64_t n,
                      std::uint64_t reps, std::uint64_t seed) {
    const std::string& hash = writer.config_hash();

    Csv tests("row,statistic,value,p_value,df,n,reps,seed,config_hash");
    for (const auto& r : fit.rows) {
        tests.row(r.row, "count_chi2", r.chi2_stat, r.chi2_p, r.chi2_df, n, reps, seed, hash);
        tests.row(r.row, "spacing_ks", r.ks_stat, r.ks_p, "", n, reps, seed, hash);
    }
    writer.table("tests", std::move(tests).str());

    Csv counts("row,count,cells,expected,n,reps,seed,config_hash");
    for (const auto& r : fit.rows) {
        for (std::size_t v = 0; v < r.count_histogram.size(); ++v) {
            const double expected =
                double(r.cells) *
                std::exp(-fit.rate + double(v) * std::log(fit.rate) - std::lgamma(double(v) + 1));
            counts.row(r.row, v, r.count_histogram[v], expected, n, reps, seed, hash);
        }
    }
    writer.table("counts", std::move(counts).str());

    if (!fit.cross.empty()) {
        Csv cross("row_a,row_b,covariance,se,n,reps,seed,config_hash");
        for (const auto& c : fit.cross)
            cross.row(c.row_a, c.row_b, c.covariance, c.se, n, reps, seed, hash);
        writer.table("cross", std::move(cross).str());
    }

    Csv gate_rows("name,value,threshold,pass,n,reps,seed,config_hash");
    for (const auto& g : gates)
        gate_rows.row(g.name, g.value, g.threshold, g.pass, n, reps, seed, hash);
    writer.table("gates", std::move(gate_rows).str());
}

int verify_poisson(const Cli& cli) {
    PoissonVerifyConfig cfg;
    if (cli.n) cfg.n = cli.n;
    if (cli.k != kUnsetU32) cfg.k = cli.k;
    if (!std::isnan(cli.c)) cfg.c = cli.c;
    if (cli.reps) cfg.reps = cli.reps;
    if (!std::isnan(cli.alpha)) cfg.alpha = cli.alpha;
    cfg.seed = cli.seed;
    cfg.jobs = cli.jobs;

    ordered_json config{{"id", "poisson"}, {"n", cfg.n},       {"k", cfg.k},
                        {"c", cfg.c},      {"reps", cfg.reps}, {"alpha", cfg.alpha}};
    CampaignWriter writer("verify poisson", std::move(config), cfg.seed, cfg.reps,
                          cfg.jobs, cli.out);

    const PoissonVerifyReport report = poisson_experiment(cfg);

    ordered_json payload;
    payload["fit"] = fit_json(report.fit);
    payload["gates"] = gates_json(report.gates);
    payload["pass"] = report.pass();
    point_fit_tables(writer, report.fit, report.gates, cfg.n, cfg.reps, cfg.seed);
    writer.write(writer.report(payload));
    print_gates(report.gates);
    return verdict(report.pass());
}

int verify_local(const Cli& cli, bool insertion_side) {
    LocalConfig cfg;
    if (cli.n) cfg.n = cli.n;
    if (cli.k != kUnsetU32) cfg.k = cli.k;
    if (!std::isnan(cli.c)) cfg.c = cli.c;
    if (!std::isnan(cli.w)) cfg.w = cli.w;
    if (cli.reps) cfg.reps = cli.reps;
    if (!std::isnan(cli.alpha)) cfg.alpha = cli.alpha;
    cfg.seed = cli.seed;
    cfg.jobs = cli.jobs;

    const std::string id = insertion_side ? "localP" : "localQ";
    ordered_json config{{"id", id},   {"n", cfg.n},       {"k", cfg.k},
                        {"c", cfg.c}, {"reps", cfg.reps}, {"alpha", cfg.alpha}};
    if (insertion_side)
        config["w"] = cfg.w;
    CampaignWriter writer("verify " + id, std::move(config), cfg.seed, cfg.reps,
                          cfg.jobs, cli.out);

    const LocalReport report =
        insertion_side ? local_p_experiment(cfg) : local_q_experiment(cfg);

    ordered_json payload;
    payload["rate"] = report.rate;
    payload["max_point"] = report.max_point;
    payload["points_above_zero"] = report.points_above_zero;
    payload["fit"] = fit_json(report.fit);
    payload["gates"] = gates_json(report.gates);
    payload["pass"] = report.pass();
    point_fit_tables(writer, report.fit, report.gates, cfg.n, cfg.reps, cfg.seed);
    writer.write(writer.report(payload));
    print_gates(report.gates);
    return verdict(report.pass());
}

int verify_tvd(const Cli& cli) {
    IndependenceConfig cfg;
    if (cli.n) cfg.n = cli.n;
    if (cli.ell) cfg.ell = cli.ell;
    if (cli.k != kUnsetU32) cfg.k = cli.k;
    if (cli.reps) cfg.reps = cli.reps;
    cfg.seed = cli.seed;
    cfg.jobs = cli.jobs;

    ordered_json config{{"id", "tvd"},       {"n", cfg.n},
                        {"ell", cfg.ell},    {"k", cfg.k},
                        {"reps", cfg.reps},  {"mode", "labels"},
                        {"side", "growth"},  {"bootstrap", cfg.bootstrap}};
    CampaignWriter writer("verify tvd", std::move(config), cfg.seed, cfg.reps,
                          cfg.jobs, cli.out);

    const TVDEstimate est = independence_experiment(cfg);
    const double baseline =
        std::isfinite(est.analytic_baseline) ? est.analytic_baseline : est.baseline;

    std::vector<GateResult> gates;
    GateResult bound;
    bound.name = "tvd within absolute bound";
    bound.value = est.value;
    bound.threshold = 0.02 + baseline;
    bound.pass = est.value < bound.threshold;
    gates.push_back(bound);
    const bool pass = bound.pass;

    ordered_json payload;
    payload["estimate"] = {{"value", est.value},
                           {"lo", est.lo},
                           {"hi", est.hi},
                           {"bootstrap_se", est.bootstrap_se},
                           {"baseline", est.baseline},
                           {"baseline_se", est.baseline_se},
                           {"analytic_baseline", est.analytic_baseline},
                           {"support", est.support},
                           {"replicates", est.replicates}};
    payload["gates"] = gates_json(gates);
    payload["pass"] = pass;

    Csv table("value,lo,hi,bootstrap_se,baseline,baseline_se,analytic_baseline,support,n,ell,k,reps,seed,config_hash");
    table.row(est.value, est.lo, est.hi, est.bootstrap_se, est.baseline,
              est.baseline_se, est.analytic_baseline, est.support, cfg.n, cfg.ell,
              cfg.k, cfg.reps, cfg.seed, writer.config_hash());
    writer.table("estimate", std::move(table).str());
    writer.write(writer.report(payload));
    print_gates(gates);
    return verdict(pass);
}

int verify_s_table(const Cli& cli) {
    STableVerifyConfig cfg;
    if (cli.k != kUnsetU32) cfg.K = cli.k;
    if (cli.n) cfg.n_max = cli.n;
    cfg.enum_limit = cli.enum_limit;

    ordered_json config{{"id", "s_table"},
                        {"K", cfg.K},
                        {"n_max", cfg.n_max},
                        {"enum_limit", cfg.enum_limit}};
    CampaignWriter writer("verify s_table", std::move(config), 0, 0, 1, cli.out);

    const STableVerifyReport report = s_table_experiment(cfg);

    std::vector<GateResult> gates;
    auto exact_gate = [&](const char* name, bool ok) {
        GateResult g;
        g.name = name;
        g.value = ok ? 1 : 0;
        g.threshold = 1;
        g.pass = ok;
        gates.push_back(g);
    };
    exact_gate("row probabilities weakly decreasing", report.all_monotone);
    exact_gate("s bounded by (K+1)/sqrt(n)", report.all_bounded);
    exact_gate("s weakly decreasing in n", report.s_decreasing);

    ordered_json table = ordered_json::array();
    Csv s_csv("n,s,s_decimal,bound_holds,monotone,K,config_hash");
    Csv row_csv("n,row,probability,decimal,K,config_hash");
    for (const STableRow& row : report.table) {
        ordered_json probs = ordered_json::array();
        for (std::size_t r = 0; r < row.row_prob.size(); ++r) {
            probs.push_back(row.row_prob[r].get_str());
            row_csv.row(row.n, r, row.row_prob[r].get_str(), row.row_prob[r].get_d(),
                        cfg.K, writer.config_hash());
        }
        table.push_back({{"n", row.n},
                         {"s", row.s.get_str()},
                         {"s_decimal", row.s.get_d()},
                         {"row_prob", std::move(probs)},
                         {"bound_holds", row.bound_holds()},
                         {"monotone", row.monotone()}});
        s_csv.row(row.n, row.s.get_str(), row.s.get_d(), row.bound_holds(),
                  row.monotone(), cfg.K, writer.config_hash());
    }

    ordered_json payload;
    payload["table"] = std::move(table);
    payload["all_monotone"] = report.all_monotone;
    payload["all_bounded"] = report.all_bounded;
    payload["s_decreasing"] = report.s_decreasing;
    payload["gates"] = gates_json(gates);
    payload["pass"] = report.pass();

    writer.table("s_table", std::move(s_csv).str());
    writer.table("row_probs", std::move(row_csv).str());
    writer.write(writer.report(payload));
    print_gates(gates);
    return verdict(report.pass());
}

int verify_exp_tail(const Cli& cli) {
    ExpTailConfig cfg;
    if (cli.n) cfg.n = cli.n;
    if (cli.reps) cfg.reps = cli.reps;
    if (!std::isnan(cli.alpha)) cfg.alpha = cli.alpha;
    cfg.seed = cli.seed;
    cfg.jobs = cli.jobs;

    ordered_json config{{"id", "exp_tail"},
                        {"n", cfg.n},
                        {"reps", cfg.reps},
                        {"alpha", cfg.alpha}};
    CampaignWriter writer("verify exp_tail", std::move(config), cfg.seed, cfg.reps,
                          cfg.jobs, cli.out);

    const ExpTailReport report = exp_tail_experiment(cfg);

    ordered_json payload;
    payload["fit"] = {{"count", report.fit.count},
                      {"mean", report.fit.mean},
                      {"mean_se", report.fit.mean_se},
                      {"min", report.fit.min},
                      {"ks_stat", report.fit.ks_stat},
                      {"ks_p", report.fit.ks_p},
                      {"alpha", report.fit.alpha}};
    payload["gates"] = gates_json(report.gates);
    payload["pass"] = report.pass();

    Csv stats("count,mean,mean_se,min,ks_stat,ks_p,n,reps,seed,config_hash");
    stats.row(report.fit.count, report.fit.mean, report.fit.mean_se, report.fit.min,
              report.fit.ks_stat, report.fit.ks_p, cfg.n, cfg.reps, cfg.seed,
              writer.config_hash());
    writer.table("stats", std::move(stats).str());
    Csv gate_rows("name,value,threshold,pass,n,reps,seed,config_hash");
    for (const auto& g : report.gates)
        gate_rows.row(g.name, g.value, g.threshold, g.pass, cfg.n, cfg.reps, cfg.seed,
                      writer.config_hash());
    writer.table("gates", std::move(gate_rows).str());
    writer.write(writer.report(payload));
    print_gates(report.gates);
    return verdict(report.pass());
}

int verify_hammersley_equiv(const Cli& cli) {
    HammersleyEquivConfig cfg;
    if (cli.words) cfg.words = cli.words;
    if (cli.max_len) cfg.max_len = cli.max_len;
    if (cli.k != kUnsetU32) cfg.k = cli.k;
    cfg.seed = cli.seed;

    ordered_json config{{"id", "hammersley_equiv"},
                        {"words", cfg.words},
                        {"max_len", cfg.max_len},
                        {"k", cfg.k}};
    CampaignWriter writer("verify hammersley_equiv", std::move(config), cfg.seed,
                          cfg.words, 1, cli.out);

    const HammersleyEquivReport report = hammersley_equiv_experiment(cfg);

    std::vector<GateResult> gates;
    GateResult g;
    g.name = "all trajectories equal";
    g.value = double(report.words_checked);
    g.threshold = double(cfg.words);
    g.pass = report.all_equal;
    gates.push_back(g);

    ordered_json payload;
    payload["words_checked"] = report.words_checked;
    payload["all_equal"] = report.all_equal;
    if (report.first_failure) {
        payload["first_failure"] = {{"word_index", report.first_failure->word_index},
                                    {"step", report.first_failure->step},
                                    {"line", report.first_failure->line}};
    } else {
        payload["first_failure"] = nullptr;
    }
    payload["gates"] = gates_json(gates);
    payload["pass"] = report.pass();

    Csv summary("words_checked,all_equal,failure_word,failure_step,failure_line,k,max_len,seed,config_hash");
    if (report.first_failure)
        summary.row(report.words_checked, report.all_equal,
                    report.first_failure->word_index, report.first_failure->step,
                    report.first_failure->line, cfg.k, cfg.max_len, cfg.seed,
                    writer.config_hash());
    else
        summary.row(report.words_checked, report.all_equal, "", "", "", cfg.k,
                    cfg.max_len, cfg.seed, writer.config_hash());
    writer.table("summary", std::move(summary).str());
    writer.write(writer.report(payload));
    print_gates(gates);
    return verdict(report.pass());
}

int run_verify(const Cli& cli) {
    if (cli.id == "poisson") return verify_poisson(cli);
    if (cli.id == "localQ") return verify_local(cli, false);
    if (cli.id == "localP") return verify_local(cli, true);
    if (cli.id == "tvd") return verify_tvd(cli);
    if (cli.id == "s_table") return verify_s_table(cli);
    if (cli.id == "exp_tail") return verify_exp_tail(cli);
    if (cli.id == "hammersley_equiv") return verify_hammersley_equiv(cli);
    throw std::invalid_argument("verify: unknown id '" + cli.id + "'");
}

// ---------------------------------------------------------------------------
// calibrate: null-model level and alternative power for one pipeline.

int run_calibrate(const Cli& cli) {
    CalibrationConfig cfg;
    cfg.id = cli.id;
    if (cli.campaigns) cfg.campaigns = cli.campaigns;
    if (cli.reps) cfg.reps = cli.reps;
    if (!std::isnan(cli.alpha)) cfg.alpha = cli.alpha;
    cfg.seed = cli.seed;
    cfg.jobs = cli.jobs;

    ordered_json config{{"id", cfg.id},
                        {"campaigns", cfg.campaigns},
                        {"reps", cfg.reps},
                        {"alpha", cfg.alpha}};
    CampaignWriter writer("calibrate " + cfg.id, std::move(config), cfg.seed,
                          cfg.campaigns, cfg.jobs, cli.out);

    const CalibrationReport report = calibrate(cfg);

    ordered_json campaigns = ordered_json::array();
    Csv table("campaign,campaign_seed,null_pass,alt_rejected,id,reps,seed,config_hash");
    for (std::uint32_t i = 0; i < cfg.campaigns; ++i) {
        const std::uint64_t campaign_seed = replicate_seed(cfg.seed, i);
        campaigns.push_back({{"campaign", i},
                             {"seed", campaign_seed},
                             {"null_pass", bool(report.null_results[i])},
                             {"alt_rejected", bool(report.alt_results[i])}});
        table.row(i, campaign_seed, bool(report.null_results[i]),
                  bool(report.alt_results[i]), cfg.id, cfg.reps, cfg.seed,
                  writer.config_hash());
    }

    ordered_json payload;
    payload["null_passes"] = report.null_passes;
    payload["alt_rejections"] = report.alt_rejections;
    payload["null_pass_rate"] = report.null_pass_rate();
    payload["campaigns"] = std::move(campaigns);
    payload["pass"] = report.pass();

    writer.table("campaigns", std::move(table).str());
    writer.write(writer.report(payload));

    std::printf("null non-rejections: %u/%u (%.1f%%)\n", report.null_passes,
                cfg.campaigns, 100.0 * report.null_pass_rate());
    std::printf("alternative rejections: %u/%u\n", report.alt_rejections, cfg.campaigns);
    return verdict(report.pass());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robinson-Schensted / Plancherel / Hammersley simulation harness"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Cli cli;

    CLI::App* rsk_cmd = app.add_subcommand(
        "rsk", "Insert a word and dump the insertion/recording pair as JSON");
    rsk_cmd->add_option("--word", cli.word, "Comma- or whitespace-separated letters");
    rsk_cmd->add_option("--input", cli.input, "Word file (whitespace-separated decimals)");
    rsk_cmd->add_option("--n", cli.n, "Generate this many distinct uniform letters");
    rsk_cmd->add_option("--seed", cli.seed, "Master seed for generated letters");
    rsk_cmd->add_option("--k,--K", cli.k, "Also dump truncated bottom rows 0..k");
    rsk_cmd->add_option("--out", cli.out, "Write JSON here instead of stdout");

    CLI::App* grow_cmd = app.add_subcommand(
        "grow", "Run the Plancherel growth process and dump the final diagram");
    grow_cmd->add_option("--n", cli.n, "Number of growth steps")->default_val(1000);
    grow_cmd->add_option("--seed", cli.seed, "Master seed");
    grow_cmd->add_option("--enum-limit", cli.enum_limit,
                         "Exact transition weights up to this size");
    grow_cmd->add_flag("--trace", cli.trace, "Include the per-step row choices");
    grow_cmd->add_option("--out", cli.out, "Write JSON here instead of stdout");

    CLI::App* ham_cmd = app.add_subcommand(
        "hammersley", "Drive the multi-line Hammersley process and dump the lines");
    ham_cmd->add_option("--input", cli.input,
                        "Point file: whitespace-separated x t pairs, t strictly increasing");
    ham_cmd->add_option("--n", cli.n, "Generate this many (uniform letter, index) points")
        ->default_val(100);
    ham_cmd->add_option("--k,--K", cli.k, "Highest line index to run (default 0)");
    ham_cmd->add_option("--seed", cli.seed, "Master seed for generated points");
    ham_cmd->add_option("--trace", cli.trace_path, "Write the line-event CSV here");
    ham_cmd->add_option("--out", cli.out, "Write JSON here instead of stdout");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Run one verification campaign and gate on its acceptance checks");
    verify_cmd
        ->add_option("id", cli.id,
                     "poisson | localQ | localP | tvd | s_table | exp_tail | hammersley_equiv")
        ->required()
        ->check(CLI::IsMember({"poisson", "localQ", "localP", "tvd", "s_table",
                               "exp_tail", "hammersley_equiv"}));
    verify_cmd->add_option("--n,--nmax", cli.n, "Problem size (s_table: largest n)");
    verify_cmd->add_option("--ell", cli.ell, "Observation window length (tvd)");
    verify_cmd->add_option("--k,--K", cli.k, "Highest row index (s_table: K)");
    verify_cmd->add_option("--c", cli.c, "Analysis half-window (integer)");
    verify_cmd->add_option("--w", cli.w, "Insertion-side level in (0, 1] (localP)");
    verify_cmd->add_option("--reps", cli.reps, "Replicates");
    verify_cmd->add_option("--seed", cli.seed, "Master seed");
    verify_cmd->add_option("--alpha", cli.alpha, "Family-wise significance level");
    verify_cmd->add_option("--jobs", cli.jobs, "Worker threads (0 = all cores)");
    verify_cmd->add_option("--enum-limit", cli.enum_limit,
                           "Partition enumeration bound (s_table)");
    verify_cmd->add_option("--words", cli.words, "Word count (hammersley_equiv)");
    verify_cmd->add_option("--len", cli.max_len, "Longest word (hammersley_equiv)");
    verify_cmd->add_option("--out", cli.out,
                           "Campaign directory (manifest.json, report.json, tables/)");

    CLI::App* cal_cmd = app.add_subcommand(
        "calibrate", "Run a pipeline on its null model and a power alternative");
    cal_cmd->add_option("id", cli.id, "poisson | localQ | localP | exp_tail | tvd")
        ->required()
        ->check(CLI::IsMember({"poisson", "localQ", "localP", "exp_tail", "tvd"}));
    cal_cmd->add_option("--campaigns", cli.campaigns, "Independent campaigns")
        ->default_val(100);
    cal_cmd->add_option("--reps", cli.reps, "Replicates per campaign (0 = pipeline default)");
    cal_cmd->add_option("--seed", cli.seed, "Master seed");
    cal_cmd->add_option("--alpha", cli.alpha, "Per-campaign significance level");
    cal_cmd->add_option("--jobs", cli.jobs, "Worker threads (0 = all cores)");
    cal_cmd->add_option("--out", cli.out,
                        "Campaign directory (manifest.json, report.json, tables/)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (rsk_cmd->parsed()) return run_rsk(cli);
        if (grow_cmd->parsed()) return run_grow(cli);
        if (ham_cmd->parsed()) return run_hammersley(cli);
        if (verify_cmd->parsed()) return run_verify(cli);
        if (cal_cmd->parsed()) return run_calibrate(cli);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rsklab: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
