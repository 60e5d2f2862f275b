#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <thread>

#include <json.hpp>

#include "singulab/classify.hpp"
#include "singulab/cli.hpp"
#include "singulab/error.hpp"

namespace singulab::cli {

using nlohmann::json;

std::vector<std::string> sweep_csv_header() {
    return {"schema_version", "row",     "N",        "q",      "m",        "seed",
            "scalar",         "epsilon", "r_end",    "termination", "r_star", "u_end",
            "p_end",          "regime",  "estimate", "status", "error",    "manifest_sha256"};
}

namespace {

SweepRow compute_row(const SweepConfig& cfg, std::size_t index, double q, double m, double scalar) {
    SweepRow row;
    row.index = index;
    row.q = q;
    row.m = m;
    row.scalar = scalar;
    try {
        const Params p = Params::make(cfg.N, q, m);
        check_seed_regime(p, cfg.seed);
        const Trajectory t = grow(p, {cfg.seed, scalar, cfg.epsilon}, cfg.r_end, cfg.integrate);
        row.ok = true;
        row.termination = to_string(t.termination.kind);
        row.r_star = t.termination.r_star;
        row.u_end = t.samples.back().u;
        row.p_end = t.samples.back().p;
        try {
            const Regime reg = classify_origin(t, p);
            row.regime = to_string(reg.kind);
            row.estimate = reg.estimate;
            row.has_regime = true;
        } catch (const Error& e) {
            row.error = std::string("classification: ") + e.what();
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

std::string status(const SweepRow& r) {
    if (!r.ok) return "failed";
    return r.has_regime ? "ok" : "unclassified";
}

json row_json(const SweepConfig& cfg, const SweepRow& r, const std::string& sha) {
    json j = {{"schema_version", kSweepSchemaVersion},
              {"row", r.index},
              {"N", cfg.N},
              {"q", r.q},
              {"m", r.m},
              {"seed", to_string(cfg.seed)},
              {"scalar", r.scalar},
              {"status", status(r)},
              {"manifest_sha256", sha}};
    if (r.ok) {
        j["termination"] = r.termination;
        j["r_star"] = r.r_star;
        j["u_end"] = r.u_end;
        j["p_end"] = r.p_end;
    }
    if (r.has_regime) j["regime"] = {{"kind", r.regime}, {"estimate", r.estimate}, {"provenance", "fitted"}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.q.empty() || cfg.m.empty() || cfg.scalar.empty()) throw DomainError("sweep grid is empty");
    if (cfg.jobs < 1) throw DomainError("--jobs must be >= 1");
    cfg.integrate.validate();
    const auto started = std::chrono::steady_clock::now();
    const std::string started_at = utc_now();

    struct Cell {
        double q, m, s;
    };
    std::vector<Cell> cells;
    for (double q : cfg.q)
        for (double m : cfg.m)
            for (double s : cfg.scalar) cells.push_back({q, m, s});

    SweepResult res;
    res.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
            res.rows[i] = compute_row(cfg, i, cells[i].q, cells[i].m, cells[i].s);
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cells.size());
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::map<std::string, int> terminations;
    int failed = 0;
    for (const auto& r : res.rows) {
        if (r.ok) ++terminations[r.termination];
        else ++failed;
    }
    const auto& o = cfg.integrate;
    json manifest = {
        {"tool", "singulab"},
        {"tool_version", kToolVersion},
        {"command", "sweep"},
        {"schema_version", kSweepSchemaVersion},
        {"params",
         {{"N", cfg.N},
          {"q", cfg.q},
          {"m", cfg.m},
          {"scalar", cfg.scalar},
          {"seed", to_string(cfg.seed)},
          {"epsilon", cfg.epsilon},
          {"r_end", cfg.r_end}}},
        {"tolerances",
         {{"rel_tol", o.rel_tol},
          {"abs_tol", o.abs_tol},
          {"max_steps", o.max_steps},
          {"u_max", o.u_max},
          {"u_min", o.u_min},
          {"p_max", o.p_max},
          {"max_log_step", o.max_log_step}}},
        {"rows", res.rows.size()},
        {"failed", failed},
        {"terminations", terminations},
    };
    // Everything above is deterministic; the hash covers only that part.
    res.manifest_sha256 = sha256_hex(manifest.dump());
    manifest["manifest_sha256"] = res.manifest_sha256;
    manifest["runtime"] = {
        {"jobs", cfg.jobs},
        {"started_at", started_at},
        {"wall_clock_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()}};
    res.manifest_json = manifest.dump(2) + "\n";

    res.csv = csv_line(sweep_csv_header());
    for (const auto& r : res.rows) {
        res.csv += csv_line({std::to_string(kSweepSchemaVersion), std::to_string(r.index), std::to_string(cfg.N),
                             format_double(r.q), format_double(r.m), to_string(cfg.seed),
                             format_double(r.scalar), format_double(cfg.epsilon), format_double(cfg.r_end),
                             r.ok ? r.termination : "", r.ok ? format_double(r.r_star) : "",
                             r.ok ? format_double(r.u_end) : "", r.ok ? format_double(r.p_end) : "",
                             r.regime, r.has_regime ? format_double(r.estimate) : "", status(r), r.error,
                             res.manifest_sha256});
    }

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.out_dir);
        fs::create_directories(dir / "runs");
        write_file((dir / "manifest.json").string(), res.manifest_json);
        write_file((dir / "sweep.csv").string(), res.csv);
        for (const auto& r : res.rows) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%05zu.json", r.index);
            write_file((dir / "runs" / name).string(), row_json(cfg, r, res.manifest_sha256).dump(2) + "\n");
        }
    }
    return res;
}

}  // namespace singulab::cli
