#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "singulab/classify.hpp"
#include "singulab/cli.hpp"
#include "singulab/constants.hpp"
#include "singulab/error.hpp"
#include "singulab/estimates.hpp"
#include "singulab/oracle_fd.hpp"

namespace singulab::cli {

using nlohmann::json;

namespace {

// Text output rounds to 12 significant digits; JSON and CSV keep round-trip precision.
std::string short_double(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

json closed(double v) { return {{"value", v}, {"provenance", "closed-form"}}; }
json fitted(double v) { return {{"value", v}, {"provenance", "fitted"}}; }

struct ParamFlags {
    int N = 3;
    double q = 1.5;
    double m = 1.0;

    void add(CLI::App* app) {
        app->add_option("--dim,-N", N, "space dimension N >= 2")->capture_default_str();
        app->add_option("--q", q, "gradient exponent q > 1")->required();
        app->add_option("--m", m, "gradient coefficient m > 0")->capture_default_str();
    }
    Params make() const { return Params::make(N, q, m); }
};

struct IntegrateFlags {
    IntegrateOptions o;
    void add(CLI::App* app) {
        app->add_option("--rtol", o.rel_tol, "relative tolerance")->capture_default_str();
        app->add_option("--atol", o.abs_tol, "absolute tolerance")->capture_default_str();
        app->add_option("--max-steps", o.max_steps, "step limit")->capture_default_str();
        app->add_option("--max-log-step", o.max_log_step, "cap on |d ln r| per step")->capture_default_str();
        app->add_option("--u-max", o.u_max, "blow-up threshold for u")->capture_default_str();
    }
};

std::optional<ProfileKind> profile_from_string(const std::string& s) {
    if (s == "riccati") return ProfileKind::Riccati;
    if (s == "eikonal") return ProfileKind::Eikonal;
    if (s == "emden") return ProfileKind::Emden;
    if (s == "critical-log") return ProfileKind::CriticalLog;
    return std::nullopt;
}

// Default seed radius and end radius per branch. Branches that are unstable
// when grown outward (critical-log, Hölder) are seeded further out and
// integrated inward.
std::pair<double, double> default_growth(SeedKind k) {
    switch (k) {
        case SeedKind::Regular: return {1e-6, 1.0};
        case SeedKind::WeakSingular: return {1e-5, 0.1};
        case SeedKind::StrongSingular: return {1e-6, 1e-2};
        case SeedKind::CriticalLog: return {1e-2, 1e-8};
        case SeedKind::HolderSingular: return {1e-2, 1e-7};
        case SeedKind::EikonalSingular: return {1e-5, 0.1};
    }
    return {1e-6, 1.0};
}

/// One of --seed, --profile, --state or --input.
struct SourceFlags {
    std::string seed, profile, input;
    std::vector<double> state;
    std::optional<double> eps, r_end, scalar, r_lo, r_hi;
    std::size_t samples = 400;
    std::string side = "origin";
    IntegrateFlags integ;

    void add(CLI::App* app, bool with_side) {
        auto* g = app->add_option_group("source", "trajectory source");
        g->add_option("--seed", seed,
                      "grow from a branch seed: regular, weak-singular, strong-singular, critical-log, "
                      "holder-singular, eikonal-singular");
        g->add_option("--profile", profile, "sample an exact profile: riccati, eikonal, emden, critical-log");
        g->add_option("--state", state, "integrate from r,u,u_r")->expected(3)->delimiter(',');
        g->add_option("--input", input, "trajectory CSV (r,u,u_r[,u_rr])");
        g->require_option(1);
        app->add_option("--eps", eps, "seed radius");
        app->add_option("--r-end", r_end, "end radius of the integration");
        auto* s = app->add_option("--scalar", scalar, "free scalar of the seed family");
        app->add_option("--u0", scalar, "alias of --scalar (regular, holder)")->excludes(s);
        app->add_option("--gamma", scalar, "alias of --scalar (weak-singular)")->excludes(s);
        app->add_option("--offset", scalar, "alias of --scalar (strong, critical, eikonal)")->excludes(s);
        app->add_option("--r-lo", r_lo, "profile range start");
        app->add_option("--r-hi", r_hi, "profile range end");
        app->add_option("--samples", samples, "profile sample count")->capture_default_str();
        if (with_side)
            app->add_option("--side", side, "origin, infinity or exterior")
                ->check(CLI::IsMember({"origin", "infinity", "exterior"}))
                ->capture_default_str();
        integ.add(app);
    }

    bool exterior() const { return side != "origin"; }

    Trajectory build(const Params& p) const {
        if (!seed.empty()) {
            const SeedKind k = seed_kind_from_string(seed);
            const auto [e0, r0] = default_growth(k);
            return grow(p, {k, scalar.value_or(k == SeedKind::WeakSingular ? -1.0 : 0.0), eps.value_or(e0)},
                        r_end.value_or(r0), integ.o);
        }
        if (!profile.empty()) {
            const auto k = profile_from_string(profile);
            if (!k) throw DomainError("unknown profile '" + profile + "'");
            double lo = exterior() ? 1.0 : 1e-6, hi = exterior() ? 1e5 : 1e-2;
            if (*k == ProfileKind::CriticalLog) lo = 1e-8;
            return sample_profile(*k, p, r_lo.value_or(lo), r_hi.value_or(hi), samples);
        }
        if (!state.empty()) {
            if (!r_end) throw DomainError("--state needs --r-end");
            return integrate(p, {state[0], state[1], state[2]}, *r_end, integ.o);
        }
        return read_trajectory_csv(read_file(input), p);
    }
};

json params_json(const Params& p) {
    return {{"N", p.N}, {"q", p.q}, {"m", p.m}, {"regime_tag", to_string(p.tag())}};
}

json trajectory_summary(const Trajectory& t) {
    json j = {{"direction", to_string(t.direction)},
              {"termination", to_string(t.termination.kind)},
              {"r_star", t.termination.r_star},
              {"samples", t.size()},
              {"notes", t.notes}};
    if (!t.empty()) {
        j["r_min"] = t.r_min();
        j["r_max"] = t.r_max();
        j["u_end"] = t.samples.back().u;
        j["u_r_end"] = t.samples.back().p;
    }
    return j;
}

void write_u_plot(const std::string& path, const Trajectory& t, const std::string& name) {
    PlotCurve c;
    c.name = name;
    c.x_label = "r";
    c.y_label = "u";
    for (const auto& s : t.samples) {
        c.x.push_back(s.r);
        c.y.push_back(s.u);
    }
    std::ostringstream os;
    write_plot(os, c);
    write_file(path, os.str());
}

// ---- constants ----------------------------------------------------------------

struct ConstantsCmd {
    ParamFlags pf;
    std::string format = "both";

    void add(CLI::App* app) {
        pf.add(app);
        app->add_option("--format", format, "json, text or both")
            ->check(CLI::IsMember({"json", "text", "both"}))
            ->capture_default_str();
    }

    int exec(std::ostream& out) const {
        const Params p = pf.make();
        const ConstantsBundle b = constants_bundle(p);
        json present = json::object(), absent = json::object();
        std::vector<std::pair<std::string, double>> rows;
        auto put = [&](const char* name, const std::optional<double>& v, const std::string& why) {
            if (v) {
                present[name] = closed(*v);
                rows.emplace_back(name, *v);
            } else {
                absent[name] = why;
            }
        };
        const std::string tag = to_string(p.tag());
        put("beta", b.beta, "undefined at q = 2");
        put("lambda_nmq", b.lambda_nmq, "needs N >= 3 and N/(N-1) < q < 2 (regime is " + tag + ")");
        put("lambda_nm", b.lambda_nm, "needs N >= 3 and q = N/(N-1) (regime is " + tag + ")");
        put("omega_e", b.omega_e, "");
        put("omega_E", b.omega_E, "needs N >= 3");
        put("holder_exponent", b.holder_exponent, "undefined at q = 2");
        put("holder_grad_coeff", b.holder_grad_coeff, "needs q > 2 (regime is " + tag + ")");
        put("eikonal_amplitude", b.eikonal_amplitude, "");
        put("strong_grad_coeff", b.strong_grad_coeff, "needs N >= 3 and N/(N-1) < q < 2 (regime is " + tag + ")");
        put("cap_cn", b.cap_cn, "needs N >= 3");
        if (format != "text") {
            json j = {{"params", params_json(p)}, {"constants", present}, {"absent", absent}};
            out << j.dump(2) << "\n";
        }
        if (format != "json") {
            out << "N = " << p.N << ", q = " << short_double(p.q) << ", m = " << short_double(p.m) << " ("
                << tag << ")\n";
            for (const auto& [k, v] : rows) out << "  " << std::left << std::setw(20) << k << short_double(v) << "\n";
            for (const auto& [k, v] : absent.items()) out << "  " << std::left << std::setw(20) << k << "absent: " << v.get<std::string>() << "\n";
        }
        return kOk;
    }
};

// ---- integrate ----------------------------------------------------------------

struct IntegrateCmd {
    ParamFlags pf;
    SourceFlags src;
    std::string output, plot;
    bool allow_blowup = false;

    void add(CLI::App* app) {
        pf.add(app);
        src.add(app, false);
        app->add_option("--output,-o", output, "trajectory CSV file (stdout if absent)");
        app->add_option("--plot", plot, "gnuplot data file for u(r)");
        app->add_flag("--allow-blowup", allow_blowup, "exit 0 even if the run stops before r_end");
    }

    int exec(std::ostream& out, std::ostream& err) const {
        const Params p = pf.make();
        const Trajectory t = src.build(p);
        const json summary = {{"command", "integrate"}, {"params", params_json(p)}, {"trajectory", trajectory_summary(t)}};
        if (output.empty()) {
            write_trajectory_csv(out, t);
            err << summary.dump() << "\n";
        } else {
            std::ostringstream os;
            write_trajectory_csv(os, t);
            write_file(output, os.str());
            out << summary.dump(2) << "\n";
        }
        if (!plot.empty()) write_u_plot(plot, t, "u");
        if (t.termination.kind != TerminationKind::ReachedEnd && !allow_blowup) {
            err << "integration stopped early: " << to_string(t.termination.kind) << " at r = "
                << format_double(t.termination.r_star) << "\n";
            return kNumerical;
        }
        return kOk;
    }
};

// ---- classify -----------------------------------------------------------------

struct Named {
    std::string fitted_name;
    std::optional<double> closed_form;
    std::string closed_name;
};

Named describe(RegimeKind k, const Params& p) {
    const ConstantsBundle b = constants_bundle(p);
    switch (k) {
        case RegimeKind::Removable: return {"u0_hat", std::nullopt, ""};
        case RegimeKind::EmdenType: return {"omega_hat", b.omega_E, "omega_E"};
        case RegimeKind::WeakSingular: return {"gamma_hat", std::nullopt, ""};
        case RegimeKind::StrongSingular: return {"lambda_hat", b.lambda_nmq, "lambda_nmq"};
        case RegimeKind::CriticalLog:
            return {"critical_weight_hat", b.lambda_nm ? std::optional<double>(-*b.lambda_nm) : std::nullopt,
                    "-lambda_nm"};
        case RegimeKind::HolderRegular: return {"u0_hat", std::nullopt, ""};
        case RegimeKind::EikonalType: return {"eikonal_amplitude_hat", b.eikonal_amplitude, "eikonal_amplitude"};
    }
    return {"estimate", std::nullopt, ""};
}

json fit_json(const AsymptoticFit& f) {
    return {{"model", to_string(f.model)},   {"amplitude", f.amplitude}, {"constant", f.constant},
            {"exponent", f.exponent},        {"log_power", f.log_power}, {"rms_residual", f.rms_residual},
            {"window", {f.window.r_lo, f.window.r_hi}}};
}

struct ClassifyCmd {
    ParamFlags pf;
    SourceFlags src;
    std::vector<double> window;
    double ratio = 0.3;
    std::string format = "json";

    void add(CLI::App* app) {
        pf.add(app);
        src.add(app, true);
        app->add_option("--window", window, "fit window r_lo,r_hi")->expected(2)->delimiter(',');
        app->add_option("--ratio-threshold", ratio, "max winner/runner-up rms ratio")->capture_default_str();
        app->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    }

    int exec(std::ostream& out) const {
        const Params p = pf.make();
        const Trajectory t = src.build(p);
        ClassifyThresholds th;
        th.ratio_threshold = ratio;
        if (!window.empty()) th.window = Window{window[0], window[1]};
        const Regime reg = src.exterior() ? classify_infinity(t, p, th) : classify_origin(t, p, th);
        const Named nm = describe(reg.kind, p);
        json j = {{"command", "classify"},
                  {"params", params_json(p)},
                  {"side", to_string(reg.side)},
                  {"regime", to_string(reg.kind)},
                  {"estimate", fitted(reg.estimate)},
                  {"runner_up_ratio", reg.runner_up_ratio},
                  {"fit", fit_json(reg.fit)},
                  {"trajectory", trajectory_summary(t)}};
        j["estimate"]["name"] = nm.fitted_name;
        if (nm.closed_form) {
            j["closed_form"] = closed(*nm.closed_form);
            j["closed_form"]["name"] = nm.closed_name;
            j["relative_error"] = std::abs(reg.estimate / *nm.closed_form - 1.0);
        }
        if (reg.secondary) {
            j["secondary"] = fitted(*reg.secondary);
            j["secondary"]["name"] = "holder_coeff_hat";
            if (p.q > 2.0) {
                j["secondary_closed_form"] = closed(holder_grad_coeff(p));
                j["secondary_closed_form"]["name"] = "holder_grad_coeff";
            }
        }
        json cands = json::array();
        for (const auto& c : reg.candidates) cands.push_back(fit_json(c));
        j["candidates"] = cands;
        if (format == "json") {
            out << j.dump(2) << "\n";
        } else {
            out << "regime: " << to_string(reg.kind) << " (" << to_string(reg.side) << ")\n"
                << nm.fitted_name << ": " << short_double(reg.estimate) << " (fitted)\n";
            if (nm.closed_form) out << nm.closed_name << ": " << short_double(*nm.closed_form) << " (closed-form)\n";
            if (reg.secondary) out << "holder_coeff_hat: " << short_double(*reg.secondary) << " (fitted)\n";
            out << "runner-up ratio: " << short_double(reg.runner_up_ratio) << "\n";
        }
        return kOk;
    }
};

// ---- verify -------------------------------------------------------------------

struct VerifyCmd {
    ParamFlags pf;
    SourceFlags src;
    std::string estimate, mode;
    std::vector<double> window;
    EstimateOptions eo;

    void add(CLI::App* app) {
        pf.add(app);
        src.add(app, true);
        app->add_option("--estimate", estimate, "keller-osserman, gradient, two-sided, eikonal-limit, interior-gradient")
            ->required()
            ->check(CLI::IsMember({"keller-osserman", "gradient", "two-sided", "eikonal-limit", "interior-gradient"}));
        app->add_option("--mode", mode, "gradient mode: subquadratic-origin, superquadratic-origin, exterior-decay")
            ->check(CLI::IsMember({"subquadratic-origin", "superquadratic-origin", "exterior-decay"}));
        app->add_option("--window", window, "report window r_lo,r_hi")->expected(2)->delimiter(',');
        app->add_option("--slope-tol", eo.slope_tol, "log-log trend tolerance")->capture_default_str();
        app->add_option("--limit-tol", eo.limit_tol, "relative band for limits")->capture_default_str();
    }

    int exec(std::ostream& out) const {
        const Params p = pf.make();
        const Trajectory t = src.build(p);
        EstimateOptions o = eo;
        if (!window.empty()) o.window = Window{window[0], window[1]};
        const EstimateSide side = src.exterior() ? EstimateSide::Exterior : EstimateSide::Origin;
        EstimateReport r;
        if (estimate == "keller-osserman") r = keller_osserman_report(t, p, side, o);
        else if (estimate == "two-sided") r = two_sided_report(t, p, o);
        else if (estimate == "eikonal-limit") r = eikonal_limit_report(t, p, side, o);
        else if (estimate == "interior-gradient") r = interior_gradient_report(t, p, o);
        else {
            GradientMode gm = side == EstimateSide::Exterior ? GradientMode::ExteriorDecay
                              : p.q > 2.0                    ? GradientMode::SuperquadraticOrigin
                                                             : GradientMode::SubquadraticOrigin;
            if (mode == "subquadratic-origin") gm = GradientMode::SubquadraticOrigin;
            if (mode == "superquadratic-origin") gm = GradientMode::SuperquadraticOrigin;
            if (mode == "exterior-decay") gm = GradientMode::ExteriorDecay;
            r = gradient_bound_report(t, p, gm, o);
        }
        json j = {{"command", "verify"},
                  {"params", params_json(p)},
                  {"report",
                   {{"name", r.name},
                    {"verdict", to_string(r.verdict)},
                    {"normalized_sup", r.normalized_sup},
                    {"normalized_inf", r.normalized_inf},
                    {"trend_slope", r.trend_slope},
                    {"margin", r.margin},
                    {"window", {r.window.r_lo, r.window.r_hi}},
                    {"detail", r.detail}}}};
        if (r.limit) j["report"]["limit"] = fitted(*r.limit);
        if (r.target) j["report"]["target"] = closed(*r.target);
        out << j.dump(2) << "\n";
        return kOk;
    }
};

// ---- oracle -------------------------------------------------------------------

struct OracleCmd {
    ParamFlags pf;
    bool pure_emden = false;
    double a = 0.1, b = 1.0, u0 = 0.0, tol = 1e-8;
    std::optional<double> ua, ub;
    int cells = 2000, max_newton = 60;
    std::string output, plot;

    void add(CLI::App* app) {
        pf.add(app);
        app->add_flag("--pure-emden", pure_emden, "set m = 0 and compare with -2 ln r + ln(2N-4)");
        app->add_option("--a", a, "inner radius")->capture_default_str();
        app->add_option("--b", b, "outer radius")->capture_default_str();
        app->add_option("--u0", u0, "regular family u(0) for the boundary data")->capture_default_str();
        auto* oa = app->add_option("--ua", ua, "explicit u(a)");
        auto* ob = app->add_option("--ub", ub, "explicit u(b)");
        oa->needs(ob);
        ob->needs(oa);
        app->add_option("--cells", cells, "grid cells (multiple of 4)")->capture_default_str();
        app->add_option("--newton-tol", tol, "max-norm residual tolerance")->capture_default_str();
        app->add_option("--max-newton", max_newton, "Newton iteration limit")->capture_default_str();
        app->add_option("--output,-o", output, "CSV of r,u_fd,u_ref");
        app->add_option("--plot", plot, "gnuplot data file for u_fd(r)");
    }

    int exec(std::ostream& out, std::ostream& err) const {
        const Params p = pure_emden ? Params::pure_emden(pf.N, pf.q) : pf.make();
        std::function<double(double)> ref;
        std::string ref_name;
        Trajectory shot;
        if (ua) {
            ref_name = "none";
        } else if (pure_emden) {
            if (p.N < 3) throw RegimeError("the Emden reference profile needs N >= 3");
            ref = [&](double r) { return -2.0 * std::log(r) + omega_emden(p.N); };
            ref_name = "exact-emden";
        } else {
            shot = grow(p, {SeedKind::Regular, u0, std::min(1e-6, a)}, b);
            if (shot.termination.kind != TerminationKind::ReachedEnd)
                throw NumericalError("regular shooting run stopped at r = " + format_double(shot.termination.r_star));
            ref = [&](double r) { return shot.at(r).u; };
            ref_name = "shooting";
        }
        const double A = ua ? *ua : ref(a), B = ub ? *ub : ref(b);
        if (cells % 4 != 0 || cells < 128) throw DomainError("--cells must be a multiple of 4 and >= 128");
        json j = {{"command", "oracle"}, {"params", params_json(p)}, {"a", a}, {"b", b}, {"u_a", A}, {"u_b", B},
                  {"cells", cells}, {"reference", ref_name}};
        try {
            const FdSolution fine = solve_bvp(p, a, b, A, B, cells, tol, max_newton);
            const FdSolution mid = solve_bvp(p, a, b, A, B, cells / 2, tol, max_newton);
            const FdSolution coarse = solve_bvp(p, a, b, A, B, cells / 4, tol, max_newton);
            j["newton_iterations"] = fine.newton_iterations;
            j["final_residual_norm"] = fine.final_residual_norm;
            j["residual_history"] = fine.residual_history;
            try {
                j["convergence_order"] = convergence_order(coarse, mid, fine);
            } catch (const NumericalError& e) {
                j["convergence_order"] = nullptr;
                j["convergence_note"] = e.what();
            }
            if (ref) {
                double e = 0.0;
                for (std::size_t i = 0; i < fine.r.size(); ++i) e = std::max(e, std::abs(fine.u[i] - ref(fine.r[i])));
                j["max_error"] = e;
            }
            if (!output.empty()) {
                std::ostringstream os;
                os << csv_line({"r", "u_fd", "u_r_fd", "u_ref"});
                for (std::size_t i = 0; i < fine.r.size(); ++i)
                    os << csv_line({format_double(fine.r[i]), format_double(fine.u[i]), format_double(fine.u_r[i]),
                                    ref ? format_double(ref(fine.r[i])) : ""});
                write_file(output, os.str());
            }
            if (!plot.empty()) {
                PlotCurve c{"u_fd", "r", "u", fine.r, fine.u};
                std::ostringstream os;
                write_plot(os, c);
                write_file(plot, os.str());
            }
        } catch (const NewtonDiverged& e) {
            j["error"] = e.what();
            j["newton_iterations"] = e.last_iterate().newton_iterations;
            j["residual_history"] = e.last_iterate().residual_history;
            out << j.dump(2) << "\n";
            err << "error: " << e.what() << "\n";
            return kNumerical;
        }
        out << j.dump(2) << "\n";
        return kOk;
    }
};

// ---- sweep --------------------------------------------------------------------

struct SweepCmd {
    int N = 3;
    std::string q, m = "1", scalar, seed = "regular", out_dir;
    std::optional<double> eps, r_end;
    int jobs = 1;
    bool strict = false;
    IntegrateFlags integ;

    void add(CLI::App* app) {
        app->add_option("--dim,-N", N, "space dimension")->capture_default_str();
        app->add_option("--q", q, "q values: a:step:b, list a,b,c or single value")->required();
        app->add_option("--m", m, "m values")->capture_default_str();
        app->add_option("--seed", seed, "seed family")->capture_default_str();
        auto* s = app->add_option("--scalar", scalar, "seed scalar values");
        app->add_option("--u0", scalar, "alias of --scalar")->excludes(s);
        app->add_option("--gamma", scalar, "alias of --scalar")->excludes(s);
        app->add_option("--offset", scalar, "alias of --scalar")->excludes(s);
        app->add_option("--eps", eps, "seed radius");
        app->add_option("--r-end", r_end, "end radius");
        app->add_option("--jobs,-j", jobs, "worker threads")->envname("SINGULAB_JOBS")->capture_default_str();
        app->add_option("--out", out_dir, "directory for sweep.csv, manifest.json and runs/*.json");
        app->add_flag("--strict", strict, "exit 3 if any row failed");
        integ.add(app);
    }

    int exec(std::ostream& out, std::ostream& err) const {
        SweepConfig c;
        c.N = N;
        c.q = parse_range(q);
        c.m = parse_range(m);
        c.seed = seed_kind_from_string(seed);
        c.scalar = scalar.empty() ? std::vector<double>{c.seed == SeedKind::WeakSingular ? -1.0 : 0.0}
                                  : parse_range(scalar);
        const auto [e0, r0] = default_growth(c.seed);
        c.epsilon = eps.value_or(e0);
        c.r_end = r_end.value_or(r0);
        c.integrate = integ.o;
        c.jobs = jobs;
        c.out_dir = out_dir;
        c.strict = strict;
        const SweepResult res = run_sweep(c);
        out << res.csv;
        std::size_t failed = 0;
        for (const auto& r : res.rows) failed += r.ok ? 0 : 1;
        err << res.rows.size() << " rows, " << failed << " failed, manifest " << res.manifest_sha256 << "\n";
        if (failed == res.rows.size()) return kNumerical;
        if (strict && failed > 0) return kNumerical;
        return kOk;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"singulab: radial solutions of -Δu + m|∇u|^q - e^u = 0", "singulab"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "TOML config file mirroring the flags; flags override it");
    app.require_subcommand(1);

    ConstantsCmd constants;
    IntegrateCmd integ;
    ClassifyCmd classify;
    VerifyCmd verify;
    SweepCmd sweep;
    OracleCmd oracle;
    auto* c_constants = app.add_subcommand("constants", "closed-form constants for (N, q, m)");
    auto* c_integrate = app.add_subcommand("integrate", "integrate a radial solution and write it as CSV");
    auto* c_classify = app.add_subcommand("classify", "asymptotic regime at the origin or at infinity");
    auto* c_verify = app.add_subcommand("verify", "bounded-ratio report for an a priori estimate");
    auto* c_sweep = app.add_subcommand("sweep", "grid of runs over q, m and the seed scalar");
    auto* c_oracle = app.add_subcommand("oracle", "finite-difference cross-check on [a, b]");
    constants.add(c_constants);
    integ.add(c_integrate);
    classify.add(c_classify);
    verify.add(c_verify);
    sweep.add(c_sweep);
    oracle.add(c_oracle);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        // help and version requests are ParseErrors with exit code 0
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (c_constants->parsed()) return constants.exec(out);
        if (c_integrate->parsed()) return integ.exec(out, err);
        if (c_classify->parsed()) return classify.exec(out);
        if (c_verify->parsed()) return verify.exec(out);
        if (c_sweep->parsed()) return sweep.exec(out, err);
        if (c_oracle->parsed()) return oracle.exec(out, err);
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace singulab::cli
