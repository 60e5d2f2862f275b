#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "singulab/construct.hpp"
#include "singulab/params.hpp"
#include "singulab/radial_ode.hpp"
#include "singulab/trajectory.hpp"

namespace singulab::cli {

inline constexpr const char* kToolVersion = "0.1.0";
/// Bumped whenever sweep CSV columns change.
inline constexpr int kSweepSchemaVersion = 1;

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---- formatting and I/O ---------------------------------------------------

/// Shortest decimal that round-trips; "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

/// RFC-4180 field quoting: fields containing , " CR or LF are quoted and
/// embedded quotes doubled.
std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);  // ends with "\r\n"
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Columns r,u,u_r,u_rr with a header row.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Direction is inferred from the order of r.
Trajectory read_trajectory_csv(const std::string& text, const Params& p);

/// Gnuplot-style two-column data: "# curve: <name>", "# <x> <y>", then rows.
struct PlotCurve {
    std::string name;
    std::string x_label = "x";
    std::string y_label = "y";
    std::vector<double> x, y;
};
void write_plot(std::ostream& os, const PlotCurve& c);
PlotCurve read_plot(const std::string& text);

std::string sha256_hex(const std::string& data);

/// "a:step:b" (inclusive, step > 0), "a,b,c" or a single value.
std::vector<double> parse_range(const std::string& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

// ---- sweeps ----------------------------------------------------------------

struct SweepConfig {
    int N = 3;
    std::vector<double> q;
    std::vector<double> m;
    std::vector<double> scalar;
    SeedKind seed = SeedKind::Regular;
    double epsilon = 1e-6;
    double r_end = 1.0;
    IntegrateOptions integrate;
    int jobs = 1;
    std::string out_dir;  // empty: CSV only, no files
    bool strict = false;
};

struct SweepRow {
    std::size_t index = 0;
    double q = 0.0, m = 0.0, scalar = 0.0;
    bool ok = false;
    std::string termination;
    double r_star = 0.0, u_end = 0.0, p_end = 0.0;
    std::string regime;
    double estimate = 0.0;
    bool has_regime = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string manifest_json;  // full manifest, including wall-clock fields
    std::string manifest_sha256;
    std::string csv;
};

std::vector<std::string> sweep_csv_header();
/// Runs the Cartesian grid q × m × scalar on `jobs` threads. Rows are ordered
/// q-major, then m, then scalar, independent of scheduling.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace singulab::cli
