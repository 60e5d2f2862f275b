#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "singulab/cli.hpp"
#include "singulab/error.hpp"

namespace singulab::cli {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r': break;
            case '\n':
                if (any || !field.empty()) {
                    row.push_back(std::move(field));
                    rows.push_back(std::move(row));
                }
                row.clear();
                field.clear();
                any = false;
                break;
            default:
                field += c;
                any = true;
        }
    }
    if (quoted) throw DomainError("unterminated quoted CSV field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << csv_line({"r", "u", "u_r", "u_rr"});
    for (const auto& s : traj.samples)
        os << csv_line({format_double(s.r), format_double(s.u), format_double(s.p), format_double(s.pp)});
}

namespace {

double to_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("cannot parse " + what + " '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw DomainError("trailing characters in " + what + " '" + s + "'");
    return v;
}

}  // namespace

Trajectory read_trajectory_csv(const std::string& text, const Params& p) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DomainError("empty trajectory CSV");
    const auto& h = rows.front();
    if (h.size() < 3 || h[0] != "r" || h[1] != "u" || h[2] != "u_r")
        throw DomainError("trajectory CSV must start with the header r,u,u_r[,u_rr]");
    const bool has_pp = h.size() >= 4 && h[3] == "u_rr";
    Trajectory t;
    t.params = p;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < h.size()) throw DomainError("short row " + std::to_string(i) + " in trajectory CSV");
        RadialSample s;
        s.r = to_double(r[0], "r");
        s.u = to_double(r[1], "u");
        s.p = to_double(r[2], "u_r");
        s.pp = has_pp ? to_double(r[3], "u_rr") : 0.0;
        t.samples.push_back(s);
    }
    if (t.samples.size() < 2) throw DomainError("trajectory CSV needs at least two rows");
    t.direction = t.samples[1].r > t.samples[0].r ? Direction::Outward : Direction::Inward;
    t.termination = {TerminationKind::ReachedEnd, t.samples.back().r};
    if (!has_pp) {
        // no u_rr column: first differences of u_r
        for (std::size_t i = 0; i < t.samples.size(); ++i) {
            const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == t.samples.size() ? i : i + 1;
            t.samples[i].pp = (t.samples[b].p - t.samples[a].p) / (t.samples[b].r - t.samples[a].r);
        }
    }
    t.validate();
    return t;
}

void write_plot(std::ostream& os, const PlotCurve& c) {
    if (c.x.size() != c.y.size()) throw DomainError("plot curve with mismatched columns");
    os << "# curve: " << c.name << "\n# " << c.x_label << " " << c.y_label << "\n";
    for (std::size_t i = 0; i < c.x.size(); ++i) os << format_double(c.x[i]) << " " << format_double(c.y[i]) << "\n";
}

PlotCurve read_plot(const std::string& text) {
    PlotCurve c;
    std::istringstream is(text);
    std::string line;
    int comments = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (comments == 0 && line.rfind("# curve: ", 0) == 0) c.name = line.substr(9);
            if (comments == 1) {
                std::istringstream ls(line.substr(1));
                ls >> c.x_label >> c.y_label;
            }
            ++comments;
            continue;
        }
        std::istringstream ls(line);
        std::string xs, ys;
        ls >> xs >> ys;
        c.x.push_back(to_double(xs, "plot x"));
        c.y.push_back(to_double(ys, "plot y"));
    }
    return c;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::vector<double> parse_range(const std::string& spec) {
    if (spec.empty()) throw DomainError("empty range");
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw DomainError("range must be a:step:b, got '" + spec + "'");
        const double a = to_double(parts[0], "range start"), step = to_double(parts[1], "range step"),
                     b = to_double(parts[2], "range end");
        if (!(step > 0.0) || !(b >= a)) throw DomainError("range needs step > 0 and b >= a: '" + spec + "'");
        // Index-based so that 1.1:0.1:1.9 gives exactly nine points.
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        if (n > 1'000'000) throw DomainError("range too long: '" + spec + "'");
        // Rounded to 12 significant digits so that 1.1 + 4*0.1 prints as 1.5.
        char buf[32];
        for (long i = 0; i <= n; ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(i) * step);
            out.push_back(std::stod(buf));
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(to_double(part, "list value"));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << data;
    if (!out) throw DomainError("write failed for '" + path + "'");
}

}  // namespace singulab::cli
