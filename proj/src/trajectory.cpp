#include "cascade/trajectory.hpp"

#include "cascade/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cascade {

void Trajectory::recompute_aggregates() {
    const std::size_t nt = grid.size();
    const std::size_t nc = classes.size();
    s.assign(nt, 0.0);
    i.assign(nt, 0.0);
    r.assign(nt, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
        double it = 0.0, rt = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            it += i_class[t * nc + c];
            rt += r_class[t * nc + c];
        }
        i[t] = it;
        r[t] = rt;
        s[t] = 1.0 - it - rt;
    }
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
    if (!(t_max > 0.0))
        throw ValidationError("uniform_grid: t_max must be > 0");
    if (points < 2)
        throw ValidationError("uniform_grid: need at least 2 grid points");
    std::vector<double> grid(points);
    for (std::size_t j = 0; j < points; ++j)
        grid[j] = t_max * static_cast<double>(j) / static_cast<double>(points - 1);
    grid.back() = t_max;
    return grid;
}

namespace {

void append_g9(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    out += buf;
}

} // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          bool per_class_columns) {
    std::string line = "t,s,i,r";
    if (per_class_columns) {
        for (const auto& cls : traj.classes) {
            line += ",i_" + std::to_string(cls.k) + "_" + std::to_string(cls.l);
            line += ",r_" + std::to_string(cls.k) + "_" + std::to_string(cls.l);
        }
    }
    os << line << '\n';
    const std::size_t nc = traj.classes.size();
    for (std::size_t t = 0; t < traj.points(); ++t) {
        line.clear();
        append_g9(line, traj.grid[t]);
        line += ',';
        append_g9(line, traj.s[t]);
        line += ',';
        append_g9(line, traj.i[t]);
        line += ',';
        append_g9(line, traj.r[t]);
        if (per_class_columns) {
            for (std::size_t c = 0; c < nc; ++c) {
                line += ',';
                append_g9(line, traj.i_class[t * nc + c]);
                line += ',';
                append_g9(line, traj.r_class[t * nc + c]);
            }
        }
        os << line << '\n';
    }
    if (!os)
        throw ValidationError("trajectory csv: write failed");
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          bool per_class_columns) {
    std::ofstream os(path);
    if (!os)
        throw ValidationError("trajectory csv: cannot open " + path);
    write_trajectory_csv(traj, os, per_class_columns);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ValidationError("trajectory csv: empty input");
    const auto header = split_csv(line);
    if (header.size() < 4 || header[0] != "t" || header[1] != "s" ||
        header[2] != "i" || header[3] != "r")
        throw ValidationError("trajectory csv: bad header '" + line + "'");

    Trajectory traj;
    // Per-class columns come in i/r pairs named i_K_L, r_K_L.
    for (std::size_t j = 4; j < header.size(); j += 2) {
        if (j + 1 >= header.size())
            throw ValidationError("trajectory csv: dangling per-class column");
        int k = 0, l = 0;
        if (std::sscanf(header[j].c_str(), "i_%d_%d", &k, &l) != 2 ||
            header[j + 1] != "r_" + std::to_string(k) + "_" + std::to_string(l))
            throw ValidationError("trajectory csv: bad class columns '" +
                                  header[j] + "','" + header[j + 1] + "'");
        traj.classes.push_back({k, l});
    }

    const std::size_t nc = traj.classes.size();
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw ValidationError("trajectory csv: row " + std::to_string(row) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(header.size()));
        std::vector<double> vals(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            try {
                std::size_t pos = 0;
                vals[j] = std::stod(fields[j], &pos);
                if (pos != fields[j].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError("trajectory csv: row " + std::to_string(row) +
                                      ": bad number '" + fields[j] + "'");
            }
        }
        traj.grid.push_back(vals[0]);
        traj.s.push_back(vals[1]);
        traj.i.push_back(vals[2]);
        traj.r.push_back(vals[3]);
        for (std::size_t c = 0; c < nc; ++c) {
            traj.i_class.push_back(vals[4 + 2 * c]);
            traj.r_class.push_back(vals[5 + 2 * c]);
        }
    }
    if (traj.grid.empty())
        throw ValidationError("trajectory csv: no data rows");
    return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ValidationError("trajectory csv: cannot open " + path);
    return read_trajectory_csv(is);
}

} // namespace cascade
