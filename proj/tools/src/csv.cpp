#include "ulm_cli/csv.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ulm::cli {

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.16e}", value);
}

namespace {

void put_vector(std::string& row, const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        row += ',';
        row += format_real(v[i]);
    }
}

void put_nan(std::string& row, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) {
        row += ",nan";
    }
}

void put_header(std::string& row, const char* prefix, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) {
        row += fmt::format(",{}_{}", prefix, i);
    }
}

}  // namespace

void write_grid_csv(std::ostream& os, const StabilityGrid& grid) {
    os << grid.first.name << '[' << grid.first.count << "]," << grid.second.name << '[' << grid.second.count
       << "],lambda_max_norm\n";
    for (int i = 0; i < grid.first.count; ++i) {
        for (int j = 0; j < grid.second.count; ++j) {
            os << format_real(grid.first.at(i)) << ',' << format_real(grid.second.at(j)) << ','
               << format_real(grid.at(i, j)) << '\n';
        }
    }
}

void write_boundary_csv(std::ostream& os, std::span<const BoundaryPoint> points) {
    os << "theta,re_alpha,im_alpha\n";
    for (const auto& p : points) {
        os << format_real(p.theta) << ',' << format_real(p.alpha.real()) << ',' << format_real(p.alpha.imag())
           << '\n';
    }
}

void write_trace_csv(std::ostream& os, const SimTrace& trace, double dt) {
    const Eigen::Index n = trace.steps.empty() ? 0 : trace.steps.front().y.size();
    std::string header = "k,t";
    put_header(header, "y", n);
    put_header(header, "y_ref", n);
    put_header(header, "u_cmd", n);
    put_header(header, "u_app", n);
    header += ",saturated";
    put_header(header, "f_hat", n);
    put_header(header, "f_meas", n);
    put_header(header, "e_y", n);
    put_header(header, "e_f", n);
    if (trace.oracle_logged) {
        put_header(header, "F_true", n);
        put_header(header, "R", n);
    }
    os << header << '\n';

    for (const SimStep& s : trace.steps) {
        std::string row = fmt::format("{},{}", s.k, format_real(s.k * dt));
        put_vector(row, s.y);
        put_vector(row, s.y_ref);
        put_vector(row, s.u_commanded);
        put_vector(row, s.u_applied);
        row += s.saturated ? ",1" : ",0";
        put_vector(row, s.f_hat);
        put_vector(row, s.f_measured);
        put_vector(row, s.tracking_error);
        put_vector(row, s.estimation_error);
        if (trace.oracle_logged) {
            put_vector(row, s.truth->F);
            if (s.perturbation) {
                put_vector(row, *s.perturbation);
            } else {
                put_nan(row, n);
            }
        }
        os << row << '\n';
    }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepEntry> entries) {
    os << "alpha,final_tracking_error,final_estimation_error,classification\n";
    for (const auto& e : entries) {
        os << format_real(e.alpha) << ',' << format_real(e.summary.final_tracking_error) << ','
           << format_real(e.summary.final_estimation_error) << ',' << to_string(e.summary.classification) << '\n';
    }
}

}  // namespace ulm::cli
