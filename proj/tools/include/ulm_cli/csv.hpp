#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ulm/sim.hpp"
#include "ulm/stability.hpp"

namespace ulm::cli {

// All writers emit LF line endings and format reals with 17 significant
// digits in scientific notation; non-finite values print as inf, -inf, nan.

[[nodiscard]] std::string format_real(double value);

/// Header "<first>[n],<second>[m],lambda_max_norm", then one row per node in row-major order.
void write_grid_csv(std::ostream& os, const StabilityGrid& grid);

/// Header "theta,re_alpha,im_alpha".
void write_boundary_csv(std::ostream& os, std::span<const BoundaryPoint> points);

/**
 * One row per step:
 *   k, t, y_i, y_ref_i, u_cmd_i, u_app_i, saturated, f_hat_i, f_meas_i, e_y_i, e_f_i
 * followed by F_true_i and R_i when ground truth was logged (R is nan on the last row).
 */
void write_trace_csv(std::ostream& os, const SimTrace& trace, double dt);

/// Header "alpha,final_tracking_error,final_estimation_error,classification".
void write_sweep_csv(std::ostream& os, std::span<const SweepEntry> entries);

}  // namespace ulm::cli
