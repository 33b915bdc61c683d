// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Batch jobs behind `stationary-gate run`: each job evaluates its grid,
// writes one CSV (comma separated, header row, 17 significant digits, rows in
// grid order) and one JSON manifest (resolved configuration, library version,
// derived quantities, per-point failures).
//
// CSV columns by job:
//   spectrum        delta, re/im of r0 t0 r1 t1, abs2_r0 abs2_t0 abs2_r1 abs2_t1, error
//   fidelity_sweep  scheme, tb_mode, sweep_<param>, N, gamma_1d, omega0, delta_c,
//                   sigma_tilde, d, k0_l1, k0_l2, delta_res, eta_eit, re/im R0,
//                   re/im R0_mean, re/im R11, R12, re/im t_b, F_cj, P_suc,
//                   F_cj_cond, closed forms for t_b = 1 and t_b = R0, error
//   optimize        evaluation, <free parameters>, objective, error
//   gate_time       N, delta_c_opt, sigma_tilde_opt, t_eit_pass,
//                   t_eit_round_trip, t_pi_min, sigma_b, t_scatter,
//                   F_cj_bandwidth, [loss_hfs], error
//   placement_study sweep_<param>, placement, realizations, N, d, delta_c,
//                   sigma_tilde, delta_res, F_cj, P_suc, F_cj_cond, F_cj_std,
//                   F_cj_cond_std, error
// A failed point keeps its input columns, writes "nan" in the output columns
// and names the failure in `error`; otherwise `error` is empty.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgate/config.hpp"

namespace sgate {

// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

// 17 significant digits ("%.17g"), "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double value);

// In-memory CSV table with fixed columns.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t rows() const { return cells_.size(); }
    // Appends a row; its size must equal the number of columns.
    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& row(std::size_t i) const { return cells_.at(i); }

    void write(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> cells_;
};

struct JobResult {
    CsvTable table{{}};
    nlohmann::json manifest;
    int failed_points = 0;

    int exit_code() const { return failed_points > 0 ? kExitNumeric : kExitOk; }
};

// Runs the job without touching the file system.
JobResult execute(const RunConfig& config, int threads);

// Runs the job and writes <out_dir>/<output>.csv and <out_dir>/<output>.json.
// Returns the exit code (config errors are thrown as ErrorKind::Config).
int run_job(const RunConfig& config, const std::string& out_dir, int threads, std::ostream& log);

}  // namespace sgate
