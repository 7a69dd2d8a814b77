#pragma once

// Tabular figure data. Values are written with 12 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wlocc/wclass.hpp"

namespace wlocc {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
};

std::string format_value(double v);
std::string format_value(int v);

/// P_tot, min_rounds, min_broadcasts over P_tot = k / 100, k = 0..99.
CsvTable fig4_table();

/// Star task on W with A as the star: N, optimized, uniform, zeta_star,
/// step1_round for N = 2..max_rounds.
CsvTable fig5_table(int max_rounds = 40);

/// Objective over the (N2, N3) grid for each state; the best split on each
/// anti-diagonal N2 + N3 = const is flagged.
CsvTable fig6_table(const std::vector<WState>& states, int max_each = 15);
std::vector<WState> fig6_default_states();

/// Best split for x_A:x_B:x_C = 2:1:1: N, N2, N3, objective, zeta, zeta_star_A.
CsvTable fig7_table(int max_rounds = 40);

/// Frobenius distance of finite-n Choi matrices from the limit, per branch
/// and combined, over the given gammas and n.
CsvTable choi_convergence_table(const std::vector<double>& gammas, const std::vector<int>& ns);

/// Reads a PPT curve (s, P_ppt, P_locc, gap, solver_status) and adds the
/// LOCC value recomputed as kappa of the s-state.
CsvTable aggregate_ppt_curve(std::istream& in);

/// Writes fig4..fig7 and choi_convergence CSVs into `dir`; returns the paths.
std::vector<std::filesystem::path> write_all_figures(const std::filesystem::path& dir);

}  // namespace wlocc
