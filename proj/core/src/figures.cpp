#include "wlocc/figures.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "wlocc/boundary_maps.hpp"
#include "wlocc/error.hpp"
#include "wlocc/roundopt.hpp"

namespace wlocc {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw Error(Errc::MalformedInput, "row width does not match header");
  }
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::MalformedInput, "cannot open " + path.string() + " for writing");
  write(out);
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string format_value(int v) { return std::to_string(v); }

CsvTable fig4_table() {
  CsvTable t{{"P_tot", "min_rounds", "min_broadcasts"}, {}};
  for (int k = 0; k < 100; ++k) {
    const double p = k / 100.0;
    t.add_row({format_value(p), format_value(min_rounds_for_probability(p)), format_value(min_broadcasts(p))});
  }
  return t;
}

CsvTable fig5_table(int max_rounds) {
  const WState w = w_state();
  CsvTable t{{"N", "optimized", "uniform", "zeta_star", "step1_round"}, {}};
  const double bound = zeta_star(w, Party::A);
  // The non-star coordinates of W are equal, so no equalizing round is needed.
  const int step1 = std::abs(w[Party::B] - w[Party::C]) > kDefaultTol ? 1 : 0;
  for (int n = 2; n <= max_rounds; ++n) {
    t.add_row({format_value(n), format_value(star_schedule(n, w, Party::A).objective),
               format_value(star_uniform_schedule(n, w, Party::A).objective), format_value(bound),
               format_value(step1)});
  }
  return t;
}

std::vector<WState> fig6_default_states() {
  return {make_state(0.5, 0.25, 0.25), make_state(0.6, 0.25, 0.15), make_state(0.7, 0.2, 0.1),
          make_state(0.8, 0.15, 0.05)};
}

CsvTable fig6_table(const std::vector<WState>& states, int max_each) {
  CsvTable t{{"xA", "xB", "xC", "N2", "N3", "objective", "diagonal_best"}, {}};
  for (const auto& s : states) {
    struct Cell {
      int n2, n3;
      double value;
    };
    std::vector<Cell> cells;
    std::map<int, std::size_t> best;  // N2 + N3 -> index of best cell
    for (int n2 = 1; n2 <= max_each; ++n2) {
      for (int n3 = 1; n3 <= max_each; ++n3) {
        cells.push_back({n2, n3, split_objective(s, n2, n3)});
        auto [it, inserted] = best.emplace(n2 + n3, cells.size() - 1);
        if (!inserted && cells.back().value > cells[it->second].value) it->second = cells.size() - 1;
      }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool flag = best.at(cells[i].n2 + cells[i].n3) == i;
      t.add_row({format_value(s[Party::A]), format_value(s[Party::B]), format_value(s[Party::C]),
                 format_value(cells[i].n2), format_value(cells[i].n3), format_value(cells[i].value),
                 format_value(flag ? 1 : 0)});
    }
  }
  return t;
}

CsvTable fig7_table(int max_rounds) {
  const WState s = make_state(0.5, 0.25, 0.25);
  CsvTable t{{"N", "N2", "N3", "objective", "zeta", "zeta_star_A"}, {}};
  const double z = zeta(s);
  const double zs = zeta_star(s, Party::A);
  for (int n = 3; n <= max_rounds; ++n) {
    const auto r = split_search(n, s);
    t.add_row({format_value(n), format_value(r.n2), format_value(r.n3), format_value(r.objective), format_value(z),
               format_value(zs)});
  }
  return t;
}

CsvTable choi_convergence_table(const std::vector<double>& gammas, const std::vector<int>& ns) {
  CsvTable t{{"gamma", "n", "branch", "frobenius"}, {}};
  for (double g : gammas) {
    const ChoiSet limit = limit_choi(g);
    for (int n : ns) {
      const ChoiSet finite = instrument_choi(jgamma_finite(g, n));
      for (Branch b : kBranches) {
        const int i = static_cast<int>(b);
        t.add_row({format_value(g), format_value(n), std::string(branch_name(b)),
                   format_value(frobenius_distance(finite[i], limit[i]))});
      }
      t.add_row({format_value(g), format_value(n), "all", format_value(frobenius_distance(finite, limit))});
    }
  }
  return t;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::MalformedInput, "column " + column + ": cannot parse \"" + text + "\"");
  }
}

}  // namespace

CsvTable aggregate_ppt_curve(std::istream& in) {
  static const std::vector<std::string> required{"s", "P_ppt", "P_locc", "gap", "solver_status"};
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::MalformedInput, "PPT curve is empty");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const auto& name : required) {
    if (!col.count(name)) throw Error(Errc::MalformedInput, "PPT curve is missing column " + name);
  }

  CsvTable t{{"s", "P_ppt", "P_locc", "P_locc_kappa", "gap", "locc_residual", "solver_status"}, {}};
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(Errc::MalformedInput, "line " + std::to_string(lineno) + " has the wrong number of fields");
    }
    const double s = parse_double(cells[col["s"]], "s");
    if (!(s >= 1.0 / 3.0 - 1e-12 && s <= 1.0 + 1e-12)) {
      throw Error(Errc::ParameterOutOfRange, "s = " + cells[col["s"]] + " outside [1/3, 1]");
    }
    const double p_ppt = parse_double(cells[col["P_ppt"]], "P_ppt");
    const double p_locc = parse_double(cells[col["P_locc"]], "P_locc");
    const double gap = parse_double(cells[col["gap"]], "gap");
    const WState st = make_state(s, 0.5 * (1.0 - s), 0.5 * (1.0 - s));
    const double k = st.support_size() >= 2 ? kappa(st) : 0.0;
    t.add_row({format_value(s), format_value(p_ppt), format_value(p_locc), format_value(k), format_value(gap),
               format_value(p_locc - k), cells[col["solver_status"]]});
  }
  return t;
}

std::vector<std::filesystem::path> write_all_figures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const CsvTable& t, const char* name) {
    written.push_back(dir / name);
    t.write(written.back());
  };
  emit(fig4_table(), "fig4.csv");
  emit(fig5_table(), "fig5.csv");
  emit(fig6_table(fig6_default_states()), "fig6.csv");
  emit(fig7_table(), "fig7.csv");
  emit(choi_convergence_table({0.25, 0.5, 0.75}, {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}),
       "choi_convergence.csv");
  return written;
}

}  // namespace wlocc
