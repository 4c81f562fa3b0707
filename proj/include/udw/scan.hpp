#pragma once

// Parameter scans behind the udw_entangle command-line tool: the scan
// configuration (flat key = value text), the four datasets, and CSV/JSON
// emission. Grid points are evaluated concurrently; rows are assembled in
// grid order.

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "udw/coefficients.hpp"
#include "udw/correlations.hpp"
#include "udw/dynamics.hpp"
#include "udw/entanglement.hpp"
#include "udw/oracles.hpp"

namespace udw::scan {

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Format { csv, json };

/// steps points from start to stop inclusive.
struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  std::vector<double> values() const {
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i) out[i] = start + (stop - start) * i / (steps - 1);
    out.back() = stop;
    return out;
  }
  bool operator==(const Grid&) const = default;
};

struct ScanConfig {
  Coupling coupling = Coupling::udw;
  std::vector<double> beta_omega{1.0};
  std::vector<double> velocities{0.0};
  Grid tau{0.0, 5.0, 101};  ///< in units of 1/Gamma_0
  double delta_omega = 0.0;
  std::string output;  ///< empty: standard output
  Format format = Format::csv;
  bool oracle = false;
  double lambda = 1.0;
  double omega = 1.0;
  double v_max = DetectorParams::default_v_max;
  Grid s{0.1, 3.0, 30};            ///< proper-time separations for wightman, units of 1/omega
  std::optional<double> epsilon;  ///< regulator; default 1e-3 beta per row (1e-3/omega if beta = inf)

  bool operator==(const ScanConfig&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto pos = s.find(sep, begin);
    parts.push_back(trim(s.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin)));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

inline double parse_real(const std::string& field, std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || std::isnan(value)) {
    throw ConfigError(field, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline int parse_int(const std::string& field, std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(field, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<double> parse_list(const std::string& field, std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_real(field, part));
  return out;
}

inline Grid parse_grid(const std::string& field, std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError(field, "expected START:STOP:STEPS, got '" + std::string(text) + "'");
  return {parse_real(field, parts[0]), parse_real(field, parts[1]), parse_int(field, parts[2])};
}

inline bool parse_bool(const std::string& field, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(field, "expected true or false, got '" + std::string(text) + "'");
}

/// Shortest representation that reads back to the same double.
inline std::string shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + shortest(xs[i]);
  return out;
}

inline std::string grid_text(const Grid& g) {
  return shortest(g.start) + ":" + shortest(g.stop) + ":" + std::to_string(g.steps);
}

}  // namespace detail

/// Sets one key. Keys: coupling, beta_omega, velocity, tau, delta_omega,
/// output, format, oracle, lambda, omega, v_max, s, epsilon.
inline void apply_setting(ScanConfig& cfg, const std::string& key, std::string_view raw) {
  using namespace detail;
  const std::string_view value = trim(raw);
  if (key == "coupling") {
    if (value == "udw") cfg.coupling = Coupling::udw;
    else if (value == "td" || value == "derivative") cfg.coupling = Coupling::derivative;
    else throw ConfigError(key, "expected udw or td, got '" + std::string(value) + "'");
  } else if (key == "beta_omega") {
    cfg.beta_omega = parse_list(key, value);
  } else if (key == "velocity" || key == "velocities") {
    cfg.velocities = parse_list("velocity", value);
  } else if (key == "tau") {
    cfg.tau = parse_grid(key, value);
  } else if (key == "delta_omega") {
    cfg.delta_omega = parse_real(key, value);
  } else if (key == "output") {
    cfg.output = std::string(value);
  } else if (key == "format") {
    if (value == "csv") cfg.format = Format::csv;
    else if (value == "json") cfg.format = Format::json;
    else throw ConfigError(key, "expected csv or json, got '" + std::string(value) + "'");
  } else if (key == "oracle") {
    cfg.oracle = parse_bool(key, value);
  } else if (key == "lambda") {
    cfg.lambda = parse_real(key, value);
  } else if (key == "omega") {
    cfg.omega = parse_real(key, value);
  } else if (key == "v_max") {
    cfg.v_max = parse_real(key, value);
  } else if (key == "s") {
    cfg.s = parse_grid(key, value);
  } else if (key == "epsilon") {
    if (value.empty() || value == "default") cfg.epsilon.reset();
    else cfg.epsilon = parse_real(key, value);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

/// Throws ConfigError naming the first offending field.
inline void validate(const ScanConfig& cfg) {
  if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega)) throw ConfigError("omega", "must be finite and > 0");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) throw ConfigError("lambda", "must be finite and > 0");
  if (!(cfg.v_max >= 0.0 && cfg.v_max < 1.0)) throw ConfigError("v_max", "must lie in [0, 1)");
  if (cfg.beta_omega.empty()) throw ConfigError("beta_omega", "must not be empty");
  for (double bw : cfg.beta_omega) {
    if (!(bw > 0.0)) throw ConfigError("beta_omega", "values must be > 0 (inf allowed)");
  }
  if (cfg.velocities.empty()) throw ConfigError("velocity", "must not be empty");
  for (double v : cfg.velocities) {
    if (!(v >= 0.0 && v <= cfg.v_max)) {
      throw ConfigError("velocity", "value " + detail::shortest(v) + " outside [0, v_max]");
    }
  }
  const Grid& t = cfg.tau;
  if (!(t.start >= 0.0) || !(t.stop > t.start) || !std::isfinite(t.stop)) {
    throw ConfigError("tau", "need 0 <= start < stop < inf");
  }
  if (t.steps < 2) throw ConfigError("tau", "steps must be >= 2");
  if (!std::isfinite(cfg.delta_omega)) throw ConfigError("delta_omega", "must be finite");
  const Grid& s = cfg.s;
  if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !(s.stop > s.start)) {
    throw ConfigError("s", "need finite start < stop");
  }
  if (s.steps < 2) throw ConfigError("s", "steps must be >= 2");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0 && std::isfinite(*cfg.epsilon))) {
    throw ConfigError("epsilon", "must be finite and > 0");
  }
}

/// Parses key = value lines ('#' starts a comment) on top of the defaults.
inline ScanConfig parse_config(std::string_view text) {
  ScanConfig cfg;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    }
    apply_setting(cfg, std::string(detail::trim(line.substr(0, eq))), line.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

inline std::string emit_config(const ScanConfig& cfg) {
  using namespace detail;
  std::ostringstream out;
  out << "coupling = " << to_string(cfg.coupling) << "\n"
      << "beta_omega = " << join(cfg.beta_omega) << "\n"
      << "velocity = " << join(cfg.velocities) << "\n"
      << "tau = " << grid_text(cfg.tau) << "\n"
      << "delta_omega = " << shortest(cfg.delta_omega) << "\n";
  if (!cfg.output.empty()) out << "output = " << cfg.output << "\n";
  out << "format = " << (cfg.format == Format::csv ? "csv" : "json") << "\n"
      << "oracle = " << (cfg.oracle ? "true" : "false") << "\n"
      << "lambda = " << shortest(cfg.lambda) << "\n"
      << "omega = " << shortest(cfg.omega) << "\n"
      << "v_max = " << shortest(cfg.v_max) << "\n"
      << "s = " << grid_text(cfg.s) << "\n";
  if (cfg.epsilon) out << "epsilon = " << shortest(*cfg.epsilon) << "\n";
  return out.str();
}

using Cell = std::variant<double, bool>;
using Row = std::vector<Cell>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

/// 12 significant digits, "inf" for infinity, independent of locale.
inline std::string format_csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const Row& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      if (const double* x = std::get_if<double>(&row[i])) out << format_csv_number(*x);
      else out << (std::get<bool>(row[i]) ? "true" : "false");
    }
    out << "\n";
  }
}

inline void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["dataset"] = t.name;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const Row& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const Cell& cell : row) {
      if (const double* x = std::get_if<double>(&cell)) {
        if (std::isfinite(*x)) r.push_back(*x);
        else r.push_back(format_csv_number(*x));
      } else {
        r.push_back(std::get<bool>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

inline void write_table(const Table& t, Format format, std::ostream& out) {
  format == Format::csv ? write_csv(t, out) : write_json(t, out);
}

namespace detail {

inline DetectorParams detector(const ScanConfig& cfg, double v, Coupling coupling) {
  return DetectorParams{cfg.omega, cfg.lambda, v, coupling, cfg.v_max};
}

inline BathParams bath(const ScanConfig& cfg, double beta_omega) { return BathParams{beta_omega / cfg.omega}; }

// Evaluates one block of rows per (beta_omega, velocity) pair concurrently
// and concatenates them in grid order.
inline std::vector<Row> for_each_point(const ScanConfig& cfg,
                                       const std::function<std::vector<Row>(double, double)>& block) {
  std::vector<std::future<std::vector<Row>>> futures;
  for (double bw : cfg.beta_omega)
    for (double v : cfg.velocities) futures.push_back(std::async(std::launch::async, block, bw, v));
  std::vector<Row> rows;
  for (auto& f : futures) {
    auto part = f.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

}  // namespace detail

/// Concurrence of the shared state against tau Gamma_0. The oracle column
/// integrates the GKSL equation with RK4 from the Bell state and applies
/// Wootters' formula.
inline Table concurrence_scan(const ScanConfig& cfg) {
  validate(cfg);
  Table t{"concurrence", {"beta_omega", "velocity", "tau_gamma0", "concurrence"}, {}};
  if (cfg.oracle) t.columns.push_back("concurrence_oracle");
  const auto taus = cfg.tau.values();
  t.rows = detail::for_each_point(cfg, [&](double bw, double v) {
    const auto d = detail::detector(cfg, v, cfg.coupling);
    const auto c = lindblad_coefficients(d, detail::bath(cfg, bw), cfg.delta_omega);
    const double g0 = gamma0(d);
    std::vector<Row> rows;
    DensityMatrix4 state = bell_state();
    double elapsed = 0.0;
    for (double tg : taus) {
      const double tau = tg / g0;
      Row row{bw, v, tg, concurrence_closed_form(c, tau)};
      if (cfg.oracle) {
        state = evolve_numeric(state, c, tau - elapsed).state;
        elapsed = tau;
        row.push_back(concurrence_general(state));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
  return t;
}

/// Mode numbers and decay rates against velocity; each rate is divided by
/// its own coupling's Gamma_0. Oracle columns are Doppler-average quadratures.
inline Table coefficients_scan(const ScanConfig& cfg) {
  validate(cfg);
  Table t{"coeffs",
          {"beta_omega", "velocity", "n_udw", "n_td", "gamma_udw_over_gamma0", "gamma_td_over_gamma0"},
          {}};
  if (cfg.oracle) {
    t.columns.push_back("n_udw_oracle");
    t.columns.push_back("n_td_oracle");
  }
  t.rows = detail::for_each_point(cfg, [&](double bw, double v) {
    const auto du = detail::detector(cfg, v, Coupling::udw);
    const auto dt = du.with_coupling(Coupling::derivative);
    const auto b = detail::bath(cfg, bw);
    Row row{bw, v, n_udw(du, b), n_td(dt, b), gamma_udw(du) / gamma0(du), gamma_td(dt) / gamma0(dt)};
    if (cfg.oracle) {
      if (std::isinf(bw)) {
        row.push_back(0.0);
        row.push_back(0.0);
      } else if (v == 0.0) {
        row.push_back(planck(bw));
        row.push_back(planck(bw));
      } else {
        row.push_back(oracle::n_udw_doppler_average(bw, v));
        row.push_back(oracle::n_td_doppler_average(bw, v));
      }
    }
    return std::vector<Row>{std::move(row)};
  });
  return t;
}

/// Sudden-death time in units of 1/Gamma_0; the oracle column bisects the
/// closed-form concurrence.
inline Table death_time_scan(const ScanConfig& cfg) {
  validate(cfg);
  Table t{"death-time", {"beta_omega", "velocity", "tau_death_gamma0"}, {}};
  if (cfg.oracle) t.columns.push_back("tau_death_bisection");
  t.rows = detail::for_each_point(cfg, [&](double bw, double v) {
    const auto d = detail::detector(cfg, v, cfg.coupling);
    const auto c = lindblad_coefficients(d, detail::bath(cfg, bw), cfg.delta_omega);
    const double g0 = gamma0(d);
    Row row{bw, v, sudden_death_time(c) * g0};
    if (cfg.oracle) row.push_back(sudden_death_time_numeric(c) * g0);
    return std::vector<Row>{std::move(row)};
  });
  return t;
}

/// Wightman function along the worldline on the s grid: the UDW function
/// or, for coupling td, the derivative-coupling one. Oracle columns replace
/// the thermal closed form by its mode integral.
inline Table wightman_scan(const ScanConfig& cfg) {
  validate(cfg);
  Table t{"wightman", {"beta_omega", "velocity", "s", "re_w", "im_w", "near_pole"}, {}};
  if (cfg.oracle) {
    t.columns.push_back("re_w_oracle");
    t.columns.push_back("im_w_oracle");
  }
  const auto ss = cfg.s.values();
  t.rows = detail::for_each_point(cfg, [&](double bw, double v) {
    const auto d = detail::detector(cfg, v, cfg.coupling);
    const auto b = detail::bath(cfg, bw);
    // 1e-3 beta by default; 1e-3 / omega in the vacuum.
    const double eps = cfg.epsilon               ? *cfg.epsilon
                       : std::isinf(b.beta())    ? 1e-3 / cfg.omega
                                                 : default_epsilon(b.beta());
    const bool td = cfg.coupling == Coupling::derivative;
    std::vector<Row> rows;
    for (double s : ss) {
      const auto w = td ? wightman_derivative(s, d, b, eps) : wightman_moving(s, d, b, eps);
      Row row{bw, v, s, w.value.real(), w.value.imag(), w.near_pole};
      if (cfg.oracle) {
        Complex q;
        if (td) {
          const Complex se{s, -eps};
          q = 3.0 / (2.0 * std::numbers::pi * std::numbers::pi * se * se * se * se) -
              oracle::thermal_moving_dd_mode_sum(s, v, b.beta());
        } else {
          q = vacuum_wightman(s, 0.0, eps) + oracle::thermal_moving_mode_sum(s, v, b.beta());
        }
        row.push_back(q.real());
        row.push_back(q.imag());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
  return t;
}

}  // namespace udw::scan
