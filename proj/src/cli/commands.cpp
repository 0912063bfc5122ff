#include "breather/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "breather/band_analysis.hpp"
#include "breather/errors.hpp"
#include "breather/perturbation.hpp"
#include "breather/sector_solver.hpp"

namespace breather::cli {

using nlohmann::json;

namespace {

bool selected(const RunConfig& config, MomentumIndex k) {
  return !config.k || MomentumIndex(*config.k, config.params.f) == k;
}

SolveOptions solve_options(const RunConfig& config, bool vectors) {
  SolveOptions options;
  options.want_vectors = vectors;
  options.threads = config.threads;
  return options;
}

Cell optional_cell(const std::optional<double>& value) {
  if (value) return *value;
  return std::monostate{};
}

std::string label_or_unclassified(const Classification& c) {
  return c.classified() ? c.pattern->label() : "unclassified";
}

json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      cell);
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          std::ostringstream s;
          s << std::setprecision(17) << v;
          return s.str();
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

json matrix_to_json(const HermitianMatrix& h) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      re_row.push_back(h(i, j).real());
      im_row.push_back(h(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"re", re}, {"im", im}};
}

struct Asymptotic {
  std::optional<double> line;
  std::optional<double> lo;
  std::optional<double> hi;
};

Asymptotic asymptotic_band(const ModelParams& params, const Pattern& pattern, double k) {
  Asymptotic out;
  if (pattern == Pattern{2, 2}) {
    if (!(params.epsilon > 0.0)) return out;
    const auto band = band22_asymptotic(params, k);
    out.line = band.line;
    out.lo = band.continuum_min();
    out.hi = band.continuum_max();
  } else if (pattern == Pattern{4, 2}) {
    const double a = continuum42(params, 0.0);
    const double b = continuum42(params, std::numbers::pi);
    out.lo = std::min(a, b);
    out.hi = std::max(a, b);
  } else if (pattern == Pattern{3, 3}) {
    const auto c = PTCoefficients33::from(params);
    const double base = zeroth_order_energy(pattern, params);
    out.line = base + c.prefactor * (1.0 + c.gamma);
    out.lo = base + c.prefactor;
    out.hi = base + c.prefactor;
  }
  return out;
}

json coefficients(const ModelParams& params, const Pattern& pattern) {
  json j = json::object();
  j["zeroth_order_energy"] = zeroth_order_energy(pattern, params);
  if (pattern == Pattern{2, 2}) {
    const auto c = PTCoefficients22::from(params);
    j["Gamma"] = c.gamma;
    j["prefactor"] = c.prefactor;
    j["shift"] = c.shift;
  } else if (pattern == Pattern{4, 2}) {
    const auto c = PTCoefficients42::from(params);
    j["D"] = c.d;
    j["Gamma"] = c.gamma;
    j["prefactor"] = c.prefactor;
    j["corner_scale"] = c.corner_scale;
  } else if (pattern == Pattern{3, 3}) {
    const auto c = PTCoefficients33::from(params);
    j["Gamma"] = c.gamma;
    j["prefactor"] = c.prefactor;
  } else {
    j["route"] = "brillouin-wigner";
  }
  return j;
}

std::optional<double> smallest_denominator(const ModelParams& params, const Pattern& pattern) {
  if (pattern == Pattern{2, 2}) return PTCoefficients22::from(params).smallest_denominator;
  if (pattern == Pattern{4, 2}) return PTCoefficients42::from(params).smallest_denominator;
  if (pattern == Pattern{3, 3}) return PTCoefficients33::from(params).smallest_denominator;
  return std::nullopt;
}

struct Comparison {
  BandReport band;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::optional<double> line_asymptotic_max_diff;
};

Comparison compare_once(const RunConfig& config, const ModelParams& params) {
  const Pattern& pattern = *config.pattern;
  require_odd_ring(params.f);
  Comparison out;
  out.band = extract_band(solve_sector(params, solve_options(config, true)), pattern,
                          config.threshold);
  attach_pt(out.band, params);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& m : out.band.per_k) {
    if (!selected(config, m.k) || !m.pt_max_residual) continue;
    out.max_residual = std::max(out.max_residual, *m.pt_max_residual);
    sum += *m.pt_mean_residual;
    ++count;
    if (pattern == Pattern{2, 2} && params.epsilon > 0.0) {
      const auto asym = band22_asymptotic(params, m.k.k());
      const auto lines = m.energies(BandTag::line);
      if (asym.line && lines.size() == 1) {
        out.line_asymptotic_max_diff =
            std::max(out.line_asymptotic_max_diff.value_or(0.0), std::abs(lines[0] - *asym.line));
      }
    }
  }
  if (count == 0) {
    throw NumericalError("no momentum had a complete band to compare against perturbation theory");
  }
  out.mean_residual = sum / static_cast<double>(count);
  return out;
}

}  // namespace

Report cmd_spectrum(const RunConfig& config) {
  const SectorSpectrum spectrum = solve_sector(config.params, solve_options(config, true));
  Report report;
  report.config = config;
  report.columns = {"l", "k", "index", "energy", "band", "weight"};
  report.metadata["sector_dimension"] = spectrum.sector->size();
  report.metadata["ground_energy"] = spectrum.ground_energy();
  json dims = json::array();
  for (const auto& block : spectrum.blocks) {
    if (!selected(config, block.basis.k)) continue;
    dims.push_back({{"l", block.basis.k.centered()}, {"dim", block.basis.dim()}});
    const auto& vectors = *block.spectrum.eigenvectors;
    for (Eigen::Index j = 0; j < block.spectrum.eigenvalues.size(); ++j) {
      const auto c = classify_state(block.basis, vectors.col(j), config.threshold);
      report.rows.push_back({static_cast<long long>(block.basis.k.centered()), block.basis.k.k(),
                             static_cast<long long>(j), block.spectrum.eigenvalues(j),
                             label_or_unclassified(c), c.weight});
    }
  }
  report.metadata["block_dimensions"] = dims;
  return report;
}

Report cmd_band(const RunConfig& config) {
  const ModelParams& params = config.params;
  const Pattern& pattern = *config.pattern;
  const SectorSpectrum spectrum = solve_sector(params, solve_options(config, true));
  BandReport band = extract_band(spectrum, pattern, config.threshold);
  Report report;
  report.config = config;
  try {
    attach_pt(band, params);
  } catch (const ValidationError& e) {
    report.warnings.push_back(std::string("perturbation theory not applied: ") + e.what());
  } catch (const ResonanceError& e) {
    report.warnings.push_back(std::string("perturbation theory not applied: ") + e.what());
  }
  report.warnings.insert(report.warnings.end(), band.warnings.begin(), band.warnings.end());

  const double ground = spectrum.ground_energy();
  report.columns = {"l",   "k",   "index",    "energy",   "band",               "weight", "tag",
                    "adjacent_fraction", "pt_energy", "abs_diff", "global_ground_state"};
  json counts = json::array();
  for (const auto& m : band.per_k) {
    if (!selected(config, m.k)) continue;
    counts.push_back({{"l", m.k.centered()},
                      {"expected", m.expected},
                      {"selected", m.states.size()},
                      {"line", m.energies(BandTag::line).size()}});
    for (const auto& s : m.states) {
      std::optional<double> diff;
      if (s.pt_energy) diff = std::abs(s.energy - *s.pt_energy);
      report.rows.push_back({static_cast<long long>(m.k.centered()), m.k.k(),
                             static_cast<long long>(s.index), s.energy, pattern.label(), s.weight,
                             to_string(s.tag), s.adjacent_fraction, optional_cell(s.pt_energy),
                             optional_cell(diff), s.energy == ground});
    }
  }
  report.metadata["pattern"] = pattern.label();
  report.metadata["overlap"] = band.overlap;
  report.metadata["counts"] = counts;
  report.metadata["ground_energy"] = ground;
  report.metadata["pt_applied"] = band.pt_applied;
  if (auto worst = band.pt_max_residual()) report.metadata["pt_max_residual"] = *worst;
  return report;
}

Report cmd_pt(const RunConfig& config) {
  const ModelParams& params = config.params;
  const Pattern& pattern = *config.pattern;
  require_odd_ring(params.f);
  Report report;
  report.config = config;
  report.columns = {"l", "k", "index", "pt_energy", "asym_line", "asym_cont_lo", "asym_cont_hi"};
  report.metadata["pattern"] = pattern.label();
  report.metadata["coefficients"] = coefficients(params, pattern);
  if (auto d = smallest_denominator(params, pattern)) {
    if (auto warning = validity_warning(params, *d)) report.warnings.push_back(*warning);
  }
  if (params.f == 3) report.warnings.push_back("f = 3 lies outside the validity of the band formulas");
  json matrices = json::array();
  for (const MomentumIndex& k : momentum_grid(params.f)) {
    if (!selected(config, k)) continue;
    const HermitianMatrix h = pt_matrix(params, pattern, k);
    if (config.format == Format::json) {
      json entry = matrix_to_json(h);
      entry["l"] = k.centered();
      matrices.push_back(std::move(entry));
    }
    const Eigen::VectorXd energies = pt_band_energies(params, pattern, k);
    const Asymptotic asym = asymptotic_band(params, pattern, k.k());
    for (Eigen::Index i = 0; i < energies.size(); ++i) {
      report.rows.push_back({static_cast<long long>(k.centered()), k.k(), static_cast<long long>(i),
                             energies(i), optional_cell(asym.line), optional_cell(asym.lo),
                             optional_cell(asym.hi)});
    }
  }
  if (config.format == Format::json) report.metadata["matrices"] = matrices;
  return report;
}

Report cmd_compare(const RunConfig& config) {
  Report report;
  report.config = config;
  report.metadata["pattern"] = config.pattern->label();
  auto add_rows = [&](const Comparison& cmp, std::optional<double> epsilon) {
    for (const auto& m : cmp.band.per_k) {
      if (!selected(config, m.k)) continue;
      std::vector<Cell> row;
      if (epsilon) row.emplace_back(*epsilon);
      row.insert(row.end(), {static_cast<long long>(m.k.centered()), m.k.k(),
                             static_cast<long long>(m.states.size()),
                             optional_cell(m.pt_max_residual), optional_cell(m.pt_mean_residual)});
      report.rows.push_back(std::move(row));
    }
    report.warnings.insert(report.warnings.end(), cmp.band.warnings.begin(),
                           cmp.band.warnings.end());
  };

  if (!config.scaling) {
    report.columns = {"l", "k", "count", "max_abs_diff", "mean_abs_diff"};
    const Comparison cmp = compare_once(config, config.params);
    add_rows(cmp, std::nullopt);
    report.metadata["max_residual"] = cmp.max_residual;
    report.metadata["mean_residual"] = cmp.mean_residual;
    if (cmp.line_asymptotic_max_diff) {
      report.metadata["line_asymptotic_max_diff"] = *cmp.line_asymptotic_max_diff;
    }
    return report;
  }

  report.columns = {"epsilon", "l", "k", "count", "max_abs_diff", "mean_abs_diff"};
  json table = json::array();
  std::optional<double> previous;
  for (int halving = 0; halving < 3; ++halving) {
    ModelParams params = config.params;
    params.epsilon = config.params.epsilon / std::pow(2.0, halving);
    const Comparison cmp = compare_once(config, params);
    add_rows(cmp, params.epsilon);
    json entry = {{"epsilon", params.epsilon}, {"max_residual", cmp.max_residual}};
    if (previous) entry["decay_factor"] = *previous / cmp.max_residual;
    table.push_back(std::move(entry));
    previous = cmp.max_residual;
  }
  report.metadata["scaling"] = table;
  return report;
}

Report cmd_oracle(const RunConfig& config) {
  Report report;
  report.config = config;
  const std::vector<double> values = full_spectrum(config.params, dense_cap_from_env());
  report.columns = {"index", "energy"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    report.rows.push_back({static_cast<long long>(i), values[i]});
  }
  report.metadata["dimension"] = values.size();
  return report;
}

Report run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::spectrum: return cmd_spectrum(config);
    case Command::band: return cmd_band(config);
    case Command::pt: return cmd_pt(config);
    case Command::compare: return cmd_compare(config);
    case Command::oracle: break;
  }
  return cmd_oracle(config);
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "# breather " << to_string(report.config.command) << '\n';
  out << "# config: " << to_json(report.config).dump() << '\n';
  for (const auto& [key, value] : report.metadata.items()) {
    out << "# " << key << ": " << value.dump() << '\n';
  }
  for (const auto& warning : report.warnings) out << "# warning: " << warning << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_to_csv(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Report& report) {
  json doc;
  doc["command"] = to_string(report.config.command);
  doc["config"] = to_json(report.config);
  doc["metadata"] = report.metadata;
  doc["warnings"] = report.warnings;
  doc["columns"] = report.columns;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json object = json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      object[report.columns[i]] = cell_to_json(row[i]);
    }
    rows.push_back(std::move(object));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + '\n';
}

std::string render(const Report& report) {
  return report.config.format == Format::csv ? render_csv(report) : render_json(report);
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ResonanceError& e) {
    err << e.what() << '\n';
    return kExitResonance;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const BandOverlapError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = render(run(config));
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
  if (config.out.empty()) {
    out << text;
    return out ? kExitOk : kExitIo;
  }
  std::ofstream file(config.out);
  if (!file || !(file << text)) {
    err << "i/o error: cannot write '" << config.out << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace breather::cli
