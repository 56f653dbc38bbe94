// Copyright 2026 The Gratestack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gratestack/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

namespace gratestack {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct Link {
  std::size_t a = 0;  // signal port mode
  std::size_t b = 0;  // reference port mode
  bool conjugate = false;  // first recorded mode is a reference mode
  bool signal_port_is_signal = false;
  bool reference_port_is_signal = false;
  Complex forward{1.0, 0.0};   // e^{-i phase}
  Complex backward{1.0, 0.0};  // e^{+i phase}
};

std::vector<Link> links_of(const StackRecipe& recipe) {
  std::vector<Link> links;
  links.reserve(recipe.gratings.size());
  for (const GratingSpec& g : recipe.gratings) {
    const auto a = recipe.basis.index_of(g.signal);
    const auto b = recipe.basis.index_of(g.reference);
    if (!a || !b) {
      throw Error(ErrorCode::kUnknownMode,
                  "grating " + g.signal.label + "/" + g.reference.label +
                      " is not on the recipe basis");
    }
    const std::size_t n = recipe.basis.dimension();
    Link l;
    l.a = *a;
    l.b = *b;
    l.signal_port_is_signal = *a < n;
    l.reference_port_is_signal = *b < n;
    l.conjugate = !l.signal_port_is_signal;
    l.forward = std::exp(-kI * g.recording_phase);
    l.backward = std::exp(kI * g.recording_phase);
    links.push_back(l);
  }
  return links;
}

void apply_block(std::vector<Complex>& v, const Link& l,
                 const Eigen::Matrix2cd& block) {
  const Complex va = v[l.a];
  const Complex vb = v[l.b];
  v[l.a] = block(0, 0) * va + block(0, 1) * vb;
  v[l.b] = block(1, 0) * va + block(1, 1) * vb;
}

double coupling_for(double efficiency) {
  return std::asin(std::sqrt(std::clamp(efficiency, 0.0, 1.0)));
}

// Residual of the tied model against one measured table, with the total
// transmission solved in closed form.
class Evaluator {
 public:
  Evaluator(const TomographyTable& measured, const StackRecipe& recipe)
      : links_(links_of(recipe)),
        n_(recipe.basis.dimension()),
        measured_(measured),
        use_references_(measured.reference_intensities.has_value()),
        use_undetected_(!use_references_ && measured.undetected.has_value()) {
    field_.resize(2 * n_);
  }

  double residual(double eta_a, double eta_b, double xi,
                  double* transmission) {
    const double nu_a = coupling_for(eta_a);
    const double nu_b = coupling_for(eta_b);
    const CouplerAmplitudes on_a = coupler_amplitudes(nu_a, 0.0);
    const CouplerAmplitudes on_b = coupler_amplitudes(nu_b, 0.0);
    const CouplerAmplitudes off_b = coupler_amplitudes(nu_b, xi);

    double smm = 0.0;
    double smf = 0.0;
    double sff = 0.0;
    auto add = [&](double m, double f) {
      smm += m * m;
      smf += m * f;
      sff += f * f;
    };
    for (std::size_t i = 0; i < n_; ++i) {
      std::fill(field_.begin(), field_.end(), Complex{});
      field_[i] = 1.0;
      for (const Link& l : links_) {
        const CouplerAmplitudes& pa =
            !l.conjugate ? on_a : (l.signal_port_is_signal ? off_b : on_b);
        const CouplerAmplitudes& pb =
            !l.conjugate ? on_a : (l.reference_port_is_signal ? off_b : on_b);
        const Complex va = field_[l.a];
        const Complex vb = field_[l.b];
        field_[l.a] = pa.through * va - kI * pb.diffracted * l.backward * vb;
        field_[l.b] = -kI * pa.diffracted * l.forward * va + pb.through * vb;
      }
      const auto row = static_cast<Eigen::Index>(i);
      for (std::size_t c = 0; c < n_; ++c) {
        add(measured_.intensities(row, static_cast<Eigen::Index>(c)),
            std::norm(field_[c]));
      }
      if (use_references_) {
        for (std::size_t c = 0; c < n_; ++c) {
          add((*measured_.reference_intensities)(
                  row, static_cast<Eigen::Index>(c)),
              std::norm(field_[n_ + c]));
        }
      } else if (use_undetected_) {
        double lost = 0.0;
        for (std::size_t c = 0; c < n_; ++c) lost += std::norm(field_[n_ + c]);
        add((*measured_.undetected)(row), lost);
      }
    }
    double t = 1.0;
    if (!links_.empty() && sff > 0.0) t = std::clamp(smf / sff, 0.0, 1.0);
    if (transmission) *transmission = t;
    return std::max(0.0, smm - 2.0 * t * smf + t * t * sff);
  }

 private:
  std::vector<Link> links_;
  std::size_t n_;
  const TomographyTable& measured_;
  bool use_references_;
  bool use_undetected_;
  std::vector<Complex> field_;
};

struct Candidate {
  double residual = std::numeric_limits<double>::infinity();
  double eta_a = 0.0;
  double eta_b = 0.0;
  double xi = 0.0;

  bool better_than(const Candidate& o) const {
    return std::tie(residual, eta_a, eta_b, xi) <
           std::tie(o.residual, o.eta_a, o.eta_b, o.xi);
  }
};

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) {
    out.push_back(std::min(hi, lo + step * static_cast<double>(k)));
  }
  return out;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": bad value '" + cell + "'");
}

}  // namespace

PortDetuning angular_detuning(const GratingSpec& g, double offset) {
  return tilt_detuning(
      detuning(g, tilted_port_mode(g, offset, Port::kSignal), Port::kSignal));
}

ImperfectionModel ImperfectionModel::ideal(std::size_t gratings) {
  return {std::vector<double>(gratings, 1.0),
          std::vector<PortDetuning>(gratings),
          std::vector<double>(gratings, 1.0)};
}

ImperfectionModel ImperfectionModel::nominal(const StackRecipe& recipe) {
  ImperfectionModel m = ideal(recipe.gratings.size());
  for (std::size_t i = 0; i < recipe.gratings.size(); ++i) {
    m.efficiency[i] = std::pow(std::sin(effective_coupling(recipe.gratings[i])), 2);
  }
  return m;
}

std::vector<std::string> state_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  const bool power_of_two = n >= 2 && (n & (n - 1)) == 0;
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    if (power_of_two) {
      std::string s(bits, '0');
      for (std::size_t b = 0; b < bits; ++b) {
        if (i & (std::size_t{1} << b)) s[bits - 1 - b] = '1';
      }
      labels.push_back(s);
    } else {
      labels.push_back("S" + std::to_string(i + 1));
    }
  }
  return labels;
}

TomographyTable make_table(const Eigen::MatrixXd& intensities) {
  TomographyTable t;
  t.intensities = intensities;
  t.row_labels = state_labels(static_cast<std::size_t>(intensities.rows()));
  t.column_labels = state_labels(static_cast<std::size_t>(intensities.cols()));
  return t;
}

TomographyTable run_tomography(const StackRecipe& recipe,
                               const ImperfectionModel& model,
                               PhaseConvention convention) {
  const std::size_t g = recipe.gratings.size();
  if (model.efficiency.size() != g || model.detuning.size() != g ||
      model.transmission.size() != g) {
    throw Error(ErrorCode::kSizeMismatch,
                "imperfection model sized for " +
                    std::to_string(model.efficiency.size()) +
                    " gratings, recipe has " + std::to_string(g));
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (!(model.efficiency[i] >= 0.0 && model.efficiency[i] <= 1.0) ||
        !(model.transmission[i] >= 0.0 && model.transmission[i] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "efficiency and transmission must lie in [0, 1]");
    }
  }

  const std::vector<Link> links = links_of(recipe);
  std::vector<Eigen::Matrix2cd> blocks;
  std::vector<double> scatter;
  for (std::size_t i = 0; i < g; ++i) {
    CouplerSettings s;
    s.coupling = coupling_for(model.efficiency[i]);
    s.signal_port_detuning = model.detuning[i].signal_port;
    s.reference_port_detuning = model.detuning[i].reference_port;
    s.recording_phase = recipe.gratings[i].recording_phase;
    s.convention = convention;
    blocks.push_back(coupler_block(s));
    scatter.push_back(std::sqrt(model.transmission[i]));
  }

  const std::size_t n = recipe.basis.dimension();
  const auto ni = static_cast<Eigen::Index>(n);
  TomographyTable t = make_table(Eigen::MatrixXd::Zero(ni, ni));
  Eigen::MatrixXd refs = Eigen::MatrixXd::Zero(ni, ni);
  Eigen::VectorXd lost = Eigen::VectorXd::Zero(ni);
  std::vector<Complex> field(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(field.begin(), field.end(), Complex{});
    field[i] = 1.0;
    for (std::size_t k = 0; k < g; ++k) {
      apply_block(field, links[k], blocks[k]);
      for (Complex& amp : field) amp *= scatter[k];
    }
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t c = 0; c < n; ++c) {
      const auto col = static_cast<Eigen::Index>(c);
      t.intensities(row, col) = std::norm(field[c]);
      refs(row, col) = std::norm(field[n + c]);
    }
    lost(row) = refs.row(row).sum();
  }
  t.reference_intensities = std::move(refs);
  t.undetected = std::move(lost);
  return t;
}

std::vector<Crosstalk> crosstalk(const TomographyTable& t,
                                 const Eigen::MatrixXcd& target) {
  if (static_cast<std::size_t>(target.rows()) != t.size() ||
      t.intensities.cols() != t.intensities.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target and table differ in size");
  }
  const std::vector<std::size_t> image = permutation_image(target);
  std::vector<Crosstalk> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto row = t.intensities.row(static_cast<Eigen::Index>(i));
    const double total = row.sum();
    const double hit = row(static_cast<Eigen::Index>(image[i]));
    Crosstalk c;
    c.input = t.row_labels.at(i);
    c.raw = total - hit;
    c.normalized = total > 0.0 ? c.raw / total : 0.0;
    out.push_back(c);
  }
  return out;
}

std::vector<ColumnSum> column_sums(const TomographyTable& t, double threshold) {
  std::vector<ColumnSum> out;
  for (Eigen::Index c = 0; c < t.intensities.cols(); ++c) {
    ColumnSum s;
    s.label = t.column_labels.at(static_cast<std::size_t>(c));
    s.sum = t.intensities.col(c).sum();
    s.flagged = std::abs(s.sum - 1.0) > threshold;
    out.push_back(s);
  }
  return out;
}

double table_fidelity(const TomographyTable& t,
                      const Eigen::MatrixXcd& target) {
  if (static_cast<std::size_t>(target.rows()) != t.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target and table differ in size");
  }
  if (t.size() == 0) return 1.0;
  const std::vector<std::size_t> image = permutation_image(target);
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sum += t.intensities(static_cast<Eigen::Index>(i),
                         static_cast<Eigen::Index>(image[i]));
  }
  return sum / static_cast<double>(t.size());
}

ImperfectionModel model_from_parameters(const StackRecipe& recipe,
                                        const CalibrationParameters& p) {
  const std::vector<Link> links = links_of(recipe);
  const std::size_t g = links.size();
  ImperfectionModel m = ImperfectionModel::ideal(g);
  const double per_grating =
      g == 0 ? 1.0 : std::pow(p.transmission, 1.0 / static_cast<double>(g));
  for (std::size_t i = 0; i < g; ++i) {
    const Link& l = links[i];
    m.transmission[i] = per_grating;
    if (!l.conjugate) {
      m.efficiency[i] = p.eta_a;
      continue;
    }
    m.efficiency[i] = p.eta_b;
    m.detuning[i].signal_port = l.signal_port_is_signal ? p.detuning : 0.0;
    m.detuning[i].reference_port = l.reference_port_is_signal ? p.detuning : 0.0;
  }
  return m;
}

CalibrationResult fit_calibration(const TomographyTable& measured,
                                  const StackRecipe& recipe,
                                  const CalibrationOptions& options) {
  const std::size_t n = recipe.basis.dimension();
  const auto ni = static_cast<Eigen::Index>(n);
  if (measured.intensities.rows() != ni || measured.intensities.cols() != ni) {
    throw Error(ErrorCode::kDimensionMismatch,
                "measured table must be " + std::to_string(n) + "x" +
                    std::to_string(n));
  }
  if (measured.reference_intensities &&
      (measured.reference_intensities->rows() != ni ||
       measured.reference_intensities->cols() != ni)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reference intensities must match the table size");
  }
  if (measured.undetected && measured.undetected->size() != ni) {
    throw Error(ErrorCode::kDimensionMismatch,
                "undetected column must match the table size");
  }

  const std::vector<double> etas =
      grid(options.eta_min, options.eta_max, options.eta_step);
  const std::vector<double> xis =
      grid(0.0, options.detuning_max, options.detuning_step);

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1,
                                 static_cast<unsigned>(etas.size()));
  std::vector<Candidate> best(threads);
  auto worker = [&](unsigned id) {
    Evaluator eval(measured, recipe);
    for (std::size_t ia = id; ia < etas.size(); ia += threads) {
      for (double eb : etas) {
        for (double xi : xis) {
          Candidate c{eval.residual(etas[ia], eb, xi, nullptr), etas[ia], eb, xi};
          if (c.better_than(best[id])) best[id] = c;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (std::thread& th : pool) th.join();
  Candidate top = best[0];
  for (const Candidate& c : best) {
    if (c.better_than(top)) top = c;
  }
  std::size_t evaluations = etas.size() * etas.size() * xis.size();

  // Coordinate descent with step halving.
  Evaluator eval(measured, recipe);
  double p[3] = {top.eta_a, top.eta_b, top.xi};
  const double lo[3] = {options.eta_min, options.eta_min, 0.0};
  const double hi[3] = {options.eta_max, options.eta_max, options.detuning_max};
  double step[3] = {options.eta_step, options.eta_step, options.detuning_step};
  double current = top.residual;
  while (std::max({step[0], step[1], step[2]}) > options.refine_tolerance) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      for (double dir : {-1.0, 1.0}) {
        double trial[3] = {p[0], p[1], p[2]};
        trial[k] = std::clamp(p[k] + dir * step[k], lo[k], hi[k]);
        if (trial[k] == p[k]) continue;
        const double r = eval.residual(trial[0], trial[1], trial[2], nullptr);
        ++evaluations;
        if (r < current) {
          current = r;
          p[k] = trial[k];
          improved = true;
        }
      }
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
    }
  }

  CalibrationResult result;
  result.residual = eval.residual(p[0], p[1], p[2], &result.parameters.transmission);
  result.parameters.eta_a = p[0];
  result.parameters.eta_b = p[1];
  result.parameters.detuning = p[2];
  result.model = model_from_parameters(recipe, result.parameters);
  result.evaluations = evaluations + 1;
  if (result.residual > options.max_residual) {
    std::ostringstream msg;
    msg << "best residual " << result.residual << " exceeds "
        << options.max_residual;
    throw CalibrationError(msg.str(), std::move(result));
  }
  return result;
}

std::string table_to_csv(const TomographyTable& t) {
  std::ostringstream out;
  out << "input";
  for (const std::string& c : t.column_labels) out << "," << c;
  out << ",undetected\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out << t.row_labels.at(i);
    for (Eigen::Index c = 0; c < t.intensities.cols(); ++c) {
      out << "," << fixed6(t.intensities(row, c));
    }
    out << ",";
    if (t.undetected) out << fixed6((*t.undetected)(row));
    out << "\n";
  }
  return out.str();
}

TomographyTable table_from_csv(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) {
    throw Error(ErrorCode::kParseError, "line 1: missing header");
  }
  const std::vector<std::string> header = split_csv(lines[0]);
  if (header.empty() || header[0] != "input") {
    throw Error(ErrorCode::kParseError, "line 1: header must start with 'input'");
  }
  const bool has_undetected = header.back() == "undetected";
  const std::size_t cols = header.size() - 1 - (has_undetected ? 1 : 0);
  const std::size_t rows = lines.size() - 1;
  if (rows != cols) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(lines.size()) + ": table has " +
                    std::to_string(rows) + " rows but " + std::to_string(cols) +
                    " columns");
  }

  TomographyTable t;
  const auto n = static_cast<Eigen::Index>(cols);
  t.intensities = Eigen::MatrixXd::Zero(n, n);
  t.column_labels.assign(header.begin() + 1, header.begin() + 1 + n);
  Eigen::VectorXd lost = Eigen::VectorXd::Zero(n);
  bool all_lost_known = has_undetected;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t line_no = r + 2;
    const std::vector<std::string> cells = split_csv(lines[r + 1]);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells");
    }
    t.row_labels.push_back(cells[0]);
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index c = 0; c < n; ++c) {
      t.intensities(row, c) =
          parse_cell(cells[static_cast<std::size_t>(c) + 1], line_no);
    }
    if (has_undetected) {
      if (cells.back().empty()) {
        all_lost_known = false;
      } else {
        lost(row) = parse_cell(cells.back(), line_no);
      }
    }
  }
  if (all_lost_known && rows > 0) t.undetected = std::move(lost);
  return t;
}

Report emit_report(const TomographyTable& t,
                   const std::optional<Eigen::MatrixXcd>& target) {
  Report report;
  report.table_csv = table_to_csv(t);

  std::ostringstream text;
  std::ostringstream metrics;
  metrics << "metric,label,value\n";
  text << "Tomography (rows: input state, columns: detected output)\n";
  text << "input";
  for (const std::string& c : t.column_labels) text << "\t" << c;
  text << "\tundetected\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    text << t.row_labels.at(i);
    for (Eigen::Index c = 0; c < t.intensities.cols(); ++c) {
      text << "\t" << fixed6(t.intensities(row, c));
    }
    text << "\t" << (t.undetected ? fixed6((*t.undetected)(row)) : "-") << "\n";
  }

  text << "\nColumn sums\n";
  for (const ColumnSum& s : column_sums(t)) {
    text << "  " << s.label << "\t" << fixed6(s.sum)
         << (s.flagged ? "\tdeviates from 1" : "") << "\n";
    metrics << "column_sum," << s.label << "," << fixed6(s.sum) << "\n";
  }

  if (target && static_cast<std::size_t>(target->rows()) == t.size()) {
    text << "\nCrosstalk (raw, normalized by detected row total)\n";
    for (const Crosstalk& c : crosstalk(t, *target)) {
      text << "  " << c.input << "\t" << fixed6(c.raw) << "\t"
           << fixed6(c.normalized) << "\n";
      metrics << "crosstalk_raw," << c.input << "," << fixed6(c.raw) << "\n";
      metrics << "crosstalk_normalized," << c.input << ","
              << fixed6(c.normalized) << "\n";
    }
    const double f = table_fidelity(t, *target);
    text << "\nFidelity (mean target intensity): " << fixed6(f) << "\n";
    metrics << "fidelity,," << fixed6(f) << "\n";
  }
  report.text = text.str();
  report.metrics_csv = metrics.str();
  return report;
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCode::kIoFailure, "cannot create directory " +
                                             path.parent_path().string() +
                                             ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_report(const std::filesystem::path& dir, std::string_view stem,
                  const Report& report) {
  const std::string base(stem);
  write_text_file(dir / (base + ".txt"), report.text);
  write_text_file(dir / (base + ".csv"), report.table_csv);
  write_text_file(dir / (base + "_metrics.csv"), report.metrics_csv);
}

}  // namespace gratestack
