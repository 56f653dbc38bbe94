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

#include "gratestack/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include "gratestack/presets.hpp"
#include "gratestack/recipe_io.hpp"
#include "gratestack/stack.hpp"
#include "gratestack/tomography.hpp"
#include "gratestack/units.hpp"

namespace gratestack::cli {

namespace {

constexpr const char* kCommandNames[] = {"synthesize", "simulate",  "tomography",
                                         "sweep",      "calibrate", "verify"};

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

[[noreturn]] void usage(const std::string& message) {
  throw Error(ErrorCode::kUsageError, message);
}

double option_value(const std::string& flag, const std::string& text,
                    double (*parser)(std::string_view)) {
  try {
    return parser(text);
  } catch (const Error& e) {
    usage(flag + ": " + e.what());
  }
}

struct RawOptions {
  std::string recipe;
  std::string out;
  std::string preset;
  std::string wavelength;
  std::string thickness;
  std::string delta_n;
  std::string n0;
  std::string theta_s;
  std::string theta_r;
  std::string convention;
  bool force = false;
  std::string min_fidelity;
  std::string target;
  std::size_t modes = 4;
  std::string param;
  std::string start;
  std::string stop;
  std::size_t steps = 0;
  std::string measured;
  std::string input;
  std::string amplitudes;
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--wavelength", o.wavelength, "Vacuum wavelength (nm, um, mm)");
  sub->add_option("--thickness", o.thickness, "Grating thickness (nm, um, mm)");
  sub->add_option("--delta-n", o.delta_n, "Index modulation");
  sub->add_option("--n0", o.n0, "Base refractive index");
  sub->add_option("--theta-s", o.theta_s, "Signal cone angle (deg, mrad, rad)");
  sub->add_option("--theta-r", o.theta_r, "Reference cone angle (deg, mrad, rad)");
}

void add_force(CLI::App* sub, RawOptions& o) {
  sub->add_flag("--force", o.force, "Skip the volume-hologram thickness check");
}

void add_recipe_source(CLI::App* sub, RawOptions& o) {
  sub->add_option("--recipe", o.recipe, "Recipe file");
  sub->add_option("--preset", o.preset, "Bundled configuration (paper-cnot)");
  sub->add_option("--convention", o.convention, "physical or ideal");
  add_force(sub, o);
}

std::string help_for(const CLI::App& app, const std::vector<std::string>& args) {
  for (const std::string& a : args) {
    if (a.starts_with("-")) continue;
    for (const char* name : kCommandNames) {
      if (a == name) return app.get_subcommand(name)->help();
    }
    break;
  }
  return app.help();
}

ConeBasis basis_with(const ConeBasis& base, const Overrides& ov,
                     double wavelength) {
  const double theta_s = ov.theta_s.value_or(base.signal_cone_angle());
  double theta_r = ov.theta_r.value_or(base.reference_cone_angle());
  if (ov.theta_s && !ov.theta_r) theta_r = default_reference_cone_angle(theta_s);
  return ConeBasis(base.azimuths(), theta_s, theta_r,
                   2.0 * std::numbers::pi / wavelength);
}

StackRecipe apply_overrides(const StackRecipe& recipe, const Overrides& ov) {
  if (!ov.changes_geometry()) return recipe;
  StackParameters p = recipe.parameters;
  if (ov.wavelength) p.wavelength = *ov.wavelength;
  if (ov.thickness) p.thickness = *ov.thickness;
  if (ov.delta_n) p.material.index_modulation = *ov.delta_n;
  if (ov.n0) p.material.base_index = *ov.n0;
  StackRecipe out{recipe.name, basis_with(recipe.basis, ov, p.wavelength), p,
                  {}, recipe.intended_target};
  const std::vector<std::string> labels = recipe.basis.labels();
  RecordOptions ro;
  ro.force = ov.force;
  for (const GratingSpec& g : recipe.gratings) {
    ro.recording_phase = g.recording_phase;
    ro.efficiency = g.efficiency;
    const std::string sig = labels.at(*recipe.basis.index_of(g.signal));
    const std::string ref = labels.at(*recipe.basis.index_of(g.reference));
    out.gratings.push_back(record(out.basis.mode(sig), out.basis.mode(ref),
                                  p.thickness, p.material, p.wavelength, ro));
  }
  return out;
}

StackRecipe load_recipe(const RunConfig& c) {
  if (c.recipe_path) {
    RecipeParseOptions po;
    po.force = c.overrides.force;
    return apply_overrides(read_recipe_file(*c.recipe_path, po), c.overrides);
  }
  if (c.preset) return apply_overrides(presets::paper_cnot(), c.overrides);
  usage("this command needs --recipe or --preset");
}

PhaseConvention convention_of(const RunConfig& c) {
  return c.overrides.convention.value_or(PhaseConvention::kPhysical);
}

std::vector<std::vector<double>> read_matrix_csv(const std::filesystem::path& p) {
  const std::string text = read_text_file(p);
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      try {
        row.push_back(parse_number(cell));
      } catch (const Error&) {
        throw Error(ErrorCode::kParseError, p.string() + ": line " +
                                                std::to_string(line_no) +
                                                ": bad entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd target_matrix(const std::string& target, std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  if (target == "identity") return permutation_matrix(image);
  if (target == "x") {
    std::swap(image[n - 2], image[n - 1]);
    return permutation_matrix(image);
  }
  if (target == "swap") {
    if (n != 4) {
      throw Error(ErrorCode::kWrongDimension, "swap needs a 4-mode basis");
    }
    std::swap(image[1], image[2]);
    return permutation_matrix(image);
  }
  if (!std::filesystem::exists(target)) {
    throw Error(ErrorCode::kUnknownGateName,
                "'" + target +
                    "' is neither cnot, x, swap, identity nor a CSV file");
  }
  const auto rows = read_matrix_csv(target);
  const auto size = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != size) {
      throw Error(ErrorCode::kNotAPermutation, "permutation CSV must be square");
    }
    for (Eigen::Index col = 0; col < size; ++col) {
      m(r, col) = row[static_cast<std::size_t>(col)];
    }
  }
  permutation_image(m);
  return m;
}

StackParameters default_parameters(const Overrides& ov, const ConeBasis& basis) {
  StackParameters p;
  p.wavelength = ov.wavelength.value_or(presets::kWavelength);
  p.thickness = ov.thickness.value_or(presets::kThickness);
  p.material.base_index = ov.n0.value_or(p.material.base_index);
  p.material.index_modulation =
      ov.delta_n ? *ov.delta_n
                 : index_modulation_for_efficiency(
                       basis.signal(0), basis.reference(0), p.thickness,
                       p.material.base_index, p.wavelength, 1.0);
  return p;
}

int cmd_synthesize(const RunConfig& c, std::ostream& out) {
  const double wavelength = c.overrides.wavelength.value_or(presets::kWavelength);
  const double theta_s =
      c.overrides.theta_s.value_or(from_degrees(presets::kSignalConeDegrees));
  const double theta_r = c.overrides.theta_r.value_or(
      c.overrides.theta_s ? default_reference_cone_angle(theta_s)
                          : from_degrees(presets::kReferenceConeDegrees));
  const ConeBasis basis = make_cone_basis(c.modes, theta_s, theta_r,
                                          2.0 * std::numbers::pi / wavelength);
  const StackParameters p = default_parameters(c.overrides, basis);

  StackRecipe recipe = c.target == "cnot"
                           ? cnot_recipe(basis, p)
                           : permutation_recipe(target_matrix(c.target, c.modes),
                                                basis, p, "permutation");
  if (c.target == "x" || c.target == "swap" || c.target == "identity") {
    recipe.name = c.target;
  }
  const std::filesystem::path path = c.output_dir / (recipe.name + ".grs");
  write_text_file(path, emit_recipe(recipe));
  const double total =
      static_cast<double>(recipe.gratings.size()) * p.thickness;
  out << "recipe " << recipe.name << ": " << recipe.gratings.size()
      << " gratings, total thickness " << format("%.2f", total * 1e3)
      << " mm\n";
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const StackRecipe recipe = load_recipe(c);
  const double min = c.min_fidelity.value_or(1.0 - 1e-12);
  const Verification v = verify_recipe(recipe, 1.0 - min);
  std::ostringstream text;
  text << "recipe " << recipe.name << "\n";
  text << "gratings " << recipe.gratings.size() << "\n";
  text << "fidelity " << format("%.12f", v.fidelity) << "\n";
  text << "threshold " << format("%.12f", min) << "\n";
  text << (v.passed ? "PASS" : "FAIL") << "\n";
  write_text_file(c.output_dir / "verify.txt", text.str());
  out << text.str();
  return v.passed ? kExitOk : kExitThreshold;
}

Eigen::VectorXcd input_state(const RunConfig& c, const ConeBasis& basis) {
  const std::size_t n = basis.dimension();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  if (c.amplitudes) {
    std::istringstream cells(*c.amplitudes);
    std::vector<Complex> values;
    for (std::string cell; std::getline(cells, cell, ',');) {
      const auto colon = cell.find(':');
      const double re = option_value("--amplitudes", cell.substr(0, colon),
                                     parse_number);
      const double im = colon == std::string::npos
                            ? 0.0
                            : option_value("--amplitudes",
                                           cell.substr(colon + 1), parse_number);
      values.emplace_back(re, im);
    }
    if (values.size() != n) {
      usage("--amplitudes needs " + std::to_string(n) + " entries");
    }
    for (std::size_t i = 0; i < n; ++i) amps(static_cast<Eigen::Index>(i)) = values[i];
    return amps;
  }
  const std::vector<std::string> names = state_labels(n);
  const std::string label = c.input.value_or(names.front());
  for (std::size_t i = 0; i < n; ++i) {
    if (label == names[i] || label == "S" + std::to_string(i + 1)) {
      amps(static_cast<Eigen::Index>(i)) = 1.0;
      return amps;
    }
  }
  usage("--input: unknown basis state '" + label + "'");
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const StackRecipe recipe = load_recipe(c);
  const ImperfectionModel model = ImperfectionModel::nominal(recipe);
  std::vector<ModeOperator> ops;
  for (std::size_t i = 0; i < recipe.gratings.size(); ++i) {
    OperatorOptions oo;
    oo.efficiency = model.efficiency[i];
    oo.convention = convention_of(c);
    ops.push_back(grating_operator(recipe.gratings[i], recipe.basis, oo));
  }
  const std::vector<std::string> labels = recipe.basis.labels();
  const ModeOperator u = compose(ops, labels);

  std::ostringstream csv;
  csv << "row,column,re,im\n";
  for (Eigen::Index r = 0; r < u.dimension(); ++r) {
    for (Eigen::Index col = 0; col < u.dimension(); ++col) {
      const Complex v = u.matrix()(r, col);
      csv << labels[static_cast<std::size_t>(r)] << ","
          << labels[static_cast<std::size_t>(col)] << ","
          << format("%.12f", v.real()) << "," << format("%.12f", v.imag())
          << "\n";
    }
  }
  write_text_file(c.output_dir / "operator.csv", csv.str());

  const SuperpositionState psi(recipe.basis, input_state(c, recipe.basis));
  const SuperpositionState result = apply(u, psi);
  std::ostringstream state;
  state << "mode,intensity\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    state << labels[i] << ","
          << format("%.6f", std::norm(result.amplitudes()(static_cast<Eigen::Index>(i))))
          << "\n";
  }
  write_text_file(c.output_dir / "state.csv", state.str());
  out << "unitarity error " << format("%.3e", u.unitarity_error()) << "\n";
  out << state.str();
  return kExitOk;
}

int cmd_tomography(const RunConfig& c, std::ostream& out) {
  const StackRecipe recipe = load_recipe(c);
  ImperfectionModel model = ImperfectionModel::nominal(recipe);
  if (!c.recipe_path && c.preset && !c.overrides.changes_geometry()) {
    model = fit_calibration(presets::paper_table(), recipe).model;
  }
  const TomographyTable t = run_tomography(recipe, model, convention_of(c));
  const Report report = emit_report(t, recipe.intended_target);
  write_report(c.output_dir, "tomography", report);
  out << report.text;
  if (c.min_fidelity && recipe.intended_target &&
      table_fidelity(t, *recipe.intended_target) < *c.min_fidelity) {
    out << "FAIL: fidelity below " << format("%.6f", *c.min_fidelity) << "\n";
    return kExitThreshold;
  }
  return kExitOk;
}

std::string calibration_text(const CalibrationResult& r) {
  std::ostringstream text;
  text << "eta_a " << format("%.6f", r.parameters.eta_a) << "\n";
  text << "eta_b " << format("%.6f", r.parameters.eta_b) << "\n";
  text << "detuning " << format("%.6f", r.parameters.detuning) << "\n";
  text << "transmission " << format("%.6f", r.parameters.transmission) << "\n";
  text << "residual " << format("%.6e", r.residual) << "\n";
  return text.str();
}

int cmd_calibrate(const RunConfig& c, std::ostream& out) {
  const StackRecipe recipe = load_recipe(c);
  TomographyTable measured;
  if (c.measured) {
    measured = table_from_csv(read_text_file(*c.measured));
  } else if (c.preset) {
    measured = presets::paper_table();
  } else {
    usage("calibrate needs --measured");
  }
  CalibrationResult result;
  bool converged = true;
  try {
    result = fit_calibration(measured, recipe);
  } catch (const CalibrationError& e) {
    result = e.best();
    converged = false;
  }
  std::string text = calibration_text(result);
  text += converged ? "converged\n" : "nonconvergent\n";
  write_text_file(c.output_dir / "calibration.txt", text);
  const TomographyTable fitted =
      run_tomography(recipe, result.model, convention_of(c));
  write_report(c.output_dir, "calibrated",
               emit_report(fitted, recipe.intended_target));
  out << text;
  return converged ? kExitOk : kExitThreshold;
}

GratingSpec sweep_grating(const Overrides& ov) {
  const double wavelength = ov.wavelength.value_or(presets::kWavelength);
  const double k = 2.0 * std::numbers::pi / wavelength;
  const double theta_s =
      ov.theta_s.value_or(from_degrees(presets::kSignalConeDegrees));
  const double theta_r = ov.theta_r.value_or(
      ov.theta_s ? default_reference_cone_angle(theta_s)
                 : from_degrees(presets::kReferenceConeDegrees));
  const PlaneWaveState s{k, theta_s, std::numbers::pi / 2.0, "S",
                         ModeRole::kSignal};
  const PlaneWaveState r{k, theta_r, 3.0 * std::numbers::pi / 2.0, "R",
                         ModeRole::kReference};
  Material m;
  m.base_index = ov.n0.value_or(m.base_index);
  const double d = ov.thickness.value_or(presets::kThickness);
  m.index_modulation = ov.delta_n.value_or(index_modulation_for_efficiency(
      s, r, d, m.base_index, wavelength, presets::kFirstPairEfficiency));
  RecordOptions ro;
  ro.force = ov.force;
  return record(s, r, d, m, wavelength, ro);
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const SweepSpec& s = *c.sweep;
  const GratingSpec g = sweep_grating(c.overrides);
  std::ostringstream csv;
  csv << s.parameter << ",efficiency\n";
  auto value_at = [&](std::size_t i) {
    return s.start + (s.stop - s.start) * static_cast<double>(i) /
                         static_cast<double>(s.steps - 1);
  };
  for (std::size_t i = 0; i < s.steps; ++i) {
    const double x = value_at(i);
    double eta = 0.0;
    GratingSpec h = g;
    if (s.parameter == "thickness") {
      h.thickness = x;
      eta = diffraction_efficiency(coupling_strength(h), 0.0);
    } else if (s.parameter == "delta_n") {
      h.material.index_modulation = x;
      eta = diffraction_efficiency(coupling_strength(h), 0.0);
    } else {
      const double offsets[] = {x};
      eta = selectivity_curve(g, offsets).front().second;
    }
    csv << format("%.10g", x) << "," << format("%.10g", eta) << "\n";
  }
  write_text_file(c.output_dir / "sweep.csv", csv.str());

  const double nu = coupling_strength(g);
  if (s.parameter == "thickness") {
    out << "first maximum (nu = pi/2) at thickness "
        << format("%.6f", g.thickness * (std::numbers::pi / 2.0) / nu * 1e3)
        << " mm\n";
  } else if (s.parameter == "delta_n") {
    out << "first maximum (nu = pi/2) at delta_n "
        << format("%.6e",
                  g.material.index_modulation * (std::numbers::pi / 2.0) / nu)
        << "\n";
  } else {
    out << "fwhm " << format("%.6f", fwhm_selectivity(g) * 1e3) << " mrad\n";
  }
  out << "wrote " << (c.output_dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
      return kExitParse;
    case ErrorCode::kIoFailure:
      return kExitIo;
    case ErrorCode::kNonconvergent:
      return kExitThreshold;
    default:
      return kExitUsage;
  }
}

RunConfig parse_args(const std::vector<std::string>& args,
                     const std::optional<std::string>& env_out) {
  CLI::App app{"Volume Bragg grating stack gate simulator", "gratestack"};
  app.require_subcommand(1);
  RawOptions o;

  CLI::App* synth = app.add_subcommand("synthesize", "Write a recipe for a gate");
  add_common(synth, o);
  synth->add_option("--target", o.target,
                    "cnot, x, swap, identity or a permutation CSV")
      ->required();
  synth->add_option("--modes", o.modes, "Number of signal modes");

  CLI::App* sim = app.add_subcommand("simulate", "Compose the stack operator");
  add_common(sim, o);
  add_recipe_source(sim, o);
  sim->add_option("--input", o.input, "Input basis state (00, 01, ... or S1..)");
  sim->add_option("--amplitudes", o.amplitudes,
                  "Comma-separated signal amplitudes re[:im]");

  CLI::App* tomo = app.add_subcommand("tomography", "Simulated tomography table");
  add_common(tomo, o);
  add_recipe_source(tomo, o);
  tomo->add_option("--min-fidelity", o.min_fidelity, "Acceptance threshold");

  CLI::App* sweep = app.add_subcommand("sweep", "Efficiency parameter sweep");
  add_common(sweep, o);
  add_force(sweep, o);
  sweep->add_option("--param", o.param, "thickness, delta_n or detuning_angle")
      ->required();
  sweep->add_option("--start", o.start, "First value")->required();
  sweep->add_option("--stop", o.stop, "Last value")->required();
  sweep->add_option("--steps", o.steps, "Number of samples (>= 2)")->required();

  CLI::App* cal = app.add_subcommand("calibrate", "Fit imperfections to a table");
  add_common(cal, o);
  add_recipe_source(cal, o);
  cal->add_option("--measured", o.measured, "Measured table CSV");

  CLI::App* ver = app.add_subcommand("verify", "Ideal-composition fidelity");
  add_common(ver, o);
  add_recipe_source(ver, o);
  ver->add_option("--min-fidelity", o.min_fidelity, "Acceptance threshold");

  app.add_subcommand("help", "Show usage");

  RunConfig c;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    c.command = Command::kHelp;
    c.help_text = help_for(app, args);
    return c;
  } catch (const CLI::CallForAllHelp&) {
    c.command = Command::kHelp;
    c.help_text = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    usage(std::string(e.what()));
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "help") {
    c.command = Command::kHelp;
    app.clear();  // otherwise help() describes the selected subcommand
    c.help_text = app.help();
    return c;
  }
  static const std::pair<const char*, Command> kCommands[] = {
      {"synthesize", Command::kSynthesize}, {"simulate", Command::kSimulate},
      {"tomography", Command::kTomography}, {"sweep", Command::kSweep},
      {"calibrate", Command::kCalibrate},   {"verify", Command::kVerify}};
  for (const auto& [n, cmd] : kCommands) {
    if (name == n) c.command = cmd;
  }

  if (!o.out.empty()) {
    c.output_dir = o.out;
  } else if (env_out && !env_out->empty()) {
    c.output_dir = *env_out;
  }
  if (!o.recipe.empty()) c.recipe_path = o.recipe;
  if (!o.preset.empty()) {
    if (o.preset != "paper-cnot") usage("--preset: unknown preset '" + o.preset + "'");
    c.preset = o.preset;
  }
  if (!o.measured.empty()) c.measured = o.measured;
  if (!o.input.empty()) c.input = o.input;
  if (!o.amplitudes.empty()) c.amplitudes = o.amplitudes;
  c.target = o.target;
  c.modes = o.modes;
  if (c.command == Command::kSynthesize && c.modes < 2) {
    usage("--modes must be at least 2");
  }

  Overrides& ov = c.overrides;
  ov.force = o.force;
  if (!o.wavelength.empty()) ov.wavelength = option_value("--wavelength", o.wavelength, parse_length);
  if (!o.thickness.empty()) ov.thickness = option_value("--thickness", o.thickness, parse_length);
  if (!o.delta_n.empty()) ov.delta_n = option_value("--delta-n", o.delta_n, parse_number);
  if (!o.n0.empty()) ov.n0 = option_value("--n0", o.n0, parse_number);
  if (!o.theta_s.empty()) ov.theta_s = option_value("--theta-s", o.theta_s, parse_angle);
  if (!o.theta_r.empty()) ov.theta_r = option_value("--theta-r", o.theta_r, parse_angle);
  if (!o.convention.empty()) {
    if (o.convention == "physical") {
      ov.convention = PhaseConvention::kPhysical;
    } else if (o.convention == "ideal") {
      ov.convention = PhaseConvention::kIdeal;
    } else {
      usage("--convention: expected physical or ideal, got '" + o.convention + "'");
    }
  }
  if (!o.min_fidelity.empty()) {
    c.min_fidelity = option_value("--min-fidelity", o.min_fidelity, parse_number);
  }

  if (c.command == Command::kSweep) {
    SweepSpec s;
    s.parameter = o.param;
    double (*parser)(std::string_view) = nullptr;
    if (o.param == "thickness") {
      parser = parse_length;
    } else if (o.param == "delta_n") {
      parser = parse_number;
    } else if (o.param == "detuning_angle") {
      parser = parse_angle;
    } else {
      throw Error(ErrorCode::kUnknownParameter,
                  "--param: '" + o.param +
                      "' is not one of thickness, delta_n, detuning_angle");
    }
    s.start = option_value("--start", o.start, parser);
    s.stop = option_value("--stop", o.stop, parser);
    s.steps = o.steps;
    if (s.steps < 2) usage("--steps must be at least 2");
    c.sweep = s;
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::kHelp:
      out << c.help_text;
      return kExitOk;
    case Command::kSynthesize:
      return cmd_synthesize(c, out);
    case Command::kSimulate:
      return cmd_simulate(c, out);
    case Command::kTomography:
      return cmd_tomography(c, out);
    case Command::kSweep:
      return cmd_sweep(c, out);
    case Command::kCalibrate:
      return cmd_calibrate(c, out);
    case Command::kVerify:
      return cmd_verify(c, out);
  }
  err << "unhandled command\n";
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_out;
  if (const char* env = std::getenv("GRATESTACK_OUT")) env_out = env;
  try {
    const RunConfig config = parse_args(args, env_out);
    return run(config, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "gratestack: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gratestack: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace gratestack::cli
