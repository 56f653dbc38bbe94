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

#include "gratestack/recipe_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "gratestack/error.hpp"

namespace gratestack {

namespace {

constexpr std::string_view kMagic = "# gratestack recipe v1";

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  return format_double(c.real()) + ":" + format_double(c.imag());
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(line, "expected a number, got '" + std::string(token) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view token, std::size_t line) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) return {parse_double(token, line), 0.0};
  return {parse_double(token.substr(0, colon), line),
          parse_double(token.substr(colon + 1), line)};
}

struct PendingGrating {
  std::size_t line = 0;
  std::string signal;
  std::string reference;
  double phase = 0.0;
  std::optional<double> efficiency;
};

}  // namespace

std::string emit_recipe(const StackRecipe& recipe) {
  const ConeBasis& basis = recipe.basis;
  const StackParameters& p = recipe.parameters;
  std::ostringstream out;
  out << kMagic << "\n";
  out << "name " << recipe.name << "\n";
  out << "modes " << basis.dimension() << "\n";
  out << "theta_s " << format_double(basis.signal_cone_angle()) << "\n";
  out << "theta_r " << format_double(basis.reference_cone_angle()) << "\n";
  out << "wavelength " << format_double(p.wavelength) << "\n";
  out << "thickness " << format_double(p.thickness) << "\n";
  out << "delta_n " << format_double(p.material.index_modulation) << "\n";
  out << "n0 " << format_double(p.material.base_index) << "\n";
  out << "material " << p.material.name << "\n";
  if (!basis.uniform_azimuths()) {
    out << "azimuths";
    for (double phi : basis.azimuths()) out << " " << format_double(phi);
    out << "\n";
  }
  if (recipe.intended_target) {
    const Eigen::MatrixXcd& t = *recipe.intended_target;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      out << "target_row";
      for (Eigen::Index c = 0; c < t.cols(); ++c) {
        out << " " << format_complex(t(r, c));
      }
      out << "\n";
    }
  }
  for (const GratingSpec& g : recipe.gratings) {
    const auto a = basis.index_of(g.signal);
    const auto b = basis.index_of(g.reference);
    if (!a || !b) {
      throw Error(ErrorCode::kUnknownMode,
                  "grating modes are not members of the recipe basis");
    }
    const auto labels = basis.labels();
    out << "grating " << labels[*a] << " " << labels[*b];
    if (g.recording_phase != 0.0) {
      out << " phase=" << format_double(g.recording_phase);
    }
    if (g.efficiency) out << " eta=" << format_double(*g.efficiency);
    out << "\n";
  }
  return out.str();
}

StackRecipe parse_recipe(std::string_view text,
                         const RecipeParseOptions& options) {
  std::map<std::string, std::pair<std::size_t, std::string>> header;
  std::vector<std::vector<Complex>> target_rows;
  std::vector<PendingGrating> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto space = line.find_first_of(" \t");
    const std::string key(line.substr(0, space));
    const std::string_view rest =
        space == std::string_view::npos ? std::string_view{}
                                        : trim(line.substr(space));

    if (key == "grating") {
      const auto tokens = split_ws(rest);
      if (tokens.size() < 2) fail(line_no, "grating needs two mode labels");
      PendingGrating g;
      g.line = line_no;
      g.signal = std::string(tokens[0]);
      g.reference = std::string(tokens[1]);
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const std::string_view t = tokens[i];
        if (t.starts_with("phase=")) {
          g.phase = parse_double(t.substr(6), line_no);
        } else if (t.starts_with("eta=")) {
          g.efficiency = parse_double(t.substr(4), line_no);
        } else {
          fail(line_no, "unknown grating attribute '" + std::string(t) + "'");
        }
      }
      pending.push_back(std::move(g));
    } else if (key == "target_row") {
      std::vector<Complex> row;
      for (auto t : split_ws(rest)) row.push_back(parse_complex(t, line_no));
      target_rows.push_back(std::move(row));
    } else if (key == "name" || key == "modes" || key == "theta_s" ||
               key == "theta_r" || key == "wavelength" ||
               key == "thickness" || key == "delta_n" || key == "n0" ||
               key == "material" || key == "azimuths") {
      if (!pending.empty()) fail(line_no, "header key after first grating");
      if (header.contains(key)) fail(line_no, "duplicate key '" + key + "'");
      header[key] = {line_no, std::string(rest)};
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  // Malformed numbers are reported before missing keys.
  for (const auto& [key, entry] : header) {
    if (key != "name" && key != "material" && key != "azimuths") {
      parse_double(trim(entry.second), entry.first);
    }
  }
  for (const char* required : {"name", "modes", "theta_s", "theta_r",
                               "wavelength", "thickness", "delta_n", "n0"}) {
    if (!header.contains(required)) {
      fail(line_no, std::string("missing header key '") + required + "'");
    }
  }
  auto number = [&](const std::string& key) {
    const auto& [ln, value] = header.at(key);
    return parse_double(trim(value), ln);
  };

  const auto& [modes_line, modes_text] = header.at("modes");
  const double modes_value = parse_double(trim(modes_text), modes_line);
  if (modes_value < 2 || modes_value != static_cast<double>(
                                            static_cast<std::size_t>(modes_value))) {
    fail(modes_line, "modes must be an integer >= 2");
  }
  const auto n = static_cast<std::size_t>(modes_value);

  StackParameters params;
  params.wavelength = number("wavelength");
  params.thickness = number("thickness");
  params.material.index_modulation = number("delta_n");
  params.material.base_index = number("n0");
  if (header.contains("material")) params.material.name = header["material"].second;
  if (!(params.wavelength > 0.0)) {
    fail(header["wavelength"].first, "wavelength must be positive");
  }

  std::vector<double> azimuths(n);
  if (header.contains("azimuths")) {
    const auto& [ln, value] = header.at("azimuths");
    const auto tokens = split_ws(value);
    if (tokens.size() != n) fail(ln, "expected one azimuth per mode");
    for (std::size_t i = 0; i < n; ++i) azimuths[i] = parse_double(tokens[i], ln);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      azimuths[i] = 2.0 * std::numbers::pi * static_cast<double>(i) /
                    static_cast<double>(n);
    }
  }

  const double k = 2.0 * std::numbers::pi / params.wavelength;
  std::optional<ConeBasis> basis;
  try {
    basis.emplace(azimuths, number("theta_s"), number("theta_r"), k);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail(header["theta_s"].first, e.what());
  }

  StackRecipe recipe{header["name"].second, *basis, params, {}, std::nullopt};

  if (!target_rows.empty()) {
    if (target_rows.size() != n) fail(line_no, "target needs one row per mode");
    Eigen::MatrixXcd t(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (target_rows[r].size() != n) {
        fail(line_no, "target row " + std::to_string(r + 1) +
                          " needs " + std::to_string(n) + " entries");
      }
      for (std::size_t c = 0; c < n; ++c) {
        t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            target_rows[r][c];
      }
    }
    recipe.intended_target = std::move(t);
  }

  for (const PendingGrating& pg : pending) {
    try {
      RecordOptions ro;
      ro.recording_phase = pg.phase;
      ro.efficiency = pg.efficiency;
      ro.force = options.force;
      recipe.gratings.push_back(record(basis->mode(pg.signal),
                                       basis->mode(pg.reference),
                                       params.thickness, params.material,
                                       params.wavelength, ro));
    } catch (const Error& e) {
      fail(pg.line, e.what());
    }
  }
  return recipe;
}

StackRecipe read_recipe_file(const std::filesystem::path& path,
                             const RecipeParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_recipe(buffer.str(), options);
}

void write_recipe_file(const std::filesystem::path& path,
                       const StackRecipe& recipe) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out << emit_recipe(recipe);
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace gratestack
