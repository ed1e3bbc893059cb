#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "molekul/error.hpp"
#include "molekul/numerical_semigroup.hpp"

namespace molekul {

enum class PointClass { atom, molecule_non_atom, non_molecule, gap };

constexpr std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::atom: return "atom";
    case PointClass::molecule_non_atom: return "molecule_non_atom";
    case PointClass::non_molecule: return "non_molecule";
    case PointClass::gap: return "gap";
  }
  return "unknown";
}

struct StripRow {
  std::string label;
  std::vector<PointClass> points;  // points[i] classifies the integer i + 1
};

/// Classifies 1..limit for a numerical semigroup.
inline StripRow classify_strip(const NumericalSemigroup& n, std::int64_t limit, std::string label = {}) {
  if (limit < 1) throw Error(ErrorKind::OutOfRange, "limit must be at least 1");
  StripRow row{label.empty() ? n.to_string() : std::move(label), {}};
  auto counts = detail::capped_counts(n, limit);
  const auto& atoms = n.atoms();
  row.points.reserve(static_cast<std::size_t>(limit));
  for (std::int64_t x = 1; x <= limit; ++x) {
    auto c = counts[static_cast<std::size_t>(x)];
    if (c == 0) {
      row.points.push_back(PointClass::gap);
    } else if (std::binary_search(atoms.begin(), atoms.end(), x)) {
      row.points.push_back(PointClass::atom);
    } else {
      row.points.push_back(c == 1 ? PointClass::molecule_non_atom : PointClass::non_molecule);
    }
  }
  return row;
}

struct StripColors {
  std::string atom = "#1f4fd8";
  std::string molecule_non_atom = "#d62728";
  std::string non_molecule = "#222222";
  std::string gap = "#cccccc";
};

constexpr int kDotPitch = 12;
constexpr int kRowHeight = 24;

/// Horizontal dot rows, one per chart. Output depends only on the input.
inline std::string strip_svg(const std::vector<StripRow>& rows, const StripColors& colors = {}) {
  constexpr int label_width = 120;
  constexpr int margin = 12;
  std::size_t columns = 0;
  for (const auto& r : rows) columns = std::max(columns, r.points.size());
  const int width = label_width + static_cast<int>(columns) * kDotPitch + margin;
  const int height = static_cast<int>(rows.size()) * kRowHeight + 2 * margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  out += "<style>\n";
  out += "  .atom { fill: " + colors.atom + "; }\n";
  out += "  .molecule_non_atom { fill: " + colors.molecule_non_atom + "; }\n";
  out += "  .non_molecule { fill: " + colors.non_molecule + "; }\n";
  out += "  .gap { fill: none; stroke: " + colors.gap + "; }\n";
  out += "  text { font: 11px monospace; }\n";
  out += "</style>\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int y = margin + static_cast<int>(r) * kRowHeight + kRowHeight / 2;
    std::string label;
    for (char ch : rows[r].label) {
      switch (ch) {
        case '<': label += "&lt;"; break;
        case '>': label += "&gt;"; break;
        case '&': label += "&amp;"; break;
        default: label += ch;
      }
    }
    out += "<g class=\"row\">\n";
    out += "  <text x=\"4\" y=\"" + std::to_string(y + 4) + "\">" + label + "</text>\n";
    out += "  <line x1=\"" + std::to_string(label_width) + "\" y1=\"" + std::to_string(y) +
           "\" x2=\"" + std::to_string(width - margin) + "\" y2=\"" + std::to_string(y) +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    for (std::size_t i = 0; i < rows[r].points.size(); ++i) {
      const int x = label_width + static_cast<int>(i) * kDotPitch + kDotPitch / 2;
      out += "  <circle class=\"" + std::string(to_string(rows[r].points[i])) + "\" cx=\"" +
             std::to_string(x) + "\" cy=\"" + std::to_string(y) + "\" r=\"4\"><title>" +
             std::to_string(i + 1) + "</title></circle>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

inline void write_strip_svg(const std::vector<StripRow>& rows, const std::string& path,
                            const StripColors& colors = {}) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open " + path);
  file << strip_svg(rows, colors);
  if (!file) throw Error(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace molekul
