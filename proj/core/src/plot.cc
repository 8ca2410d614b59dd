// Copyright 2026 The nashseek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nashseek/plot.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nashseek/error.h"
#include "nashseek/io.h"

namespace nashseek {
namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kLeft = 70;
constexpr int kRight = 150;
constexpr int kTop = 40;
constexpr int kBottom = 50;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool Plottable(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string LogPlotSvg(const std::vector<Series>& series,
                       const std::string& title, const std::string& y_label) {
  if (series.empty()) throw InputError("LogPlotSvg: nothing to plot");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t longest = 0;
  for (const Series& s : series) {
    bool any = false;
    for (double v : s.values) {
      if (!Plottable(v)) continue;
      any = true;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!any) {
      throw InputError("LogPlotSvg: series '" + s.label +
                       "' has no positive finite value");
    }
    longest = std::max(longest, s.values.size());
  }
  const double dlo = std::floor(std::log10(lo));
  double dhi = std::ceil(std::log10(hi));
  if (dhi <= dlo) dhi = dlo + 1;
  const double xmax = std::max<double>(1.0, static_cast<double>(longest) - 1.0);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * x / xmax; };
  auto py = [&](double v) {
    return kTop + ph * (dhi - std::log10(v)) / (dhi - dlo);
  };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << Escape(title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(dlo); d <= static_cast<int>(dhi); ++d) {
    const double y = py(std::pow(10.0, d));
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\""
        << y << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double x = xmax * t / 4.0;
    svg << "<text x=\"" << px(x) << "\" y=\"" << kTop + ph + 16
        << "\" text-anchor=\"middle\">" << static_cast<long long>(std::lround(x))
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">iteration k</text>\n";
  svg << "<text transform=\"translate(16," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    // Long runs are thinned to about two thousand vertices.
    const std::size_t n = series[s].values.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    bool first = true;
    for (std::size_t k = 0; k < n; k += stride) {
      const double v = series[s].values[k];
      if (!Plottable(v)) continue;
      svg << (first ? "" : " ") << px(static_cast<double>(k)) << "," << py(v);
      first = false;
    }
    svg << "\"/>\n";
    const double ly = kTop + 16.0 * (s + 1);
    svg << "<line x1=\"" << kLeft + pw + 10 << "\" x2=\"" << kLeft + pw + 30
        << "\" y1=\"" << ly - 4 << "\" y2=\"" << ly - 4 << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly << "\">"
        << Escape(series[s].label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> EmitErrorPlots(const std::vector<LabeledCsv>& runs,
                                        const std::string& stem,
                                        const std::string& title) {
  if (runs.empty()) throw InputError("EmitErrorPlots: no runs");
  std::vector<Series> err, consensus;
  for (const LabeledCsv& run : runs) {
    const std::vector<RoundMetrics> rows = LoadRunCsv(run.path);
    if (rows.empty()) {
      throw InputError("EmitErrorPlots: '" + run.path + "' has no rounds");
    }
    Series e{run.label, {}}, c{run.label, {}};
    for (const RoundMetrics& r : rows) {
      e.values.push_back(r.err_inf);
      c.values.push_back(r.dz_inf);
    }
    err.push_back(std::move(e));
    consensus.push_back(std::move(c));
  }
  const std::string err_path = stem + "_err.svg";
  const std::string cons_path = stem + "_consensus.svg";
  WriteTextFile(err_path, LogPlotSvg(err, title, "||x^k - x*||_inf"));
  WriteTextFile(cons_path,
                LogPlotSvg(consensus, title, "||Z^{k+1} - Z^k||_inf"));
  return {err_path, cons_path};
}

}  // namespace nashseek
