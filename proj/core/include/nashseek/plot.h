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

#ifndef NASHSEEK_PLOT_H_
#define NASHSEEK_PLOT_H_

#include <string>
#include <vector>

namespace nashseek {

struct Series {
  std::string label;
  std::vector<double> values;  // y at x = 0, 1, 2, ...
};

// Standalone SVG line chart with a base-10 log y axis. Nonpositive and
// non-finite values are skipped. Throws InputError when there is no series
// or a series has no plottable point.
std::string LogPlotSvg(const std::vector<Series>& series,
                       const std::string& title, const std::string& y_label);

struct LabeledCsv {
  std::string label;
  std::string path;
};

// Reads run CSVs and writes <stem>_err.svg (||x^k - x*||_inf) and
// <stem>_consensus.svg (||Z^{k+1} - Z^k||_inf), one curve per CSV. Returns
// the two paths. Throws InputError on a malformed or empty CSV.
std::vector<std::string> EmitErrorPlots(const std::vector<LabeledCsv>& runs,
                                        const std::string& stem,
                                        const std::string& title);

}  // namespace nashseek

#endif  // NASHSEEK_PLOT_H_
