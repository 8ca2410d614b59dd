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

#ifndef NASHSEEK_IO_H_
#define NASHSEEK_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nashseek/analysis.h"
#include "nashseek/certify.h"
#include "nashseek/cournot.h"
#include "nashseek/graph.h"
#include "nashseek/mixing.h"
#include "nashseek/seeker.h"

namespace nashseek {

// Cournot instances as JSON with keys m, N, B, Q_diag, q, P_bar, chi, C, seed.
// B[i] is the N x n_i incidence matrix as a list of rows; Q_diag[i], q[i] and
// C[i] are length-n_i lists. Only diagonal Q_i can be written. Loading
// validates every dimension and throws SpecError on a mismatch.
std::string CournotToJson(const CournotSpec& spec);
CournotSpec CournotFromJson(const std::string& text);
void SaveCournot(const CournotSpec& spec, const std::string& path);
CournotSpec LoadCournot(const std::string& path);

// Edge lists: one "k j l" line per non-loop edge j -> l of the round-k graph.
// Lines starting with '#' are comments; a "# nodes <m>" comment fixes the
// node count (otherwise it is one more than the largest index seen).
void WriteEdgeList(std::ostream& out, const std::vector<DirectedGraph>& rounds);
// The graphs for rounds 0..K-1, where K is one more than the largest round
// index. Throws InputError on malformed lines.
std::vector<DirectedGraph> ReadEdgeList(std::istream& in);
std::vector<DirectedGraph> LoadEdgeList(const std::string& path);

// Weight matrices as "round <k>" headers followed by m rows of m numbers.
void WriteWeights(std::ostream& out, const std::vector<Matrix>& rounds);
std::vector<Matrix> ReadWeights(std::istream& in);

// CSV: round,pi_0,...,pi_{m-1},residual. One row per stored vector.
void WritePiCsv(std::ostream& out, const PiSequence& pi);

// CSV: k,dx_inf,dz_inf,err_inf,weighted_err,eta_k. Doubles are printed in
// shortest round-trip form; missing values are written as "nan".
void WriteRunCsv(std::ostream& out, const RunRecord& record);
std::vector<RoundMetrics> ReadRunCsv(std::istream& in);
std::vector<RoundMetrics> LoadRunCsv(const std::string& path);

// CSV: seed,lhs,rhs,slack.
void WriteFuzzCsv(std::ostream& out, const std::vector<FuzzRow>& rows);

// Certificate as a JSON object (serialized text).
std::string CertificateToJson(const StepsizeCertificate& cert);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double v);

// Writes text to path, creating parent directories. Throws InputError on
// failure.
void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

}  // namespace nashseek

#endif  // NASHSEEK_IO_H_
