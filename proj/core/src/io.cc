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

#include "nashseek/io.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nashseek/error.h"

namespace nashseek {
namespace {

using nlohmann::json;

std::vector<double> ToList(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector FromList(const json& j, const std::string& what) {
  if (!j.is_array()) throw SpecError(what + " must be a list of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw SpecError(what + " must be a list of numbers");
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

const json& Require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw SpecError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double ParseDouble(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

json CertificateObject(const StepsizeCertificate& c) {
  json j;
  j["L"] = c.constants.lip;
  j["mono_delta"] = c.constants.mono;
  j["L_alpha"] = c.constants.lip_alpha;
  j["beta_alpha"] = c.constants.beta_alpha;
  j["eta"] = c.eta;
  j["eta_from_floor"] = c.eta_from_floor;
  j["Qbar"] = {{c.qbar(0, 0), c.qbar(0, 1)}, {c.qbar(1, 0), c.qbar(1, 1)}};
  j["lambda_max"] = c.lambda_max;
  j["verdict"] = c.certified ? "certified" : "uncertified";
  j["uniform_alpha"] = c.uniform_alpha;
  j["alpha_upper"] = c.alpha_upper;
  if (c.region) {
    const StepsizeRegion& r = *c.region;
    json reg;
    reg["alpha"] = r.alpha;
    reg["qbar_corner"] = {{"value", r.cond_qbar_corner}, {"pass", r.qbar_corner}};
    reg["qbar_det"] = {{"value", r.cond_qbar_det}, {"pass", r.qbar_det}};
    reg["complement_corner"] = {{"value", r.cond_complement_corner},
                                {"pass", r.complement_corner}};
    reg["complement_det"] = {{"value", r.cond_complement_det},
                             {"pass", r.complement_det}};
    reg["interval"] = {{"upper", r.interval_upper}, {"inside", r.in_interval}};
    reg["quartic_region"] = {{"low", r.quartic_low},
                             {"high", r.quartic_high},
                             {"inside", r.in_quartic_region}};
    reg["cubic_threshold"] = {{"value", r.cubic_threshold},
                              {"above", r.above_cubic_threshold}};
    reg["binding"] = r.binding;
    j["region"] = reg;
  }
  return j;
}

}  // namespace

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void WriteTextFile(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string CournotToJson(const CournotSpec& spec) {
  spec.Validate();
  json j;
  j["m"] = spec.num_firms();
  j["N"] = spec.num_markets;
  j["seed"] = spec.seed;
  json b = json::array(), qd = json::array(), q = json::array(),
       c = json::array();
  for (int i = 0; i < spec.num_firms(); ++i) {
    const Matrix& qi = spec.cost_quad[i];
    if (!qi.isDiagonal(0.0)) {
      throw SpecError("firm " + std::to_string(i) +
                      ": only diagonal Q can be written to a spec file");
    }
    json rows = json::array();
    for (int h = 0; h < spec.num_markets; ++h) {
      rows.push_back(ToList(spec.incidence[i].row(h).transpose()));
    }
    b.push_back(rows);
    qd.push_back(ToList(qi.diagonal()));
    q.push_back(ToList(spec.cost_lin[i]));
    c.push_back(ToList(spec.capacity[i]));
  }
  j["B"] = b;
  j["Q_diag"] = qd;
  j["q"] = q;
  j["P_bar"] = ToList(spec.price_intercept);
  j["chi"] = ToList(spec.price_slope);
  j["C"] = c;
  return j.dump(2) + "\n";
}

CournotSpec CournotFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec file is not valid JSON: ") + e.what());
  }
  CournotSpec spec;
  try {
    const int m = Require(j, "m").get<int>();
    spec.num_markets = Require(j, "N").get<int>();
    spec.seed = j.value("seed", std::uint64_t{0});
    const json& b = Require(j, "B");
    const json& qd = Require(j, "Q_diag");
    const json& q = Require(j, "q");
    const json& c = Require(j, "C");
    if (m < 1) throw SpecError("m must be positive");
    for (const char* key : {"B", "Q_diag", "q", "C"}) {
      if (!j.at(key).is_array() || static_cast<int>(j.at(key).size()) != m) {
        throw SpecError(std::string("'") + key + "' must list " +
                        std::to_string(m) + " firms");
      }
    }
    for (int i = 0; i < m; ++i) {
      const std::string tag = "firm " + std::to_string(i) + ": ";
      const json& rows = b[i];
      if (!rows.is_array() || static_cast<int>(rows.size()) != spec.num_markets) {
        throw SpecError(tag + "B needs N rows");
      }
      const Vector diag = FromList(qd[i], tag + "Q_diag");
      const int ni = static_cast<int>(diag.size());
      Matrix bi(spec.num_markets, ni);
      for (int h = 0; h < spec.num_markets; ++h) {
        const Vector row = FromList(rows[h], tag + "B row");
        if (row.size() != ni) {
          throw SpecError(tag + "B row " + std::to_string(h) + " has " +
                          std::to_string(row.size()) + " entries, expected " +
                          std::to_string(ni));
        }
        bi.row(h) = row.transpose();
      }
      spec.incidence.push_back(std::move(bi));
      spec.cost_quad.push_back(diag.asDiagonal());
      spec.cost_lin.push_back(FromList(q[i], tag + "q"));
      spec.capacity.push_back(FromList(c[i], tag + "C"));
    }
    spec.price_intercept = FromList(Require(j, "P_bar"), "P_bar");
    spec.price_slope = FromList(Require(j, "chi"), "chi");
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec file has a malformed field: ") + e.what());
  }
  spec.Validate();
  return spec;
}

void SaveCournot(const CournotSpec& spec, const std::string& path) {
  WriteTextFile(path, CournotToJson(spec));
}

CournotSpec LoadCournot(const std::string& path) {
  return CournotFromJson(ReadTextFile(path));
}

void WriteEdgeList(std::ostream& out, const std::vector<DirectedGraph>& rounds) {
  if (rounds.empty()) throw InputError("WriteEdgeList: no graphs");
  out << "# nodes " << rounds.front().num_nodes() << "\n";
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    for (const auto& [j, l] : rounds[k].Edges()) {
      out << k << " " << j << " " << l << "\n";
    }
  }
}

std::vector<DirectedGraph> ReadEdgeList(std::istream& in) {
  struct Triple {
    long k, j, l;
  };
  std::vector<Triple> triples;
  long nodes = -1, max_node = -1, max_round = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key;
      if (ls >> key && key == "nodes" && !(ls >> nodes)) {
        throw InputError("edge list line " + std::to_string(line_no) +
                         ": bad node count");
      }
      continue;
    }
    Triple t{};
    std::istringstream full(line);
    std::string extra;
    if (!(full >> t.k >> t.j >> t.l) || (full >> extra) || t.k < 0 ||
        t.j < 0 || t.l < 0) {
      throw InputError("edge list line " + std::to_string(line_no) +
                       ": expected three nonnegative integers 'k j l'");
    }
    triples.push_back(t);
    max_node = std::max({max_node, t.j, t.l});
    max_round = std::max(max_round, t.k);
  }
  if (nodes < 0) nodes = max_node + 1;
  if (nodes < 1 || max_node >= nodes) {
    throw InputError("edge list names a node outside 0.." +
                     std::to_string(nodes - 1));
  }
  if (max_round < 0) max_round = 0;
  std::vector<DirectedGraph> out(static_cast<std::size_t>(max_round) + 1,
                                 DirectedGraph(static_cast<int>(nodes)));
  for (const Triple& t : triples) {
    out[static_cast<std::size_t>(t.k)].AddEdge(static_cast<int>(t.j),
                                               static_cast<int>(t.l));
  }
  return out;
}

std::vector<DirectedGraph> LoadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return ReadEdgeList(in);
}

void WriteWeights(std::ostream& out, const std::vector<Matrix>& rounds) {
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    out << "round " << k << "\n";
    const Matrix& w = rounds[k];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        out << (j ? " " : "") << FormatDouble(w(i, j));
      }
      out << "\n";
    }
  }
}

std::vector<Matrix> ReadWeights(std::istream& in) {
  std::vector<Matrix> out;
  std::vector<std::vector<double>> rows;
  auto flush = [&]() {
    if (rows.empty()) return;
    const auto m = static_cast<Eigen::Index>(rows.size());
    Matrix w(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != m) {
        throw InputError("weight block " + std::to_string(out.size()) +
                         " is not square");
      }
      for (Eigen::Index j = 0; j < m; ++j) w(i, j) = rows[i][j];
    }
    out.push_back(std::move(w));
    rows.clear();
  };
  std::string line;
  bool in_block = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "round") {
      flush();
      in_block = true;
      continue;
    }
    if (!in_block) throw InputError("weight file must start with 'round'");
    std::vector<double> row{ParseDouble(first)};
    std::string tok;
    while (ls >> tok) row.push_back(ParseDouble(tok));
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

void WritePiCsv(std::ostream& out, const PiSequence& pi) {
  if (pi.pi.empty()) throw InputError("WritePiCsv: empty sequence");
  const Eigen::Index m = pi.pi.front().size();
  out << "round";
  for (Eigen::Index i = 0; i < m; ++i) out << ",pi_" << i;
  out << ",residual\n";
  for (std::size_t k = 0; k < pi.pi.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < m; ++i) out << "," << FormatDouble(pi.pi[k][i]);
    out << "," << FormatDouble(pi.residual) << "\n";
  }
}

void WriteRunCsv(std::ostream& out, const RunRecord& record) {
  out << "k,dx_inf,dz_inf,err_inf,weighted_err,eta_k\n";
  for (std::size_t k = 0; k < record.rounds.size(); ++k) {
    const RoundMetrics& r = record.rounds[k];
    out << k << "," << FormatDouble(r.dx_inf) << "," << FormatDouble(r.dz_inf)
        << "," << FormatDouble(r.err_inf) << ","
        << FormatDouble(r.weighted_err) << "," << FormatDouble(r.eta) << "\n";
  }
}

std::vector<RoundMetrics> ReadRunCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "k,dx_inf,dz_inf,err_inf,weighted_err,eta_k") {
    throw InputError("run CSV has a missing or unexpected header");
  }
  std::vector<RoundMetrics> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != 6) {
      throw InputError("run CSV line " + std::to_string(line_no) +
                       ": expected 6 columns");
    }
    try {
      RoundMetrics r{};
      r.dx_inf = ParseDouble(cells[1]);
      r.dz_inf = ParseDouble(cells[2]);
      r.err_inf = ParseDouble(cells[3]);
      r.weighted_err = ParseDouble(cells[4]);
      r.eta = ParseDouble(cells[5]);
      out.push_back(r);
    } catch (const InputError& e) {
      throw InputError("run CSV line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return out;
}

std::vector<RoundMetrics> LoadRunCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open run CSV '" + path + "'");
  return ReadRunCsv(in);
}

void WriteFuzzCsv(std::ostream& out, const std::vector<FuzzRow>& rows) {
  out << "seed,lhs,rhs,slack\n";
  for (const FuzzRow& r : rows) {
    out << r.seed << "," << FormatDouble(r.lhs) << "," << FormatDouble(r.rhs)
        << "," << FormatDouble(r.slack) << "\n";
  }
}

std::string CertificateToJson(const StepsizeCertificate& cert) {
  return CertificateObject(cert).dump(2);
}

}  // namespace nashseek
