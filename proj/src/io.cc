// Copyright 2026 The deploylab Authors.
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

#include "deploylab/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deploylab {

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix MatrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw std::invalid_argument("matrix must be a nonempty array of rows");
  }
  size_t cols = j[0].size();
  Matrix m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument("matrix rows differ in length");
    }
    for (size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        throw std::invalid_argument("matrix entries must be numbers");
      }
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json BimatrixToJson(const BimatrixGame& game) {
  return Json{{"kind", "bimatrix"},
              {"A", MatrixToJson(game.A())},
              {"B", MatrixToJson(game.B())}};
}

Json SymmetricToJson(const Matrix& c) {
  return Json{{"kind", "symmetric"}, {"A", MatrixToJson(c)}};
}

Json StrategicToJson(const StrategicGame& game) {
  Json payoffs = Json::array();
  int n = game.num_players();
  for (int64_t s = 0; s < game.num_profiles(); ++s) {
    Json row = Json::array();
    for (int i = 0; i < n; ++i) row.push_back(game.Payoff(s, i));
    payoffs.push_back(std::move(row));
  }
  return Json{{"kind", "strategic"},
              {"strategy_counts", game.strategy_counts()},
              {"payoffs", std::move(payoffs)}};
}

GameFile GameFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("game JSON needs a string \"kind\"");
  }
  std::string kind = j["kind"].get<std::string>();
  GameFile out;
  if (kind == "bimatrix" || kind == "symmetric") {
    if (!j.contains("A")) throw std::invalid_argument("game JSON needs \"A\"");
    Matrix a = MatrixFromJson(j["A"]);
    if (kind == "symmetric") {
      out.kind = GameFileKind::kSymmetric;
      out.bimatrix = BimatrixGame::Symmetric(a);
    } else {
      if (!j.contains("B")) throw std::invalid_argument("game JSON needs \"B\"");
      out.kind = GameFileKind::kBimatrix;
      out.bimatrix = BimatrixGame(std::move(a), MatrixFromJson(j["B"]));
    }
    out.strategic = StrategicGame::FromBimatrix(*out.bimatrix);
    return out;
  }
  if (kind != "strategic") {
    throw std::invalid_argument("unknown game kind: " + kind);
  }
  if (!j.contains("strategy_counts") || !j.contains("payoffs")) {
    throw std::invalid_argument(
        "strategic game needs \"strategy_counts\" and \"payoffs\"");
  }
  std::vector<int> counts = j["strategy_counts"].get<std::vector<int>>();
  std::vector<double> flat;
  for (const Json& row : j["payoffs"]) {
    if (!row.is_array() || row.size() != counts.size()) {
      throw std::invalid_argument("each profile needs one payoff per player");
    }
    for (const Json& v : row) flat.push_back(v.get<double>());
  }
  out.kind = GameFileKind::kStrategic;
  out.strategic = StrategicGame(std::move(counts), std::move(flat));
  return out;
}

GameFile ReadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid game JSON: ") + e.what());
  }
  return GameFromJson(j);
}

Json PairToJson(const EquilibriumPair& pair) {
  return Json{{"p", VectorToJson(pair.p.weights())},
              {"q", VectorToJson(pair.q.weights())}};
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace deploylab
