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

// JSON game files:
//   {"kind": "bimatrix", "A": [[...]], "B": [[...]]}
//   {"kind": "symmetric", "A": [[...]]}            game (A, A^T)
//   {"kind": "strategic", "strategy_counts": [...],
//    "payoffs": [[u_0, ..., u_{N-1}], ...]}        profile-major rows

#ifndef DEPLOYLAB_IO_H_
#define DEPLOYLAB_IO_H_

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "deploylab/game.h"
#include "deploylab/support_enumeration.h"

namespace deploylab {

using Json = nlohmann::json;

enum class GameFileKind { kBimatrix, kSymmetric, kStrategic };

struct GameFile {
  GameFileKind kind = GameFileKind::kBimatrix;
  // Present for bimatrix and symmetric files.
  std::optional<BimatrixGame> bimatrix;
  // Always present; bimatrix files are converted.
  std::optional<StrategicGame> strategic;
};

// Throws std::invalid_argument on malformed input.
GameFile GameFromJson(const Json& j);
GameFile ReadGameFile(const std::string& path);

Json MatrixToJson(const Matrix& m);
Matrix MatrixFromJson(const Json& j);
Json VectorToJson(const Vector& v);

Json BimatrixToJson(const BimatrixGame& game);
Json SymmetricToJson(const Matrix& c);
Json StrategicToJson(const StrategicGame& game);

Json PairToJson(const EquilibriumPair& pair);

// Writes text to path, creating parent directories. Throws
// std::runtime_error on I/O failure.
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace deploylab

#endif  // DEPLOYLAB_IO_H_
