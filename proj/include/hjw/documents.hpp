// Copyright 2026 The hjw Authors
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

#pragma once

// Versioned JSON envelopes exchanged by the command-line tool.
//
//   {"kind": <kind>, "version": 1, "payload": {...}}
//
// Complex numbers are [re, im]; kets are arrays of those; matrices are arrays
// of rows. Every payload states its dimensions explicitly, and joint vectors
// use the S-major layout (flat index = i_S * dim_m + k_M).

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hjw/ensembles.hpp"
#include "hjw/purification.hpp"
#include "hjw/steering.hpp"
#include "hjw/types.hpp"
#include "hjw/validation.hpp"

namespace hjw::io {

using json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;

enum class DocumentKind { Ket, Matrix, Ensemble, Joint, UMap, Basis, Report };

std::string_view to_string(DocumentKind kind);
DocumentKind kind_from_string(std::string_view name);

json envelope(DocumentKind kind, json payload);

json ket_document(const ComplexVector& ket);
json matrix_document(const ComplexMatrix& m);
json ensemble_document(const RhoEnsemble& e);
json joint_document(const JointState& joint);
json basis_document(const KetList& kets, Index dim);
json umap_document(const UMap& umap);
json validation_document(const ValidationReport& report);
json steering_document(const SteeringReport& report);

// Readers throw Error(InvalidDocument) on schema violations. Semantic checks
// (normalisation, orthonormality, weight > 0) raise the library's own codes.
ComplexVector read_ket(const json& doc);
ComplexMatrix read_matrix(const json& doc);
RhoEnsemble read_ensemble(const json& doc);

struct RawJoint {
  ComplexVector vec;
  Index dim_s = 0;
  Index dim_m = 0;
};
/// Shape-checked but not normalisation-checked.
RawJoint read_raw_joint(const json& doc);
JointState read_joint(const json& doc, double tol = kDefaultTol);

KetList read_basis(const json& doc);
UMap read_umap(const json& doc);
ValidationReport read_validation(const json& doc);
SteeringReport read_steering(const json& doc);

/// Pretty-printed, key-sorted, shortest round-trip doubles, trailing newline.
std::string dump(const json& doc);
std::string dump_all(const std::vector<json>& docs);

/// Parses one envelope or an array of envelopes.
std::vector<json> parse_documents(std::string_view text);

/// First envelope of the requested kind.
const json& select(const std::vector<json>& docs, DocumentKind kind);

}  // namespace hjw::io
