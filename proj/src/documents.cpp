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

#include "hjw/documents.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "hjw/errors.hpp"

namespace hjw::io {

namespace {

constexpr std::array kKindNames = {"ket", "matrix", "ensemble", "joint", "umap", "basis", "report"};

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidDocument, what); }

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) bad(std::string("missing field '") + name + "'");
  return obj.at(name);
}

double read_number(const json& v, const char* what) {
  if (!v.is_number()) bad(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(std::string(what) + " must be finite");
  return d;
}

Index read_dim(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    bad(std::string("'") + name + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex read_complex(const json& v) {
  if (!v.is_array() || v.size() != 2) bad("complex numbers are [re, im] pairs");
  return {read_number(v[0], "real part"), read_number(v[1], "imaginary part")};
}

json vector_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

ComplexVector read_vector(const json& v, Index dim) {
  if (!v.is_array() || static_cast<Index>(v.size()) != dim) {
    bad("expected an array of " + std::to_string(dim) + " complex entries");
  }
  ComplexVector out(dim);
  for (Index i = 0; i < dim; ++i) out(i) = read_complex(v[static_cast<std::size_t>(i)]);
  return out;
}

json rows_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r).transpose()));
  return rows;
}

ComplexMatrix read_rows(const json& v, Index rows, Index cols) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    bad("expected " + std::to_string(rows) + " matrix rows");
  }
  ComplexMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    out.row(r) = read_vector(v[static_cast<std::size_t>(r)], cols).transpose();
  }
  return out;
}

json kets_json(const KetList& kets) {
  json out = json::array();
  for (const auto& k : kets) out.push_back(vector_json(k));
  return out;
}

KetList read_kets(const json& v, Index dim) {
  if (!v.is_array()) bad("expected an array of kets");
  KetList out;
  for (const auto& k : v) out.push_back(read_vector(k, dim));
  return out;
}

template <typename T>
json list_json(const std::vector<T>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x);
  return out;
}

const json& payload_of(const json& doc, DocumentKind kind) {
  if (!doc.is_object()) bad("document must be a JSON object");
  const json& k = field(doc, "kind");
  if (!k.is_string() || kind_from_string(k.get<std::string>()) != kind) {
    bad("expected a '" + std::string(to_string(kind)) + "' document");
  }
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<long long>() != kDocumentVersion) {
    bad("unsupported document version");
  }
  const json& payload = field(doc, "payload");
  if (!payload.is_object()) bad("payload must be an object");
  return payload;
}

ViolationKind violation_from_string(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(ViolationKind::DimensionMismatch); ++k) {
    const auto kind = static_cast<ViolationKind>(k);
    if (to_string(kind) == name) return kind;
  }
  bad("unknown violation kind '" + name + "'");
}

}  // namespace

std::string_view to_string(DocumentKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

DocumentKind kind_from_string(std::string_view name) {
  for (std::size_t k = 0; k < kKindNames.size(); ++k) {
    if (name == kKindNames[k]) return static_cast<DocumentKind>(k);
  }
  bad("unknown document kind '" + std::string(name) + "'");
}

json envelope(DocumentKind kind, json payload) {
  return json{{"kind", to_string(kind)}, {"version", kDocumentVersion},
              {"payload", std::move(payload)}};
}

json ket_document(const ComplexVector& ket) {
  return envelope(DocumentKind::Ket, {{"dim", ket.size()}, {"entries", vector_json(ket)}});
}

json matrix_document(const ComplexMatrix& m) {
  return envelope(DocumentKind::Matrix,
                  {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows_json(m)}});
}

json ensemble_document(const RhoEnsemble& e) {
  json elements = json::array();
  for (const auto& el : e.elements()) {
    elements.push_back({{"weight", el.weight}, {"ket", vector_json(el.ket)}});
  }
  return envelope(DocumentKind::Ensemble, {{"dim", e.dim()}, {"elements", std::move(elements)}});
}

json joint_document(const JointState& joint) {
  return envelope(DocumentKind::Joint, {{"dim_s", joint.dim_s()},
                                        {"dim_m", joint.dim_m()},
                                        {"layout", "S-major"},
                                        {"vec", vector_json(joint.vec())}});
}

json basis_document(const KetList& kets, Index dim) {
  return envelope(DocumentKind::Basis, {{"dim", dim}, {"kets", kets_json(kets)}});
}

json umap_document(const UMap& umap) {
  json payload{{"rows", umap.coeffs.rows()},
               {"cols", umap.coeffs.cols()},
               {"coeffs", rows_json(umap.coeffs)}};
  if (umap.generator) payload["generator"] = rows_json(*umap.generator);
  if (umap.basis) payload["basis"] = kets_json(*umap.basis);
  return envelope(DocumentKind::UMap, std::move(payload));
}

json validation_document(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"kind", to_string(v.kind)}, {"indices", list_json(v.indices)}, {"message", v.message}});
  }
  return envelope(DocumentKind::Report, {{"report_type", "validation"},
                                         {"ok", report.ok()},
                                         {"violations", std::move(violations)}});
}

json steering_document(const SteeringReport& report) {
  const Index ds = report.post_density.rows();
  const Index dm = report.m_kets.empty() ? 0 : report.m_kets.front().size();
  return envelope(DocumentKind::Report,
                  {{"report_type", "steering"},
                   {"rng", "mt19937_64/splitmix64-chunked"},
                   {"shots", report.shots},
                   {"seed", report.seed},
                   {"counts", list_json(report.counts)},
                   {"expected_weights", list_json(report.expected_weights)},
                   {"member_indices", list_json(report.member_indices)},
                   {"dim_s", ds},
                   {"dim_m", dm},
                   {"s_kets", kets_json(report.s_kets)},
                   {"m_kets", kets_json(report.m_kets)},
                   {"post_density", rows_json(report.post_density)},
                   {"empirical_density", rows_json(report.empirical_density)}});
}

ComplexVector read_ket(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Ket);
  return read_vector(field(p, "entries"), read_dim(p, "dim"));
}

ComplexMatrix read_matrix(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Matrix);
  return read_rows(field(p, "entries"), read_dim(p, "rows"), read_dim(p, "cols"));
}

RhoEnsemble read_ensemble(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Ensemble);
  const Index dim = read_dim(p, "dim");
  const json& elements = field(p, "elements");
  if (!elements.is_array()) bad("'elements' must be an array");
  std::vector<EnsembleElement> out;
  for (const auto& el : elements) {
    out.push_back({read_vector(field(el, "ket"), dim), read_number(field(el, "weight"), "weight")});
  }
  return RhoEnsemble(dim, std::move(out));
}

RawJoint read_raw_joint(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Joint);
  if (p.contains("layout") && p.at("layout") != "S-major") bad("only the S-major layout is defined");
  RawJoint raw;
  raw.dim_s = read_dim(p, "dim_s");
  raw.dim_m = read_dim(p, "dim_m");
  raw.vec = read_vector(field(p, "vec"), raw.dim_s * raw.dim_m);
  return raw;
}

JointState read_joint(const json& doc, double tol) {
  RawJoint raw = read_raw_joint(doc);
  return JointState(std::move(raw.vec), raw.dim_s, raw.dim_m, tol);
}

KetList read_basis(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Basis);
  return read_kets(field(p, "kets"), read_dim(p, "dim"));
}

UMap read_umap(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::UMap);
  const Index rows = read_dim(p, "rows");
  UMap out;
  out.coeffs = read_rows(field(p, "coeffs"), rows, read_dim(p, "cols"));
  if (p.contains("generator")) out.generator = read_rows(p.at("generator"), rows, rows);
  if (p.contains("basis")) out.basis = read_kets(p.at("basis"), rows);
  return out;
}

ValidationReport read_validation(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Report);
  if (field(p, "report_type") != "validation") bad("not a validation report");
  ValidationReport out;
  for (const auto& v : field(p, "violations")) {
    out.add(violation_from_string(field(v, "kind").get<std::string>()),
            field(v, "indices").get<std::vector<std::size_t>>(),
            field(v, "message").get<std::string>());
  }
  return out;
}

SteeringReport read_steering(const json& doc) {
  const json& p = payload_of(doc, DocumentKind::Report);
  if (field(p, "report_type") != "steering") bad("not a steering report");
  try {
    SteeringReport out;
    out.shots = field(p, "shots").get<std::int64_t>();
    out.seed = field(p, "seed").get<std::uint64_t>();
    out.counts = field(p, "counts").get<std::vector<std::int64_t>>();
    out.expected_weights = field(p, "expected_weights").get<std::vector<double>>();
    out.member_indices = field(p, "member_indices").get<std::vector<std::size_t>>();
    const Index ds = read_dim(p, "dim_s");
    const Index dm = field(p, "dim_m").get<Index>();
    out.s_kets = read_kets(field(p, "s_kets"), ds);
    out.m_kets = read_kets(field(p, "m_kets"), dm);
    out.post_density = read_rows(field(p, "post_density"), ds, ds);
    out.empirical_density = read_rows(field(p, "empirical_density"), ds, ds);
    return out;
  } catch (const json::exception& ex) {
    bad(std::string("malformed steering report: ") + ex.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string dump_all(const std::vector<json>& docs) {
  if (docs.size() == 1) return dump(docs.front());
  return dump(json(docs));
}

std::vector<json> parse_documents(std::string_view text) {
  json parsed;
  try {
    parsed = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& ex) {
    bad(std::string("malformed JSON: ") + ex.what());
  }
  std::vector<json> docs;
  if (parsed.is_array()) {
    for (auto& d : parsed) docs.push_back(std::move(d));
  } else {
    docs.push_back(std::move(parsed));
  }
  if (docs.empty()) bad("no documents");
  for (const auto& d : docs) {
    if (!d.is_object() || !d.contains("kind") || !d.at("kind").is_string()) {
      bad("every document needs a string 'kind'");
    }
    kind_from_string(d.at("kind").get<std::string>());
  }
  return docs;
}

const json& select(const std::vector<json>& docs, DocumentKind kind) {
  for (const auto& d : docs) {
    if (d.at("kind") == to_string(kind)) return d;
  }
  bad("no '" + std::string(to_string(kind)) + "' document in input");
}

}  // namespace hjw::io
