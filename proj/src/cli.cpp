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

#include "hjw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hjw/documents.hpp"
#include "hjw/errors.hpp"
#include "hjw/purification.hpp"
#include "hjw/steering.hpp"

namespace hjw::cli {

namespace {

using io::DocumentKind;
using io::json;

struct Streams {
  std::istream& in;
  std::ostream& out;
  bool stdin_used = false;
};

std::vector<json> load(Streams& io_streams, const std::string& path) {
  std::string text;
  if (path == "-") {
    if (io_streams.stdin_used) fail(ErrorCode::InvalidDocument, "stdin can be read only once");
    io_streams.stdin_used = true;
    text.assign(std::istreambuf_iterator<char>(io_streams.in), {});
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail(ErrorCode::InvalidDocument, "cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  return io::parse_documents(text);
}

const json& load_one(Streams& s, const std::string& path, DocumentKind kind,
                     std::vector<std::vector<json>>& keep) {
  keep.push_back(load(s, path));
  return io::select(keep.back(), kind);
}

void emit(Streams& s, const std::string& path, const std::vector<json>& docs) {
  const std::string text = io::dump_all(docs);
  if (path == "-") {
    s.out << text;
    s.out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorCode::InvalidDocument, "cannot write '" + path + "'");
  file << text;
}

int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Parse: return kParseError;
    case ErrorClass::Precondition: return kPreconditionError;
    case ErrorClass::Numerical: return kNumericalError;
  }
  return kNumericalError;
}

void report_error(std::ostream& err, std::string_view name, const std::string& message,
                  int exit_code) {
  err << json{{"error", name}, {"message", message}, {"exit_code", exit_code}}.dump() << "\n";
}

struct Options {
  double tol = kDefaultTol;
  double rank_tol = kDefaultRankTol;
  std::string out = "-";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "Numerical tolerance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rank-tol", o.rank_tol, "Threshold separating zero from nonzero weights")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output file, '-' for stdout")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Purifications, rho-ensembles and ancilla steering"};
  app.name("hjw");
  app.require_subcommand(1);

  Options o;
  std::string ensemble_file, joint_file, basis_file, from_file, to_file, unitary_file, ket_file;
  std::string rho_file, umap_file;
  Index dim_m = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  auto* purify_cmd = app.add_subcommand("purify", "Purify a rho-ensemble onto H_S (x) H_M");
  purify_cmd->add_option("ensemble", ensemble_file, "Ensemble document")->required();
  purify_cmd->add_option("--dim-m", dim_m, "Ancilla dimension")->required()
      ->check(CLI::PositiveNumber);
  add_common(purify_cmd, o);

  auto* basis_cmd = app.add_subcommand("ensemble-from-basis",
                                       "The ensemble whose ancilla sits in an M basis");
  basis_cmd->add_option("joint", joint_file, "Joint-state document")->required();
  basis_cmd->add_option("basis", basis_file, "Basis document")->required();
  add_common(basis_cmd, o);

  auto* umap_cmd = app.add_subcommand("umap", "U-map between two ensembles of one state");
  umap_cmd->add_option("from", from_file, "Source ensemble")->required();
  umap_cmd->add_option("to", to_file, "Target ensemble")->required();
  add_common(umap_cmd, o);

  auto* apply_cmd = app.add_subcommand("apply-u", "Rotate an M basis and report the new ensemble");
  apply_cmd->add_option("joint", joint_file, "Joint-state document")->required();
  apply_cmd->add_option("basis", basis_file, "Basis document")->required();
  apply_cmd->add_option("unitary", unitary_file, "Matrix document (unitary on H_M)")->required();
  add_common(apply_cmd, o);

  auto* contains_cmd = app.add_subcommand("contains", "An ensemble whose first element is a ket");
  contains_cmd->add_option("joint", joint_file, "Joint-state document")->required();
  contains_cmd->add_option("ket", ket_file, "Ket document in H_S")->required();
  add_common(contains_cmd, o);

  auto* steer_cmd = app.add_subcommand("steer", "Measure an ancilla basis and sample outcomes");
  steer_cmd->add_option("joint", joint_file, "Joint-state document")->required();
  steer_cmd->add_option("basis", basis_file, "Basis document")->required();
  steer_cmd->add_option("--shots", shots, "Number of shots")->required()
      ->check(CLI::PositiveNumber);
  steer_cmd->add_option("--seed", seed, "Generator seed")->required();
  add_common(steer_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "Check a document's invariants");
  auto* ens_opt = verify_cmd->add_option("--ensemble", ensemble_file, "Ensemble document");
  verify_cmd->add_option("--rho", rho_file, "Density matrix the ensemble must decompose")
      ->needs(ens_opt);
  auto* umap_opt = verify_cmd->add_option("--umap", umap_file, "U-map document");
  verify_cmd->add_option("--from", from_file, "Source ensemble for the mapping check")
      ->needs(umap_opt);
  verify_cmd->add_option("--to", to_file, "Target ensemble for the mapping check")
      ->needs(umap_opt);
  auto* joint_opt = verify_cmd->add_option("--joint", joint_file, "Joint-state document");
  ens_opt->excludes(umap_opt)->excludes(joint_opt);
  umap_opt->excludes(joint_opt);
  add_common(verify_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (verify_cmd->parsed() && ensemble_file.empty() && umap_file.empty() && joint_file.empty()) {
      throw CLI::ValidationError("verify needs one of --ensemble, --umap, --joint");
    }
    if (verify_cmd->parsed() && from_file.empty() != to_file.empty()) {
      throw CLI::ValidationError("--from and --to go together");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    report_error(err, "UsageError", ex.what(), kParseError);
    return kParseError;
  }

  Streams s{in, out};
  std::vector<std::vector<json>> keep;
  try {
    if (purify_cmd->parsed()) {
      const RhoEnsemble e = io::read_ensemble(load_one(s, ensemble_file, DocumentKind::Ensemble, keep));
      const Purification p = purify(e, dim_m, o.tol);
      // Ancilla kets first, completed so the basis feeds ensemble-from-basis.
      emit(s, o.out, {io::joint_document(p.joint),
                      io::basis_document(complete_orthonormal(p.ancilla.kets(), dim_m, o.tol),
                                         p.ancilla.dim_m())});
    } else if (basis_cmd->parsed()) {
      const JointState joint =
          io::read_joint(load_one(s, joint_file, DocumentKind::Joint, keep), o.tol);
      const KetList basis = io::read_basis(load_one(s, basis_file, DocumentKind::Basis, keep));
      const BasisEnsemble r = ensemble_from_basis(joint, basis, o.rank_tol, o.tol);
      emit(s, o.out, {io::ensemble_document(r.ensemble)});
    } else if (umap_cmd->parsed()) {
      const RhoEnsemble from = io::read_ensemble(load_one(s, from_file, DocumentKind::Ensemble, keep));
      const RhoEnsemble to = io::read_ensemble(load_one(s, to_file, DocumentKind::Ensemble, keep));
      emit(s, o.out, {io::umap_document(umap_between(from, to, o.tol))});
    } else if (apply_cmd->parsed()) {
      const JointState joint =
          io::read_joint(load_one(s, joint_file, DocumentKind::Joint, keep), o.tol);
      const KetList basis = io::read_basis(load_one(s, basis_file, DocumentKind::Basis, keep));
      const ComplexMatrix u = io::read_matrix(load_one(s, unitary_file, DocumentKind::Matrix, keep));
      const UnitaryImage r = apply_unitary_umap(joint, basis, u, o.rank_tol, o.tol);
      emit(s, o.out, {io::ensemble_document(r.to.ensemble), io::umap_document(r.umap)});
    } else if (contains_cmd->parsed()) {
      const JointState joint =
          io::read_joint(load_one(s, joint_file, DocumentKind::Joint, keep), o.tol);
      const ComplexVector xi = io::read_ket(load_one(s, ket_file, DocumentKind::Ket, keep));
      const ContainingEnsemble r = ensemble_containing(joint, xi, o.rank_tol, o.tol);
      emit(s, o.out, {io::ensemble_document(r.result.ensemble)});
    } else if (steer_cmd->parsed()) {
      const JointState joint =
          io::read_joint(load_one(s, joint_file, DocumentKind::Joint, keep), o.tol);
      const KetList basis = io::read_basis(load_one(s, basis_file, DocumentKind::Basis, keep));
      emit(s, o.out, {io::steering_document(steer(joint, basis, shots, seed, o.rank_tol, o.tol))});
    } else if (verify_cmd->parsed()) {
      ValidationReport report;
      if (!ensemble_file.empty()) {
        const RhoEnsemble e =
            io::read_ensemble(load_one(s, ensemble_file, DocumentKind::Ensemble, keep));
        report = validate_ensemble(e, o.tol);
        if (!rho_file.empty()) {
          const ComplexMatrix rho = io::read_matrix(load_one(s, rho_file, DocumentKind::Matrix, keep));
          if (rho.rows() != e.dim() || rho.cols() != e.dim()) {
            report.add(ViolationKind::DimensionMismatch, {}, "rho does not match the ensemble");
          } else {
            const double diff = max_abs(weighted_projector_sum(e) - rho);
            if (diff > o.tol) {
              report.add(ViolationKind::DensityMismatch, {},
                         "sum w|phi><phi| differs from rho by " + std::to_string(diff));
            }
          }
        }
      } else if (!umap_file.empty()) {
        const UMap u = io::read_umap(load_one(s, umap_file, DocumentKind::UMap, keep));
        report = check_umap(u, o.tol);
        if (!from_file.empty()) {
          const RhoEnsemble from =
              io::read_ensemble(load_one(s, from_file, DocumentKind::Ensemble, keep));
          const RhoEnsemble to = io::read_ensemble(load_one(s, to_file, DocumentKind::Ensemble, keep));
          const double residual = mapping_residual(u, from, to);
          if (residual > o.tol) {
            report.add(ViolationKind::MappingResidual, {},
                       "mapping residual " + std::to_string(residual));
          }
        }
      } else {
        const io::RawJoint raw = io::read_raw_joint(load_one(s, joint_file, DocumentKind::Joint, keep));
        const double norm = raw.vec.norm();
        if (std::abs(norm - 1.0) > o.tol) {
          report.add(ViolationKind::NotNormalized, {}, "joint norm " + std::to_string(norm));
        }
      }
      emit(s, o.out, {io::validation_document(report)});
      return report.ok() ? kOk : kPreconditionError;
    }
    return kOk;
  } catch (const Error& ex) {
    const int code = exit_code_for(ex.code());
    report_error(err, to_string(ex.code()), ex.what(), code);
    return code;
  } catch (const std::exception& ex) {
    report_error(err, "NumericalFailure", ex.what(), kNumericalError);
    return kNumericalError;
  }
}

}  // namespace hjw::cli
