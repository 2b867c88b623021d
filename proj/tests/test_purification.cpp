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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hjw/errors.hpp"
#include "hjw/purification.hpp"
#include "test_util.hpp"

namespace hjw {
namespace {

using namespace hjw::testing;

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no hjw::Error thrown";
  return ErrorCode::NumericalFailure;
}

RhoEnsemble computational_half() {
  return RhoEnsemble(2, {{basis_ket(2, 0), 0.5}, {basis_ket(2, 1), 0.5}});
}

RhoEnsemble plus_minus_half() { return RhoEnsemble(2, {{plus(), 0.5}, {minus(), 0.5}}); }

RhoEnsemble trine() {
  std::vector<EnsembleElement> els;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    els.push_back({ket2(std::cos(a), std::sin(a)), 1.0 / 3.0});
  }
  return RhoEnsemble(2, els);
}

/// sqrt(0.9) e1 e1 + sqrt(0.1) e2 e2.
JointState skewed() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = std::sqrt(0.9);
  v(3) = std::sqrt(0.1);
  return JointState(v, 2, 2);
}

// ---- JointState / Ancilla ---------------------------------------------------

TEST(JointState, RejectsBadShapes) {
  EXPECT_EQ(error_of([] { JointState(ComplexVector::Zero(3), 2, 2); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(error_of([] { JointState(ComplexVector(2.0 * bell_vec()), 2, 2); }),
            ErrorCode::NotNormalized);
}

TEST(Ancilla, RejectsNonOrthonormal) {
  EXPECT_EQ(error_of([] { Ancilla(2, {basis_ket(2, 0), plus()}); }), ErrorCode::NotOrthonormal);
}

// ---- lemma_unitary ----------------------------------------------------------

TEST(LemmaUnitary, IdenticalStates) {
  Rng rng(31);
  const JointState phi(rng.joint_vec(3, 3, 2), 3, 3);
  const ComplexMatrix u = lemma_unitary(phi, phi);
  EXPECT_LT(max_entry(oracle_apply_m(u, phi.vec(), 3, 3) - phi.vec()), 1e-9);
  EXPECT_LT(unitarity_error(u), 1e-12);
}

TEST(LemmaUnitary, BellUnderPauliX) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const JointState chi(oracle_apply_m(x, bell_vec(), 2, 2), 2, 2);
  const ComplexMatrix u = lemma_unitary(chi, bell());
  EXPECT_LT((oracle_apply_m(u, bell_vec(), 2, 2) - chi.vec()).norm(), 1e-9);
  EXPECT_LT(unitarity_error(u), 1e-12);
}

TEST(LemmaUnitary, BellWithAncillaPhases) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = std::polar(1.0, 0.3);
  d(1, 1) = std::polar(1.0, -1.1);
  const JointState chi(oracle_apply_m(d, bell_vec(), 2, 2), 2, 2);
  const ComplexMatrix u = lemma_unitary(chi, bell());
  EXPECT_LT((oracle_apply_m(u, bell_vec(), 2, 2) - chi.vec()).norm(), 1e-9);
}

TEST(LemmaUnitary, RandomPairsIncludingRankDeficient) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const Index ds = rng.index(1, 5), dm = rng.index(1, 5);
    const Index rank = rng.index(1, std::min(ds, dm));
    const JointState phi(rng.joint_vec(ds, dm, rank), ds, dm);
    const ComplexMatrix v = rng.unitary(dm);
    const JointState chi(oracle_apply_m(v, phi.vec(), ds, dm), ds, dm, 1e-9);
    const ComplexMatrix u = lemma_unitary(chi, phi);
    EXPECT_LT((oracle_apply_m(u, phi.vec(), ds, dm) - chi.vec()).norm(), 1e-9)
        << ds << "x" << dm << " rank " << rank;
    EXPECT_LT(unitarity_error(u), 1e-12);
  }
}

TEST(LemmaUnitary, DifferentReducedStatesAreRejected) {
  ComplexVector prod = ComplexVector::Zero(4);
  prod(0) = 1.0;
  EXPECT_EQ(error_of([&] { lemma_unitary(JointState(prod, 2, 2), bell()); }),
            ErrorCode::TracesDiffer);
}

// ---- purify ---------------------------------------------------------------------

TEST(Purify, MaximallyMixedGivesBell) {
  const Purification p = purify(computational_half(), 2);
  EXPECT_LT(max_entry(p.joint.vec() - bell_vec()), 1e-15);
  EXPECT_EQ(p.ancilla.kets(), canonical(2));
}

TEST(Purify, SingleElementGivesProduct) {
  Rng rng(33);
  const ComplexVector psi = rng.unit_ket(2);
  const Purification p = purify(RhoEnsemble(2, {{psi, 1.0}}), 2);
  EXPECT_LT(max_entry(p.joint.vec() - oracle_tensor(psi, basis_ket(2, 0))), 1e-15);
}

TEST(Purify, PlusMinusTracesBackToHalfIdentity) {
  const Purification p = purify(plus_minus_half(), 2);
  EXPECT_LT(max_entry(oracle_partial_trace(p.joint.vec(), 2, 2) -
                      0.5 * ComplexMatrix::Identity(2, 2)),
            1e-15);
}

TEST(Purify, OrderAboveAncillaDimensionIsRejected) {
  EXPECT_EQ(error_of([] { purify(trine(), 2); }), ErrorCode::OrderExceedsAncillaDim);
}

TEST(Purify, InvalidEnsembleIsRejected) {
  const RhoEnsemble bad(2, {{basis_ket(2, 0), 0.6}, {basis_ket(2, 1), 0.6}});
  EXPECT_EQ(error_of([&] { purify(bad, 2); }), ErrorCode::InvalidEnsemble);
}

TEST(Purify, RandomEnsemblesTraceBack) {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const Index ds = rng.index(2, 5);
    const std::size_t order = static_cast<std::size_t>(rng.index(1, 5));
    const Index dm = rng.index(static_cast<Index>(order), 6);
    const RhoEnsemble e = rng.ensemble(ds, order);
    const Purification p = purify(e, dm);
    EXPECT_LT(max_entry(oracle_partial_trace(p.joint.vec(), ds, dm) - oracle_rho(e)), 1e-9);
    EXPECT_LT(max_entry(oracle_reconstruct(e, p.ancilla.kets()) - p.joint.vec()), 1e-15);
  }
}

// ---- match_purification --------------------------------------------------------

TEST(MatchPurification, RoundTripReturnsOwnAncilla) {
  Rng rng(35);
  const RhoEnsemble e = rng.ensemble(3, 3);
  const Purification p = purify(e, 4);
  const Ancilla a = match_purification(e, p.joint);
  for (std::size_t j = 0; j < e.order(); ++j) {
    EXPECT_NEAR(fidelity(a[j], p.ancilla[j]), 1.0, 1e-10);
  }
  EXPECT_LT((oracle_reconstruct(e, a.kets()) - p.joint.vec()).norm(), 1e-9);
}

TEST(MatchPurification, PlusMinusInsideBell) {
  const Ancilla a = match_purification(plus_minus_half(), bell());
  EXPECT_NEAR(fidelity(a[0], plus()), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(a[1], minus()), 1.0, 1e-10);
  EXPECT_LT((oracle_reconstruct(plus_minus_half(), a.kets()) - bell_vec()).norm(), 1e-9);
}

TEST(MatchPurification, LinearlyIndependentAncillaIsUnique) {
  Rng rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const Index ds = rng.index(2, 4);
    const std::size_t order = static_cast<std::size_t>(rng.index(1, ds));
    const Index dm = rng.index(static_cast<Index>(order), 5);
    const RhoEnsemble e = rng.ensemble(ds, order);
    ASSERT_TRUE(is_linearly_independent(e));

    // Target purification built from an unrelated orthonormal set.
    const KetList full0 = rng.orthonormal_basis(dm);
    const KetList target_seed(full0.begin(), full0.begin() + static_cast<long>(order));
    const JointState target = purify_with(e, target_seed).joint;

    const KetList full1 = rng.orthonormal_basis(dm);
    const KetList full2 = rng.orthonormal_basis(dm);
    const KetList d1(full1.begin(), full1.begin() + static_cast<long>(order));
    const KetList d2(full2.begin(), full2.begin() + static_cast<long>(order));
    const Ancilla a1 = match_purification(e, target, d1);
    const Ancilla a2 = match_purification(e, target, d2);
    for (std::size_t j = 0; j < order; ++j) {
      EXPECT_GT(fidelity(a1[j], a2[j]), 1.0 - 1e-8);
      EXPECT_GT(fidelity(a1[j], target_seed[j]), 1.0 - 1e-8);
    }
  }
}

TEST(MatchPurification, WrongTargetIsRejected) {
  ComplexVector prod = ComplexVector::Zero(4);
  prod(0) = 1.0;
  EXPECT_EQ(error_of([&] { match_purification(plus_minus_half(), JointState(prod, 2, 2)); }),
            ErrorCode::TracesDiffer);
}

// ---- ensemble_from_basis --------------------------------------------------------

TEST(EnsembleFromBasis, BellComputational) {
  const BasisEnsemble r = ensemble_from_basis(bell(), canonical(2));
  EXPECT_TRUE(ensembles_equal(r.ensemble, computational_half(), 1e-14));
  EXPECT_EQ(r.member_indices, (std::vector<std::size_t>{0, 1}));
}

TEST(EnsembleFromBasis, BellPlusMinus) {
  const BasisEnsemble r = ensemble_from_basis(bell(), plus_minus());
  EXPECT_TRUE(ensembles_equal(r.ensemble, plus_minus_half(), 1e-14));
  EXPECT_LT(max_entry(r.ensemble[0].ket - plus()), 1e-15);
  EXPECT_LT(max_entry(r.ensemble[1].ket - minus()), 1e-15);
}

TEST(EnsembleFromBasis, ProductWithMatchingFirstKet) {
  Rng rng(37);
  const ComplexVector psi = rng.unit_ket(3);
  const ComplexVector m = rng.unit_ket(3);
  const JointState joint(oracle_tensor(psi, m), 3, 3);
  const KetList basis = complete_orthonormal({m}, 3);
  const BasisEnsemble r = ensemble_from_basis(joint, basis);
  ASSERT_EQ(r.ensemble.order(), 1u);
  EXPECT_EQ(r.member_indices, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(r.ensemble[0].weight, 1.0, 1e-14);
  EXPECT_GT(fidelity(r.ensemble[0].ket, psi), 1.0 - 1e-14);
}

TEST(EnsembleFromBasis, RejectsNonBasis) {
  EXPECT_EQ(error_of([] { ensemble_from_basis(bell(), {basis_ket(2, 0)}); }),
            ErrorCode::NotOrthonormalBasis);
  EXPECT_EQ(error_of([] { ensemble_from_basis(bell(), {basis_ket(2, 0), plus()}); }),
            ErrorCode::NotOrthonormalBasis);
  EXPECT_EQ(error_of([] { ensemble_from_basis(bell(), {basis_ket(3, 0), basis_ket(3, 1)}); }),
            ErrorCode::DimensionMismatch);
}

TEST(EnsembleFromBasis, PurifyRoundTripRecoversEnsemble) {
  Rng rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    const Index ds = rng.index(2, 5);
    const std::size_t order = static_cast<std::size_t>(rng.index(1, 5));
    const Index dm = rng.index(static_cast<Index>(order), 6);
    const RhoEnsemble e = rng.ensemble(ds, order);
    const Purification p = purify(e, dm);
    const KetList basis = complete_orthonormal(p.ancilla.kets(), dm);
    const BasisEnsemble r = ensemble_from_basis(p.joint, basis);
    EXPECT_TRUE(ensembles_equal(r.ensemble, e, 1e-9));
    std::vector<std::size_t> expected(order);
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(r.member_indices, expected);
    EXPECT_LT((oracle_reconstruct(r.ensemble, r.ancilla.kets()) - p.joint.vec()).norm(), 1e-9);
  }
}

TEST(EnsembleFromBasis, DeterministicAndNoProperSubAncilla) {
  Rng rng(39);
  for (int trial = 0; trial < 30; ++trial) {
    const Index ds = 3, dm = 3;
    const JointState joint(rng.joint_vec(ds, dm, 3), ds, dm);
    const KetList basis = rng.orthonormal_basis(dm);
    const BasisEnsemble a = ensemble_from_basis(joint, basis);
    const BasisEnsemble b = ensemble_from_basis(joint, basis);
    EXPECT_EQ(a.member_indices, b.member_indices);
    for (std::size_t j = 0; j < a.ensemble.order(); ++j) {
      EXPECT_EQ(a.ensemble[j].ket, b.ensemble[j].ket);
      EXPECT_EQ(a.ensemble[j].weight, b.ensemble[j].weight);
    }
    EXPECT_LT((oracle_reconstruct(a.ensemble, a.ancilla.kets()) - joint.vec()).norm(), 1e-9);

    // Dropping any member leaves a residual equal to that member's amplitude.
    for (std::size_t drop = 0; drop < a.ensemble.order(); ++drop) {
      ComplexVector partial = ComplexVector::Zero(joint.vec().size());
      for (std::size_t j = 0; j < a.ensemble.order(); ++j) {
        if (j == drop) continue;
        partial += std::sqrt(a.ensemble[j].weight) * oracle_tensor(a.ensemble[j].ket, a.ancilla[j]);
      }
      EXPECT_NEAR((partial - joint.vec()).norm(), std::sqrt(a.ensemble[drop].weight), 1e-12);
    }
  }
}

TEST(EnsembleFromBasis, ZeroWeightKetsAreNotMembers) {
  // Rank-2 state on a 4-dim ancilla read in a basis whose last two kets are
  // orthogonal to its M-support.
  ComplexVector v = ComplexVector::Zero(8);
  v(0 * 4 + 0) = std::sqrt(0.7);
  v(1 * 4 + 1) = std::sqrt(0.3);
  const JointState joint(v, 2, 4);
  const BasisEnsemble r = ensemble_from_basis(joint, canonical(4));
  EXPECT_EQ(r.member_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(r.ensemble[0].weight, 0.7, 1e-15);
  EXPECT_NEAR(r.ensemble[1].weight, 0.3, 1e-15);
}

// ---- umap_between ---------------------------------------------------------------

TEST(UmapBetween, SelfMapIsIdentity) {
  Rng rng(40);
  const RhoEnsemble e = rng.ensemble(3, 3);
  const UMap u = umap_between(e, e);
  ASSERT_EQ(u.coeffs.rows(), 3);
  ASSERT_EQ(u.coeffs.cols(), 3);
  for (Index j = 0; j < 3; ++j) {
    for (Index k = 0; k < 3; ++k) {
      EXPECT_NEAR(std::abs(u.coeffs(j, k)), j == k ? 1.0 : 0.0, 1e-9);
    }
  }
  EXPECT_LT(mapping_residual(u, e, e), 1e-9);
}

TEST(UmapBetween, ComputationalToPlusMinusIsHadamardLike) {
  const UMap u = umap_between(computational_half(), plus_minus_half());
  ASSERT_EQ(u.coeffs.rows(), 2);
  ASSERT_EQ(u.coeffs.cols(), 2);
  for (Index j = 0; j < 2; ++j) {
    for (Index k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(u.coeffs(j, k)), kInvSqrt2, 1e-12);
  }
  EXPECT_LT(mapping_residual(u, computational_half(), plus_minus_half()), 1e-9);
  EXPECT_TRUE(check_umap(u, 1e-9).ok());
}

TEST(UmapBetween, OrderTwoToTrine) {
  const UMap u = umap_between(computational_half(), trine());
  ASSERT_EQ(u.coeffs.rows(), 3);
  ASSERT_EQ(u.coeffs.cols(), 2);
  EXPECT_LT(oracle_gram_error(columns_of(u.coeffs)), 1e-9);
  EXPECT_LT(mapping_residual(u, computational_half(), trine()), 1e-9);
  EXPECT_TRUE(check_umap(u, 1e-9).ok());
}

TEST(UmapBetween, TrineToOrderTwoHasZeroRow) {
  const UMap u = umap_between(trine(), computational_half());
  ASSERT_EQ(u.coeffs.rows(), 3);
  ASSERT_EQ(u.coeffs.cols(), 3);
  EXPECT_LT(mapping_residual(u, trine(), computational_half()), 1e-9);
  // Row 3: sum_t u_{3t} sqrt(v_t) psi_t = 0.
  ComplexVector row3 = ComplexVector::Zero(2);
  for (std::size_t t = 0; t < 3; ++t) {
    row3 += u.coeffs(2, static_cast<Index>(t)) * std::sqrt(trine()[t].weight) * trine()[t].ket;
  }
  EXPECT_LT(row3.norm(), 1e-9);
}

TEST(UmapBetween, DifferentDensitiesAreRejected) {
  const RhoEnsemble pure(2, {{basis_ket(2, 0), 1.0}});
  EXPECT_EQ(error_of([&] { umap_between(pure, computational_half()); }),
            ErrorCode::DensitiesDiffer);
}

TEST(UmapBetween, LinearlyIndependentPairIsUniqueUpToLabelsAndPhases) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = rng.index(2, 4);
    const JointState joint(rng.joint_vec(d, d, d), d, d);
    const RhoEnsemble from = ensemble_from_basis(joint, rng.orthonormal_basis(d)).ensemble;
    const RhoEnsemble to = ensemble_from_basis(joint, rng.orthonormal_basis(d)).ensemble;
    ASSERT_TRUE(is_linearly_independent(from));
    ASSERT_TRUE(is_linearly_independent(to));
    const UMap u = umap_between(from, to);

    // Oracle: solve sum_t u_jt sqrt(v_t) psi_t = sqrt(w_j) phi_j directly.
    ComplexMatrix src(d, d), dst(d, d);
    for (Index t = 0; t < d; ++t) {
      src.col(t) = std::sqrt(from[static_cast<std::size_t>(t)].weight) * from[static_cast<std::size_t>(t)].ket;
      dst.col(t) = std::sqrt(to[static_cast<std::size_t>(t)].weight) * to[static_cast<std::size_t>(t)].ket;
    }
    const ComplexMatrix solved = (src.fullPivLu().solve(dst)).transpose();
    EXPECT_LT(max_entry(u.coeffs - solved), 1e-8);

    // Relabel and rephase both ensembles; the map follows.
    std::vector<std::size_t> perm_from(static_cast<std::size_t>(d)), perm_to(static_cast<std::size_t>(d));
    std::iota(perm_from.begin(), perm_from.end(), 0);
    std::iota(perm_to.begin(), perm_to.end(), 0);
    std::shuffle(perm_from.begin(), perm_from.end(), rng.engine());
    std::shuffle(perm_to.begin(), perm_to.end(), rng.engine());
    std::vector<EnsembleElement> fe, te;
    for (auto p : perm_from) fe.push_back({std::polar(1.0, rng.uniform() * 6.0) * from[p].ket, from[p].weight});
    for (auto p : perm_to) te.push_back({std::polar(1.0, rng.uniform() * 6.0) * to[p].ket, to[p].weight});
    const RhoEnsemble from2(d, fe), to2(d, te);
    const UMap u2 = umap_between(from2, to2);
    EXPECT_LT(mapping_residual(u2, from2, to2), 1e-8);
    for (Index j = 0; j < d; ++j) {
      for (Index k = 0; k < d; ++k) {
        EXPECT_NEAR(std::abs(u2.coeffs(j, k)),
                    std::abs(u.coeffs(static_cast<Index>(perm_to[static_cast<std::size_t>(j)]),
                                      static_cast<Index>(perm_from[static_cast<std::size_t>(k)]))),
                    1e-8);
      }
    }
  }
}

// ---- apply_unitary_umap ---------------------------------------------------------

TEST(ApplyUnitary, IdentityReproducesBasisEnsemble) {
  Rng rng(42);
  const JointState joint(rng.joint_vec(2, 3, 2), 2, 3);
  const KetList basis = rng.orthonormal_basis(3);
  const UnitaryImage r = apply_unitary_umap(joint, basis, ComplexMatrix::Identity(3, 3));
  const BasisEnsemble direct = ensemble_from_basis(joint, basis);
  ASSERT_EQ(r.to.ensemble.order(), direct.ensemble.order());
  for (std::size_t j = 0; j < direct.ensemble.order(); ++j) {
    EXPECT_EQ(r.to.ensemble[j].ket, direct.ensemble[j].ket);
    EXPECT_EQ(r.to.ensemble[j].weight, direct.ensemble[j].weight);
  }
}

TEST(ApplyUnitary, HadamardOnBell) {
  const UnitaryImage r = apply_unitary_umap(bell(), canonical(2), hadamard());
  EXPECT_TRUE(ensembles_equal(r.to.ensemble, plus_minus_half(), 1e-12));
  EXPECT_TRUE(ensembles_equal(r.from.ensemble, computational_half(), 1e-12));
  EXPECT_LT(mapping_residual(r.umap, r.from.ensemble, r.to.ensemble), 1e-12);
  EXPECT_TRUE(check_umap(r.umap, 1e-12).ok());
  // Full member sets: the generator is U^dagger.
  EXPECT_LT(max_entry(*r.umap.generator - hadamard().adjoint()), 1e-15);
}

TEST(ApplyUnitary, RandomUnitaryOnRankTwoState) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const JointState joint(rng.joint_vec(2, 3, 2), 2, 3);
    const ComplexMatrix rho = oracle_partial_trace(joint.vec(), 2, 3);
    const UnitaryImage r = apply_unitary_umap(joint, rng.orthonormal_basis(3), rng.unitary(3));
    EXPECT_TRUE(validate_ensemble(r.to.ensemble).ok());
    EXPECT_LT(max_entry(oracle_rho(r.to.ensemble) - rho), 1e-9);
    EXPECT_LT(oracle_gram_error(columns_of(r.umap.coeffs)), 1e-9);
    EXPECT_LT(mapping_residual(r.umap, r.from.ensemble, r.to.ensemble), 1e-9);
    EXPECT_TRUE(check_umap(r.umap, 1e-9).ok());
  }
}

TEST(ApplyUnitary, PartialMemberSets) {
  // Ancilla support is 2-dimensional inside a 3-dim H_M; the canonical basis
  // has one non-member, the rotated one generically none.
  ComplexVector v = ComplexVector::Zero(6);
  v(0 * 3 + 0) = std::sqrt(0.6);
  v(1 * 3 + 1) = std::sqrt(0.4);
  const JointState joint(v, 2, 3);
  Rng rng(44);
  const UnitaryImage r = apply_unitary_umap(joint, canonical(3), rng.unitary(3));
  EXPECT_EQ(r.from.member_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.to.member_indices.size(), 3u);
  EXPECT_EQ(r.umap.coeffs.rows(), 3);
  EXPECT_EQ(r.umap.coeffs.cols(), 2);
  EXPECT_LT(mapping_residual(r.umap, r.from.ensemble, r.to.ensemble), 1e-12);
  EXPECT_TRUE(check_umap(r.umap, 1e-12).ok());
}

TEST(ApplyUnitary, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_EQ(error_of([&] { apply_unitary_umap(bell(), canonical(2), m); }), ErrorCode::NotUnitary);
}

// ---- ensemble_containing ---------------------------------------------------------

TEST(EnsembleContaining, BellPlus) {
  const ContainingEnsemble r = ensemble_containing(bell(), plus());
  EXPECT_NEAR(r.target_weight, 0.5, 1e-15);
  EXPECT_EQ(r.result.member_indices.front(), 0u);
  EXPECT_GT(fidelity(r.result.ensemble[0].ket, plus()), 1.0 - 1e-14);
  EXPECT_NEAR(r.result.ensemble[0].weight, 0.5, 1e-14);
  EXPECT_TRUE(ensembles_equal(r.result.ensemble, plus_minus_half(), 1e-12));
}

TEST(EnsembleContaining, ProductTarget) {
  Rng rng(45);
  const ComplexVector psi = rng.unit_ket(2);
  const JointState joint(oracle_tensor(psi, rng.unit_ket(3)), 2, 3);
  const ContainingEnsemble r = ensemble_containing(joint, psi);
  ASSERT_EQ(r.result.ensemble.order(), 1u);
  EXPECT_NEAR(r.result.ensemble[0].weight, 1.0, 1e-14);
  EXPECT_GT(fidelity(r.result.ensemble[0].ket, psi), 1.0 - 1e-14);
}

TEST(EnsembleContaining, MinorEigenketGetsItsEigenvalue) {
  // gamma = (0, 1), psi = (sqrt .9, sqrt .1): sum |gamma/psi|^2 = 10.
  const ContainingEnsemble r = ensemble_containing(skewed(), basis_ket(2, 1));
  EXPECT_NEAR(r.target_weight, 0.1, 1e-15);
  EXPECT_NEAR(r.result.ensemble[0].weight, 0.1, 1e-15);
  EXPECT_GT(fidelity(r.result.ensemble[0].ket, basis_ket(2, 1)), 1.0 - 1e-15);
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.9;
  rho(1, 1) = 0.1;
  EXPECT_LT(max_entry(oracle_rho(r.result.ensemble) - rho), 1e-12);
}

TEST(EnsembleContaining, RejectsOutsideSupport) {
  ComplexVector prod = ComplexVector::Zero(4);
  prod(0) = 1.0;
  EXPECT_EQ(error_of([&] { ensemble_containing(JointState(prod, 2, 2), basis_ket(2, 1)); }),
            ErrorCode::NotInSupport);
  EXPECT_EQ(error_of([] { ensemble_containing(bell(), ComplexVector(2.0 * plus())); }),
            ErrorCode::NotNormalized);
}

TEST(EnsembleContaining, RandomSupportVectorsWithPseudoInverseOracle) {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const Index ds = rng.index(2, 5), dm = rng.index(2, 5);
    const Index rank = rng.index(2, std::min(ds, dm));
    const JointState joint(rng.joint_vec(ds, dm, rank), ds, dm);
    const ComplexMatrix rho = oracle_partial_trace(joint.vec(), ds, dm);

    // A random unit vector in the column space of rho.
    const ComplexVector xi = (rho * rng.gaussian(ds)).normalized();
    const ContainingEnsemble r = ensemble_containing(joint, xi);

    // 1 / <xi|rho^+|xi>, with rho^+ from an independent eigensolve.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    double q = 0.0;
    for (Index s = 0; s < ds; ++s) {
      const double lambda = es.eigenvalues()(s);
      if (lambda > 1e-10) q += std::norm(es.eigenvectors().col(s).dot(xi)) / lambda;
    }
    EXPECT_NEAR(r.target_weight, 1.0 / q, 1e-9);
    EXPECT_NEAR(r.result.ensemble[0].weight, 1.0 / q, 1e-9);
    EXPECT_GT(fidelity(r.result.ensemble[0].ket, xi), 1.0 - 1e-9);
    EXPECT_LT(max_entry(oracle_rho(r.result.ensemble) - rho), 1e-9);
    EXPECT_LT(oracle_gram_error(r.ancilla_basis), 1e-10);
  }
}

// ---- check_umap ---------------------------------------------------------------

TEST(CheckUmap, FlagsBadColumnsAndGenerator) {
  UMap u;
  u.coeffs = ComplexMatrix::Identity(2, 2);
  u.coeffs(0, 1) = 0.3;
  EXPECT_TRUE(check_umap(u).has(ViolationKind::ColumnsNotOrthonormal));

  UMap g;
  g.coeffs = ComplexMatrix::Identity(2, 2);
  g.generator = hadamard();
  EXPECT_TRUE(check_umap(g).has(ViolationKind::GeneratorMismatch));
  g.coeffs = hadamard();
  EXPECT_TRUE(check_umap(g).ok());
}

}  // namespace
}  // namespace hjw
