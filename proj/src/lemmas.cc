// Copyright 2026 The cdenlab Authors
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

#include "cdenlab/lemmas.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "cdenlab/f2lin.h"
#include "cdenlab/fs_cden.h"
#include "cdenlab/owth.h"
#include "cdenlab/qrom.h"
#include "cdenlab/sigma.h"
#include "cdenlab/statevec.h"

namespace cdenlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double max_abs(const MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

MatrixXcd random_density(size_t dim, size_t rank, Rng& rng) {
  MatrixXcd g(dim, rank);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Amp(rng.gaussian(), rng.gaussian());
  MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

MatrixXcd sylvester_hadamard(size_t n) {
  const auto dim = static_cast<Eigen::Index>(size_t{1} << n);
  MatrixXcd h(dim, dim);
  const double norm = std::pow(2.0, -static_cast<double>(n) / 2);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) h(r, c) = (std::popcount(static_cast<uint64_t>(r & c)) & 1) ? -norm : norm;
  return h;
}

MatrixXcd diag_of(size_t n, const std::function<Amp(uint64_t)>& f) {
  const auto dim = static_cast<Eigen::Index>(size_t{1} << n);
  MatrixXcd d = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) d(i, i) = f(static_cast<uint64_t>(i));
  return d;
}

bool dot_uint(uint64_t a, uint64_t b) { return std::popcount(a & b) & 1; }

}  // namespace

// ---------------------------------------------------------------------------

SuiteSummary subspace_projector_suite(uint64_t seed, size_t phases) {
  constexpr size_t n = 4;
  SuiteSummary sum;
  sum.lemma_id = kLemmaSubspaceProjector;
  std::vector<F2Subspace> subspaces;
  for (uint64_t u = 1; u < 16; ++u) {
    for (uint64_t v = u + 1; v < 16; ++v) {
      const std::vector<F2Vec> rows{F2Vec::from_uint(u, n), F2Vec::from_uint(v, n)};
      F2Subspace A = F2Subspace::span(rows, n);
      if (std::find(subspaces.begin(), subspaces.end(), A) == subspaces.end()) subspaces.push_back(std::move(A));
    }
  }
  const MatrixXcd H = sylvester_hadamard(n);
  Rng rng(seed);
  for (size_t ai = 0; ai < subspaces.size(); ++ai) {
    const F2Subspace& A = subspaces[ai];
    const F2Subspace Aperp = A.dual();
    const MatrixXcd PA = diag_of(n, [&](uint64_t x) { return A.contains_uint(x) ? 1.0 : 0.0; });
    const MatrixXcd Pperp = diag_of(n, [&](uint64_t x) { return Aperp.contains_uint(x) ? 1.0 : 0.0; });
    for (size_t k = 0; k < phases; ++k) {
      const uint64_t s = rng.bits(n);
      const MatrixXcd Z = diag_of(n, [&](uint64_t x) { return dot_uint(s, x) ? -1.0 : 1.0; });
      // |A_{0,s}⟩ written out from its definition.
      VectorXcd target = VectorXcd::Zero(16);
      for (uint64_t x = 0; x < 16; ++x) {
        if (A.contains_uint(x)) target(static_cast<Eigen::Index>(x)) = dot_uint(s, x) ? -0.5 : 0.5;
      }
      const MatrixXcd proj = target * target.adjoint();
      const MatrixXcd formula = Z * H * Pperp * H * PA * Z;

      MatrixXcd circuit = MatrixXcd::Zero(16, 16);
      const RegisterLayout lay({{"A", n}});
      for (uint64_t j = 0; j < 16; ++j) {
        const ProjectResult pr = subspace_pvm(SparseState::basis(lay, j), "A", A, F2Vec::from_uint(s, n));
        if (pr.accept_prob > 0) circuit.col(static_cast<Eigen::Index>(j)) = std::sqrt(pr.accept_prob) * to_dense(pr.post);
      }
      const nlohmann::json desc = {{"subspace", ai}, {"basis", A.to_json()}, {"s", F2Vec::from_uint(s, n).to_string()}};
      nlohmann::json d1 = desc, d2 = desc;
      d1["form"] = "dense";
      d2["form"] = "circuit";
      sum.add(make_bound(kLemmaSubspaceProjector, d1, max_abs(formula - proj), 0.0));
      sum.add(make_bound(kLemmaSubspaceProjector, d2, max_abs(circuit - proj), 0.0));
    }
  }
  sum.details.push_back({{"distinct_subspaces", subspaces.size()}});
  return sum;
}

// ---------------------------------------------------------------------------

SuiteSummary ztwirl_suite(size_t instances, uint64_t seed) {
  SuiteSummary sum;
  sum.lemma_id = kLemmaZTwirl;
  for (size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    const size_t wx = 2 + rng.uniform_below(3), wp = 1 + rng.uniform_below(2);
    const RegisterLayout lay({{"X", wx}, {"P", wp}});
    SparseState psi(lay);
    const uint64_t dim = uint64_t{1} << (wx + wp);
    const double keep = 0.25 + 0.75 * rng.uniform01();
    for (uint64_t l = 0; l < dim; ++l) {
      if (rng.uniform01() < keep) psi.set(l, Amp(rng.gaussian(), rng.gaussian()));
    }
    if (psi.support_size() == 0) psi.set(rng.uniform_below(dim), 1.0);
    psi.normalize();

    const DensityMatrix twirl =
        ztwirl_mixture([&](const F2Vec& s) { return apply_phase(psi, "X", s); }, wx, {"X", "P"});
    // Measuring X keeps exactly the blocks with equal X values.
    const VectorXcd v = to_dense(psi);
    MatrixXcd diag = v * v.adjoint();
    for (Eigen::Index r = 0; r < diag.rows(); ++r)
      for (Eigen::Index c = 0; c < diag.cols(); ++c)
        if ((r >> wp) != (c >> wp)) diag(r, c) = 0;
    sum.add(make_bound(kLemmaZTwirl, {{"instance", i}, {"x_bits", wx}, {"p_bits", wp}}, trace_distance(twirl, diag),
                       0.0));
  }
  return sum;
}

// ---------------------------------------------------------------------------

SuiteSummary gentle_measurement_suite(size_t instances, uint64_t seed) {
  SuiteSummary sum;
  sum.lemma_id = kLemmaGentle;
  for (size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    const size_t dim = size_t{2} << rng.uniform_below(4);
    const size_t rank = 1 + rng.uniform_below(dim);
    const MatrixXcd rho = random_density(dim, rank, rng);
    // E = V diag(e) V† with eigenvalues in [0, 1], mostly close to 1.
    const MatrixXcd V = random_unitary(dim, rng);
    const double spread = std::pow(10.0, -3.0 * rng.uniform01());
    Eigen::VectorXd e(static_cast<Eigen::Index>(dim)), se(static_cast<Eigen::Index>(dim));
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      e(k) = std::clamp(1.0 - spread * rng.uniform01(), 0.0, 1.0);
      se(k) = std::sqrt(e(k));
    }
    const MatrixXcd E = V * e.cast<Amp>().asDiagonal() * V.adjoint();
    const MatrixXcd sqrtE = V * se.cast<Amp>().asDiagonal() * V.adjoint();
    const double p = (E * rho).trace().real();
    const double eps = std::max(0.0, 1.0 - p);
    const MatrixXcd post = sqrtE * rho * sqrtE.adjoint() / p;
    sum.add(make_bound(kLemmaGentle, {{"instance", i}, {"dim", dim}, {"rank", rank}, {"eps", eps}},
                       trace_distance(rho, post), std::sqrt(eps)));
  }
  return sum;
}

// ---------------------------------------------------------------------------

SuiteSummary post_measurement_suite(size_t instances, uint64_t seed) {
  constexpr double kMinProb = 0.05;
  SuiteSummary sum;
  sum.lemma_id = kLemmaPostMeasurement;
  for (size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    for (;;) {
      const size_t dim = size_t{2} << rng.uniform_below(4);
      const MatrixXcd rho = random_density(dim, 1 + rng.uniform_below(dim), rng);
      const MatrixXcd tau = random_density(dim, 1 + rng.uniform_below(dim), rng);
      const double t = 0.3 * rng.uniform01();
      const MatrixXcd sigma = (1 - t) * rho + t * tau;
      const double eps = trace_distance(rho, sigma);
      // A projective measurement: the columns of a random unitary, grouped.
      const MatrixXcd V = random_unitary(dim, rng);
      const size_t outcomes = 2 + rng.uniform_below(dim - 1);
      std::vector<MatrixXcd> M(outcomes, MatrixXcd::Zero(dim, dim));
      for (size_t c = 0; c < dim; ++c) {
        const size_t o = c < outcomes ? c : rng.uniform_below(outcomes);
        const VectorXcd col = V.col(static_cast<Eigen::Index>(c));
        M[o] += col * col.adjoint();
      }
      std::vector<size_t> ok;
      for (size_t o = 0; o < outcomes; ++o) {
        if ((M[o] * rho).trace().real() >= kMinProb && (M[o] * sigma).trace().real() > 1e-12) ok.push_back(o);
      }
      if (ok.empty()) continue;
      const MatrixXcd& P = M[ok[rng.uniform_below(ok.size())]];
      const double p = (P * rho).trace().real();
      const MatrixXcd rp = P * rho * P / p;
      const MatrixXcd sp = P * sigma * P / (P * sigma).trace().real();
      sum.add(make_bound(kLemmaPostMeasurement, {{"instance", i}, {"dim", dim}, {"eps", eps}, {"p", p}},
                         trace_distance(rp, sp), 3 * eps / (2 * p)));
      break;
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------

SuiteSummary prf_suite(uint64_t seed, size_t probes, size_t keys) {
  SuiteSummary sum;
  sum.lemma_id = kLemmaPrfSplit;
  for (size_t i = 0; i < keys; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    const OraclePtr h = oracle_new(rng.next_u64(), 32, 32);
    const F2Vec k = F2Vec::random(16, rng);
    const PrfReport rep = prf_split_check(h, k, probes, rng.next_u64());
    BoundReport b = make_bound(kLemmaPrfSplit, {{"instance", i}, {"k", k.to_hex()}, {"probes", probes}},
                               rep.ok ? 0.0 : 1.0, 0.0);
    b.extra = rep.to_json();
    sum.add(b);
  }
  return sum;
}

// ---------------------------------------------------------------------------

SuiteSummary proof_ztwirl_suite(uint64_t seed, size_t instances, size_t lambda) {
  SuiteSummary sum;
  sum.lemma_id = kLemmaProofZTwirl;
  FsParams fp;
  fp.lambda = lambda;
  fp.validate();
  const std::string kV = "V";
  const std::vector<std::string> sigma_regs{kRegS1, kRegS2, kRegS3};
  for (size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    const SchnorrKeys keys = keygen(fp.group, rng);
    const OraclePtr h = oracle_new(rng.next_u64(), kDefaultOracleInBits, kDefaultOracleOutBits);
    const F2Subspace A = sample_subspace(fp.lambda, fp.lambda / 2, rng);
    const uint64_t k = rng.bits(static_cast<unsigned>(fp.lambda));
    auto words = [&](uint64_t a) {
      const Transcript t = honest_transcript(fp, *h, keys.x, keys.w, k, a);
      return std::vector<uint64_t>{t.s1, t.s2, t.s3};
    };
    auto builder = [&](const F2Vec& s) {
      SparseState st = coset_state(A, s, false, kRegA);
      for (const auto& r : sigma_regs) st = add_register(st, r, fp.layout().width(r));
      st = apply_classical_isometry(st, {kRegA}, sigma_regs, [&](const std::vector<uint64_t>& in) {
        return words(in[0]);
      });
      st = add_register(st, kV, 1);
      return apply_classical_isometry(st, {kRegA, kRegS1, kRegS2, kRegS3}, {kV},
                                      [&](const std::vector<uint64_t>& in) {
                                        const Transcript t{in[1], in[2], in[3]};
                                        return std::vector<uint64_t>{fs_predicate(fp, *h, keys.x, in[0], t) ? 1u : 0u};
                                      });
    };
    const DensityMatrix twirl = ztwirl_mixture(builder, fp.lambda, {kRegA, kRegS3, kV});
    // Branch mixture written out directly: index a‖s3‖v.
    const size_t s3_bits = fp.layout().width(kRegS3);
    const auto dim = static_cast<Eigen::Index>(size_t{1} << (fp.lambda + s3_bits + 1));
    MatrixXcd mix = MatrixXcd::Zero(dim, dim);
    const auto branches = A.enumerate();
    for (const auto& av : branches) {
      const uint64_t a = av.to_uint();
      const auto w = words(a);
      const bool pred = verify(fp.group, keys.x, Transcript{w[0], w[1], w[2]}) &&
                        w[1] == fs_challenge(fp, *h, a, keys.x, w[0]);
      const auto idx = static_cast<Eigen::Index>((((a << s3_bits) | w[2]) << 1) | (pred ? 1 : 0));
      mix(idx, idx) += 1.0 / static_cast<double>(branches.size());
    }
    sum.add(make_bound(kLemmaProofZTwirl, {{"instance", i}, {"lambda", fp.lambda}}, trace_distance(twirl, mix), 0.0));
  }
  return sum;
}

// ---------------------------------------------------------------------------

std::vector<SuiteSummary> owth_suites(size_t instances, uint64_t seed, size_t draws) {
  std::vector<SuiteSummary> out;
  std::map<std::string, size_t> index;
  for (const std::string& id : {kLemmaBbbv, kLemmaQwDistinguish, kLemmaQwExtract, kLemmaUnitaryOwth,
                                kLemmaUnitaryOwthCorollary}) {
    index[id] = out.size();
    out.push_back(SuiteSummary{id});
  }
  for (const BoundReport& r : owth_bound_suite(instances, seed, draws)) out[index.at(r.lemma)].add(r);
  return out;
}

std::vector<SuiteSummary> run_all_lemmas(const LemmaConfig& cfg) {
  std::vector<SuiteSummary> out;
  out.push_back(ztwirl_suite(cfg.ztwirl_instances, Rng(cfg.seed).split(1).seed()));
  out.push_back(subspace_projector_suite(Rng(cfg.seed).split(2).seed()));
  out.push_back(gentle_measurement_suite(cfg.gentle_instances, Rng(cfg.seed).split(3).seed()));
  out.push_back(post_measurement_suite(cfg.postmeas_instances, Rng(cfg.seed).split(4).seed()));
  for (auto& s : owth_suites(cfg.owth_instances, Rng(cfg.seed).split(5).seed(), cfg.owth_draws)) {
    out.push_back(std::move(s));
  }
  out.push_back(prf_suite(Rng(cfg.seed).split(6).seed(), cfg.prf_probes));
  out.push_back(proof_ztwirl_suite(Rng(cfg.seed).split(7).seed()));
  return out;
}

}  // namespace cdenlab
