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

#include "cdenlab/owth.h"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

const std::string kRegW = "W";
const std::string kRegQin = "QIN";
const std::string kRegQout = "QOUT";

// Corollary thresholds; δ = 1 is excluded by the (1 − δ²) denominator.
constexpr double kDeltas[] = {0.05, 0.1, 0.25, 0.5, 0.75};

double pure_td_of_images(const Eigen::MatrixXcd& u0, const Eigen::MatrixXcd& u1, const Eigen::VectorXcd& q) {
  const Eigen::VectorXcd a = (u0 * q).normalized(), b = (u1 * q).normalized();
  // Same cancellation-free form as pure_trace_distance.
  const Amp ov = a.dot(b);
  const double m = std::abs(ov);
  const Amp c = m > 0 ? std::conj(ov) / m : Amp(1.0);
  return std::sqrt(std::max(0.0, 0.5 * (a - c * b).squaredNorm() * (1 + m)));
}

Eigen::MatrixXcd random_hermitian(size_t dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Amp(rng.gaussian(), rng.gaussian());
  Eigen::MatrixXcd k = (g + g.adjoint()) / 2.0;
  return k / k.norm();
}

Eigen::MatrixXcd expi(const Eigen::MatrixXcd& k, double eps) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, eps * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd random_unitary(size_t dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Amp(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

CircuitAlgorithm::CircuitAlgorithm(RegisterLayout layout, std::vector<Eigen::MatrixXcd> unitaries)
    : layout_(std::move(layout)), unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) throw std::invalid_argument("CircuitAlgorithm: need at least one unitary");
  if (layout_.total_width() > kOwthMaxQubits) throw std::invalid_argument("CircuitAlgorithm: too many qubits");
  for (const auto& r : layout_.registers()) names_.push_back(r.name);
  const auto dim = static_cast<Eigen::Index>(size_t{1} << layout_.total_width());
  for (const auto& u : unitaries_) {
    if (u.rows() != dim || u.cols() != dim) throw std::invalid_argument("CircuitAlgorithm: unitary size mismatch");
  }
}

SparseState CircuitAlgorithm::initial_state() const { return SparseState::basis(layout_, 0); }

SparseState CircuitAlgorithm::step(size_t t, const SparseState& st) const {
  return apply_register_unitary(st, names_, unitaries_.at(t - 1));
}

RegisterLayout owth_layout(size_t w, size_t in_bits, size_t out_bits) {
  return RegisterLayout({{kRegW, w}, {kRegQin, in_bits}, {kRegQout, out_bits}});
}

Eigen::MatrixXcd oracle_unitary(const Oracle& o) {
  const size_t n = o.in_bits(), m = o.out_bits();
  if (n + m > kOwthMaxQubits) throw std::invalid_argument("oracle_unitary: oracle too wide");
  const auto dim = static_cast<Eigen::Index>(size_t{1} << (n + m));
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
    const uint64_t y = o.query(x);
    for (uint64_t b = 0; b < (uint64_t{1} << m); ++b) {
      u(static_cast<Eigen::Index>((x << m) | (b ^ y)), static_cast<Eigen::Index>((x << m) | b)) = 1.0;
    }
  }
  return u;
}

std::set<uint64_t> differing_inputs(const Oracle& a, const Oracle& b) {
  if (a.in_bits() != b.in_bits() || a.in_bits() > 20) throw std::invalid_argument("differing_inputs: widths");
  std::set<uint64_t> out;
  for (uint64_t x = 0; x < (uint64_t{1} << a.in_bits()); ++x) {
    if (a.query(x) != b.query(x)) out.insert(x);
  }
  return out;
}

std::vector<BoundReport> classical_bounds(const OracleAlgorithm& alg, OraclePtr h, OraclePtr h_prime,
                                          const nlohmann::json& descriptor, size_t draws, Rng& rng) {
  const size_t T = alg.num_queries();
  if (T == 0 || T > kOwthMaxQueries) throw std::invalid_argument("classical_bounds: T must lie in [1, 8]");
  const RunResult r0 = run_with_oracle(alg, h, false);
  const RunResult r1 = run_with_oracle(alg, h_prime, false);
  const std::set<uint64_t> X = differing_inputs(*h, *h_prime);
  const double qw = query_weight(r0.trace, X);
  const double td = pure_trace_distance(r0.final_state, r1.final_state);
  const double Td = static_cast<double>(T);

  std::vector<BoundReport> out;
  BoundReport bbbv = make_bound(kLemmaBbbv, descriptor, td, std::sqrt(Td * qw));
  bbbv.extra = {{"qw", qw}, {"twice_rhs", 2 * std::sqrt(Td * qw)}};
  out.push_back(std::move(bbbv));

  BoundReport dist = make_bound(kLemmaQwDistinguish, descriptor, td, 2 * std::sqrt(Td) * std::sqrt(qw));
  const double alt = std::sqrt(Td * qw);
  const bool alt_holds = alt - td >= -kBoundTolerance;
  dist.extra = {{"qw", qw}, {"alt_rhs", alt}, {"alt_holds", alt_holds}, {"forms_disagree", alt_holds != dist.holds}};
  out.push_back(std::move(dist));

  // Stop at a uniform query and measure its input register.
  const RandomQueryExtractor ex(alg, h);
  uint64_t hits = 0;
  for (size_t d = 0; d < draws; ++d) {
    const auto xy = ex.sample(rng);
    if (xy && X.count(xy->first) && h->query(xy->first) == xy->second) ++hits;
  }
  const double rate = draws ? static_cast<double>(hits) / static_cast<double>(draws) : 0;
  const double p0 = qw / (Td * Td);
  const double sigma = draws ? std::sqrt(std::max(0.0, p0 * (1 - p0)) / static_cast<double>(draws)) : 0;
  BoundReport ext = make_bound(kLemmaQwExtract, descriptor, p0 - 3 * sigma, rate);
  ext.extra = {{"qw_over_T2", p0}, {"exact_rate", qw / Td}, {"draws", draws}, {"sigma", sigma}};
  out.push_back(std::move(ext));
  return out;
}

std::vector<BoundReport> unitary_bounds(const OracleAlgorithm& alg, const Eigen::MatrixXcd& u0,
                                        const Eigen::MatrixXcd& u1, const nlohmann::json& descriptor) {
  const size_t T = alg.num_queries();
  if (T == 0 || T > kOwthMaxQueries) throw std::invalid_argument("unitary_bounds: T must lie in [1, 8]");
  const std::vector<std::string> q_regs{alg.in_reg(), alg.out_reg()};
  const QueryOp q0 = [&](const SparseState& st) { return apply_register_unitary(st, q_regs, u0); };
  const QueryOp q1 = [&](const SparseState& st) { return apply_register_unitary(st, q_regs, u1); };
  const RunResult r0 = run_with_query(alg, q0, true);
  const RunResult r1 = run_with_query(alg, q1, false);
  const double td = pure_trace_distance(r0.final_state, r1.final_state);
  const double Td = static_cast<double>(T);

  double td_sum = 0, l2_sum = 0;
  std::vector<std::pair<double, double>> terms;  // (weight, TD) per (t, i)
  for (const auto& rec : r0.trace.queries) {
    if (!rec.has_schmidt) throw std::runtime_error("unitary_bounds: missing Schmidt snapshot");
    for (const auto& term : rec.schmidt) {
      const double d = pure_td_of_images(u0, u1, term.vec);
      td_sum += term.weight * d * d;
      l2_sum += term.weight * ((u0 - u1) * term.vec).squaredNorm();
      terms.emplace_back(term.weight, d);
    }
  }

  std::vector<BoundReport> out;
  BoundReport main = make_bound(kLemmaUnitaryOwth, descriptor, td, std::sqrt(4 * Td * td_sum));
  const double l2_rhs = std::sqrt(Td * l2_sum);
  main.extra = {{"l2_rhs", l2_rhs}, {"l2_holds", l2_rhs - td >= -kBoundTolerance}};
  out.push_back(std::move(main));

  for (double delta : kDeltas) {
    double mass = 0;
    for (const auto& [w, d] : terms) {
      if (d >= delta) mass += w;
    }
    mass /= Td;
    const double need = (td * td / (4 * Td * Td) - delta * delta) / (1 - delta * delta);
    nlohmann::json desc = descriptor;
    desc["delta"] = delta;
    out.push_back(make_bound(kLemmaUnitaryOwthCorollary, desc, need, mass));
  }
  return out;
}

std::vector<BoundReport> owth_bound_suite(size_t instances, uint64_t seed, size_t draws) {
  std::vector<BoundReport> out;
  for (size_t i = 0; i < instances; ++i) {
    // Classical pair.
    {
      Rng rng = Rng::for_trial(seed, 2 * i);
      const size_t w = 1 + rng.uniform_below(2), n = 2 + rng.uniform_below(2), m = 1 + rng.uniform_below(2);
      const size_t T = 1 + rng.uniform_below(kOwthMaxQueries);
      const RegisterLayout lay = owth_layout(w, n, m);
      std::vector<Eigen::MatrixXcd> us;
      for (size_t t = 0; t <= T; ++t) us.push_back(random_unitary(size_t{1} << lay.total_width(), rng));
      const CircuitAlgorithm alg(lay, std::move(us));
      const OraclePtr h = oracle_new(rng.next_u64(), n, m);
      OraclePtr hp = h;
      nlohmann::json overlay;
      switch (rng.uniform_below(3)) {
        case 0: {
          std::map<uint64_t, uint64_t> pts;
          const size_t k = rng.uniform_below(4);
          for (size_t j = 0; j < k; ++j) pts[rng.bits(static_cast<unsigned>(n))] = rng.bits(static_cast<unsigned>(m));
          hp = reprogram_points(h, pts);
          overlay = {{"type", "points"}, {"count", pts.size()}};
          break;
        }
        case 1: {
          const uint64_t a = rng.bits(static_cast<unsigned>(n));
          uint64_t b;
          do {
            b = rng.bits(static_cast<unsigned>(n));
          } while (b == a);
          hp = reprogram_swap(h, a, b);
          overlay = {{"type", "swap"}};
          break;
        }
        default:
          overlay = {{"type", "none"}};
      }
      const nlohmann::json desc = {{"instance", i},  {"kind", "classical"}, {"T", T},
                                   {"w", w},         {"in_bits", n},        {"out_bits", m},
                                   {"overlay", overlay}, {"differing", differing_inputs(*h, *hp).size()}};
      for (auto& r : classical_bounds(alg, h, hp, desc, draws, rng)) out.push_back(std::move(r));
    }
    // Unitary pair.
    {
      Rng rng = Rng::for_trial(seed, 2 * i + 1);
      const size_t w = 1 + rng.uniform_below(2), n = 1 + rng.uniform_below(2), m = 1 + rng.uniform_below(2);
      const size_t T = 1 + rng.uniform_below(kOwthMaxQueries);
      const RegisterLayout lay = owth_layout(w, n, m);
      std::vector<Eigen::MatrixXcd> us;
      for (size_t t = 0; t <= T; ++t) us.push_back(random_unitary(size_t{1} << lay.total_width(), rng));
      const CircuitAlgorithm alg(lay, std::move(us));
      const size_t qdim = size_t{1} << (n + m);
      Eigen::MatrixXcd u0, u1;
      std::string kind;
      double eps = 0;
      switch (rng.uniform_below(4)) {
        case 0:
          kind = "perturbed";
          u0 = random_unitary(qdim, rng);
          eps = rng.uniform01();
          u1 = u0 * expi(random_hermitian(qdim, rng), eps);
          break;
        case 1:
          kind = "independent";
          u0 = random_unitary(qdim, rng);
          u1 = random_unitary(qdim, rng);
          break;
        case 2: {
          kind = "classical-oracles";
          const OraclePtr h = oracle_new(rng.next_u64(), n, m);
          const uint64_t x = rng.bits(static_cast<unsigned>(n));
          const OraclePtr hp = reprogram_points(h, {{x, h->query(x) ^ 1}});
          u0 = oracle_unitary(*h);
          u1 = oracle_unitary(*hp);
          break;
        }
        default:
          kind = "identical";
          u0 = random_unitary(qdim, rng);
          u1 = u0;
      }
      const nlohmann::json desc = {{"instance", i}, {"kind", kind},     {"T", T},  {"w", w},
                                   {"in_bits", n},  {"out_bits", m},    {"eps", eps}};
      for (auto& r : unitary_bounds(alg, u0, u1, desc)) out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace cdenlab
