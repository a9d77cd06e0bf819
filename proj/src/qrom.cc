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

#include "cdenlab/qrom.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

uint64_t width_mask(size_t bits) { return bits >= 64 ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1); }

std::string hex64(uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(v));
  return buf;
}

uint64_t parse_hex(const nlohmann::json& j) { return std::stoull(j.get<std::string>(), nullptr, 16); }

class PointMapView final : public Oracle {
 public:
  PointMapView(OraclePtr base, std::map<uint64_t, uint64_t> points)
      : base_(std::move(base)), points_(std::move(points)) {
    for (const auto& [x, y] : points_) {
      check_input(x);
      if ((y & ~width_mask(out_bits())) != 0) throw std::invalid_argument("reprogram_points: output too wide");
    }
  }
  size_t in_bits() const override { return base_->in_bits(); }
  size_t out_bits() const override { return base_->out_bits(); }
  uint64_t query(uint64_t x) const override {
    auto it = points_.find(x);
    return it == points_.end() ? base_->query(x) : it->second;
  }
  nlohmann::json spec() const override {
    auto j = base_->spec();
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] : points_) pts.push_back({hex64(x), hex64(y)});
    j["overlays"].push_back({{"type", "points"}, {"map", pts}});
    return j;
  }

 private:
  OraclePtr base_;
  std::map<uint64_t, uint64_t> points_;
};

class SwapView final : public Oracle {
 public:
  SwapView(OraclePtr base, uint64_t a, uint64_t b) : base_(std::move(base)), a_(a), b_(b) {
    check_input(a);
    check_input(b);
  }
  size_t in_bits() const override { return base_->in_bits(); }
  size_t out_bits() const override { return base_->out_bits(); }
  uint64_t query(uint64_t x) const override {
    if (x == a_) return base_->query(b_);
    if (x == b_) return base_->query(a_);
    return base_->query(x);
  }
  nlohmann::json spec() const override {
    auto j = base_->spec();
    j["overlays"].push_back({{"type", "swap"}, {"a", hex64(a_)}, {"b", hex64(b_)}});
    return j;
  }

 private:
  OraclePtr base_;
  uint64_t a_, b_;
};

class PrefixView final : public Oracle {
 public:
  PrefixView(OraclePtr base, uint64_t p, size_t p_bits) : base_(std::move(base)), p_(p), p_bits_(p_bits) {
    if (p_bits == 0 || p_bits >= base_->in_bits()) throw std::invalid_argument("restrict_prefix: bad prefix width");
    if ((p & ~width_mask(p_bits)) != 0) throw std::invalid_argument("restrict_prefix: prefix too wide");
  }
  size_t in_bits() const override { return base_->in_bits() - p_bits_; }
  size_t out_bits() const override { return base_->out_bits(); }
  uint64_t query(uint64_t x) const override {
    check_input(x);
    return base_->query(concat_bits(p_, x, in_bits()));
  }
  nlohmann::json spec() const override {
    auto j = base_->spec();
    j["overlays"].push_back({{"type", "prefix"}, {"value", hex64(p_)}, {"bits", p_bits_}});
    return j;
  }

 private:
  OraclePtr base_;
  uint64_t p_;
  size_t p_bits_;
};

}  // namespace

void Oracle::check_input(uint64_t x) const {
  if ((x & ~width_mask(in_bits())) != 0) throw std::invalid_argument("oracle input wider than in_bits");
}

OracleTable::OracleTable(uint64_t seed, size_t in_bits, size_t out_bits)
    : seed_(seed), in_bits_(in_bits), out_bits_(out_bits) {
  if (in_bits == 0 || in_bits > 64 || out_bits == 0 || out_bits > 64) {
    throw std::invalid_argument("oracle widths must lie in [1, 64]");
  }
  key_ = mix64(seed ^ mix64((in_bits << 8) | out_bits));
}

uint64_t OracleTable::query(uint64_t x) const {
  check_input(x);
  const uint64_t h = mix64(mix64(x ^ key_) + key_);
  return h & width_mask(out_bits_);
}

nlohmann::json OracleTable::spec() const {
  return {{"seed", hex64(seed_)}, {"in_bits", in_bits_}, {"out_bits", out_bits_}, {"overlays", nlohmann::json::array()}};
}

OraclePtr oracle_new(uint64_t seed, size_t in_bits, size_t out_bits) {
  return std::make_shared<OracleTable>(seed, in_bits, out_bits);
}

OraclePtr reprogram_points(OraclePtr base, std::map<uint64_t, uint64_t> points) {
  return std::make_shared<PointMapView>(std::move(base), std::move(points));
}

OraclePtr reprogram_swap(OraclePtr base, uint64_t a, uint64_t b) {
  return std::make_shared<SwapView>(std::move(base), a, b);
}

OraclePtr restrict_prefix(OraclePtr base, uint64_t p, size_t p_bits) {
  return std::make_shared<PrefixView>(std::move(base), p, p_bits);
}

OraclePtr oracle_from_spec(const nlohmann::json& spec) {
  OraclePtr o = oracle_new(parse_hex(spec.at("seed")), spec.at("in_bits").get<size_t>(),
                           spec.at("out_bits").get<size_t>());
  for (const auto& ov : spec.at("overlays")) {
    const auto type = ov.at("type").get<std::string>();
    if (type == "points") {
      std::map<uint64_t, uint64_t> pts;
      for (const auto& xy : ov.at("map")) pts[parse_hex(xy.at(0))] = parse_hex(xy.at(1));
      o = reprogram_points(o, std::move(pts));
    } else if (type == "swap") {
      o = reprogram_swap(o, parse_hex(ov.at("a")), parse_hex(ov.at("b")));
    } else if (type == "prefix") {
      o = restrict_prefix(o, parse_hex(ov.at("value")), ov.at("bits").get<size_t>());
    } else {
      throw std::invalid_argument("unknown overlay type '" + type + "'");
    }
  }
  return o;
}

uint64_t query_padded(const Oracle& o, uint64_t x, size_t x_bits) {
  if (x_bits > o.in_bits()) throw std::invalid_argument("query_padded: input wider than oracle");
  if ((x & ~width_mask(x_bits)) != 0) throw std::invalid_argument("query_padded: value wider than x_bits");
  const size_t pad = o.in_bits() - x_bits;
  return o.query(pad >= 64 ? 0 : x << pad);
}

SparseState coherent_query(const SparseState& st, const std::string& in_reg, const std::string& out_reg,
                           const Oracle& o) {
  const auto& lay = st.layout();
  if (lay.width(in_reg) != o.in_bits() || lay.width(out_reg) != o.out_bits()) {
    throw std::invalid_argument("coherent_query: register widths do not match the oracle");
  }
  return apply_classical_isometry(st, {in_reg}, {out_reg},
                                  [&o](const std::vector<uint64_t>& x) { return std::vector<uint64_t>{o.query(x[0])}; });
}

// ---------------------------------------------------------------------------

double query_weight(const QueryTrace& trace, const std::set<uint64_t>& S) {
  double w = 0;
  for (const auto& q : trace.queries) {
    for (const auto& [x, p] : q.input_weights) {
      if (S.count(x)) w += p;
    }
  }
  return w;
}

namespace {

QueryRecord snapshot(size_t t, const SparseState& st, const std::string& in_reg, const std::string& out_reg,
                     bool record_schmidt) {
  QueryRecord rec;
  rec.t = t;
  rec.input_weights = outcome_distribution(st, in_reg);
  const auto& lay = st.layout();
  if (record_schmidt && st.support_size() <= kSchmidtSupportCap &&
      lay.width(in_reg) + lay.width(out_reg) <= kMaxDensityBits) {
    const DensityMatrix rho = density(st, {in_reg, out_reg});
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho);
    for (Eigen::Index i = 0; i < rho.rows(); i++) {
      const double w = es.eigenvalues()(i);
      if (w > 1e-14) rec.schmidt.push_back({w, es.eigenvectors().col(i)});
    }
    rec.has_schmidt = true;
  }
  return rec;
}

}  // namespace

QueryOp classical_query_op(const OracleAlgorithm& alg, OraclePtr o) {
  return [in = alg.in_reg(), out = alg.out_reg(), o](const SparseState& st) { return coherent_query(st, in, out, *o); };
}

RunResult run_with_query(const OracleAlgorithm& alg, const QueryOp& q, bool record_schmidt) {
  RunResult res;
  SparseState st = alg.initial_state();
  const size_t T = alg.num_queries();
  for (size_t t = 1; t <= T; t++) {
    st = alg.step(t, st);
    res.trace.queries.push_back(snapshot(t, st, alg.in_reg(), alg.out_reg(), record_schmidt));
    st = q(st);
  }
  res.final_state = alg.step(T + 1, st);
  return res;
}

RunResult run_with_oracle(const OracleAlgorithm& alg, OraclePtr o, bool record_schmidt) {
  return run_with_query(alg, classical_query_op(alg, std::move(o)), record_schmidt);
}

RandomQueryExtractor::RandomQueryExtractor(const OracleAlgorithm& alg, OraclePtr o)
    : oracle_(std::move(o)), in_reg_(alg.in_reg()) {
  SparseState st = alg.initial_state();
  for (size_t t = 1; t <= alg.num_queries(); t++) {
    st = alg.step(t, st);
    pre_query_.push_back(st);
    st = coherent_query(st, alg.in_reg(), alg.out_reg(), *oracle_);
  }
}

std::optional<std::pair<uint64_t, uint64_t>> RandomQueryExtractor::sample(Rng& rng) const {
  if (pre_query_.empty()) return std::nullopt;
  const size_t t = rng.uniform_below(pre_query_.size());
  const auto m = measure(pre_query_[t], in_reg_, rng);
  return std::make_pair(m.value, oracle_->query(m.value));
}

std::optional<std::pair<uint64_t, uint64_t>> extract_by_random_query(const OracleAlgorithm& alg, OraclePtr o,
                                                                     Rng& rng) {
  return RandomQueryExtractor(alg, std::move(o)).sample(rng);
}

// ---------------------------------------------------------------------------

nlohmann::json PrfReport::to_json() const {
  return {{"probes", probes},
          {"suffix_bits", suffix_bits},
          {"max_bit_dev_h", max_bit_dev_h},
          {"max_bit_dev_g", max_bit_dev_g},
          {"collisions_h", collisions_h},
          {"collisions_g", collisions_g},
          {"expected_collisions", expected_collisions},
          {"ok", ok}};
}

PrfReport prf_split_check(OraclePtr h, const F2Vec& k, size_t probes, uint64_t seed) {
  if (k.size() == 0 || k.size() >= h->in_bits()) throw std::invalid_argument("prf_split_check: bad key width");
  PrfReport rep;
  rep.probes = probes;
  rep.suffix_bits = h->in_bits() - k.size();
  if (probes == 0) return rep;
  const OraclePtr hk = restrict_prefix(h, k.to_uint(), k.size());
  const OraclePtr g = oracle_new(mix64(seed ^ 0x4752414E44ULL), rep.suffix_bits, h->out_bits());
  Rng rng(seed);
  const size_t m = h->out_bits();
  std::vector<size_t> ones_h(m, 0), ones_g(m, 0);
  std::unordered_set<uint64_t> seen_h, seen_g;
  const size_t trunc = std::min<size_t>(16, m);
  for (size_t i = 0; i < probes; i++) {
    const uint64_t v = rng.bits(static_cast<unsigned>(rep.suffix_bits));
    const uint64_t yh = hk->query(v), yg = g->query(v);
    for (size_t b = 0; b < m; b++) {
      ones_h[b] += (yh >> b) & 1;
      ones_g[b] += (yg >> b) & 1;
    }
    if (!seen_h.insert(yh & width_mask(trunc)).second) rep.collisions_h++;
    if (!seen_g.insert(yg & width_mask(trunc)).second) rep.collisions_g++;
  }
  for (size_t b = 0; b < m; b++) {
    rep.bit_freq_h.push_back(static_cast<double>(ones_h[b]) / probes);
    rep.bit_freq_g.push_back(static_cast<double>(ones_g[b]) / probes);
    rep.max_bit_dev_h = std::max(rep.max_bit_dev_h, std::abs(rep.bit_freq_h.back() - 0.5));
    rep.max_bit_dev_g = std::max(rep.max_bit_dev_g, std::abs(rep.bit_freq_g.back() - 0.5));
  }
  // Expected repeats among `probes` draws from 2^trunc values.
  const double space = std::ldexp(1.0, static_cast<int>(trunc));
  const double n = static_cast<double>(probes);
  rep.expected_collisions = n - space * (1.0 - std::pow(1.0 - 1.0 / space, n));
  const double tol = 3.0 * std::sqrt(2.0 * std::max(rep.expected_collisions, 1.0));
  const double diff = std::abs(static_cast<double>(rep.collisions_h) - static_cast<double>(rep.collisions_g));
  rep.ok = rep.max_bit_dev_h <= kPrfBitTolerance && rep.max_bit_dev_g <= kPrfBitTolerance && diff <= tol;
  return rep;
}

}  // namespace cdenlab
