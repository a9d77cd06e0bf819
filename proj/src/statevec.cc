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

#include "cdenlab/statevec.h"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cdenlab/rng.h"

namespace cdenlab {

namespace {

Label low_mask(size_t w) { return w >= 128 ? ~Label{0} : ((Label{1} << w) - 1); }

void check_same_layout(const SparseState& a, const SparseState& b) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("state layouts differ");
}

}  // namespace

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (r.width == 0 || r.width > kMaxRegisterBits) {
      throw std::invalid_argument("register '" + r.name + "' has width outside [1, 64]");
    }
    if (!seen.insert(r.name).second) throw std::invalid_argument("duplicate register '" + r.name + "'");
    total_ += r.width;
  }
  if (total_ > kMaxLabelBits) throw std::invalid_argument("layout wider than 128 bits");
  size_t used = 0;
  for (const auto& r : regs_) {
    used += r.width;
    shifts_.push_back(total_ - used);
  }
}

bool RegisterLayout::has(const std::string& name) const {
  for (const auto& r : regs_) {
    if (r.name == name) return true;
  }
  return false;
}

size_t RegisterLayout::index_of(const std::string& name) const {
  for (size_t i = 0; i < regs_.size(); i++) {
    if (regs_[i].name == name) return i;
  }
  throw std::invalid_argument("no register named '" + name + "'");
}

size_t RegisterLayout::width(const std::string& name) const { return regs_[index_of(name)].width; }
size_t RegisterLayout::shift(const std::string& name) const { return shifts_[index_of(name)]; }

Label RegisterLayout::mask(const std::string& name) const {
  const size_t i = index_of(name);
  return low_mask(regs_[i].width) << shifts_[i];
}

uint64_t RegisterLayout::get(Label label, const std::string& name) const {
  const size_t i = index_of(name);
  return static_cast<uint64_t>((label >> shifts_[i]) & low_mask(regs_[i].width));
}

Label RegisterLayout::set(Label label, const std::string& name, uint64_t value) const {
  const size_t i = index_of(name);
  const Label m = low_mask(regs_[i].width);
  if (Label{value} > m) throw std::invalid_argument("value too wide for register '" + name + "'");
  return (label & ~(m << shifts_[i])) | (Label{value} << shifts_[i]);
}

size_t RegisterLayout::width_of(const std::vector<std::string>& names) const {
  size_t w = 0;
  for (const auto& n : names) w += width(n);
  return w;
}

Label RegisterLayout::extract(Label label, const std::vector<std::string>& names) const {
  Label out = 0;
  for (const auto& n : names) {
    const size_t i = index_of(n);
    out = (out << regs_[i].width) | ((label >> shifts_[i]) & low_mask(regs_[i].width));
  }
  return out;
}

Label RegisterLayout::embed(Label packed, const std::vector<std::string>& names) const {
  Label out = 0;
  for (size_t k = names.size(); k-- > 0;) {
    const size_t i = index_of(names[k]);
    out |= (packed & low_mask(regs_[i].width)) << shifts_[i];
    packed >>= regs_[i].width;
  }
  return out;
}

RegisterLayout RegisterLayout::with(const Register& r) const {
  auto regs = regs_;
  regs.push_back(r);
  return RegisterLayout(regs);
}

RegisterLayout RegisterLayout::without(const std::string& name) const {
  std::vector<Register> regs;
  index_of(name);
  for (const auto& r : regs_) {
    if (r.name != name) regs.push_back(r);
  }
  return RegisterLayout(regs);
}

RegisterLayout RegisterLayout::subset(const std::vector<std::string>& names) const {
  std::vector<Register> regs;
  for (const auto& n : names) regs.push_back(regs_[index_of(n)]);
  return RegisterLayout(regs);
}

std::string label_bits(Label label, size_t width) {
  std::string s(width, '0');
  for (size_t i = 0; i < width; i++) {
    if ((label >> (width - 1 - i)) & 1) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// SparseState

SparseState SparseState::basis(RegisterLayout layout, Label label) {
  SparseState st(std::move(layout));
  st.set(label, 1.0);
  return st;
}

Amp SparseState::amplitude(Label label) const {
  auto it = amps_.find(label);
  return it == amps_.end() ? Amp{0} : it->second;
}

void SparseState::add(Label label, Amp a) { amps_[label] += a; }
void SparseState::set(Label label, Amp a) { amps_[label] = a; }

void SparseState::prune() {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < kPruneThreshold) {
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
}

double SparseState::norm_squared() const {
  double n = 0;
  for (const auto& [l, a] : amps_) n += std::norm(a);
  return n;
}

void SparseState::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0) throw std::domain_error("cannot normalize a zero state");
  for (auto& [l, a] : amps_) a /= n;
  subnormalized_ = false;
}

std::string SparseState::dump() const {
  std::ostringstream out;
  char buf[80];
  for (const auto& [label, a] : amps_) {
    bool first = true;
    for (const auto& r : layout_.registers()) {
      if (!first) out << '|';
      first = false;
      out << label_bits(layout_.get(label, r.name), r.width);
    }
    std::snprintf(buf, sizeof(buf), "(%.12f,%.12f)\n", a.real() + 0.0, a.imag() + 0.0);
    out << buf;
  }
  return out.str();
}

Amp inner(const SparseState& a, const SparseState& b) {
  check_same_layout(a, b);
  Amp acc = 0;
  const auto& small = a.support_size() <= b.support_size() ? a : b;
  const auto& large = &small == &a ? b : a;
  for (const auto& [l, amp] : small.amplitudes()) {
    const Amp other = large.amplitude(l);
    acc += &small == &a ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return acc;
}

double l2_distance(const SparseState& a, const SparseState& b) {
  check_same_layout(a, b);
  std::map<Label, Amp> diff = a.amplitudes();
  for (const auto& [l, amp] : b.amplitudes()) diff[l] -= amp;
  double s = 0;
  for (const auto& [l, amp] : diff) s += std::norm(amp);
  return std::sqrt(s);
}

double pure_trace_distance(const SparseState& a, const SparseState& b) {
  // 1 − |⟨a|b⟩|² = (‖a − c·b‖² / 2)(1 + |⟨a|b⟩|) with c the phase aligning b to
  // a; the squared difference does not cancel catastrophically near TD = 0.
  const Amp ov = inner(a, b);
  const double m = std::abs(ov);
  const Amp c = m > 0 ? std::conj(ov) / m : Amp(1.0);
  SparseState bc(b.layout());
  for (const auto& [l, amp] : b.amplitudes()) bc.set(l, c * amp);
  const double d = l2_distance(a, bc);
  return std::sqrt(std::max(0.0, 0.5 * d * d * (1 + m)));
}

// ---------------------------------------------------------------------------
// Preparation and register plumbing

SparseState coset_state(const F2Subspace& A, const F2Vec& s, bool exclude_zero, const std::string& reg) {
  const size_t n = A.ambient_dim();
  if (s.size() != n) throw std::invalid_argument("coset_state: |s| != ambient dimension");
  if (A.dim() > 16) throw std::invalid_argument("coset_state: dim(A) > 16");
  if (exclude_zero && A.dim() == 0) throw std::invalid_argument("coset_state: A\\{0} is empty");
  SparseState st(RegisterLayout({{reg, n}}));
  const auto elems = A.enumerate();
  const double count = static_cast<double>(elems.size() - (exclude_zero ? 1 : 0));
  const double amp = 1.0 / std::sqrt(count);
  for (const auto& a : elems) {
    if (exclude_zero && a.is_zero()) continue;
    st.set(a.to_uint(), a.dot(s) ? -amp : amp);
  }
  return st;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  std::vector<Register> regs = a.layout().registers();
  for (const auto& r : b.layout().registers()) regs.push_back(r);
  SparseState out{RegisterLayout(regs)};
  const size_t wb = b.layout().total_width();
  for (const auto& [la, xa] : a.amplitudes()) {
    for (const auto& [lb, xb] : b.amplitudes()) out.set((la << wb) | lb, xa * xb);
  }
  out.prune();
  return out;
}

SparseState add_register(const SparseState& st, const std::string& name, size_t width) {
  SparseState out{st.layout().with({name, width})};
  for (const auto& [l, a] : st.amplitudes()) out.set(l << width, a);
  out.mark_subnormalized(st.subnormalized());
  return out;
}

std::pair<SparseState, uint64_t> discard_classical_register(const SparseState& st, const std::string& name) {
  const auto& lay = st.layout();
  RegisterLayout rest = lay.without(name);
  std::vector<std::string> rest_names;
  for (const auto& r : rest.registers()) rest_names.push_back(r.name);
  SparseState out{rest};
  bool have = false;
  uint64_t value = 0;
  for (const auto& [l, a] : st.amplitudes()) {
    const uint64_t v = lay.get(l, name);
    if (have && v != value) {
      throw std::invalid_argument("discard_classical_register: '" + name + "' is not classical");
    }
    have = true;
    value = v;
    out.set(lay.extract(l, rest_names), a);
  }
  out.mark_subnormalized(st.subnormalized());
  return {out, value};
}

// ---------------------------------------------------------------------------
// Unitaries

SparseState apply_classical_isometry(const SparseState& st, const std::vector<std::string>& in_regs,
                                     const std::vector<std::string>& out_regs, const ClassicalFn& f) {
  const auto& lay = st.layout();
  for (const auto& o : out_regs) {
    for (const auto& i : in_regs) {
      if (o == i) throw std::invalid_argument("apply_classical_isometry: register both input and output");
    }
  }
  SparseState out{lay};
  std::vector<uint64_t> in(in_regs.size());
  for (const auto& [l, a] : st.amplitudes()) {
    for (size_t k = 0; k < in_regs.size(); k++) in[k] = lay.get(l, in_regs[k]);
    const auto y = f(in);
    if (y.size() != out_regs.size()) throw std::invalid_argument("apply_classical_isometry: output arity");
    Label nl = l;
    for (size_t k = 0; k < out_regs.size(); k++) {
      const size_t w = lay.width(out_regs[k]);
      if (w < 64 && (y[k] >> w) != 0) {
        throw std::invalid_argument("apply_classical_isometry: value wider than '" + out_regs[k] + "'");
      }
      nl = lay.set(nl, out_regs[k], lay.get(nl, out_regs[k]) ^ y[k]);
    }
    out.add(nl, a);
  }
  out.mark_subnormalized(st.subnormalized());
  return out;
}

SparseState apply_phase(const SparseState& st, const std::string& reg, const F2Vec& s) {
  const auto& lay = st.layout();
  if (s.size() != lay.width(reg)) throw std::invalid_argument("apply_phase: width mismatch");
  const uint64_t sv = s.to_uint();
  return apply_diagonal(st, [&](Label l) {
    return (std::popcount(lay.get(l, reg) & sv) & 1) ? Amp{-1} : Amp{1};
  });
}

SparseState apply_diagonal(const SparseState& st, const std::function<Amp(Label)>& phase) {
  SparseState out{st.layout()};
  for (const auto& [l, a] : st.amplitudes()) out.set(l, a * phase(l));
  out.prune();
  out.mark_subnormalized(st.subnormalized());
  return out;
}

namespace {

void fwht(std::vector<Amp>& v) {
  for (size_t h = 1; h < v.size(); h <<= 1) {
    for (size_t i = 0; i < v.size(); i += h << 1) {
      for (size_t j = i; j < i + h; j++) {
        const Amp x = v[j], y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

}  // namespace

SparseState hadamard(const SparseState& st, const std::string& reg) {
  const auto& lay = st.layout();
  const size_t w = lay.width(reg);
  if (w > kMaxHadamardWidth) throw std::invalid_argument("hadamard: register wider than 12 bits");
  const Label m = lay.mask(reg);
  const size_t sh = lay.shift(reg);
  std::map<Label, std::vector<Amp>> groups;
  for (const auto& [l, a] : st.amplitudes()) {
    auto& g = groups[l & ~m];
    if (g.empty()) g.assign(size_t{1} << w, Amp{0});
    g[static_cast<size_t>((l & m) >> sh)] += a;
  }
  const double scale = std::pow(2.0, -0.5 * static_cast<double>(w));
  SparseState out{lay};
  for (auto& [rest, g] : groups) {
    fwht(g);
    for (size_t d = 0; d < g.size(); d++) {
      const Amp a = g[d] * scale;
      if (std::abs(a) >= kPruneThreshold) out.set(rest | (Label{d} << sh), a);
    }
  }
  out.mark_subnormalized(st.subnormalized());
  return out;
}

SparseState apply_register_unitary(const SparseState& st, const std::vector<std::string>& regs,
                                   const Eigen::MatrixXcd& U) {
  const auto& lay = st.layout();
  const size_t w = lay.width_of(regs);
  const size_t dim = size_t{1} << w;
  if (w > 16 || static_cast<size_t>(U.rows()) != dim || static_cast<size_t>(U.cols()) != dim) {
    throw std::invalid_argument("apply_register_unitary: matrix size does not match registers");
  }
  Label m = 0;
  for (const auto& r : regs) m |= lay.mask(r);
  std::map<Label, Eigen::VectorXcd> groups;
  for (const auto& [l, a] : st.amplitudes()) {
    auto it = groups.find(l & ~m);
    if (it == groups.end()) it = groups.emplace(l & ~m, Eigen::VectorXcd::Zero(dim)).first;
    it->second(static_cast<Eigen::Index>(lay.extract(l, regs))) += a;
  }
  SparseState out{lay};
  for (const auto& [rest, v] : groups) {
    const Eigen::VectorXcd r = U * v;
    for (size_t k = 0; k < dim; k++) {
      const Amp a = r(static_cast<Eigen::Index>(k));
      if (std::abs(a) >= kPruneThreshold) out.set(rest | lay.embed(k, regs), a);
    }
  }
  out.mark_subnormalized(st.subnormalized());
  return out;
}

// ---------------------------------------------------------------------------
// Measurement and projection

std::map<uint64_t, double> outcome_distribution(const SparseState& st, const std::string& reg) {
  const auto& lay = st.layout();
  std::map<uint64_t, double> dist;
  for (const auto& [l, a] : st.amplitudes()) dist[lay.get(l, reg)] += std::norm(a);
  const double total = st.norm_squared();
  if (total > 0) {
    for (auto& [v, p] : dist) p /= total;
  }
  return dist;
}

std::pair<SparseState, double> postselect(const SparseState& st, const std::string& reg, uint64_t value) {
  const auto& lay = st.layout();
  SparseState out{lay};
  for (const auto& [l, a] : st.amplitudes()) {
    if (lay.get(l, reg) == value) out.set(l, a);
  }
  const double total = st.norm_squared();
  const double p = total > 0 ? out.norm_squared() / total : 0.0;
  if (p > 0) out.normalize();
  return {out, p};
}

MeasureResult measure(const SparseState& st, const std::string& reg, Rng& rng) {
  MeasureResult res;
  res.renormalized_input = st.subnormalized() || std::abs(st.norm_squared() - 1.0) > 1e-9;
  const auto dist = outcome_distribution(st, reg);
  if (dist.empty()) throw std::domain_error("measure: empty state");
  const double u = rng.uniform01();
  double acc = 0;
  uint64_t chosen = dist.rbegin()->first;
  for (const auto& [v, p] : dist) {
    acc += p;
    if (u < acc) {
      chosen = v;
      break;
    }
  }
  auto [post, p] = postselect(st, reg, chosen);
  res.value = chosen;
  res.outcome = F2Vec::from_uint(chosen, st.layout().width(reg));
  res.post = std::move(post);
  res.prob = p;
  return res;
}

ProjectResult project_pure(const SparseState& st, const std::vector<std::string>& regs, const SparseState& phi) {
  const auto& lay = st.layout();
  if (!(phi.layout() == lay.subset(regs))) throw std::invalid_argument("project_pure: phi layout mismatch");
  Label m = 0;
  for (const auto& r : regs) m |= lay.mask(r);
  // c_rest = Σ_x conj(phi_x) st(x, rest)
  std::map<Label, Amp> c;
  for (const auto& [l, a] : st.amplitudes()) {
    const Amp p = phi.amplitude(lay.extract(l, regs));
    if (p != Amp{0}) c[l & ~m] += std::conj(p) * a;
  }
  double acc = 0;
  for (const auto& [r, v] : c) acc += std::norm(v);
  const double total = st.norm_squared();
  ProjectResult res;
  res.accept_prob = total > 0 ? acc / total : 0.0;
  res.post = SparseState(lay);
  if (acc <= 0) return res;
  for (const auto& [rest, v] : c) {
    for (const auto& [x, px] : phi.amplitudes()) res.post.add(rest | lay.embed(x, regs), v * px);
  }
  res.post.prune();
  res.post.normalize();
  return res;
}

SparseState apply_coset_projector(const SparseState& st, const std::string& reg, const F2Subspace& A) {
  const auto& lay = st.layout();
  if (A.ambient_dim() != lay.width(reg)) throw std::invalid_argument("apply_coset_projector: width mismatch");
  SparseState out{lay};
  for (const auto& [l, a] : st.amplitudes()) {
    if (A.contains_uint(lay.get(l, reg))) out.set(l, a);
  }
  out.mark_subnormalized(true);
  return out;
}

ProjectResult subspace_pvm(const SparseState& st, const std::string& reg, const F2Subspace& A, const F2Vec& s) {
  if (A.ambient_dim() > kMaxHadamardWidth) throw std::invalid_argument("subspace_pvm: width cap");
  SparseState t = apply_phase(st, reg, s);
  t = apply_coset_projector(t, reg, A);
  t = hadamard(t, reg);
  t = apply_coset_projector(t, reg, A.dual());
  t = hadamard(t, reg);
  t = apply_phase(t, reg, s);
  const double total = st.norm_squared();
  ProjectResult res;
  res.accept_prob = total > 0 ? t.norm_squared() / total : 0.0;
  if (res.accept_prob > 1e-15) {
    t.normalize();
    res.post = std::move(t);
  } else {
    res.accept_prob = std::max(0.0, res.accept_prob);
    res.post = SparseState(st.layout());
  }
  return res;
}

// ---------------------------------------------------------------------------
// Density matrices

DensityMatrix density(const SparseState& st, const std::vector<std::string>& keep_regs) {
  const auto& lay = st.layout();
  const size_t w = lay.width_of(keep_regs);
  if (w > kMaxDensityBits) throw std::invalid_argument("density: kept registers exceed 12 bits");
  const auto dim = static_cast<Eigen::Index>(size_t{1} << w);
  Label m = 0;
  for (const auto& r : keep_regs) m |= lay.mask(r);
  std::map<Label, std::vector<std::pair<Eigen::Index, Amp>>> groups;
  for (const auto& [l, a] : st.amplitudes()) {
    groups[l & ~m].emplace_back(static_cast<Eigen::Index>(lay.extract(l, keep_regs)), a);
  }
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (const auto& [rest, terms] : groups) {
    for (const auto& [i, ai] : terms) {
      for (const auto& [j, aj] : terms) rho(i, j) += ai * std::conj(aj);
    }
  }
  const double tr = rho.trace().real();
  if (tr > 0) rho /= tr;
  return rho;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const DensityMatrix d = rho - sigma;
  const DensityMatrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix ztwirl_mixture(const std::function<SparseState(const F2Vec&)>& builder, size_t w,
                             const std::vector<std::string>& keep_regs) {
  if (w > 8) throw std::invalid_argument("ztwirl_mixture: domain exceeds 2^8");
  DensityMatrix acc;
  const uint64_t count = uint64_t{1} << w;
  for (uint64_t v = 0; v < count; v++) {
    const DensityMatrix r = density(builder(F2Vec::from_uint(v, w)), keep_regs);
    if (v == 0) {
      acc = r;
    } else {
      acc += r;
    }
  }
  return acc / static_cast<double>(count);
}

F2Vec sample_two_term_hadamard(const F2Vec& u, const F2Vec& v, bool c, Rng& rng) {
  const F2Vec delta = u ^ v;
  F2Vec d = F2Vec::random(u.size(), rng);
  if (delta.is_zero()) return d;
  // Fix the first coordinate where delta is 1 so that d·delta = c.
  size_t pivot = 0;
  while (!delta.get(pivot)) pivot++;
  if (d.dot(delta) != c) d.flip(pivot);
  return d;
}

F2Vec label_to_vec(Label label, size_t width) {
  F2Vec v(width);
  for (size_t i = 0; i < width; i++) v.set(i, (label >> (width - 1 - i)) & 1);
  return v;
}

F2Vec sample_hadamard_all(const SparseState& st, Rng& rng) {
  const size_t n = st.layout().total_width();
  const auto& amps = st.amplitudes();
  if (amps.empty()) throw std::domain_error("sample_hadamard_all: empty state");
  if (amps.size() == 1) return F2Vec::random(n, rng);
  if (amps.size() > 2) throw std::invalid_argument("sample_hadamard_all: more than two support terms");
  auto it = amps.begin();
  const auto [lu, alpha] = *it++;
  const auto [lv, beta] = *it;
  // Outcome d has amplitude ∝ (−1)^{d·u}(α + β(−1)^{d·(u⊕v)}); the parity
  // e = d·(u⊕v) is 0 with probability |α+β|² / (2(|α|²+|β|²)).
  const double p0 = std::norm(alpha + beta) / (2.0 * (std::norm(alpha) + std::norm(beta)));
  const bool e = rng.uniform01() >= p0;
  return sample_two_term_hadamard(label_to_vec(lu, n), label_to_vec(lv, n), e, rng);
}

Eigen::VectorXcd to_dense(const SparseState& st) {
  const size_t w = st.layout().total_width();
  if (w > 20) throw std::invalid_argument("to_dense: more than 20 bits");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size_t{1} << w));
  for (const auto& [l, a] : st.amplitudes()) v(static_cast<Eigen::Index>(l)) = a;
  return v;
}

SparseState from_dense(const RegisterLayout& layout, const Eigen::VectorXcd& v) {
  if (static_cast<size_t>(v.size()) != (size_t{1} << layout.total_width())) {
    throw std::invalid_argument("from_dense: vector length does not match layout");
  }
  SparseState st(layout);
  for (Eigen::Index i = 0; i < v.size(); i++) {
    if (std::abs(v(i)) >= kPruneThreshold) st.set(static_cast<Label>(i), v(i));
  }
  return st;
}

}  // namespace cdenlab
