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

// Sparse pure-state simulation over named bit registers.
//
// A basis label packs every register into one unsigned 128-bit integer. The
// first register of the layout occupies the most significant bits and each
// register stores its value MSB-first, so numeric label order is the
// lexicographic order of the concatenated bit strings.

#ifndef CDENLAB_STATEVEC_H_
#define CDENLAB_STATEVEC_H_

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdenlab/f2lin.h"

namespace cdenlab {

class Rng;

using Label = unsigned __int128;
using Amp = std::complex<double>;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr double kPruneThreshold = 1e-12;
inline constexpr size_t kMaxLabelBits = 128;
inline constexpr size_t kMaxRegisterBits = 64;
inline constexpr size_t kMaxHadamardWidth = 12;
inline constexpr size_t kMaxDensityBits = 12;

struct Register {
  std::string name;
  size_t width;
  bool operator==(const Register&) const = default;
};

class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs);

  const std::vector<Register>& registers() const { return regs_; }
  size_t total_width() const { return total_; }
  bool has(const std::string& name) const;
  size_t index_of(const std::string& name) const;
  size_t width(const std::string& name) const;
  /// Bit shift of the register's least significant bit inside a label.
  size_t shift(const std::string& name) const;
  Label mask(const std::string& name) const;

  uint64_t get(Label label, const std::string& name) const;
  Label set(Label label, const std::string& name, uint64_t value) const;

  /// Concatenation of the named registers' values (first name = most
  /// significant), and its inverse placement into a label.
  Label extract(Label label, const std::vector<std::string>& names) const;
  Label embed(Label packed, const std::vector<std::string>& names) const;
  size_t width_of(const std::vector<std::string>& names) const;

  RegisterLayout with(const Register& r) const;
  RegisterLayout without(const std::string& name) const;
  RegisterLayout subset(const std::vector<std::string>& names) const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<Register> regs_;
  std::vector<size_t> shifts_;
  size_t total_ = 0;
};

/// Renders the low `width` bits of `label` as 0/1 characters.
std::string label_bits(Label label, size_t width);

class SparseState {
 public:
  SparseState() = default;
  explicit SparseState(RegisterLayout layout) : layout_(std::move(layout)) {}

  /// A single basis state.
  static SparseState basis(RegisterLayout layout, Label label);

  const RegisterLayout& layout() const { return layout_; }
  const std::map<Label, Amp>& amplitudes() const { return amps_; }
  size_t support_size() const { return amps_.size(); }
  Amp amplitude(Label label) const;

  /// Adds `a` to the amplitude of `label`.
  void add(Label label, Amp a);
  void set(Label label, Amp a);
  /// Drops amplitudes with magnitude below kPruneThreshold.
  void prune();

  double norm_squared() const;
  /// Scales to unit norm. Throws if the norm is zero.
  void normalize();
  bool subnormalized() const { return subnormalized_; }
  void mark_subnormalized(bool s) { subnormalized_ = s; }

  /// One line per term, `label(re,im)` with `|` between registers.
  std::string dump() const;

 private:
  RegisterLayout layout_;
  std::map<Label, Amp> amps_;
  bool subnormalized_ = false;
};

/// ⟨a|b⟩; layouts must agree.
Amp inner(const SparseState& a, const SparseState& b);
/// ‖a − b‖₂.
double l2_distance(const SparseState& a, const SparseState& b);
/// Trace distance of two normalized pure states, √(1 − |⟨a|b⟩|²).
double pure_trace_distance(const SparseState& a, const SparseState& b);

/// Σ_{a∈A (or A\{0})} (−1)^{a·s}|a⟩, normalized, on a single register.
SparseState coset_state(const F2Subspace& A, const F2Vec& s, bool exclude_zero,
                        const std::string& reg = "A");

/// a ⊗ b with a's registers first. Register names must be disjoint.
SparseState tensor(const SparseState& a, const SparseState& b);
/// Appends a zero-initialized register.
SparseState add_register(const SparseState& st, const std::string& name, size_t width);
/// Removes a register that holds one classical value on the whole support;
/// throws otherwise. Returns the state and the value.
std::pair<SparseState, uint64_t> discard_classical_register(const SparseState& st,
                                                            const std::string& name);

using ClassicalFn = std::function<std::vector<uint64_t>(const std::vector<uint64_t>&)>;

/// |x⟩_in|y⟩_out ↦ |x⟩_in|y ⊕ f(x)⟩_out, term by term.
SparseState apply_classical_isometry(const SparseState& st, const std::vector<std::string>& in_regs,
                                     const std::vector<std::string>& out_regs, const ClassicalFn& f);

/// Multiplies each term by (−1)^{s·x_reg}.
SparseState apply_phase(const SparseState& st, const std::string& reg, const F2Vec& s);
/// Multiplies each term by phase(label).
SparseState apply_diagonal(const SparseState& st, const std::function<Amp(Label)>& phase);

/// Walsh–Hadamard on one register, coherently with the rest.
SparseState hadamard(const SparseState& st, const std::string& reg);

struct MeasureResult {
  uint64_t value = 0;
  F2Vec outcome;
  SparseState post;
  double prob = 0;
  bool renormalized_input = false;
};

/// Born probabilities of each value of `reg`, keyed by value.
std::map<uint64_t, double> outcome_distribution(const SparseState& st, const std::string& reg);
/// Inverse-CDF sampling over values in increasing order with one uniform draw.
MeasureResult measure(const SparseState& st, const std::string& reg, Rng& rng);
/// Conditional state given `reg` = value (renormalized); prob returned.
std::pair<SparseState, double> postselect(const SparseState& st, const std::string& reg,
                                          uint64_t value);

struct ProjectResult {
  double accept_prob = 0;
  SparseState post;  // empty layout when accept_prob == 0
};

/// Projects `regs` onto `phi` (whose layout lists exactly those registers).
ProjectResult project_pure(const SparseState& st, const std::vector<std::string>& regs,
                           const SparseState& phi);

/// Keeps terms whose `reg` value lies in A; result is subnormalized.
SparseState apply_coset_projector(const SparseState& st, const std::string& reg, const F2Subspace& A);

/// Projection onto |A_{0,s}⟩ on `reg` via Z_s · H · P_{A⊥} · H · P_A · Z_s.
ProjectResult subspace_pvm(const SparseState& st, const std::string& reg, const F2Subspace& A,
                           const F2Vec& s);

/// Reduced density matrix over `keep_regs` (in that order).
DensityMatrix density(const SparseState& st, const std::vector<std::string>& keep_regs);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2^w) Σ_s density(builder(s), keep_regs) over all s ∈ GF(2)^w.
DensityMatrix ztwirl_mixture(const std::function<SparseState(const F2Vec&)>& builder, size_t w,
                             const std::vector<std::string>& keep_regs);

/// Samples the Hadamard-basis measurement of (|u⟩ + (−1)^c|v⟩)/√2 with u ≠ v:
/// uniform d with d·(u⊕v) = c. When u = v the outcome is uniform over all d.
F2Vec sample_two_term_hadamard(const F2Vec& u, const F2Vec& v, bool c, Rng& rng);

/// Hadamard-basis measurement of every register of a state with at most two
/// support terms, sampled exactly without materializing the output; the
/// outcome covers the whole label (first register first).
F2Vec sample_hadamard_all(const SparseState& st, Rng& rng);

/// The low `width` bits of a label as a vector (coordinate 0 = MSB).
F2Vec label_to_vec(Label label, size_t width);

/// Dense amplitude vector in label order. Requires total width ≤ 20.
Eigen::VectorXcd to_dense(const SparseState& st);
SparseState from_dense(const RegisterLayout& layout, const Eigen::VectorXcd& v);

/// Applies a dense unitary to the joint value of `regs` (first = MSB).
SparseState apply_register_unitary(const SparseState& st, const std::vector<std::string>& regs,
                                   const Eigen::MatrixXcd& U);

}  // namespace cdenlab

#endif  // CDENLAB_STATEVEC_H_
