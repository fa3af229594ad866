#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace vcpc {

using VarIndex = std::uint32_t;

/// Binary configuration s in {0,1}^N, one byte per variable.
using State = std::vector<std::uint8_t>;

/// One monomial coeff * prod_{v in vars} s_v. An empty `vars` is the constant.
struct Term {
  double coeff = 0.0;
  std::vector<VarIndex> vars;
};

/// Sparse multilinear polynomial over binary variables.
///
/// Terms are normalised on construction: variable tuples are sorted with
/// repeated indices collapsed (s^2 = s), coefficients on identical tuples are
/// merged and exact zeros dropped. Storage is a flat CSR layout plus a
/// variable -> incident-term index, so a local drive touches only the terms
/// that contain the variable. Immutable after construction.
class EnergyModel {
 public:
  EnergyModel() = default;
  explicit EnergyModel(std::size_t num_vars);
  EnergyModel(std::size_t num_vars, std::vector<Term> terms);

  std::size_t num_vars() const { return num_vars_; }
  /// Number of non-constant terms.
  std::size_t num_terms() const { return coeffs_.size(); }
  std::size_t max_order() const { return max_order_; }
  double constant() const { return constant_; }

  double coeff(std::size_t term) const { return coeffs_[term]; }
  std::span<const VarIndex> term_vars(std::size_t term) const {
    return {vars_.data() + offsets_[term], offsets_[term + 1] - offsets_[term]};
  }
  std::size_t term_order(std::size_t term) const { return offsets_[term + 1] - offsets_[term]; }

  /// Ids of the terms containing `v`, ascending.
  std::span<const std::uint32_t> incident_terms(VarIndex v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_offsets_[v + 1] - incidence_offsets_[v]};
  }

  /// All terms, constant first when non-zero.
  std::vector<Term> terms() const;

  /// Same polynomial plus `delta` on the constant.
  EnergyModel shifted(double delta) const;

 private:
  std::size_t num_vars_ = 0;
  std::size_t max_order_ = 0;
  double constant_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VarIndex> vars_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<std::uint32_t> incidence_;
};

/// Accumulates terms for an EnergyModel. Duplicates are merged at build().
class ModelBuilder {
 public:
  explicit ModelBuilder(std::size_t num_vars) : num_vars_(num_vars) {}

  ModelBuilder& add(double coeff, std::vector<VarIndex> vars);
  ModelBuilder& add_constant(double coeff);
  ModelBuilder& add_linear(VarIndex v, double coeff) { return add(coeff, {v}); }
  ModelBuilder& add_pair(VarIndex u, VarIndex v, double coeff) { return add(coeff, {u, v}); }

  std::size_t num_vars() const { return num_vars_; }
  EnergyModel build() &&;
  EnergyModel build() const&;

 private:
  std::size_t num_vars_;
  std::vector<Term> terms_;
};

enum class VarStatus : std::uint8_t { Free, ClampedZero, ClampedOne };

/// Per-variable clamp status. Clamped variables never change during sampling.
class ClampMask {
 public:
  ClampMask() = default;
  explicit ClampMask(std::size_t num_vars) : status_(num_vars, VarStatus::Free) {}

  std::size_t size() const { return status_.size(); }
  VarStatus operator[](std::size_t v) const { return status_[v]; }
  void set(std::size_t v, VarStatus s) { status_[v] = s; }
  bool is_free(std::size_t v) const { return status_[v] == VarStatus::Free; }
  std::size_t num_free() const;

  /// Writes the clamped values into `s`.
  void apply(State& s) const;

 private:
  std::vector<VarStatus> status_;
};

/// sum over terms of coeff * prod s_v. Throws DimensionError on length mismatch.
double eval_energy(const EnergyModel& model, std::span<const std::uint8_t> s);

/// Update drive E(s | s_k = 0) - E(s | s_k = 1), from the terms incident on k only.
double update_drive(const EnergyModel& model, std::span<const std::uint8_t> s, VarIndex k);

/// Logistic function, evaluated without overflow for large |x|.
double logistic(double x);

/// Gibbs p-bit rule: returns 1 iff u < logistic(beta * drive).
inline std::uint8_t pbit_update(double drive, double beta, double u) {
  return u < logistic(beta * drive) ? 1 : 0;
}

/// Largest N accepted by exact enumeration.
inline constexpr std::size_t kMaxEnumerationVars = 24;

/// Boltzmann probabilities exp(-beta E(s)) / Z for every s; state index bit v is s_v.
std::vector<double> exact_boltzmann(const EnergyModel& model, double beta);

/// Decodes an enumeration index into a state (bit v of `index` is s_v).
State state_from_index(std::uint64_t index, std::size_t num_vars);

/// Plain-text model format: `hubo <N>` header, then `coeff v1 ... vk` per term.
void save_hubo(std::ostream& out, const EnergyModel& model);
EnergyModel load_hubo(std::istream& in);

}  // namespace vcpc
