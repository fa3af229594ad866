#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vcpc/analysis.hpp"
#include "vcpc/energy_model.hpp"
#include "vcpc/solvers.hpp"

namespace vcpc {

/// H(sigma) = -sum_{i<j} J_ij sigma_i sigma_j - sum_i h_i sigma_i, sigma in {-1,+1}^N.
struct IsingInstance {
  struct Coupling {
    VarIndex i = 0;
    VarIndex j = 0;  // i < j
    double weight = 0.0;
  };

  std::size_t n = 0;
  std::vector<Coupling> couplings;  // sorted by (i, j), no duplicates
  std::vector<double> h;            // size n

  std::size_t num_edges() const { return couplings.size(); }

  /// Sorts, validates and merges; throws IndexError / DomainError on bad input.
  static IsingInstance make(std::size_t n, std::vector<Coupling> couplings, std::vector<double> h = {});
};

struct ErSpec {
  std::size_t n = 0;
  double p = 0.5;
};

/// Erdős–Rényi graph with independent +-1 couplings and zero field.
IsingInstance gen_er(const ErSpec& spec, std::uint64_t seed);

/// Ising energy of the spin state sigma = 2 s - 1 encoded by binary `s`.
double ising_energy(const IsingInstance& inst, std::span<const std::uint8_t> s);

/// QUBO with Q_ij = -4 J_ij, b_i = 2 sum_j J_ij - 2 h_i and the constant
/// sum h - sum J, so that binary and Ising energies agree exactly.
EnergyModel ising_to_qubo(const IsingInstance& inst);

/// -(sum_j Q_kj s_j + b_k) for a quadratic model. Throws DomainError on
/// higher-order terms touching k.
double sg_update_drive(const EnergyModel& qubo, std::span<const std::uint8_t> s, VarIndex k);

struct GroundState {
  double energy = 0.0;
  State state;  // binary, s = (sigma + 1) / 2
};

/// Exhaustive Gray-code search over 2^N spin states (N <= 24).
GroundState brute_force_ground(const IsingInstance& inst);

/// The long parallel-tempering run used as a reference for large instances.
PtConfig baseline_pt_config(std::uint64_t seed);

struct SgReference {
  double energy = 0.0;
  Provenance provenance = Provenance::BruteForce;
};

/// Best energy found by PT with `cfg` on the QUBO form of `inst`.
double pt_baseline(const IsingInstance& inst, const PtConfig& cfg);

/// Exact ground energy when N <= 24, long-PT estimate otherwise.
SgReference sg_reference(const IsingInstance& inst, std::uint64_t seed, std::size_t threads = 1);

/// Instance file: `N` header, `i j J` coupling lines, optional `field i h` lines.
void save_ising(std::ostream& out, const IsingInstance& inst);
IsingInstance load_ising(std::istream& in);

}  // namespace vcpc
