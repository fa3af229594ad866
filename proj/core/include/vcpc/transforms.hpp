#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vcpc/energy_model.hpp"
#include "vcpc/spinglass.hpp"

namespace vcpc {

// ---- Quadratisation -------------------------------------------------------

struct QuadratisationResult {
  EnergyModel model;              // max_order <= 2
  std::size_t num_original = 0;   // variables [0, num_original) are the originals
  std::vector<std::pair<VarIndex, VarIndex>> aux_pairs;  // aux num_original + i stands for a * b
  std::vector<double> strengths;  // penalty strength per aux

  std::size_t aux_count() const { return aux_pairs.size(); }
};

/// Rosenberg penalty a b - 2 a y - 2 b y + 3 y (unscaled); 0 iff y = a b, else >= 1.
double rosenberg_penalty(std::uint8_t a, std::uint8_t b, std::uint8_t y);

/// Reduces every term of order k > 2 by left-folding its sorted tuple into
/// k - 2 auxiliary products. A product pair is created once and reused by
/// every term that needs it. Each aux y gets the strength
/// 1 + 2 * sum |coeff| over the other terms containing y, which guarantees
/// that every extended minimum is consistent.
QuadratisationResult quadratise(const EnergyModel& model);

/// Same reduction with one user-chosen strength for every aux. Throws
/// DomainError when strength <= 0.
QuadratisationResult quadratise(const EnergyModel& model, double strength);

/// Extends an original state with consistent aux products.
State extend_state(const QuadratisationResult& q, std::span<const std::uint8_t> original);

/// Drops the aux variables.
State project_state(const QuadratisationResult& q, std::span<const std::uint8_t> extended);

// ---- Sparsification -------------------------------------------------------

/// Ising form of a quadratic binary model (exact up to the returned offset):
/// E_binary(s) = H(2 s - 1) + offset.
struct IsingForm {
  IsingInstance ising;
  double offset = 0.0;
};

IsingForm qubo_to_ising(const EnergyModel& qubo);

struct SparsifiedGraph {
  IsingInstance physical;
  std::vector<std::vector<VarIndex>> chains;  // logical -> physical copies, in chain order
  double lambda = 0.0;
  std::size_t budget = 0;

  std::size_t num_physical() const { return physical.n; }
};

/// Number of chain copies for a node of degree d under budget k.
std::size_t copies_needed(std::size_t degree, std::size_t k);

/// lambda = 2 * max|J| * (k - 1).
double default_lambda(const IsingInstance& g, std::size_t k);

/// 1 + the largest weighted degree sum_j |J_ij| + |h_i|.
double safe_lambda(const IsingInstance& g);

/// Splits every node of degree d > k into a chain of copies joined by
/// ferromagnetic links of weight lambda. Endpoint copies hold k - 1 original
/// edges, interior copies k - 2; edges are dealt to copies round-robin in
/// edge order. Fields sit on the first copy. Throws DomainError when k < 3
/// or lambda <= 0.
SparsifiedGraph sparsify(const IsingInstance& g, std::size_t k, std::optional<double> lambda = std::nullopt);

/// Logical state read from the first copy of each chain.
State logical_state(const SparsifiedGraph& sg, std::span<const std::uint8_t> physical);

/// True when every copy of every chain agrees.
bool chains_consistent(const SparsifiedGraph& sg, std::span<const std::uint8_t> physical);

std::size_t max_degree(const IsingInstance& g);

/// |E| over ordered pairs, i.e. 2|E| / (V (V - 1)).
double graph_density(const IsingInstance& g);

struct GrowthMetrics {
  double r_n = 1.0;  // |V(G_S)| / |V(G)|
  double r_s = 1.0;  // Delta(G) / Delta(G_S)
  double m_original = 0.0;
  double m_new = 0.0;
};

GrowthMetrics growth_metrics(const IsingInstance& original, const IsingInstance& transformed);

struct SparsifyPoint {
  std::size_t budget = 0;
  std::size_t physical_nodes = 0;
  double r_n = 1.0;
  double r_s = 1.0;
};

/// One sparsification per budget, lambda at its default.
std::vector<SparsifyPoint> sparsify_sweep(const IsingInstance& g, std::span<const std::size_t> budgets);

}  // namespace vcpc
