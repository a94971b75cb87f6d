#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rda {

// Survival signature of a coherent system with L component types and n_i
// components of type i: phi(l_1, ..., l_L) is the probability the system
// works given exactly l_i working components of type i. Values are stored on
// the full lattice prod [0..n_i], flattened in mixed-radix order with type L
// fastest. Immutable after construction; construction validates coherence
// (componentwise monotone, phi in [0,1], boundary values for nontrivial
// systems).
class SystemStructure {
 public:
  // Full table: entries are (level vector, value) pairs covering the lattice.
  static SystemStructure from_table(
      std::span<const int> n,
      std::span<const std::pair<std::vector<int>, double>> entries);

  // phi(l) = 1  iff  sum l_i >= k.
  static SystemStructure k_out_of_n(int k, std::span<const int> n);

  // Series connection of L parallel subsystems: phi(l) = 1 iff every l_i >= 1.
  static SystemStructure series_parallel(std::span<const int> n);

  // Exact signature by state enumeration from minimal path sets over
  // individually indexed components (0-based). `type_of_component[c]` gives
  // the 0-based type of component c; total component count is capped.
  static SystemStructure from_paths(
      std::span<const int> n, std::span<const int> type_of_component,
      std::span<const std::vector<int>> minimal_path_sets,
      int enumeration_cap = 24);

  int types() const { return (int)n_.size(); }
  const std::vector<int>& counts() const { return n_; }
  int total_components() const;

  double phi(std::span<const int> levels) const;
  double phi_at(std::size_t flat_index) const { return phi_[flat_index]; }
  std::size_t lattice_size() const { return phi_.size(); }

  std::size_t flatten(std::span<const int> levels) const;
  std::vector<int> unflatten(std::size_t index) const;

  bool is_series_parallel() const;

 private:
  SystemStructure(std::vector<int> n, std::vector<double> phi);
  void validate() const;

  std::vector<int> n_;
  std::vector<double> phi_;
};

}  // namespace rda
