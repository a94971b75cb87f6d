#include "redundalloc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "redundalloc/errors.hpp"

namespace rda {

namespace {

constexpr std::size_t kMaxLattice = 100000;

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (std::uint64_t)(n - i) / (i + 1);
  return r;
}

std::size_t lattice_size_of(std::span<const int> n) {
  std::size_t s = 1;
  for (int ni : n) {
    require(ni >= 1, errc::bad_parameter, "every n_i must be >= 1");
    s *= (std::size_t)(ni + 1);
    require(s <= kMaxLattice, errc::too_large,
            "signature lattice exceeds the supported size");
  }
  return s;
}

}  // namespace

SystemStructure::SystemStructure(std::vector<int> n, std::vector<double> phi)
    : n_(std::move(n)), phi_(std::move(phi)) {
  validate();
}

int SystemStructure::total_components() const {
  return std::accumulate(n_.begin(), n_.end(), 0);
}

std::size_t SystemStructure::flatten(std::span<const int> levels) const {
  require(levels.size() == n_.size(), errc::mismatched_sizes,
          "level vector length must equal the number of types");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    require(levels[i] >= 0 && levels[i] <= n_[i], errc::out_of_range,
            "level outside [0, n_i]");
    idx = idx * (n_[i] + 1) + levels[i];
  }
  return idx;
}

std::vector<int> SystemStructure::unflatten(std::size_t index) const {
  std::vector<int> levels(n_.size());
  for (std::size_t i = n_.size(); i-- > 0;) {
    levels[i] = (int)(index % (n_[i] + 1));
    index /= (n_[i] + 1);
  }
  return levels;
}

double SystemStructure::phi(std::span<const int> levels) const {
  return phi_[flatten(levels)];
}

void SystemStructure::validate() const {
  require(!n_.empty(), errc::bad_parameter, "need at least one type");
  require(phi_.size() == lattice_size_of(n_), errc::missing_entry,
          "signature table does not cover the lattice");
  for (double v : phi_)
    require(v >= 0.0 && v <= 1.0, errc::out_of_range,
            "signature value outside [0, 1]");
  require(phi_.front() == 0.0, errc::non_monotone,
          "phi(0,...,0) must be 0 for a nontrivial system");
  require(phi_.back() == 1.0, errc::non_monotone,
          "phi(n_1,...,n_L) must be 1 for a nontrivial system");
  // Componentwise monotonicity: compare each lattice point with its +e_i
  // neighbours.
  std::vector<int> levels(n_.size(), 0);
  for (std::size_t idx = 0; idx < phi_.size(); ++idx) {
    std::size_t stride = 1;
    for (std::size_t i = n_.size(); i-- > 0;) {
      if (levels[i] < n_[i])
        require(phi_[idx] <= phi_[idx + stride] + 1e-15, errc::non_monotone,
                "signature not nondecreasing in type " + std::to_string(i + 1));
      stride *= (n_[i] + 1);
    }
    for (std::size_t i = n_.size(); i-- > 0;) {
      if (++levels[i] <= n_[i]) break;
      levels[i] = 0;
    }
  }
}

SystemStructure SystemStructure::from_table(
    std::span<const int> n,
    std::span<const std::pair<std::vector<int>, double>> entries) {
  const std::size_t size = lattice_size_of(n);
  std::vector<double> phi(size, -1.0);
  auto flatten = [&](std::span<const int> levels) {
    require(levels.size() == n.size(), errc::mismatched_sizes,
            "table entry arity mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      require(levels[i] >= 0 && levels[i] <= n[i], errc::out_of_range,
              "table level outside [0, n_i]");
      idx = idx * (n[i] + 1) + levels[i];
    }
    return idx;
  };
  for (const auto& [levels, value] : entries) {
    require(value >= 0.0 && value <= 1.0, errc::out_of_range,
            "table value outside [0, 1]");
    phi[flatten(levels)] = value;
  }
  for (std::size_t i = 0; i < phi.size(); ++i)
    require(phi[i] >= 0.0, errc::missing_entry,
            "lattice point missing from the table");
  return SystemStructure(std::vector<int>(n.begin(), n.end()),
                         std::move(phi));
}

SystemStructure SystemStructure::k_out_of_n(int k, std::span<const int> n) {
  const std::size_t size = lattice_size_of(n);
  const int total = std::accumulate(n.begin(), n.end(), 0);
  require(k >= 1 && k <= total, errc::invalid_k,
          "k must lie in [1, sum n_i]");
  std::vector<double> phi(size, 0.0);
  std::vector<int> levels(n.size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const int alive = std::accumulate(levels.begin(), levels.end(), 0);
    phi[idx] = alive >= k ? 1.0 : 0.0;
    for (std::size_t i = n.size(); i-- > 0;) {
      if (++levels[i] <= n[i]) break;
      levels[i] = 0;
    }
  }
  return SystemStructure(std::vector<int>(n.begin(), n.end()),
                         std::move(phi));
}

SystemStructure SystemStructure::series_parallel(std::span<const int> n) {
  const std::size_t size = lattice_size_of(n);
  std::vector<double> phi(size, 0.0);
  std::vector<int> levels(n.size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    phi[idx] =
        std::all_of(levels.begin(), levels.end(), [](int l) { return l >= 1; })
            ? 1.0
            : 0.0;
    for (std::size_t i = n.size(); i-- > 0;) {
      if (++levels[i] <= n[i]) break;
      levels[i] = 0;
    }
  }
  return SystemStructure(std::vector<int>(n.begin(), n.end()),
                         std::move(phi));
}

SystemStructure SystemStructure::from_paths(
    std::span<const int> n, std::span<const int> type_of_component,
    std::span<const std::vector<int>> minimal_path_sets, int enumeration_cap) {
  const std::size_t size = lattice_size_of(n);
  const int total = std::accumulate(n.begin(), n.end(), 0);
  require(total <= enumeration_cap, errc::too_large,
          "component count exceeds the enumeration cap");
  require((int)type_of_component.size() == total, errc::mismatched_sizes,
          "type_of_component must list every component");
  std::vector<int> per_type(n.size(), 0);
  for (int t : type_of_component) {
    require(t >= 0 && t < (int)n.size(), errc::bad_index,
            "component type index out of range");
    ++per_type[t];
  }
  for (std::size_t i = 0; i < n.size(); ++i)
    require(per_type[i] == n[i], errc::mismatched_sizes,
            "per-type component counts disagree with n");
  require(!minimal_path_sets.empty(), errc::bad_index,
          "need at least one path set");
  std::vector<std::uint32_t> masks;
  for (const auto& path : minimal_path_sets) {
    require(!path.empty(), errc::bad_index, "empty path set");
    std::uint32_t m = 0;
    for (int c : path) {
      require(c >= 0 && c < total, errc::bad_index,
              "path component index out of range");
      m |= (1u << c);
    }
    masks.push_back(m);
  }

  // Exact integer counting: working[l] counts working states with level
  // vector l; phi = working / prod C(n_i, l_i).
  std::vector<std::uint64_t> working(size, 0);
  const std::uint32_t nstates = 1u << total;
  std::vector<int> levels(n.size());
  for (std::uint32_t state = 0; state < nstates; ++state) {
    bool up = false;
    for (std::uint32_t m : masks)
      if ((state & m) == m) {
        up = true;
        break;
      }
    if (!up) continue;
    std::fill(levels.begin(), levels.end(), 0);
    for (int c = 0; c < total; ++c)
      if (state & (1u << c)) ++levels[type_of_component[c]];
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n.size(); ++i)
      idx = idx * (n[i] + 1) + levels[i];
    ++working[idx];
  }
  std::vector<double> phi(size, 0.0);
  std::vector<int> lv(n.size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::uint64_t denom = 1;
    for (std::size_t i = 0; i < n.size(); ++i) denom *= binom_u64(n[i], lv[i]);
    phi[idx] = (double)working[idx] / (double)denom;
    for (std::size_t i = n.size(); i-- > 0;) {
      if (++lv[i] <= n[i]) break;
      lv[i] = 0;
    }
  }
  return SystemStructure(std::vector<int>(n.begin(), n.end()),
                         std::move(phi));
}

bool SystemStructure::is_series_parallel() const {
  std::vector<int> levels(n_.size(), 0);
  for (std::size_t idx = 0; idx < phi_.size(); ++idx) {
    const bool all_up =
        std::all_of(levels.begin(), levels.end(), [](int l) { return l >= 1; });
    if (phi_[idx] != (all_up ? 1.0 : 0.0)) return false;
    for (std::size_t i = n_.size(); i-- > 0;) {
      if (++levels[i] <= n_[i]) break;
      levels[i] = 0;
    }
  }
  return true;
}

}  // namespace rda
