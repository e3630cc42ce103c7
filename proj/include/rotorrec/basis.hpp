#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rotorrec {

// Single-rotor state |l m> together with its flattened zero-indexed label
// sigma = l^2 + l + m. The flattening enumerates l ascending and m ascending
// within each l, so l is recoverable as floor(sqrt(sigma)).
struct RotorLabel {
    int ell = 0;
    int m = 0;
    int sigma = 0;
};

// sigma = l^2 + l + m. Throws std::invalid_argument for l < 0 or |m| > l.
int label_encode(int ell, int m);

// Inverse of label_encode. Throws std::invalid_argument for sigma < 0.
RotorLabel label_decode(int sigma);

// Local Hilbert space size (l_max + 1)^2 for a single rotor truncated at l_max.
int local_dim(int ell_max);

// Product-basis state of an N-rotor chain, stored as per-site flattened labels.
// Site 0 is the most significant digit of the global mixed-radix index.
struct RotorConfiguration {
    std::vector<int> sigma;

    int n_sites() const { return static_cast<int>(sigma.size()); }
    std::vector<RotorLabel> labels() const;
    int total_m() const;
    int ell_parity() const;
};

// Conserved quantum numbers (sum of m, parity of sum of l).
std::pair<int, int> symmetry_numbers(const RotorConfiguration& config);

// One-hot encoding sigma[i][d] = 1 iff site i carries label d. Every row sums to 1.
Eigen::MatrixXd one_hot(const RotorConfiguration& config, int local_dim);

// Truncated product Hilbert space of n_sites rotors, each capped at ell_max.
// Immutable after construction.
class HilbertSpace {
public:
    HilbertSpace(int n_sites, int ell_max);

    int n_sites() const { return n_sites_; }
    int ell_max() const { return ell_max_; }
    int local_dim() const { return local_dim_; }
    std::uint64_t total_dim() const { return total_dim_; }

    // Mixed-radix stride of site i: local_dim^(n_sites - 1 - i).
    std::uint64_t stride(int site) const { return strides_[site]; }

    // Validating encode against this space's ell_max.
    int label_encode(int ell, int m) const;
    RotorLabel label_decode(int sigma) const;

    std::uint64_t config_index(const RotorConfiguration& config) const;
    RotorConfiguration config_at(std::uint64_t index) const;

private:
    int n_sites_;
    int ell_max_;
    int local_dim_;
    std::uint64_t total_dim_;
    std::vector<std::uint64_t> strides_;
};

}  // namespace rotorrec
