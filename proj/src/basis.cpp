#include "rotorrec/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotorrec {

int label_encode(int ell, int m) {
    if (ell < 0) throw std::invalid_argument("label_encode: ell must be non-negative");
    if (m < -ell || m > ell)
        throw std::invalid_argument("label_encode: |m| must not exceed ell (ell=" +
                                    std::to_string(ell) + ", m=" + std::to_string(m) + ")");
    return ell * ell + ell + m;
}

RotorLabel label_decode(int sigma) {
    if (sigma < 0) throw std::invalid_argument("label_decode: sigma must be non-negative");
    int ell = static_cast<int>(std::sqrt(static_cast<double>(sigma)));
    // guard against floating-point rounding at perfect squares
    while (ell * ell > sigma) --ell;
    while ((ell + 1) * (ell + 1) <= sigma) ++ell;
    return RotorLabel{ell, sigma - ell * ell - ell, sigma};
}

int local_dim(int ell_max) {
    if (ell_max < 0) throw std::invalid_argument("local_dim: ell_max must be non-negative");
    return (ell_max + 1) * (ell_max + 1);
}

std::vector<RotorLabel> RotorConfiguration::labels() const {
    std::vector<RotorLabel> out;
    out.reserve(sigma.size());
    for (int s : sigma) out.push_back(label_decode(s));
    return out;
}

int RotorConfiguration::total_m() const {
    int m = 0;
    for (int s : sigma) m += label_decode(s).m;
    return m;
}

int RotorConfiguration::ell_parity() const {
    int sum = 0;
    for (int s : sigma) sum += label_decode(s).ell;
    return sum & 1;
}

std::pair<int, int> symmetry_numbers(const RotorConfiguration& config) {
    return {config.total_m(), config.ell_parity()};
}

Eigen::MatrixXd one_hot(const RotorConfiguration& config, int local_dim) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(config.n_sites(), local_dim);
    for (int i = 0; i < config.n_sites(); ++i) {
        int d = config.sigma[static_cast<std::size_t>(i)];
        if (d < 0 || d >= local_dim)
            throw std::invalid_argument("one_hot: label out of range for local dimension");
        out(i, d) = 1.0;
    }
    return out;
}

HilbertSpace::HilbertSpace(int n_sites, int ell_max)
    : n_sites_(n_sites), ell_max_(ell_max), local_dim_(rotorrec::local_dim(ell_max)) {
    if (n_sites < 1) throw std::invalid_argument("HilbertSpace: need at least one site");
    std::uint64_t dim = 1;
    const auto d = static_cast<std::uint64_t>(local_dim_);
    for (int i = 0; i < n_sites; ++i) {
        if (dim > UINT64_MAX / d)
            throw std::invalid_argument("HilbertSpace: total dimension overflows 64 bits");
        dim *= d;
    }
    total_dim_ = dim;
    strides_.resize(static_cast<std::size_t>(n_sites));
    std::uint64_t s = 1;
    for (int i = n_sites - 1; i >= 0; --i) {
        strides_[static_cast<std::size_t>(i)] = s;
        s *= d;
    }
}

int HilbertSpace::label_encode(int ell, int m) const {
    if (ell > ell_max_)
        throw std::invalid_argument("label_encode: ell exceeds ell_max of this space");
    return rotorrec::label_encode(ell, m);
}

RotorLabel HilbertSpace::label_decode(int sigma) const {
    if (sigma >= local_dim_)
        throw std::invalid_argument("label_decode: sigma out of range for this space");
    return rotorrec::label_decode(sigma);
}

std::uint64_t HilbertSpace::config_index(const RotorConfiguration& config) const {
    if (config.n_sites() != n_sites_)
        throw std::invalid_argument("config_index: site count mismatch");
    std::uint64_t idx = 0;
    for (int i = 0; i < n_sites_; ++i) {
        int s = config.sigma[static_cast<std::size_t>(i)];
        if (s < 0 || s >= local_dim_)
            throw std::invalid_argument("config_index: label out of range");
        idx += static_cast<std::uint64_t>(s) * strides_[static_cast<std::size_t>(i)];
    }
    return idx;
}

RotorConfiguration HilbertSpace::config_at(std::uint64_t index) const {
    if (index >= total_dim_) throw std::invalid_argument("config_at: index out of range");
    RotorConfiguration config;
    config.sigma.resize(static_cast<std::size_t>(n_sites_));
    for (int i = n_sites_ - 1; i >= 0; --i) {
        config.sigma[static_cast<std::size_t>(i)] =
            static_cast<int>(index % static_cast<std::uint64_t>(local_dim_));
        index /= static_cast<std::uint64_t>(local_dim_);
    }
    return config;
}

}  // namespace rotorrec
