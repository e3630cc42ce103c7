#include "rotorrec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotorrec/rng.hpp"

namespace rotorrec {

MeasurementDataset sample_exact(const GroundStateSolution& solution, const HilbertSpace& space,
                                double R, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_exact: count must be at least 1");
    const Eigen::VectorXd& psi = solution.amplitudes;
    if (static_cast<std::uint64_t>(psi.size()) != space.total_dim())
        throw std::invalid_argument("sample_exact: solution does not match space");
    const double norm2 = psi.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-8)
        throw std::invalid_argument("sample_exact: amplitudes not normalized");

    std::vector<double> cdf(static_cast<std::size_t>(psi.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        acc += psi[i] * psi[i];
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = 1.0;

    MeasurementDataset ds;
    ds.n_sites = space.n_sites();
    ds.ell_max = space.ell_max();
    ds.R = R;
    ds.seed = seed;
    ds.source = "exact-diagonalization";
    ds.samples.reserve(count);

    std::mt19937_64 gen(mix_seed(seed));
    for (std::size_t s = 0; s < count; ++s) {
        const double u = uniform01(gen);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        ds.samples.push_back(space.config_at(std::min(idx, space.total_dim() - 1)));
    }
    return ds;
}

void write_dataset(const MeasurementDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_dataset: cannot open " + path);
    char rbuf[40];
    std::snprintf(rbuf, sizeof rbuf, "%.17g", ds.R);
    out << "# n_sites = " << ds.n_sites << "\n";
    out << "# ell_max = " << ds.ell_max << "\n";
    out << "# R = " << rbuf << "\n";
    out << "# seed = " << ds.seed << "\n";
    out << "# count = " << ds.samples.size() << "\n";
    out << "# source = " << ds.source << "\n";
    for (const RotorConfiguration& c : ds.samples) {
        for (int i = 0; i < c.n_sites(); ++i) {
            if (i) out << ' ';
            out << c.sigma[static_cast<std::size_t>(i)];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_dataset: write failed for " + path);
}

MeasurementDataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_dataset: cannot open " + path);

    MeasurementDataset ds;
    bool have_n = false, have_ell = false, have_count = false;
    std::size_t declared_count = 0;
    int line_no = 0;
    std::string line;
    int local_d = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;  // plain comment
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            try {
                if (key == "n_sites") {
                    ds.n_sites = std::stoi(value);
                    have_n = true;
                } else if (key == "ell_max") {
                    ds.ell_max = std::stoi(value);
                    have_ell = true;
                } else if (key == "R") {
                    ds.R = std::stod(value);
                } else if (key == "seed") {
                    ds.seed = std::stoull(value);
                } else if (key == "count") {
                    declared_count = std::stoull(value);
                    have_count = true;
                } else if (key == "source") {
                    ds.source = value;
                }
            } catch (const std::exception&) {
                throw DatasetParseError("read_dataset: malformed header value for '" + key + "'",
                                        line_no);
            }
            continue;
        }

        if (!have_n || !have_ell)
            throw DatasetParseError("read_dataset: sample before n_sites/ell_max header", line_no);
        if (local_d == 0) local_d = local_dim(ds.ell_max);

        RotorConfiguration config;
        config.sigma.reserve(static_cast<std::size_t>(ds.n_sites));
        std::istringstream ss(line);
        int v = 0;
        while (ss >> v) {
            if (v < 0 || v >= local_d)
                throw DatasetParseError("read_dataset: label " + std::to_string(v) +
                                            " out of range for ell_max " +
                                            std::to_string(ds.ell_max),
                                        line_no);
            config.sigma.push_back(v);
        }
        if (!ss.eof())
            throw DatasetParseError("read_dataset: non-integer token in sample line", line_no);
        if (config.n_sites() != ds.n_sites)
            throw DatasetParseError("read_dataset: expected " + std::to_string(ds.n_sites) +
                                        " labels, found " + std::to_string(config.n_sites()),
                                    line_no);
        ds.samples.push_back(std::move(config));
    }

    if (!have_n || !have_ell || !have_count)
        throw DatasetParseError("read_dataset: missing required header keys", line_no);
    if (ds.samples.size() != declared_count)
        throw DatasetParseError("read_dataset: declared count " + std::to_string(declared_count) +
                                    " does not match " + std::to_string(ds.samples.size()) +
                                    " samples",
                                line_no);
    return ds;
}

}  // namespace rotorrec
