#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotorrec/basis.hpp"
#include "rotorrec/eigensolver.hpp"

namespace rotorrec {

// Synthetic projective-measurement dataset drawn from |psi|^2, with enough
// provenance to regenerate it.
struct MeasurementDataset {
    int n_sites = 0;
    int ell_max = 0;
    double R = 0.0;
    std::uint64_t seed = 0;
    std::string source;  // free-form descriptor of the amplitude source
    std::vector<RotorConfiguration> samples;

    std::size_t size() const { return samples.size(); }
};

// I.i.d. draws from p(sigma) = psi(sigma)^2 by cumulative-sum inversion.
// Throws std::invalid_argument when the amplitudes are not normalized to
// within 1e-8 or count < 1. Deterministic under a fixed seed.
MeasurementDataset sample_exact(const GroundStateSolution& solution, const HilbertSpace& space,
                                double R, std::size_t count, std::uint64_t seed);

// UTF-8 text format: '#' header lines with 'key = value' entries (n_sites,
// ell_max, R, seed, count, source), then one sample per line as N
// space-separated sigma labels. Round-trips bit-exactly.
void write_dataset(const MeasurementDataset& ds, const std::string& path);
MeasurementDataset read_dataset(const std::string& path);

struct DatasetParseError : std::runtime_error {
    DatasetParseError(const std::string& msg, int line)
        : std::runtime_error(path_msg(msg, line)), line_number(line) {}
    int line_number;

private:
    static std::string path_msg(const std::string& msg, int line) {
        return msg + " (line " + std::to_string(line) + ")";
    }
};

}  // namespace rotorrec
