#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ncdyn/opalg.hpp"

// Random instance generators shared by the property tests and the CLI sweeps.
namespace ncdyn::random {

using Rng = std::mt19937_64;

/// Ginibre matrix: iid standard complex Gaussian entries.
Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Matrix hermitian(Rng& rng, Eigen::Index n);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix unitary(Rng& rng, Eigen::Index n);
/// Full-rank density matrix G G* / tr(G G*).
Matrix density(Rng& rng, Eigen::Index n);
/// r Kraus operators with sum K* K = 1.
std::vector<Matrix> unital_kraus(Rng& rng, Eigen::Index n, std::size_t r);
/// Nonincreasing positive entries summing to 1, each entry drawn from [lo, 1] before normalization.
std::vector<double> normalized_list(Rng& rng, std::size_t len, double lo = 0.0);
Vector complex_vector(Rng& rng, Eigen::Index n);

}  // namespace ncdyn::random
