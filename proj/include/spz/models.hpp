#pragma once

#include "spz/interval.hpp"
#include "spz/reach.hpp"

#include <string>

namespace spz {

/// Textual benchmark models in the model grammar, plus their standard run
/// setups.
struct BenchmarkSetup {
    std::string modelText;
    IntervalVector initialSet;
    IntervalVector inputSet;
    ReachConfig config;
};

/// Van der Pol oscillator, x1' = x2, x2' = (1 - x1^2) x2 - x1.
std::string vanDerPolModel();

/// Standard Van der Pol run: x0 in [1.23,1.57] x [2.34,2.46], dt = 0.005,
/// horizon 6.74 (one limit-cycle period), rhoD = 50, lambda = 0.1,
/// muD = 0.01, pD = 100.
BenchmarkSetup vanDerPolBenchmark();

/// Cyclic transcriptional regulator network with N genes (2N states, N
/// uncertain inputs): per gene i
///   m_i' = 0.4 / (1 + p_{i-1}^2) - 0.05 m_i + w_i   (cyclic predecessor)
///   p_i' = 0.05 m_i - 0.05 p_i
/// with w_i in [-0.001, 0.001]. Requires N >= 2.
std::string geneNetworkModel(int genes);

/// Standard gene-network run: states start in [1.75,1.85], dt = 0.1,
/// horizon 20, rhoD = 10, lambda = 0.1, muD = 1, pD = 50.
BenchmarkSetup geneNetworkBenchmark(int genes);

}  // namespace spz
