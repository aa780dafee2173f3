#include "spz/models.hpp"

#include <sstream>
#include <stdexcept>

namespace spz {

std::string vanDerPolModel() {
    return "system vanderpol\n"
           "states x1 x2\n"
           "dynamics\n"
           "x1' = x2\n"
           "x2' = (1 - x1^2) * x2 - x1\n";
}

BenchmarkSetup vanDerPolBenchmark() {
    BenchmarkSetup setup;
    setup.modelText = vanDerPolModel();
    Vector lo(2), hi(2);
    lo << 1.23, 2.34;
    hi << 1.57, 2.46;
    setup.initialSet = IntervalVector(lo, hi);
    setup.inputSet = IntervalVector(0);
    setup.config.dt = 0.005;
    setup.config.tF = 6.74;
    setup.config.lambda = 0.1;
    setup.config.rhoD = 50.0;
    setup.config.muD = 0.01;
    setup.config.pD = 100;
    return setup;
}

std::string geneNetworkModel(int genes) {
    if (genes < 2) throw std::invalid_argument("geneNetworkModel: at least two genes required");
    std::ostringstream out;
    out << "system genenet" << genes << "\n";
    out << "states";
    for (int i = 1; i <= genes; ++i) out << " m" << i << " p" << i;
    out << "\ninputs";
    for (int i = 1; i <= genes; ++i) out << " w" << i;
    out << "\ndynamics\n";
    for (int i = 1; i <= genes; ++i) {
        const int pred = i == 1 ? genes : i - 1;
        out << "m" << i << "' = 0.4 / (1 + p" << pred << "^2) - 0.05 * m" << i << " + w" << i
            << "\n";
        out << "p" << i << "' = 0.05 * m" << i << " - 0.05 * p" << i << "\n";
    }
    return out.str();
}

BenchmarkSetup geneNetworkBenchmark(int genes) {
    BenchmarkSetup setup;
    setup.modelText = geneNetworkModel(genes);
    const Index n = 2 * static_cast<Index>(genes);
    setup.initialSet =
        IntervalVector(Vector::Constant(n, 1.75), Vector::Constant(n, 1.85));
    setup.inputSet = IntervalVector(Vector::Constant(genes, -0.001),
                                    Vector::Constant(genes, 0.001));
    setup.config.dt = 0.1;
    setup.config.tF = 20.0;
    setup.config.lambda = 0.1;
    setup.config.rhoD = 10.0;
    setup.config.muD = 1.0;
    setup.config.pD = 50;
    return setup;
}

}  // namespace spz
