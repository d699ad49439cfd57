#include <chrono>
#include <iostream>

#include "zec/capacity.hpp"
#include "zec/graph.hpp"
#include "zec/sim.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_graph(const std::string& name, const zec::Graph& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto parallel = zec::independence_number(g, 4096);
    double tp = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto serial = zec::independence_number_serial(g, 4096);
    double ts = seconds_since(t0);
    std::cout << name << ": n=" << g.size() << " alpha=" << parallel.size
              << " parallel=" << tp << "s serial=" << ts << "s";
    if (parallel.size != serial.size) std::cout << "  MISMATCH";
    std::cout << "\n";
}

}  // namespace

int main() {
    bench_graph("C5^2", zec::strong_power(zec::Graph::cycle(5), 2));
    bench_graph("C5^3", zec::strong_power(zec::Graph::cycle(5), 3));
    bench_graph("C7^2", zec::strong_power(zec::Graph::cycle(7), 2));

    // Simulation throughput: exact rationals versus scaled floating point.
    zec::SimConfig config;
    config.plant.matrix = {{zec::Rational(3, 2)}};
    config.channel = zec::noiseless_channel(2);
    config.code = zec::Code(
        1, {{{0}, {0}}, {{1}, {1}}}, config.channel.alphabets());
    config.noise_bound = zec::Rational(1, 10);
    config.initial_box.bounds = {{zec::Rational(-1, 2), zec::Rational(1, 2)}};
    config.seed = 7;
    config.trials = 4;
    config.record_steps = false;

    config.horizon = 2000;
    config.exact = true;
    auto t0 = std::chrono::steady_clock::now();
    zec::run_trials(config);
    std::cout << "sim exact T=2000 x4: " << seconds_since(t0) << "s\n";

    config.horizon = 100000;
    config.exact = false;
    t0 = std::chrono::steady_clock::now();
    zec::run_trials(config);
    std::cout << "sim scaled T=100000 x4: " << seconds_since(t0) << "s\n";
    return 0;
}
