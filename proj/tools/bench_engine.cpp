// Times forward chaining on generated layered rule bases: the naive
// set-based interpreter against the packed cellular engine, single-threaded
// and with OpenMP sweeps.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fuzzybml/boolean_engine.hpp"
#include "fuzzybml/reference.hpp"
#include "fuzzybml/rule_base.hpp"

using namespace fuzzybml;

namespace {

// Acyclic base: facts in layers, every rule concludes one fact of layer l+1
// from 1..3 facts of layers <= l.
RuleBase layered_base(std::size_t layers, std::size_t facts_per_layer, std::size_t rules,
                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RuleBase rb;
    std::vector<std::vector<std::string>> layer_facts(layers);
    for (std::size_t l = 0; l < layers; ++l)
        for (std::size_t f = 0; f < facts_per_layer; ++f) {
            layer_facts[l].push_back("f" + std::to_string(l) + "_" + std::to_string(f));
            rb.facts.push_back(layer_facts[l].back());
        }
    std::uniform_int_distribution<std::size_t> nprem(1, 3);
    for (std::size_t r = 0; r < rules; ++r) {
        std::uniform_int_distribution<std::size_t> to_layer(1, layers - 1);
        std::size_t tl = to_layer(rng);
        std::uniform_int_distribution<std::size_t> pick_fact(0, facts_per_layer - 1);
        Rule rule;
        rule.id = "R_" + std::to_string(r + 1);
        rule.conclusion = layer_facts[tl][pick_fact(rng)];
        std::set<std::string> premises;
        std::size_t np = nprem(rng);
        std::uniform_int_distribution<std::size_t> from_layer(0, tl - 1);
        while (premises.size() < np) {
            std::string p = layer_facts[from_layer(rng)][pick_fact(rng)];
            if (p != rule.conclusion) premises.insert(p);
        }
        rule.premises.assign(premises.begin(), premises.end());
        rb.rules.push_back(std::move(rule));
    }
    rb.check();
    return rb;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t layers = 12, facts_per_layer = 600, rules = 20000, repeats = 5;
    std::uint64_t seed = 7;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        std::uint64_t v = std::stoull(argv[i + 1]);
        if (flag == "--layers") layers = v;
        else if (flag == "--facts-per-layer") facts_per_layer = v;
        else if (flag == "--rules") rules = v;
        else if (flag == "--repeats") repeats = v;
        else if (flag == "--seed") seed = v;
        else {
            std::cerr << "unknown flag " << flag << "\n";
            return 1;
        }
    }

    RuleBase rb = layered_base(layers, facts_per_layer, rules, seed);
    std::vector<std::string> initial;
    for (std::size_t f = 0; f < facts_per_layer; ++f)
        initial.push_back("f0_" + std::to_string(f));

    std::cout << "facts: " << rb.facts.size() << ", rules: " << rb.rules.size()
              << ", repeats: " << repeats << "\n";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n";
#endif

    std::set<std::string> expected;
    double naive_ms = 0;
    for (std::size_t i = 0; i < repeats; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        expected = reference::forward_chain_naive(rb, {initial.begin(), initial.end()});
        naive_ms += ms_since(t0);
    }
    std::cout << "naive interpreter:   " << naive_ms / repeats << " ms, " << expected.size()
              << " facts established\n";

    for (bool parallel : {false, true}) {
        EngineOptions opt;
        opt.parallel = parallel;
        CellularKnowledgeBase kb = compile(rb, opt);
        // warm-up outside the timed loop
        ChainResult warm = forward_chain(kb, initial);
        double total = 0;
        for (std::size_t i = 0; i < repeats; ++i) {
            auto t0 = std::chrono::steady_clock::now();
            ChainResult res = forward_chain(kb, initial);
            total += ms_since(t0);
            if (std::set<std::string>(res.established.begin(), res.established.end()) != expected) {
                std::cerr << "result mismatch against the naive interpreter\n";
                return 1;
            }
        }
        std::cout << (parallel ? "packed engine (omp): " : "packed engine:       ")
                  << total / repeats << " ms\n";
        (void)warm;
    }
    return 0;
}
