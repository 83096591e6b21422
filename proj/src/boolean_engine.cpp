#include "fuzzybml/boolean_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fuzzybml/case_model.hpp"  // format_number

namespace fuzzybml {

namespace {

// Below this many cells a parallel sweep costs more than it saves.
constexpr std::size_t kParallelGrain = 512;

std::map<std::string, std::size_t> index_of(const std::vector<std::string>& labels) {
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < labels.size(); ++i) m[labels[i]] = i;
    return m;
}

}  // namespace

std::size_t CellularKnowledgeBase::fact_index(const std::string& label) const {
    auto it = std::find(fact_labels_.begin(), fact_labels_.end(), label);
    return it == fact_labels_.end() ? npos : std::size_t(it - fact_labels_.begin());
}

std::size_t CellularKnowledgeBase::rule_index(const std::string& id) const {
    auto it = std::find(rule_ids_.begin(), rule_ids_.end(), id);
    return it == rule_ids_.end() ? npos : std::size_t(it - rule_ids_.begin());
}

std::string CellularKnowledgeBase::re_row(std::size_t fact) const {
    std::string s(rule_count(), '0');
    for (std::size_t j = 0; j < rule_count(); ++j)
        if (premise_rows_[fact].test(j)) s[j] = '1';
    return s;
}

std::string CellularKnowledgeBase::rs_row(std::size_t fact) const {
    std::string s(rule_count(), '0');
    for (std::size_t j = 0; j < rule_count(); ++j)
        if (conclusion_of_[j] == fact) s[j] = '1';
    return s;
}

CellularKnowledgeBase compile(const RuleBase& rb, const EngineOptions& options) {
    rb.check();
    CellularKnowledgeBase kb;
    kb.options_ = options;
    kb.fact_labels_ = rb.facts;
    const auto fact_idx = index_of(rb.facts);

    const std::size_t nf = rb.facts.size();
    const std::size_t nr = rb.rules.size();
    kb.premise_mask_.assign(nr, BitVec(nf));
    kb.premise_rows_.assign(nf, BitVec(nr));
    kb.concluder_rows_.assign(nf, BitVec(nr));
    kb.conclusion_of_.assign(nr, CellularKnowledgeBase::npos);
    kb.premise_list_.assign(nr, {});
    kb.concluder_list_.assign(nf, {});
    kb.rule_ids_.reserve(nr);

    for (std::size_t j = 0; j < nr; ++j) {
        const Rule& r = rb.rules[j];
        kb.rule_ids_.push_back(r.id);
        for (const auto& p : r.premises) {
            std::size_t i = fact_idx.at(p);
            kb.premise_mask_[j].set(i);
            kb.premise_rows_[i].set(j);
            kb.premise_list_[j].push_back(i);
        }
        std::size_t c = fact_idx.at(r.conclusion);
        kb.conclusion_of_[j] = c;
        kb.concluder_rows_[c].set(j);
        kb.concluder_list_[c].push_back(j);
    }
    return kb;
}

RuleBase decompile(const CellularKnowledgeBase& kb) {
    RuleBase rb;
    rb.facts = kb.fact_labels();
    for (std::size_t j = 0; j < kb.rule_count(); ++j) {
        Rule r;
        r.id = kb.rule_ids()[j];
        for (std::size_t i = 0; i < kb.fact_count(); ++i)
            if (kb.re(i, j)) r.premises.push_back(kb.fact_labels()[i]);
        std::sort(r.premises.begin(), r.premises.end());
        r.conclusion = kb.fact_labels()[kb.conclusion_of(j)];
        rb.rules.push_back(std::move(r));
    }
    return rb;
}

AutomatonConfig assert_facts(const CellularKnowledgeBase& kb,
                             const std::vector<std::string>& facts) {
    AutomatonConfig g;
    g.fact_e = BitVec(kb.fact_count());
    g.fact_s = BitVec(kb.fact_count());
    g.fact_i.assign(kb.fact_count(), 1.0);
    g.rule_e = BitVec(kb.rule_count());
    g.rule_s = BitVec(kb.rule_count());
    g.rule_i.assign(kb.rule_count(), 1.0);
    for (const auto& f : facts) {
        std::size_t i = kb.fact_index(f);
        if (i == CellularKnowledgeBase::npos)
            throw std::invalid_argument("assert_facts: unknown fact '" + f + "'");
        g.fact_e.set(i);
    }
    return g;
}

AutomatonConfig delta_fact(const CellularKnowledgeBase& kb, const AutomatonConfig& g) {
    AutomatonConfig out = g;
    out.fact_s = g.fact_e;  // SF := EF

    const std::size_t nr = kb.rule_count();
    const bool conjunctive = kb.options().activation == Activation::Conjunctive;

    // Fired flags are gathered per rule and merged afterwards so the sweep
    // can run on independent cells.
    std::vector<unsigned char> fired(nr, 0);
    std::vector<double> degree(nr, 0.0);

#pragma omp parallel for schedule(static) if (kb.options().parallel && nr >= kParallelGrain)
    for (long long jj = 0; jj < static_cast<long long>(nr); ++jj) {
        auto j = static_cast<std::size_t>(jj);
        if (g.rule_e.test(j)) continue;  // already activated in an earlier step
        const auto& premises = kb.premises_of(j);
        bool active;
        if (conjunctive) {
            active = true;
            for (std::size_t i : premises)
                if (!g.fact_e.test(i)) {
                    active = false;
                    break;
                }
        } else {
            active = false;
            for (std::size_t i : premises)
                if (g.fact_e.test(i)) {
                    active = true;
                    break;
                }
        }
        if (!active) continue;
        double d = 1.0;
        for (std::size_t i : premises)
            if (g.fact_e.test(i)) d = std::min(d, g.fact_i[i]);
        fired[j] = 1;
        degree[j] = d;
    }

    for (std::size_t j = 0; j < nr; ++j) {
        if (!fired[j]) continue;
        out.rule_e.set(j);
        out.rule_i[j] = degree[j];
    }
    return out;
}

AutomatonConfig delta_rule(const CellularKnowledgeBase& kb, const AutomatonConfig& g) {
    AutomatonConfig out = g;

    const std::size_t nf = kb.fact_count();
    std::vector<unsigned char> established(nf, 0);
    std::vector<double> degree(nf, 0.0);

#pragma omp parallel for schedule(static) if (kb.options().parallel && nf >= kParallelGrain)
    for (long long ii = 0; ii < static_cast<long long>(nf); ++ii) {
        auto i = static_cast<std::size_t>(ii);
        bool hit = false;
        double d = 0.0;
        for (std::size_t j : kb.concluders_of(i)) {
            if (!g.rule_e.test(j)) continue;
            hit = true;
            d = std::max(d, g.rule_i[j]);
        }
        if (!hit) continue;
        established[i] = 1;
        degree[i] = d;
    }

    for (std::size_t i = 0; i < nf; ++i) {
        if (!established[i]) continue;
        if (!out.fact_e.test(i)) {
            // first establishment replaces the I=1 filler of an inert cell
            out.fact_e.set(i);
            out.fact_i[i] = degree[i];
        } else {
            // asserted or previously derived degrees are never weakened
            out.fact_i[i] = std::max(out.fact_i[i], degree[i]);
        }
    }

    out.rule_s = g.rule_e;
    out.rule_s.flip_all();  // SR := not ER
    return out;
}

ChainResult run_chain(const CellularKnowledgeBase& kb, AutomatonConfig g0) {
    ChainResult res;
    res.trace.push_back(std::move(g0));
    if (kb.fact_count() > 0) {
        for (std::size_t step = 0; step <= kb.fact_count(); ++step) {
            const AutomatonConfig& prev = res.trace.back();
            AutomatonConfig next = delta_rule(kb, delta_fact(kb, prev));
            bool fix = next.fact_e == prev.fact_e;
            res.trace.push_back(std::move(next));
            if (fix) break;
        }
    }
    const AutomatonConfig& fin = res.trace.back();
    for (std::size_t i = 0; i < kb.fact_count(); ++i)
        if (fin.fact_e.test(i)) res.established.push_back(kb.fact_labels()[i]);
    return res;
}

ChainResult forward_chain(const CellularKnowledgeBase& kb,
                          const std::vector<std::string>& initial) {
    return run_chain(kb, assert_facts(kb, initial));
}

namespace {

struct BackwardWalk {
    const CellularKnowledgeBase& kb;
    std::vector<std::vector<std::vector<std::size_t>>> memo;
    std::vector<unsigned char> done;
    std::vector<unsigned char> on_stack;
    std::vector<std::size_t> stack;

    explicit BackwardWalk(const CellularKnowledgeBase& k)
        : kb(k), memo(k.fact_count()), done(k.fact_count(), 0), on_stack(k.fact_count(), 0) {}

    // premise sets as sorted fact-index vectors, deduplicated, derivation order
    const std::vector<std::vector<std::size_t>>& expand(std::size_t fact) {
        if (done[fact]) return memo[fact];
        if (on_stack[fact]) {
            std::string cycle;
            auto it = std::find(stack.begin(), stack.end(), fact);
            for (; it != stack.end(); ++it) cycle += kb.fact_labels()[*it] + " -> ";
            cycle += kb.fact_labels()[fact];
            throw std::runtime_error("backward_chain: cyclic rule dependencies: " + cycle);
        }
        on_stack[fact] = 1;
        stack.push_back(fact);

        std::vector<std::vector<std::size_t>> result;
        if (kb.is_leaf_fact(fact)) {
            result.push_back({fact});
        } else {
            for (std::size_t j : kb.concluders_of(fact)) {
                std::vector<std::vector<std::size_t>> combos{{}};
                for (std::size_t p : kb.premises_of(j)) {
                    const auto& subs = expand(p);
                    std::vector<std::vector<std::size_t>> next;
                    for (const auto& combo : combos) {
                        for (const auto& sub : subs) {
                            std::vector<std::size_t> merged = combo;
                            merged.insert(merged.end(), sub.begin(), sub.end());
                            std::sort(merged.begin(), merged.end());
                            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                            next.push_back(std::move(merged));
                        }
                    }
                    combos = std::move(next);
                }
                for (auto& combo : combos) result.push_back(std::move(combo));
            }
            // duplicate derivations collapse, first occurrence kept
            std::vector<std::vector<std::size_t>> dedup;
            for (auto& r : result)
                if (std::find(dedup.begin(), dedup.end(), r) == dedup.end())
                    dedup.push_back(std::move(r));
            result = std::move(dedup);
        }

        stack.pop_back();
        on_stack[fact] = 0;
        done[fact] = 1;
        memo[fact] = std::move(result);
        return memo[fact];
    }
};

}  // namespace

std::vector<std::vector<std::string>> backward_chain(const CellularKnowledgeBase& kb,
                                                     const std::string& goal) {
    std::size_t g = kb.fact_index(goal);
    if (g == CellularKnowledgeBase::npos)
        throw std::invalid_argument("backward_chain: unknown goal fact '" + goal + "'");
    BackwardWalk walk(kb);
    const auto& sets = walk.expand(g);
    std::vector<std::vector<std::string>> out;
    out.reserve(sets.size());
    for (const auto& s : sets) {
        std::vector<std::string> labels;
        labels.reserve(s.size());
        for (auto i : s) labels.push_back(kb.fact_labels()[i]);
        std::sort(labels.begin(), labels.end());
        out.push_back(std::move(labels));
    }
    return out;
}

std::string format_config(const CellularKnowledgeBase& kb, const AutomatonConfig& g,
                          std::size_t step) {
    std::string s;
    const std::string tag = "G_" + std::to_string(step);
    for (std::size_t i = 0; i < kb.fact_count(); ++i) {
        s += tag + "\tFACT\t" + kb.fact_labels()[i] + "\t" + (g.fact_e.test(i) ? "1" : "0") +
             "\t" + format_number(g.fact_i[i]) + "\t" + (g.fact_s.test(i) ? "1" : "0") + "\n";
    }
    for (std::size_t j = 0; j < kb.rule_count(); ++j) {
        s += tag + "\tRULE\t" + kb.rule_ids()[j] + "\t" + (g.rule_e.test(j) ? "1" : "0") + "\t" +
             format_number(g.rule_i[j]) + "\t" + (g.rule_s.test(j) ? "1" : "0") + "\n";
    }
    return s;
}

}  // namespace fuzzybml
