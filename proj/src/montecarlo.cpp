#include "primedist/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primedist/analytic.hpp"

namespace primedist::mc {

namespace {

struct ProbTable {
    std::uint64_t start_index = 0;
    std::vector<double> p;  // p[start_index + j]
};

ProbTable build_prob_table(models::ModelKind model, std::uint64_t x,
                           const std::optional<primes::ProgressionClass>& cls) {
    if (!model.cramer())
        throw std::invalid_argument("simulate: only the Cramer models (M2, M4) are sampled");
    if (model.progression() != cls.has_value())
        throw std::invalid_argument("simulate: model/class mismatch");
    if (x < 10) throw std::invalid_argument("simulate: require x >= 10");

    primes::ProgressionClass c = cls ? *cls : primes::ProgressionClass{1, 0, 1};
    std::uint64_t n = models::cramer_urn_count(x, cls);
    std::uint64_t start = models::cramer_start_index(cls);
    if (n < start) throw std::domain_error("simulate: no urns below the clamping index");

    ProbTable table;
    table.start_index = start;
    table.p.reserve(n - start + 1);
    double pref = static_cast<double>(c.k) / static_cast<double>(c.phi_k);
    for (std::uint64_t i = start; i <= n; ++i) {
        double f = static_cast<double>(c.k * i + c.l);
        table.p.push_back(pref / std::log(f));
    }
    return table;
}

std::uint64_t run_one(const ProbTable& table, std::uint64_t seed) {
    SplitMix64 rng{seed};
    std::uint64_t hits = 0;
    for (double p : table.p)
        if (rng.next_unit() < p) ++hits;
    return hits;
}

double quantile_sorted(const std::vector<std::uint64_t>& sorted, double q) {
    // linear interpolation at rank q * (n - 1)
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    double a = static_cast<double>(sorted[lo]);
    if (lo + 1 >= sorted.size()) return a;
    double b = static_cast<double>(sorted[lo + 1]);
    return a + frac * (b - a);
}

}  // namespace

std::uint64_t simulate_trajectory(models::ModelKind model, std::uint64_t x,
                                  std::optional<primes::ProgressionClass> cls,
                                  std::uint64_t seed) {
    return run_one(build_prob_table(model, x, cls), seed);
}

SimReport run_experiment(const TrialConfig& cfg) {
    if (cfg.trials < 100)
        throw std::invalid_argument("run_experiment: require trials >= 100");
    for (double c : cfg.c_list)
        if (!(c > 0.0)) throw std::invalid_argument("run_experiment: C values must be > 0");

    ProbTable table = build_prob_table(cfg.model, cfg.x, cfg.cls);
    models::ModelMoments moments = models::model_moments(cfg.model, cfg.x, cfg.cls);

    std::vector<std::uint64_t> counts(cfg.trials, 0);
    const std::int64_t t_total = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < t_total; ++t)
        counts[t] = run_one(table, trial_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));

    // integer aggregation keeps the report independent of the schedule
    unsigned __int128 s1 = 0, s2 = 0;
    for (std::uint64_t c : counts) {
        s1 += c;
        s2 += static_cast<unsigned __int128>(c) * c;
    }
    const double n = static_cast<double>(cfg.trials);
    double mean = static_cast<double>(static_cast<long double>(s1) / n);
    long double ss = static_cast<long double>(s2) -
                     static_cast<long double>(s1) * static_cast<long double>(s1) / n;
    double variance = static_cast<double>(ss / (n - 1.0));

    SimReport rep;
    rep.x = cfg.x;
    rep.trials = cfg.trials;
    rep.master_seed = cfg.master_seed;
    rep.start_index = table.start_index;
    rep.model_mean = moments.mean;
    rep.model_variance = moments.variance;
    rep.empirical_mean = mean;
    rep.empirical_variance = variance;

    double sd = std::sqrt(moments.variance);
    for (double c : cfg.c_list) {
        std::uint64_t inside = 0;
        for (std::uint64_t v : counts)
            if (std::fabs(static_cast<double>(v) - moments.mean) < c * sd) ++inside;
        rep.coverage.emplace_back(c, static_cast<double>(inside) / n);
    }

    std::vector<std::uint64_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    auto z_of = [&](double v) { return (v - moments.mean) / sd; };
    rep.z.min = z_of(static_cast<double>(sorted.front()));
    rep.z.max = z_of(static_cast<double>(sorted.back()));
    rep.z.q25 = z_of(quantile_sorted(sorted, 0.25));
    rep.z.median = z_of(quantile_sorted(sorted, 0.50));
    rep.z.q75 = z_of(quantile_sorted(sorted, 0.75));
    return rep;
}

CoverageTable coverage_report(const std::vector<SimReport>& reports, double c) {
    if (reports.empty())
        throw std::invalid_argument("coverage_report: no reports");
    CoverageTable table;
    double expected = analytic::normal_module_cdf(c);
    for (const SimReport& rep : reports) {
        auto it = std::find_if(rep.coverage.begin(), rep.coverage.end(),
                               [&](const auto& pr) { return pr.first == c; });
        if (it == rep.coverage.end())
            throw std::invalid_argument("coverage_report: C missing from a report's c_list");
        CoverageRow row;
        row.x = rep.x;
        row.trials = rep.trials;
        row.c = c;
        row.empirical = it->second;
        row.expected = expected;
        row.tolerance = 3.0 * std::sqrt(expected * (1.0 - expected) /
                                        static_cast<double>(rep.trials));
        row.ok = std::fabs(row.empirical - expected) < row.tolerance;
        table.rows.push_back(row);
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const CoverageRow& a, const CoverageRow& b) { return a.x < b.x; });
    table.all_pass = std::all_of(table.rows.begin(), table.rows.end(),
                                 [](const CoverageRow& r) { return r.ok; });
    return table;
}

}  // namespace primedist::mc
