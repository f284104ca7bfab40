#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permprof/closed_forms.hpp"
#include "permprof/errors.hpp"
#include "permprof/oracle.hpp"
#include "permprof/samplers.hpp"
#include "permprof/series.hpp"
#include "permprof/stat_report.hpp"
#include "permprof/stats_tests.hpp"
#include "permprof/verify.hpp"
#include "permprof/weights.hpp"

namespace {

using namespace permprof;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_domain = 3;

long exact_mode_cap() {
    if (const char* env = std::getenv("PERMPROF_NMAX_EXACT")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0) return v;
        throw ParseError("PERMPROF_NMAX_EXACT must be a nonnegative integer");
    }
    return 500;
}

SeriesMode pick_mode(const std::string& mode_flag, long n) {
    if (mode_flag == "exact") return SeriesMode::exact;
    if (mode_flag == "float") return SeriesMode::floating;
    return n <= exact_mode_cap() ? SeriesMode::exact : SeriesMode::floating;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ParseError("cannot open output file: " + path);
    return file;
}

// ---- series ---------------------------------------------------------------

int cmd_series(const std::string& spec, long n, const std::string& mode_flag,
               const std::string& format, const std::string& out_path) {
    const WeightSequence w = parse_weight_spec(spec);
    const SeriesMode mode = pick_mode(mode_flag, n);
    const WeightedSeries series = WeightedSeries::compute(w, n, mode);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        out << series.to_csv();
    } else {
        json rows = json::array();
        for (long i = 0; i <= n; ++i) {
            json row;
            row["n"] = i;
            if (mode == SeriesMode::exact)
                row["w_exact"] = format_rational(series.w_exact(i));
            else
                row["w_exact"] = nullptr;
            row["w_float"] = series.w(i);
            rows.push_back(std::move(row));
        }
        out << rows.dump(2) << "\n";
    }
    return exit_ok;
}

// ---- stats ----------------------------------------------------------------

struct StatsRow {
    long k = 0;
    std::string sigma, ex, ey, closed, diff;
};

// Closed-form E Y_k where one exists for the kind; empty otherwise.
std::optional<Rational> closed_form_ey(const WeightSequence& w, long n, long k) {
    switch (w.kind()) {
        case WeightKind::ewens:
            return Rational(k) * ewens_k_cycle_mean(w.ewens_parameter(), n, k);
        case WeightKind::even_only:
            return parity_elements_in_k_cycles(Parity::even, n, k);
        case WeightKind::odd_only:
            return parity_elements_in_k_cycles(Parity::odd, n, k);
        default:
            return std::nullopt;
    }
}

std::optional<double> closed_form_mean(const WeightSequence& w, long n) {
    switch (w.kind()) {
        case WeightKind::ewens:
            return ewens_mean_cycles(to_double_nearest(w.ewens_parameter()), n);
        case WeightKind::even_only: {
            double m = 0.0;
            for (long k = 1; k <= n / 2; ++k) m += 1.0 / static_cast<double>(2 * k - 1);
            return m;
        }
        case WeightKind::odd_only:
            return parity_asymptotics(Parity::odd, n).first.value;
        default:
            return std::nullopt;
    }
}

std::optional<double> closed_form_variance(const WeightSequence& w, long n) {
    switch (w.kind()) {
        case WeightKind::ewens:
            return ewens_var_cycles(to_double_nearest(w.ewens_parameter()), n);
        case WeightKind::even_only: {
            double v = 0.0;
            for (long k = 1; k <= n / 2; ++k) {
                const double p = 1.0 / static_cast<double>(2 * k - 1);
                v += p * (1.0 - p);
            }
            return v;
        }
        case WeightKind::odd_only:
            return parity_asymptotics(Parity::odd, n).second.value;
        default:
            return std::nullopt;
    }
}

int cmd_stats(const std::string& spec, long n, const std::string& mode_flag,
              const std::string& format, const std::string& out_path) {
    const WeightSequence w = parse_weight_spec(spec);
    const SeriesMode mode = pick_mode(mode_flag, n);
    const WeightedSeries series = WeightedSeries::compute(w, n, mode);
    const bool exact = mode == SeriesMode::exact;

    std::vector<StatsRow> rows;
    for (long k = 1; k <= n; ++k) {
        StatsRow row;
        row.k = k;
        double ey_num;
        if (exact) {
            row.sigma = format_rational(w.sigma(k));
            const Rational ex = series.expected_k_cycles_exact(n, k);
            row.ex = format_rational(ex);
            row.ey = format_rational(Rational(k) * ex);
            ey_num = to_double_nearest(Rational(k) * ex);
        } else {
            row.sigma = format_double17(w.sigma_d(k));
            const double ex = series.expected_k_cycles(n, k);
            row.ex = format_double17(ex);
            row.ey = format_double17(static_cast<double>(k) * ex);
            ey_num = static_cast<double>(k) * ex;
        }
        if (const auto cf = closed_form_ey(w, n, k)) {
            row.closed = exact ? format_rational(*cf) : format_double17(to_double_nearest(*cf));
            row.diff = format_double17(std::abs(ey_num - to_double_nearest(*cf)));
        }
        rows.push_back(std::move(row));
    }

    std::string mean_s, var_s;
    double mean_num, var_num;
    if (exact) {
        const Rational m = series.total_cycles_mean_exact(n);
        const Rational v = series.total_cycles_variance_exact(n);
        mean_s = format_rational(m);
        var_s = format_rational(v);
        mean_num = to_double_nearest(m);
        var_num = to_double_nearest(v);
    } else {
        mean_num = series.total_cycles_mean(n);
        var_num = series.total_cycles_variance(n);
        mean_s = format_double17(mean_num);
        var_s = format_double17(var_num);
    }
    const auto cf_mean = closed_form_mean(w, n);
    const auto cf_var = closed_form_variance(w, n);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        out << "k,sigma,E_X_k,E_Y_k,closed_form_E_Y_k,abs_diff\n";
        for (const auto& r : rows)
            out << r.k << "," << r.sigma << "," << r.ex << "," << r.ey << "," << r.closed << ","
                << r.diff << "\n";
        out << "\nstatistic,value,closed_form,abs_diff\n";
        out << "mean_cycles," << mean_s << ",";
        if (cf_mean)
            out << format_double17(*cf_mean) << "," << format_double17(std::abs(mean_num - *cf_mean));
        else
            out << ",";
        out << "\n";
        out << "variance_cycles," << var_s << ",";
        if (cf_var)
            out << format_double17(*cf_var) << "," << format_double17(std::abs(var_num - *cf_var));
        else
            out << ",";
        out << "\n";
    } else {
        json doc;
        doc["rows"] = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["k"] = r.k;
            jr["sigma"] = r.sigma;
            jr["E_X_k"] = r.ex;
            jr["E_Y_k"] = r.ey;
            jr["closed_form_E_Y_k"] = r.closed.empty() ? json() : json(r.closed);
            jr["abs_diff"] = r.diff.empty() ? json() : json(r.diff);
            doc["rows"].push_back(std::move(jr));
        }
        doc["summary"]["mean_cycles"]["value"] = mean_s;
        doc["summary"]["variance_cycles"]["value"] = var_s;
        if (cf_mean) {
            doc["summary"]["mean_cycles"]["closed_form"] = format_double17(*cf_mean);
            doc["summary"]["mean_cycles"]["abs_diff"] =
                format_double17(std::abs(mean_num - *cf_mean));
        }
        if (cf_var) {
            doc["summary"]["variance_cycles"]["closed_form"] = format_double17(*cf_var);
            doc["summary"]["variance_cycles"]["abs_diff"] =
                format_double17(std::abs(var_num - *cf_var));
        }
        out << doc.dump(2) << "\n";
    }
    return exit_ok;
}

// ---- profile --------------------------------------------------------------

int cmd_profile(const std::string& spec, long n, double gamma, double delta,
                std::optional<double> limit_sigma, const std::string& mode_flag,
                const std::string& format, const std::string& out_path) {
    const WeightSequence w = parse_weight_spec(spec);
    double sigma;
    if (limit_sigma) {
        sigma = *limit_sigma;
    } else if (const auto mean = w.mean()) {
        sigma = to_double_nearest(*mean);
    } else {
        throw DomainError("weight kind has no declared mean; pass --limit-sigma");
    }
    const SeriesMode mode = pick_mode(mode_flag, n);
    const WeightedSeries series = WeightedSeries::compute(w, n, mode);
    const double limit = bulk_profile_limit(sigma, gamma, delta);

    std::vector<long> ladder;
    for (long m : {n / 8, n / 4, n / 2, n}) {
        // Walk down to the nearest size with positive mass (parity-style
        // weights vanish on half the sizes).
        for (long t = m; t > m - 8 && t >= 1; --t) {
            if (series.w(t) != 0.0) {
                if (ladder.empty() || ladder.back() != t) ladder.push_back(t);
                break;
            }
        }
    }
    if (ladder.empty()) throw ZeroMeasureError("no ladder size has positive total weight");
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    json rows = json::array();
    for (long m : ladder) {
        const double exact = mode == SeriesMode::exact
                                 ? to_double_nearest(series.bulk_profile_exact(m, gamma, delta))
                                 : series.bulk_profile(m, gamma, delta);
        json row;
        row["n"] = m;
        row["exact"] = exact;
        row["limit"] = limit;
        row["abs_gap"] = std::abs(exact - limit);
        rows.push_back(std::move(row));
    }
    if (format == "csv") {
        out << "n,exact,limit,abs_gap\n";
        for (const auto& row : rows)
            out << row["n"].get<long>() << "," << format_double17(row["exact"].get<double>()) << ","
                << format_double17(row["limit"].get<double>()) << ","
                << format_double17(row["abs_gap"].get<double>()) << "\n";
    } else {
        out << rows.dump(2) << "\n";
    }
    return exit_ok;
}

// ---- sample / boltzmann ---------------------------------------------------

struct SampleStats {
    std::vector<double> cycle_counts;
    std::vector<double> sizes;
    std::map<std::vector<long>, long> image_freq;  // permutation draws, n <= 6
    std::map<long, long> count_freq;
};

void emit_perm_row(std::ostream& out, const std::string& format, long rep,
                   const Permutation& p, long cycle_count) {
    if (format == "cycles") {
        out << p.to_cycle_string() << "\n";
        return;
    }
    long max_len = 0, fixed = 0;
    for (const auto& c : p.cycles()) {
        max_len = std::max<long>(max_len, static_cast<long>(c.size()));
        if (c.size() == 1) ++fixed;
    }
    if (format == "csv")
        out << rep << "," << p.size() << "," << cycle_count << "," << max_len << "," << fixed
            << "\n";
    else
        out << "    [" << rep << "," << p.size() << "," << cycle_count << "," << max_len << ","
            << fixed << "]";
}

json summary_json(const WeightSequence& w, long n, const std::string& method,
                  const SampleStats& stats, long reps) {
    json s;
    const auto cc = summarize(stats.cycle_counts);
    s["draws"] = reps;
    s["mean_cycle_count"] = cc.mean;
    s["var_cycle_count"] = cc.variance;
    s["se_mean_cycle_count"] = cc.se_mean;

    // Exact references where the series is affordable.
    if (n <= 4000) {
        const WeightedSeries f = WeightedSeries::compute(
            w, n, n <= exact_mode_cap() ? SeriesMode::exact : SeriesMode::floating);
        const double mean = f.total_cycles_mean(n);
        const double var = f.total_cycles_variance(n);
        s["exact_mean_cycle_count"] = mean;
        s["exact_var_cycle_count"] = var;
        if (cc.se_mean > 0) s["z_mean_cycle_count"] = (cc.mean - mean) / cc.se_mean;
    }

    // Permutation-level goodness of fit against the enumerated measure.
    if (!stats.image_freq.empty() && n <= 6) {
        const auto measure = permutation_measure(w, n);
        std::vector<long> observed;
        std::vector<double> expected;
        bool impossible = false;
        long covered = 0;
        for (const auto& [perm, prob] : measure) {
            const auto it = stats.image_freq.find(perm.image());
            const long count = it == stats.image_freq.end() ? 0 : it->second;
            covered += count;
            if (prob == 0) {
                if (count != 0) impossible = true;
                continue;
            }
            observed.push_back(count);
            expected.push_back(to_double_nearest(prob) * static_cast<double>(reps));
        }
        if (!impossible && covered == reps && observed.size() >= 2) {
            const auto r = chi_square_gof(observed, expected);
            s["chi_square_statistic"] = r.statistic;
            s["chi_square_df"] = r.df;
            s["chi_square_p"] = r.p_value;
        } else if (impossible) {
            s["chi_square_p"] = 0.0;
            s["impossible_draw"] = true;
        }
    }

    // Count-level goodness of fit for the Bernoulli method.
    if (method == "bernoulli" && n <= oracle_default_cap) {
        const auto poly = cycle_count_polynomial(w, n);
        Rational total = 0;
        for (const auto& c : poly) total += c;
        std::vector<long> observed;
        std::vector<double> expected;
        bool impossible = false;
        for (size_t c = 0; c < poly.size(); ++c) {
            const auto it = stats.count_freq.find(static_cast<long>(c));
            const long count = it == stats.count_freq.end() ? 0 : it->second;
            if (poly[c] == 0) {
                if (count != 0) impossible = true;
                continue;
            }
            observed.push_back(count);
            expected.push_back(to_double_nearest(poly[c] / total) * static_cast<double>(reps));
        }
        if (!impossible && observed.size() >= 2) {
            const auto r = chi_square_gof(observed, expected);
            s["chi_square_statistic"] = r.statistic;
            s["chi_square_df"] = r.df;
            s["chi_square_p"] = r.p_value;
        } else if (impossible) {
            s["chi_square_p"] = 0.0;
            s["impossible_draw"] = true;
        }
    }
    return s;
}

void emit_summary(std::ostream& out, const std::string& format, const json& s) {
    if (format == "json") return;  // embedded in the document instead
    out << "\n# summary\n";
    for (const auto& [key, value] : s.items()) {
        out << "# " << key << ",";
        if (value.is_number_float())
            out << format_double17(value.get<double>());
        else
            out << value.dump();
        out << "\n";
    }
}

int cmd_sample(const std::string& spec, long n, const std::string& method, long reps,
               std::uint64_t seed, const std::string& format, const std::string& out_path) {
    const WeightSequence w = parse_weight_spec(spec);
    if (reps < 1) throw DomainError("need reps >= 1");
    if (method == "crp" && w.kind() != WeightKind::ewens)
        throw DomainError("crp sampling requires an ewens weight spec");
    if (method == "bernoulli" && format == "cycles")
        throw DomainError("bernoulli samples are counts; use csv or json format");

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    SampleStats stats;
    const bool keep_images = n <= 6 && method != "bernoulli";

    std::optional<ExactWeightedSampler> exact_sampler;
    std::optional<WeightedSeries> exact_series;
    if (method == "exact") {
        exact_series = WeightedSeries::compute(w, n, SeriesMode::exact);
        exact_sampler.emplace(*exact_series, n);
    }
    const double sigma_d =
        w.kind() == WeightKind::ewens ? to_double_nearest(w.ewens_parameter()) : 0.0;

    if (format == "json") out << "{\n  \"samples\": [\n";
    if (format == "csv") out << "replicate,n,cycle_count,max_cycle_len,fixed_points\n";
    for (long r = 0; r < reps; ++r) {
        RandomStream rng({seed, static_cast<std::uint64_t>(r)});
        if (method == "bernoulli") {
            const long c = bernoulli_count_sample(w, n, rng);
            stats.cycle_counts.push_back(static_cast<double>(c));
            stats.count_freq[c] += 1;
            if (format == "csv")
                out << r << "," << n << "," << c << ",,\n";
            else
                out << (r ? ",\n" : "") << "    [" << r << "," << n << "," << c << ",null,null]";
            continue;
        }
        Permutation p;
        if (method == "crp")
            p = crp_sample(sigma_d, n, rng);
        else if (method == "exact")
            p = exact_sampler->sample(rng);
        else
            throw ParseError("unknown method: " + method);
        const long c = cycle_type(p).total_cycles();
        stats.cycle_counts.push_back(static_cast<double>(c));
        if (keep_images) stats.image_freq[p.image()] += 1;
        if (format == "json" && r) out << ",\n";
        emit_perm_row(out, format, r, p, c);
    }
    const json s = summary_json(w, n, method, stats, reps);
    if (format == "json") {
        out << "\n  ],\n  \"summary\": " << s.dump(2) << "\n}\n";
    } else {
        emit_summary(out, format, s);
    }
    return exit_ok;
}

int cmd_boltzmann(const std::string& spec, std::optional<double> mu, std::optional<double> x_flag,
                  long reps, std::uint64_t seed, const std::string& format,
                  const std::string& out_path) {
    const WeightSequence w = parse_weight_spec(spec);
    if (reps < 1) throw DomainError("need reps >= 1");
    if (mu.has_value() == x_flag.has_value())
        throw ParseError("pass exactly one of --mu and --x");
    const double x = mu ? calibrate_x(w, *mu) : *x_flag;
    const BoltzmannSampler sampler(w, x);
    const BoltzmannMoments moments = boltzmann_moments(w, x);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "json") out << "{\n  \"samples\": [\n";
    if (format == "csv") out << "replicate,n,cycle_count,max_cycle_len,fixed_points\n";

    std::vector<double> sizes, counts;
    sizes.reserve(static_cast<size_t>(reps));
    counts.reserve(static_cast<size_t>(reps));
    for (long r = 0; r < reps; ++r) {
        RandomStream rng({seed, static_cast<std::uint64_t>(r)});
        if (format == "cycles") {
            const BoltzmannDraw d = sampler.sample(rng);
            sizes.push_back(static_cast<double>(d.size));
            counts.push_back(static_cast<double>(d.cycle_count));
            out << d.permutation.to_cycle_string() << "\n";
        } else if (format == "csv") {
            const BoltzmannDraw d = sampler.sample(rng);
            sizes.push_back(static_cast<double>(d.size));
            counts.push_back(static_cast<double>(d.cycle_count));
            emit_perm_row(out, format, r, d.permutation, d.cycle_count);
        } else {
            const auto [sz, c] = sampler.sample_counts(rng);
            sizes.push_back(static_cast<double>(sz));
            counts.push_back(static_cast<double>(c));
            out << (r ? ",\n" : "") << "    [" << r << "," << sz << "," << c << "]";
        }
    }

    const auto size_sum = summarize(sizes);
    const auto count_sum = summarize(counts);
    json s;
    s["draws"] = reps;
    s["x"] = x;
    if (mu) s["mu"] = *mu;
    s["mean_size"] = size_sum.mean;
    s["se_mean_size"] = size_sum.se_mean;
    s["expected_mean_size"] = moments.mean_size;
    if (size_sum.se_mean > 0)
        s["z_mean_size"] = (size_sum.mean - moments.mean_size) / size_sum.se_mean;
    s["mean_cycle_count"] = count_sum.mean;
    s["var_cycle_count"] = count_sum.variance;
    s["se_mean_cycle_count"] = count_sum.se_mean;
    s["expected_mean_cycle_count"] = moments.mean_cycles;
    if (count_sum.se_mean > 0)
        s["z_mean_cycle_count"] = (count_sum.mean - moments.mean_cycles) / count_sum.se_mean;

    if (format == "json") {
        out << "\n  ],\n  \"summary\": " << s.dump(2) << "\n}\n";
    } else {
        emit_summary(out, format, s);
    }
    return exit_ok;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(long n_max, long reps, std::uint64_t seed, const std::string& out_path) {
    VerifyOptions opt;
    opt.n_max = n_max;
    opt.reps = reps;
    opt.seed = seed;
    const auto results = run_verification(opt);

    long passed = 0;
    json report = json::array();
    for (const auto& r : results) {
        json jr;
        jr["name"] = r.name;
        jr["pass"] = r.pass;
        if (!r.detail.empty()) jr["detail"] = r.detail;
        report.push_back(std::move(jr));
        if (r.pass) ++passed;
        std::cerr << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.pass) std::cerr << "  (" << r.detail << ")";
        std::cerr << "\n";
    }
    std::cerr << passed << "/" << results.size() << " checks passed\n";

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << report.dump(2) << "\n";
    return passed == static_cast<long>(results.size()) ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle-structure statistics and exact samplers for weighted random permutations"};
    app.require_subcommand(1);

    std::string spec, mode = "auto", format = "csv", out_path, method = "crp";
    long n = 0, reps = 1, n_max = 8, verify_reps = 200000;
    double gamma = 0.0, delta = 1.0;
    std::uint64_t seed = 0;
    std::optional<double> limit_sigma, mu, x_flag;

    auto* series = app.add_subcommand("series", "normalization coefficients w(0..n)");
    series->add_option("--weights", spec)->required();
    series->add_option("--n", n)->required();
    series->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "float"}));
    series->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    series->add_option("--out", out_path);

    auto* stats = app.add_subcommand("stats", "per-length and total cycle statistics");
    stats->add_option("--weights", spec)->required();
    stats->add_option("--n", n)->required();
    stats->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "float"}));
    stats->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    stats->add_option("--out", out_path);

    auto* profile = app.add_subcommand("profile", "finite-n bulk profile vs its limit");
    profile->add_option("--weights", spec)->required();
    profile->add_option("--n", n)->required();
    profile->add_option("--gamma", gamma)->required();
    profile->add_option("--delta", delta)->required();
    profile->add_option("--limit-sigma", limit_sigma);
    profile->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "float"}));
    profile->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    profile->add_option("--out", out_path);

    auto* sample = app.add_subcommand("sample", "draw permutations of fixed size n");
    sample->add_option("--weights", spec)->required();
    sample->add_option("--n", n)->required();
    sample->add_option("--method", method)->check(CLI::IsMember({"crp", "exact", "bernoulli"}));
    sample->add_option("--reps", reps);
    sample->add_option("--seed", seed);
    sample->add_option("--format", format)->check(CLI::IsMember({"cycles", "csv", "json"}));
    sample->add_option("--out", out_path);

    auto* boltzmann = app.add_subcommand("boltzmann", "draw from the variable-size measure");
    boltzmann->add_option("--weights", spec)->required();
    boltzmann->add_option("--mu", mu);
    boltzmann->add_option("--x", x_flag);
    boltzmann->add_option("--reps", reps);
    boltzmann->add_option("--seed", seed);
    boltzmann->add_option("--format", format)->check(CLI::IsMember({"cycles", "csv", "json"}));
    boltzmann->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--n-max", n_max);
    verify->add_option("--reps", verify_reps);
    verify->add_option("--seed", seed);
    verify->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (series->parsed()) {
            if (format == "cycles") throw ParseError("series supports csv or json");
            return cmd_series(spec, n, mode, format, out_path);
        }
        if (stats->parsed()) {
            if (format == "cycles") throw ParseError("stats supports csv or json");
            return cmd_stats(spec, n, mode, format, out_path);
        }
        if (profile->parsed()) {
            if (format == "cycles") throw ParseError("profile supports csv or json");
            return cmd_profile(spec, n, gamma, delta, limit_sigma, mode, format, out_path);
        }
        if (sample->parsed()) {
            const std::string f = (format == "csv" && sample->count("--format") == 0)
                                      ? std::string("cycles")
                                      : format;
            return cmd_sample(spec, n, method, reps, seed, f, out_path);
        }
        if (boltzmann->parsed()) {
            const std::string f = (format == "csv" && boltzmann->count("--format") == 0)
                                      ? std::string("cycles")
                                      : format;
            return cmd_boltzmann(spec, mu, x_flag, reps, seed, f, out_path);
        }
        if (verify->parsed()) return cmd_verify(n_max, verify_reps, seed, out_path);
        std::cerr << "no subcommand\n";
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}
