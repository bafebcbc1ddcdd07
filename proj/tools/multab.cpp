// multab: exact counts, constructions and Monte-Carlo estimates for the
// divisor-of-given-degree census over F_q[x] and its symmetric-group twin.
#include "multab/census.hpp"
#include "multab/divstats.hpp"
#include "multab/errors.hpp"
#include "multab/gfpoly.hpp"
#include "multab/partitions.hpp"
#include "multab/primecount.hpp"
#include "multab/realcmp.hpp"
#include "multab/sampler.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using multab::BigInt;
using multab::BigRat;
using nlohmann::ordered_json;

struct GlobalOptions {
    std::string format = "csv"; // csv | json
    std::string output;         // empty = stdout
    unsigned threads = 1;
    uint64_t budget_entries = multab::gfpoly::SpfTable::kDefaultBudget;
    uint32_t partition_cap = 100;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "A", "A:B" or "A:B:STEP", comma-separated atoms; inclusive ranges.
std::vector<uint64_t> parse_range_list(const std::string& text) {
    std::vector<uint64_t> out;
    std::stringstream ss(text);
    std::string atom;
    while (std::getline(ss, atom, ',')) {
        if (atom.empty()) throw UsageError("empty range atom in '" + text + "'");
        uint64_t lo = 0, hi = 0, step = 1;
        const size_t c1 = atom.find(':');
        try {
            if (c1 == std::string::npos) {
                lo = hi = std::stoull(atom);
            } else {
                lo = std::stoull(atom.substr(0, c1));
                const size_t c2 = atom.find(':', c1 + 1);
                if (c2 == std::string::npos) {
                    hi = std::stoull(atom.substr(c1 + 1));
                } else {
                    hi = std::stoull(atom.substr(c1 + 1, c2 - c1 - 1));
                    step = std::stoull(atom.substr(c2 + 1));
                }
            }
        } catch (const std::exception&) {
            throw UsageError("bad range atom '" + atom + "'");
        }
        if (step == 0) throw UsageError("range step must be positive");
        if (hi < lo) throw UsageError("descending range '" + atom + "'");
        for (uint64_t v = lo; v <= hi; v += step) {
            out.push_back(v);
            if (v > hi - step && v != hi) break; // avoid overflow on v += step
        }
    }
    if (out.empty()) throw UsageError("empty list '" + text + "'");
    return out;
}

// b argument: "all", "half", or a range list; resolved per n.
std::vector<uint32_t> resolve_b(const std::string& expr, uint32_t n) {
    std::vector<uint32_t> out;
    if (expr == "all") {
        for (uint32_t b = 0; b <= n; ++b) out.push_back(b);
        return out;
    }
    if (expr == "half") return {n / 2};
    for (uint64_t v : parse_range_list(expr))
        if (v <= n) out.push_back(static_cast<uint32_t>(v));
    return out;
}

void emit(const GlobalOptions& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + g.output + "'");
    f << text;
}

// ---------------------------------------------------------------- count ----

struct CountArgs {
    std::string kind;
    uint64_t q = 0;
    std::string n_expr;
    std::string b_expr = "all";
};

int cmd_count(const GlobalOptions& g, const CountArgs& a) {
    if (a.kind != "H" && a.kind != "T" && a.kind != "M")
        throw UsageError("--kind must be H, T or M");
    const bool needs_q = a.kind != "T";
    if (needs_q && a.q == 0) throw UsageError("--q is required for kind " + a.kind);
    if (!needs_q && a.q != 0) throw UsageError("--q is not accepted for kind T");

    multab::census::CensusOptions opts;
    opts.threads = g.threads;
    opts.partition_cap = g.partition_cap;

    std::vector<multab::census::CountReport> rows;
    for (uint64_t n64 : parse_range_list(a.n_expr)) {
        const uint32_t n = static_cast<uint32_t>(n64);
        if (a.kind == "M") {
            if (n % 2 != 0)
                throw UsageError("kind M requires even degrees in --n");
            rows.push_back(multab::census::count_m(a.q, n, opts));
            continue;
        }
        const std::vector<uint32_t> bs = resolve_b(a.b_expr, n);
        if (bs.empty()) continue;
        auto batch = a.kind == "H"
                         ? multab::census::count_h_reports(a.q, n, bs, opts)
                         : multab::census::count_t_reports(n, bs, opts);
        for (auto& r : batch) rows.push_back(std::move(r));
    }

    std::string out;
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(r.json_row());
        out = arr.dump(2) + "\n";
    } else {
        out = multab::census::CountReport::csv_header() + "\n";
        for (const auto& r : rows) out += r.csv_row() + "\n";
    }
    emit(g, out);
    return 0;
}

// ---------------------------------------------------------------- sample ----

struct SampleArgs {
    std::string kind;
    uint64_t q = 0;
    uint32_t n = 0;
    std::string b_expr = "half";
    uint64_t trials = 100000;
    uint64_t seed = 1;
};

int cmd_sample(const GlobalOptions& g, const SampleArgs& a) {
    if (a.kind != "H" && a.kind != "T") throw UsageError("--kind must be H or T");
    if (a.kind == "H" && a.q == 0) throw UsageError("--q is required for kind H");
    if (a.kind == "T" && a.q != 0) throw UsageError("--q is not accepted for kind T");

    std::vector<multab::sampler::SampleEstimate> rows;
    const std::vector<uint32_t> bs = resolve_b(a.b_expr, a.n);
    if (a.kind == "T") {
        for (uint32_t b : bs)
            rows.push_back(multab::sampler::estimate_t_density(a.n, b, a.trials,
                                                               a.seed, g.threads));
    } else {
        uint64_t base = 0;
        uint32_t expo = 0;
        if (!multab::primecount::is_prime_power(a.q, &base, &expo) || expo != 1)
            throw UsageError("sampling kind H requires prime --q");
        const multab::gfpoly::SpfTable table(static_cast<uint32_t>(a.q), a.n,
                                             g.budget_entries);
        for (uint32_t b : bs)
            rows.push_back(multab::sampler::estimate_h_density(table, a.n, b,
                                                               a.trials, a.seed,
                                                               g.threads));
    }

    std::string out;
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(r.json_row());
        out = arr.dump(2) + "\n";
    } else {
        out = multab::sampler::SampleEstimate::csv_header() + "\n";
        for (const auto& r : rows) out += r.csv_row() + "\n";
    }
    emit(g, out);
    return 0;
}

// ------------------------------------------------------------------ fit ----

struct FitArgs {
    std::string kind = "H";
    uint64_t q = 0;
    std::string n_expr;
    std::string b_expr = "half";
    bool gnuplot = false;
};

int cmd_fit(const GlobalOptions& g, const FitArgs& a) {
    if (a.kind != "H" && a.kind != "T") throw UsageError("--kind must be H or T");
    if (a.kind == "H" && a.q == 0) throw UsageError("--q is required for kind H");
    if (a.kind == "T" && a.q != 0) throw UsageError("--q is not accepted for kind T");

    multab::census::CensusOptions opts;
    opts.threads = g.threads;
    opts.partition_cap = g.partition_cap;

    std::vector<multab::census::CountReport> rows;
    for (uint64_t n64 : parse_range_list(a.n_expr)) {
        const uint32_t n = static_cast<uint32_t>(n64);
        const std::vector<uint32_t> bs = resolve_b(a.b_expr, n);
        if (bs.empty()) continue;
        auto batch = a.kind == "H"
                         ? multab::census::count_h_reports(a.q, n, bs, opts)
                         : multab::census::count_t_reports(n, bs, opts);
        for (auto& r : batch) rows.push_back(std::move(r));
    }

    const std::string delta = multab::census::AsymptoticParams::delta_decimal(6);
    std::string out;
    if (g.format == "json") {
        ordered_json doc;
        doc["delta"] = delta;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["n"] = r.n;
            row["b"] = r.b;
            row["count"] = r.count.get_str();
            row["predicted"] = std::isnan(r.predicted) ? ordered_json(nullptr)
                                                       : ordered_json(r.predicted);
            row["ratio"] = std::isnan(r.ratio) ? ordered_json(nullptr)
                                               : ordered_json(r.ratio);
            arr.push_back(row);
        }
        doc["rows"] = arr;
        out = doc.dump(2) + "\n";
    } else if (a.gnuplot) {
        out = "# delta = " + delta + "\n# n b count predicted ratio\n";
        for (const auto& r : rows) {
            out += std::to_string(r.n) + " " + std::to_string(r.b) + " " +
                   r.count.get_str() + " " + multab::format_g15(r.predicted) + " " +
                   multab::format_g15(r.ratio) + "\n";
        }
    } else {
        out = "# delta = " + delta + "\nn,b,count,predicted,ratio\n";
        for (const auto& r : rows) {
            out += std::to_string(r.n) + "," + std::to_string(r.b) + "," +
                   r.count.get_str() + "," + multab::format_g15(r.predicted) + "," +
                   multab::format_g15(r.ratio) + "\n";
        }
    }
    emit(g, out);
    return 0;
}

// ------------------------------------------------------------ construct ----

struct ConstructArgs {
    uint64_t q = 2;
    uint32_t intervals = 0;
    uint64_t family_b = 0;
    uint32_t family_m = 0;
};

int cmd_construct(const GlobalOptions& g, const ConstructArgs& a) {
    if (a.intervals == 0 && a.family_b == 0)
        throw UsageError("construct: give --intervals J and/or --family-b B --family-m M");
    ordered_json doc;
    std::string text;

    if (a.intervals > 0) {
        const auto iv = multab::primecount::build_degree_intervals(a.q, a.intervals);
        if (g.format == "json") {
            ordered_json arr = ordered_json::array();
            for (size_t j = 0; j < iv.intervals.size(); ++j) {
                const auto& d = iv.intervals[j];
                ordered_json row;
                row["j"] = j + 1;
                row["lo"] = d.lo;
                row["hi"] = d.hi;
                row["overflow"] = d.overflow;
                row["mass_lo"] = d.mass_lo;
                row["mass_hi"] = d.mass_hi;
                if (d.exact) row["mass_exact"] = d.exact_mass.get_str();
                else row["mass_exact"] = nullptr;
                arr.push_back(row);
            }
            doc["q"] = a.q;
            doc["intervals"] = arr;
        } else {
            text += "j,lo,hi,overflow,mass_lo,mass_hi,mass_exact\n";
            for (size_t j = 0; j < iv.intervals.size(); ++j) {
                const auto& d = iv.intervals[j];
                text += std::to_string(j + 1) + "," + std::to_string(d.lo) + "," +
                        std::to_string(d.hi) + "," + (d.overflow ? "1" : "0") + "," +
                        multab::format_g15(d.mass_lo) + "," +
                        multab::format_g15(d.mass_hi) + "," +
                        (d.exact ? d.exact_mass.get_str() : std::string()) + "\n";
            }
        }
    }

    if (a.family_b > 0) {
        if (a.family_m == 0) throw UsageError("--family-m is required with --family-b");
        const auto fam =
            multab::divstats::build_lower_bound_family(a.q, a.family_b, a.family_m);
        if (g.format == "json") {
            ordered_json f;
            f["q"] = a.q;
            f["b"] = a.family_b;
            f["m"] = fam.m_param;
            f["k"] = fam.k;
            f["j_count"] = fam.j_count;
            f["boundaries"] = fam.boundaries;
            f["family_size"] = fam.family_size;
            f["min_f"] = fam.min_f.get_str();
            f["weight_sum"] = multab::to_double(fam.weight_sum);
            f["degree_cap_ok"] = fam.degree_cap_ok;
            f["ratio_vs_stirling"] = fam.ratio_vs_stirling;
            f["ratio_vs_k32"] = fam.ratio_vs_k32;
            doc["family"] = f;
        } else {
            text += "family\n";
            text += "q," + std::to_string(a.q) + "\n";
            text += "b," + std::to_string(a.family_b) + "\n";
            text += "m," + std::to_string(fam.m_param) + "\n";
            text += "k," + std::to_string(fam.k) + "\n";
            text += "j_count," + std::to_string(fam.j_count) + "\n";
            text += "family_size," + std::to_string(fam.family_size) + "\n";
            text += "min_f," + fam.min_f.get_str() + "\n";
            text += "weight_sum," + multab::format_g15(multab::to_double(fam.weight_sum)) + "\n";
            text += std::string("degree_cap_ok,") + (fam.degree_cap_ok ? "1" : "0") + "\n";
            text += "ratio_vs_stirling," + multab::format_g15(fam.ratio_vs_stirling) + "\n";
            text += "ratio_vs_k32," + multab::format_g15(fam.ratio_vs_k32) + "\n";
        }
    }

    emit(g, g.format == "json" ? doc.dump(2) + "\n" : text);
    return 0;
}

// --------------------------------------------------------------- verify ----

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void run_verify_partitions(std::vector<Check>& out) {
    using namespace multab::partitions;
    {
        bool ok = true;
        std::string detail;
        for (uint32_t n = 0; n <= 26 && ok; ++n) {
            uint64_t cnt = 0;
            for_each_partition(n, [&](const Partition&) { ++cnt; });
            if (BigInt(static_cast<unsigned long>(cnt)) != count_partitions(n)) {
                ok = false;
                detail = "mismatch at n = " + std::to_string(n);
            }
        }
        out.push_back({"partitions.enumeration_matches_recurrence", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint32_t n = 1; n <= 18 && ok; ++n) {
            BigRat total(0);
            BigInt classes(0);
            for_each_partition(n, [&](const Partition& lam) {
                total += cycle_type_probability(lam);
                classes += conjugacy_class_size(lam);
            });
            if (total != 1 || classes != multab::factorial(n)) {
                ok = false;
                detail = "totals wrong at n = " + std::to_string(n);
            }
        }
        out.push_back({"partitions.cycle_type_law_sums_to_one", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for_each_partition(14, [&](const Partition& lam) {
            if (!ok) return;
            const auto prof = subset_sum_profile(lam);
            const uint64_t n = lam.sum();
            if (!prof.reachable.test(0) || !prof.reachable.test(n)) ok = false;
            for (uint64_t b = 0; b <= n && ok; ++b) {
                if (prof.reachable.test(b) != prof.reachable.test(n - b)) ok = false;
                if (prof.reachable.test(b) != has_subpartition(lam, b)) ok = false;
            }
            if (!ok) detail = "profile inconsistent for " + lam.to_string();
        });
        out.push_back({"partitions.subset_sums_symmetric", ok, detail});
    }
}

void run_verify_gfpoly(std::vector<Check>& out) {
    using namespace multab::gfpoly;
    for (uint32_t p : {2u, 3u}) {
        const uint32_t N = p == 2 ? 10 : 7;
        SpfTable table(p, N);
        {
            bool ok = true;
            std::string detail;
            for (uint32_t d = 1; d <= N && ok; ++d) {
                if (BigInt(static_cast<unsigned long>(table.prime_count(d))) !=
                    multab::primecount::prime_poly_count(p, d)) {
                    ok = false;
                    detail = "p=" + std::to_string(p) + " d=" + std::to_string(d);
                }
            }
            out.push_back({"gfpoly.sieve_prime_counts_match_formula_p" + std::to_string(p),
                           ok, detail});
        }
        {
            // sum of mobius over all monic degree-n F is -q at n=1, 0 beyond
            bool ok = true;
            std::string detail;
            for (uint32_t n = 1; n <= N && ok; ++n) {
                int64_t acc = 0;
                uint64_t total = 1;
                for (uint32_t i = 0; i < n; ++i) total *= p;
                for (uint64_t r = 0; r < total; ++r)
                    acc += factorize(unrank(p, n, r), table).mobius();
                const int64_t expect = n == 1 ? -int64_t(p) : 0;
                if (acc != expect) {
                    ok = false;
                    detail = "p=" + std::to_string(p) + " n=" + std::to_string(n);
                }
            }
            out.push_back({"gfpoly.mobius_cancels_p" + std::to_string(p), ok, detail});
        }
    }
    {
        bool ok = true;
        std::string detail;
        SpfTable table(2, 12);
        for (uint64_t r = 0; r < 4096 && ok; ++r) {
            const MonicPoly f = unrank(2, 12, r);
            const auto fact = factorize(f, table);
            MonicPoly prod = one(2);
            for (const auto& t : fact.terms)
                for (uint32_t i = 0; i < t.multiplicity; ++i)
                    prod = poly_mul(prod, unrank(2, t.degree, t.rank));
            if (!(prod == f)) {
                ok = false;
                detail = "rank " + std::to_string(r);
            }
        }
        out.push_back({"gfpoly.factorization_reproduces_product", ok, detail});
    }
}

void run_verify_primecount(std::vector<Check>& out) {
    using namespace multab::primecount;
    {
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3, 4, 5, 9}) {
            for (uint32_t d = 1; d <= 12 && ok; ++d) {
                BigInt gauss = 0;
                for (uint32_t e = 1; e <= d; ++e)
                    if (d % e == 0) gauss += BigInt(e) * prime_poly_count(q, e);
                if (gauss != multab::pow_big(q, d)) {
                    ok = false;
                    detail = "q=" + std::to_string(q) + " d=" + std::to_string(d);
                }
            }
        }
        out.push_back({"primecount.gauss_identity", ok, detail});
    }
    {
        // |d*count(d) - q^d| <= 2 q^{ceil(d/2)}   (exact integer form)
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3, 5}) {
            for (uint32_t d = 1; d <= 24 && ok; ++d) {
                BigInt diff = BigInt(d) * prime_poly_count(q, d) - multab::pow_big(q, d);
                if (sgn(diff) < 0) diff = -diff;
                if (diff > 2 * multab::pow_big(q, (d + 1) / 2)) {
                    ok = false;
                    detail = "q=" + std::to_string(q) + " d=" + std::to_string(d);
                }
            }
        }
        out.push_back({"primecount.envelope_bound", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3, 5, 8}) {
            const auto iv = build_degree_intervals(q, 6);
            if (!(iv.intervals.front().lo == 1 && iv.intervals.front().hi == 1 &&
                  iv.intervals.front().overflow && iv.intervals.front().exact &&
                  iv.intervals.front().exact_mass == 1)) {
                ok = false;
                detail = "first interval wrong for q=" + std::to_string(q);
            }
            for (size_t j = 0; j + 1 < iv.intervals.size() && ok; ++j)
                if (iv.intervals[j + 1].lo != iv.intervals[j].hi + 1) {
                    ok = false;
                    detail = "gap after interval " + std::to_string(j + 1);
                }
        }
        out.push_back({"primecount.intervals_tile_and_first_is_forced", ok, detail});
    }
}

void run_verify_census(std::vector<Check>& out) {
    using namespace multab::census;
    {
        bool ok = true;
        std::string detail;
        for (uint32_t n = 1; n <= 8 && ok; ++n) {
            const auto brute = brute_h_all(multab::gfpoly::SpfTable(2, n), n);
            const auto counts = count_h_many(
                2, n, [&] {
                    std::vector<uint32_t> bs;
                    for (uint32_t b = 0; b <= n; ++b) bs.push_back(b);
                    return bs;
                }());
            for (uint32_t b = 0; b <= n && ok; ++b)
                if (brute[b] != counts[b]) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " b=" + std::to_string(b);
                }
        }
        out.push_back({"census.count_h_matches_brute_force_q2", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint32_t n = 1; n <= 7 && ok; ++n) {
            const auto brute = brute_t_all(n);
            for (uint32_t b = 0; b <= n && ok; ++b)
                if (brute[b] != count_t(n, b).count) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " b=" + std::to_string(b);
                }
        }
        out.push_back({"census.count_t_matches_brute_force", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3, 4}) {
            for (uint32_t n = 1; n <= 12 && ok; ++n) {
                for (uint32_t b = 0; b <= n && ok; ++b) {
                    const BigInt lhs = count_h(q, n, b).count;
                    if (lhs != count_h(q, n, n - b).count) {
                        ok = false;
                        detail = "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                 " b=" + std::to_string(b);
                    }
                    if (b == 0 && lhs != multab::pow_big(q, n)) {
                        ok = false;
                        detail = "b = 0 must count everything";
                    }
                }
            }
        }
        out.push_back({"census.symmetry_and_degenerate_b", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3}) {
            multab::gfpoly::SpfTable table(static_cast<uint32_t>(q), 9);
            for (uint32_t n = 1; n <= 9 && ok; ++n) {
                if (brute_squarefull(table, n) != count_squarefull(q, n)) {
                    ok = false;
                    detail = "squarefull q=" + std::to_string(q) + " n=" + std::to_string(n);
                }
                const auto rough = brute_rough_all(table, n);
                for (uint32_t d = 1; d <= n && ok; ++d)
                    if (rough[d] != count_rough(q, n, d)) {
                        ok = false;
                        detail = "rough q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                 " d=" + std::to_string(d);
                    }
            }
        }
        out.push_back({"census.rough_and_squarefull_match_brute_force", ok, detail});
    }
}

void run_verify_divstats(std::vector<Check>& out) {
    using namespace multab::divstats;
    {
        const auto cl = clustering_squarefree({1, 1});
        const bool ok = cl.distinct_degrees == 3 && cl.tau == 4 &&
                        cl.equal_degree_pairs == 6 && cl.tau_by_degree[1] == 2;
        out.push_back({"divstats.two_linear_primes_profile", ok, ""});
    }
    {
        bool ok = true;
        std::string detail;
        multab::gfpoly::SpfTable table(2, 10);
        for (uint64_t r = 0; r < 1024 && ok; ++r) {
            const auto rep =
                check_l_bounds(factorize(multab::gfpoly::unrank(2, 10, r), table));
            if (!rep.pass) {
                ok = false;
                detail = "violation at rank " + std::to_string(r) + ": " + rep.violation;
            }
        }
        out.push_back({"divstats.l_bounds_hold_degree10_q2", ok, detail});
    }
    {
        // Cauchy-Schwarz: (sum tau)^2 <= (sum L)(sum W) over squarefree A
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3}) {
            multab::primecount::PrimeCountSeq seq(q, 8);
            SquarefreeSumConstraints c;
            c.max_total_degree = 8;
            c.max_prime_degree = 8;
            const auto sums = sum_lwt_squarefree(seq, c);
            if (sums.tau_sum * sums.tau_sum > sums.l_sum * sums.w_sum) {
                ok = false;
                detail = "q=" + std::to_string(q);
            }
        }
        out.push_back({"divstats.cauchy_schwarz_l_w_tau", ok, detail});
    }
}

void run_verify_sampler(std::vector<Check>& out) {
    using namespace multab::sampler;
    {
        const auto a = estimate_t_density(20, 10, 20000, 42, 1);
        const auto b = estimate_t_density(20, 10, 20000, 42, 4);
        const bool ok = a.hits == b.hits;
        out.push_back({"sampler.thread_count_invariance", ok,
                       ok ? "" : "hit counts differ"});
    }
    {
        const auto exact = multab::census::count_t(12, 6);
        const auto est = estimate_t_density(12, 6, 200000, 7, 1);
        const bool ok = est.ci_low <= exact.density && exact.density <= est.ci_high;
        out.push_back({"sampler.confidence_interval_covers_exact_density", ok,
                       ok ? "" : "exact density outside 95% interval"});
    }
}

void run_verify_estimates(std::vector<Check>& out) {
    {
        // |sum_{d1 < deg P <= d2} 1/|P| - log(d2/d1)| <= 2/d1
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3, 5}) {
            for (uint32_t d1 : {2u, 5u, 10u}) {
                const uint32_t d2 = 4 * d1;
                const BigRat s = multab::primecount::inverse_prime_sum(q, d1 + 1, d2);
                BigRat margin(2, d1);
                margin.canonicalize();
                BigRat arg(d2, d1);
                arg.canonicalize();
                if (multab::realcmp::cmp_with_log(s + margin, arg) < 0 ||
                    multab::realcmp::cmp_with_log(s - margin, arg) > 0) {
                    ok = false;
                    detail = "q=" + std::to_string(q) + " d1=" + std::to_string(d1);
                }
            }
        }
        out.push_back({"estimates.inverse_prime_sum_tracks_log", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (uint64_t q : {2, 3}) {
            const BigRat tail = multab::census::squarefull_tail_upper(q, 10);
            BigRat partial(0);
            for (uint32_t n = 10; n <= 40; ++n) {
                BigRat term(multab::census::count_squarefull(q, n),
                            multab::pow_big(q, n));
                term.canonicalize();
                partial += term;
            }
            if (partial > tail) {
                ok = false;
                detail = "q=" + std::to_string(q);
            }
        }
        out.push_back({"estimates.squarefull_tail_dominates_partial_sums", ok, detail});
    }
}

int cmd_verify(const GlobalOptions& g, const std::string& scope) {
    std::vector<Check> checks;
    const bool all = scope == "all";
    if (all || scope == "partitions") run_verify_partitions(checks);
    if (all || scope == "gfpoly") run_verify_gfpoly(checks);
    if (all || scope == "primecount") run_verify_primecount(checks);
    if (all || scope == "census") run_verify_census(checks);
    if (all || scope == "divstats") run_verify_divstats(checks);
    if (all || scope == "sampler") run_verify_sampler(checks);
    if (all || scope == "estimates") run_verify_estimates(checks);
    if (checks.empty()) throw UsageError("unknown verify scope '" + scope + "'");

    size_t failed = 0;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        if (!c.pass) ++failed;
        ordered_json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(j);
    }
    ordered_json doc;
    doc["scope"] = scope;
    doc["total"] = checks.size();
    doc["failed"] = failed;
    doc["checks"] = arr;
    emit(g, doc.dump(2) + "\n");
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    GlobalOptions g;
    if (const char* env = std::getenv("MULTAB_BUDGET_ENTRIES"))
        g.budget_entries = std::strtoull(env, nullptr, 10);

    CLI::App app{"exact counting and sampling for divisor-degree censuses"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", g.output, "write output to this file");
    app.add_option("--threads", g.threads, "worker threads (results are identical)")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--budget-entries", g.budget_entries,
                   "max smallest-prime-factor table entries");
    app.add_option("--partition-cap", g.partition_cap,
                   "refuse exact censuses beyond this n");

    CountArgs ca;
    auto* count = app.add_subcommand("count", "exact |H|, |T| or |M| counts");
    count->add_option("--kind", ca.kind, "H, T or M")->required();
    count->add_option("--q", ca.q, "field size (prime power), kinds H and M");
    count->add_option("--n", ca.n_expr, "degree(s): N, A:B, A:B:S or comma list")
        ->required();
    count->add_option("--b", ca.b_expr, "divisor degree(s): range list, 'all' or 'half'");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Monte-Carlo density estimates");
    sample->add_option("--kind", sa.kind, "H or T")->required();
    sample->add_option("--q", sa.q, "field size (prime), kind H");
    sample->add_option("--n", sa.n, "degree / permutation size")->required();
    sample->add_option("--b", sa.b_expr, "divisor degree(s), 'all' or 'half'");
    sample->add_option("--trials", sa.trials, "number of trials");
    sample->add_option("--seed", sa.seed, "stream seed");

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "counts against the predicted power law");
    fit->add_option("--kind", fa.kind, "H or T");
    fit->add_option("--q", fa.q, "field size (prime power), kind H");
    fit->add_option("--n", fa.n_expr, "degree(s)")->required();
    fit->add_option("--b", fa.b_expr, "divisor degree(s), 'all' or 'half'");
    fit->add_flag("--gnuplot", fa.gnuplot, "space-separated output");

    ConstructArgs xa;
    auto* construct =
        app.add_subcommand("construct", "degree intervals and lower-bound family");
    construct->add_option("--q", xa.q, "field size (prime power)");
    construct->add_option("--intervals", xa.intervals, "number of degree intervals");
    construct->add_option("--family-b", xa.family_b, "family parameter b");
    construct->add_option("--family-m", xa.family_m, "family parameter M");

    std::string scope = "all";
    auto* verify = app.add_subcommand("verify", "run named self-checks");
    verify->add_option("--scope", scope,
                       "all, partitions, gfpoly, primecount, census, divstats, "
                       "sampler or estimates");

    for (auto* sub : {count, sample, fit, construct, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) return cmd_count(g, ca);
        if (sample->parsed()) return cmd_sample(g, sa);
        if (fit->parsed()) return cmd_fit(g, fa);
        if (construct->parsed()) return cmd_construct(g, xa);
        if (verify->parsed()) return cmd_verify(g, scope);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const multab::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
