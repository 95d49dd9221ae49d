#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "claims.hpp"
#include "cumulants.hpp"
#include "delaunay2d.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "exactlaw.hpp"
#include "identities.hpp"
#include "parallel.hpp"
#include "provenance.hpp"
#include "report_io.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "specfun.hpp"

namespace pdlab::cli
{
using io::json;
using io::Table;

namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int domain = 2;
inline constexpr int convergence = 3;
inline constexpr int claims_failed = 4;  //!< `report` ran but some claim failed
}  // namespace exit_code

enum class Format
{
    json,
    csv
};

//! Parse a 64-bit seed in decimal or 0x-hex, allowing '_' digit separators.
inline std::uint64_t parse_seed(std::string text)
{
    std::erase(text, '_');
    require(!text.empty(), "seed: empty value");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try
    {
        v = std::stoull(text, &pos, 0);
    }
    catch (std::exception const&)
    {
        throw DomainError("seed: cannot parse '" + text + "'");
    }
    require(pos == text.size(), "seed: trailing characters in '" + text + "'");
    return v;
}

inline std::string seed_hex(std::uint64_t s)
{
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << s;
    return os.str();
}

//! Everything that determines a run's output.
struct RunConfig
{
    std::string subcommand;
    std::optional<ModelParams> params;
    std::optional<std::vector<int>> sweep;
    std::uint64_t seed = kDefaultSeed;
    int jobs = 1;
    Format format = Format::json;
    std::string output_path;  //!< empty writes to standard output
    json options = json::object();

    void validate() const
    {
        require(!subcommand.empty(), "config: missing subcommand");
        if (params)
            params->validate();
        if (sweep)
        {
            require(!sweep->empty(), "config: empty sweep");
            for (int n : *sweep)
                require(n >= 2, "config: sweep values must be integers >= 2");
        }
        require(jobs >= 1 && jobs <= 1024, "config: jobs must be in [1, 1024]");
    }

    // jobs and output location do not change results and are left out
    json to_json() const
    {
        json j = json::object();
        j["subcommand"] = subcommand;
        if (params)
            j["params"] = {{"n", params->n}, {"mu", params->mu}, {"gamma", params->gamma}};
        if (sweep)
            j["sweep"] = *sweep;
        j["seed"] = seed_hex(seed);
        j["output_format"] = format == Format::json ? "json" : "csv";
        j["options"] = options;
        return j;
    }
};

//! Result of a subcommand before serialization.
struct Output
{
    Table table{{"provenance"}};
    std::optional<json> results;  //!< replaces the table rows in JSON form
    int exit = exit_code::ok;
};

namespace detail
{
inline std::vector<int> to_int_sweep(std::vector<double> const& v)
{
    std::vector<int> out;
    for (double x : v)
    {
        require(x >= 2 && x <= 1e9 && x == std::floor(x), "sweep: values must be integers >= 2");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

inline json row_params(ModelParams const& p)
{
    return {{"n", p.n}, {"mu", p.mu}, {"gamma", p.gamma}};
}

inline char const* prov(Provenance p)
{
    return to_string(p);
}

inline std::string complex_input(double re, double im)
{
    return "x=" + io::format_number(re) + (im != 0 ? ",im=" + io::format_number(im) : "");
}
}  // namespace detail

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//
struct SpecfunArgs
{
    std::string function = "log_gamma";
    double x = 0.5;
    double im = 0;
    int order = 1;
    double a = 1;
};

inline Output run_specfun(SpecfunArgs const& a)
{
    Output out{Table({"function", "input", "value", "value_im", "provenance"})};
    std::string input = detail::complex_input(a.x, a.im);
    json value_im = nullptr;
    double value = 0;
    using namespace specfun;
    auto const& f = a.function;
    if (f == "log_gamma")
    {
        if (a.im != 0)
        {
            cplx v = log_gamma(cplx(a.x, a.im));
            value = v.real();
            value_im = v.imag();
        }
        else
            value = log_gamma(a.x);
    }
    else if (f == "digamma")
        value = digamma(a.x);
    else if (f == "polygamma")
    {
        value = polygamma(a.order, a.x);
        input += ",m=" + std::to_string(a.order);
    }
    else if (f == "log_barnes_g")
        value = log_barnes_g(a.x);
    else if (f == "log_barnes_g_shift_asymptotic")
    {
        value = log_barnes_g_shift_asymptotic(a.x, a.a);
        input += ",a=" + io::format_number(a.a);
    }
    else if (f == "log_barnes_g_ratio")
    {
        value = log_barnes_g_ratio(a.x, a.a);
        input += ",a=" + io::format_number(a.a);
    }
    else if (f == "reg_lower_incomplete_gamma")
    {
        value = reg_lower_incomplete_gamma(a.a, a.x);
        input += ",a=" + io::format_number(a.a);
    }
    else if (f == "log_unit_ball_volume")
    {
        require(a.x == std::floor(a.x), "log_unit_ball_volume: x must be an integer dimension");
        value = log_unit_ball_volume(static_cast<int>(a.x));
    }
    else
        throw DomainError("specfun: unknown function " + f);
    out.table.add({f, input, value, value_im, detail::prov(Provenance::closed_form)});
    return out;
}

inline Output run_moments(ModelParams const& p, std::vector<double> const& s_values)
{
    Output out{Table({"n", "mu", "gamma", "s", "value", "log_value", "provenance"})};
    for (double s : s_values)
    {
        double lv = log_moment(p, s);
        out.table.add({p.n, p.mu, p.gamma, s, std::exp(lv), lv, detail::prov(Provenance::closed_form)});
    }
    return out;
}

inline Output run_cgf(ModelParams const& p, double re, double im, bool extended)
{
    Output out{Table({"n", "mu", "gamma", "re", "im", "strip", "value_re", "value_im", "provenance"})};
    auto strip = extended ? CgfStrip::extended : CgfStrip::moments;
    cplx v = cgf(p, cplx(re, im), strip);
    out.table.add({p.n, p.mu, p.gamma, re, im, extended ? "extended" : "moments", v.real(), v.imag(),
                   detail::prov(Provenance::closed_form)});
    return out;
}

inline Output run_identities(std::vector<double> const& as, std::vector<int> const& ks,
                             std::vector<int> const& ms)
{
    using namespace identities;
    Output out{Table({"a", "k", "m", "proposition", "lhs", "rhs", "abs_diff", "holds", "provenance"})};
    char const* cf = detail::prov(Provenance::closed_form);
    for (double a : as)
    {
        for (int k : ks)
        {
            SumParams{a, k, 2}.validate();
            double dl = digamma_sum_direct(a, k), dr = digamma_sum_closed(a, k);
            out.table.add({a, k, nullptr, "digamma-sum", dl, dr, std::abs(dl - dr),
                           relative_match(dl, dr, 1e-9), cf});
            double tl = trigamma_sum_direct(a, k), tr = trigamma_sum_closed(a, k);
            out.table.add({a, k, nullptr, "trigamma-sum", tl, tr, std::abs(tl - tr),
                           relative_match(tl, tr, 1e-9), cf});
            for (int m : ms)
            {
                auto b = polygamma_sum_bound_check(a, k, m);
                out.table.add({a, k, m, "polygamma-sum-bound", b.lhs_abs, b.bound,
                               b.bound - b.lhs_abs, b.holds, cf});
            }
        }
    }
    // offset diagnostic: closed minus direct by parity of k
    for (auto const& o : digamma_sum_offsets(as, ks))
    {
        if (o.count == 0)
            continue;
        out.table.add({nullptr, nullptr, nullptr,
                       o.parity ? "digamma-sum-offset-odd-k" : "digamma-sum-offset-even-k",
                       o.mean_offset, 0.0, o.max_deviation, !o.systematic, cf});
    }
    return out;
}

inline Output run_cumulants(ModelParams const& p, int max_order)
{
    Output out{Table({"n", "mu", "gamma", "m", "quantity", "value", "provenance"})};
    auto rep = cumulant_report(p, max_order);
    for (auto const& o : rep.orders)
    {
        out.table.add({p.n, p.mu, p.gamma, o.m, "exact", o.exact, detail::prov(Provenance::closed_form)});
        out.table.add({p.n, p.mu, p.gamma, o.m, "oracle", o.oracle, detail::prov(Provenance::oracle_fd)});
        out.table.add({p.n, p.mu, p.gamma, o.m, "abs_diff", o.abs_diff, detail::prov(Provenance::oracle_fd)});
        if (o.m == 1)
            out.table.add({p.n, p.mu, p.gamma, 1, "expansion", mean_expansion(p),
                           detail::prov(Provenance::closed_form)});
        if (o.m == 2)
            out.table.add({p.n, p.mu, p.gamma, 2, "expansion", variance_expansion(p),
                           detail::prov(Provenance::closed_form)});
        if (o.m >= 3)
            out.table.add({p.n, p.mu, p.gamma, o.m, "bound", cumulant_bound(p, o.m),
                           detail::prov(Provenance::closed_form)});
    }
    return out;
}

inline RegimeTag parse_regime(std::string const& s)
{
    for (auto t : {RegimeTag::R1_fixed_mu, RegimeTag::R2_mu_pow, RegimeTag::R3_n_minus_mu_small,
                   RegimeTag::R4_mu_linear, RegimeTag::F1_fixed_n_mu_large, RegimeTag::F2_n_pow_of_mu})
    {
        std::string name = to_string(t);
        if (s == name || s == name.substr(0, 2))
            return t;
    }
    throw DomainError("regimes: unknown regime " + s);
}

inline Output run_regimes(std::vector<std::string> const& names, std::optional<double> alpha,
                          std::optional<double> fixed, std::vector<double> const& drivers,
                          double gamma)
{
    Output out{Table({"regime", "driver", "n", "mu", "exact_var", "predicted_var", "ratio", "provenance"})};
    std::vector<std::string> list = names;
    if (list.empty() || (list.size() == 1 && list[0] == "all"))
        list = {"R1", "R2", "R3", "R4", "F1", "F2"};
    for (auto const& name : list)
    {
        RegimeSpec spec;
        spec.tag = parse_regime(name);
        if (spec.needs_alpha())
            spec.alpha = alpha.value_or(spec.tag == RegimeTag::R4_mu_linear ? 1.0 : 0.5);
        if (spec.tag == RegimeTag::R1_fixed_mu)
            spec.fixed = fixed.value_or(-1);
        if (spec.tag == RegimeTag::F1_fixed_n_mu_large)
            spec.fixed = fixed.value_or(3);
        for (double d : drivers)
        {
            ModelParams p = spec.params_at(d, gamma);
            double ex = cumulant_exact(p, 2);
            double pr = regime_expansion(spec, d, gamma).second;
            out.table.add({to_string(spec.tag), d, p.n, p.mu, ex, pr, ex / pr,
                           detail::prov(Provenance::closed_form)});
        }
    }
    return out;
}

inline Table distribution_table()
{
    return Table({"n", "mu", "gamma", "arg", "quantity", "value", "variant", "provenance"});
}

inline Output run_cdf(std::vector<int> const& ns, double mu, double gamma, std::vector<double> const& xs,
                      int jobs)
{
    Output out{distribution_table()};
    std::vector<std::vector<std::pair<double, double>>> vals(ns.size());
    parallel_for(ns.size(), jobs, [&](std::size_t i) {
        auto law = StandardizedLaw::of(ModelParams::make(ns[i], mu, gamma));
        auto inv = standardized_inverter(law);
        for (double x : xs)
            vals[i].emplace_back(inv.cdf(x), inv.error_estimate(x));
    });
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
        {
            out.table.add({ns[i], mu, gamma, xs[j], "standardized_cdf", vals[i][j].first, nullptr,
                           detail::prov(Provenance::closed_form)});
            out.table.add({ns[i], mu, gamma, xs[j], "quadrature_error", vals[i][j].second, nullptr,
                           detail::prov(Provenance::closed_form)});
        }
    return out;
}

inline Output run_berry_esseen(std::vector<int> const& ns, double mu, double gamma, int jobs)
{
    Output out{distribution_table()};
    std::vector<double> d(ns.size());
    parallel_for(ns.size(), jobs, [&](std::size_t i) {
        d[i] = kolmogorov_distance_to_normal(ModelParams::make(ns[i], mu, gamma));
    });
    double c = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        double scaled = d[i] * std::sqrt(std::log(double(ns[i])));
        c = std::max(c, scaled);
        out.table.add({ns[i], mu, gamma, nullptr, "kolmogorov_distance", d[i], nullptr,
                       detail::prov(Provenance::closed_form)});
        out.table.add({ns[i], mu, gamma, nullptr, "distance_times_sqrt_log_n", scaled, nullptr,
                       detail::prov(Provenance::closed_form)});
    }
    // smallest c with d_n <= c / sqrt(log n) on the sweep
    out.table.add({nullptr, mu, gamma, nullptr, "bound_constant", c, nullptr,
                   detail::prov(Provenance::fitted)});
    return out;
}

inline std::vector<CenteringVariant> parse_variants(std::string const& v)
{
    if (v == "both")
        return {CenteringVariant::ldp, CenteringVariant::modphi};
    if (v == "ldp")
        return {CenteringVariant::ldp};
    if (v == "modphi")
        return {CenteringVariant::modphi};
    throw DomainError("unknown centering variant " + v);
}

inline Output run_ldp(std::vector<int> const& ns, double mu, double gamma, std::vector<double> const& ts,
                      std::string const& variant)
{
    Output out{distribution_table()};
    for (int n : ns)
    {
        ModelParams p = ModelParams::make(n, mu, gamma);
        for (auto v : parse_variants(variant))
        {
            out.table.add({n, mu, gamma, nullptr, "centering", centering(v, p), to_string(v),
                           detail::prov(Provenance::closed_form)});
            for (double t : ts)
                out.table.add({n, mu, gamma, t, "scaled_cgf", ldp_scaled_cgf(p, t, v), to_string(v),
                               detail::prov(Provenance::closed_form)});
        }
        for (double t : ts)
            out.table.add({n, mu, gamma, t, "rate_limit", 0.5 * t * t, nullptr,
                           detail::prov(Provenance::closed_form)});
    }
    return out;
}

inline Output run_modphi(std::vector<int> const& ns, double mu, double gamma, std::vector<double> const& zs)
{
    Output out{distribution_table()};
    char const* var = to_string(CenteringVariant::modphi);
    for (double z : zs)
        out.table.add({nullptr, mu, gamma, z, "limiting_psi", limiting_psi(mu, z), nullptr,
                       detail::prov(Provenance::closed_form)});
    for (int n : ns)
    {
        ModelParams p = ModelParams::make(n, mu, gamma);
        for (double z : zs)
        {
            out.table.add({n, mu, gamma, z, "residual", mod_gaussian_residual(p, z), var,
                           detail::prov(Provenance::closed_form)});
            out.table.add({n, mu, gamma, z, "log_defect", mod_gaussian_log_defect(p, z), var,
                           detail::prov(Provenance::closed_form)});
        }
    }
    return out;
}

inline Output run_sample(ModelParams const& p, std::string const& kind, std::size_t count,
                         std::uint64_t seed, int streams, int jobs)
{
    require(count >= 1 && count <= 100'000'000, "sample: count must be in [1, 1e8]");
    require(streams >= 1 && streams <= 65536, "sample: streams must be in [1, 65536]");
    char const* mc = detail::prov(Provenance::monte_carlo);
    if (kind == "identity")
    {
        Output out{Table({"n", "mu", "gamma", "count", "statistic", "p_value", "provenance"})};
        auto ks = check_product_identity(p, count, seed, streams, jobs);
        out.table.add({p.n, p.mu, p.gamma, count, ks.statistic, ks.p_value, mc});
        return out;
    }
    if (kind == "radius-ks")
    {
        Output out{Table({"n", "mu", "gamma", "count", "statistic", "p_value", "provenance"})};
        auto b = sample_batch(p, SampleKind::radius, count, seed, streams, jobs);
        auto ks = ks_statistic(std::move(b.values), [&](double t) { return radius_cdf(p, t); });
        out.table.add({p.n, p.mu, p.gamma, count, ks.statistic, ks.p_value, mc});
        return out;
    }
    SampleKind k;
    if (kind == "radius")
        k = SampleKind::radius;
    else if (kind == "volume")
        k = SampleKind::volume;
    else if (kind == "log_volume")
        k = SampleKind::log_volume;
    else if (kind == "rhs")
        k = SampleKind::rhs_product;
    else if (kind == "lhs")
        k = SampleKind::lhs_product;
    else
        throw DomainError("sample: unknown kind " + kind);
    Output out{Table({"index", "kind", "value", "provenance"})};
    auto b = sample_batch(p, k, count, seed, streams, jobs);
    for (std::size_t i = 0; i < b.values.size(); ++i)
        out.table.add({i, to_string(k), b.values[i], mc});
    return out;
}

struct DelaunayArgs
{
    double gamma = 1;
    double side = 100;
    std::optional<double> guard;  //!< default: 5 plain, 0 toroidal
    std::string mode = "plain";
    double mu = -1;
    double s = 1;
    int replicates = 1;
    std::string triangles_csv;
};

inline Output run_delaunay2d(DelaunayArgs const& a, std::uint64_t seed, int jobs,
                             std::string const& triangles_path)
{
    require(a.replicates >= 1 && a.replicates <= 10000, "delaunay2d: replicates must be in [1, 10000]");
    require(a.mode == "plain" || a.mode == "toroidal", "delaunay2d: mode must be plain or toroidal");
    auto mode = a.mode == "plain" ? geom::TessMode::plain : geom::TessMode::toroidal;
    double const guard = a.guard.value_or(mode == geom::TessMode::plain ? 5.0 : 0.0);
    geom::SimWindow w{a.side, guard, mode};
    w.validate();
    ModelParams::make(2, a.mu, a.gamma);

    struct Rep
    {
        geom::TypicalCellEstimate est;
        std::size_t points = 0, triangles = 0, violations = 0;
        double tiling = 0;
        std::string tri_csv;
    };
    std::vector<Rep> reps(a.replicates);
    bool const want_tri = !triangles_path.empty();
    parallel_for(reps.size(), jobs, [&](std::size_t r) {
        RngStream rng(seed, r);
        auto pts = geom::sample_poisson_points(a.gamma, w, rng);
        auto tri = geom::delaunay_triangulate(pts, mode, a.side);
        RngStream audit_rng(seed, (std::uint64_t(1) << 40) + r);
        auto audit = geom::audit_empty_circumdisks(tri, 1000, audit_rng);
        auto& rep = reps[r];
        rep.est = geom::estimate_typical_moment(tri, w, a.mu, a.s);
        rep.points = pts.size();
        rep.triangles = tri.triangles.size();
        rep.violations = audit.violations;
        if (mode == geom::TessMode::toroidal)
            rep.tiling = std::abs(tri.total_area() / (a.side * a.side) - 1);
        if (want_tri)
        {
            std::ostringstream os;
            for (auto const& t : tri.triangles)
                os << io::kSchemaVersion << ',' << r << ',' << io::format_number(t.area) << ','
                   << io::format_number(t.radius) << ',' << io::format_number(t.center.x) << ','
                   << io::format_number(t.center.y) << ",tessellation\r\n";
            rep.tri_csv = os.str();
        }
    });

    Output out{Table({"replicate", "points", "triangles", "n_cells", "mu", "s", "estimate",
                      "std_error", "effective_sample_size", "audit_violations", "tiling_rel_error",
                      "provenance"})};
    char const* tess = detail::prov(Provenance::tessellation);
    double sum = 0, var = 0;
    for (std::size_t r = 0; r < reps.size(); ++r)
    {
        auto const& e = reps[r].est;
        json tiling = mode == geom::TessMode::toroidal ? json(reps[r].tiling) : json(nullptr);
        out.table.add({r, reps[r].points, reps[r].triangles, e.n_cells, e.mu, e.s, e.estimate,
                       e.std_error, e.effective_sample_size, reps[r].violations, tiling, tess});
        sum += e.estimate;
        var += e.std_error * e.std_error;
    }
    double const k = double(reps.size());
    out.table.add({"pooled", nullptr, nullptr, nullptr, a.mu, a.s, sum / k, std::sqrt(var) / k,
                   nullptr, nullptr, nullptr, tess});
    // closed-form reference for the same weight and power
    out.table.add({"exact", nullptr, nullptr, nullptr, a.mu, a.s,
                   moment(ModelParams::make(2, a.mu, a.gamma), a.s), nullptr, nullptr, nullptr,
                   nullptr, detail::prov(Provenance::closed_form)});
    if (want_tri)
    {
        std::string text = "schema_version,replicate,area,circumradius,center_x,center_y,provenance\r\n";
        for (auto const& r : reps)
            text += r.tri_csv;
        io::write_file(triangles_path, text);
    }
    return out;
}

inline Output run_report(claims::ClaimConfig const& cfg, std::vector<int> const& only, bool timings)
{
    std::vector<int> ids = only;
    if (ids.empty())
        for (int i = 1; i <= claims::claim_count(); ++i)
            ids.push_back(i);
    Output out{Table({"id", "key", "status", "metric", "value", "detail", "finding", "provenance"})};
    json arr = json::array();
    bool all_pass = true;
    for (int id : ids)
    {
        auto r = claims::run_claim(id, cfg);
        all_pass = all_pass && r.status == claims::Status::pass;
        json c = json::object();
        c["id"] = r.id;
        c["key"] = r.key;
        c["title"] = r.title;
        c["status"] = to_string(r.status);
        c["detail"] = r.detail;
        c["finding"] = r.finding;
        json ms = json::array();
        for (auto const& m : r.metrics)
            ms.push_back({{"name", m.name}, {"value", io::number(m.value)},
                          {"provenance", to_string(m.provenance)}});
        c["metrics"] = ms;
        if (timings)
        {
            c["elapsed_seconds"] = r.elapsed;
            c["budget_seconds"] = r.budget;
        }
        arr.push_back(std::move(c));
        if (r.metrics.empty())
            out.table.add({r.id, r.key, to_string(r.status), nullptr, nullptr, r.detail, r.finding,
                           detail::prov(Provenance::closed_form)});
        for (auto const& m : r.metrics)
            out.table.add({r.id, r.key, to_string(r.status), m.name, m.value, r.detail, r.finding,
                           to_string(m.provenance)});
    }
    out.results = std::move(arr);
    out.exit = all_pass ? exit_code::ok : exit_code::claims_failed;
    return out;
}

//---------------------------------------------------------------------------//
// Emission
//---------------------------------------------------------------------------//
inline std::string render(RunConfig const& cfg, Output const& out)
{
    if (cfg.format == Format::csv)
        return out.table.to_csv();
    json doc = json::object();
    doc["schema_version"] = io::kSchemaVersion;
    doc["artifact"] = {{"name", io::kArtifactName}, {"version", io::kArtifactVersion}};
    doc["config"] = cfg.to_json();
    json cols = json::array();
    for (auto const& c : out.table.columns())
        cols.push_back(c);
    if (!out.results)
        doc["columns"] = cols;
    doc["results"] = out.results ? *out.results : out.table.to_json();
    return doc.dump(2) + "\n";
}

//! Write the rendered output; CSV files get a JSON sidecar with the run config.
inline void emit(RunConfig const& cfg, Output const& out, std::ostream& stdout_stream)
{
    std::string text = render(cfg, out);
    if (cfg.output_path.empty())
    {
        stdout_stream << text;
        return;
    }
    io::write_file(cfg.output_path, text);
    if (cfg.format == Format::csv)
    {
        json meta = json::object();
        meta["schema_version"] = io::kSchemaVersion;
        meta["artifact"] = {{"name", io::kArtifactName}, {"version", io::kArtifactVersion}};
        meta["config"] = cfg.to_json();
        io::write_file(cfg.output_path + ".meta.json", meta.dump(2) + "\n");
    }
}

//---------------------------------------------------------------------------//
// Config file
//---------------------------------------------------------------------------//
//! Settings read from --config; flags given on the command line win.
struct FileConfig
{
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> format;
    std::optional<std::string> output;
    std::optional<int> n;
    std::optional<double> mu, gamma;
    std::optional<std::vector<int>> sweep;
};

inline FileConfig load_config(std::string const& path)
{
    std::ifstream f(path);
    if (!f)
        throw DomainError("config: cannot read " + path);
    json j;
    try
    {
        j = json::parse(f);
    }
    catch (json::exception const& e)
    {
        throw DomainError(std::string("config: invalid JSON: ") + e.what());
    }
    require(j.is_object(), "config: top level must be an object");
    FileConfig c;
    try
    {
        for (auto const& [key, v] : j.items())
        {
            if (key == "seed")
                c.seed = v.is_string() ? parse_seed(v.get<std::string>()) : v.get<std::uint64_t>();
            else if (key == "jobs")
                c.jobs = v.get<int>();
            else if (key == "format" || key == "output_format")
                c.format = v.get<std::string>();
            else if (key == "output" || key == "output_path")
                c.output = v.get<std::string>();
            else if (key == "params")
            {
                require(v.is_object(), "config: params must be an object");
                for (auto const& [pk, pv] : v.items())
                {
                    if (pk == "n")
                        c.n = pv.get<int>();
                    else if (pk == "mu")
                        c.mu = pv.get<double>();
                    else if (pk == "gamma")
                        c.gamma = pv.get<double>();
                    else
                        throw DomainError("config: unknown params key " + pk);
                }
            }
            else if (key == "sweep")
                c.sweep = v.get<std::vector<int>>();
            else if (key == "subcommand" || key == "options")
                continue;  // informational when replaying a report's config
            else
                throw DomainError("config: unknown key " + key);
        }
    }
    catch (json::exception const& e)
    {
        throw DomainError(std::string("config: wrong value type: ") + e.what());
    }
    return c;
}

//---------------------------------------------------------------------------//
// Entry point
//---------------------------------------------------------------------------//
/*!
 * Parse arguments, run one subcommand and write its report.
 *
 * Exit codes: 0 success, 1 usage error or unknown subcommand, 2 invalid
 * input or configuration, 3 numerical convergence failure, 4 `report`
 * completed with failing claims.
 */
inline int run(int argc, char const* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr)
{
    CLI::App app{"Numerical laboratory for volumes of weighted typical Poisson-Delaunay cells", "pdlab"};
    app.set_version_flag("--version", io::kArtifactVersion);
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string seed_text = "0x5EED_DE1A_0A11";
    int jobs = 1;
    std::string format_text;
    std::string output;
    std::string output_dir;
    std::string config_path;
    auto* seed_opt = app.add_option("--seed", seed_text, "64-bit seed, decimal or 0x-hex");
    auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads")->envname("PDLAB_JOBS")
                         ->check(CLI::Range(1, 1024));
    auto* format_opt = app.add_option("--format", format_text, "json or csv")
                           ->check(CLI::IsMember({"json", "csv"}));
    auto* output_opt = app.add_option("--output", output, "output file (default: stdout)");
    app.add_option("--output-dir", output_dir, "directory for relative output paths")
        ->envname("PDLAB_OUTPUT_DIR");
    app.add_option("--config", config_path, "JSON run configuration");

    struct ModelOpts
    {
        int n = 2;
        double mu = -1;
        double gamma = 1;
        CLI::Option *n_opt = nullptr, *mu_opt = nullptr, *gamma_opt = nullptr;
    };
    auto add_model = [](CLI::App* sub, ModelOpts& m, bool with_n = true) {
        if (with_n)
            m.n_opt = sub->add_option("--n", m.n, "dimension")->capture_default_str();
        m.mu_opt = sub->add_option("--mu", m.mu, "weight exponent, > -2")->capture_default_str();
        m.gamma_opt = sub->add_option("--gamma", m.gamma, "intensity")->capture_default_str();
    };
    std::vector<double> sweep_raw;
    auto add_sweep = [&](CLI::App* sub, std::vector<double> def) {
        sweep_raw = std::move(def);
        return sub->add_option("--sweep", sweep_raw, "comma list of n values")->delimiter(',');
    };

    // specfun
    SpecfunArgs sf;
    auto* c_specfun = app.add_subcommand("specfun", "Evaluate a special function");
    c_specfun->add_option("--function", sf.function)
        ->check(CLI::IsMember({"log_gamma", "digamma", "polygamma", "log_barnes_g",
                               "log_barnes_g_shift_asymptotic", "log_barnes_g_ratio",
                               "reg_lower_incomplete_gamma", "log_unit_ball_volume"}))
        ->capture_default_str();
    c_specfun->add_option("--x", sf.x, "argument (real part)")->capture_default_str();
    c_specfun->add_option("--im", sf.im, "imaginary part (log_gamma)")->capture_default_str();
    c_specfun->add_option("--order", sf.order, "polygamma order m >= 1")->capture_default_str();
    c_specfun->add_option("--a", sf.a, "shift or shape parameter")->capture_default_str();

    // moments / cgf
    ModelOpts mm;
    std::vector<double> s_values = {1};
    auto* c_moments = app.add_subcommand("moments", "Exact moments E V^s");
    add_model(c_moments, mm);
    c_moments->add_option("--s", s_values, "moment orders (comma list)")->delimiter(',');

    ModelOpts mc;
    double re = 0.5, im = 0;
    bool extended = false;
    auto* c_cgf = app.add_subcommand("cgf", "Cumulant generating function of log V");
    add_model(c_cgf, mc);
    c_cgf->add_option("--re", re)->capture_default_str();
    c_cgf->add_option("--im", im)->capture_default_str();
    c_cgf->add_flag("--extended", extended, "allow the analytic continuation strip");

    // identities
    std::string grid = "default";
    std::vector<double> id_a;
    std::vector<int> id_k, id_m = {2, 3, 4, 5, 6};
    auto* c_ident = app.add_subcommand("identities", "Polygamma sum identities and bound");
    c_ident->add_option("--grid", grid)->check(CLI::IsMember({"default"}))->capture_default_str();
    c_ident->add_option("--a", id_a, "override the a grid")->delimiter(',');
    c_ident->add_option("--k", id_k, "override the k grid")->delimiter(',');
    c_ident->add_option("--m", id_m, "bound orders")->delimiter(',');

    // cumulants / regimes
    ModelOpts mk;
    int max_order = 4;
    auto* c_cum = app.add_subcommand("cumulants", "Exact cumulants against the finite-difference oracle");
    add_model(c_cum, mk);
    c_cum->add_option("--max-order", max_order)->check(CLI::Range(1, 6))->capture_default_str();

    std::vector<std::string> regime_names = {"all"};
    std::optional<double> regime_alpha, regime_fixed;
    std::vector<double> drivers = {100, 1000, 10000};
    double regime_gamma = 1;
    auto* c_reg = app.add_subcommand("regimes", "Exact variance against regime limits");
    c_reg->add_option("--regime", regime_names, "R1..R4, F1, F2 or all")->delimiter(',');
    c_reg->add_option("--alpha", regime_alpha);
    c_reg->add_option("--fixed", regime_fixed, "held mu (R1) or n (F1)");
    c_reg->add_option("--drivers", drivers, "n (R regimes) or mu (F regimes)")->delimiter(',');
    c_reg->add_option("--gamma", regime_gamma)->capture_default_str();

    // distribution
    ModelOpts md;
    std::vector<double> xs = {-2, -1, 0, 1, 2};
    auto* c_cdf = app.add_subcommand("cdf", "Standardized log-volume CDF by Fourier inversion");
    add_model(c_cdf, md);
    c_cdf->add_option("--x", xs, "standardized abscissae")->delimiter(',');
    CLI::Option* cdf_sweep = c_cdf->add_option("--sweep", sweep_raw, "comma list of n")->delimiter(',');

    ModelOpts mb;
    auto* c_be = app.add_subcommand("berry-esseen", "Kolmogorov distance to the normal along n");
    add_model(c_be, mb, false);
    CLI::Option* be_sweep = add_sweep(c_be, {10, 100, 1000, 10000});

    ModelOpts ml;
    std::vector<double> ts = {0.5, 1};
    std::string variant = "both";
    auto* c_ldp = app.add_subcommand("ldp", "Scaled cgf under both centering sequences");
    add_model(c_ldp, ml, false);
    c_ldp->add_option("--t", ts)->delimiter(',');
    c_ldp->add_option("--variant", variant)->check(CLI::IsMember({"ldp", "modphi", "both"}))
        ->capture_default_str();
    CLI::Option* ldp_sweep = c_ldp->add_option("--sweep", sweep_raw)->delimiter(',');

    ModelOpts mp;
    std::vector<double> zs = {-1, 0.5, 1};
    auto* c_mp = app.add_subcommand("modphi", "Mod-Gaussian residuals along n");
    add_model(c_mp, mp, false);
    c_mp->add_option("--z", zs)->delimiter(',');
    CLI::Option* mp_sweep = c_mp->add_option("--sweep", sweep_raw)->delimiter(',');

    // sample
    ModelOpts ms;
    std::string kind = "volume";
    std::size_t count = 1000;
    int streams = 1;
    auto* c_sample = app.add_subcommand("sample", "Monte Carlo draws or a KS report");
    add_model(c_sample, ms);
    c_sample->add_option("--kind", kind)
        ->check(CLI::IsMember({"radius", "volume", "log_volume", "rhs", "lhs", "identity", "radius-ks"}))
        ->capture_default_str();
    c_sample->add_option("--count", count)->capture_default_str();
    c_sample->add_option("--streams", streams)->capture_default_str();

    // delaunay2d
    DelaunayArgs da;
    auto* c_del = app.add_subcommand("delaunay2d", "Planar Poisson-Delaunay typical cell estimate");
    c_del->add_option("--gamma", da.gamma)->capture_default_str();
    c_del->add_option("--side", da.side)->capture_default_str();
    c_del->add_option("--guard", da.guard, "edge guard width (default 5 plain, 0 toroidal)");
    c_del->add_option("--mode", da.mode)->check(CLI::IsMember({"plain", "toroidal"}))->capture_default_str();
    c_del->add_option("--mu", da.mu)->capture_default_str();
    c_del->add_option("--s", da.s)->capture_default_str();
    c_del->add_option("--replicates", da.replicates)->capture_default_str();
    c_del->add_option("--triangles-csv", da.triangles_csv, "also write per-triangle data here");

    // report
    bool quick = false, timings = false;
    std::vector<int> only;
    auto* c_rep = app.add_subcommand("report", "Run the acceptance suite and emit a claim matrix");
    c_rep->add_flag("--quick", quick, "one seed per randomized check");
    c_rep->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
    c_rep->add_option("--only", only, "criterion ids")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e, out, err);
    }
    catch (CLI::ConversionError const& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_code::domain;
    }
    catch (CLI::ValidationError const& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_code::domain;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_code::usage;
    }

    try
    {
        CLI::App* sub = app.get_subcommands().front();
        RunConfig cfg;
        cfg.subcommand = sub->get_name();

        FileConfig fc;
        if (!config_path.empty())
            fc = load_config(config_path);
        auto pick_model = [&](ModelOpts& m, bool with_n = true) {
            ModelParams p{m.n, m.mu, m.gamma};
            if (with_n && fc.n && m.n_opt->count() == 0)
                p.n = *fc.n;
            if (fc.mu && m.mu_opt->count() == 0)
                p.mu = *fc.mu;
            if (fc.gamma && m.gamma_opt->count() == 0)
                p.gamma = *fc.gamma;
            p.validate();
            cfg.params = p;
            return p;
        };
        auto pick_sweep = [&](CLI::Option* opt, std::vector<int> def) {
            std::vector<int> v = def;
            if (opt->count() > 0)
                v = detail::to_int_sweep(sweep_raw);
            else if (fc.sweep)
                v = *fc.sweep;
            cfg.sweep = v;
            return v;
        };

        cfg.seed = (seed_opt->count() == 0 && fc.seed) ? *fc.seed : parse_seed(seed_text);
        cfg.jobs = (jobs_opt->count() == 0 && fc.jobs) ? *fc.jobs : jobs;
        std::string fmt = format_text;
        if (format_opt->count() == 0 && fc.format)
            fmt = *fc.format;
        std::string out_path = (output_opt->count() == 0 && fc.output) ? *fc.output : output;

        // default formats follow the shape of each subcommand's result
        bool const csv_default = cfg.subcommand == "identities" || cfg.subcommand == "regimes"
                                 || cfg.subcommand == "cdf" || cfg.subcommand == "berry-esseen"
                                 || cfg.subcommand == "ldp" || cfg.subcommand == "modphi"
                                 || (cfg.subcommand == "sample" && kind != "identity"
                                     && kind != "radius-ks");
        if (fmt.empty())
            fmt = csv_default ? "csv" : "json";
        require(fmt == "json" || fmt == "csv", "config: format must be json or csv");
        cfg.format = fmt == "json" ? Format::json : Format::csv;
        if (out_path.empty() && !output_dir.empty())
            out_path = cfg.subcommand + (cfg.format == Format::json ? ".json" : ".csv");
        if (!out_path.empty() && !output_dir.empty() && std::filesystem::path(out_path).is_relative())
            out_path = (std::filesystem::path(output_dir) / out_path).string();
        cfg.output_path = out_path;

        Output result;
        if (sub == c_specfun)
        {
            cfg.options = {{"function", sf.function}, {"x", sf.x}, {"im", sf.im},
                           {"order", sf.order}, {"a", sf.a}};
            cfg.validate();
            result = run_specfun(sf);
        }
        else if (sub == c_moments)
        {
            auto p = pick_model(mm);
            cfg.options = {{"s", s_values}};
            cfg.validate();
            result = run_moments(p, s_values);
        }
        else if (sub == c_cgf)
        {
            auto p = pick_model(mc);
            cfg.options = {{"re", re}, {"im", im}, {"extended", extended}};
            cfg.validate();
            result = run_cgf(p, re, im, extended);
        }
        else if (sub == c_ident)
        {
            auto as = id_a.empty() ? identities::default_a_grid() : id_a;
            auto ks = id_k.empty() ? identities::default_k_grid() : id_k;
            cfg.options = {{"grid", grid}, {"a", as}, {"k", ks}, {"m", id_m}};
            cfg.validate();
            result = run_identities(as, ks, id_m);
        }
        else if (sub == c_cum)
        {
            auto p = pick_model(mk);
            cfg.options = {{"max_order", max_order}};
            cfg.validate();
            result = run_cumulants(p, max_order);
        }
        else if (sub == c_reg)
        {
            cfg.options = {{"regime", regime_names}, {"drivers", drivers}, {"gamma", regime_gamma}};
            if (regime_alpha)
                cfg.options["alpha"] = *regime_alpha;
            if (regime_fixed)
                cfg.options["fixed"] = *regime_fixed;
            cfg.validate();
            result = run_regimes(regime_names, regime_alpha, regime_fixed, drivers, regime_gamma);
        }
        else if (sub == c_cdf)
        {
            auto p = pick_model(md);
            auto ns = pick_sweep(cdf_sweep, {p.n});
            cfg.options = {{"x", xs}};
            cfg.validate();
            result = run_cdf(ns, p.mu, p.gamma, xs, cfg.jobs);
        }
        else if (sub == c_be)
        {
            auto p = pick_model(mb, false);
            auto ns = pick_sweep(be_sweep, {10, 100, 1000, 10000});
            cfg.validate();
            result = run_berry_esseen(ns, p.mu, p.gamma, cfg.jobs);
        }
        else if (sub == c_ldp)
        {
            auto p = pick_model(ml, false);
            auto ns = pick_sweep(ldp_sweep, {100, 1000, 10000, 100000});
            cfg.options = {{"t", ts}, {"variant", variant}};
            cfg.validate();
            result = run_ldp(ns, p.mu, p.gamma, ts, variant);
        }
        else if (sub == c_mp)
        {
            auto p = pick_model(mp, false);
            auto ns = pick_sweep(mp_sweep, {100, 1000, 10000});
            cfg.options = {{"z", zs}};
            cfg.validate();
            result = run_modphi(ns, p.mu, p.gamma, zs);
        }
        else if (sub == c_sample)
        {
            auto p = pick_model(ms);
            cfg.options = {{"kind", kind}, {"count", count}, {"streams", streams}};
            cfg.validate();
            result = run_sample(p, kind, count, cfg.seed, streams, cfg.jobs);
        }
        else if (sub == c_del)
        {
            std::string tri_path = da.triangles_csv;
            if (!tri_path.empty() && !output_dir.empty() && std::filesystem::path(tri_path).is_relative())
                tri_path = (std::filesystem::path(output_dir) / tri_path).string();
            cfg.options = {{"gamma", da.gamma}, {"side", da.side}, {"guard", da.guard.value_or(da.mode == "plain" ? 5.0 : 0.0)},
                           {"mode", da.mode}, {"mu", da.mu}, {"s", da.s},
                           {"replicates", da.replicates}};
            cfg.validate();
            result = run_delaunay2d(da, cfg.seed, cfg.jobs, tri_path);
        }
        else if (sub == c_rep)
        {
            claims::ClaimConfig cc;
            cc.quick = quick;
            cc.jobs = cfg.jobs;
            cc.seeds = {cfg.seed, cfg.seed + 1, cfg.seed + 2};
            for (int id : only)
                require(id >= 1 && id <= claims::claim_count(), "report: unknown criterion id "
                                                                     + std::to_string(id));
            cfg.options = {{"quick", quick}, {"only", only}, {"timings", timings}};
            cfg.validate();
            result = run_report(cc, only, timings);
        }
        emit(cfg, result, out);
        return result.exit;
    }
    catch (ConvergenceError const& e)
    {
        err << "convergence failure: " << e.what() << "\n";
        return exit_code::convergence;
    }
    catch (DomainError const& e)
    {
        err << "domain error: " << e.what() << "\n";
        return exit_code::domain;
    }
    catch (std::filesystem::filesystem_error const& e)
    {
        err << "i/o error: " << e.what() << "\n";
        return exit_code::domain;
    }
}
}  // namespace pdlab::cli
