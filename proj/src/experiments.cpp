#include "haar_besov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <json.hpp>
#include <sstream>

#include "haar_besov/approx.hpp"
#include "haar_besov/counterexamples.hpp"
#include "haar_besov/haar.hpp"
#include "haar_besov/regimes.hpp"
#include "haar_besov/sequence.hpp"

namespace haar_besov {

namespace {

// Runs body(i) for i in [0, n) in parallel; rethrows the first failure by index.
template <class F>
void parallel_for(std::int64_t n, F&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Check make_check(std::string name, double value, std::string op, double threshold) {
    bool ok = false;
    if (op == "<=") ok = value <= threshold;
    else if (op == ">=") ok = value >= threshold;
    else if (op == ">") ok = value > threshold;
    else if (op == "==") ok = value == threshold;
    return {std::move(name), value, std::move(op), threshold, ok};
}

void label(ExperimentReport& r, HaarSystemKind system) {
    const auto c = classify(r.params, system);
    r.system = std::string(to_string(system));
    r.regime = std::string(to_string(c.regime));
    r.citation = c.citation;
    r.notes = c.notes;
}

void require_regime(const ExperimentReport& r, Regime want, const std::string& what) {
    if (r.regime != to_string(want))
        throw ParameterError(r.name + " needs " + what + " (regime " + std::string(to_string(want)) + "), got " +
                             r.params.to_string() + " -> " + r.regime);
}

struct Range {
    int lo, hi;
};

Range resolve_range(std::optional<int> lo, std::optional<int> hi, Range def, const char* what, int min_lo) {
    Range r{lo.value_or(def.lo), hi.value_or(def.hi)};
    if (r.lo < min_lo || r.hi < r.lo) throw ParameterError(std::string("invalid ") + what + " range");
    return r;
}

// ============================================================================
// Experiments
// ============================================================================

ExperimentReport equivalence(const ExperimentConfig& cfg, RatioKind kind) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    r.params = BesovParams::make(cfg.p.value_or(2.0), cfg.q.value_or(2.0), cfg.s.value_or(0.25), cfg.d.value_or(1));
    label(r, HaarSystemKind::Isotropic);
    if (kind == RatioKind::SequenceOverA && !in_isomorphism_range(r.params))
        throw ParameterError("equivalence needs max(d(1/p-1), 0) < s < 1/p, got " + r.params.to_string());
    const auto mr = resolve_range(cfg.m_min, cfg.m_max, {1, 5}, "m", 0);
    const int samples = cfg.samples.value_or(200);
    if (samples < 2) throw ParameterError("need at least two samples");
    r.settings = {{"m_min", mr.lo}, {"m_max", mr.hi}, {"samples", samples}};

    RatioStudy st{kind, r.params.p, r.params.s, r.params.d, {r.params.q}, samples, mr.lo, mr.hi, cfg.seed};
    const auto res = ratio_samples(st);
    const auto& ratios = res.by_q.front();
    for (int m = mr.lo; m <= mr.hi; ++m)
        for (std::size_t i = 0; i < ratios.size(); ++i)
            if (res.m[i] == m) r.rows.push_back({"", static_cast<double>(m), ratios[i], std::nullopt});
    const auto band = summarize_band(res.m, ratios);
    r.metrics = {{"ratio_min", band.min}, {"ratio_max", band.max}, {"band", band.band}, {"log2_ratio_slope", band.slope}};
    r.checks.push_back(make_check("band", band.band, "<=", kind == RatioKind::SequenceOverA ? 50.0 : 100.0));
    r.checks.push_back(make_check("abs_log2_ratio_slope", std::fabs(band.slope), "<=", 0.05));
    return r;
}

ExperimentReport trivial_dual(const ExperimentConfig& cfg) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    const double p = cfg.p.value_or(0.6);
    const int d = cfg.d.value_or(1);
    r.params = BesovParams::make(p, cfg.q.value_or(1.0), cfg.s.value_or(0.5 * d * (1.0 / p - 1.0)), d);
    label(r, HaarSystemKind::Isotropic);
    require_regime(r, Regime::NotBasisTrivialDual, "p < 1 and s < d(1/p-1), or s = d(1/p-1) with q > 1");
    const auto mr = resolve_range(cfg.m_min, cfg.m_max, {4, 16}, "m", 0);
    r.settings = {{"m_min", mr.lo}, {"m_max", mr.hi}};

    const int n = mr.hi - mr.lo + 1;
    std::vector<NestedClosedForm> cf(static_cast<std::size_t>(n));
    parallel_for(n, [&](std::int64_t i) {
        cf[static_cast<std::size_t>(i)] =
            nested_closed_form(NestedSpec{d, mr.lo + static_cast<int>(i), NestedRule::TrivialDual, {}, {}}, r.params);
    });
    double amin = INFINITY, amax = 0.0, lmin = INFINITY, lmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const int m = mr.lo + i;
        const auto& c = cf[static_cast<std::size_t>(i)];
        r.rows.push_back({"a_norm", static_cast<double>(m), c.a_norm(), c.log2_a_norm});
        amin = std::min(amin, c.a_norm());
        amax = std::max(amax, c.a_norm());
    }
    for (int i = 0; i < n; ++i) {
        const int m = mr.lo + i;
        const double v = cf[static_cast<std::size_t>(i)].l1_norm() / std::log(m + 2.0);
        r.rows.push_back({"l1_over_log", static_cast<double>(m), v, std::nullopt});
        lmin = std::min(lmin, v);
        lmax = std::max(lmax, v);
    }
    r.metrics = {{"a_norm_min", amin}, {"a_norm_max", amax}, {"a_norm_band", amax / amin},
                 {"l1_over_log_min", lmin}, {"l1_over_log_max", lmax}};
    r.checks.push_back(make_check("a_norm_band", amax / amin, "<=", 2.0));
    r.checks.push_back(make_check("l1_over_log_min", lmin, ">=", 0.2));
    r.checks.push_back(make_check("l1_over_log_max", lmax, "<=", 5.0));
    return r;
}

ExperimentReport uncond_fail(const ExperimentConfig& cfg) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    const double p = cfg.p.value_or(0.8);
    const int d = cfg.d.value_or(1);
    r.params = BesovParams::make(p, cfg.q.value_or(0.8), cfg.s.value_or(d * (1.0 / p - 1.0)), d);
    label(r, HaarSystemKind::Isotropic);
    if (!(p < 1.0)) throw ParameterError("uncond-fail needs p < 1");
    require_regime(r, Regime::ConditionalBasis, "p < 1, s = d(1/p-1), q <= p");
    const auto mr = resolve_range(cfg.m_min, cfg.m_max, {4, 16}, "m", 0);
    const auto kr = resolve_range(cfg.k_min, cfg.k_max, {2, 8}, "k", 0);
    r.settings = {{"m_min", mr.lo}, {"m_max", mr.hi}, {"k_min", kr.lo}, {"k_max", kr.hi}};

    double amin = INFINITY, amax = 0.0;
    for (int m = mr.lo; m <= mr.hi; ++m) {
        const auto c = spike_closed_form(m, r.params);
        const double a = std::exp2(c.log2_a_norm);
        r.rows.push_back({"f_m", static_cast<double>(m), a, c.log2_a_norm});
        amin = std::min(amin, a);
        amax = std::max(amax, a);
    }
    const int nk = kr.hi - kr.lo + 1;
    std::vector<double> gq(static_cast<std::size_t>(nk));
    parallel_for(nk, [&](std::int64_t i) {
        const int k = kr.lo + static_cast<int>(i);
        const auto c = nested_closed_form(NestedSpec{d, 2 * k, NestedRule::Alternating, {}, {}}, r.params);
        gq[static_cast<std::size_t>(i)] = std::exp2(r.params.q * c.log2_a_norm);
    });
    std::vector<double> xs, ys;
    for (int i = 0; i < nk; ++i) {
        const int k = kr.lo + i;
        r.rows.push_back({"g_2k", static_cast<double>(k), gq[static_cast<std::size_t>(i)], std::nullopt});
        if (k >= 2) {
            xs.push_back(k);
            ys.push_back(gq[static_cast<std::size_t>(i)]);
        }
    }
    const auto fit = fit_line(xs, ys);
    r.fits.push_back({"g_2k", "linear", fit, std::nullopt, std::nullopt});
    r.metrics = {{"f_m_a_norm_min", amin}, {"f_m_a_norm_max", amax}, {"f_m_band", amax / amin},
                 {"g_2k_slope", fit.slope}, {"g_2k_r2", fit.r2}};
    r.checks.push_back(make_check("f_m_band", amax / amin, "<=", 2.0));
    r.checks.push_back(make_check("g_2k_slope", fit.slope, ">", 0.0));
    r.checks.push_back(make_check("g_2k_r2", fit.r2, ">", 0.9));
    return r;
}

void growth_checks(ExperimentReport& r, const std::vector<double>& scale, const std::vector<double>& log2v,
                   double theoretical) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < scale.size(); ++i)
        if (scale[i] >= 2) {
            xs.push_back(scale[i]);
            ys.push_back(log2v[i]);
        }
    if (xs.size() < 3) throw ParameterError(r.name + " needs at least three scales >= 2");
    const auto fit = fit_line(xs, ys);
    const double dev = std::fabs(fit.slope - theoretical) / std::fabs(theoretical);
    r.fits.push_back({"ratio", "log2", fit, theoretical, dev});
    r.metrics = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2},
                 {"theoretical_slope", theoretical}, {"relative_deviation", dev}};
    r.checks.push_back(make_check("relative_deviation", dev, "<=", 0.2));
}

ExperimentReport basis_fail(const ExperimentConfig& cfg) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    const double p = cfg.p.value_or(0.7);
    const int d = cfg.d.value_or(1);
    r.params = BesovParams::make(p, cfg.q.value_or(1.0), cfg.s.value_or(d * (1.0 / p - 1.0)), d);
    label(r, HaarSystemKind::Isotropic);
    require_regime(r, Regime::NotBasisUnboundedProjectors, "p < q <= 1, s = d(1/p-1)");
    const auto kr = resolve_range(cfg.k_min, cfg.k_max, {2, 7}, "k", 1);
    const double alpha = cfg.alpha.value_or(1.0 / (2.0 * r.params.q));
    r.settings = {{"k_min", kr.lo}, {"k_max", kr.hi}, {"alpha", alpha}};

    const int nk = kr.hi - kr.lo + 1;
    std::vector<double> l2(static_cast<std::size_t>(nk));
    parallel_for(nk, [&](std::int64_t i) {
        const ScatteredSpec spec{kr.lo + static_cast<int>(i), d, alpha};
        l2[static_cast<std::size_t>(i)] = scattered_closed_norms(spec, r.params).log2_ratio();
    });
    std::vector<double> scale;
    for (int i = 0; i < nk; ++i) {
        scale.push_back(kr.lo + i);
        r.rows.push_back({"", scale.back(), std::exp2(l2[static_cast<std::size_t>(i)]), l2[static_cast<std::size_t>(i)]});
    }
    growth_checks(r, scale, l2, d * (1.0 / p - 1.0 / r.params.q));
    return r;
}

ExperimentReport tensor_fail(const ExperimentConfig& cfg) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    const double p = cfg.p.value_or(0.5);
    const int d = cfg.d.value_or(2);
    r.params = BesovParams::make(p, cfg.q.value_or(1.0), cfg.s.value_or(1.0), d);
    if (d < 2) throw ParameterError("tensor-fail needs d >= 2");
    label(r, HaarSystemKind::Tensor);
    require_regime(r, Regime::NotBasisTensor, "p < 1, d >= 2");
    const auto kr = resolve_range(cfg.k_min, cfg.k_max, {2, 10}, "k", 1);
    r.settings = {{"k_min", kr.lo}, {"k_max", kr.hi}};

    std::vector<double> scale, l2;
    for (int k = kr.lo; k <= kr.hi; ++k) {
        const auto c = tensor_spike_closed_form(k, r.params);
        scale.push_back(k);
        l2.push_back(c.log2_ratio());
        r.rows.push_back({"", static_cast<double>(k), c.ratio(), c.log2_ratio()});
    }
    growth_checks(r, scale, l2, (1.0 / p - 1.0) * (d - 1));
    return r;
}

struct ClassifyExample {
    const char* name;
    double p, q, s;
    int d;
    HaarSystemKind system;
    Regime expected;
};

ExperimentReport classify_sweep(const ExperimentConfig& cfg) {
    ExperimentReport r;
    r.name = cfg.name;
    r.seed = cfg.seed;
    r.params = BesovParams::make(cfg.p.value_or(1.0), cfg.q.value_or(1.0), cfg.s.value_or(0.5), cfg.d.value_or(1));
    r.system = "both";
    r.regime = "sweep";
    r.citation = "classification over the parameter lattice";

    static const ClassifyExample examples[] = {
        {"conditional", 0.8, 0.8, 0.25, 1, HaarSystemKind::Isotropic, Regime::ConditionalBasis},
        {"trivial_dual", 0.5, 2.0, 2.0, 2, HaarSystemKind::Isotropic, Regime::NotBasisTrivialDual},
        {"tensor", 0.5, 1.0, 1.0, 2, HaarSystemKind::Tensor, Regime::NotBasisTensor},
        {"unconditional", 2.0, 0.7, 0.3, 3, HaarSystemKind::Isotropic, Regime::UnconditionalBasis},
    };
    int matched = 0, idx = 0;
    for (const auto& e : examples) {
        bool ok = false;
        try {
            ok = classify(BesovParams::make(e.p, e.q, e.s, e.d), e.system).regime == e.expected;
        } catch (const std::exception& ex) {
            r.notes.push_back(std::string("example ") + e.name + " rejected: " + ex.what());
        }
        matched += ok;
        r.rows.push_back({std::string("example_") + e.name, static_cast<double>(++idx), ok ? 1.0 : 0.0, std::nullopt});
    }

    static const double ps[] = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.5, 2.0};
    static const double qs[] = {0.3, 0.5, 0.7, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 4.0};
    std::vector<int> counts(6, 0);
    int points = 0, unclassified = 0;
    for (double p : ps)
        for (double q : qs)
            for (int d = 1; d <= 5; ++d)
                for (int i = 0; i < 10; ++i) {
                    // nine interior fractions of 1/p plus the critical line when admissible
                    double s = i / 10.0 / p;
                    const double crit = d * (1.0 / p - 1.0);
                    if (i == 9) s = (crit > 0.0 && crit < 1.0 / p) ? crit : 0.95 / p;
                    for (auto sys : {HaarSystemKind::Isotropic, HaarSystemKind::Tensor}) {
                        ++points;
                        try {
                            counts[static_cast<std::size_t>(classify(BesovParams::make(p, q, s, d), sys).regime)]++;
                        } catch (const std::exception&) {
                            ++unclassified;
                        }
                    }
                }
    r.metrics = {{"examples", 4}, {"examples_matched", matched}, {"lattice_points", points}, {"unclassified", unclassified}};
    for (std::size_t i = 0; i < counts.size(); ++i)
        r.metrics.emplace_back("count_" + std::string(to_string(static_cast<Regime>(i))), counts[i]);
    r.checks.push_back(make_check("examples_matched", matched, "==", 4));
    r.checks.push_back(make_check("unclassified", unclassified, "==", 0));
    return r;
}

}  // namespace

// ============================================================================
// Ratio samples
// ============================================================================

RatioSamples ratio_samples(const RatioStudy& st) {
    if (st.samples < 1 || st.m_min < 0 || st.m_max < st.m_min || st.qs.empty())
        throw ParameterError("invalid ratio study");
    std::vector<BesovParams> prms;
    for (double q : st.qs) prms.push_back(BesovParams::make(st.p, q, st.s, st.d));
    RatioSamples out;
    out.m.resize(static_cast<std::size_t>(st.samples));
    out.by_q.assign(st.qs.size(), std::vector<double>(static_cast<std::size_t>(st.samples)));
    const int span = st.m_max - st.m_min + 1;
    parallel_for(st.samples, [&](std::int64_t i) {
        const auto ui = static_cast<std::size_t>(i);
        const int m = st.m_min + static_cast<int>(i % span);
        out.m[ui] = m;
        const auto f = random_step(derive_seed(st.seed, static_cast<std::uint64_t>(i)), st.d, m);
        const double lp = lp_quasinorm(f, st.p);
        const auto errors = approx_errors(f, st.p);
        if (st.kind == RatioKind::SequenceOverA) {
            const auto view = CoefficientBlockView::from_coefficients(analyze(f));
            for (std::size_t j = 0; j < prms.size(); ++j)
                out.by_q[j][ui] = lqlp_norm(view, prms[j]) / a_norm_from_errors(lp, errors, prms[j]);
        } else {
            const ModulusProfile prof(f, st.p);
            for (std::size_t j = 0; j < prms.size(); ++j)
                out.by_q[j][ui] = b_norm_from_profile(lp, prof, prms[j]) / a_norm_from_errors(lp, errors, prms[j]);
        }
    });
    return out;
}

BandSummary summarize_band(std::span<const int> m, std::span<const double> ratios) {
    if (m.size() != ratios.size() || ratios.empty()) throw ParameterError("band summary needs matching samples");
    BandSummary b;
    b.min = *std::min_element(ratios.begin(), ratios.end());
    b.max = *std::max_element(ratios.begin(), ratios.end());
    b.band = b.max / b.min;
    const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
    if (*lo != *hi) {
        std::vector<double> x(m.begin(), m.end()), y;
        for (double r : ratios) y.push_back(std::log2(r));
        b.slope = fit_line(x, y).slope;
    }
    return b;
}

// ============================================================================
// Dispatch and rendering
// ============================================================================

bool ExperimentReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"equivalence", "modulus-vs-approx", "trivial-dual", "uncond-fail",
                                                "basis-fail", "tensor-fail", "classify-sweep"};
    return names;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.name == "equivalence") return equivalence(cfg, RatioKind::SequenceOverA);
    if (cfg.name == "modulus-vs-approx") return equivalence(cfg, RatioKind::ModulusOverA);
    if (cfg.name == "trivial-dual") return trivial_dual(cfg);
    if (cfg.name == "uncond-fail") return uncond_fail(cfg);
    if (cfg.name == "basis-fail") return basis_fail(cfg);
    if (cfg.name == "tensor-fail") return tensor_fail(cfg);
    if (cfg.name == "classify-sweep") return classify_sweep(cfg);
    throw ParameterError("unknown experiment '" + cfg.name + "'");
}

std::string render_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "experiment,p,q,s,d,scale,value,log2_value\n";
    for (const auto& row : r.rows) {
        const double l2 = row.log2_value ? *row.log2_value : std::log2(row.value);
        os << r.name << (row.series.empty() ? "" : "/" + row.series) << ',' << fmt(r.params.p) << ','
           << fmt(r.params.q) << ',' << fmt(r.params.s) << ',' << r.params.d << ',' << fmt(row.scale) << ','
           << fmt(row.value) << ',' << fmt(l2) << '\n';
    }
    return os.str();
}

std::string render_json(const ExperimentReport& r) {
    using nlohmann::ordered_json;
    auto num = [](double x) -> ordered_json {
        if (std::isfinite(x)) return x;
        return fmt(x);
    };
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = r.name;
    ordered_json params;
    params["p"] = num(r.params.p);
    params["q"] = num(r.params.q);
    params["s"] = num(r.params.s);
    params["d"] = r.params.d;
    params["seed"] = r.seed;
    for (const auto& [k, v] : r.settings) params[k] = num(v);
    j["params"] = params;
    j["system"] = r.system;
    j["regime"] = r.regime;
    j["citation"] = r.citation;
    j["notes"] = r.notes;
    j["rows"] = r.rows.size();
    ordered_json fits = ordered_json::array();
    for (const auto& f : r.fits) {
        ordered_json x;
        x["series"] = f.series;
        x["kind"] = f.kind;
        x["slope"] = num(f.fit.slope);
        x["intercept"] = num(f.fit.intercept);
        x["r2"] = num(f.fit.r2);
        x["theoretical"] = f.theoretical ? num(*f.theoretical) : ordered_json();
        x["deviation"] = f.deviation ? num(*f.deviation) : ordered_json();
        fits.push_back(x);
    }
    j["fits"] = fits;
    ordered_json metrics;
    for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
    j["metrics"] = metrics;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json x;
        x["name"] = c.name;
        x["value"] = num(c.value);
        x["op"] = c.op;
        x["threshold"] = num(c.threshold);
        x["pass"] = c.passed;
        checks.push_back(x);
    }
    j["checks"] = checks;
    j["pass"] = r.passed();
    return j.dump(2) + "\n";
}

}  // namespace haar_besov
