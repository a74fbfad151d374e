// haar-besov: command-line front end.
//
// Exit codes: 0 success, 2 an experiment check failed, 1 usage or input error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "haar_besov/approx.hpp"
#include "haar_besov/counterexamples.hpp"
#include "haar_besov/experiments.hpp"
#include "haar_besov/haar.hpp"
#include "haar_besov/io.hpp"
#include "haar_besov/regimes.hpp"
#include "haar_besov/sequence.hpp"

using namespace haar_besov;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::optional<double> p, q, s, alpha;
    std::optional<int> d, m, m_min, k, k_min, k_max, samples;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
    std::uint64_t max_cells = Limits{}.max_cells;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw ParameterError("cannot write '" + path + "'");
}

ordered_json num(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

BesovParams params_from(const Common& c, bool allow_degenerate = false) {
    if (!c.p || !c.q || !c.s) throw ParameterError("--p, --q and --s are required");
    return BesovParams::make(*c.p, *c.q, *c.s, c.d.value_or(1), allow_degenerate);
}

// ============================================================================
// classify
// ============================================================================

int run_classify(const Common& c, const std::string& system, bool allow_degenerate) {
    const auto kind = system_from_string(system);
    if (!kind) throw ParameterError("unknown system '" + system + "'");
    const auto prm = params_from(c, allow_degenerate);
    const auto r = classify(prm, *kind, allow_degenerate);
    ordered_json j;
    j["p"] = prm.p;
    j["q"] = prm.q;
    j["s"] = prm.s;
    j["d"] = prm.d;
    j["system"] = std::string(to_string(*kind));
    j["regime"] = std::string(to_string(r.regime));
    j["citation"] = r.citation;
    j["notes"] = r.notes;
    emit(c.out, j.dump(2) + "\n");
    return 0;
}

// ============================================================================
// generate
// ============================================================================

struct GenerateOptions {
    std::string family;
    std::string rule = "trivial-dual";
    std::vector<double> coefficients;
    std::string dist = "uniform";
    std::optional<int> densify;
    bool spec_only = false;
};

void emit_dense(const Common& c, const DyadicStepFunction& f) {
    if (c.format == "binary") {
        std::ostringstream os;
        io::write_dense_binary(os, f);
        emit(c.out, os.str());
    } else {
        emit(c.out, io::dense_to_json(f));
    }
}

void emit_sparse(const Common& c, const SparseStepFunction& f, std::optional<int> densify_level,
                 const Limits& limits) {
    if (densify_level) {
        emit_dense(c, densify(f, *densify_level, limits));
        return;
    }
    if (c.format == "binary") throw ParameterError("binary output needs --densify");
    emit(c.out, io::sparse_to_json(f));
}

int run_generate(const Common& c, const GenerateOptions& g) {
    const Limits limits{c.max_cells};
    const int d = c.d.value_or(1);
    if (!c.format.empty() && c.format != "json" && c.format != "binary")
        throw ParameterError("generate writes --format json or binary");
    if (g.family == "random") {
        if (!c.m) throw ParameterError("random needs --m");
        Distribution dist;
        if (g.dist == "uniform") dist = Distribution::Uniform;
        else if (g.dist == "normal") dist = Distribution::Normal;
        else throw ParameterError("unknown distribution '" + g.dist + "'");
        emit_dense(c, random_step(c.seed, d, *c.m, dist, limits));
        return 0;
    }
    if (g.family == "nested") {
        if (!c.m) throw ParameterError("nested needs --m");
        const auto rule = nested_rule_from_string(g.rule);
        if (!rule) throw ParameterError("unknown rule '" + g.rule + "'");
        NestedSpec spec{d, *c.m, *rule, g.coefficients, {}};
        spec.validate();
        if (g.spec_only) emit(c.out, io::nested_spec_to_json(spec));
        else emit_sparse(c, nested_family(spec), g.densify, limits);
        return 0;
    }
    if (g.family == "spike") {
        if (!c.m) throw ParameterError("spike needs --m");
        emit_sparse(c, spike(*c.m, d), g.densify, limits);
        return 0;
    }
    if (g.family == "spike-partial") {
        if (!c.k) throw ParameterError("spike-partial needs --k");
        emit_sparse(c, spike_partial_sum(*c.k, d), g.densify, limits);
        return 0;
    }
    if (g.family == "scattered") {
        if (!c.k) throw ParameterError("scattered needs --k");
        const double alpha = c.alpha.value_or(c.q ? 1.0 / (2.0 * *c.q) : 0.5);
        ScatteredSpec spec{*c.k, d, alpha};
        spec.validate();
        if (g.spec_only) emit(c.out, io::scattered_spec_to_json(spec));
        else emit_sparse(c, scattered(spec), g.densify, limits);
        return 0;
    }
    if (g.family == "tensor-spike") {
        if (!c.k) throw ParameterError("tensor-spike needs --k");
        emit_dense(c, tensor_spike_pair(*c.k, d, limits).f);
        return 0;
    }
    throw ParameterError("unknown family '" + g.family + "'");
}

// ============================================================================
// norm
// ============================================================================

int run_norm(const Common& c, const std::string& path, const std::string& kind) {
    const Limits limits{c.max_cells};
    const auto doc = io::read_document(read_file(path), limits);
    const bool all = kind == "all";
    static const std::vector<std::string> kinds{"lp", "a", "b", "lqlp", "linf", "square", "b0221", "all"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw ParameterError("unknown norm kind '" + kind + "'");
    if (!c.p) throw ParameterError("--p is required");
    const double p = *c.p;
    auto want = [&](const char* k) { return all || kind == k; };
    auto needs_params = [&] { return c.q && c.s; };

    ordered_json j;
    j["p"] = p;
    if (c.q) j["q"] = num(*c.q);
    if (c.s) j["s"] = *c.s;

    auto sequence_norms = [&](const CoefficientBlockView& view, int d) {
        if (!needs_params()) {
            if (!all) throw ParameterError("--q and --s are required");
            return;
        }
        const auto prm = BesovParams::make(p, *c.q, *c.s, d);
        if (prm.q_infinite()) {
            if (want("linf")) {
                const auto r = linf_lp_norm(view, prm);
                j["linf"] = num(r.value);
                ordered_json per = ordered_json::array();
                for (double v : r.per_level) per.push_back(num(v));
                j["linf_per_level"] = per;
            }
        } else if (want("lqlp")) {
            j["lqlp"] = num(lqlp_norm(view, prm));
        } else if (kind == "linf") {
            throw ParameterError("linf needs --q inf");
        }
    };

    if (const auto* f = std::get_if<DyadicStepFunction>(&doc)) {
        j["d"] = f->dim();
        j["m"] = f->level();
        if (want("lp")) j["lp"] = num(lp_quasinorm(*f, p));
        if (needs_params() && !std::isinf(*c.q)) {
            const auto prm = BesovParams::make(p, *c.q, *c.s, f->dim());
            if (want("a")) j["a"] = num(a_norm(*f, prm));
            if (want("b")) j["b"] = num(b_norm_modulus(*f, prm));
        } else if (!all && (kind == "a" || kind == "b")) {
            throw ParameterError("--q (finite) and --s are required");
        }
        if (want("lqlp") || want("linf")) sequence_norms(CoefficientBlockView::from_coefficients(analyze(*f)), f->dim());
        if (want("square")) j["square"] = num(square_function_norm(*f, p));
        if (want("b0221")) j["b0221"] = num(b0_221_weighted_sum(*f));
    } else if (const auto* f = std::get_if<SparseStepFunction>(&doc)) {
        j["d"] = f->dim();
        j["max_level"] = f->max_level();
        if (want("lp")) {
            j["lp"] = num(lp_quasinorm(*f, p));
            j["log2_lp"] = num(log2_lp_quasinorm(*f, p));
        }
        if (needs_params() && !std::isinf(*c.q)) {
            if (want("a")) j["a"] = num(a_norm(*f, BesovParams::make(p, *c.q, *c.s, f->dim())));
        } else if (!all && kind == "a") {
            throw ParameterError("--q (finite) and --s are required");
        }
        if (!all && (kind == "b" || kind == "square" || kind == "b0221"))
            throw ParameterError(kind + " needs a dense function");
        if (want("lqlp") || want("linf")) sequence_norms(CoefficientBlockView::from_sparse(*f), f->dim());
    } else if (const auto* hc = std::get_if<HaarCoefficients>(&doc)) {
        j["d"] = hc->dim();
        j["K"] = hc->max_level();
        if (!all && kind != "lqlp" && kind != "linf") throw ParameterError(kind + " needs a function, not coefficients");
        sequence_norms(CoefficientBlockView::from_coefficients(*hc), hc->dim());
    } else {
        throw ParameterError("norms of tensor coefficients are not defined");
    }
    emit(c.out, j.dump(2) + "\n");
    return 0;
}

// ============================================================================
// transform
// ============================================================================

int run_transform(const Common& c, const std::string& path, const std::string& system, bool inverse) {
    const Limits limits{c.max_cells};
    const auto doc = io::read_document(read_file(path), limits);
    const auto kind = system_from_string(system);
    if (!kind) throw ParameterError("unknown system '" + system + "'");
    if (!inverse) {
        const auto* f = std::get_if<DyadicStepFunction>(&doc);
        if (!f) throw ParameterError("transform needs a dense function (generate --densify)");
        emit(c.out, *kind == HaarSystemKind::Isotropic ? io::coefficients_to_json(analyze(*f))
                                                       : io::tensor_to_json(tensor_analyze(*f)));
        return 0;
    }
    if (const auto* hc = std::get_if<HaarCoefficients>(&doc)) {
        if (*kind != HaarSystemKind::Isotropic) throw ParameterError("isotropic coefficients given with --system tensor");
        emit_dense(c, synthesize(*hc, c.m.value_or(hc->max_level()), limits));
    } else if (const auto* tc = std::get_if<TensorHaarCoefficients>(&doc)) {
        if (*kind != HaarSystemKind::Tensor) throw ParameterError("tensor coefficients given with --system isotropic");
        emit_dense(c, tensor_synthesize(*tc));
    } else {
        throw ParameterError("--inverse needs a coefficient document");
    }
    return 0;
}

// ============================================================================
// experiment
// ============================================================================

int run_experiment_cmd(const Common& c, const std::string& name) {
    if (!c.format.empty() && c.format != "csv" && c.format != "json")
        throw ParameterError("experiment writes --format csv or json");
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.p = c.p;
    cfg.q = c.q;
    cfg.s = c.s;
    cfg.alpha = c.alpha;
    cfg.d = c.d;
    cfg.m_min = c.m_min;
    cfg.m_max = c.m;
    cfg.k_min = c.k_min;
    cfg.k_max = c.k_max;
    cfg.samples = c.samples;
    cfg.seed = c.seed;
    const auto report = run_experiment(cfg);
    if (!c.out.empty() && c.out != "-" && c.format.empty()) {
        emit(c.out + ".csv", render_csv(report));
        emit(c.out + ".json", render_json(report));
    } else {
        emit(c.out, c.format == "csv" ? render_csv(report) : render_json(report));
    }
    return report.passed() ? 0 : 2;
}

void add_params(CLI::App* app, Common& c) {
    app->add_option("--p", c.p, "integrability exponent p > 0");
    app->add_option("--q", c.q, "fine index q > 0 (inf allowed where noted)");
    app->add_option("--s", c.s, "smoothness s >= 0");
    app->add_option("--d", c.d, "dimension")->check(CLI::Range(1, kMaxDim));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haar systems and Besov quasi-norms on dyadic step functions"};
    app.require_subcommand(1);
    Common c;

    auto* cls = app.add_subcommand("classify", "basis regime of the Haar system for (p, q, s, d)");
    add_params(cls, c);
    std::string system = "isotropic";
    bool allow_degenerate = false;
    cls->add_option("--system", system, "isotropic | tensor");
    cls->add_flag("--allow-degenerate", allow_degenerate, "map s >= 1/p to the degenerate regime");
    cls->add_option("--out", c.out, "output file (default stdout)");

    auto* gen = app.add_subcommand("generate", "emit a function of one of the test families");
    GenerateOptions g;
    gen->add_option("family", g.family, "nested | spike | spike-partial | scattered | tensor-spike | random")
        ->required();
    add_params(gen, c);
    gen->add_option("--m", c.m, "level (nested, spike, random)");
    gen->add_option("--k", c.k, "index (spike-partial, scattered, tensor-spike)");
    gen->add_option("--alpha", c.alpha, "scattered decay exponent (default 1/(2q), or 1/2)");
    gen->add_option("--rule", g.rule, "nested rule: trivial-dual | alternating | explicit");
    gen->add_option("--coefficients", g.coefficients, "explicit nested coefficients a_0 .. a_m");
    gen->add_option("--dist", g.dist, "random: uniform | normal");
    gen->add_option("--seed", c.seed, "random seed");
    gen->add_option("--densify", g.densify, "write a dense function on this level");
    gen->add_flag("--spec", g.spec_only, "write the family spec instead (nested, scattered)");
    gen->add_option("--format", c.format, "json | binary");
    gen->add_option("--out", c.out, "output file (default stdout)");
    gen->add_option("--max-cells", c.max_cells, "dense cell budget");

    auto* nrm = app.add_subcommand("norm", "quasi-norms of a function or coefficient file");
    std::string input, kind = "all";
    nrm->add_option("input", input, "dense (JSON or binary), sparse or coefficient file")->required();
    add_params(nrm, c);
    nrm->add_option("--kind", kind, "lp | a | b | lqlp | linf | square | b0221 | all");
    nrm->add_option("--out", c.out, "output file (default stdout)");
    nrm->add_option("--max-cells", c.max_cells, "dense cell budget");

    auto* trf = app.add_subcommand("transform", "Haar analysis or synthesis");
    bool inverse = false;
    std::string tsystem = "isotropic";
    trf->add_option("input", input, "dense function, or coefficients with --inverse")->required();
    trf->add_option("--system", tsystem, "isotropic | tensor");
    trf->add_flag("--inverse", inverse, "synthesize from coefficients");
    trf->add_option("--m", c.m, "synthesis level (isotropic; default K)");
    trf->add_option("--format", c.format, "json | binary (synthesis output)");
    trf->add_option("--out", c.out, "output file (default stdout)");
    trf->add_option("--max-cells", c.max_cells, "dense cell budget");

    auto* exp = app.add_subcommand("experiment", "run a named experiment and report pass/fail");
    std::string name;
    exp->add_option("name", name, "equivalence | modulus-vs-approx | trivial-dual | uncond-fail | basis-fail | "
                                  "tensor-fail | classify-sweep")
        ->required();
    add_params(exp, c);
    exp->add_option("--seed", c.seed, "random seed");
    exp->add_option("--m", c.m, "largest level m");
    exp->add_option("--mmin", c.m_min, "smallest level m");
    exp->add_option("--kmin", c.k_min, "smallest k");
    exp->add_option("--kmax", c.k_max, "largest k");
    exp->add_option("--samples", c.samples, "random functions per study");
    exp->add_option("--alpha", c.alpha, "basis-fail decay exponent");
    exp->add_option("--format", c.format, "csv | json (default: both files with --out, json on stdout)");
    exp->add_option("--out", c.out, "output prefix (PREFIX.csv, PREFIX.json) or file with --format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cls->parsed()) return run_classify(c, system, allow_degenerate);
        if (gen->parsed()) return run_generate(c, g);
        if (nrm->parsed()) return run_norm(c, input, kind);
        if (trf->parsed()) return run_transform(c, input, tsystem, inverse);
        if (exp->parsed()) return run_experiment_cmd(c, name);
    } catch (const std::exception& e) {
        std::cerr << "haar-besov: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
