// rmcover: command-line front end for classification, invariants, equivalence,
// nonlinearity probes and radius bounds.
//
// Exit status: 0 success, 1 error, 2 usage, 3 unresolved equivalence,
// 4 inconsistent radius table.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmcover/classification.hpp"
#include "rmcover/digest.hpp"
#include "rmcover/equivalence.hpp"
#include "rmcover/error.hpp"
#include "rmcover/invariant.hpp"
#include "rmcover/io.hpp"
#include "rmcover/nonlinearity.hpp"
#include "rmcover/pipeline.hpp"
#include "rmcover/radius.hpp"
#include "rmcover/version.hpp"

namespace {

using namespace rmcover;

constexpr int kExitError = 1;
constexpr int kExitUnresolved = 3;
constexpr int kExitInconsistent = 4;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return in;
}

Classification load_classification(const std::string& path) {
    std::ifstream in = open_input(path);
    try {
        return read_classification(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<FunctionRecord> load_functions(const std::string& path) {
    std::ifstream in = open_input(path);
    try {
        return read_functions(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// Effective configuration minus output destinations, so that identical runs
/// written to different files share a digest.
std::string result_config(const CLI::App& app) {
    std::istringstream in(app.config_to_str(true, false));
    std::string kept, line;
    while (std::getline(in, line)) {
        const std::string key = line.substr(0, line.find('='));
        if (key.ends_with("report") || key.ends_with("out")) continue;
        kept += line + '\n';
    }
    return kept;
}

/// Collects a report and writes it in one piece. The header pins the tool
/// version and a digest of the effective configuration.
class Report {
public:
    Report(const std::string& command, const CLI::App& app) {
        out_ << "# rmcover " << kVersion << '\n';
        out_ << "# command " << command << '\n';
        out_ << "# config " << digest_of(command + '\n' + result_config(app)) << '\n';
    }

    template <class T>
    Report& operator<<(const T& v) {
        out_ << v;
        return *this;
    }

    void flush_to(const std::string& path) const {
        if (path.empty() || path == "-") {
            std::cout << out_.str() << std::flush;
            return;
        }
        std::ofstream f(path);
        if (!f) throw Error("cannot write '" + path + "'");
        f << out_.str();
    }

private:
    std::ostringstream out_;
};

void write_classification_file(const Classification& c, const std::string& path) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    write_classification(f, c);
}

SpaceParams checked_space(int s, int t, int m) {
    check_dimension(m);
    if (s < 0 || t > m || s > t + 1) throw Error("invalid space " + SpaceParams{s, t, m}.to_string());
    return {s, t, m};
}

struct Common {
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::string out;
};

void add_jobs(CLI::App* cmd, Common& c) {
    cmd->add_option("--jobs", c.jobs, "worker threads")->envname("RMCOVER_JOBS")->check(CLI::Range(1U, 1024U));
}

struct OracleArgs {
    int s = 0, t = 0, m = 0;
    bool no_stabilizers = false;
    std::uint64_t max_elements = std::uint64_t{1} << 26;
    std::string file;
};

void add_oracle_options(CLI::App* cmd, OracleArgs& a, Common& c) {
    cmd->add_option("--s", a.s, "valuation")->required();
    cmd->add_option("--t", a.t, "degree")->required();
    cmd->add_option("--m", a.m, "variables")->required();
    cmd->add_flag("--no-stabilizers", a.no_stabilizers, "skip stabilizer generators");
    cmd->add_option("--max-elements", a.max_elements, "enumeration guard");
    cmd->add_option("--out", a.file, "classification file to write");
    cmd->add_option("--report", c.out, "report file (default stdout)");
}

int run_oracle(const OracleArgs& a, const Common& c, const CLI::App& app, const std::string& name) {
    const SpaceParams p = checked_space(a.s, a.t, a.m);
    const Classification cls = orbit_enumerate(p, OrbitOptions{a.max_elements, !a.no_stabilizers});
    write_classification_file(cls, a.file);
    Report r(name, app);
    r << "space " << p.to_string() << '\n' << "classes " << cls.size() << '\n' << "digest " << cls.digest << '\n';
    for (std::size_t i = 0; i < cls.size(); ++i)
        r << "class " << i << ' ' << cls.orbit_sizes[i] << ' ' << format_anf(cls.reps[i].anf()) << '\n';
    r.flush_to(c.out);
    return 0;
}

struct RunArgs {
    int s = 0, t = 0, m = 0;
    std::string sub;
    std::string sub_sub;
    std::int64_t iter = 1 << 14;
    std::uint64_t max_elements = std::uint64_t{1} << 26;
    std::string file;
};

int run_classify(const RunArgs& a, const Common& c, const CLI::App& app) {
    const SpaceParams p = checked_space(a.s, a.t, a.m);
    const Classification sub = load_classification(a.sub);
    std::optional<Classification> sub_sub;
    if (!a.sub_sub.empty()) sub_sub = load_classification(a.sub_sub);
    PipelineReport rep = classify_pipeline(p, sub, PipelineBudgets{a.iter, c.seed, c.jobs, a.max_elements},
                                           sub_sub ? &*sub_sub : nullptr);
    const std::uint64_t dim = space_dimension(p);
    Classification& cls = rep.classification;
    if (dim < 63 && (std::uint64_t{1} << dim) <= a.max_elements && rep.unresolved.empty()) {
        rebuild_lookup(cls, a.max_elements);
        cls.stabilizers.clear();
        for (const QuotientFunction& f : cls.reps) cls.stabilizers.push_back(compute_stabilizer(f, agl_generators(p.m)));
    }
    write_classification_file(cls, a.file);
    Report r("classify run", app);
    r << "seed " << c.seed << '\n'
      << "space " << p.to_string() << '\n'
      << "sub-digest " << sub.digest << '\n'
      << "cover " << rep.cover_size << '\n'
      << "distinct-j " << rep.distinct_j << '\n'
      << "distinct-jhat " << rep.distinct_j_hat << '\n'
      << "equivalence-calls " << rep.equivalence_calls << '\n'
      << "classes " << cls.size() << '\n'
      << "digest " << cls.digest << '\n';
    for (std::size_t i = 0; i < cls.size(); ++i) r << "class " << i << ' ' << format_anf(cls.reps[i].anf()) << '\n';
    for (const UnresolvedPair& u : rep.unresolved)
        r << "unresolved " << format_anf(u.first.anf()) << " | " << format_anf(u.second.anf()) << '\n';
    r.flush_to(c.out);
    return rep.unresolved.empty() ? 0 : kExitUnresolved;
}

QuotientFunction record_in_space(const FunctionRecord& rec, const SpaceParams& p) {
    if (rec.space) {
        if (!(*rec.space == p))
            throw ParseError("function space " + rec.space->to_string() + " does not match " + p.to_string(), rec.line);
        return rec.quotient();
    }
    if (rec.function.vars() != p.m) throw ParseError("function has the wrong number of variables", rec.line);
    const DegreeInfo d = degree_valuation(to_anf(rec.function));
    if (!d.is_zero() && d.degree > p.t) throw ParseError("function degree exceeds t", rec.line);
    return project(rec.function, p.s, p.t);
}

SpaceParams lifted_space(const Classification& sub) { return {sub.params.s + 1, sub.params.t + 1, sub.params.m + 1}; }

struct InvariantArgs {
    std::string sub;
    std::string in;
};

int run_invariant(const InvariantArgs& a, const Common& c, const CLI::App& app) {
    const Classification sub = load_classification(a.sub);
    const SpaceParams p = lifted_space(sub);
    const auto records = load_functions(a.in);
    const LookupResolver resolve(sub);
    Report r("invariant", app);
    r << "space " << p.to_string() << '\n' << "sub-digest " << sub.digest << '\n';
    for (const FunctionRecord& rec : records) {
        const QuotientFunction f = record_in_space(rec, p);
        const ClassMap cm = class_map(f, sub, std::cref(resolve));
        r << "function " << rec.line << ' ' << format_anf(f.anf()) << '\n'
          << format_signature(j_signature(cm)) << '\n'
          << format_signature(j_hat_signature(cm)) << '\n';
    }
    r.flush_to(c.out);
    return 0;
}

struct EquivArgs {
    std::string sub;
    std::string in;
    std::int64_t iter = 1 << 14;
};

int run_equiv(const EquivArgs& a, const Common& c, const CLI::App& app) {
    const Classification sub = load_classification(a.sub);
    const SpaceParams p = lifted_space(sub);
    const auto records = load_functions(a.in);
    if (records.size() != 2) throw Error("equiv expects exactly two functions in '" + a.in + "'");
    const QuotientFunction f = record_in_space(records[0], p);
    const QuotientFunction g = record_in_space(records[1], p);
    Rng rng(c.seed);
    const EquivalenceOutcome o = equivalent(f, g, sub, a.iter, rng);
    Report r("equiv", app);
    r << "seed " << c.seed << '\n'
      << "space " << p.to_string() << '\n'
      << "verdict " << to_string(o.verdict) << '\n'
      << "candidates " << o.candidates_tested << '\n'
      << "budget-used " << o.budget_used << '\n';
    if (o.witness) r << "witness " << format_affine(*o.witness) << '\n';
    r.flush_to(c.out);
    return o.verdict == Verdict::Undefined ? kExitUnresolved : 0;
}

struct NlArgs {
    int k = 0;
    int m = 0;
    std::size_t limit = 0;
    std::uint64_t iter = 565252;
    std::string in;
    std::string reps;
    bool dirac = false;
    std::vector<std::size_t> only;
};

BooleanFunction record_function(const FunctionRecord& rec, int m) {
    if (rec.function.vars() != m) throw ParseError("function has the wrong number of variables", rec.line);
    return rec.function;
}

int run_nl_probe(const NlArgs& a, const Common& c, const CLI::App& app) {
    const auto records = load_functions(a.in);
    std::vector<ProbeResult> results(records.size());
    parallel_for(records.size(), c.jobs, [&](std::size_t i) {
        results[i] = nl_probe(a.k, a.m, record_function(records[i], a.m), a.iter, a.limit, derive_seed(c.seed, i));
    });
    Report r("nl probe", app);
    r << "seed " << c.seed << '\n' << "order " << a.k << '\n' << "limit " << a.limit << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ProbeResult& pr = results[i];
        r << "probe " << records[i].line << " found " << (pr.found ? 1 : 0) << " best " << pr.best_weight << " passes "
          << pr.passes_used << " seed " << pr.seed << '\n';
    }
    r.flush_to(c.out);
    return 0;
}

int run_nl_exact(const NlArgs& a, const Common& c, const CLI::App& app) {
    const auto records = load_functions(a.in);
    Report r("nl exact", app);
    r << "order " << a.k << '\n';
    for (const FunctionRecord& rec : records)
        r << "exact " << rec.line << ' ' << exact_nonlinearity(a.k, a.m, record_function(rec, a.m)) << '\n';
    r.flush_to(c.out);
    return 0;
}

int run_nl_scan(const NlArgs& a, const Common& c, const CLI::App& app) {
    const Classification reps = load_classification(a.reps);
    ScanOptions opt;
    opt.limit = a.limit;
    opt.iter = a.iter;
    opt.seed = c.seed;
    opt.jobs = c.jobs;
    opt.dirac = a.dirac;
    opt.only = a.only;
    const ScanReport rep = scan_representatives(a.k, reps, opt);
    Report r("nl scan", app);
    r << "seed " << c.seed << '\n'
      << "reps-digest " << reps.digest << '\n'
      << "order " << a.k << '\n'
      << "limit " << a.limit << '\n';
    for (const ScanEntry& e : rep.entries) {
        r << "scan " << e.rep;
        if (e.dirac) r << " dirac " << *e.dirac;
        r << " found " << (e.result.found ? 1 : 0) << " best " << e.result.best_weight << " passes "
          << e.result.passes_used << " seed " << e.result.seed << '\n';
    }
    r << "found " << rep.found().size() << '\n' << "not-found " << rep.not_found().size() << '\n';
    r.flush_to(c.out);
    return 0;
}

int run_radius(const std::string& table_path, const Common& c, const CLI::App& app) {
    std::ifstream in = open_input(table_path);
    RadiusTable input;
    try {
        input = read_radius_table(in);
    } catch (const ParseError& e) {
        throw ParseError(table_path + ": " + e.what());
    }
    RadiusTable closed;
    try {
        closed = bounds_propagate(input);
    } catch (const InconsistentTable& e) {
        Report r("radius bounds", app);
        r << "inconsistent " << e.what() << '\n';
        r.flush_to(c.out);
        return kExitInconsistent;
    }
    Report r("radius bounds", app);
    std::ostringstream body;
    write_radius_table(body, closed);
    r << body.str();
    r.flush_to(c.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reed-Muller covering radius toolkit"};
    app.set_version_flag("--version", std::string("rmcover ") + kVersion);
    app.require_subcommand(1);

    Common common;
    int status = 0;

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "exhaustive orbit classification");
    add_oracle_options(oracle, oracle_args, common);
    oracle->callback([&] { status = run_oracle(oracle_args, common, app, "oracle"); });

    auto* classify = app.add_subcommand("classify", "classification pipeline");
    classify->require_subcommand(1);
    auto* classify_oracle = classify->add_subcommand("oracle", "exhaustive orbit classification");
    add_oracle_options(classify_oracle, oracle_args, common);
    classify_oracle->callback([&] { status = run_oracle(oracle_args, common, app, "classify oracle"); });

    RunArgs run_args;
    auto* classify_run = classify->add_subcommand("run", "cover set, invariants and equivalence merging");
    classify_run->add_option("--s", run_args.s)->required();
    classify_run->add_option("--t", run_args.t)->required();
    classify_run->add_option("--m", run_args.m)->required();
    classify_run->add_option("--sub", run_args.sub, "classification of B(s-1,t-1,m-1)")->required();
    classify_run->add_option("--sub-sub", run_args.sub_sub, "classification of B(s-2,t-2,m-2), for a sub without lookup");
    classify_run->add_option("--budget-iter", run_args.iter, "equivalence budget");
    classify_run->add_option("--max-elements", run_args.max_elements, "enumeration guard");
    classify_run->add_option("--seed", common.seed);
    classify_run->add_option("--out", run_args.file, "classification file to write");
    classify_run->add_option("--report", common.out, "report file (default stdout)");
    add_jobs(classify_run, common);
    classify_run->callback([&] { status = run_classify(run_args, common, app); });

    InvariantArgs inv_args;
    auto* invariant = app.add_subcommand("invariant", "J and J-hat signatures");
    invariant->add_option("--sub", inv_args.sub, "classification of B(s-1,t-1,m-1)")->required();
    invariant->add_option("--in", inv_args.in, "function file")->required();
    invariant->add_option("--report", common.out, "report file (default stdout)");
    invariant->callback([&] { status = run_invariant(inv_args, common, app); });

    EquivArgs eq_args;
    auto* equiv = app.add_subcommand("equiv", "tri-state equivalence test");
    equiv->add_option("--sub", eq_args.sub, "classification of B(s-1,t-1,m-1)")->required();
    equiv->add_option("--in", eq_args.in, "file with the two functions")->required();
    equiv->add_option("--iter", eq_args.iter, "candidate budget");
    equiv->add_option("--seed", common.seed);
    equiv->add_option("--report", common.out, "report file (default stdout)");
    equiv->callback([&] { status = run_equiv(eq_args, common, app); });

    NlArgs nl_args;
    auto* nl = app.add_subcommand("nl", "nonlinearity");
    nl->require_subcommand(1);
    auto* probe = nl->add_subcommand("probe", "randomized elimination probe");
    probe->add_option("--k", nl_args.k)->required();
    probe->add_option("--m", nl_args.m)->required();
    probe->add_option("--limit", nl_args.limit)->required();
    probe->add_option("--iter", nl_args.iter, "passes per function");
    probe->add_option("--seed", common.seed);
    probe->add_option("--in", nl_args.in, "function file")->required();
    probe->add_option("--report", common.out, "report file (default stdout)");
    add_jobs(probe, common);
    probe->callback([&] { status = run_nl_probe(nl_args, common, app); });

    auto* exact = nl->add_subcommand("exact", "exact nonlinearity for small parameters");
    exact->add_option("--k", nl_args.k)->required();
    exact->add_option("--m", nl_args.m)->required();
    exact->add_option("--in", nl_args.in, "function file")->required();
    exact->add_option("--report", common.out, "report file (default stdout)");
    exact->callback([&] { status = run_nl_exact(nl_args, common, app); });

    auto* scan = nl->add_subcommand("scan", "probe every representative of a classification");
    scan->add_option("--k", nl_args.k)->required();
    scan->add_option("--limit", nl_args.limit)->required();
    scan->add_option("--reps", nl_args.reps, "classification file")->required();
    scan->add_option("--iter", nl_args.iter, "passes per function");
    scan->add_option("--seed", common.seed);
    scan->add_flag("--dirac", nl_args.dirac, "probe rep + delta_a for every point a");
    scan->add_option("--only", nl_args.only, "representative indices to probe");
    scan->add_option("--report", common.out, "report file (default stdout)");
    add_jobs(scan, common);
    scan->callback([&] { status = run_nl_scan(nl_args, common, app); });

    std::string table_path;
    auto* radius = app.add_subcommand("radius", "covering radius tables");
    radius->require_subcommand(1);
    auto* bounds = radius->add_subcommand("bounds", "close a table under the recursive bounds");
    bounds->add_option("--table", table_path, "radius table file")->required();
    bounds->add_option("--report", common.out, "report file (default stdout)");
    bounds->callback([&] { status = run_radius(table_path, common, app); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "rmcover: error: " << e.what() << '\n';
        return kExitError;
    }
    return status;
}
