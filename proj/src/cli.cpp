#include "flexautomata/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flexautomata/apta.hpp"
#include "flexautomata/discretize.hpp"
#include "flexautomata/error.hpp"
#include "flexautomata/learner.hpp"
#include "flexautomata/predict.hpp"
#include "flexautomata/sample_io.hpp"

namespace flexautomata::cli {

namespace {

/// A data problem tied to a file; reported with exit code 2.
struct DataError {
    std::string where;
    std::string what;
};

std::string read_text(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError{path, "cannot open file"};
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError{path, "cannot open file for writing"};
    f << text;
}

// Runs fn and rethrows library errors as DataError tagged with the file name.
template <typename Fn>
auto with_context(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw DataError{where, e.what()};
    }
}

Automaton read_model(const std::string& path, std::istream& in) {
    const std::string text = read_text(path, in);
    return with_context(path, [&] { return load_model(text); });
}

Sample read_sample(const std::string& path, const std::string& format, std::istream& in) {
    const std::string text = read_text(path, in);
    return with_context(path, [&] {
        return format == "abbadingo" ? parse_abbadingo(text) : parse_augmented(text);
    });
}

std::vector<double> read_series(const std::string& path, bool skip_header, std::istream& in) {
    const std::string text = read_text(path, in);
    std::vector<double> values;
    std::istringstream ls(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(ls, line)) {
        ++number;
        if (number == 1 && skip_header) continue;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        double v{};
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw DataError{path, "line " + std::to_string(number) + ": expected a real, got '" + tok + "'"};
        }
        values.push_back(v);
    }
    return values;
}

struct LearnArgs {
    std::string input;
    std::string format = "abbadingo";
    std::string heuristic = "edsm";
    double alpha = 0.05;
    double penalty = 0.0;
    double min_evidence = 0.0;
    std::string output;
    std::string dot;
    bool trace = false;
    std::size_t max_iterations = 0;
    unsigned threads = 1;
};

struct PredictArgs {
    std::string model;
    std::string input;
    std::string format = "augmented";
    std::string fallback = "mean";
};

struct GenerateArgs {
    std::string model;
    std::size_t n = 10;
    std::uint64_t seed = 0;
    std::size_t max_len = 20;
};

struct EvalArgs {
    std::string model;
    std::string input;
    std::string format = "augmented";
};

struct DiscretizeArgs {
    std::string input;
    std::size_t bins = 3;
    std::string method = "uniform";
    std::size_t window = 3;
    std::string target = "delta";
    bool skip_header = false;
};

int do_learn(const LearnArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Sample sample = read_sample(args.input, args.format, in);
    LearnerConfig cfg;
    if (args.heuristic == "alergia") {
        cfg.heuristic = Alergia{args.alpha};
    } else if (args.heuristic == "mse") {
        cfg.heuristic = Mse{args.penalty};
    }
    cfg.min_evidence = args.min_evidence;
    if (args.max_iterations > 0) cfg.max_iterations = args.max_iterations;
    cfg.debug_trace = args.trace;
    cfg.threads = args.threads;
    LearnResult res = with_context(args.input, [&] { return learn(sample, cfg); });
    if (args.trace) err << res.log.to_text();
    write_text(args.output, save_model(res.model), out);
    if (!args.dot.empty()) write_text(args.dot, write_dot(res.model), out);
    return kExitOk;
}

int do_predict(const PredictArgs& args, std::istream& in, std::ostream& out) {
    Automaton model = read_model(args.model, in);
    Sample sample = read_sample(args.input, args.format, in);
    PredictionConfig cfg;
    if (args.fallback == "last") cfg.fallback = Fallback::LastState;
    if (args.fallback == "error") cfg.fallback = Fallback::Error;
    std::ostringstream os;
    for (std::size_t i = 0; i < sample.traces.size(); ++i) {
        const Word w = sample.traces[i].word();
        double v = with_context(args.input, [&] {
            try {
                return predict_value(model, w, cfg);
            } catch (const DomainError& e) {
                throw DomainError("trace " + std::to_string(i + 1) + ": " + e.what());
            }
        });
        os << format_real(v) << '\n';
    }
    out << os.str();
    return kExitOk;
}

int do_generate(const GenerateArgs& args, std::istream& in, std::ostream& out) {
    Automaton model = read_model(args.model, in);
    auto words = with_context(args.model, [&] { return sample_words(model, args.n, args.seed, args.max_len); });
    std::vector<std::pair<TraceLabel, Word>> labeled;
    labeled.reserve(words.size());
    for (auto& w : words) labeled.emplace_back(TraceLabel::Positive, std::move(w));
    out << write_abbadingo(make_sample(labeled, model.alphabet_size()));
    return kExitOk;
}

int do_eval(const EvalArgs& args, std::istream& in, std::ostream& out) {
    Automaton model = read_model(args.model, in);
    Sample sample = read_sample(args.input, args.format, in);
    std::size_t accepted = 0;
    std::size_t correct = 0;
    std::size_t labeled = 0;
    for (const Trace& t : sample.traces) {
        const Word w = t.word();
        bool acc = false;
        bool in_alphabet = std::all_of(w.begin(), w.end(), [&](Symbol s) { return s < model.alphabet_size(); });
        if (in_alphabet) acc = compute(model, w).accepted();
        accepted += acc ? 1 : 0;
        if (t.label == TraceLabel::Positive) {
            ++labeled;
            correct += acc ? 1 : 0;
        } else if (t.label == TraceLabel::Negative) {
            ++labeled;
            correct += acc ? 0 : 1;
        }
    }
    std::ostringstream os;
    os << "traces " << sample.traces.size() << '\n';
    os << "accepted " << accepted << '\n';
    os << "rejected " << sample.traces.size() - accepted << '\n';
    os << "accuracy " << correct << '/' << labeled;
    if (labeled > 0) os << ' ' << format_real(static_cast<double>(correct) / static_cast<double>(labeled));
    os << '\n';
    if (sample.has_targets()) {
        double sse = 0.0;
        std::size_t n = 0;
        with_context(args.model, [&] {
            for (const Trace& t : sample.traces) {
                Word prefix;
                for (const SymbolInstance& s : t.symbols) {
                    prefix.push_back(s.symbol);
                    if (!s.target) continue;
                    const double d = predict_value(model, prefix) - *s.target;
                    sse += d * d;
                    ++n;
                }
            }
            return 0;
        });
        os << "mse " << format_real(sse / static_cast<double>(n)) << '\n';
    }
    out << os.str();
    return kExitOk;
}

int do_discretize(const DiscretizeArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto series = read_series(args.input, args.skip_header, in);
    DiscretizationSpec spec;
    if (args.method == "quantile") {
        spec.method = QuantileBins{args.bins};
    } else {
        spec.method = UniformBins{args.bins};
    }
    spec.window = args.window;
    spec.target = args.target == "value" ? TargetKind::NextValue : TargetKind::NextDelta;
    Discretization d = with_context(args.input, [&] { return discretize(series, spec); });
    for (const auto& w : d.warnings) err << "warning: " << w << '\n';
    out << write_augmented(d.sample);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learn, inspect and use state-merged automata", "flexautomata"};
    app.require_subcommand(1);

    LearnArgs la;
    auto* learn_cmd = app.add_subcommand("learn", "Learn a model from a sample");
    learn_cmd->add_option("--input", la.input, "Sample file ('-' for stdin)")->required();
    learn_cmd->add_option("--format", la.format, "Sample format")->check(CLI::IsMember({"abbadingo", "augmented"}));
    learn_cmd->add_option("--heuristic", la.heuristic, "Evidence heuristic")
        ->check(CLI::IsMember({"edsm", "alergia", "mse"}));
    learn_cmd->add_option("--alpha", la.alpha, "Significance level for alergia");
    learn_cmd->add_option("--penalty", la.penalty, "Per-merged-pair bonus for mse");
    learn_cmd->add_option("--min-evidence", la.min_evidence, "Merges scoring below this are not taken");
    learn_cmd->add_option("--output", la.output, "Model file (default stdout)");
    learn_cmd->add_option("--dot", la.dot, "Also write a DOT rendering to this file");
    learn_cmd->add_flag("--trace", la.trace, "Print PROMOTE/MERGE log to stderr and check integrity after merges");
    learn_cmd->add_option("--max-iterations", la.max_iterations, "Abort after this many iterations (0 = no cap)");
    learn_cmd->add_option("--threads", la.threads, "Worker threads for scoring")->check(CLI::Range(1u, 256u));

    PredictArgs pa;
    auto* predict_cmd = app.add_subcommand("predict", "Predict the target of every trace");
    predict_cmd->add_option("--model", pa.model, "Model file")->required();
    predict_cmd->add_option("--input", pa.input, "Sample file ('-' for stdin)")->required();
    predict_cmd->add_option("--format", pa.format, "Sample format")->check(CLI::IsMember({"abbadingo", "augmented"}));
    predict_cmd->add_option("--fallback", pa.fallback, "Out-of-domain behaviour")
        ->check(CLI::IsMember({"mean", "last", "error"}));

    GenerateArgs ga;
    auto* generate_cmd = app.add_subcommand("generate", "Sample accepted words from a model");
    generate_cmd->add_option("--model", ga.model, "Model file")->required();
    generate_cmd->add_option("-n", ga.n, "Number of words");
    generate_cmd->add_option("--seed", ga.seed, "Random seed");
    generate_cmd->add_option("--max-len", ga.max_len, "Maximum word length");

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "Accept/reject counts, accuracy and MSE on a sample");
    eval_cmd->add_option("--model", ea.model, "Model file")->required();
    eval_cmd->add_option("--input", ea.input, "Sample file ('-' for stdin)")->required();
    eval_cmd->add_option("--format", ea.format, "Sample format")->check(CLI::IsMember({"abbadingo", "augmented"}));

    std::string dot_model;
    auto* dot_cmd = app.add_subcommand("dot", "Render a model as DOT on stdout");
    dot_cmd->add_option("--model", dot_model, "Model file")->required();

    DiscretizeArgs da;
    auto* disc_cmd = app.add_subcommand("discretize", "Turn a numeric series into an augmented sample");
    disc_cmd->add_option("--input", da.input, "CSV with one real per line ('-' for stdin)")->required();
    disc_cmd->add_option("--bins", da.bins, "Number of bins")->check(CLI::PositiveNumber);
    disc_cmd->add_option("--method", da.method, "Binning method")->check(CLI::IsMember({"uniform", "quantile"}));
    disc_cmd->add_option("--window", da.window, "Window length")->check(CLI::PositiveNumber);
    disc_cmd->add_option("--target", da.target, "Target of the last symbol")->check(CLI::IsMember({"delta", "value"}));
    disc_cmd->add_flag("--skip-header", da.skip_header, "Skip the first line of the CSV");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back(); // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*learn_cmd) return do_learn(la, in, out, err);
        if (*predict_cmd) return do_predict(pa, in, out);
        if (*generate_cmd) return do_generate(ga, in, out);
        if (*eval_cmd) return do_eval(ea, in, out);
        if (*dot_cmd) {
            out << write_dot(read_model(dot_model, in));
            return kExitOk;
        }
        if (*disc_cmd) return do_discretize(da, in, out, err);
    } catch (const DataError& e) {
        err << "error: " << e.where << ": " << e.what << '\n';
        return kExitData;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

} // namespace flexautomata::cli
