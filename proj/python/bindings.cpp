#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flexautomata/apta.hpp"
#include "flexautomata/discretize.hpp"
#include "flexautomata/error.hpp"
#include "flexautomata/learner.hpp"
#include "flexautomata/merge.hpp"
#include "flexautomata/predict.hpp"
#include "flexautomata/sample_io.hpp"

namespace py = pybind11;
using namespace flexautomata;

namespace {

const char* label_name(TraceLabel l) {
    switch (l) {
    case TraceLabel::Positive: return "positive";
    case TraceLabel::Negative: return "negative";
    case TraceLabel::Unlabeled: break;
    }
    return "unlabeled";
}

TraceLabel label_from(const std::string& s) {
    if (s == "positive") return TraceLabel::Positive;
    if (s == "negative") return TraceLabel::Negative;
    if (s == "unlabeled") return TraceLabel::Unlabeled;
    throw InputError("label must be 'positive', 'negative' or 'unlabeled', got '" + s + "'");
}

const char* state_label_name(StateLabel l) {
    switch (l) {
    case StateLabel::Accepting: return "accepting";
    case StateLabel::Rejecting: return "rejecting";
    case StateLabel::Unlabeled: break;
    }
    return "unlabeled";
}

HeuristicId heuristic_from(const std::string& name, double alpha, double penalty) {
    if (name == "edsm") return Edsm{};
    if (name == "alergia") return Alergia{alpha};
    if (name == "mse") return Mse{penalty};
    throw InputError("unknown heuristic '" + name + "' (edsm, alergia, mse)");
}

Fallback fallback_from(const std::string& name) {
    if (name == "mean") return Fallback::GlobalMean;
    if (name == "last") return Fallback::LastState;
    if (name == "error") return Fallback::Error;
    throw InputError("unknown fallback '" + name + "' (mean, last, error)");
}

py::dict stats_dict(const StateAggregate& s) {
    py::dict d;
    d["total_count"] = s.total_count;
    d["end_pos_count"] = s.end_pos_count;
    d["end_neg_count"] = s.end_neg_count;
    d["end_unlabeled_count"] = s.end_unlabeled_count;
    d["out_counts"] = s.out_counts;
    d["target_count"] = s.target_count;
    d["target_mean"] = s.target_mean();
    d["attribute_sums"] = s.attribute_sums;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "State-merging automaton learner";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InconsistentSampleError>(m, "InconsistentSampleError", base.ptr());
    py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IterationLimitError>(m, "IterationLimitError", base.ptr());

    py::class_<Sample>(m, "Sample")
        .def(py::init([](const std::vector<std::pair<std::string, Word>>& traces, std::size_t alphabet_size) {
                 std::vector<std::pair<TraceLabel, Word>> words;
                 for (const auto& [l, w] : traces) words.emplace_back(label_from(l), w);
                 return make_sample(words, alphabet_size);
             }),
             py::arg("traces"), py::arg("alphabet_size"),
             "Build from (label, word) pairs; labels are 'positive', 'negative' or 'unlabeled'.")
        .def("__len__", [](const Sample& s) { return s.traces.size(); })
        .def_readonly("alphabet", &Sample::alphabet)
        .def_readonly("attribute_arity", &Sample::attribute_arity)
        .def("count", [](const Sample& s, const std::string& l) { return s.count(label_from(l)); })
        .def("words", [](const Sample& s) {
            std::vector<Word> out;
            for (const auto& t : s.traces) out.push_back(t.word());
            return out;
        })
        .def("labels", [](const Sample& s) {
            std::vector<std::string> out;
            for (const auto& t : s.traces) out.emplace_back(label_name(t.label));
            return out;
        })
        .def("targets", [](const Sample& s) {
            std::vector<std::vector<std::optional<double>>> out;
            for (const auto& t : s.traces) {
                auto& row = out.emplace_back();
                for (const auto& x : t.symbols) row.push_back(x.target);
            }
            return out;
        })
        .def("max_length", &Sample::max_length)
        .def("has_targets", &Sample::has_targets)
        .def("to_abbadingo", [](const Sample& s) { return write_abbadingo(s); })
        .def("to_augmented", [](const Sample& s) { return write_augmented(s); });

    py::class_<Automaton>(m, "Automaton")
        .def("__len__", &Automaton::size)
        .def_property_readonly("start", &Automaton::start)
        .def_property_readonly("alphabet", &Automaton::alphabet)
        .def("states", &Automaton::state_ids)
        .def("transitions", [](const Automaton& a, StateId id) { return a.transitions(id); }, py::arg("state"))
        .def("label", [](const Automaton& a, StateId id) { return state_label_name(a.state(id).label()); },
             py::arg("state"))
        .def("stats", [](const Automaton& a, StateId id) { return stats_dict(a.state(id).stats); }, py::arg("state"))
        .def("accepts", [](const Automaton& a, const Word& w) { return compute(a, w).accepted(); }, py::arg("word"))
        .def("path", [](const Automaton& a, const Word& w) { return compute(a, w).path; }, py::arg("word"),
             "States visited while reading the word, start state first.")
        .def("language", &language_upto, py::arg("max_len"),
             "Accepted words up to max_len, shortest first then lexicographic.")
        .def("check_integrity", &check_integrity)
        .def("to_dot", [](const Automaton& a) { return write_dot(a); })
        .def("save", &save_model)
        .def_static("load", &load_model, py::arg("text"));

    m.def("parse_abbadingo", &parse_abbadingo, py::arg("text"));
    m.def("parse_augmented", &parse_augmented, py::arg("text"));
    m.def("build_apta", &build_apta, py::arg("sample"));

    m.def(
        "merge",
        [](const Automaton& a, StateId q, StateId q2) -> py::object {
            MergeOutcome out = merge(a, q, q2);
            if (!out.succeeded()) return py::none();
            py::dict d;
            d["automaton"] = std::move(*out.result);
            d["merged_state"] = *out.merged_state;
            d["merged_pairs"] = out.merged_pairs;
            d["label_matches"] = out.label_matches;
            d["sse_delta"] = out.sse_delta;
            return d;
        },
        py::arg("automaton"), py::arg("q"), py::arg("q2"),
        "Merge two states and determinise. Returns None on a label conflict.");

    m.def(
        "learn",
        [](const Sample& s, const std::string& heuristic, double alpha, double penalty, double min_evidence,
           std::optional<std::size_t> max_iterations, unsigned threads) {
            LearnerConfig cfg;
            cfg.heuristic = heuristic_from(heuristic, alpha, penalty);
            cfg.min_evidence = min_evidence;
            cfg.max_iterations = max_iterations;
            cfg.threads = threads;
            LearnResult r;
            {
                py::gil_scoped_release release;
                r = learn(s, cfg);
            }
            return py::make_tuple(std::move(r.model), r.log.to_text());
        },
        py::arg("sample"), py::arg("heuristic") = "edsm", py::arg("alpha") = 0.05, py::arg("penalty") = 0.0,
        py::arg("min_evidence") = 0.0, py::arg("max_iterations") = py::none(), py::arg("threads") = 1,
        "Red-blue state merging. Returns (model, log text).");

    m.def(
        "predict",
        [](const Automaton& a, const Word& w, const std::string& fallback) {
            return predict_value(a, w, PredictionConfig{fallback_from(fallback)});
        },
        py::arg("automaton"), py::arg("word"), py::arg("fallback") = "mean");

    m.def("sample_words", &sample_words, py::arg("automaton"), py::arg("n"), py::arg("seed"), py::arg("max_len") = 20);

    m.def(
        "discretize",
        [](const std::vector<double>& series, std::size_t bins, const std::string& method, std::size_t window,
           const std::string& target) {
            DiscretizationSpec spec;
            if (method == "uniform") {
                spec.method = UniformBins{bins};
            } else if (method == "quantile") {
                spec.method = QuantileBins{bins};
            } else {
                throw InputError("method must be 'uniform' or 'quantile'");
            }
            spec.window = window;
            if (target == "delta") {
                spec.target = TargetKind::NextDelta;
            } else if (target == "value") {
                spec.target = TargetKind::NextValue;
            } else {
                throw InputError("target must be 'delta' or 'value'");
            }
            Discretization d = discretize(series, spec);
            return py::make_tuple(std::move(d.sample), d.edges, d.warnings);
        },
        py::arg("series"), py::arg("bins") = 3, py::arg("method") = "uniform", py::arg("window") = 3,
        py::arg("target") = "delta", "Returns (sample, edges, warnings).");

    m.def("hoeffding_bound", &hoeffding_bound, py::arg("n1"), py::arg("n2"), py::arg("alpha"));
}
