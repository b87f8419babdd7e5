#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "flexautomata/cli.hpp"
#include "flexautomata/sample_io.hpp"
#include "oracles.hpp"

using namespace flexautomata;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "flexautomata");
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("flexautomata_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("learn then eval on the 13-trace example sample") {
    TempDir dir;
    const auto sample = dir.write("sample.txt", oracle::example_sample_text());
    const auto model = dir.file("model.txt");
    const auto dot = dir.file("model.dot");
    Run l = run({"learn", "--input", sample, "--output", model, "--dot", dot, "--trace"});
    REQUIRE(l.code == 0);
    CHECK(l.err.find("MERGE") != std::string::npos);
    CHECK(oracle::check_dot(slurp(dot)).ok);

    Run e = run({"eval", "--model", model, "--input", sample});
    CHECK(e.code == 0);
    CHECK(e.out == "traces 13\naccepted 8\nrejected 5\naccuracy 13/13 1\n");

    for (const char* h : {"alergia", "mse"}) {
        Run o = run({"learn", "--input", sample, "--heuristic", h});
        REQUIRE(o.code == 0);
        const auto m = dir.write(std::string("m_") + h, o.out);
        CHECK(run({"eval", "--model", m, "--input", sample}).out.find("accuracy 13/13") != std::string::npos);
    }
}

TEST_CASE("stdin and stdout") {
    Run l = run({"learn", "--input", "-"}, oracle::example_sample_text());
    REQUIRE(l.code == 0);
    CHECK(load_model(l.out).size() > 0);
    Run d = run({"dot", "--model", "-"}, l.out);
    CHECK(d.code == 0);
    CHECK(oracle::check_dot(d.out).ok);
}

TEST_CASE("dot on a single-state model") {
    Automaton a(numeric_alphabet(2));
    a.set_start(a.add_state(StateLabel::Accepting));
    TempDir dir;
    const auto m = dir.write("one.model", save_model(a));
    Run d = run({"dot", "--model", m});
    CHECK(d.code == 0);
    auto summary = oracle::check_dot(d.out);
    CHECK(summary.ok);
    CHECK(summary.node_statements == 1);
    CHECK(summary.edges == 0);
}

TEST_CASE("predict with fallbacks") {
    TempDir dir;
    const auto train = dir.write("train.txt", "? 2 0/1 1/3\n? 1 1/10\n");
    Run l = run({"learn", "--input", train, "--format", "augmented", "--min-evidence", "1e9"});
    REQUIRE(l.code == 0);
    const auto m = dir.write("m", l.out);
    const auto in = dir.write("in.txt", "? 1 0\n? 2 0 1\n? 1 1\n");
    Run p = run({"predict", "--model", m, "--input", in});
    CHECK(p.code == 0);
    CHECK(p.out == "1\n3\n10\n");

    const auto off = dir.write("off.txt", "? 3 0 1 1\n");
    CHECK(run({"predict", "--model", m, "--input", off}).out == format_real(14.0 / 3.0) + "\n");
    CHECK(run({"predict", "--model", m, "--input", off, "--fallback", "last"}).out == "3\n");
    Run strict = run({"predict", "--model", m, "--input", off, "--fallback", "error"});
    CHECK(strict.code == 2);
    CHECK(strict.err.find("off.txt") != std::string::npos);
}

TEST_CASE("eval reports MSE when targets are present") {
    TempDir dir;
    const auto train = dir.write("train.txt", "? 1 0/1\n? 1 0/3\n");
    Run l = run({"learn", "--input", train, "--format", "augmented"});
    REQUIRE(l.code == 0);
    const auto m = dir.write("m", l.out);
    Run e = run({"eval", "--model", m, "--input", train});
    CHECK(e.code == 0);
    CHECK(e.out.find("accuracy 0/0\n") != std::string::npos);
    CHECK(e.out.find("mse 1\n") != std::string::npos);
}

TEST_CASE("generate is seeded and its output parses") {
    TempDir dir;
    const auto sample = dir.write("s.txt", oracle::example_sample_text());
    Run l = run({"learn", "--input", sample});
    const auto m = dir.write("m", l.out);
    Run g1 = run({"generate", "--model", m, "-n", "50", "--seed", "7", "--max-len", "15"});
    Run g2 = run({"generate", "--model", m, "-n", "50", "--seed", "7", "--max-len", "15"});
    REQUIRE(g1.code == 0);
    CHECK(g1.out == g2.out);
    Sample s = parse_abbadingo(g1.out);
    CHECK(s.traces.size() == 50);
    CHECK(s.count(TraceLabel::Positive) == 50);
    const auto gen = dir.write("gen.txt", g1.out);
    CHECK(run({"eval", "--model", m, "--input", gen}).out.find("accepted 50\n") != std::string::npos);
}

TEST_CASE("discretize output feeds learn") {
    TempDir dir;
    std::string csv = "value\n";
    for (int i = 0; i < 60; ++i) csv += std::to_string((i / 10) % 3) + ".5\n";
    const auto series = dir.write("series.csv", csv);
    Run d = run({"discretize", "--input", series, "--bins", "3", "--window", "2", "--skip-header"});
    REQUIRE(d.code == 0);
    Sample s = parse_augmented(d.out);
    CHECK(s.traces.size() == 58);
    const auto aug = dir.write("aug.txt", d.out);
    Run l = run({"learn", "--input", aug, "--format", "augmented", "--heuristic", "mse"});
    CHECK(l.code == 0);

    Run bad = run({"discretize", "--input", series});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 1") != std::string::npos);
}

TEST_CASE("usage and data errors map to exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"learn"}).code == 1);
    CHECK(run({"learn", "--input", "x", "--heuristic", "nope"}).code == 1);
    CHECK(run({"--help"}).code == 0);

    Run missing = run({"learn", "--input", "/nonexistent/file.txt"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("/nonexistent/file.txt") != std::string::npos);

    TempDir dir;
    const auto broken = dir.write("broken.txt", "1 1 0\n1 3 0 1\n");
    Run b = run({"learn", "--input", broken});
    CHECK(b.code == 2);
    CHECK(b.err.find("broken.txt") != std::string::npos);
    CHECK(b.err.find("line 2") != std::string::npos);

    const auto contradictory = dir.write("c.txt", "1 1 0\n0 1 0\n");
    CHECK(run({"learn", "--input", contradictory}).code == 2);

    const auto bad_model = dir.write("bad.model", "flexautomata-model 7\n");
    CHECK(run({"dot", "--model", bad_model}).code == 2);
}

TEST_CASE("identical invocations give identical bytes") {
    TempDir dir;
    const auto sample = dir.write("s.txt", oracle::example_sample_text());
    for (const char* h : {"edsm", "alergia", "mse"}) {
        Run a = run({"learn", "--input", sample, "--heuristic", h});
        Run b = run({"learn", "--input", sample, "--heuristic", h, "--threads", "3"});
        CHECK(a.out == b.out);
    }
}
