#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "symaut/automaton.hpp"
#include "symaut/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = std::string(SYMAUT_TEST_DATA);

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("symaut_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SYMAUT_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string table1_args() {
  return "--data " + kData + "/table1_long.csv --labels " + kData + "/table1_labels.csv";
}

std::string out(const std::string& name) { return (scratch_dir() / name).string(); }

}  // namespace

TEST_CASE("help and parse errors") {
  CHECK(cli("--help") == 0);
  CHECK(cli("--version") == 0);
  CHECK(cli("no-such-command") == 2);
  CHECK(cli("learn-batch " + table1_args() + " --out " + out("x.asa") + " --bogus") == 2);
}

TEST_CASE("learning requires an explicit seed") {
  CHECK(cli("learn-batch " + table1_args() + " --out " + out("noseed.asa")) == 2);
  CHECK_FALSE(fs::exists(out("noseed.asa")));
}

TEST_CASE("learn-batch writes model, report and manifest") {
  const std::string model = out("m.asa");
  REQUIRE(cli("learn-batch " + table1_args() + " --states 2 --seed 3 --timeout 2 --restarts 2 --out " + model) == 0);
  CHECK(fs::exists(model));
  const json report = json::parse(symaut::read_file(model + ".report.json"));
  CHECK(report["cost"]["error"] == 0);
  const json manifest = json::parse(symaut::read_file(model + ".manifest.json"));
  CHECK(manifest["command"] == "learn-batch");
  CHECK(manifest["seeds"]["search"] == 3);
  CHECK(manifest.contains("fingerprint"));
  CHECK(manifest.contains("simd_backend"));
  CHECK(manifest["config"]["max_states"] == 2);

  const std::string preds = out("pred.csv");
  REQUIRE(cli("run " + table1_args() + " --model " + model + " --out " + preds) == 0);
  const std::string csv = symaut::read_file(preds);
  CHECK(csv.starts_with("seq_id,label,predicted,first_accept_time,dead_time\n"));
  CHECK(csv.find("id1,pos,pos,") != std::string::npos);
  CHECK(csv.find("id2,neg,neg,") != std::string::npos);
}

TEST_CASE("exhaustive mode and config files") {
  const std::string ini = out("learn.ini");
  symaut::write_file(ini, "[learn-batch]\nstates = 1\nseed = 5\n");
  CHECK(cli("--config " + ini + " learn-batch " + table1_args() + " --exhaustive --out " + out("e.asa")) == 0);
  const json manifest = json::parse(symaut::read_file(out("e.asa") + ".manifest.json"));
  CHECK(manifest["config"]["max_states"] == 1);
  CHECK(manifest["seeds"]["search"] == 5);
}

TEST_CASE("exit codes for invalid configuration and data") {
  CHECK(cli("learn-batch " + table1_args() + " --seed 1 --states 0 --out " + out("z.asa")) == 2);
  CHECK(cli("learn-batch " + table1_args() + " --seed 1 --format xml --out " + out("z.asa")) == 2);
  CHECK(cli("learn-batch " + table1_args() + " --seed 1 --policy sometimes --out " + out("z.asa")) == 2);
  CHECK(cli("learn-batch --data " + kData + "/missing.csv --labels " + kData + "/table1_labels.csv --seed 1 --out " +
            out("z.asa")) == 2);

  const std::string labels = out("bad_labels.csv");
  symaut::write_file(labels, "seq_id,label\nid1,pos\nid2,maybe\n");
  CHECK(cli("learn-batch --data " + kData + "/table1_long.csv --labels " + labels + " --seed 1 --out " +
            out("z.asa")) == 1);

  const std::string model = out("broken.asa");
  symaut::write_file(model, "transition(q0,eq(alive,b),q0\n");
  CHECK(cli("run " + table1_args() + " --model " + model) == 1);
}

TEST_CASE("export-asp reproduces the checked-in program") {
  const std::string lp = out("t1.lp");
  REQUIRE(cli("export-asp " + table1_args() + " --states 2 --absorbing --acceptance earliest --earliness --out " + lp) ==
          0);
  CHECK(symaut::read_file(lp) == symaut::read_file(std::string(SYMAUT_TEST_GOLDEN) + "/table1.lp"));
}

TEST_CASE("generate, incremental learning and evaluation") {
  const std::string truth = out("truth.asa");
  symaut::write_file(truth, "transition(q0,at_most(x,b),q0).\ntransition(q0,eq(y,c),q1).\naccepting(q1).\n");
  const std::string data = out("gen.csv"), labels = out("gen_labels.csv");
  REQUIRE(cli("generate --model " + truth + " --attributes x,y --alphabet a,b,c --length 4 --positives 20 "
              "--negatives 20 --seed 2 --out-data " + data + " --out-labels " + labels) == 0);
  CHECK(fs::exists(data + ".manifest.json"));
  const symaut::AttributeSet attrs({"x", "y"});
  const symaut::AlphabetSpec alpha({"a", "b", "c"});
  CHECK(symaut::parse_asa(symaut::read_file(data + ".truth.asa"), attrs, alpha) ==
        symaut::parse_asa(symaut::read_file(truth), attrs, alpha));
  CHECK(cli("generate --model " + truth + " --attributes x,y --out-data " + data + " --out-labels " + labels) == 2);

  const std::string args = "--data " + data + " --labels " + labels + " --alphabet a,b,c --states 2 --seed 1";
  const std::string model = out("incr.asa");
  REQUIRE(cli("learn-incr " + args + " --batch-size 10 --iterations 1 --batch-timeout 1 --restarts 2 --out " + model) ==
          0);
  CHECK(symaut::read_file(model + ".progress.tsv").starts_with("iteration\tbatch\tlocal_error\trevised\tadopted"));

  const std::string report = out("eval.json");
  REQUIRE(cli("eval " + args + " --folds 2 --timeout 1 --restarts 1 --out " + report) == 0);
  const json r = json::parse(symaut::read_file(report));
  CHECK(r["folds"].size() == 2);
  CHECK(fs::exists(report + ".predictions.csv"));
}

TEST_CASE("discretize") {
  const std::string raw = out("raw.csv"), sym = out("sym.csv");
  symaut::write_file(raw, "seq_id,t,x\ns,1,0\ns,2,1\ns,3,2\ns,4,3\n");
  REQUIRE(cli("discretize --input " + raw + " --output " + sym + " --format wide_csv --alphabet-size 4") == 0);
  CHECK(symaut::read_file(sym) == "seq_id,t,x\ns,1,a\ns,2,b\ns,3,c\ns,4,d\n");
  CHECK(cli("discretize --input " + raw + " --output " + sym + " --format wide_csv --alphabet-size 1") == 2);
}
