#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "ncsphere/cli.hpp"

using namespace ncsphere;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncsphere");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_command(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json first(const Result& r) {
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  return json::parse(line);
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("ncsphere_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

struct EnvGuard {
  explicit EnvGuard(const char* v) { ::setenv("NCSPHERE_CACHE", v, 1); }
  ~EnvGuard() { ::unsetenv("NCSPHERE_CACHE"); }
};

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"verify-ch", "--k", "generic"}).code == 0);
  CHECK(run({"minpoly", "--k", "2"}).code == 0);
  // n = 2 point: predicted roots collide at level three
  const auto deg = run({"minpoly", "--k", "3", "--hbar", "1", "--alpha", "-3/4"});
  CHECK(deg.code == 1);
  CHECK(first(deg)["status"] == "degenerate");
  CHECK(run({"minpoly", "--k", "x"}).code == 2);
  CHECK(run({"minpoly", "--k", "2", "--format", "tsv"}).code == 2);
  CHECK(run({"minpoly"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"minpoly", "--k", "9"}).code == 2);
  CHECK(run({"pairing", "--k1", "1", "--k2", "0", "--n", "2", "--alpha", "1"}).code == 2);
}

TEST_CASE("discriminant that is not a square is malformed") {
  const auto r = run({"minpoly", "--k", "1", "--hbar", "1", "--alpha", "1"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("pairing output") {
  const auto r = run({"pairing", "--k1", "1", "--k2", "0", "--n", "2"});
  REQUIRE(r.code == 0);
  const json j = first(r);
  CHECK(j["pairing"] == "3");
  CHECK(j["status"] == "verified");
  CHECK(j["inputs"]["n"] == 2);
}

TEST_CASE("pairing table as TSV") {
  const auto r = run({"pairing-table", "--max-k", "2", "--max-n", "4", "--format", "tsv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("k1\tk2\tn\tpairing\tregime\n", 0) == 0);
  CHECK(r.out.find("1\t0\t2\t3\t") != std::string::npos);
}

TEST_CASE("stable output is byte identical") {
  const std::vector<std::string> args = {"derham", "--max-degree", "2", "--stable-output"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("elapsed") == std::string::npos);
  const auto m = run({"minpoly", "--k", "3", "--stable-output"});
  CHECK(m.out == run({"minpoly", "--k", "3", "--stable-output"}).out);
}

TEST_CASE("derham output") {
  const json j = first(run({"derham", "--max-degree", "3", "--stable-output"}));
  CHECK(j["cohomology"] == json::array({1, 0, 1}));
  CHECK(j["status"] == "verified");
  CHECK(run({"derham", "--max-degree", "5"}).code == 2);
  CHECK(run({"derham", "--max-degree", "2", "--alpha", "0"}).code == 1);
}

TEST_CASE("report written to a file") {
  const auto d = fresh_dir("out");
  fs::create_directories(d);
  const auto f = d / "report.json";
  const auto r = run({"pairing", "--k1", "0", "--k2", "1", "--n", "3", "--out", f.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(f);
  std::string line;
  std::getline(in, line);
  CHECK(json::parse(line)["pairing"] == "2");
  CHECK(run({"pairing", "--k1", "0", "--k2", "1", "--n", "3", "--out", (d / "missing" / "x").string()}).code == 2);
  fs::remove_all(d);
}

TEST_CASE("cache hits, misses and keys") {
  const auto d = fresh_dir("cache");
  const std::vector<std::string> args = {"minpoly", "--k", "3", "--cache-dir", d.string(), "-v", "--stable-output"};
  const auto a = run(args);
  CHECK(a.err.find("cache miss") != std::string::npos);
  const auto b = run(args);
  CHECK(b.err.find("cache hit") != std::string::npos);
  CHECK(a.out == b.out);

  // the value of al is part of the key
  const auto c = run({"minpoly", "--k", "3", "--alpha", "-2", "--cache-dir", d.string(), "-v"});
  CHECK(c.err.find("cache miss") != std::string::npos);

  // a different version never reads old entries
  const CacheKey key{"extension_matrix", "sl2h", 3, "symbolic"};
  Cache old(d), bumped(d, "ncsphere-cache-0");
  CHECK(old.get(key));
  CHECK_FALSE(bumped.get(key));

  // a corrupt entry is recomputed
  {
    std::ofstream f(old.path_for(key), std::ios::trunc);
    f << "{not json";
  }
  const auto e = run(args);
  CHECK(e.err.find("cache miss") != std::string::npos);
  CHECK(e.out == a.out);
  CHECK(run(args).err.find("cache hit") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("environment variable overrides the cache flag") {
  const auto env = fresh_dir("env"), flag = fresh_dir("flag");
  {
    EnvGuard g(env.c_str());
    run({"minpoly", "--k", "2", "--cache-dir", flag.string()});
  }
  CHECK(fs::exists(env));
  CHECK_FALSE(fs::exists(flag));
  fs::remove_all(env);
}

TEST_CASE("the installed binary") {
  const char* bin = std::getenv("NCSPHERE_CLI");
  if (!bin) SKIP("NCSPHERE_CLI not set");
  auto sh = [&](const std::string& args, std::string* out = nullptr) {
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::string s;
    while (size_t n = std::fread(buf.data(), 1, buf.size(), p)) s.append(buf.data(), n);
    const int st = ::pclose(p);
    if (out) *out = s;
    return WEXITSTATUS(st);
  };
  std::string out;
  CHECK(sh("pairing --k1 1 --k2 0 --n 2", &out) == 0);
  CHECK(out.find("\"pairing\":\"3\"") != std::string::npos);
  CHECK(sh("minpoly --k 3 --hbar 1 --alpha -3/4") == 1);
  CHECK(sh("minpoly --k two") == 2);
}
