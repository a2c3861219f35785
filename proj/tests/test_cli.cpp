#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcx/cache.hpp"

using namespace gcx;

namespace {

std::string binary_path() {
  // the CLI binary sits next to the test binaries
  return std::filesystem::read_symlink("/proc/self/exe").parent_path() / "gcx";
}

int run(const std::string& args, std::string* out = nullptr) {
  std::string cmd = binary_path() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  std::string captured;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), p)) > 0) captured.append(buf, got);
  int status = pclose(p);
  if (out) *out = captured;
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, RoundTripAndCorruption) {
  auto dir = std::filesystem::temp_directory_path() / "gcx_cache_test";
  std::filesystem::remove_all(dir);
  CacheKey key{"gc", 3, "gc", 2, 3};
  std::vector<std::string> lines = {"GCX1 p=1 v=2 kinds=I,I edges=(1,2);(1,2);(1,2)"};
  cache_store(dir, key, lines);
  std::vector<std::string> loaded;
  EXPECT_EQ(cache_load(dir, key, loaded), CacheStatus::Hit);
  EXPECT_EQ(loaded, lines);
  // missing key
  EXPECT_EQ(cache_load(dir, CacheKey{"gc", 3, "gc", 9, 9}, loaded), CacheStatus::Missing);
  // truncated file -> checksum error
  {
    std::ofstream out(dir / key.filename());
    out << lines[0].substr(0, 10) << "\n#sha256=deadbeef\n";
  }
  EXPECT_EQ(cache_load(dir, key, loaded), CacheStatus::Corrupt);
  std::filesystem::remove_all(dir);
}

TEST(Cli, FormsCheckPasses) {
  std::string out;
  EXPECT_EQ(run("forms check --n 3", &out), 0);
  EXPECT_NE(out.find("\"north_pole\": \"1/2*g*C*u1\""), std::string::npos);
  EXPECT_EQ(run("forms check --n 2", &out), 0);
}

TEST(Cli, UnknownFlagExit2) {
  EXPECT_EQ(run("forms check --bogus 3"), 2);
  EXPECT_EQ(run("nope"), 2);
}

TEST(Cli, NonformalityVerdict) {
  std::string out;
  EXPECT_EQ(run("nonformality --n 3", &out), 0);
  EXPECT_NE(out.find("\"obstruction\": true"), std::string::npos);
}

TEST(Cli, DeterministicReports) {
  std::string a, b;
  EXPECT_EQ(run("mc check --n 4 --vmax 3 --seed 5", &a), 0);
  EXPECT_EQ(run("mc check --n 4 --vmax 3 --seed 5", &b), 0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(Cli, JsonOutputFile) {
  auto path = std::filesystem::temp_directory_path() / "gcx_out.json";
  std::filesystem::remove(path);
  EXPECT_EQ(run("graphs dims --n 2 --arity 2 --imax 2 --json " + path.string()), 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("\"match\": true"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, CacheRebuildAndUse) {
  auto dir = std::filesystem::temp_directory_path() / "gcx_cli_cache";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run("cache rebuild --n 3 --flavor gc --vmax 3 --emax 4 --cache " + dir.string()),
            0);
  EXPECT_TRUE(std::filesystem::exists(dir));
  std::string out;
  EXPECT_EQ(run("gc cohomology --n 3 --vmax 2 --emax 3 --flavor gc --cache " + dir.string(),
                &out),
            0);
  std::filesystem::remove_all(dir);
}
