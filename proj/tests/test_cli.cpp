#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(EXRING_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "exring_cli_scratch";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kRotation = "ring Z/6\nrows 2\ncols 2\n 0 1\n 5 0\n";
const std::string kRank1F2 = "ring F2\nrows 2\ncols 2\n 1 1\n 0 0\n";

}  // namespace

TEST_CASE("classify") {
  auto ok = run("classify Z/6");
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out.find("property exchange") != std::string::npos);
  REQUIRE(ok.out.find("verdict fail") == std::string::npos);

  // the documented preset alias resolves
  REQUIRE(run("classify \"Ex2.12(F2)\"").code == 0);

  REQUIRE(run("classify NoSuchRing").code == 2);

  // corrupt ring spec: a*a = b, a*b = 0, b*a = a is not associative
  std::string spec =
      "name broken\norders 2 2 2\n"
      "table 1 0 0  0 1 0  0 0 1  0 1 0  0 0 1  0 0 0  0 0 1  0 1 0  0 0 0\n"
      "one 1 0 0\n";
  std::string path = write_file("broken.ring", spec);
  auto bad = run("classify " + path);
  REQUIRE(bad.code == 2);
  REQUIRE(bad.out.find("AssociativityViolation") != std::string::npos);

  // byte-identical reruns
  REQUIRE(run("classify Z/6").out == ok.out);
}

TEST_CASE("diagonalize and verify round trip") {
  std::string mat = write_file("rot.mat", kRotation);
  std::string cert = (scratch_dir() / "rot.cert").string();
  auto d = run("diagonalize Z/6 " + mat + " -o " + cert);
  REQUIRE(d.code == 0);
  REQUIRE(d.out.find("column ops") != std::string::npos);

  auto v = run("verify " + cert);
  REQUIRE(v.code == 0);
  REQUIRE(v.out.find("ok") == 0);

  // deterministic output bytes
  std::string first = read_file(cert);
  REQUIRE(run("diagonalize Z/6 " + mat + " -o " + cert).code == 0);
  REQUIRE(read_file(cert) == first);

  // flip one coefficient digit inside the transcript
  std::string broken = first;
  std::size_t pos = broken.find("\nC ");
  pos = broken.find_first_of("0123456789", pos + 3);
  broken[pos] = broken[pos] == '1' ? '2' : '1';
  std::string broken_path = write_file("rot_broken.cert", broken);
  REQUIRE(run("verify " + broken_path).code != 0);

  // ring mismatch is reported
  auto mismatch = run("verify " + cert + " --ring Z/5");
  REQUIRE(mismatch.code == 1);
  REQUIRE(mismatch.out.find("mismatch") != std::string::npos);
}

TEST_CASE("regular flag and failure modes") {
  std::string mat = write_file("rank1.mat", kRank1F2);
  REQUIRE(run("diagonalize F2 " + mat).code == 1);  // singular without --regular

  std::string cert = (scratch_dir() / "rank1.cert").string();
  auto d = run("diagonalize F2 " + mat + " --regular -o " + cert);
  REQUIRE(d.code == 0);
  REQUIRE(run("verify " + cert).code == 0);

  // matrix over a different ring than requested
  REQUIRE(run("diagonalize Z/6 " + mat).code == 2);
}

TEST_CASE("corpus") {
  std::string dir = EXRING_CORPUS_DIR;
  auto r = run("corpus " + dir + "/manifest.txt");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("corpus ok") != std::string::npos);

  // threaded run prints the same bytes
  auto threaded = run("corpus " + dir + "/manifest.txt --threads 3");
  REQUIRE(threaded.code == 0);
  REQUIRE(threaded.out == r.out);

  // wrong expectation is caught
  std::string manifest = write_file("bad_manifest.txt", "rot.mat ge fail\n");
  write_file("rot.mat", kRotation);
  auto bad = run("corpus " + (scratch_dir() / "bad_manifest.txt").string());
  REQUIRE(bad.code == 1);
  REQUIRE(bad.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("custom ring spec files end to end") {
  // F4 written out as a spec file classifies cleanly
  std::string spec =
      "name CustomF4\norders 2 2\n"
      "table 1 0  0 1  0 1  1 1\n"
      "one 1 0\n";
  std::string ring_path = write_file("custom_f4.ring", spec);
  auto c = run("classify " + ring_path);
  REQUIRE(c.code == 0);
  REQUIRE(c.out.find("ring CustomF4") != std::string::npos);

  // diagonalize over it and verify with --ring-file
  std::string mat = write_file("custom.mat",
                               "ring CustomF4\nrows 2\ncols 2\n 1 0 0 1\n 0 0 1 0\n");
  std::string cert = (scratch_dir() / "custom.cert").string();
  REQUIRE(run("diagonalize " + ring_path + " " + mat + " -o " + cert).code == 0);
  REQUIRE(run("verify " + cert).code == 2);  // not a preset name
  REQUIRE(run("verify " + cert + " --ring-file " + ring_path).code == 0);
}

TEST_CASE("enumerate-projectives") {
  auto r = run("enumerate-projectives Z/6 --bound 1");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("classes 4") != std::string::npos);
  REQUIRE(r.out.find("add-table") != std::string::npos);
}
