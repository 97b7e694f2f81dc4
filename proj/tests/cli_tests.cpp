// End-to-end checks of the command-line tool: golden outputs and exit codes.
// argv[1] = path to the binary, argv[2] = path to the sample data directory.

#include <array>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

int failures = 0;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot run: " << cmd << "\n";
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void check(const std::string& label, bool ok) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << label << "\n";
  }
}

void check_output(const std::string& label, const RunResult& r, int code,
                  const std::string& expected) {
  bool ok = (r.code == code) && (r.out == expected);
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << label << "\n  exit " << r.code << " (want " << code
              << ")\n  got:\n" << r.out << "  want:\n" << expected;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_tests <binary> <data-dir>\n";
    return 2;
  }
  std::string bin = argv[1];
  std::string data = argv[2];

  check_output("classify fan graph",
               run(bin + " classify " + data + "/fan.graph.json"), 0,
               "sce = {v, v'}\ninf = {w}\nrg = {}\n");

  check_output("identify line2",
               run(bin + " identify " + data + "/line2.graph.json"), 0, "M_2\n");

  check_output("report on the fan system",
               run(bin + " report --stationary " + data + "/fan.graph.json " +
                   data + "/fan-collapse.map.json"),
               0,
               "limit:\n"
               "vertices = {v, w}\n"
               "e0: v -> w (mult 1)\n"
               "Y = {w}\n"
               "E_Y:\n"
               "vertices = {v, w, w.w}\n"
               "e0: v -> w (mult 1)\n"
               "colim \u2245 O(E_Y)\n"
               "O(limit) \u2245 M_2\n"
               "colim \u2245 M_2 \u2295 M_1\n"
               "colim \u2245 O(limit): false\n");

  check_output("map-validate on the collapse map",
               run(bin + " map-validate " + data + "/fan-collapse.map.json"), 0,
               "ok\nregular = true\nsurjective = false\n");

  check_output("limit via a system file",
               run(bin + " limit " + data + "/fan.system.json"), 0,
               "vertices = {v, w}\ne0: v -> w (mult 1)\n");

  check_output("obstruction via a system file",
               run(bin + " obstruction " + data + "/fan.system.json"), 0,
               "O = {}\nY = {w}\n");

  check_output("freeness of line2",
               run(bin + " free " + data + "/line2.graph.json"), 0,
               "topologically free: true\n");

  {
    auto r = run(bin + " identify " + data + "/fan.graph.json");
    check("identify with omega multiplicities exits 1", r.code == 1);
  }
  {
    auto r = run(bin + " validate " + data + "/broken.graph.json");
    check("dangling endpoint exits 1", r.code == 1);
  }
  {
    auto r = run(bin + " validate " + data + "/malformed.graph.json");
    check("malformed JSON exits 2", r.code == 2);
  }
  {
    auto r = run(bin + " classify " + data + "/fan.graph.json --format structured");
    check("structured classify parses and exits 0",
          r.code == 0 && r.out.find("\"sce\"") != std::string::npos);
  }
  {
    auto r1 = run(bin + " dot " + data + "/fan.graph.json");
    auto r2 = run(bin + " dot " + data + "/fan.graph.json");
    check("dot output is byte-identical across runs",
          r1.code == 0 && r1.out == r2.out && !r1.out.empty());
  }
  {
    auto r = run(bin + " threads " + data + "/fan.system.json --depth 2");
    check("threads runs on the fan system",
          r.code == 0 &&
              r.out.find("real vertex threads = 2") != std::string::npos);
  }
  {
    auto r = run(bin + " bratteli import " + data + "/doubling.bratteli.json");
    check("bratteli import emits a system", r.code == 0 &&
                                                r.out.find("\"stages\"") !=
                                                    std::string::npos);
  }
  {
    auto sys = std::string("/tmp/tgraph-cli-test-system.json");
    auto r1 = run(bin + " bratteli import " + data +
                  "/doubling.bratteli.json --out " + sys);
    auto r2 = run(bin + " bratteli export " + sys);
    check("bratteli round trip through files",
          r1.code == 0 && r2.code == 0 &&
              r2.out.find("\"levels\"") != std::string::npos &&
              r2.out.find("8") != std::string::npos);
    std::remove(sys.c_str());
  }
  {
    auto r = run(bin + " ey " + data + "/line2.graph.json --y u2");
    check("attachment emits a graph with the copied vertex",
          r.code == 0 && r.out.find("w.u2") != std::string::npos);
  }
  {
    auto r = run(bin + " amplify " + data + "/line2.graph.json -n 1");
    check("amplify emits copies", r.code == 0 &&
                                      r.out.find("x1.u1") != std::string::npos);
  }

  if (failures) {
    std::cerr << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
