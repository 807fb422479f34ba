// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failed criteria. argv[1] is the path of the bintail CLI.
#include <bintail/exact_real.hpp>
#include <bintail/validator.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace bintail;

namespace {

// Pinned tolerances and budgets.
constexpr double kTailRatioCap = 89.0 / 44.0;
constexpr double kConjectureConst = 180451625.0 / 143327232.0;
const double kSqrtHalfPi = std::sqrt(std::acos(-1.0) / 2);
constexpr double kLdGap = 0.005;
constexpr double kModerateGap = 0.05;
constexpr double kPhiBandTol = 1e-12;
constexpr double kRatioChainSeconds = 120;
constexpr double kLdSeconds = 60;
constexpr double kModerateSeconds = 300;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& run) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " :: " << o.detail << " (" << buf << ")"
            << std::endl;
}

double seconds_of(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Witness* metric(const CheckSummary& s, const std::string& name) {
  for (const auto& m : s.metrics)
    if (m.name == name) return &m;
  return nullptr;
}

std::string failed_checks(const CheckSummary& s) {
  std::string out;
  for (const auto& c : s.checks)
    if (!c.passed) out += " failed check: " + c.name + " " + c.detail + ";";
  return out;
}

std::string basics(const CheckSummary& s) {
  std::ostringstream os;
  os << s.suite << " points=" << s.points_checked << " escalations=" << s.escalations
     << " violations=" << s.violation_count << failed_checks(s);
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "bintail";
  const GridSpec grid = GridSpec::standard(300);

  report(1, "Ratio chain L <= B/b <= U < 2L on n<=300, p=j/20, k<=pn within 2 minutes", [&] {
    CheckSummary s;
    double t = seconds_of([&] { s = run_suite("theorem1", grid); });
    std::ostringstream os;
    os << basics(s) << " runtime=" << format_double(t, 3) << "s";
    return Outcome{s.passed() && t <= kRatioChainSeconds, os.str()};
  });

  report(2, "Tail chain Bdown < B < Bup < (89/44) Bdown with max Bup/Bdown < 89/44", [&] {
    CheckSummary s = run_suite("theorem2", grid);
    const Witness* m = metric(s, "max Bup/Bdown");
    bool ok = s.passed() && m && m->value < kTailRatioCap;
    return Outcome{ok, basics(s) + " max Bup/Bdown=" + (m ? format_double(m->value) : "missing")};
  });

  report(3, "Scaled-tail chains and upper-tail chains via reflection", [&] {
    CheckSummary a = run_suite("theorem5_2", grid);
    CheckSummary b = run_suite("upper_tail", grid);
    return Outcome{a.passed() && b.passed(), basics(a) + "; " + basics(b)};
  });

  report(4, "Conjecture evidence: max B/(bL) < 180451625/143327232, k<=pn-1 below sqrt(pi/2), k=12 slice", [&] {
    CheckSummary s = conjecture_scan(grid);
    const Witness* all = metric(s, "max B/(bL)");
    const Witness* inner = metric(s, "max B/(bL), k <= pn-1");
    bool ok = s.passed() && all && inner && all->value < kConjectureConst && inner->value < kSqrtHalfPi;
    std::ostringstream os;
    os << basics(s);
    if (all) os << " max=" << format_double(all->value) << " at n=" << *all->point.n << " k=" << *all->point.k;
    if (inner) os << " max(k<=pn-1)=" << format_double(inner->value);
    for (const auto& c : s.checks)
      if (c.name.find("slice") != std::string::npos) os << " slice: " << c.detail;
    os << " [" << s.note << "]";
    return Outcome{ok, os.str()};
  });

  report(5, "Large deviation f=3/10 p=1/2: increasing, within 0.5% of 1.523482 at n=1e4, within 1 minute", [&] {
    ConvergenceSpec spec;
    spec.final_gap = kLdGap;
    CheckSummary s;
    double t = seconds_of([&] { s = convergence_suite(spec); });
    const auto& rows = s.tables.at(0).rows;
    std::string detail = "value(1e4)=" + rows.back()[2] + " gap=" + rows.back()[4] +
                         " runtime=" + format_double(t, 3) + "s" + failed_checks(s);
    return Outcome{s.passed() && t <= kLdSeconds, detail};
  });

  report(6, "Moderate deviation p=1/2 a_n=n^(2/3): gap shrinks over 1e3..1e6, within 5% at 1e6, within 5 minutes",
         [&] {
           ConvergenceSpec spec;
           spec.track = Track::moderate_deviation;
           spec.schedule = {1000, 10000, 100000, 1000000};
           spec.final_gap = kModerateGap;
           CheckSummary s;
           double t = seconds_of([&] { s = convergence_suite(spec); });
           std::string gaps;
           for (const auto& r : s.tables.at(0).rows) gaps += r[4] + " ";
           return Outcome{s.passed() && t <= kModerateSeconds,
                          "gaps=" + gaps + "runtime=" + format_double(t, 3) + "s" + failed_checks(s)};
         });

  report(7, "Gaussian bracket and sharp bound on x in [0,10] step 0.01 at tol 1e-12; ratio decreasing", [&] {
    GridSpec g = grid;
    g.x_max = 10;
    g.x_step = Rational(1, 100);
    CheckSummary s = run_suite("gaussian", g);
    return Outcome{s.passed() && s.points_checked == 1001, basics(s)};
  });

  report(8, "McKay bracket on pn<k<=n-1, E<=3/2, ranking flip across f* at p=1/2 n=1e4", [&] {
    CheckSummary s = run_suite("mckay", grid);
    const Witness* e = metric(s, "max McKay E");
    bool flip = false;
    std::string flip_detail;
    for (const auto& c : s.checks)
      if (c.name.find("flips once") != std::string::npos) {
        flip = c.passed;
        flip_detail = c.detail;
      }
    bool ok = s.passed() && e && e->value <= 1.5 && flip;
    return Outcome{ok, basics(s) + " max E=" + (e ? format_double(e->value) : "missing") + " " + flip_detail};
  });

  report(9, "phi band phi- < phi < phi+ for n<=2000 with max phi+/phi- = e^(29/2600) at (2,1)", [&] {
    CheckSummary s = run_suite("phi_band", GridSpec::standard(2000));
    const Witness* m = metric(s, "max phi+/phi-");
    const double expected = std::exp(29.0 / 2600.0);
    bool ok = s.passed() && m && std::abs(m->value / expected - 1) <= kPhiBandTol && m->point.n == 2 &&
              m->point.k == 1;
    return Outcome{ok, basics(s) + " max=" + (m ? format_double(m->value) : "missing")};
  });

  report(10, "Constants: theta_k for k=1..500, zeta branch bounds on n<=300, zeta(2k,k)=1/2", [&] {
    CheckSummary s = run_suite("constants", grid);
    return Outcome{s.passed(), basics(s)};
  });

  report(11, "Determinism: repeated sweep and verify runs give byte-identical CSV/JSON", [&] {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "bintail_acceptance";
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"sweep.csv", "sweep --n-max 80"},
        {"sweep.json", "sweep --n-max 80 --format json --tail upper"},
        {"verify.json", "verify --suite theorem2 --n-max 80 --format json"},
        {"verify.csv", "verify --suite mckay --n-max 40"},
        {"conjecture.csv", "conjecture --n-max 40"},
    };
    std::string detail;
    bool ok = true;
    for (const auto& [name, args] : runs) {
      std::string outs[3];
      for (int rep = 0; rep < 3; ++rep) {
        // The third run pins one worker thread so the parallel merge is also compared.
        fs::path out = dir / (std::to_string(rep) + "_" + name);
        std::string cmd = "\"" + cli + "\" " + args + (rep == 2 ? " --threads 1" : "") + " -o \"" + out.string() + "\"";
        int rc = std::system(cmd.c_str());
        if (rc != 0) {
          ok = false;
          detail += name + ": exit " + std::to_string(rc) + "; ";
        }
        outs[rep] = slurp(out);
      }
      bool same = !outs[0].empty() && outs[0] == outs[1] && outs[1] == outs[2];
      ok = ok && same;
      detail += name + (same ? " identical" : " DIFFERS") + " (" + std::to_string(outs[0].size()) + " bytes); ";
    }
    fs::remove_all(dir);
    return Outcome{ok, detail};
  });

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
