#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "woodshole/generate.hpp"
#include "woodshole/homotopy.hpp"
#include "woodshole/random.hpp"
#include "woodshole/solver.hpp"

using namespace woodshole;

namespace {

struct Case {
  const char* label;
  int n;
  int d;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_endpoints(const std::vector<PathEndpoint>& a, const std::vector<PathEndpoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].status != b[i].status || a[i].steps != b[i].steps || a[i].x != b[i].x) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int instances = argc > 1 ? std::atoi(argv[1]) : 10;
  const Case cases[] = {{"P^2 d=3", 2, 3}, {"P^3 d=2", 3, 2}, {"P^3 d=3", 3, 3}};
  PathTrackerConfig cfg;
  std::printf("threads: %d, instances per case: %d\n", omp_get_max_threads(), instances);
  std::printf("%-10s %8s %12s %12s %8s %s\n", "case", "paths", "serial[s]", "parallel[s]", "speedup", "match");

  bool all_match = true;
  for (const Case& c : cases) {
    double serial = 0.0, parallel = 0.0;
    std::size_t paths = 0;
    bool match = true;
    for (int i = 0; i < instances; ++i) {
      const ProjEndo f = random_endomorphism(c.n, c.d, mix_seed(1000 + i));
      const std::vector<MultiPoly> system = fixed_point_system(f, 0);
      const PolySystem ps(system);
      const TotalDegreeHomotopy h(ps, cfg.seed);
      paths += h.num_paths();

      auto t0 = std::chrono::steady_clock::now();
      const auto a = track_all_paths_serial(h, cfg);
      serial += seconds_since(t0);

      t0 = std::chrono::steady_clock::now();
      const auto b = track_all_paths(h, cfg);
      parallel += seconds_since(t0);
      match = match && same_endpoints(a, b);
    }
    all_match = all_match && match;
    std::printf("%-10s %8zu %12.4f %12.4f %8.2f %s\n", c.label, paths, serial, parallel, serial / parallel,
                match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
